// Copyright 2026 The Constellation Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "constellation/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <limits>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "constellation/errors.hpp"
#include "json.hpp"

namespace constellation {
namespace {

using nlohmann::json;

enum class Section { none, images, categories, annotations, other };

std::string_view section_name(Section s) {
  switch (s) {
    case Section::images: return "images";
    case Section::categories: return "categories";
    case Section::annotations: return "annotations";
    default: return "?";
  }
}

std::size_t line_of(std::string_view document, std::size_t byte) {
  byte = std::min(byte, document.size());
  return 1 + static_cast<std::size_t>(std::count(document.begin(), document.begin() + byte, '\n'));
}

// Streams the document and keeps only the fields the index needs. Nesting
// depth counts open containers: the root object is depth 1, a section array
// depth 2, a record object depth 3.
class CocoSax {
 public:
  explicit CocoSax(AnnotationDataset& out) : out_(out) {}

  bool null() { return scalar(Value{}); }
  bool boolean(bool v) { return scalar(Value{Kind::boolean, v ? 1 : 0, {}}); }
  bool number_integer(json::number_integer_t v) { return scalar(Value{Kind::integer, v, {}}); }
  bool number_unsigned(json::number_unsigned_t v) {
    if (v > static_cast<json::number_unsigned_t>(std::numeric_limits<std::int64_t>::max())) {
      return scalar(Value{Kind::other, 0, {}});
    }
    return scalar(Value{Kind::integer, static_cast<std::int64_t>(v), {}});
  }
  bool number_float(json::number_float_t, const json::string_t&) { return scalar(Value{Kind::other, 0, {}}); }
  bool string(json::string_t& v) { return scalar(Value{Kind::string, 0, std::move(v)}); }
  bool binary(json::binary_t&) { return scalar(Value{Kind::other, 0, {}}); }

  bool start_object(std::size_t) {
    if (depth_ == 0) {
      depth_ = 1;
      return true;
    }
    if (depth_ == 1 && classify(top_key_) != Section::other) {
      schema_fail(std::string("top-level \"") + top_key_ + "\" must be an array");
    }
    if (depth_ == 2 && in_section()) begin_record();
    ++depth_;
    return true;
  }

  bool end_object() {
    if (depth_ == 3 && in_section()) end_record();
    --depth_;
    return true;
  }

  bool start_array(std::size_t) {
    if (depth_ == 0) schema_fail("document root must be an object");
    if (depth_ == 1) {
      section_ = classify(top_key_);
      record_index_ = 0;
      if (section_ == Section::images) seen_images_ = true;
      if (section_ == Section::categories) seen_categories_ = true;
      if (section_ == Section::annotations) seen_annotations_ = true;
    } else if (depth_ == 2 && in_section()) {
      schema_fail(where() + ": expected an object");
    }
    ++depth_;
    return true;
  }

  bool end_array() {
    --depth_;
    if (depth_ == 1) section_ = Section::none;
    return true;
  }

  bool key(json::string_t& k) {
    if (depth_ == 1) {
      top_key_ = k;
      // A non-array value under a section key is rejected in scalar()/start_object().
      section_ = Section::none;
    } else if (depth_ == 3) {
      field_ = k;
    }
    return true;
  }

  bool parse_error(std::size_t position, const std::string& last_token, const nlohmann::detail::exception& ex) {
    error_position_ = position;
    error_message_ = ex.what();
    (void)last_token;
    return false;
  }

  std::optional<std::size_t> error_position() const { return error_position_; }
  const std::string& error_message() const { return error_message_; }

  void finish() const {
    if (!seen_images_) throw ParseError("missing top-level \"images\" array");
    if (!seen_categories_) throw ParseError("missing top-level \"categories\" array");
    if (!seen_annotations_) throw ParseError("missing top-level \"annotations\" array");
  }

 private:
  enum class Kind { null, boolean, integer, string, other };
  struct Value {
    Kind kind = Kind::null;
    std::int64_t integer = 0;
    std::string text;
  };

  static Section classify(const std::string& key) {
    if (key == "images") return Section::images;
    if (key == "categories") return Section::categories;
    if (key == "annotations") return Section::annotations;
    return Section::other;
  }

  bool in_section() const {
    return section_ == Section::images || section_ == Section::categories || section_ == Section::annotations;
  }

  [[noreturn]] void schema_fail(const std::string& message) const { throw ParseError(message); }

  std::string where() const {
    std::ostringstream os;
    os << section_name(section_) << "[" << record_index_ << "]";
    return os.str();
  }

  bool scalar(Value v) {
    if (depth_ == 0) schema_fail("document root must be an object");
    if (depth_ == 1) {
      if (classify(top_key_) != Section::other) {
        schema_fail(std::string("top-level \"") + top_key_ + "\" must be an array");
      }
      return true;
    }
    if (depth_ == 2 && in_section()) schema_fail(where() + ": expected an object");
    if (depth_ == 3 && in_section()) assign(std::move(v));
    return true;
  }

  std::int64_t integer_field(const Value& v) const {
    if (v.kind != Kind::integer) schema_fail(where() + ": \"" + field_ + "\" must be an integer");
    return v.integer;
  }

  std::string string_field(Value& v) const {
    if (v.kind != Kind::string) schema_fail(where() + ": \"" + field_ + "\" must be a string");
    return std::move(v.text);
  }

  void begin_record() {
    has_id_ = has_name_ = has_image_ = has_category_ = false;
    image_ = ImageRecord{};
    category_ = CategoryRecord{};
    annotation_ = AnnotationRecord{};
  }

  void assign(Value v) {
    switch (section_) {
      case Section::images:
        if (field_ == "id") {
          image_.id = integer_field(v);
          has_id_ = true;
        }
        break;
      case Section::categories:
        if (field_ == "id") {
          category_.id = integer_field(v);
          has_id_ = true;
        } else if (field_ == "name") {
          category_.name = string_field(v);
          has_name_ = true;
        } else if (field_ == "supercategory") {
          category_.supercategory = string_field(v);
        }
        break;
      case Section::annotations:
        if (field_ == "image_id") {
          annotation_.image_id = integer_field(v);
          has_image_ = true;
        } else if (field_ == "category_id") {
          annotation_.category_id = integer_field(v);
          has_category_ = true;
        } else if (field_ == "iscrowd") {
          if (v.kind != Kind::integer && v.kind != Kind::boolean) {
            schema_fail(where() + ": \"iscrowd\" must be 0/1 or a boolean");
          }
          annotation_.iscrowd = v.integer != 0;
        }
        break;
      default:
        break;
    }
  }

  void end_record() {
    switch (section_) {
      case Section::images:
        if (!has_id_) schema_fail(where() + ": missing \"id\"");
        out_.images.push_back(image_);
        break;
      case Section::categories:
        if (!has_id_) schema_fail(where() + ": missing \"id\"");
        if (!has_name_) schema_fail(where() + ": missing \"name\"");
        out_.categories.push_back(std::move(category_));
        break;
      case Section::annotations:
        if (!has_image_) schema_fail(where() + ": missing \"image_id\"");
        if (!has_category_) schema_fail(where() + ": missing \"category_id\"");
        out_.annotations.push_back(annotation_);
        break;
      default:
        break;
    }
    ++record_index_;
  }

  AnnotationDataset& out_;
  int depth_ = 0;
  Section section_ = Section::none;
  std::string top_key_;
  std::string field_;
  std::size_t record_index_ = 0;
  bool seen_images_ = false;
  bool seen_categories_ = false;
  bool seen_annotations_ = false;

  bool has_id_ = false, has_name_ = false, has_image_ = false, has_category_ = false;
  ImageRecord image_;
  CategoryRecord category_;
  AnnotationRecord annotation_;

  std::optional<std::size_t> error_position_;
  std::string error_message_;
};

std::uint64_t word_count(std::size_t bits) { return (bits + 63) / 64; }

}  // namespace

AnnotationDataset parse_annotations(std::string_view document) {
  AnnotationDataset dataset;
  CocoSax sax(dataset);
  const bool ok = json::sax_parse(document.begin(), document.end(), &sax);
  if (!ok) {
    const std::size_t byte = sax.error_position().value_or(0);
    const std::size_t line = line_of(document, byte);
    std::ostringstream os;
    os << "malformed annotation document at byte " << byte << " (line " << line << "): " << sax.error_message();
    throw ParseError(os.str(), byte, line);
  }
  sax.finish();
  validate(dataset);
  return dataset;
}

AnnotationDataset parse_annotations(std::istream& in) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_annotations(std::string_view(text));
}

AnnotationDataset load_annotations(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open annotation file " + path.string());
  std::string text;
  in.seekg(0, std::ios::end);
  const auto size = in.tellg();
  if (size > 0) {
    text.resize(static_cast<std::size_t>(size));
    in.seekg(0);
    in.read(text.data(), size);
  }
  try {
    return parse_annotations(std::string_view(text));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.byte(), e.line());
  } catch (const IntegrityError& e) {
    throw IntegrityError(path.string() + ": " + e.what());
  }
}

void validate(const AnnotationDataset& dataset) {
  std::unordered_set<ImageId> images;
  images.reserve(dataset.images.size());
  for (std::size_t i = 0; i < dataset.images.size(); ++i) {
    if (!images.insert(dataset.images[i].id).second) {
      throw IntegrityError("images[" + std::to_string(i) + "]: duplicate image id " +
                           std::to_string(dataset.images[i].id));
    }
  }

  std::unordered_set<CategoryId> categories;
  std::unordered_set<std::string> names;
  for (std::size_t i = 0; i < dataset.categories.size(); ++i) {
    const auto& c = dataset.categories[i];
    if (!categories.insert(c.id).second) {
      throw IntegrityError("categories[" + std::to_string(i) + "]: duplicate category id " + std::to_string(c.id));
    }
    if (!names.insert(c.name).second) {
      throw IntegrityError("categories[" + std::to_string(i) + "]: duplicate category name \"" + c.name + "\"");
    }
  }

  for (std::size_t i = 0; i < dataset.annotations.size(); ++i) {
    const auto& a = dataset.annotations[i];
    if (!images.contains(a.image_id)) {
      throw IntegrityError("annotations[" + std::to_string(i) + "]: image_id " + std::to_string(a.image_id) +
                           " references no image");
    }
    if (!categories.contains(a.category_id)) {
      throw IntegrityError("annotations[" + std::to_string(i) + "]: category_id " + std::to_string(a.category_id) +
                           " references no category");
    }
  }
}

AnnotationDataset merge_datasets(const AnnotationDataset& a, const AnnotationDataset& b) {
  const auto is_empty = [](const AnnotationDataset& d) {
    return d.categories.empty() && d.images.empty() && d.annotations.empty();
  };
  if (is_empty(b)) return a;
  if (is_empty(a)) return b;

  auto by_id = [](const AnnotationDataset& d) {
    std::vector<CategoryRecord> sorted = d.categories;
    std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) { return x.id < y.id; });
    return sorted;
  };
  const auto ca = by_id(a);
  const auto cb = by_id(b);
  if (ca.size() != cb.size()) {
    throw MergeError("category tables differ in size (" + std::to_string(ca.size()) + " vs " +
                     std::to_string(cb.size()) + ")");
  }
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (ca[i].id != cb[i].id || ca[i].name != cb[i].name) {
      throw MergeError("category tables conflict at id " + std::to_string(ca[i].id) + " (\"" + ca[i].name +
                       "\" vs id " + std::to_string(cb[i].id) + " \"" + cb[i].name + "\")");
    }
  }

  std::unordered_set<ImageId> ids;
  ids.reserve(a.images.size());
  for (const auto& img : a.images) ids.insert(img.id);
  for (const auto& img : b.images) {
    if (ids.contains(img.id)) throw MergeError("image id " + std::to_string(img.id) + " appears in both datasets");
  }

  AnnotationDataset merged = a;
  merged.images.insert(merged.images.end(), b.images.begin(), b.images.end());
  merged.annotations.insert(merged.annotations.end(), b.annotations.begin(), b.annotations.end());
  return merged;
}

CategoryImageIndex CategoryImageIndex::build(const AnnotationDataset& dataset, IndexOptions options) {
  CategoryImageIndex index;
  index.include_crowd_ = options.include_crowd;
  index.annotation_count_ = dataset.annotations.size();

  index.universe_.reserve(dataset.images.size());
  for (const auto& img : dataset.images) index.universe_.push_back(img.id);
  std::sort(index.universe_.begin(), index.universe_.end());

  std::vector<CategoryRecord> categories = dataset.categories;
  std::sort(categories.begin(), categories.end(), [](const auto& x, const auto& y) { return x.id < y.id; });

  std::unordered_map<ImageId, std::size_t> image_pos;
  image_pos.reserve(index.universe_.size());
  for (std::size_t i = 0; i < index.universe_.size(); ++i) image_pos.emplace(index.universe_[i], i);

  std::unordered_map<CategoryId, std::size_t> category_pos;
  for (std::size_t i = 0; i < categories.size(); ++i) category_pos.emplace(categories[i].id, i);

  std::vector<std::vector<std::size_t>> members(categories.size());
  for (const auto& a : dataset.annotations) {
    if (a.iscrowd && !options.include_crowd) continue;
    const auto c = category_pos.find(a.category_id);
    const auto img = image_pos.find(a.image_id);
    if (c == category_pos.end() || img == image_pos.end()) {
      throw IntegrityError("annotation references image " + std::to_string(a.image_id) + " / category " +
                           std::to_string(a.category_id) + " outside the dataset");
    }
    members[c->second].push_back(img->second);
  }

  const std::size_t words = word_count(index.universe_.size());
  index.entries_.reserve(categories.size());
  for (std::size_t c = 0; c < categories.size(); ++c) {
    auto& positions = members[c];
    std::sort(positions.begin(), positions.end());
    positions.erase(std::unique(positions.begin(), positions.end()), positions.end());

    Entry entry;
    entry.category = std::move(categories[c]);
    entry.images.reserve(positions.size());
    entry.bits.assign(words, 0);
    for (const std::size_t p : positions) {
      entry.images.push_back(index.universe_[p]);
      entry.bits[p / 64] |= std::uint64_t{1} << (p % 64);
    }
    index.entries_.push_back(std::move(entry));
  }
  return index;
}

std::size_t CategoryImageIndex::position(CategoryId id) const {
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), id,
                                   [](const Entry& e, CategoryId v) { return e.category.id < v; });
  if (it == entries_.end() || it->category.id != id) {
    throw LookupError("unknown category id " + std::to_string(id));
  }
  return static_cast<std::size_t>(it - entries_.begin());
}

const CategoryImageIndex::Entry& CategoryImageIndex::at(CategoryId id) const { return entries_[position(id)]; }

bool CategoryImageIndex::contains(CategoryId id) const noexcept {
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), id,
                                   [](const Entry& e, CategoryId v) { return e.category.id < v; });
  return it != entries_.end() && it->category.id == id;
}

}  // namespace constellation
