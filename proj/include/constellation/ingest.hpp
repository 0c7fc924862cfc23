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


#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace constellation {

using ImageId = std::int64_t;
using CategoryId = std::int64_t;

struct ImageRecord {
  ImageId id = 0;
};

struct CategoryRecord {
  CategoryId id = 0;
  std::string name;
  std::string supercategory;

  bool operator==(const CategoryRecord&) const = default;
};

struct AnnotationRecord {
  ImageId image_id = 0;
  CategoryId category_id = 0;
  bool iscrowd = false;
};

/// Images, categories and instance annotations of a COCO instances file.
/// Only the fields the co-occurrence graph needs are kept.
struct AnnotationDataset {
  std::vector<ImageRecord> images;
  std::vector<CategoryRecord> categories;
  std::vector<AnnotationRecord> annotations;
};

/// Parses a COCO-style document held in memory. Unknown keys and
/// annotation payloads (bbox, segmentation, area, ...) are skipped.
/// Throws ParseError on malformed JSON or schema violations and
/// IntegrityError on duplicate ids or dangling references.
AnnotationDataset parse_annotations(std::string_view document);
AnnotationDataset parse_annotations(std::istream& in);
AnnotationDataset load_annotations(const std::filesystem::path& path);

/// Checks the dataset invariants; throws IntegrityError naming the first
/// offending record.
void validate(const AnnotationDataset& dataset);

/// Concatenates two splits sharing one category table. A side with no
/// categories and no images acts as the identity.
AnnotationDataset merge_datasets(const AnnotationDataset& a, const AnnotationDataset& b);

struct IndexOptions {
  bool include_crowd = true;
};

/// Per-category sets of image ids, the A and B of the relative
/// co-occurrence. Categories are held in ascending id order.
///
/// Besides the sorted id lists, every category carries a bitset over the
/// image universe (images ordered by ascending id) so set intersections
/// reduce to word-wise AND + popcount.
class CategoryImageIndex {
 public:
  struct Entry {
    CategoryRecord category;
    std::vector<ImageId> images;        // sorted, unique
    std::vector<std::uint64_t> bits;    // bit k set <=> universe()[k] in images
  };

  CategoryImageIndex() = default;
  static CategoryImageIndex build(const AnnotationDataset& dataset, IndexOptions options = {});

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  const std::vector<ImageId>& universe() const noexcept { return universe_; }
  std::size_t annotation_count() const noexcept { return annotation_count_; }
  bool include_crowd() const noexcept { return include_crowd_; }

  /// Throws LookupError for an unknown id.
  const Entry& at(CategoryId id) const;
  std::size_t position(CategoryId id) const;
  bool contains(CategoryId id) const noexcept;

 private:
  std::vector<Entry> entries_;
  std::vector<ImageId> universe_;
  std::size_t annotation_count_ = 0;
  bool include_crowd_ = true;
};

inline CategoryImageIndex build_index(const AnnotationDataset& dataset, IndexOptions options = {}) {
  return CategoryImageIndex::build(dataset, options);
}

}  // namespace constellation
