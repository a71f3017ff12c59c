/* Copyright 2026 The detassess Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "detassess/boxmath.hpp"

namespace detassess {

struct ClassEntry {
  int class_id = 0;
  std::string name;
  // Category id in the source document when imported from COCO.
  std::optional<long long> source_id;

  friend bool operator==(const ClassEntry&, const ClassEntry&) = default;
};

// Dense ids 0..K-1, names unique and nonempty.
class ClassVocabulary {
 public:
  ClassVocabulary() = default;

  static ClassVocabulary from_names(const std::vector<std::string>& names) {
    ClassVocabulary v;
    for (const auto& n : names) v.add(n);
    return v;
  }

  int add(const std::string& name,
          std::optional<long long> source_id = std::nullopt) {
    if (name.empty()) {
      throw Error(ErrorCode::kMalformed, "class name must be nonempty");
    }
    if (find(name)) {
      throw Error(ErrorCode::kMalformed, "duplicate class name '" + name + "'");
    }
    const int id = static_cast<int>(entries_.size());
    entries_.push_back(ClassEntry{id, name, source_id});
    return id;
  }

  std::optional<int> find(const std::string& name) const {
    for (const auto& e : entries_)
      if (e.name == name) return e.class_id;
    return std::nullopt;
  }

  bool contains(int class_id) const {
    return class_id >= 0 && class_id < static_cast<int>(entries_.size());
  }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const ClassEntry& operator[](int class_id) const { return entries_.at(class_id); }
  const std::vector<ClassEntry>& entries() const { return entries_; }

  std::string name_of(int class_id) const {
    return contains(class_id) ? entries_[class_id].name
                              : "class_" + std::to_string(class_id);
  }

  friend bool operator==(const ClassVocabulary&, const ClassVocabulary&) = default;

 private:
  std::vector<ClassEntry> entries_;
};

enum class BoxEncoding { kNormalized, kPixel };

inline const char* to_string(BoxEncoding e) {
  return e == BoxEncoding::kNormalized ? "normalized" : "pixel";
}

struct GroundTruthBox {
  int class_id = 0;
  Box2D box;
  BoxEncoding source_encoding = BoxEncoding::kPixel;
};

struct ImageRecord {
  std::string image_id;
  std::string path;
  ImageDims dims;
  std::vector<GroundTruthBox> boxes;
  std::optional<std::string> pose_ref;
};

struct DatasetManifest {
  ClassVocabulary vocabulary;
  std::vector<ImageRecord> images;
  std::string split_name;

  std::size_t box_count() const {
    std::size_t n = 0;
    for (const auto& img : images) n += img.boxes.size();
    return n;
  }

  const ImageRecord* find(const std::string& image_id) const {
    for (const auto& img : images)
      if (img.image_id == image_id) return &img;
    return nullptr;
  }

  void sort_by_image_id() {
    std::sort(images.begin(), images.end(),
              [](const ImageRecord& a, const ImageRecord& b) {
                return a.image_id < b.image_id;
              });
  }
};

struct Detection {
  std::string image_id;
  int class_id = 0;
  Box2D box;
  double score = 0.0;
};

// Detections grouped by image id; input order is preserved inside a group and
// a detection's position there is its tie-break index.
struct DetectionSet {
  std::map<std::string, std::vector<Detection>> groups;
  std::string producer;

  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& [id, dets] : groups) n += dets.size();
    return n;
  }

  void add(Detection d) {
    auto key = d.image_id;
    groups[key].push_back(std::move(d));
  }
};

}  // namespace detassess
