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

#include <set>
#include <string>
#include <vector>

#include "detassess/annotate/types.hpp"

namespace detassess {

enum class ViolationKind {
  kOutOfBounds,
  kDegenerate,
  kUnknownClass,
  kInvalidBox,
  kDuplicateImageId,
  kInvalidDims,
};

inline const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::kOutOfBounds: return "OutOfBounds";
    case ViolationKind::kDegenerate: return "Degenerate";
    case ViolationKind::kUnknownClass: return "UnknownClass";
    case ViolationKind::kInvalidBox: return "InvalidBox";
    case ViolationKind::kDuplicateImageId: return "DuplicateImageId";
    case ViolationKind::kInvalidDims: return "InvalidDims";
  }
  return "Unknown";
}

struct Violation {
  ViolationKind kind;
  std::string image_id;
  // Box position within the image record; -1 for image-level findings.
  int box_index = -1;
  std::string message;
};

inline std::string to_string(const Violation& v) {
  std::string s = std::string(to_string(v.kind)) + " in image '" + v.image_id + "'";
  if (v.box_index >= 0) s += " box " + std::to_string(v.box_index);
  if (!v.message.empty()) s += ": " + v.message;
  return s;
}

// A box may collect several violations (e.g. out of bounds and unknown class).
inline std::vector<Violation> validate_manifest(const DatasetManifest& m) {
  std::vector<Violation> out;
  std::set<std::string> ids;
  for (const auto& img : m.images) {
    if (!ids.insert(img.image_id).second) {
      out.push_back({ViolationKind::kDuplicateImageId, img.image_id, -1, ""});
    }
    if (!img.dims.is_valid()) {
      out.push_back({ViolationKind::kInvalidDims, img.image_id, -1, ""});
      continue;
    }
    for (std::size_t i = 0; i < img.boxes.size(); ++i) {
      const auto& gt = img.boxes[i];
      const int idx = static_cast<int>(i);
      if (!m.vocabulary.contains(gt.class_id)) {
        out.push_back({ViolationKind::kUnknownClass, img.image_id, idx,
                       "class " + std::to_string(gt.class_id) + " with " +
                           std::to_string(m.vocabulary.size()) + " classes"});
      }
      if (!gt.box.is_valid()) {
        out.push_back({ViolationKind::kInvalidBox, img.image_id, idx, to_string(gt.box)});
        continue;
      }
      if (gt.box.x_min < 0.0 || gt.box.y_min < 0.0 ||
          gt.box.x_max > img.dims.width || gt.box.y_max > img.dims.height) {
        out.push_back({ViolationKind::kOutOfBounds, img.image_id, idx, to_string(gt.box)});
      }
      if (gt.box.is_degenerate()) {
        out.push_back({ViolationKind::kDegenerate, img.image_id, idx, to_string(gt.box)});
      }
    }
  }
  return out;
}

}  // namespace detassess
