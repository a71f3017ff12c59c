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

// Detection exchange format: JSON Lines, one record per detection.
//
//   {"image_id": "img_001", "class_id": 0, "bbox": [x0, y0, x1, y1], "score": 0.91}
//
// Boxes are absolute pixel corners of the original image. Blank lines are
// ignored. An optional record {"producer": "..."} with no image_id names the
// tool that produced the file.

#include <string>
#include <string_view>

#include "detassess/annotate/types.hpp"
#include "detassess/detail/json_util.hpp"
#include "detassess/detail/text.hpp"

namespace detassess {

inline Detection parse_detection_record(std::string_view line) {
  using namespace detail;
  const json r = parse_json(line, "detection");
  if (!r.is_object()) {
    throw Error(ErrorCode::kMalformed, "detection record must be an object");
  }
  Detection d;
  d.image_id = get_string(require(r, "image_id", "detection"), "image_id");
  const auto cls = get_integer(require(r, "class_id", "detection"), "class_id");
  if (cls < 0 || cls > 1'000'000) {
    throw Error(ErrorCode::kMalformed, "class_id out of range");
  }
  d.class_id = static_cast<int>(cls);
  d.box = get_corner_box(require(r, "bbox", "detection"), "bbox");
  d.score = get_number(require(r, "score", "detection"), "score");
  if (d.score < 0.0 || d.score > 1.0) {
    throw Error(ErrorCode::kScoreOutOfRange,
                "score " + std::to_string(d.score) + " outside [0,1]");
  }
  return d;
}

inline DetectionSet parse_detections(std::string_view text) {
  DetectionSet set;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string_view line = detail::strip_cr(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (detail::is_blank(line)) continue;
    try {
      if (line.find("\"image_id\"") == std::string_view::npos) {
        const auto r = detail::parse_json(line, "detection");
        if (r.is_object() && r.contains("producer")) {
          set.producer = detail::get_string(r.at("producer"), "producer");
          continue;
        }
      }
      set.add(parse_detection_record(line));
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return set;
}

inline std::string write_detection_record(const Detection& d) {
  detail::ordered_json r;
  r["image_id"] = d.image_id;
  r["class_id"] = d.class_id;
  r["bbox"] = {d.box.x_min, d.box.y_min, d.box.x_max, d.box.y_max};
  r["score"] = d.score;
  return r.dump();
}

// Groups in image-id order, input order inside each group.
inline std::string write_detections(const DetectionSet& set) {
  std::string out;
  if (!set.producer.empty()) {
    out += detail::ordered_json{{"producer", set.producer}}.dump() + "\n";
  }
  for (const auto& [id, dets] : set.groups)
    for (const auto& d : dets) out += write_detection_record(d) + "\n";
  return out;
}

}  // namespace detassess
