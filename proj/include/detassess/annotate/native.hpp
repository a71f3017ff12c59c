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

// Native manifest document:
//
//   {
//     "format": "detassess-manifest", "version": 1, "split": "valid",
//     "classes": [{"id": 0, "name": "spy_radar"}, ...],
//     "images": [{"image_id": "a", "path": "images/a.jpg",
//                 "width": 640, "height": 640, "pose_ref": "pose_0001",
//                 "boxes": [{"class_id": 0, "bbox": [x0, y0, x1, y1],
//                            "encoding": "normalized"}]}]
//   }
//
// Coordinates are written in shortest round-trip form, so a parse of the
// written document reproduces every double exactly.

#include <set>
#include <string>

#include "detassess/annotate/types.hpp"
#include "detassess/detail/json_util.hpp"

namespace detassess {

inline constexpr std::string_view kManifestFormat = "detassess-manifest";

namespace detail {

inline json vocabulary_to_json(const ClassVocabulary& v) {
  json classes = json::array();
  for (const auto& e : v.entries()) {
    json c = {{"id", e.class_id}, {"name", e.name}};
    if (e.source_id) c["source_id"] = *e.source_id;
    classes.push_back(std::move(c));
  }
  return classes;
}

inline ClassVocabulary vocabulary_from_json(const json& classes,
                                            const std::string& where) {
  ClassVocabulary v;
  int expected = 0;
  for (const auto& c : get_array(classes, where)) {
    const auto id = get_integer(require(c, "id", where), where + ".id");
    if (id != expected) {
      throw Error(ErrorCode::kMalformed,
                  where + ": class ids must be dense and ordered from 0");
    }
    std::optional<long long> source;
    if (c.contains("source_id")) {
      source = get_integer(c.at("source_id"), where + ".source_id");
    }
    v.add(get_string(require(c, "name", where), where + ".name"), source);
    ++expected;
  }
  return v;
}

inline BoxEncoding encoding_from_string(const std::string& s,
                                        const std::string& where) {
  if (s == "normalized") return BoxEncoding::kNormalized;
  if (s == "pixel") return BoxEncoding::kPixel;
  throw Error(ErrorCode::kMalformed, where + ": unknown encoding '" + s + "'");
}

}  // namespace detail

inline std::string write_manifest(const DatasetManifest& m) {
  using detail::json;
  json images = json::array();
  for (const auto& img : m.images) {
    json boxes = json::array();
    for (const auto& b : img.boxes) {
      boxes.push_back({{"class_id", b.class_id},
                       {"bbox", detail::box_to_json(b.box)},
                       {"encoding", to_string(b.source_encoding)}});
    }
    json rec = {{"image_id", img.image_id},
                {"path", img.path},
                {"width", img.dims.width},
                {"height", img.dims.height}};
    if (img.pose_ref) rec["pose_ref"] = *img.pose_ref;
    rec["boxes"] = std::move(boxes);
    images.push_back(std::move(rec));
  }
  nlohmann::ordered_json doc;
  doc["format"] = kManifestFormat;
  doc["version"] = 1;
  doc["split"] = m.split_name;
  doc["classes"] = detail::vocabulary_to_json(m.vocabulary);
  doc["images"] = std::move(images);
  return doc.dump(2) + "\n";
}

inline DatasetManifest parse_manifest(std::string_view text) {
  using namespace detail;
  const json doc = parse_json(text, "manifest");
  if (!doc.is_object()) {
    throw Error(ErrorCode::kMalformed, "manifest: top level must be an object");
  }
  if (doc.contains("format") &&
      get_string(doc.at("format"), "manifest.format") != kManifestFormat) {
    throw Error(ErrorCode::kMalformed, "manifest: unexpected format tag");
  }
  DatasetManifest m;
  if (doc.contains("split")) m.split_name = get_string(doc.at("split"), "split");
  m.vocabulary = vocabulary_from_json(require(doc, "classes", "manifest"),
                                      "manifest.classes");
  std::set<std::string> seen;
  for (const auto& r : get_array(require(doc, "images", "manifest"),
                                 "manifest.images")) {
    ImageRecord img;
    img.image_id = get_string(require(r, "image_id", "image"), "image_id");
    const std::string where = "image '" + img.image_id + "'";
    if (!seen.insert(img.image_id).second) {
      throw Error(ErrorCode::kMalformed, "duplicate " + where);
    }
    if (r.contains("path")) img.path = get_string(r.at("path"), where + ".path");
    img.dims.width = static_cast<int>(get_integer(require(r, "width", where), where));
    img.dims.height = static_cast<int>(get_integer(require(r, "height", where), where));
    if (!img.dims.is_valid()) {
      throw Error(ErrorCode::kMalformed, where + ": dims must be positive");
    }
    if (r.contains("pose_ref") && !r.at("pose_ref").is_null()) {
      img.pose_ref = get_string(r.at("pose_ref"), where + ".pose_ref");
    }
    if (r.contains("boxes")) {
      for (const auto& b : get_array(r.at("boxes"), where + ".boxes")) {
        GroundTruthBox gt;
        gt.class_id = static_cast<int>(
            get_integer(require(b, "class_id", where), where + ".class_id"));
        gt.box = get_corner_box(require(b, "bbox", where), where + ".bbox");
        if (b.contains("encoding")) {
          gt.source_encoding = encoding_from_string(
              get_string(b.at("encoding"), where), where);
        }
        img.boxes.push_back(gt);
      }
    }
    m.images.push_back(std::move(img));
  }
  return m;
}

}  // namespace detassess
