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

// COCO-style documents: "images", "annotations" and "categories" arrays with
// bbox = [x, y, width, height] in absolute pixels. Category ids are remapped
// to dense class ids in source order; the original id is kept on the
// vocabulary entry so a written document reuses it.

#include <filesystem>
#include <map>
#include <set>
#include <string>

#include "detassess/annotate/native.hpp"

namespace detassess {

inline DatasetManifest parse_coco(std::string_view text) {
  using namespace detail;
  const json doc = parse_json(text, "coco");
  if (!doc.is_object()) {
    throw Error(ErrorCode::kMalformed, "coco: top level must be an object");
  }
  DatasetManifest m;
  if (doc.contains("info") && doc.at("info").is_object() &&
      doc.at("info").contains("split")) {
    m.split_name = get_string(doc.at("info").at("split"), "info.split");
  }

  std::map<long long, int> category_to_class;
  for (const auto& c : get_array(require(doc, "categories", "coco"), "categories")) {
    const auto id = get_integer(require(c, "id", "category"), "category.id");
    const auto name = get_string(require(c, "name", "category"), "category.name");
    if (category_to_class.count(id)) {
      throw Error(ErrorCode::kMalformed,
                  "coco: duplicate category id " + std::to_string(id));
    }
    category_to_class[id] = m.vocabulary.add(name, id);
  }

  std::map<long long, std::size_t> image_index;
  std::set<std::string> keys;
  for (const auto& im : get_array(require(doc, "images", "coco"), "images")) {
    const auto id = get_integer(require(im, "id", "image"), "image.id");
    const std::string where = "image " + std::to_string(id);
    ImageRecord rec;
    if (im.contains("file_name")) {
      rec.path = get_string(im.at("file_name"), where + ".file_name");
    }
    if (im.contains("image_key")) {
      rec.image_id = get_string(im.at("image_key"), where + ".image_key");
    } else if (!rec.path.empty()) {
      rec.image_id = std::filesystem::path(rec.path).stem().string();
    } else {
      rec.image_id = std::to_string(id);
    }
    rec.dims.width = static_cast<int>(get_integer(require(im, "width", where), where));
    rec.dims.height = static_cast<int>(get_integer(require(im, "height", where), where));
    if (!rec.dims.is_valid()) {
      throw Error(ErrorCode::kMalformed, where + ": dims must be positive");
    }
    if (im.contains("pose_ref") && !im.at("pose_ref").is_null()) {
      rec.pose_ref = get_string(im.at("pose_ref"), where + ".pose_ref");
    }
    if (image_index.count(id) || !keys.insert(rec.image_id).second) {
      throw Error(ErrorCode::kMalformed, "coco: duplicate " + where);
    }
    image_index[id] = m.images.size();
    m.images.push_back(std::move(rec));
  }

  for (const auto& a : get_array(require(doc, "annotations", "coco"), "annotations")) {
    const std::string where = "annotation";
    const auto img_id = get_integer(require(a, "image_id", where), where + ".image_id");
    const auto cat_id = get_integer(require(a, "category_id", where), where + ".category_id");
    const auto img = image_index.find(img_id);
    if (img == image_index.end()) {
      throw Error(ErrorCode::kDanglingReference,
                  "annotation cites unknown image " + std::to_string(img_id));
    }
    const auto cls = category_to_class.find(cat_id);
    if (cls == category_to_class.end()) {
      throw Error(ErrorCode::kDanglingReference,
                  "annotation cites unknown category " + std::to_string(cat_id));
    }
    const auto& bb = require(a, "bbox", where);
    if (!bb.is_array() || bb.size() != 4) {
      throw Error(ErrorCode::kMalformed, "annotation bbox must have 4 numbers");
    }
    const double x = get_number(bb[0], where), y = get_number(bb[1], where);
    const double w = get_number(bb[2], where), h = get_number(bb[3], where);
    if (w < 0.0 || h < 0.0) {
      throw Error(ErrorCode::kMalformed, "annotation bbox has negative size");
    }
    GroundTruthBox gt{cls->second, Box2D{x, y, x + w, y + h}, BoxEncoding::kPixel};
    if (a.contains("source_encoding")) {
      gt.source_encoding = encoding_from_string(
          get_string(a.at("source_encoding"), where), where);
    }
    m.images[img->second].boxes.push_back(gt);
  }
  return m;
}

inline std::string write_coco(const DatasetManifest& m) {
  using detail::json;
  // Reuse source category ids only when every class carries a distinct one.
  bool use_source = !m.vocabulary.empty();
  std::set<long long> source_ids;
  for (const auto& e : m.vocabulary.entries()) {
    if (!e.source_id || !source_ids.insert(*e.source_id).second) use_source = false;
  }
  const auto category_id = [&](int class_id) -> long long {
    if (use_source && m.vocabulary.contains(class_id)) {
      return *m.vocabulary[class_id].source_id;
    }
    return class_id;
  };

  json categories = json::array();
  for (const auto& e : m.vocabulary.entries()) {
    categories.push_back({{"id", category_id(e.class_id)}, {"name", e.name}});
  }
  json images = json::array();
  json annotations = json::array();
  long long ann_id = 1;
  for (std::size_t i = 0; i < m.images.size(); ++i) {
    const auto& img = m.images[i];
    const long long img_id = static_cast<long long>(i) + 1;
    json rec = {{"id", img_id},
                {"file_name", img.path},
                {"image_key", img.image_id},
                {"width", img.dims.width},
                {"height", img.dims.height}};
    if (img.pose_ref) rec["pose_ref"] = *img.pose_ref;
    images.push_back(std::move(rec));
    for (const auto& b : img.boxes) {
      annotations.push_back(
          {{"id", ann_id++},
           {"image_id", img_id},
           {"category_id", category_id(b.class_id)},
           {"bbox", json::array({b.box.x_min, b.box.y_min, b.box.width(),
                                 b.box.height()})},
           {"area", area(b.box)},
           {"iscrowd", 0},
           {"source_encoding", to_string(b.source_encoding)}});
    }
  }
  nlohmann::ordered_json doc;
  doc["info"] = {{"split", m.split_name},
                 {"producer", "detassess " + std::string(kVersion)}};
  doc["images"] = std::move(images);
  doc["annotations"] = std::move(annotations);
  doc["categories"] = std::move(categories);
  return doc.dump(2) + "\n";
}

}  // namespace detassess
