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

// Training recipe for an external trainer reproducing the reference
// detector: 640x640 squashed inputs, AdamW for 200 epochs, three
// parameter groups with their own weight decay.
//
//   {
//     "format": "detassess-training-recipe", "version": 1,
//     "detector_family": "YOLOv8l",
//     "epochs": 200, "optimizer": "AdamW", "learning_rate": 0.000714,
//     "momentum": 0.9, "batch_size": 200, "image_size": 640,
//     "weight_decay_groups": [
//       {"params": 97, "kind": "weight", "weight_decay": 0.0},
//       {"params": 104, "kind": "weight", "weight_decay": 0.0015625},
//       {"params": 103, "kind": "bias", "weight_decay": 0.0}]
//   }

#include <string>
#include <vector>

#include "detassess/detail/json_util.hpp"

namespace detassess {

inline constexpr std::string_view kRecipeFormat = "detassess-training-recipe";

struct WeightDecayGroup {
  int params = 0;
  std::string kind;
  double weight_decay = 0.0;

  friend bool operator==(const WeightDecayGroup&, const WeightDecayGroup&) = default;
};

struct TrainingRecipe {
  std::string detector_family = "YOLOv8l";
  int epochs = 200;
  std::string optimizer = "AdamW";
  double learning_rate = 7.14e-4;
  double momentum = 0.9;
  int batch_size = 200;
  int image_size = 640;
  std::vector<WeightDecayGroup> weight_decay_groups = {
      {97, "weight", 0.0}, {104, "weight", 0.0015625}, {103, "bias", 0.0}};

  friend bool operator==(const TrainingRecipe&, const TrainingRecipe&) = default;
};

inline std::string write_recipe(const TrainingRecipe& r) {
  nlohmann::ordered_json doc;
  doc["format"] = kRecipeFormat;
  doc["version"] = 1;
  doc["detector_family"] = r.detector_family;
  doc["epochs"] = r.epochs;
  doc["optimizer"] = r.optimizer;
  doc["learning_rate"] = r.learning_rate;
  doc["momentum"] = r.momentum;
  doc["batch_size"] = r.batch_size;
  doc["image_size"] = r.image_size;
  auto groups = nlohmann::ordered_json::array();
  for (const auto& g : r.weight_decay_groups) {
    nlohmann::ordered_json gj;
    gj["params"] = g.params;
    gj["kind"] = g.kind;
    gj["weight_decay"] = g.weight_decay;
    groups.push_back(std::move(gj));
  }
  doc["weight_decay_groups"] = std::move(groups);
  return doc.dump(2) + "\n";
}

inline TrainingRecipe parse_recipe(std::string_view text) {
  using namespace detail;
  const json doc = parse_json(text, "recipe");
  TrainingRecipe r;
  const auto positive_int = [&](const char* key) {
    const auto v = get_integer(require(doc, key, "recipe"), key);
    if (v <= 0) throw Error(ErrorCode::kMalformed, std::string(key) + " must be > 0");
    return static_cast<int>(v);
  };
  const auto positive_real = [&](const char* key) {
    const double v = get_number(require(doc, key, "recipe"), key);
    if (!(v > 0.0)) throw Error(ErrorCode::kMalformed, std::string(key) + " must be > 0");
    return v;
  };
  r.detector_family = get_string(require(doc, "detector_family", "recipe"), "detector_family");
  r.epochs = positive_int("epochs");
  r.optimizer = get_string(require(doc, "optimizer", "recipe"), "optimizer");
  r.learning_rate = positive_real("learning_rate");
  r.momentum = positive_real("momentum");
  r.batch_size = positive_int("batch_size");
  r.image_size = positive_int("image_size");
  r.weight_decay_groups.clear();
  for (const auto& g : get_array(require(doc, "weight_decay_groups", "recipe"),
                                 "weight_decay_groups")) {
    WeightDecayGroup wg;
    wg.params = static_cast<int>(get_integer(require(g, "params", "group"), "params"));
    wg.kind = get_string(require(g, "kind", "group"), "kind");
    wg.weight_decay = get_number(require(g, "weight_decay", "group"), "weight_decay");
    if (wg.params <= 0 || wg.weight_decay < 0.0) {
      throw Error(ErrorCode::kMalformed, "invalid weight decay group");
    }
    r.weight_decay_groups.push_back(std::move(wg));
  }
  return r;
}

}  // namespace detassess
