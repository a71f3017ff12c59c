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

// Scene file:
//
//   {
//     "vessel": "sample destroyer", "bounding_radius": 80.0,
//     "classes": ["spy_radar", "vls"],
//     "components": [
//       {"name": "port SPY", "class_id": 0, "center": [20, 5.5, 15],
//        "half_extents": [1.8, 0.3, 1.8], "facing_normal": [0, 1, 0]}, ...]
//   }
//
// Coordinates are meters in the vessel frame (+X bow, +Y port, +Z up).
// facing_normal is optional and is normalized on load.

#include <string>
#include <vector>

#include "detassess/annotate/types.hpp"
#include "detassess/collect/geometry.hpp"
#include "detassess/detail/json_util.hpp"

namespace detassess {

struct LabeledComponent {
  std::string name;
  int class_id = 0;
  Vec3 center;
  Vec3 half_extents{1, 1, 1};
  std::optional<Vec3> facing_normal;

  // Box corners in the vessel frame.
  std::array<Vec3, 8> corners() const {
    std::array<Vec3, 8> out;
    for (int i = 0; i < 8; ++i) {
      out[i] = center + Vec3{(i & 1 ? 1.0 : -1.0) * half_extents.x,
                             (i & 2 ? 1.0 : -1.0) * half_extents.y,
                             (i & 4 ? 1.0 : -1.0) * half_extents.z};
    }
    return out;
  }
};

struct SceneSpec {
  std::string vessel;
  double bounding_radius = 1.0;
  ClassVocabulary vocabulary;
  std::vector<LabeledComponent> components;
};

namespace detail {

inline Vec3 get_vec3(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 3) {
    throw Error(ErrorCode::kMalformed, where + ": expected 3 numbers");
  }
  return {get_number(v[0], where), get_number(v[1], where), get_number(v[2], where)};
}

inline json vec3_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

}  // namespace detail

inline SceneSpec parse_scene(std::string_view text) {
  using namespace detail;
  const json doc = parse_json(text, "scene");
  if (!doc.is_object()) throw Error(ErrorCode::kMalformed, "scene must be an object");
  SceneSpec s;
  s.vessel = doc.contains("vessel") ? get_string(doc.at("vessel"), "vessel") : "vessel";
  s.bounding_radius = get_number(require(doc, "bounding_radius", "scene"), "bounding_radius");
  if (!(s.bounding_radius > 0.0)) {
    throw Error(ErrorCode::kMalformed, "bounding_radius must be > 0");
  }
  int max_class = -1;
  for (const auto& c : get_array(require(doc, "components", "scene"), "components")) {
    LabeledComponent comp;
    const std::string where = "component " + std::to_string(s.components.size());
    comp.name = c.contains("name") ? get_string(c.at("name"), where + ".name") : where;
    const auto cls = get_integer(require(c, "class_id", where), where + ".class_id");
    if (cls < 0 || cls > 1'000'000) {
      throw Error(ErrorCode::kMalformed, where + ": class_id out of range");
    }
    comp.class_id = static_cast<int>(cls);
    max_class = std::max(max_class, comp.class_id);
    comp.center = get_vec3(require(c, "center", where), where + ".center");
    comp.half_extents = get_vec3(require(c, "half_extents", where), where + ".half_extents");
    if (!(comp.half_extents.x > 0 && comp.half_extents.y > 0 && comp.half_extents.z > 0)) {
      throw Error(ErrorCode::kMalformed, where + ": half_extents must be > 0");
    }
    if (c.contains("facing_normal") && !c.at("facing_normal").is_null()) {
      const Vec3 n = get_vec3(c.at("facing_normal"), where + ".facing_normal");
      if (!(norm(n) > 1e-12)) {
        throw Error(ErrorCode::kMalformed, where + ": facing_normal must be nonzero");
      }
      comp.facing_normal = normalized(n);
    }
    s.components.push_back(std::move(comp));
  }
  if (doc.contains("classes")) {
    for (const auto& n : get_array(doc.at("classes"), "classes")) {
      s.vocabulary.add(get_string(n, "classes"));
    }
    if (max_class >= static_cast<int>(s.vocabulary.size())) {
      throw Error(ErrorCode::kMalformed, "component class_id " +
                                            std::to_string(max_class) +
                                            " exceeds the class list");
    }
  } else {
    for (int i = 0; i <= max_class; ++i) s.vocabulary.add("class_" + std::to_string(i));
  }
  return s;
}

inline std::string write_scene(const SceneSpec& s) {
  using detail::json;
  nlohmann::ordered_json doc;
  doc["vessel"] = s.vessel;
  doc["bounding_radius"] = s.bounding_radius;
  json classes = json::array();
  for (const auto& e : s.vocabulary.entries()) classes.push_back(e.name);
  doc["classes"] = classes;
  json comps = json::array();
  for (const auto& c : s.components) {
    json cj = {{"name", c.name},
               {"class_id", c.class_id},
               {"center", detail::vec3_to_json(c.center)},
               {"half_extents", detail::vec3_to_json(c.half_extents)}};
    if (c.facing_normal) cj["facing_normal"] = detail::vec3_to_json(*c.facing_normal);
    comps.push_back(std::move(cj));
  }
  doc["components"] = std::move(comps);
  return doc.dump(2) + "\n";
}

}  // namespace detassess
