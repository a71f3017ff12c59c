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

// Synthetic collection plans: poses on a half dome around a scene, each with
// the ground-truth boxes of the components it sees.
//
// Plan file (consumed by a renderer and by the evaluator):
//
//   {
//     "format": "detassess-collection-plan", "version": 1,
//     "scene": {"vessel": ..., "bounding_radius": ..., "classes": [...]},
//     "sampling": {"poses": 64, "radius": 300, "min_elevation_deg": 5,
//                  "nadir_cutoff_deg": 70, "jitter_seed": null},
//     "intrinsics": {"focal_px": ..., "width": 640, "height": 640,
//                    "cx": 320, "cy": 320},
//     "views": [{"pose_id": "pose_0000", "image": "pose_0000.png",
//                "azimuth_deg": ..., "elevation_deg": ..., "radius": ...,
//                "look_at": [x, y, z], "position": [x, y, z],
//                "right": [...], "down": [...], "forward": [...],
//                "stratum": "oblique",
//                "boxes": [{"component": 0, "name": "port SPY", "class_id": 0,
//                           "bbox": [x0, y0, x1, y1], "occluded": null}]}]
//   }
//
// "occluded" is reserved for renderer-computed visibility and is always null
// here.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "detassess/annotate/native.hpp"
#include "detassess/collect/projection.hpp"
#include "detassess/collect/sampling.hpp"
#include "detassess/metrics/evaluate.hpp"

namespace detassess {

inline constexpr std::string_view kPlanFormat = "detassess-collection-plan";
inline constexpr std::string_view kStrataFormat = "detassess-strata";

struct PlanOptions {
  std::size_t poses = 64;
  double radius = 300.0;
  double min_elevation_deg = 5.0;
  double nadir_cutoff_deg = kDefaultNadirCutoffDeg;
  std::optional<std::uint64_t> jitter_seed;
  ImageDims image{640, 640};
  // Explicit intrinsics; otherwise the focal length is chosen so the bounding
  // sphere spans 1/1.2 of the smaller image side.
  std::optional<Intrinsics> intrinsics;
};

struct ProjectedComponent {
  std::size_t component_index = 0;
  GroundTruthBox gt;
};

struct PlannedView {
  CameraPose pose;
  CameraFrame frame;
  Stratum stratum = Stratum::kOblique;
  std::vector<ProjectedComponent> boxes;
};

struct CollectionPlan {
  SceneSpec scene;
  PlanOptions options;
  Intrinsics intrinsics;
  std::vector<PlannedView> views;
};

inline Intrinsics auto_intrinsics(double bounding_radius, double camera_distance,
                                  ImageDims image) {
  if (!(camera_distance > bounding_radius)) {
    throw Error(ErrorCode::kInvalidArgument,
                "camera radius must exceed the vessel bounding radius");
  }
  const double half_angle = std::asin(bounding_radius / camera_distance);
  const double side = std::min(image.width, image.height);
  // Projected sphere diameter 2 f tan(half_angle) = side / 1.2.
  return Intrinsics{side / (2.4 * std::tan(half_angle)), image};
}

inline CollectionPlan generate_plan(const SceneSpec& scene, const PlanOptions& opt) {
  if (scene.components.empty()) {
    throw Error(ErrorCode::kEmptyScene, "scene '" + scene.vessel + "' has no components");
  }
  if (opt.poses < 1) throw Error(ErrorCode::kInvalidArgument, "need at least one pose");
  if (!opt.image.is_valid()) throw Error(ErrorCode::kInvalidArgument, "invalid image size");

  CollectionPlan plan;
  plan.scene = scene;
  plan.options = opt;
  plan.intrinsics = opt.intrinsics
                        ? *opt.intrinsics
                        : auto_intrinsics(scene.bounding_radius, opt.radius, opt.image);
  if (!(plan.intrinsics.focal_px > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "focal length must be > 0");
  }

  for (auto& pose : sample_half_dome(opt.poses, opt.radius, opt.min_elevation_deg,
                                     opt.jitter_seed)) {
    PlannedView view;
    view.stratum = classify_stratum(pose, opt.nadir_cutoff_deg);
    view.frame = camera_frame(pose);
    for (std::size_t c = 0; c < scene.components.size(); ++c) {
      if (auto gt = project_component(scene.components[c], pose, plan.intrinsics)) {
        view.boxes.push_back({c, *gt});
      }
    }
    view.pose = std::move(pose);
    plan.views.push_back(std::move(view));
  }
  return plan;
}

struct PlanManifest {
  DatasetManifest manifest;
  Strata strata;
};

// One image record per pose (image id = pose id). Both strata are always
// present, possibly empty.
inline PlanManifest plan_to_manifest(const CollectionPlan& plan) {
  PlanManifest out;
  out.manifest.vocabulary = plan.scene.vocabulary;
  out.manifest.split_name = "synthetic";
  out.strata[to_string(Stratum::kOblique)];
  out.strata[to_string(Stratum::kNearNadir)];
  for (const auto& view : plan.views) {
    ImageRecord rec;
    rec.image_id = view.pose.pose_id;
    rec.path = view.pose.pose_id + ".png";
    rec.dims = plan.intrinsics.dims;
    rec.pose_ref = view.pose.pose_id;
    for (const auto& b : view.boxes) rec.boxes.push_back(b.gt);
    out.strata[to_string(view.stratum)].insert(rec.image_id);
    out.manifest.images.push_back(std::move(rec));
  }
  return out;
}

inline std::string write_plan(const CollectionPlan& plan) {
  using detail::json;
  using detail::vec3_to_json;
  nlohmann::ordered_json doc;
  doc["format"] = kPlanFormat;
  doc["version"] = 1;
  json classes = json::array();
  for (const auto& e : plan.scene.vocabulary.entries()) classes.push_back(e.name);
  doc["scene"] = {{"vessel", plan.scene.vessel},
                  {"bounding_radius", plan.scene.bounding_radius},
                  {"classes", classes}};
  nlohmann::ordered_json sampling;
  sampling["poses"] = plan.options.poses;
  sampling["radius"] = plan.options.radius;
  sampling["min_elevation_deg"] = plan.options.min_elevation_deg;
  sampling["nadir_cutoff_deg"] = plan.options.nadir_cutoff_deg;
  sampling["jitter_seed"] =
      plan.options.jitter_seed ? json(*plan.options.jitter_seed) : json(nullptr);
  doc["sampling"] = std::move(sampling);
  nlohmann::ordered_json k;
  k["focal_px"] = plan.intrinsics.focal_px;
  k["width"] = plan.intrinsics.dims.width;
  k["height"] = plan.intrinsics.dims.height;
  k["cx"] = plan.intrinsics.cx();
  k["cy"] = plan.intrinsics.cy();
  doc["intrinsics"] = std::move(k);
  nlohmann::ordered_json views = nlohmann::ordered_json::array();
  for (const auto& v : plan.views) {
    nlohmann::ordered_json vj;
    vj["pose_id"] = v.pose.pose_id;
    vj["image"] = v.pose.pose_id + ".png";
    vj["azimuth_deg"] = v.pose.azimuth_deg;
    vj["elevation_deg"] = v.pose.elevation_deg;
    vj["radius"] = v.pose.radius;
    vj["look_at"] = vec3_to_json(v.pose.look_at);
    vj["position"] = vec3_to_json(v.frame.position);
    vj["right"] = vec3_to_json(v.frame.right);
    vj["down"] = vec3_to_json(v.frame.down);
    vj["forward"] = vec3_to_json(v.frame.forward);
    vj["stratum"] = to_string(v.stratum);
    nlohmann::ordered_json boxes = nlohmann::ordered_json::array();
    for (const auto& b : v.boxes) {
      nlohmann::ordered_json bj;
      bj["component"] = b.component_index;
      bj["name"] = plan.scene.components[b.component_index].name;
      bj["class_id"] = b.gt.class_id;
      bj["bbox"] = detail::box_to_json(b.gt.box);
      bj["occluded"] = nullptr;
      boxes.push_back(std::move(bj));
    }
    vj["boxes"] = std::move(boxes);
    views.push_back(std::move(vj));
  }
  doc["views"] = std::move(views);
  return doc.dump(2) + "\n";
}

// {"format": "detassess-strata", "version": 1,
//  "strata": {"near_nadir": ["pose_0003", ...], "oblique": [...]}}
inline std::string write_strata(const Strata& strata) {
  nlohmann::ordered_json doc;
  doc["format"] = kStrataFormat;
  doc["version"] = 1;
  nlohmann::ordered_json s = nlohmann::ordered_json::object();
  for (const auto& [name, ids] : strata) s[name] = ids;
  doc["strata"] = std::move(s);
  return doc.dump(2) + "\n";
}

inline Strata parse_strata(std::string_view text) {
  using namespace detail;
  const json doc = parse_json(text, "strata");
  const auto& s = require(doc, "strata", "strata file");
  if (!s.is_object()) throw Error(ErrorCode::kMalformed, "strata must be an object");
  Strata out;
  for (auto it = s.begin(); it != s.end(); ++it) {
    auto& members = out[it.key()];
    for (const auto& id : get_array(it.value(), "stratum '" + it.key() + "'")) {
      const auto name = get_string(id, "stratum member");
      if (!members.insert(name).second) {
        throw Error(ErrorCode::kMalformed,
                    "stratum '" + it.key() + "' lists '" + name + "' twice");
      }
    }
  }
  return out;
}

}  // namespace detassess
