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
#include <limits>
#include <optional>
#include <span>

#include "detassess/annotate/types.hpp"
#include "detassess/collect/geometry.hpp"
#include "detassess/collect/scene.hpp"

namespace detassess {

// Axis-aligned hull of the projected corners, clipped to the image. Empty
// when a corner is at or behind the camera plane, when the facing normal
// points away from the camera (dot <= 0), or when the clipped hull is
// degenerate. Occlusion by other geometry is not modeled.
inline std::optional<Box2D> project_hull(std::span<const Vec3> corners, const Vec3& center,
                                         const std::optional<Vec3>& facing_normal,
                                         const CameraFrame& cam, const Intrinsics& k) {
  if (facing_normal) {
    const Vec3 to_camera = cam.position - center;
    const double len = norm(to_camera);
    if (!(len > 0.0) || dot(*facing_normal, to_camera * (1.0 / len)) <= 0.0) {
      return std::nullopt;
    }
  }
  double u_min = std::numeric_limits<double>::infinity();
  double v_min = u_min;
  double u_max = -u_min;
  double v_max = -u_min;
  for (const Vec3& p : corners) {
    const Vec3 d = p - cam.position;
    const double depth = dot(d, cam.forward);
    if (!(depth > 0.0)) return std::nullopt;
    const double u = k.cx() + k.focal_px * dot(d, cam.right) / depth;
    const double v = k.cy() + k.focal_px * dot(d, cam.down) / depth;
    u_min = std::min(u_min, u);
    u_max = std::max(u_max, u);
    v_min = std::min(v_min, v);
    v_max = std::max(v_max, v);
  }
  const Box2D clipped = clip_to_image(Box2D{u_min, v_min, u_max, v_max}, k.dims);
  if (clipped.is_degenerate()) return std::nullopt;
  return clipped;
}

inline std::optional<GroundTruthBox> project_component(const LabeledComponent& c,
                                                       const CameraPose& pose,
                                                       const Intrinsics& k) {
  const auto corners = c.corners();
  const auto box = project_hull(corners, c.center, c.facing_normal, camera_frame(pose), k);
  if (!box) return std::nullopt;
  return GroundTruthBox{c.class_id, *box, BoxEncoding::kPixel};
}

}  // namespace detassess
