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

// Axis-aligned box algebra in pixel space. Boxes are stored in corner form
// with real-valued coordinates (origin top-left, x right, y down); center
// encodings only appear at format boundaries.

#include <algorithm>
#include <cmath>
#include <string>

#include "detassess/error.hpp"

namespace detassess {

struct ImageDims {
  int width = 0;
  int height = 0;

  bool is_valid() const { return width >= 1 && height >= 1; }
  friend bool operator==(const ImageDims&, const ImageDims&) = default;
};

struct Box2D {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;

  bool is_valid() const {
    return std::isfinite(x_min) && std::isfinite(y_min) &&
           std::isfinite(x_max) && std::isfinite(y_max) && x_min <= x_max &&
           y_min <= y_max;
  }
  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  bool is_degenerate() const { return !(width() > 0.0 && height() > 0.0); }

  friend bool operator==(const Box2D&, const Box2D&) = default;
};

// Darknet-style normalized center encoding.
struct NormBox {
  double cx = 0.0;
  double cy = 0.0;
  double w = 0.0;
  double h = 0.0;
};

inline std::string to_string(const Box2D& b) {
  return "(" + std::to_string(b.x_min) + ", " + std::to_string(b.y_min) +
         ", " + std::to_string(b.x_max) + ", " + std::to_string(b.y_max) + ")";
}

inline double area(const Box2D& b) {
  return std::max(0.0, b.width()) * std::max(0.0, b.height());
}

inline double intersection_area(const Box2D& a, const Box2D& b) {
  const double w = std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min);
  const double h = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
  if (w <= 0.0 || h <= 0.0) return 0.0;
  return w * h;
}

// Intersection over union. Two zero-area boxes have IoU 0, not NaN.
inline double iou(const Box2D& a, const Box2D& b) {
  const double inter = intersection_area(a, b);
  const double uni = area(a) + area(b) - inter;
  if (!(uni > 0.0)) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

// Not clipped: a normalized box may decode past the image edges.
inline Box2D norm_to_pixel(const NormBox& n, ImageDims d) {
  const double w = d.width;
  const double h = d.height;
  return Box2D{(n.cx - n.w / 2.0) * w, (n.cy - n.h / 2.0) * h,
               (n.cx + n.w / 2.0) * w, (n.cy + n.h / 2.0) * h};
}

inline NormBox pixel_to_norm(const Box2D& b, ImageDims d) {
  if (!b.is_valid() || !d.is_valid()) {
    throw Error(ErrorCode::kOutOfRange, "invalid box or dims " + to_string(b));
  }
  if (b.x_min < 0.0 || b.y_min < 0.0 || b.x_max > d.width ||
      b.y_max > d.height) {
    throw Error(ErrorCode::kOutOfRange,
                "box " + to_string(b) + " outside image " +
                    std::to_string(d.width) + "x" + std::to_string(d.height));
  }
  const double w = d.width;
  const double h = d.height;
  return NormBox{(b.x_min + b.x_max) / 2.0 / w, (b.y_min + b.y_max) / 2.0 / h,
                 (b.x_max - b.x_min) / w, (b.y_max - b.y_min) / h};
}

// Non-uniform squash used when every image is resized to a fixed square
// network input: each axis is scaled independently.
inline Box2D remap_resize(const Box2D& b, ImageDims from, ImageDims to) {
  if (from == to) return b;
  // Multiply before dividing so grid-aligned coordinates map exactly.
  const auto sx = [&](double v) { return v * to.width / from.width; };
  const auto sy = [&](double v) { return v * to.height / from.height; };
  return Box2D{sx(b.x_min), sy(b.y_min), sx(b.x_max), sy(b.y_max)};
}

inline Box2D clip_to_image(const Box2D& b, ImageDims d) {
  const double w = d.width;
  const double h = d.height;
  return Box2D{std::clamp(b.x_min, 0.0, w), std::clamp(b.y_min, 0.0, h),
               std::clamp(b.x_max, 0.0, w), std::clamp(b.y_max, 0.0, h)};
}

}  // namespace detassess
