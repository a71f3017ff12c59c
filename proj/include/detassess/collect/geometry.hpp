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

// Small fixed-size geometry for camera placement and pinhole projection.
// World frame of a scene: +X toward the bow, +Y to port, +Z up
// (right-handed, origin at the vessel reference point).

#include <array>
#include <cmath>
#include <string>

#include "detassess/boxmath.hpp"

namespace detassess {

inline constexpr double kPi = 3.14159265358979323846;

inline double deg_to_rad(double d) { return d * kPi / 180.0; }
inline double rad_to_deg(double r) { return r * 180.0 / kPi; }

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline Vec3 normalized(const Vec3& v) { return v * (1.0 / norm(v)); }

// Row-major 3x3 matrix.
struct Mat3 {
  std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

  Vec3 operator*(const Vec3& v) const {
    return {m[0] * v.x + m[1] * v.y + m[2] * v.z, m[3] * v.x + m[4] * v.y + m[5] * v.z,
            m[6] * v.x + m[7] * v.y + m[8] * v.z};
  }

  // Rotation by angle (radians) about a unit axis.
  static Mat3 rotation(const Vec3& axis, double angle) {
    const Vec3 a = normalized(axis);
    const double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
    return Mat3{{t * a.x * a.x + c, t * a.x * a.y - s * a.z, t * a.x * a.z + s * a.y,
                 t * a.x * a.y + s * a.z, t * a.y * a.y + c, t * a.y * a.z - s * a.x,
                 t * a.x * a.z - s * a.y, t * a.y * a.z + s * a.x, t * a.z * a.z + c}};
  }
};

struct RigidTransform {
  Mat3 rotation;
  Vec3 translation;

  Vec3 apply_point(const Vec3& p) const { return rotation * p + translation; }
  Vec3 apply_direction(const Vec3& d) const { return rotation * d; }
};

struct CameraPose {
  std::string pose_id;
  double azimuth_deg = 0.0;    // [0, 360), counter-clockwise from +X seen from above
  double elevation_deg = 0.0;  // [0, 90] above the horizontal plane
  double radius = 1.0;         // meters from look_at
  Vec3 look_at;

  Vec3 position() const {
    const double az = deg_to_rad(azimuth_deg);
    const double el = deg_to_rad(elevation_deg);
    return look_at + Vec3{std::cos(el) * std::cos(az), std::cos(el) * std::sin(az),
                          std::sin(el)} *
                         radius;
  }
};

// Pinhole intrinsics with the principal point at the image center.
struct Intrinsics {
  double focal_px = 1.0;
  ImageDims dims{640, 640};

  double cx() const { return dims.width / 2.0; }
  double cy() const { return dims.height / 2.0; }
};

// Camera axes in world coordinates; image x follows right, image y follows
// down, depth follows forward.
struct CameraFrame {
  Vec3 position;
  Vec3 right;
  Vec3 down;
  Vec3 forward;

  CameraFrame transformed(const RigidTransform& t) const {
    return {t.apply_point(position), t.apply_direction(right), t.apply_direction(down),
            t.apply_direction(forward)};
  }
};

// Looks from position toward target keeping up_hint upright in the image.
// When the view direction is (anti)parallel to up_hint, fallback_hint takes
// its place, so straight-down views put fallback_hint at the top of the image.
inline CameraFrame look_at_frame(const Vec3& position, const Vec3& target,
                                 const Vec3& up_hint, const Vec3& fallback_hint) {
  CameraFrame f;
  f.position = position;
  f.forward = normalized(target - position);
  Vec3 right = cross(f.forward, up_hint);
  if (norm(right) < 1e-9) right = cross(f.forward, fallback_hint);
  f.right = normalized(right);
  f.down = cross(f.forward, f.right);
  return f;
}

inline CameraFrame camera_frame(const CameraPose& pose) {
  return look_at_frame(pose.position(), pose.look_at, Vec3{0, 0, 1}, Vec3{1, 0, 0});
}

}  // namespace detassess
