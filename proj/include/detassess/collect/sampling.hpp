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
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <random>
#include <vector>

#include "detassess/collect/geometry.hpp"
#include "detassess/error.hpp"

namespace detassess {

inline constexpr double kGoldenAngleDeg = 137.50776405;

// Golden-angle spiral over the spherical cap between min_elevation_deg and
// the zenith. Pose i sits at sin(elevation) = s0 + (i + 0.5) / n * (1 - s0)
// and azimuth i * golden angle. With a seed, each pose is jittered uniformly
// by up to half the local spacing: half a band in sin(elevation), half the
// mean angular spacing in azimuth.
inline std::vector<CameraPose> sample_half_dome(std::size_t n, double radius,
                                                double min_elevation_deg,
                                                std::optional<std::uint64_t> jitter_seed = {},
                                                Vec3 look_at = {}) {
  if (!(radius > 0.0)) throw Error(ErrorCode::kInvalidArgument, "radius must be > 0");
  if (!(min_elevation_deg >= 0.0 && min_elevation_deg < 90.0)) {
    throw Error(ErrorCode::kInvalidArgument, "min elevation must be in [0, 90)");
  }
  std::vector<CameraPose> poses;
  if (n == 0) return poses;
  poses.reserve(n);

  const double s0 = std::sin(deg_to_rad(min_elevation_deg));
  const double band = (1.0 - s0) / static_cast<double>(n);
  const double spacing_rad =
      std::sqrt(2.0 * kPi * (1.0 - s0) / static_cast<double>(n));
  std::mt19937_64 rng(jitter_seed.value_or(0));
  // Portable uniform in [-1, 1): 53 random mantissa bits.
  const auto symmetric_unit = [&rng] {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
  };

  for (std::size_t i = 0; i < n; ++i) {
    double s = s0 + (static_cast<double>(i) + 0.5) * band;
    double az = std::fmod(static_cast<double>(i) * kGoldenAngleDeg, 360.0);
    if (jitter_seed) {
      s = std::clamp(s + symmetric_unit() * band / 2.0, s0, 1.0);
      const double cos_el = std::sqrt(std::max(0.0, 1.0 - s * s));
      const double half_az =
          cos_el > 0.0 ? std::min(180.0, rad_to_deg(spacing_rad / 2.0 / cos_el)) : 180.0;
      az = std::fmod(az + symmetric_unit() * half_az + 360.0, 360.0);
      if (az >= 360.0) az = 0.0;
    }
    CameraPose p;
    char id[32];
    std::snprintf(id, sizeof(id), "pose_%04zu", i);
    p.pose_id = id;
    p.azimuth_deg = az;
    p.elevation_deg = std::clamp(rad_to_deg(std::asin(s)), min_elevation_deg, 90.0);
    p.radius = radius;
    p.look_at = look_at;
    poses.push_back(std::move(p));
  }
  return poses;
}

enum class Stratum { kOblique, kNearNadir };

inline const char* to_string(Stratum s) {
  return s == Stratum::kOblique ? "oblique" : "near_nadir";
}

inline constexpr double kDefaultNadirCutoffDeg = 70.0;

inline Stratum classify_stratum(const CameraPose& pose,
                                double nadir_cutoff_deg = kDefaultNadirCutoffDeg) {
  if (!(nadir_cutoff_deg > 0.0 && nadir_cutoff_deg < 90.0)) {
    throw Error(ErrorCode::kInvalidArgument, "nadir cutoff must be in (0, 90)");
  }
  return pose.elevation_deg >= nadir_cutoff_deg ? Stratum::kNearNadir : Stratum::kOblique;
}

}  // namespace detassess
