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
#include <cstddef>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "detassess/metrics/match.hpp"

namespace detassess {

enum class ApMode { kAllPoints, kInterp101 };

inline const char* to_string(ApMode m) {
  return m == ApMode::kAllPoints ? "all_points" : "interp_101";
}

struct PRPoint {
  double confidence = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  // Cumulative counts behind precision and recall.
  std::size_t tp = 0;
  std::size_t fp = 0;
};

struct PRCurve {
  std::vector<PRPoint> points;
  std::size_t total_gt = 0;
};

// Pools every verdict and accumulates along (score desc, image_id asc, input
// index asc). With no ground truth the curve is empty.
inline PRCurve pr_curve(std::span<const MatchOutcome> outcomes, std::size_t total_gt) {
  PRCurve curve;
  curve.total_gt = total_gt;
  if (total_gt == 0) return curve;

  struct Entry {
    double score;
    const std::string* image_id;
    std::size_t index;
    bool tp;
  };
  std::vector<Entry> pool;
  for (const auto& o : outcomes)
    for (const auto& v : o.verdicts)
      pool.push_back({v.score, &o.image_id, v.det_index, v.true_positive});
  std::sort(pool.begin(), pool.end(), [](const Entry& a, const Entry& b) {
    if (a.score != b.score) return a.score > b.score;
    if (*a.image_id != *b.image_id) return *a.image_id < *b.image_id;
    return a.index < b.index;
  });

  std::size_t tp = 0;
  std::size_t fp = 0;
  curve.points.reserve(pool.size());
  for (const auto& e : pool) {
    (e.tp ? tp : fp) += 1;
    curve.points.push_back(PRPoint{e.score,
                                   static_cast<double>(tp) / static_cast<double>(tp + fp),
                                   static_cast<double>(tp) / static_cast<double>(total_gt),
                                   tp, fp});
  }
  return curve;
}

// Area under the monotone precision envelope p~(r) = max_{r' >= r} p(r').
// all_points integrates the envelope exactly over [0, 1]; interp_101 averages
// it on the recall grid {0, 0.01, ..., 1}.
inline double average_precision(const PRCurve& curve, ApMode mode) {
  const auto& pts = curve.points;
  if (pts.empty() || curve.total_gt == 0) return 0.0;

  // envelope[i] = max precision over points i..n-1; recall is non-decreasing.
  std::vector<double> envelope(pts.size());
  double running = 0.0;
  for (std::size_t i = pts.size(); i-- > 0;) {
    running = std::max(running, pts[i].precision);
    envelope[i] = running;
  }

  if (mode == ApMode::kAllPoints) {
    double ap = 0.0;
    double prev_recall = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      ap += (pts[i].recall - prev_recall) * envelope[i];
      prev_recall = pts[i].recall;
    }
    return std::clamp(ap, 0.0, 1.0);
  }

  // Grid level k is reached at the first point with tp / total_gt >= k / 100,
  // compared in integers so grid recalls need no rounding.
  double sum = 0.0;
  std::size_t i = 0;
  for (std::size_t k = 0; k <= 100; ++k) {
    while (i < pts.size() && pts[i].tp * 100 < k * curve.total_gt) ++i;
    if (i == pts.size()) break;
    sum += envelope[i];
  }
  return std::clamp(sum / 101.0, 0.0, 1.0);
}

struct OperatingPoint {
  double precision = 0.0;
  double recall = 0.0;
  double confidence = 0.0;
};

// Curve point with maximal F1; earlier (higher-confidence) points win ties.
inline OperatingPoint operating_point(const PRCurve& curve) {
  OperatingPoint best;
  double best_f1 = -1.0;
  for (const auto& p : curve.points) {
    const double denom = p.precision + p.recall;
    const double f1 = denom > 0.0 ? 2.0 * p.precision * p.recall / denom : 0.0;
    if (f1 > best_f1) {
      best_f1 = f1;
      best = {p.precision, p.recall, p.confidence};
    }
  }
  return best;
}

}  // namespace detassess
