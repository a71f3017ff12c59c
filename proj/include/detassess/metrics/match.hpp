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
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "detassess/annotate/types.hpp"

namespace detassess {

struct DetectionVerdict {
  // Position of the detection in the span handed to match_image.
  std::size_t det_index = 0;
  double score = 0.0;
  bool true_positive = false;
  std::optional<std::size_t> gt_index;
  // IoU with the matched ground truth, or the best IoU seen for an FP.
  double iou = 0.0;
};

struct MatchOutcome {
  std::string image_id;
  int class_id = 0;
  // In processing order: descending score, stable on input order.
  std::vector<DetectionVerdict> verdicts;
  std::size_t gt_count = 0;
  std::size_t false_negatives = 0;

  std::size_t true_positives() const {
    return static_cast<std::size_t>(
        std::count_if(verdicts.begin(), verdicts.end(),
                      [](const DetectionVerdict& v) { return v.true_positive; }));
  }
  std::size_t false_positives() const { return verdicts.size() - true_positives(); }
};

// Greedy confidence-ordered matching for one image and one class. Entries of
// other classes in either span are ignored, which lets callers pass a whole
// image's boxes. Each detection takes the unmatched ground truth with the
// highest IoU >= threshold (lowest index on IoU ties); otherwise it is a false
// positive.
inline MatchOutcome match_image(std::span<const GroundTruthBox> gts,
                                std::span<const Detection> dets, int class_id,
                                double threshold, std::string image_id = {}) {
  MatchOutcome out;
  out.class_id = class_id;
  out.image_id = std::move(image_id);

  std::vector<std::size_t> gt_idx;
  for (std::size_t i = 0; i < gts.size(); ++i)
    if (gts[i].class_id == class_id) gt_idx.push_back(i);
  std::vector<std::size_t> det_idx;
  for (std::size_t i = 0; i < dets.size(); ++i)
    if (dets[i].class_id == class_id) det_idx.push_back(i);
  if (out.image_id.empty() && !det_idx.empty()) out.image_id = dets[det_idx[0]].image_id;

  std::stable_sort(det_idx.begin(), det_idx.end(), [&](std::size_t a, std::size_t b) {
    return dets[a].score > dets[b].score;
  });

  std::vector<bool> taken(gt_idx.size(), false);
  out.verdicts.reserve(det_idx.size());
  for (const std::size_t d : det_idx) {
    DetectionVerdict v;
    v.det_index = d;
    v.score = dets[d].score;
    std::optional<std::size_t> best;
    double best_iou = -1.0;
    double max_seen = 0.0;
    for (std::size_t k = 0; k < gt_idx.size(); ++k) {
      const double o = iou(dets[d].box, gts[gt_idx[k]].box);
      max_seen = std::max(max_seen, o);
      if (!taken[k] && o >= threshold && o > best_iou) {
        best = k;
        best_iou = o;
      }
    }
    v.iou = max_seen;
    if (best) {
      taken[*best] = true;
      v.true_positive = true;
      v.gt_index = gt_idx[*best];
      v.iou = best_iou;
    }
    out.verdicts.push_back(v);
  }
  out.gt_count = gt_idx.size();
  out.false_negatives = out.gt_count - out.true_positives();
  return out;
}

}  // namespace detassess
