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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "detassess/annotate/types.hpp"
#include "detassess/metrics/match.hpp"
#include "detassess/metrics/pr.hpp"

namespace detassess {

enum class OperatingPointRule { kMaxF1 };

inline const char* to_string(OperatingPointRule) { return "max_f1"; }

struct EvalConfig {
  double iou_threshold = 0.5;
  ApMode ap_mode = ApMode::kAllPoints;
  OperatingPointRule operating_point_rule = OperatingPointRule::kMaxF1;
  // When set, only these classes are evaluated.
  std::optional<std::set<int>> class_filter;

  void validate() const {
    if (!(iou_threshold > 0.0 && iou_threshold <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "IoU threshold must be in (0, 1]");
    }
  }
  bool includes(int class_id) const {
    return !class_filter || class_filter->count(class_id) > 0;
  }
};

struct ClassResult {
  int class_id = 0;
  std::string name;
  std::size_t ground_truths = 0;
  std::size_t detections = 0;
  // False for classes without ground truth; they do not enter the mAP.
  bool in_map = false;
  double ap = 0.0;
  OperatingPoint op;
  PRCurve curve;
};

struct EvalReport {
  std::size_t images = 0;
  std::size_t ground_truths = 0;
  std::size_t detections = 0;
  double map = 0.0;
  // Max-F1 point of the curve pooled over every evaluated class. Detections
  // of classes outside the vocabulary count as false positives here.
  OperatingPoint pooled;
  std::vector<ClassResult> classes;
  // Set when the evaluated image set holds no ground truth.
  bool empty = false;
};

using Strata = std::map<std::string, std::set<std::string>>;

struct StratifiedReport {
  EvalConfig config;
  // "all" first, then strata in name order.
  std::vector<std::pair<std::string, EvalReport>> strata;

  const EvalReport* find(const std::string& name) const {
    for (const auto& [n, r] : strata)
      if (n == name) return &r;
    return nullptr;
  }
};

namespace detail {

inline std::span<const Detection> detections_for(const DetectionSet& dets,
                                                 const std::string& image_id) {
  const auto it = dets.groups.find(image_id);
  if (it == dets.groups.end()) return {};
  return it->second;
}

// Core of evaluate over a subset of images (all images when subset is null).
inline EvalReport evaluate_images(const DatasetManifest& manifest,
                                  const DetectionSet& dets, const EvalConfig& cfg,
                                  const std::set<std::string>* subset) {
  std::vector<const ImageRecord*> images;
  for (const auto& img : manifest.images)
    if (!subset || subset->count(img.image_id)) images.push_back(&img);

  EvalReport report;
  report.images = images.size();
  std::vector<MatchOutcome> pooled;
  std::size_t pooled_gt = 0;
  double ap_sum = 0.0;
  std::size_t ap_count = 0;

  for (const auto& entry : manifest.vocabulary.entries()) {
    if (!cfg.includes(entry.class_id)) continue;
    ClassResult cr;
    cr.class_id = entry.class_id;
    cr.name = entry.name;
    std::vector<MatchOutcome> outcomes;
    outcomes.reserve(images.size());
    for (const ImageRecord* img : images) {
      auto o = match_image(img->boxes, detections_for(dets, img->image_id),
                           entry.class_id, cfg.iou_threshold, img->image_id);
      cr.ground_truths += o.gt_count;
      cr.detections += o.verdicts.size();
      outcomes.push_back(std::move(o));
    }
    cr.curve = pr_curve(outcomes, cr.ground_truths);
    cr.ap = average_precision(cr.curve, cfg.ap_mode);
    cr.op = operating_point(cr.curve);
    cr.in_map = cr.ground_truths > 0;
    if (cr.in_map) {
      ap_sum += cr.ap;
      ++ap_count;
    }
    report.ground_truths += cr.ground_truths;
    report.detections += cr.detections;
    pooled_gt += cr.ground_truths;
    for (auto& o : outcomes) pooled.push_back(std::move(o));
    report.classes.push_back(std::move(cr));
  }

  // Detections whose class is not in the vocabulary can never match.
  for (const ImageRecord* img : images) {
    const auto group = detections_for(dets, img->image_id);
    MatchOutcome stray;
    stray.image_id = img->image_id;
    for (std::size_t i = 0; i < group.size(); ++i) {
      const int c = group[i].class_id;
      if (manifest.vocabulary.contains(c) || !cfg.includes(c)) continue;
      stray.verdicts.push_back({i, group[i].score, false, std::nullopt, 0.0});
    }
    if (!stray.verdicts.empty()) {
      report.detections += stray.verdicts.size();
      pooled.push_back(std::move(stray));
    }
  }

  report.map = ap_count > 0 ? ap_sum / static_cast<double>(ap_count) : 0.0;
  report.pooled = operating_point(pr_curve(pooled, pooled_gt));
  report.empty = report.ground_truths == 0;
  return report;
}

inline void check_detection_ids(const DatasetManifest& manifest,
                                const DetectionSet& dets) {
  std::set<std::string> ids;
  for (const auto& img : manifest.images) ids.insert(img.image_id);
  for (const auto& [id, group] : dets.groups) {
    if (!ids.count(id)) {
      throw Error(ErrorCode::kUnknownImageId,
                  "detections reference image '" + id + "' absent from the manifest");
    }
  }
}

}  // namespace detail

inline EvalReport evaluate(const DatasetManifest& manifest, const DetectionSet& dets,
                           const EvalConfig& cfg = {}) {
  cfg.validate();
  if (manifest.images.empty()) {
    throw Error(ErrorCode::kEmptyManifest, "manifest has no images");
  }
  detail::check_detection_ids(manifest, dets);
  return detail::evaluate_images(manifest, dets, cfg, nullptr);
}

// One report per stratum plus "all". Strata must be disjoint subsets of the
// manifest's image ids.
inline StratifiedReport stratified_evaluate(const DatasetManifest& manifest,
                                            const DetectionSet& dets,
                                            const Strata& strata,
                                            const EvalConfig& cfg = {}) {
  cfg.validate();
  std::set<std::string> ids;
  for (const auto& img : manifest.images) ids.insert(img.image_id);
  std::map<std::string, std::string> owner;
  for (const auto& [name, members] : strata) {
    if (name == "all") {
      throw Error(ErrorCode::kValidation, "stratum name 'all' is reserved");
    }
    for (const auto& id : members) {
      if (!ids.count(id)) {
        throw Error(ErrorCode::kUnknownStratumImage,
                    "stratum '" + name + "' lists unknown image '" + id + "'");
      }
      const auto [it, fresh] = owner.emplace(id, name);
      if (!fresh) {
        throw Error(ErrorCode::kOverlappingStrata,
                    "image '" + id + "' is in strata '" + it->second + "' and '" +
                        name + "'");
      }
    }
  }

  StratifiedReport out;
  out.config = cfg;
  out.strata.emplace_back("all", evaluate(manifest, dets, cfg));
  for (const auto& [name, members] : strata) {
    out.strata.emplace_back(name, detail::evaluate_images(manifest, dets, cfg, &members));
  }
  return out;
}

}  // namespace detassess
