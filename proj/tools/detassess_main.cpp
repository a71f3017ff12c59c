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
// detassess: convert annotations, evaluate detections, plan synthetic
// collections, emit the training recipe, render reports.
//
// Exit codes: 0 success, 2 input or parse error, 3 semantic violation.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "detassess/detassess.hpp"

namespace fs = std::filesystem;
using namespace detassess;

namespace {

bool verbose() {
  const char* v = std::getenv("DETASSESS_VERBOSE");
  return v != nullptr && *v != '\0' && std::string(v) != "0";
}

void log(const std::string& msg) {
  if (verbose()) std::cerr << "detassess: " << msg << "\n";
}

enum class Format { kDarknetDir, kCocoDoc, kNativeManifest };

Format parse_format(const std::string& s) {
  if (s == "darknet-dir" || s == "darknet") return Format::kDarknetDir;
  if (s == "coco-doc" || s == "coco") return Format::kCocoDoc;
  if (s == "native-manifest" || s == "native") return Format::kNativeManifest;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown format '" + s + "' (darknet-dir, coco-doc, native-manifest)");
}

// Dataset directory: <dir>/images + <dir>/labels, or images and labels side by
// side in <dir>.
DatasetManifest load_darknet_dir(const fs::path& dir, const std::string& classes_path,
                                 const std::string& split) {
  const fs::path images = fs::is_directory(dir / "images") ? dir / "images" : dir;
  const fs::path labels = fs::is_directory(dir / "labels") ? dir / "labels" : dir;
  fs::path names = classes_path;
  if (names.empty()) {
    for (const auto& candidate : {labels / "classes.txt", dir / "classes.txt"}) {
      if (fs::exists(candidate)) {
        names = candidate;
        break;
      }
    }
  }
  if (names.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "darknet input needs --classes (one class name per line)");
  }
  const auto vocab = parse_class_names(detail::read_file(names));
  std::string split_name = split;
  if (split_name.empty()) split_name = fs::absolute(dir).lexically_normal().filename().string();
  return load_yolo_dataset(images, labels, vocab, split_name);
}

DatasetManifest load_manifest_file(const fs::path& path, Format f) {
  const std::string text = detail::read_file(path);
  try {
    return f == Format::kCocoDoc ? parse_coco(text) : parse_manifest(text);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

int cmd_convert(const std::string& from, const std::string& to, const fs::path& in,
                const fs::path& out, const std::string& classes, const std::string& split,
                bool force) {
  const Format src = parse_format(from);
  const Format dst = parse_format(to);
  DatasetManifest m = src == Format::kDarknetDir ? load_darknet_dir(in, classes, split)
                                                 : load_manifest_file(in, src);
  if (!classes.empty() && src != Format::kDarknetDir) {
    m.vocabulary = parse_class_names(detail::read_file(classes));
  }
  log("read " + std::to_string(m.images.size()) + " images, " +
      std::to_string(m.box_count()) + " boxes");

  const auto violations = validate_manifest(m);
  if (!violations.empty()) {
    for (const auto& v : violations) std::cerr << "violation: " << to_string(v) << "\n";
    if (!force) {
      std::cerr << "detassess: " << violations.size()
                << " violation(s); nothing written (use --force to write anyway)\n";
      return 3;
    }
  }

  switch (dst) {
    case Format::kDarknetDir:
      write_yolo_labels(m, out / "labels");
      break;
    case Format::kCocoDoc:
      detail::write_file_atomic(out, write_coco(m));
      break;
    case Format::kNativeManifest:
      detail::write_file_atomic(out, write_manifest(m));
      break;
  }
  std::cout << "converted " << m.images.size() << " images, " << m.box_count()
            << " boxes -> " << out.string() << "\n";
  return 0;
}

struct EvaluateArgs {
  std::string gt;
  std::string gt_format = "native-manifest";
  std::string pred;
  double iou = 0.5;
  std::string strata;
  std::string ap_mode = "all";
  std::string out;
  std::string csv;
  std::string md;
  std::vector<int> classes;
};

int cmd_evaluate(const EvaluateArgs& a) {
  std::set<fs::path> paths;
  for (const auto& p : {a.gt, a.pred, a.strata, a.out, a.csv, a.md}) {
    if (p.empty()) continue;
    if (!paths.insert(fs::absolute(p).lexically_normal()).second) {
      throw Error(ErrorCode::kInvalidArgument, "path used twice: " + p);
    }
  }
  EvalConfig cfg;
  cfg.iou_threshold = a.iou;
  if (a.ap_mode == "all" || a.ap_mode == "all_points") {
    cfg.ap_mode = ApMode::kAllPoints;
  } else if (a.ap_mode == "101" || a.ap_mode == "interp_101") {
    cfg.ap_mode = ApMode::kInterp101;
  } else {
    throw Error(ErrorCode::kInvalidArgument, "--ap-mode must be 'all' or '101'");
  }
  if (!a.classes.empty()) cfg.class_filter = std::set<int>(a.classes.begin(), a.classes.end());

  const DatasetManifest manifest = load_manifest_file(a.gt, parse_format(a.gt_format));
  DetectionSet dets;
  try {
    dets = parse_detections(detail::read_file(a.pred));
  } catch (const Error& e) {
    throw Error(e.code(), a.pred + ": " + e.what());
  }
  log("evaluating " + std::to_string(dets.size()) + " detections against " +
      std::to_string(manifest.box_count()) + " ground-truth boxes");

  Strata strata;
  if (!a.strata.empty()) strata = parse_strata(detail::read_file(a.strata));
  const StratifiedReport report = stratified_evaluate(manifest, dets, strata, cfg);

  detail::write_file_atomic(a.out, write_report(report));
  if (!a.csv.empty()) detail::write_file_atomic(a.csv, render_csv(report));
  if (!a.md.empty()) detail::write_file_atomic(a.md, render_markdown(report));

  std::cout << "| Stratum | mAP@" << detail::format_fixed(cfg.iou_threshold, 2)
            << " | Precision | Recall |\n|---|---:|---:|---:|\n";
  for (const auto& [name, r] : report.strata) {
    std::cout << "| " << name << (r.empty ? " (empty)" : "") << " | "
              << detail::format_fixed(r.map, 4) << " | "
              << detail::format_fixed(r.pooled.precision, 4) << " | "
              << detail::format_fixed(r.pooled.recall, 4) << " |\n";
  }
  return 0;
}

struct PlanArgs {
  std::string scene;
  std::size_t poses = 64;
  double radius = 300.0;
  double min_elev = 5.0;
  double nadir_cutoff = kDefaultNadirCutoffDeg;
  std::string out;
  int width = 640;
  int height = 640;
  double focal = 0.0;
  std::optional<std::uint64_t> seed;
};

int cmd_plan(const PlanArgs& a) {
  SceneSpec scene;
  try {
    scene = parse_scene(detail::read_file(a.scene));
  } catch (const Error& e) {
    throw Error(e.code(), a.scene + ": " + e.what());
  }
  PlanOptions opt;
  opt.poses = a.poses;
  opt.radius = a.radius;
  opt.min_elevation_deg = a.min_elev;
  opt.nadir_cutoff_deg = a.nadir_cutoff;
  opt.image = ImageDims{a.width, a.height};
  opt.jitter_seed = a.seed;
  if (a.focal > 0.0) opt.intrinsics = Intrinsics{a.focal, opt.image};

  const CollectionPlan plan = generate_plan(scene, opt);
  const PlanManifest pm = plan_to_manifest(plan);
  const fs::path out(a.out);
  fs::create_directories(out);
  detail::write_file_atomic(out / "plan.json", write_plan(plan));
  detail::write_file_atomic(out / "manifest.json", write_manifest(pm.manifest));
  detail::write_file_atomic(out / "strata.json", write_strata(pm.strata));
  std::cout << "planned " << plan.views.size() << " poses (";
  bool first = true;
  for (const auto& [name, ids] : pm.strata) {
    std::cout << (first ? "" : ", ") << name << " " << ids.size();
    first = false;
  }
  std::cout << "), " << pm.manifest.box_count() << " boxes -> " << out.string() << "\n";
  return 0;
}

int cmd_recipe(const fs::path& out, const std::string& family) {
  TrainingRecipe r;
  if (!family.empty()) r.detector_family = family;
  detail::write_file_atomic(out, write_recipe(r));
  std::cout << "recipe -> " << out.string() << "\n";
  return 0;
}

int cmd_report(const fs::path& in, const std::string& format, const fs::path& out) {
  StratifiedReport report;
  try {
    report = parse_report(detail::read_file(in));
  } catch (const Error& e) {
    throw Error(e.code(), in.string() + ": " + e.what());
  }
  std::string text;
  if (format == "md") {
    text = render_markdown(report);
  } else if (format == "csv") {
    text = render_csv(report);
  } else if (format == "svg") {
    text = render_svg(report);
  } else {
    throw Error(ErrorCode::kInvalidArgument, "--format must be md, csv or svg");
  }
  detail::write_file_atomic(out, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Detection capability assessment toolkit"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::string from, to, in, out, classes, split;
  bool force = false;
  auto* convert = app.add_subcommand("convert", "Convert between annotation formats");
  convert->add_option("--from", from, "darknet-dir | coco-doc | native-manifest")->required();
  convert->add_option("--to", to, "darknet-dir | coco-doc | native-manifest")->required();
  convert->add_option("--in", in, "Input directory or document")->required();
  convert->add_option("--out", out, "Output directory or document")->required();
  convert->add_option("--classes", classes, "Class names, one per line");
  convert->add_option("--split", split, "Split name recorded in the manifest");
  convert->add_flag("--force", force, "Write even when validation finds violations");

  EvaluateArgs ev;
  auto* evaluate = app.add_subcommand("evaluate", "Evaluate detections against ground truth");
  evaluate->add_option("--gt", ev.gt, "Ground-truth manifest")->required();
  evaluate->add_option("--gt-format", ev.gt_format, "native-manifest | coco-doc");
  evaluate->add_option("--pred", ev.pred, "Detections (JSON Lines)")->required();
  evaluate->add_option("--iou", ev.iou, "IoU threshold in (0, 1]");
  evaluate->add_option("--strata", ev.strata, "Strata file");
  evaluate->add_option("--ap-mode", ev.ap_mode, "all | 101");
  evaluate->add_option("--out", ev.out, "Report document")->required();
  evaluate->add_option("--csv", ev.csv, "Also write the CSV table");
  evaluate->add_option("--md", ev.md, "Also write the markdown table");
  evaluate->add_option("--class", ev.classes, "Only evaluate these class ids");

  PlanArgs pa;
  std::uint64_t seed = 0;
  auto* plan = app.add_subcommand("plan", "Plan a synthetic half-dome collection");
  plan->add_option("--scene", pa.scene, "Scene file")->required();
  plan->add_option("--poses", pa.poses, "Number of poses");
  plan->add_option("--radius", pa.radius, "Camera distance in meters");
  plan->add_option("--min-elev", pa.min_elev, "Lowest elevation in degrees");
  plan->add_option("--nadir-cutoff", pa.nadir_cutoff, "Near-nadir elevation cutoff in degrees");
  plan->add_option("--out", pa.out, "Output directory")->required();
  plan->add_option("--width", pa.width, "Image width in pixels");
  plan->add_option("--height", pa.height, "Image height in pixels");
  plan->add_option("--focal", pa.focal, "Focal length in pixels (default: fit the vessel)");
  auto* seed_opt = plan->add_option("--seed", seed, "Jitter poses with this seed");

  std::string recipe_out, family;
  auto* recipe = app.add_subcommand("recipe", "Write the training recipe");
  recipe->add_option("--out", recipe_out, "Recipe document")->required();
  recipe->add_option("--family", family, "Detector family label");

  std::string report_in, report_format, report_out;
  auto* report = app.add_subcommand("report", "Render an evaluation report");
  report->add_option("--in", report_in, "Report document")->required();
  report->add_option("--format", report_format, "md | csv | svg")->required();
  report->add_option("--out", report_out, "Output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (convert->parsed()) return cmd_convert(from, to, in, out, classes, split, force);
    if (evaluate->parsed()) return cmd_evaluate(ev);
    if (plan->parsed()) {
      if (seed_opt->count() > 0) pa.seed = seed;
      return cmd_plan(pa);
    }
    if (recipe->parsed()) return cmd_recipe(recipe_out, family);
    if (report->parsed()) return cmd_report(report_in, report_format, report_out);
  } catch (const Error& e) {
    std::cerr << "detassess: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "detassess: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
