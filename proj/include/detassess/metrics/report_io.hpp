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

// Evaluation report rendering. The JSON document prints every real with four
// decimals; integers and booleans are printed as-is.
//
//   {
//     "format": "detassess-eval-report", "version": 1,
//     "tool": "detassess", "tool_version": "0.1.0",
//     "config": {"iou_threshold": 0.5000, "ap_mode": "all_points",
//                "operating_point_rule": "max_f1", "class_filter": null},
//     "strata": {
//       "all": {"empty": false, "images": 3, "ground_truths": 5,
//               "detections": 6, "map": 0.5833, "precision": 0.7500,
//               "recall": 0.6000, "confidence": 0.7000,
//               "classes": [{"class_id": 0, "name": "spy_radar",
//                            "ground_truths": 3, "detections": 4,
//                            "in_map": true, "ap": 0.6667, ...,
//                            "pr_curve": [[conf, precision, recall], ...]}]},
//       "oblique": {...}
//     }
//   }
//
// CSV has one row per class per stratum.

#include <sstream>
#include <string>
#include <vector>

#include "detassess/detail/json_util.hpp"
#include "detassess/detail/text.hpp"
#include "detassess/metrics/evaluate.hpp"

namespace detassess {

inline constexpr std::string_view kReportFormat = "detassess-eval-report";

namespace detail {

inline bool all_numbers(const ordered_json& j) {
  for (const auto& e : j)
    if (!e.is_number()) return false;
  return true;
}

inline void dump_fixed(const ordered_json& j, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(depth + 1) * 2, ' ');
  switch (j.type()) {
    case ordered_json::value_t::number_float:
      out += format_fixed(j.get<double>(), 4);
      return;
    case ordered_json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner + ordered_json(it.key()).dump() + ": ";
        dump_fixed(it.value(), depth + 1, out);
      }
      out += "\n" + pad + "}";
      return;
    }
    case ordered_json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      if (all_numbers(j)) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          dump_fixed(j[i], depth + 1, out);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        dump_fixed(j[i], depth + 1, out);
      }
      out += "\n" + pad + "]";
      return;
    }
    default:
      out += j.dump();
  }
}

inline ordered_json eval_report_to_json(const EvalReport& r) {
  ordered_json s;
  s["empty"] = r.empty;
  s["images"] = r.images;
  s["ground_truths"] = r.ground_truths;
  s["detections"] = r.detections;
  s["map"] = r.map;
  s["precision"] = r.pooled.precision;
  s["recall"] = r.pooled.recall;
  s["confidence"] = r.pooled.confidence;
  ordered_json classes = ordered_json::array();
  for (const auto& c : r.classes) {
    ordered_json cj;
    cj["class_id"] = c.class_id;
    cj["name"] = c.name;
    cj["ground_truths"] = c.ground_truths;
    cj["detections"] = c.detections;
    cj["in_map"] = c.in_map;
    cj["ap"] = c.ap;
    cj["precision"] = c.op.precision;
    cj["recall"] = c.op.recall;
    cj["confidence"] = c.op.confidence;
    ordered_json curve = ordered_json::array();
    for (const auto& p : c.curve.points) {
      curve.push_back(ordered_json::array({p.confidence, p.precision, p.recall}));
    }
    cj["pr_curve"] = std::move(curve);
    classes.push_back(std::move(cj));
  }
  s["classes"] = std::move(classes);
  return s;
}

inline double num_or_zero(const ordered_json& obj, const char* key) {
  if (!obj.contains(key) || obj.at(key).is_null()) return 0.0;
  return get_number(obj.at(key), key);
}

inline std::size_t count_field(const ordered_json& obj, const char* key) {
  if (!obj.contains(key)) return 0;
  const auto v = get_integer(obj.at(key), key);
  if (v < 0) throw Error(ErrorCode::kMalformed, std::string(key) + " is negative");
  return static_cast<std::size_t>(v);
}

inline EvalReport eval_report_from_json(const ordered_json& s, const std::string& where) {
  if (!s.is_object()) throw Error(ErrorCode::kMalformed, where + " must be an object");
  EvalReport r;
  r.empty = s.value("empty", false);
  r.images = count_field(s, "images");
  r.ground_truths = count_field(s, "ground_truths");
  r.detections = count_field(s, "detections");
  r.map = num_or_zero(s, "map");
  r.pooled = {num_or_zero(s, "precision"), num_or_zero(s, "recall"),
              num_or_zero(s, "confidence")};
  if (s.contains("classes")) {
    for (const auto& cj : get_array(s.at("classes"), where + ".classes")) {
      ClassResult c;
      c.class_id = static_cast<int>(get_integer(require(cj, "class_id", where), "class_id"));
      c.name = cj.contains("name") ? get_string(cj.at("name"), "name")
                                   : "class_" + std::to_string(c.class_id);
      c.ground_truths = count_field(cj, "ground_truths");
      c.detections = count_field(cj, "detections");
      c.in_map = cj.value("in_map", c.ground_truths > 0);
      c.ap = num_or_zero(cj, "ap");
      c.op = {num_or_zero(cj, "precision"), num_or_zero(cj, "recall"),
              num_or_zero(cj, "confidence")};
      c.curve.total_gt = c.ground_truths;
      if (cj.contains("pr_curve")) {
        for (const auto& p : get_array(cj.at("pr_curve"), "pr_curve")) {
          if (!p.is_array() || p.size() != 3) {
            throw Error(ErrorCode::kMalformed, "pr_curve points need 3 numbers");
          }
          c.curve.points.push_back({get_number(p[0], "pr_curve"),
                                    get_number(p[1], "pr_curve"),
                                    get_number(p[2], "pr_curve"), 0, 0});
        }
      }
      r.classes.push_back(std::move(c));
    }
  }
  return r;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace detail

inline std::string write_report(const StratifiedReport& report) {
  using detail::ordered_json;
  ordered_json doc;
  doc["format"] = kReportFormat;
  doc["version"] = 1;
  doc["tool"] = "detassess";
  doc["tool_version"] = kVersion;
  ordered_json cfg;
  cfg["iou_threshold"] = report.config.iou_threshold;
  cfg["ap_mode"] = to_string(report.config.ap_mode);
  cfg["operating_point_rule"] = to_string(report.config.operating_point_rule);
  if (report.config.class_filter) {
    cfg["class_filter"] = *report.config.class_filter;
  } else {
    cfg["class_filter"] = nullptr;
  }
  doc["config"] = std::move(cfg);
  ordered_json strata = ordered_json::object();
  for (const auto& [name, r] : report.strata) {
    strata[name] = detail::eval_report_to_json(r);
  }
  doc["strata"] = std::move(strata);
  std::string out;
  detail::dump_fixed(doc, 0, out);
  return out + "\n";
}

inline StratifiedReport parse_report(std::string_view text) {
  using namespace detail;
  const auto doc = parse_json<ordered_json>(text, "report");
  if (!doc.is_object()) throw Error(ErrorCode::kMalformed, "report must be an object");
  StratifiedReport out;
  if (doc.contains("config")) {
    const auto& c = doc.at("config");
    if (c.contains("iou_threshold")) {
      out.config.iou_threshold = get_number(c.at("iou_threshold"), "iou_threshold");
    }
    if (c.contains("ap_mode")) {
      const auto mode = get_string(c.at("ap_mode"), "ap_mode");
      if (mode == "all_points") {
        out.config.ap_mode = ApMode::kAllPoints;
      } else if (mode == "interp_101") {
        out.config.ap_mode = ApMode::kInterp101;
      } else {
        throw Error(ErrorCode::kMalformed, "unknown ap_mode '" + mode + "'");
      }
    }
    if (c.contains("class_filter") && c.at("class_filter").is_array()) {
      std::set<int> ids;
      for (const auto& v : c.at("class_filter"))
        ids.insert(static_cast<int>(get_integer(v, "class_filter")));
      out.config.class_filter = std::move(ids);
    }
  }
  const auto& strata = require(doc, "strata", "report");
  if (!strata.is_object()) throw Error(ErrorCode::kMalformed, "strata must be an object");
  for (auto it = strata.begin(); it != strata.end(); ++it) {
    out.strata.emplace_back(it.key(),
                            eval_report_from_json(it.value(), "stratum '" + it.key() + "'"));
  }
  return out;
}

inline std::string render_csv(const StratifiedReport& report) {
  using detail::format_fixed;
  std::string out =
      "stratum,class_id,class_name,ground_truths,detections,in_map,ap,precision,"
      "recall,confidence\n";
  for (const auto& [name, r] : report.strata) {
    for (const auto& c : r.classes) {
      out += detail::csv_field(name) + "," + std::to_string(c.class_id) + "," +
             detail::csv_field(c.name) + "," + std::to_string(c.ground_truths) + "," +
             std::to_string(c.detections) + "," + (c.in_map ? "true" : "false") + "," +
             format_fixed(c.ap, 4) + "," + format_fixed(c.op.precision, 4) + "," +
             format_fixed(c.op.recall, 4) + "," + format_fixed(c.op.confidence, 4) + "\n";
    }
  }
  return out;
}

inline std::string render_markdown(const StratifiedReport& report) {
  using detail::format_fixed;
  std::ostringstream md;
  md << "# Detection evaluation\n\n";
  md << "IoU threshold " << format_fixed(report.config.iou_threshold, 4) << ", AP mode "
     << to_string(report.config.ap_mode) << ", operating point "
     << to_string(report.config.operating_point_rule) << ".\n\n";
  md << "| Stratum | Images | GT | Detections | mAP | Precision | Recall |\n";
  md << "|---|---:|---:|---:|---:|---:|---:|\n";
  for (const auto& [name, r] : report.strata) {
    md << "| " << name << (r.empty ? " (empty)" : "") << " | " << r.images << " | "
       << r.ground_truths << " | " << r.detections << " | " << format_fixed(r.map, 4)
       << " | " << format_fixed(r.pooled.precision, 4) << " | "
       << format_fixed(r.pooled.recall, 4) << " |\n";
  }
  md << "\n## Per class\n\n";
  md << "| Stratum | Class | GT | Detections | AP | Precision | Recall | Confidence |\n";
  md << "|---|---|---:|---:|---:|---:|---:|---:|\n";
  for (const auto& [name, r] : report.strata) {
    for (const auto& c : r.classes) {
      md << "| " << name << " | " << c.name << " | " << c.ground_truths << " | "
         << c.detections << " | " << (c.in_map ? format_fixed(c.ap, 4) : "n/a") << " | "
         << format_fixed(c.op.precision, 4) << " | " << format_fixed(c.op.recall, 4)
         << " | " << format_fixed(c.op.confidence, 4) << " |\n";
    }
  }
  return md.str();
}

// Precision-recall curves of the first stratum ("all" for generated reports):
// one polyline per class with a nonempty curve, on unit axes.
inline std::string render_svg(const StratifiedReport& report) {
  using detail::format_fixed;
  constexpr double kLeft = 60, kTop = 30, kSize = 400;
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                  "#9467bd", "#8c564b", "#e377c2", "#17becf"};
  const auto px = [&](double r) { return format_fixed(kLeft + r * kSize, 2); };
  const auto py = [&](double p) { return format_fixed(kTop + (1.0 - p) * kSize, 2); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"490\" "
         "viewBox=\"0 0 600 490\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"600\" height=\"490\" fill=\"white\"/>\n";
  svg << "<g id=\"axes\" stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
  svg << "<rect x=\"" << px(0) << "\" y=\"" << py(1) << "\" width=\"" << kSize
      << "\" height=\"" << kSize << "\"/>\n";
  for (int i = 1; i < 4; ++i) {
    const double t = i / 4.0;
    svg << "<line x1=\"" << px(t) << "\" y1=\"" << py(0) << "\" x2=\"" << px(t)
        << "\" y2=\"" << py(1) << "\" stroke=\"#dddddd\"/>\n";
    svg << "<line x1=\"" << px(0) << "\" y1=\"" << py(t) << "\" x2=\"" << px(1)
        << "\" y2=\"" << py(t) << "\" stroke=\"#dddddd\"/>\n";
  }
  svg << "</g>\n<g id=\"labels\" font-family=\"sans-serif\" font-size=\"12\">\n";
  for (int i = 0; i <= 4; ++i) {
    const double t = i / 4.0;
    svg << "<text x=\"" << px(t) << "\" y=\"" << format_fixed(kTop + kSize + 16, 2)
        << "\" text-anchor=\"middle\">" << format_fixed(t, 2) << "</text>\n";
    svg << "<text x=\"" << format_fixed(kLeft - 6, 2) << "\" y=\"" << py(t)
        << "\" text-anchor=\"end\">" << format_fixed(t, 2) << "</text>\n";
  }
  svg << "<text x=\"" << px(0.5) << "\" y=\"" << format_fixed(kTop + kSize + 34, 2)
      << "\" text-anchor=\"middle\">Recall</text>\n";
  svg << "<text x=\"16\" y=\"" << py(0.5) << "\" text-anchor=\"middle\" "
      << "transform=\"rotate(-90 16 " << py(0.5) << ")\">Precision</text>\n";
  svg << "</g>\n";

  if (!report.strata.empty()) {
    const auto& [name, r] = report.strata.front();
    svg << "<g id=\"curves\" data-stratum=\"" << detail::xml_escape(name) << "\">\n";
    std::size_t shown = 0;
    for (const auto& c : r.classes) {
      if (c.curve.points.empty()) continue;
      const char* color = kColors[shown % std::size(kColors)];
      svg << "<polyline fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"2\" points=\"";
      for (std::size_t i = 0; i < c.curve.points.size(); ++i) {
        if (i) svg << ' ';
        svg << px(c.curve.points[i].recall) << ',' << py(c.curve.points[i].precision);
      }
      svg << "\"/>\n";
      svg << "<text x=\"" << format_fixed(kLeft + kSize + 12, 2) << "\" y=\""
          << format_fixed(kTop + 14 + 18.0 * static_cast<double>(shown), 2)
          << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << color << "\">"
          << detail::xml_escape(c.name) << " AP " << format_fixed(c.ap, 4) << "</text>\n";
      ++shown;
    }
    svg << "</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace detassess
