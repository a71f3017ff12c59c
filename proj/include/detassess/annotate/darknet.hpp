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

// Darknet label files: one "class cx cy w h" line per box, fractions of the
// image size, whitespace separated, LF or CRLF line endings.

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "detassess/annotate/image_header.hpp"
#include "detassess/annotate/types.hpp"
#include "detassess/detail/text.hpp"

namespace detassess {

inline GroundTruthBox parse_yolo_line(std::string_view line, ImageDims dims) {
  const auto fields = detail::split_ws(detail::strip_cr(line));
  if (fields.size() != 5) {
    throw Error(ErrorCode::kMalformed,
                "expected 5 fields, got " + std::to_string(fields.size()));
  }
  const auto cls = detail::parse_int(fields[0]);
  if (!cls) {
    throw Error(ErrorCode::kMalformed,
                "class id '" + std::string(fields[0]) + "' is not an integer");
  }
  if (*cls < 0 || *cls > 1'000'000) {
    throw Error(ErrorCode::kOutOfRange,
                "class id " + std::to_string(*cls) + " out of range");
  }
  std::array<double, 4> v{};
  for (std::size_t i = 0; i < 4; ++i) {
    const auto x = detail::parse_double(fields[i + 1]);
    if (!x || !std::isfinite(*x)) {
      throw Error(ErrorCode::kMalformed,
                  "field '" + std::string(fields[i + 1]) + "' is not a number");
    }
    if (*x < 0.0 || *x > 1.0) {
      throw Error(ErrorCode::kOutOfRange,
                  "fraction " + std::string(fields[i + 1]) + " outside [0,1]");
    }
    v[i] = *x;
  }
  if (v[2] <= 0.0 || v[3] <= 0.0) {
    throw Error(ErrorCode::kOutOfRange, "box width and height must be > 0");
  }
  return GroundTruthBox{static_cast<int>(*cls),
                        norm_to_pixel(NormBox{v[0], v[1], v[2], v[3]}, dims),
                        BoxEncoding::kNormalized};
}

namespace detail {

inline std::string shortest_repr(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

inline std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

inline bool is_image_extension(const std::filesystem::path& p) {
  static const std::array<std::string, 6> kExt = {".png", ".jpg", ".jpeg",
                                                  ".bmp", ".gif", ".jpe"};
  const auto ext = lower(p.extension().string());
  return std::find(kExt.begin(), kExt.end(), ext) != kExt.end();
}

}  // namespace detail

// Shortest round-trip decimal encoding of the normalized fields. Throws
// OutOfRange when the box leaves the image.
inline std::string encode_yolo_line(const GroundTruthBox& gt, ImageDims dims) {
  const NormBox n = pixel_to_norm(gt.box, dims);
  return std::to_string(gt.class_id) + " " + detail::shortest_repr(n.cx) + " " +
         detail::shortest_repr(n.cy) + " " + detail::shortest_repr(n.w) + " " +
         detail::shortest_repr(n.h);
}

// Parses a whole label file; errors carry "<source>:<line>:" context.
inline std::vector<GroundTruthBox> parse_yolo_labels(std::string_view text,
                                                     ImageDims dims,
                                                     const std::string& source) {
  std::vector<GroundTruthBox> boxes;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos
                                                      : nl - pos);
    ++line_no;
    if (!detail::is_blank(line)) {
      try {
        boxes.push_back(parse_yolo_line(line, dims));
      } catch (const Error& e) {
        throw Error(e.code(), source + ":" + std::to_string(line_no) + ": " +
                                  e.what());
      }
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return boxes;
}

// One record per image in image_dir, matched to label_dir/<stem>.txt. Images
// without a label file are negatives with no boxes. The result is sorted by
// image id regardless of directory enumeration order.
inline DatasetManifest load_yolo_dataset(const std::filesystem::path& image_dir,
                                         const std::filesystem::path& label_dir,
                                         const ClassVocabulary& vocabulary,
                                         std::string split_name = {}) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(image_dir)) {
    throw Error(ErrorCode::kIo, "not a directory: " + image_dir.string());
  }

  std::map<std::string, fs::path> images;
  for (const auto& entry : fs::directory_iterator(image_dir)) {
    if (!entry.is_regular_file() || !detail::is_image_extension(entry.path()))
      continue;
    const auto stem = entry.path().stem().string();
    if (!images.emplace(stem, entry.path()).second) {
      throw Error(ErrorCode::kDuplicateStem,
                  "two images share the stem '" + stem + "' in " +
                      image_dir.string());
    }
  }

  std::map<std::string, fs::path> labels;
  if (fs::is_directory(label_dir)) {
    for (const auto& entry : fs::directory_iterator(label_dir)) {
      if (!entry.is_regular_file() ||
          detail::lower(entry.path().extension().string()) != ".txt")
        continue;
      const auto stem = entry.path().stem().string();
      if (stem == "classes" && !images.count(stem)) continue;
      if (!labels.emplace(stem, entry.path()).second) {
        throw Error(ErrorCode::kDuplicateStem,
                    "two label files share the stem '" + stem + "' in " +
                        label_dir.string());
      }
    }
  }
  for (const auto& [stem, path] : labels) {
    if (!images.count(stem)) {
      throw Error(ErrorCode::kDanglingReference,
                  "label file " + path.string() + " has no matching image");
    }
  }

  DatasetManifest m;
  m.vocabulary = vocabulary;
  m.split_name = std::move(split_name);
  for (const auto& [stem, path] : images) {
    ImageRecord rec;
    rec.image_id = stem;
    rec.path = path.generic_string();
    const auto dims = read_image_dims(path);
    if (!dims) {
      throw Error(ErrorCode::kMissingDims,
                  "cannot read image header of " + path.string());
    }
    rec.dims = *dims;
    if (auto it = labels.find(stem); it != labels.end()) {
      rec.boxes = parse_yolo_labels(detail::read_file(it->second), rec.dims,
                                    it->second.generic_string());
    }
    m.images.push_back(std::move(rec));
  }
  return m;
}

// Writes <label_dir>/<image_id>.txt for every image (empty files for
// negatives) plus classes.txt.
inline void write_yolo_labels(const DatasetManifest& m,
                              const std::filesystem::path& label_dir) {
  std::filesystem::create_directories(label_dir);
  std::string names;
  for (const auto& e : m.vocabulary.entries()) names += e.name + "\n";
  detail::write_file_atomic(label_dir / "classes.txt", names);
  for (const auto& img : m.images) {
    std::string text;
    for (const auto& b : img.boxes) text += encode_yolo_line(b, img.dims) + "\n";
    detail::write_file_atomic(label_dir / (img.image_id + ".txt"), text);
  }
}

// One class name per line; blank lines are skipped.
inline ClassVocabulary parse_class_names(std::string_view text) {
  ClassVocabulary v;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = detail::strip_cr(text.substr(pos, nl - pos));
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
      line.remove_suffix(1);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front())))
      line.remove_prefix(1);
    if (!line.empty()) v.add(std::string(line));
    pos = nl + 1;
  }
  return v;
}

}  // namespace detassess
