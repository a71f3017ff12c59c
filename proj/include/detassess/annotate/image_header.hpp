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

// Reads pixel dimensions from image file headers without decoding pixels.
// PNG, JPEG, BMP and GIF are recognized.

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <vector>

#include "detassess/boxmath.hpp"

namespace detassess {

namespace detail {

inline std::uint32_t be32(const unsigned char* p) {
  return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) |
         (std::uint32_t{p[2]} << 8) | std::uint32_t{p[3]};
}
inline std::uint16_t be16(const unsigned char* p) {
  return static_cast<std::uint16_t>((p[0] << 8) | p[1]);
}
inline std::uint16_t le16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}
inline std::int32_t le32(const unsigned char* p) {
  return static_cast<std::int32_t>(std::uint32_t{p[0]} | (std::uint32_t{p[1]} << 8) |
                                   (std::uint32_t{p[2]} << 16) |
                                   (std::uint32_t{p[3]} << 24));
}

inline std::optional<ImageDims> jpeg_dims(std::ifstream& in) {
  // Walk marker segments until a start-of-frame marker.
  in.seekg(2);
  unsigned char m[4];
  while (in.read(reinterpret_cast<char*>(m), 2)) {
    if (m[0] != 0xFF) return std::nullopt;
    std::uint8_t marker = m[1];
    while (marker == 0xFF) {
      if (!in.read(reinterpret_cast<char*>(&marker), 1)) return std::nullopt;
    }
    if (marker == 0xD8 || (marker >= 0xD0 && marker <= 0xD7) || marker == 0x01)
      continue;
    if (!in.read(reinterpret_cast<char*>(m), 2)) return std::nullopt;
    const std::uint16_t len = be16(m);
    if (len < 2) return std::nullopt;
    const bool sof = marker >= 0xC0 && marker <= 0xCF && marker != 0xC4 &&
                     marker != 0xC8 && marker != 0xCC;
    if (sof) {
      unsigned char f[5];
      if (!in.read(reinterpret_cast<char*>(f), 5)) return std::nullopt;
      return ImageDims{be16(f + 3), be16(f + 1)};
    }
    in.seekg(len - 2, std::ios::cur);
  }
  return std::nullopt;
}

}  // namespace detail

inline std::optional<ImageDims> read_image_dims(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::array<unsigned char, 26> h{};
  in.read(reinterpret_cast<char*>(h.data()), h.size());
  const auto got = static_cast<std::size_t>(in.gcount());
  in.clear();

  std::optional<ImageDims> dims;
  static constexpr unsigned char kPng[8] = {0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};
  if (got >= 24 && std::equal(kPng, kPng + 8, h.begin()) && h[12] == 'I' &&
      h[13] == 'H' && h[14] == 'D' && h[15] == 'R') {
    dims = ImageDims{static_cast<int>(detail::be32(&h[16])),
                     static_cast<int>(detail::be32(&h[20]))};
  } else if (got >= 3 && h[0] == 0xFF && h[1] == 0xD8) {
    dims = detail::jpeg_dims(in);
  } else if (got >= 26 && h[0] == 'B' && h[1] == 'M') {
    const std::int32_t w = detail::le32(&h[18]);
    const std::int32_t ht = detail::le32(&h[22]);
    dims = ImageDims{w, ht < 0 ? -ht : ht};
  } else if (got >= 10 && h[0] == 'G' && h[1] == 'I' && h[2] == 'F') {
    dims = ImageDims{detail::le16(&h[6]), detail::le16(&h[8])};
  }
  if (dims && !dims->is_valid()) return std::nullopt;
  return dims;
}

// Header-only PNG with the given size; enough for read_image_dims. Used to
// fabricate fixtures without an image codec.
inline std::vector<unsigned char> png_header_bytes(ImageDims d) {
  std::vector<unsigned char> out = {0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A,
                                    0, 0, 0, 13, 'I', 'H', 'D', 'R'};
  for (std::uint32_t v : {static_cast<std::uint32_t>(d.width),
                          static_cast<std::uint32_t>(d.height)}) {
    out.push_back(static_cast<unsigned char>(v >> 24));
    out.push_back(static_cast<unsigned char>(v >> 16));
    out.push_back(static_cast<unsigned char>(v >> 8));
    out.push_back(static_cast<unsigned char>(v));
  }
  for (unsigned char b : {8, 2, 0, 0, 0}) out.push_back(b);
  return out;
}

}  // namespace detassess
