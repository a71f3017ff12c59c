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

#include <set>
#include <string>

#include <json.hpp>

#include "detassess/annotate/types.hpp"
#include "detassess/error.hpp"

namespace detassess::detail {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

template <typename J = json>
inline J parse_json(std::string_view text, const std::string& what) {
  try {
    return J::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformed, what + ": " + e.what());
  }
}

template <typename J>
const J& require(const J& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw Error(ErrorCode::kMalformed, where + ": missing field '" + key + "'");
  }
  return obj.at(key);
}

template <typename J>
double get_number(const J& v, const std::string& where) {
  if (!v.is_number()) {
    throw Error(ErrorCode::kMalformed, where + ": expected a number");
  }
  const double d = v.template get<double>();
  if (!std::isfinite(d)) {
    throw Error(ErrorCode::kMalformed, where + ": non-finite number");
  }
  return d;
}

template <typename J>
long long get_integer(const J& v, const std::string& where) {
  if (!v.is_number_integer()) {
    throw Error(ErrorCode::kMalformed, where + ": expected an integer");
  }
  return v.template get<long long>();
}

template <typename J>
std::string get_string(const J& v, const std::string& where) {
  if (!v.is_string()) {
    throw Error(ErrorCode::kMalformed, where + ": expected a string");
  }
  return v.template get<std::string>();
}

template <typename J>
const J& get_array(const J& v, const std::string& where) {
  if (!v.is_array()) {
    throw Error(ErrorCode::kMalformed, where + ": expected an array");
  }
  return v;
}

// Corner-form [x_min, y_min, x_max, y_max].
template <typename J>
Box2D get_corner_box(const J& v, const std::string& where) {
  if (!v.is_array() || v.size() != 4) {
    throw Error(ErrorCode::kMalformed, where + ": bbox must have 4 numbers");
  }
  Box2D b{get_number(v[0], where), get_number(v[1], where),
          get_number(v[2], where), get_number(v[3], where)};
  if (!b.is_valid()) {
    throw Error(ErrorCode::kMalformed, where + ": bbox corners out of order " +
                                           to_string(b));
  }
  return b;
}

inline json box_to_json(const Box2D& b) {
  return json::array({b.x_min, b.y_min, b.x_max, b.y_max});
}

}  // namespace detassess::detail
