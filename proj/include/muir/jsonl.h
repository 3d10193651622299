// Copyright 2026 The MUIR Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MUIR_JSONL_H_
#define MUIR_JSONL_H_

#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <string>

#include "json.hpp"
#include "muir/errors.h"

namespace muir {

// Calls `fn(line_number, object)` for every non-blank line. Line numbers are
// 1-based. Throws MalformedRecord on JSON syntax errors or non-object lines.
inline void ForEachJsonLine(
    std::istream &in,
    const std::function<void(std::size_t, const nlohmann::json &)> &fn) {
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error &e) {
      throw MalformedRecord(line_number, e.what());
    }
    if (!record.is_object()) {
      throw MalformedRecord(line_number, "expected a JSON object");
    }
    fn(line_number, record);
  }
}

// Field accessors with uniform error reporting.

inline std::string RequireString(const nlohmann::json &record,
                                 const char *key, std::size_t line) {
  if (!record.contains(key) || !record[key].is_string()) {
    throw MalformedRecord(line, std::string("missing string field \"") + key +
                                    "\"");
  }
  std::string value = record[key].get<std::string>();
  if (value.empty()) {
    throw MalformedRecord(line, std::string("field \"") + key + "\" is empty");
  }
  return value;
}

inline std::int64_t RequireNonNegativeInt(const nlohmann::json &record,
                                          const char *key, std::size_t line) {
  if (!record.contains(key) || !record[key].is_number_integer()) {
    throw MalformedRecord(line, std::string("missing integer field \"") + key +
                                    "\"");
  }
  auto value = record[key].get<std::int64_t>();
  if (value < 0) {
    throw MalformedRecord(line, std::string("field \"") + key +
                                    "\" must be non-negative");
  }
  return value;
}

inline std::optional<std::string> OptionalString(const nlohmann::json &record,
                                                 const char *key,
                                                 std::size_t line) {
  if (!record.contains(key) || record[key].is_null()) return std::nullopt;
  if (!record[key].is_string()) {
    throw MalformedRecord(line, std::string("field \"") + key +
                                    "\" must be a string or null");
  }
  return record[key].get<std::string>();
}

}  // namespace muir

#endif  // MUIR_JSONL_H_
