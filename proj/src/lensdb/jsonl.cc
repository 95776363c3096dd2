// Copyright 2026 The lensdb Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "lensdb/jsonl.h"

#include <fmt/core.h>

#include <fstream>
#include <nlohmann/json.hpp>

namespace lensdb {

namespace {

using nlohmann::json;

Constant convert(const json &value, BaseKind kind, const std::string &where) {
  switch (kind) {
    case BaseKind::kBool:
      if (value.is_boolean()) return value.get<bool>();
      break;
    case BaseKind::kInt:
      if (value.is_number_unsigned()) return Int(value.get<std::uint64_t>());
      if (value.is_number_integer()) return Int(value.get<std::int64_t>());
      break;
    case BaseKind::kString:
      if (value.is_string()) return value.get<std::string>();
      break;
  }
  throw JsonlError(fmt::format("{}: expected {}, found {}", where,
                               to_string(kind), value.dump()));
}

}  // namespace

Relation read_jsonl(std::istream &in, const RowType &type,
                    const std::string &source) {
  Relation rel{type, {}};
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = fmt::format("{}:{}", source, lineno);
    json object;
    try {
      object = json::parse(line);
    } catch (const json::parse_error &e) {
      throw JsonlError(fmt::format("{}: {}", where, e.what()));
    }
    if (!object.is_object()) {
      throw JsonlError(fmt::format("{}: expected a JSON object", where));
    }
    Row row;
    for (const auto &[key, value] : object.items()) {
      auto it = type.find(key);
      if (it == type.end()) {
        throw JsonlError(fmt::format("{}: unknown column '{}'", where, key));
      }
      row.emplace(key, convert(value, it->second,
                               fmt::format("{}: column '{}'", where, key)));
    }
    for (const auto &[label, kind] : type) {
      if (!row.contains(label)) {
        throw JsonlError(fmt::format("{}: missing column '{}'", where, label));
      }
    }
    rel.rows.insert(std::move(row));
  }
  return rel;
}

Relation load_jsonl(const std::filesystem::path &path, const RowType &type) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return Relation{type, {}};
  std::ifstream in(path);
  if (!in) throw JsonlError(fmt::format("cannot read {}", path.string()));
  return read_jsonl(in, type, path.string());
}

std::string row_to_json(const Row &row) {
  std::string out = "{";
  bool first = true;
  for (const auto &[label, value] : row) {
    if (!first) out += ",";
    first = false;
    out += json(label).dump();
    out += ":";
    if (const auto *s = std::get_if<std::string>(&value)) {
      out += json(*s).dump();
    } else {
      out += to_string(value);
    }
  }
  return out + "}";
}

std::string to_jsonl(const Relation &rel) {
  std::string out;
  for (const auto &row : rel.rows) {
    out += row_to_json(row);
    out += '\n';
  }
  return out;
}

}  // namespace lensdb
