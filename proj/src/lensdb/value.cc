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

#include "lensdb/value.h"

#include <fmt/core.h>

#include <string>

namespace lensdb {

std::string_view to_string(BaseKind kind) {
  switch (kind) {
    case BaseKind::kBool:
      return "bool";
    case BaseKind::kInt:
      return "int";
    case BaseKind::kString:
      return "string";
  }
  return "?";
}

std::optional<BaseKind> parse_base_kind(std::string_view text) {
  if (text == "bool") return BaseKind::kBool;
  if (text == "int") return BaseKind::kInt;
  if (text == "string") return BaseKind::kString;
  return std::nullopt;
}

BaseKind kind_of(const Constant &c) {
  return static_cast<BaseKind>(c.index());
}

std::string quote_string(std::string_view s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        out += ch;
    }
  }
  out += '"';
  return out;
}

std::string to_string(const Constant &c) {
  return std::visit(
      [](const auto &v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, Int>) {
          return v.str();
        } else {
          return quote_string(v);
        }
      },
      c);
}

AttrSet labels_of(const RowType &row) {
  AttrSet out;
  for (const auto &[label, kind] : row) out.insert(label);
  return out;
}

std::string to_string(const RowType &row) {
  std::string out = "(";
  bool first = true;
  for (const auto &[label, kind] : row) {
    if (!first) out += ", ";
    first = false;
    out += fmt::format("{}: {}", label, to_string(kind));
  }
  return out + ")";
}

std::string to_string(const Row &row) {
  std::string out = "(";
  bool first = true;
  for (const auto &[label, value] : row) {
    if (!first) out += ", ";
    first = false;
    out += fmt::format("{}={}", label, to_string(value));
  }
  return out + ")";
}

std::string to_string(const AttrSet &attrs) {
  std::string out = "{";
  bool first = true;
  for (const auto &a : attrs) {
    if (!first) out += ", ";
    first = false;
    out += a;
  }
  return out + "}";
}

bool row_inhabits(const Row &row, const RowType &type) {
  if (row.size() != type.size()) return false;
  auto it = type.begin();
  for (const auto &[label, value] : row) {
    if (it->first != label || kind_of(value) != it->second) return false;
    ++it;
  }
  return true;
}

Row restrict_row(const Row &row, const AttrSet &labels) {
  Row out;
  for (const auto &label : labels) {
    if (auto it = row.find(label); it != row.end()) out.emplace(*it);
  }
  return out;
}

std::optional<Row> concat_rows(const Row &a, const Row &b) {
  Row out = a;
  for (const auto &[label, value] : b) {
    auto [it, inserted] = out.emplace(label, value);
    if (!inserted && it->second != value) return std::nullopt;
  }
  return out;
}

std::optional<RowType> merge_row_types(const RowType &a, const RowType &b) {
  RowType out = a;
  for (const auto &[label, kind] : b) {
    auto [it, inserted] = out.emplace(label, kind);
    if (!inserted && it->second != kind) return std::nullopt;
  }
  return out;
}

RowType restrict_row_type(const RowType &row, const AttrSet &labels) {
  RowType out;
  for (const auto &label : labels) {
    if (auto it = row.find(label); it != row.end()) out.emplace(*it);
  }
  return out;
}

}  // namespace lensdb
