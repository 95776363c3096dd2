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

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>

namespace lensdb {

using Int = boost::multiprecision::cpp_int;

enum class BaseKind { kBool, kInt, kString };

std::string_view to_string(BaseKind kind);
std::optional<BaseKind> parse_base_kind(std::string_view text);

/// A constant of base type. Alternatives are ordered so that the variant
/// index matches BaseKind.
using Constant = std::variant<bool, Int, std::string>;

BaseKind kind_of(const Constant &c);

/// Renders a constant in the predicate surface syntax: `true`, `42`,
/// `"text"` (with backslash escapes).
std::string to_string(const Constant &c);

/// Quotes a string literal for the surface syntax.
std::string quote_string(std::string_view s);

using AttrSet = std::set<std::string>;

/// Base record type: every field has base type. Labels are kept sorted,
/// which also fixes the canonical column order everywhere.
using RowType = std::map<std::string, BaseKind>;

/// A record of base values. Iteration order is by label.
using Row = std::map<std::string, Constant>;

AttrSet labels_of(const RowType &row);
std::string to_string(const RowType &row);
std::string to_string(const Row &row);
std::string to_string(const AttrSet &attrs);

bool row_inhabits(const Row &row, const RowType &type);

/// Record restriction r[labels]. Labels missing from the row are ignored.
Row restrict_row(const Row &row, const AttrSet &labels);

/// Record concatenation r (x) s; fields present in both must agree.
std::optional<Row> concat_rows(const Row &a, const Row &b);

/// Union of two row types agreeing on shared labels; nullopt on a clash.
std::optional<RowType> merge_row_types(const RowType &a, const RowType &b);

RowType restrict_row_type(const RowType &row, const AttrSet &labels);

}  // namespace lensdb
