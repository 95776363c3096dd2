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

// Concrete syntax for predicates:
//
//   expr  := or
//   or    := and ("||" and)*
//   and   := cmp ("&&" cmp)*
//   cmp   := add (("=="|"!="|"<"|">"|"<="|">=") add)?
//   add   := mul (("+"|"-") mul)*
//   mul   := unary ("*" unary)*
//   unary := "!" unary | atom
//   atom  := INT | STRING | "true" | "false" | IDENT | "$" IDENT
//          | "if" expr "then" expr "else" expr | "(" expr ")"
//
// Bare identifiers are fields of the row and desugar to projections on the
// predicate binder.

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "lensdb/predicate.h"
#include "lensdb/value.h"

namespace lensdb {

struct ParamBindings {
  /// Values whose type is already fixed.
  std::map<std::string, Constant> typed;
  /// Raw text (e.g. from the command line), converted once the parameter's
  /// type is inferred from its use sites.
  std::map<std::string, std::string> untyped;
  /// Keep unbound parameters as symbolic Param nodes instead of failing.
  bool symbolic_when_unbound = false;
};

/// Parses, infers parameter types, substitutes bound parameters and
/// typechecks. Throws PredicateError.
Predicate parse_predicate(std::string_view text, const RowType &row,
                          const ParamBindings &params = {});
Predicate parse_predicate(std::string_view text, const RowType &row,
                          const std::map<std::string, Constant> &params);

/// Reads `text` as a constant of the given kind: decimal integers (with an
/// optional leading '-'), `true`/`false`, or the raw text for strings.
std::optional<Constant> parse_constant_as(std::string_view text, BaseKind kind);

}  // namespace lensdb
