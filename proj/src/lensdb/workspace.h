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

// The lens definition language: table declarations and named lenses, one
// statement per line.
//
//   table NAME (col: type, ...) keys (col ...)
//   lens NAME = lens TABLE with { a -> b; c d -> e }
//   lens NAME = lens TABLE default
//   lens NAME = select from L where PRED
//   lens NAME = join L with M [on (cols)] delete_left
//   lens NAME = drop COL determined by (COLS) default CONST from L
//   lens NAME = check L

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lensdb/lens.h"
#include "lensdb/predicate_parser.h"

namespace lensdb {

class WorkspaceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LensDef {
  enum class Kind { kPrim, kSelect, kJoin, kDrop, kCheck };
  std::string name;
  int line = 0;
  Kind kind = Kind::kPrim;
  /// kPrim
  std::string table;
  /// nullopt for `default`: the table keys determine the other columns.
  std::optional<std::string> fd_text;
  /// Source lens of select/drop/check, left side of join.
  std::string source;
  /// Right side of join.
  std::string other;
  JoinVariant variant = JoinVariant::kDeleteLeft;
  std::optional<AttrSet> on;
  std::string pred_text;
  bool parameterized = false;
  std::string column;
  AttrSet determined_by;
  Constant default_value;
};

class Workspace {
 public:
  /// Throws WorkspaceError with `source:line:` prefixed messages.
  static Workspace parse(std::string_view text, const std::string &source);
  static Workspace load(const std::filesystem::path &path);

  const SchemaEnv &tables() const { return tables_; }
  const std::vector<LensDef> &lenses() const { return lenses_; }
  const LensDef *find(const std::string &name) const;
  /// Names of lenses used as the source of another lens.
  const std::set<std::string> &referenced() const { return referenced_; }

  /// Builds the expression of a lens, parsing predicates against the row
  /// type of their source. Throws PredicateError, LensTypeError (unknown
  /// tables and columns, join column clashes) or WorkspaceError.
  LensPtr build(const std::string &name, const ParamBindings &params) const;

 private:
  struct Built {
    LensPtr expr;
    RowType row;
  };
  Built build_def(const LensDef &def, const ParamBindings &params) const;

  SchemaEnv tables_;
  std::vector<LensDef> lenses_;
  std::map<std::string, std::size_t> index_;
  std::set<std::string> referenced_;
};

}  // namespace lensdb
