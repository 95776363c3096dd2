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

// The compositional lens language and its typechecker.

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "lensdb/fundeps.h"
#include "lensdb/predicate.h"
#include "lensdb/value.h"

namespace lensdb {

struct TableSchema {
  std::string name;
  RowType row;
  AttrSet keys;
};

using SchemaEnv = std::map<std::string, TableSchema>;

enum class JoinVariant { kDeleteLeft, kDeleteRight, kDeleteBoth };

class LensExpr;
using LensPtr = std::shared_ptr<const LensExpr>;

class LensExpr {
 public:
  /// `lens TABLE with F`
  struct Prim {
    std::string table;
    FunDeps fds;
  };
  /// `select from SOURCE where PRED`; `parameterized` marks predicates that
  /// were written with `$name` placeholders.
  struct Select {
    LensPtr source;
    Predicate pred;
    bool parameterized = false;
  };
  struct Join {
    LensPtr left;
    LensPtr right;
    JoinVariant variant = JoinVariant::kDeleteLeft;
    /// Join columns as written; when present they must equal the shared
    /// columns of the two sides.
    std::optional<AttrSet> on;
  };
  struct Drop {
    std::string column;
    AttrSet determined_by;
    Constant default_value;
    LensPtr source;
  };
  struct Check {
    LensPtr source;
  };
  using Node = std::variant<Prim, Select, Join, Drop, Check>;

  explicit LensExpr(Node node) : node_(std::move(node)) {}

  const Node &node() const { return node_; }
  template <typename T>
  const T *as() const {
    return std::get_if<T>(&node_);
  }

 private:
  Node node_;
};

namespace lenses {
LensPtr prim(std::string table, FunDeps fds);
LensPtr select(LensPtr source, Predicate pred, bool parameterized = false);
LensPtr join(LensPtr left, LensPtr right,
             JoinVariant variant = JoinVariant::kDeleteLeft,
             std::optional<AttrSet> on = std::nullopt);
LensPtr drop(std::string column, AttrSet determined_by, Constant default_value,
             LensPtr source);
LensPtr check(LensPtr source);
}  // namespace lenses

/// Compact one-line rendering of a lens expression, for diagnostics.
std::string to_string(const LensPtr &lens);

struct LensSort {
  std::set<std::string> tables;
  RowType row;
  Predicate pred;
  FunDeps fds;
  /// Contains a parameterized select not yet wrapped in `check`.
  bool dynamic = false;
  /// Premises that mention unbound parameters and so can only be decided
  /// once values are known.
  std::vector<std::string> deferred;
};

/// `lens((a, b); PRED; {FDS}) with {t1, t2}`
std::string to_string(const LensSort &sort);

enum class LensErrorKind {
  kNotTreeForm,
  kIgnoresViolation,
  kJoinFdViolation,
  kSchemaOverlap,
  kLjdFailure,
  kDefaultValueFailure,
  kUnknownColumn,
  kTypeMismatch,
  kUnknownTable,
  kDropFdViolation,
  kUnimplementedVariant,
  kUncheckedParameter,
};

std::string_view to_string(LensErrorKind kind);

class LensTypeError : public std::runtime_error {
 public:
  LensTypeError(LensErrorKind kind, std::string rule, std::string site,
                std::string detail, AttrSet labels = {});

  LensErrorKind kind() const { return kind_; }
  /// Name of the typing rule whose premise failed, e.g. `T-Select`.
  const std::string &rule() const { return rule_; }
  /// Path from the root of the expression to the failing node, e.g.
  /// `select/join[left]/lens(tracks)`.
  const std::string &site() const { return site_; }
  const std::string &detail() const { return detail_; }
  const AttrSet &labels() const { return labels_; }

 private:
  LensErrorKind kind_;
  std::string rule_;
  std::string site_;
  std::string detail_;
  AttrSet labels_;
};

/// A typechecked expression with the sort of every subexpression.
struct TypedLens {
  LensPtr expr;
  LensSort sort;
  std::vector<std::shared_ptr<const TypedLens>> children;
};
using TypedLensPtr = std::shared_ptr<const TypedLens>;

TypedLensPtr typecheck_tree(const LensPtr &expr, const SchemaEnv &env);
LensSort typecheck_lens(const LensPtr &expr, const SchemaEnv &env);

/// LJD-dagger: every top-level conjunct refers only to fields of one side.
bool ljd_syntactic(const Predicate &pred, const RowType &r1, const RowType &r2);

struct DvOutcome {
  bool accepted = false;
  /// Conjuncts over the dropped side that still mention parameters.
  std::vector<TermPtr> deferred;
};

/// DV-dagger for a default record over the dropped columns.
DvOutcome dv_check(const Predicate &pred, const Row &default_record);
bool dv_syntactic(const Predicate &pred, const Row &default_record);

/// The underlying table names and the sort-free shape of an expression.
std::set<std::string> tables_of(const LensPtr &expr);

}  // namespace lensdb
