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

// In-memory relations, the relational operators, and state-based get/put.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "lensdb/fundeps.h"
#include "lensdb/lens.h"
#include "lensdb/predicate.h"
#include "lensdb/value.h"

namespace lensdb {

/// A set of rows of one row type. std::set over Row orders rows by label
/// then value, which is the canonical output order.
struct Relation {
  RowType type;
  std::set<Row> rows;

  bool operator==(const Relation &) const = default;
};

using Store = std::map<std::string, Relation>;

enum class EngineErrorKind {
  kMissingTable,
  kUnknownColumn,
  kTypeMismatch,
  kAmbiguousAuthority,
  kConstraintViolation,
};

std::string_view to_string(EngineErrorKind kind);

class EngineError : public std::runtime_error {
 public:
  EngineError(EngineErrorKind kind, const std::string &msg,
              std::vector<std::string> details = {});

  EngineErrorKind kind() const { return kind_; }
  /// One line per violation for constraint failures.
  const std::vector<std::string> &details() const { return details_; }

 private:
  EngineErrorKind kind_;
  std::vector<std::string> details_;
};

/// Throws EngineError(kTypeMismatch) for a row that does not inhabit the
/// relation type.
Relation make_relation(RowType type, const std::vector<Row> &rows);

Relation natural_join(const Relation &a, const Relation &b);
Relation restrict(const Relation &rel, const AttrSet &labels);

struct Violation {
  enum class Kind { kPredicate, kFunDep };
  Kind kind;
  Row row;
  /// The second row of a dependency violation.
  std::optional<Row> other;
  std::optional<FunDep> fd;
};

std::string to_string(const Violation &v);

std::vector<Violation> check_constraints(const Relation &rel,
                                         const Predicate &pred,
                                         const FunDeps &fds);
std::vector<Violation> check_constraints(const Relation &rel,
                                         const FunDeps &fds);

/// Rewrites the determined fields of target rows to agree with the
/// authority, dependency by dependency from the roots of the tree down.
/// Throws EngineError(kAmbiguousAuthority) when the authority itself
/// violates F.
Relation revise(const Relation &target, const Relation &authority,
                const FunDeps &fds);

/// Evaluates the view structurally. Does not require the expression to
/// typecheck, only that every predicate matches the rows it filters.
Relation get(const LensPtr &expr, const Store &store);

/// Checks every table primitive's declared dependencies against the store.
/// Returns one message per violation, prefixed with the table name.
std::vector<std::string> check_sources(const LensPtr &expr, const Store &store);

/// State-based put. The view and every intermediate relation are checked
/// against the sort of the corresponding subexpression; on a violation
/// EngineError(kConstraintViolation) is thrown and `store` is not touched.
Store put(const TypedLensPtr &lens, const Store &store, const Relation &view);

/// Typechecks then puts.
Store put(const LensPtr &expr, const SchemaEnv &env, const Store &store,
          const Relation &view);

}  // namespace lensdb
