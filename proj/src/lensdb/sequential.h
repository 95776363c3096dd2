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

// Sequential-style lenses over named relations, the flattening translation
// from compositional lenses, and a typechecker for the sequential rules used
// to cross-validate the compositional one.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lensdb/fundeps.h"
#include "lensdb/lens.h"
#include "lensdb/oracles.h"
#include "lensdb/predicate.h"

namespace lensdb {

class SeqLens;
using SeqPtr = std::shared_ptr<const SeqLens>;

class SeqLens {
 public:
  /// Identity; `relation` names the relation it stands for when it comes
  /// from a table primitive (used only for display).
  struct Id {
    std::string relation;
  };
  struct Compose {
    SeqPtr first;
    SeqPtr second;
  };
  struct SelectAs {
    std::string src;
    Predicate pred;
    std::string dst;
  };
  struct JoinDlAs {
    std::string left;
    std::string right;
    std::string dst;
  };
  struct DropAs {
    std::string label;
    AttrSet determined_by;
    Constant default_value;
    std::string src;
    std::string dst;
  };
  using Node = std::variant<Id, Compose, SelectAs, JoinDlAs, DropAs>;

  explicit SeqLens(Node node) : node_(std::move(node)) {}
  const Node &node() const { return node_; }
  template <typename T>
  const T *as() const {
    return std::get_if<T>(&node_);
  }

 private:
  Node node_;
};

namespace seq {
SeqPtr id(std::string relation = {});
SeqPtr compose(SeqPtr first, SeqPtr second);
SeqPtr select_as(std::string src, Predicate pred, std::string dst);
SeqPtr join_dl_as(std::string left, std::string right, std::string dst);
SeqPtr drop_as(std::string label, AttrSet determined_by, Constant default_value,
               std::string src, std::string dst);
}  // namespace seq

struct RelSort {
  AttrSet attrs;
  Predicate pred;
  FunDeps fds;
};

/// `(a, b; PRED; {FDS})`
std::string to_string(const RelSort &sort);

struct Flattening {
  /// Source tables in traversal order; a table used twice appears twice.
  std::vector<std::string> schema;
  SeqPtr lens;
  std::string view;
  /// Dependencies declared on each table primitive, in traversal order.
  std::vector<std::pair<std::string, FunDeps>> primitives;
};

/// Fresh view names are `_v0`, `_v1`, ... in post-order, left to right.
/// `check` is transparent. Throws LensTypeError(kUnimplementedVariant) for
/// joins other than delete-left.
Flattening flatten(const LensPtr &expr);

struct SeqStage {
  std::vector<std::string> sources;
  /// `id`, `select P`, `join_dl`, `drop l by X default V`.
  std::string label;
  std::string dst;
  RelSort sort;
};

struct SeqJudgement {
  std::set<std::string> sources;
  std::set<std::string> views;
  std::vector<SeqStage> stages;
  std::map<std::string, RelSort> sorts;
};

/// Checks the sequential rules with relation sorts threaded through the
/// schema: each primitive consumes its source relations and produces its
/// destination. Throws LensTypeError.
SeqJudgement typecheck_sequential(const SeqPtr &lens,
                                  const std::map<std::string, RelSort> &sorts);

/// Source relation sorts for the primitives of a flattening. Throws
/// LensTypeError for unknown tables and columns, and for a schema that uses
/// a table more than once.
std::map<std::string, RelSort> source_sorts(const Flattening &flat,
                                            const SchemaEnv &env);

struct TranslationReport {
  std::optional<LensSort> functional;
  std::optional<LensTypeError> functional_error;
  std::optional<RelSort> sequential;
  std::optional<LensTypeError> sequential_error;
  std::vector<std::string> divergences;

  bool agree() const { return divergences.empty(); }
};

/// Runs both checkers and compares their verdicts and, on acceptance, the
/// final sorts (attributes, dependencies up to equivalence, predicates up
/// to syntactic equality or agreement on a covering finite domain).
TranslationReport verify_translation(const LensPtr &expr, const SchemaEnv &env,
                                     std::size_t bound = kDefaultOracleBound);

/// The `explain` rendering: a judgement line followed by one line per stage.
std::string explain(const SeqJudgement &judgement);

}  // namespace lensdb
