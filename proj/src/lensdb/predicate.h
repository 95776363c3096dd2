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

// The simply-typed predicate calculus: types, terms, typing, big-step
// evaluation, normalisation and the predicate-level operations that the lens
// typechecker relies on (ignores, substitution of a projection, conjunction,
// SQL rendering).

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "lensdb/value.h"

namespace lensdb {

enum class PredicateErrorKind {
  kSyntaxError,
  kUnboundParam,
  kTypeError,
  kUnboundVar,
  kMissingField,
  kUnsupportedTerm,
};

std::string_view to_string(PredicateErrorKind kind);

class PredicateError : public std::runtime_error {
 public:
  PredicateError(PredicateErrorKind kind, const std::string &msg,
                 std::size_t column = 0);

  PredicateErrorKind kind() const { return kind_; }
  /// 1-based column in the source text for syntax errors, 0 otherwise.
  std::size_t column() const { return column_; }

 private:
  PredicateErrorKind kind_;
  std::size_t column_;
};

// ---------------------------------------------------------------------------
// Types

class Type;
using TypePtr = std::shared_ptr<const Type>;

class Type {
 public:
  struct Record {
    std::vector<std::pair<std::string, TypePtr>> fields;
  };
  struct Function {
    TypePtr arg;
    TypePtr result;
  };
  using Node = std::variant<BaseKind, Record, Function>;

  explicit Type(Node node) : node_(std::move(node)) {}

  static TypePtr base(BaseKind kind);
  /// Throws PredicateError(kTypeError) on duplicate labels.
  static TypePtr record(std::vector<std::pair<std::string, TypePtr>> fields);
  static TypePtr function(TypePtr arg, TypePtr result);
  static TypePtr of_row(const RowType &row);

  const Node &node() const { return node_; }
  template <typename T>
  const T *as() const {
    return std::get_if<T>(&node_);
  }

  /// Looks up a record field; nullptr if this is not a record or the label is
  /// absent.
  TypePtr field(std::string_view label) const;

 private:
  Node node_;
};

bool types_equal(const Type &a, const Type &b);
std::string to_string(const Type &type);

/// The base record type view of a record type whose fields are all base.
std::optional<RowType> as_row_type(const Type &type);

// ---------------------------------------------------------------------------
// Terms

enum class OpCode {
  kEq,
  kNe,
  kLt,
  kGt,
  kLe,
  kGe,
  kAnd,
  kOr,
  kNot,
  kAdd,
  kSub,
  kMul,
};

std::string_view op_symbol(OpCode code);
std::size_t op_arity(OpCode code);
bool is_comparison(OpCode code);

class Term;
using TermPtr = std::shared_ptr<const Term>;

class Term {
 public:
  struct Var {
    std::string name;
  };
  struct Const {
    Constant value;
  };
  /// A `$name` placeholder whose value is only known at run time. Behaves as
  /// an opaque constant of the given kind.
  struct Param {
    std::string name;
    BaseKind kind;
  };
  struct Abs {
    std::string param;
    TypePtr param_type;
    TermPtr body;
  };
  struct App {
    TermPtr fn;
    TermPtr arg;
  };
  struct RecordLit {
    std::vector<std::pair<std::string, TermPtr>> fields;
  };
  struct Project {
    TermPtr subject;
    std::string label;
  };
  struct If {
    TermPtr cond;
    TermPtr then_branch;
    TermPtr else_branch;
  };
  struct Op {
    OpCode code;
    std::vector<TermPtr> args;
  };
  using Node =
      std::variant<Var, Const, Param, Abs, App, RecordLit, Project, If, Op>;

  explicit Term(Node node) : node_(std::move(node)) {}

  const Node &node() const { return node_; }
  template <typename T>
  const T *as() const {
    return std::get_if<T>(&node_);
  }

 private:
  Node node_;
};

namespace terms {
TermPtr var(std::string name);
TermPtr constant(Constant value);
TermPtr param(std::string name, BaseKind kind);
TermPtr lambda(std::string param, TypePtr param_type, TermPtr body);
TermPtr apply(TermPtr fn, TermPtr arg);
TermPtr record(std::vector<std::pair<std::string, TermPtr>> fields);
TermPtr project(TermPtr subject, std::string label);
TermPtr if_then_else(TermPtr cond, TermPtr then_branch, TermPtr else_branch);
TermPtr op(OpCode code, std::vector<TermPtr> args);
TermPtr binary(OpCode code, TermPtr lhs, TermPtr rhs);
/// `binder.label`
TermPtr field(const std::string &binder, std::string label);
}  // namespace terms

/// Debug rendering in lambda notation, e.g. `(\x:(a: int). x.a) r`.
std::string to_string(const TermPtr &term);

/// Structural equality up to renaming of lambda binders.
bool terms_equal(const TermPtr &a, const TermPtr &b);

std::set<std::string> free_vars(const TermPtr &term);

/// Capture-avoiding substitution term[replacement / var].
TermPtr substitute(const TermPtr &term, const std::string &var,
                   const TermPtr &replacement);

/// Parameters occurring in the term with their kinds.
std::map<std::string, BaseKind> params_of(const TermPtr &term);

/// Replaces Param nodes by constants; parameters absent from `values` stay.
TermPtr bind_params(const TermPtr &term,
                    const std::map<std::string, Constant> &values);

// ---------------------------------------------------------------------------
// Typing and evaluation

using TypeEnv = std::map<std::string, TypePtr>;

/// Computes the unique type of `term` under `env`.
TypePtr typecheck_term(const TypeEnv &env, const TermPtr &term);

class Value;
struct Closure;
struct RecordValue;

class Value {
 public:
  using Node = std::variant<Constant, std::shared_ptr<const Closure>,
                            std::shared_ptr<const RecordValue>>;

  Value(Constant c) : node_(std::move(c)) {}  // NOLINT(google-explicit-constructor)
  explicit Value(std::shared_ptr<const Closure> c) : node_(std::move(c)) {}
  explicit Value(std::shared_ptr<const RecordValue> r) : node_(std::move(r)) {}

  static Value of_row(const Row &row);

  const Node &node() const { return node_; }
  const Constant *as_constant() const { return std::get_if<Constant>(&node_); }
  const Closure *as_closure() const;
  const RecordValue *as_record() const;

 private:
  Node node_;
};

using Env = std::map<std::string, Value>;

struct Closure {
  std::string param;
  TypePtr param_type;
  TermPtr body;
  Env env;
};

struct RecordValue {
  std::vector<std::pair<std::string, Value>> fields;
};

std::string to_string(const Value &value);

/// Big-step evaluation M => V. Total on well-typed terms whose free
/// variables are bound in `env`.
Value evaluate(const TermPtr &term, const Env &env = {});

/// Checks `. |- V : A` (closures are checked by typing their body).
bool value_has_type(const Value &value, const Type &type);

/// Denotation of an operator on constant arguments.
Constant apply_op(OpCode code, std::span<const Constant> args);

// ---------------------------------------------------------------------------
// Normalisation

/// Exhaustively applies the six rewrite rules (beta, record projection,
/// if-true, if-false, application into conditional, conditional into record)
/// at every position. `env` types the free variables of the term.
TermPtr normalize(const TermPtr &term, const TypeEnv &env = {});

/// Folds operators over constants, conditionals over constant conditions and
/// the unit/zero laws of && and ||.
TermPtr fold_constants(const TermPtr &term);

/// normalize followed by fold_constants.
TermPtr simplify(const TermPtr &term, const TypeEnv &env = {});

/// Membership in the predicate normal form grammar
///   P ::= if P then P else P | op(P...) | x.l | c
bool is_pnf(const TermPtr &term);

/// Membership in the general normal form grammar O.
bool is_normal_form(const TermPtr &term);

// ---------------------------------------------------------------------------
// Predicates

/// A single-binder predicate `\binder. body` over a base record type. The
/// body is always typed as bool and kept simplified (hence in PNF).
class Predicate {
 public:
  static constexpr std::string_view kDefaultBinder = "x";

  /// Typechecks and simplifies. Throws PredicateError.
  static Predicate make(std::string binder, const TermPtr &body, RowType row);
  static Predicate make(const TermPtr &body, RowType row) {
    return make(std::string(kDefaultBinder), body, std::move(row));
  }
  static Predicate always_true(RowType row);

  const std::string &binder() const { return binder_; }
  const TermPtr &body() const { return body_; }
  const RowType &row() const { return row_; }
  std::map<std::string, BaseKind> params() const { return params_of(body_); }
  bool is_true() const;

 private:
  Predicate(std::string binder, TermPtr body, RowType row)
      : binder_(std::move(binder)), body_(std::move(body)),
        row_(std::move(row)) {}

  std::string binder_;
  TermPtr body_;
  RowType row_;
};

/// P[r/x] => true. Throws std::invalid_argument if the row does not inhabit
/// the predicate's row type and PredicateError(kUnboundParam) if the body
/// still holds an unbound parameter.
bool satisfies(const Predicate &pred, const Row &row);

AttrSet referenced_fields(const Predicate &pred);
bool ignores(const Predicate &pred, const AttrSet &labels);

/// P[value / x.label]; the resulting row type no longer contains `label`.
Predicate substitute_projection(const Predicate &pred, const std::string &label,
                                const Constant &value);

/// \x. p && q over the union of the two row types (which must agree on
/// shared labels).
Predicate conjoin(const Predicate &p, const Predicate &q);

/// The top-level conjuncts of the body, with nested && flattened.
std::vector<TermPtr> conjuncts(const Predicate &pred);

/// Row types equal and bodies equal up to binder renaming.
bool predicates_equal(const Predicate &a, const Predicate &b);

Predicate bind_params(const Predicate &pred,
                      const std::map<std::string, Constant> &values);

/// Renders the body as a SQL boolean expression. Throws
/// PredicateError(kUnsupportedTerm) when the body is not in PNF.
std::string render_sql(const Predicate &pred);

/// Renders the body in the predicate surface syntax (bare field names).
std::string to_surface(const Predicate &pred);

}  // namespace lensdb
