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


#include "lensdb/predicate_parser.h"

#include <fmt/core.h>

#include <utility>
#include <vector>

#include "lensdb/lexer.h"

namespace lensdb {

namespace {

bool is_reserved(std::string_view word) {
  return word == "true" || word == "false" || word == "if" || word == "then" ||
         word == "else";
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, const RowType &row)
      : tokens_(std::move(tokens)), row_(row) {}

  TermPtr parse() {
    TermPtr e = expr();
    if (peek().kind != TokenKind::kEnd) fail("end of predicate");
    return e;
  }

 private:
  const Token &peek() const { return tokens_[pos_]; }
  const Token &next() { return tokens_[pos_++]; }

  bool accept_punct(std::string_view p) {
    if (!peek().is_punct(p)) return false;
    ++pos_;
    return true;
  }

  void expect_word(std::string_view w) {
    if (!peek().is_word(w)) fail(fmt::format("'{}'", w));
    ++pos_;
  }

  [[noreturn]] void fail(const std::string &expected) const {
    const Token &t = peek();
    throw PredicateError(
        PredicateErrorKind::kSyntaxError,
        fmt::format("column {}: expected {}, found {}", t.begin + 1, expected,
                    describe(t)),
        t.begin + 1);
  }

  TermPtr expr() { return disjunction(); }

  TermPtr disjunction() {
    TermPtr lhs = conjunction();
    while (accept_punct("||")) {
      lhs = terms::binary(OpCode::kOr, lhs, conjunction());
    }
    return lhs;
  }

  TermPtr conjunction() {
    TermPtr lhs = comparison();
    while (accept_punct("&&")) {
      lhs = terms::binary(OpCode::kAnd, lhs, comparison());
    }
    return lhs;
  }

  TermPtr comparison() {
    TermPtr lhs = additive();
    static const std::pair<std::string_view, OpCode> kOps[] = {
        {"==", OpCode::kEq}, {"!=", OpCode::kNe}, {"<", OpCode::kLt},
        {">", OpCode::kGt},  {"<=", OpCode::kLe}, {">=", OpCode::kGe}};
    for (const auto &[sym, code] : kOps) {
      if (accept_punct(sym)) return terms::binary(code, lhs, additive());
    }
    return lhs;
  }

  TermPtr additive() {
    TermPtr lhs = multiplicative();
    for (;;) {
      if (accept_punct("+")) {
        lhs = terms::binary(OpCode::kAdd, lhs, multiplicative());
      } else if (accept_punct("-")) {
        lhs = terms::binary(OpCode::kSub, lhs, multiplicative());
      } else {
        return lhs;
      }
    }
  }

  TermPtr multiplicative() {
    TermPtr lhs = unary();
    while (accept_punct("*")) {
      lhs = terms::binary(OpCode::kMul, lhs, unary());
    }
    return lhs;
  }

  TermPtr unary() {
    if (accept_punct("!")) return terms::op(OpCode::kNot, {unary()});
    return atom();
  }

  TermPtr atom() {
    const Token &t = peek();
    switch (t.kind) {
      case TokenKind::kInt:
        ++pos_;
        return terms::constant(Int(t.text));
      case TokenKind::kString:
        ++pos_;
        return terms::constant(t.text);
      case TokenKind::kParam:
        ++pos_;
        // The kind is a placeholder until inference runs.
        return terms::param(t.text, BaseKind::kString);
      case TokenKind::kIdent:
        break;
      default:
        if (accept_punct("(")) {
          TermPtr e = expr();
          if (!accept_punct(")")) fail("')'");
          return e;
        }
        fail("expression");
    }
    if (t.text == "true" || t.text == "false") {
      ++pos_;
      return terms::constant(t.text == "true");
    }
    if (t.text == "if") {
      ++pos_;
      TermPtr c = expr();
      expect_word("then");
      TermPtr a = expr();
      expect_word("else");
      TermPtr b = expr();
      return terms::if_then_else(c, a, b);
    }
    if (is_reserved(t.text)) fail("expression");
    if (!row_.contains(t.text)) {
      throw PredicateError(
          PredicateErrorKind::kMissingField,
          fmt::format("column {}: unknown column '{}' in {}", t.begin + 1,
                      t.text, to_string(row_)),
          t.begin + 1);
    }
    ++pos_;
    return terms::field(std::string(Predicate::kDefaultBinder), t.text);
  }

  std::vector<Token> tokens_;
  const RowType &row_;
  std::size_t pos_ = 0;
};

// Type of a subterm during parameter inference: a known base kind, or the
// (as yet unconstrained) type of a parameter.
struct InferredType {
  std::optional<BaseKind> kind;
  std::string param;
};

class ParamInference {
 public:
  explicit ParamInference(const RowType &row) : row_(row) {}

  InferredType infer(const TermPtr &term) {
    if (const auto *c = term->as<Term::Const>()) return {kind_of(c->value), {}};
    if (const auto *p = term->as<Term::Param>()) {
      parent_.try_emplace(p->name, p->name);
      const std::string &root = find(p->name);
      return {kind_[root], root};
    }
    if (const auto *p = term->as<Term::Project>()) return {row_.at(p->label), {}};
    if (const auto *i = term->as<Term::If>()) {
      unify(infer(i->cond), known(BaseKind::kBool));
      InferredType a = infer(i->then_branch);
      InferredType b = infer(i->else_branch);
      return unify(a, b);
    }
    const auto &o = *term->as<Term::Op>();
    std::vector<InferredType> args;
    for (const auto &a : o.args) args.push_back(infer(a));
    if (is_comparison(o.code)) {
      unify(args[0], args[1]);
      return known(BaseKind::kBool);
    }
    BaseKind operand = (o.code == OpCode::kAnd || o.code == OpCode::kOr ||
                        o.code == OpCode::kNot)
                           ? BaseKind::kBool
                           : BaseKind::kInt;
    for (const auto &a : args) unify(a, known(operand));
    return known(operand);
  }

  /// Final kinds of all parameters seen, grouped by equivalence class.
  std::map<std::string, std::optional<BaseKind>> kinds() {
    std::map<std::string, std::optional<BaseKind>> out;
    for (const auto &[name, p] : parent_) out[name] = kind_[find(name)];
    return out;
  }

  const std::string &find(const std::string &name) {
    std::string &p = parent_.at(name);
    if (p != name) p = find(p);
    return p;
  }

  void set_kind(const std::string &name, BaseKind kind) {
    kind_[find(name)] = kind;
  }

 private:
  static InferredType known(BaseKind k) { return {k, {}}; }

  InferredType unify(const InferredType &a, const InferredType &b) {
    std::optional<BaseKind> ka = current(a);
    std::optional<BaseKind> kb = current(b);
    if (ka && kb) {
      if (*ka != *kb && (!a.param.empty() || !b.param.empty())) {
        const std::string &name = a.param.empty() ? b.param : a.param;
        throw PredicateError(
            PredicateErrorKind::kTypeError,
            fmt::format("parameter ${} is used at both {} and {}", name,
                        to_string(*ka), to_string(*kb)));
      }
      // Mismatches between known types are reported by the typechecker.
      return a;
    }
    if (!a.param.empty() && !b.param.empty()) {
      std::string ra = find(a.param);
      std::string rb = find(b.param);
      if (ra != rb) {
        parent_[rb] = ra;
        if (!kind_[ra]) kind_[ra] = kind_[rb];
      }
      return {kind_[ra], ra};
    }
    if (!a.param.empty() && kb) {
      kind_[find(a.param)] = *kb;
      return b;
    }
    if (!b.param.empty() && ka) {
      kind_[find(b.param)] = *ka;
      return a;
    }
    return a;
  }

  std::optional<BaseKind> current(const InferredType &t) {
    if (!t.param.empty()) return kind_[find(t.param)];
    return t.kind;
  }

  const RowType &row_;
  std::map<std::string, std::string> parent_;
  std::map<std::string, std::optional<BaseKind>> kind_;
};

// Replaces each parameter by its value, or re-tags it with its inferred kind
// when it stays symbolic. Parsed terms contain no binders.
TermPtr resolve_params(const TermPtr &term,
                       const std::map<std::string, Constant> &values,
                       const std::map<std::string, BaseKind> &symbolic) {
  if (const auto *p = term->as<Term::Param>()) {
    if (auto it = values.find(p->name); it != values.end()) {
      return terms::constant(it->second);
    }
    return terms::param(p->name, symbolic.at(p->name));
  }
  if (const auto *i = term->as<Term::If>()) {
    return terms::if_then_else(resolve_params(i->cond, values, symbolic),
                               resolve_params(i->then_branch, values, symbolic),
                               resolve_params(i->else_branch, values, symbolic));
  }
  if (const auto *o = term->as<Term::Op>()) {
    std::vector<TermPtr> args;
    for (const auto &a : o->args) {
      args.push_back(resolve_params(a, values, symbolic));
    }
    return terms::op(o->code, std::move(args));
  }
  return term;
}

}  // namespace

std::optional<Constant> parse_constant_as(std::string_view text,
                                          BaseKind kind) {
  switch (kind) {
    case BaseKind::kBool:
      if (text == "true") return Constant(true);
      if (text == "false") return Constant(false);
      return std::nullopt;
    case BaseKind::kInt: {
      std::string_view digits = text;
      if (!digits.empty() && digits.front() == '-') digits.remove_prefix(1);
      if (digits.empty()) return std::nullopt;
      for (char c : digits) {
        if (c < '0' || c > '9') return std::nullopt;
      }
      return Constant(Int(std::string(text)));
    }
    case BaseKind::kString:
      return Constant(std::string(text));
  }
  return std::nullopt;
}

Predicate parse_predicate(std::string_view text, const RowType &row,
                          const ParamBindings &params) {
  Parser parser(tokenize(text), row);
  TermPtr body = parser.parse();

  ParamInference inference(row);
  inference.infer(body);
  // Unconstrained classes take the type of a typed binding if there is one,
  // and default to string otherwise.
  for (const auto &[name, kind] : inference.kinds()) {
    if (kind) continue;
    if (auto it = params.typed.find(name); it != params.typed.end()) {
      inference.set_kind(name, kind_of(it->second));
    }
  }
  std::map<std::string, Constant> values;
  std::map<std::string, BaseKind> symbolic;
  for (const auto &[name, maybe_kind] : inference.kinds()) {
    BaseKind kind = maybe_kind.value_or(BaseKind::kString);
    if (auto it = params.typed.find(name); it != params.typed.end()) {
      if (kind_of(it->second) != kind) {
        throw PredicateError(
            PredicateErrorKind::kTypeError,
            fmt::format("parameter ${} has type {} but was given {}", name,
                        to_string(kind), to_string(it->second)));
      }
      values.emplace(name, it->second);
    } else if (auto ut = params.untyped.find(name);
               ut != params.untyped.end()) {
      std::optional<Constant> c = parse_constant_as(ut->second, kind);
      if (!c) {
        throw PredicateError(
            PredicateErrorKind::kTypeError,
            fmt::format("parameter ${} expects {}, got '{}'", name,
                        to_string(kind), ut->second));
      }
      values.emplace(name, std::move(*c));
    } else if (params.symbolic_when_unbound) {
      symbolic.emplace(name, kind);
    } else {
      throw PredicateError(PredicateErrorKind::kUnboundParam,
                           fmt::format("unbound parameter ${}", name));
    }
  }
  return Predicate::make(std::string(Predicate::kDefaultBinder),
                         resolve_params(body, values, symbolic), row);
}

Predicate parse_predicate(std::string_view text, const RowType &row,
                          const std::map<std::string, Constant> &params) {
  ParamBindings bindings;
  bindings.typed = params;
  return parse_predicate(text, row, bindings);
}

}  // namespace lensdb
