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

#include "lensdb/predicate.h"

#include <fmt/core.h>

#include <algorithm>
#include <cassert>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lensdb {

std::string_view to_string(PredicateErrorKind kind) {
  switch (kind) {
    case PredicateErrorKind::kSyntaxError:
      return "SyntaxError";
    case PredicateErrorKind::kUnboundParam:
      return "UnboundParam";
    case PredicateErrorKind::kTypeError:
      return "TypeError";
    case PredicateErrorKind::kUnboundVar:
      return "UnboundVar";
    case PredicateErrorKind::kMissingField:
      return "MissingField";
    case PredicateErrorKind::kUnsupportedTerm:
      return "UnsupportedTerm";
  }
  return "?";
}

PredicateError::PredicateError(PredicateErrorKind kind, const std::string &msg,
                               std::size_t column)
    : std::runtime_error(msg), kind_(kind), column_(column) {}

namespace {

[[noreturn]] void type_error(const std::string &msg) {
  throw PredicateError(PredicateErrorKind::kTypeError, msg);
}

}  // namespace

// ---------------------------------------------------------------------------
// Types

TypePtr Type::base(BaseKind kind) {
  static const TypePtr kBool = std::make_shared<Type>(BaseKind::kBool);
  static const TypePtr kInt = std::make_shared<Type>(BaseKind::kInt);
  static const TypePtr kString = std::make_shared<Type>(BaseKind::kString);
  switch (kind) {
    case BaseKind::kBool:
      return kBool;
    case BaseKind::kInt:
      return kInt;
    case BaseKind::kString:
      return kString;
  }
  return kBool;
}

TypePtr Type::record(std::vector<std::pair<std::string, TypePtr>> fields) {
  std::set<std::string> seen;
  for (const auto &[label, type] : fields) {
    if (!seen.insert(label).second) {
      type_error(fmt::format("duplicate record label '{}'", label));
    }
  }
  return std::make_shared<Type>(Record{std::move(fields)});
}

TypePtr Type::function(TypePtr arg, TypePtr result) {
  return std::make_shared<Type>(Function{std::move(arg), std::move(result)});
}

TypePtr Type::of_row(const RowType &row) {
  std::vector<std::pair<std::string, TypePtr>> fields;
  fields.reserve(row.size());
  for (const auto &[label, kind] : row) fields.emplace_back(label, base(kind));
  return std::make_shared<Type>(Record{std::move(fields)});
}

TypePtr Type::field(std::string_view label) const {
  const auto *rec = as<Record>();
  if (rec == nullptr) return nullptr;
  for (const auto &[l, t] : rec->fields) {
    if (l == label) return t;
  }
  return nullptr;
}

bool types_equal(const Type &a, const Type &b) {
  if (a.node().index() != b.node().index()) return false;
  if (const auto *ka = a.as<BaseKind>()) return *ka == *b.as<BaseKind>();
  if (const auto *fa = a.as<Type::Function>()) {
    const auto *fb = b.as<Type::Function>();
    return types_equal(*fa->arg, *fb->arg) &&
           types_equal(*fa->result, *fb->result);
  }
  // Records compare as label-indexed maps.
  const auto &ra = a.as<Type::Record>()->fields;
  const auto &rb = b.as<Type::Record>()->fields;
  if (ra.size() != rb.size()) return false;
  for (const auto &[label, type] : ra) {
    TypePtr other = b.field(label);
    if (!other || !types_equal(*type, *other)) return false;
  }
  return true;
}

std::string to_string(const Type &type) {
  if (const auto *k = type.as<BaseKind>()) return std::string(to_string(*k));
  if (const auto *f = type.as<Type::Function>()) {
    return fmt::format("({} -> {})", to_string(*f->arg), to_string(*f->result));
  }
  std::string out = "(";
  bool first = true;
  for (const auto &[label, t] : type.as<Type::Record>()->fields) {
    if (!first) out += ", ";
    first = false;
    out += fmt::format("{}: {}", label, to_string(*t));
  }
  return out + ")";
}

std::optional<RowType> as_row_type(const Type &type) {
  const auto *rec = type.as<Type::Record>();
  if (rec == nullptr) return std::nullopt;
  RowType row;
  for (const auto &[label, t] : rec->fields) {
    const auto *k = t->as<BaseKind>();
    if (k == nullptr) return std::nullopt;
    row.emplace(label, *k);
  }
  return row;
}

// ---------------------------------------------------------------------------
// Terms

std::string_view op_symbol(OpCode code) {
  switch (code) {
    case OpCode::kEq:
      return "==";
    case OpCode::kNe:
      return "!=";
    case OpCode::kLt:
      return "<";
    case OpCode::kGt:
      return ">";
    case OpCode::kLe:
      return "<=";
    case OpCode::kGe:
      return ">=";
    case OpCode::kAnd:
      return "&&";
    case OpCode::kOr:
      return "||";
    case OpCode::kNot:
      return "!";
    case OpCode::kAdd:
      return "+";
    case OpCode::kSub:
      return "-";
    case OpCode::kMul:
      return "*";
  }
  return "?";
}

std::size_t op_arity(OpCode code) { return code == OpCode::kNot ? 1 : 2; }

bool is_comparison(OpCode code) {
  switch (code) {
    case OpCode::kEq:
    case OpCode::kNe:
    case OpCode::kLt:
    case OpCode::kGt:
    case OpCode::kLe:
    case OpCode::kGe:
      return true;
    default:
      return false;
  }
}

namespace terms {
TermPtr var(std::string name) {
  return std::make_shared<Term>(Term::Var{std::move(name)});
}
TermPtr constant(Constant value) {
  return std::make_shared<Term>(Term::Const{std::move(value)});
}
TermPtr param(std::string name, BaseKind kind) {
  return std::make_shared<Term>(Term::Param{std::move(name), kind});
}
TermPtr lambda(std::string param, TypePtr param_type, TermPtr body) {
  return std::make_shared<Term>(
      Term::Abs{std::move(param), std::move(param_type), std::move(body)});
}
TermPtr apply(TermPtr fn, TermPtr arg) {
  return std::make_shared<Term>(Term::App{std::move(fn), std::move(arg)});
}
TermPtr record(std::vector<std::pair<std::string, TermPtr>> fields) {
  return std::make_shared<Term>(Term::RecordLit{std::move(fields)});
}
TermPtr project(TermPtr subject, std::string label) {
  return std::make_shared<Term>(
      Term::Project{std::move(subject), std::move(label)});
}
TermPtr if_then_else(TermPtr cond, TermPtr then_branch, TermPtr else_branch) {
  return std::make_shared<Term>(Term::If{
      std::move(cond), std::move(then_branch), std::move(else_branch)});
}
TermPtr op(OpCode code, std::vector<TermPtr> args) {
  return std::make_shared<Term>(Term::Op{code, std::move(args)});
}
TermPtr binary(OpCode code, TermPtr lhs, TermPtr rhs) {
  return op(code, {std::move(lhs), std::move(rhs)});
}
TermPtr field(const std::string &binder, std::string label) {
  return project(var(binder), std::move(label));
}
}  // namespace terms

std::string to_string(const TermPtr &term) {
  return std::visit(
      [](const auto &n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Term::Var>) {
          return n.name;
        } else if constexpr (std::is_same_v<T, Term::Const>) {
          return to_string(n.value);
        } else if constexpr (std::is_same_v<T, Term::Param>) {
          return "$" + n.name;
        } else if constexpr (std::is_same_v<T, Term::Abs>) {
          return fmt::format("(\\{}:{}. {})", n.param,
                             to_string(*n.param_type), to_string(n.body));
        } else if constexpr (std::is_same_v<T, Term::App>) {
          return fmt::format("({} {})", to_string(n.fn), to_string(n.arg));
        } else if constexpr (std::is_same_v<T, Term::RecordLit>) {
          std::string out = "(";
          bool first = true;
          for (const auto &[label, t] : n.fields) {
            if (!first) out += ", ";
            first = false;
            out += fmt::format("{} = {}", label, to_string(t));
          }
          return out + ")";
        } else if constexpr (std::is_same_v<T, Term::Project>) {
          return fmt::format("{}.{}", to_string(n.subject), n.label);
        } else if constexpr (std::is_same_v<T, Term::If>) {
          return fmt::format("(if {} then {} else {})", to_string(n.cond),
                             to_string(n.then_branch),
                             to_string(n.else_branch));
        } else {
          if (n.args.size() == 1) {
            return fmt::format("{}{}", op_symbol(n.code), to_string(n.args[0]));
          }
          return fmt::format("({} {} {})", to_string(n.args[0]),
                             op_symbol(n.code), to_string(n.args[1]));
        }
      },
      term->node());
}

namespace {

using BinderStack = std::vector<std::pair<std::string, std::string>>;

bool equal_with(const TermPtr &a, const TermPtr &b, BinderStack &binders) {
  if (a == b && binders.empty()) return true;
  if (a->node().index() != b->node().index()) return false;
  if (const auto *va = a->as<Term::Var>()) {
    const auto &vb = *b->as<Term::Var>();
    for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
      if (it->first == va->name || it->second == vb.name) {
        return it->first == va->name && it->second == vb.name;
      }
    }
    return va->name == vb.name;
  }
  if (const auto *ca = a->as<Term::Const>()) {
    return ca->value == b->as<Term::Const>()->value;
  }
  if (const auto *pa = a->as<Term::Param>()) {
    const auto &pb = *b->as<Term::Param>();
    return pa->name == pb.name && pa->kind == pb.kind;
  }
  if (const auto *la = a->as<Term::Abs>()) {
    const auto &lb = *b->as<Term::Abs>();
    if (!types_equal(*la->param_type, *lb.param_type)) return false;
    binders.emplace_back(la->param, lb.param);
    bool eq = equal_with(la->body, lb.body, binders);
    binders.pop_back();
    return eq;
  }
  if (const auto *aa = a->as<Term::App>()) {
    const auto &ab = *b->as<Term::App>();
    return equal_with(aa->fn, ab.fn, binders) &&
           equal_with(aa->arg, ab.arg, binders);
  }
  if (const auto *ra = a->as<Term::RecordLit>()) {
    const auto &rb = *b->as<Term::RecordLit>();
    if (ra->fields.size() != rb.fields.size()) return false;
    for (std::size_t i = 0; i < ra->fields.size(); ++i) {
      if (ra->fields[i].first != rb.fields[i].first ||
          !equal_with(ra->fields[i].second, rb.fields[i].second, binders)) {
        return false;
      }
    }
    return true;
  }
  if (const auto *pa = a->as<Term::Project>()) {
    const auto &pb = *b->as<Term::Project>();
    return pa->label == pb.label && equal_with(pa->subject, pb.subject, binders);
  }
  if (const auto *ia = a->as<Term::If>()) {
    const auto &ib = *b->as<Term::If>();
    return equal_with(ia->cond, ib.cond, binders) &&
           equal_with(ia->then_branch, ib.then_branch, binders) &&
           equal_with(ia->else_branch, ib.else_branch, binders);
  }
  const auto &oa = *a->as<Term::Op>();
  const auto &ob = *b->as<Term::Op>();
  if (oa.code != ob.code || oa.args.size() != ob.args.size()) return false;
  for (std::size_t i = 0; i < oa.args.size(); ++i) {
    if (!equal_with(oa.args[i], ob.args[i], binders)) return false;
  }
  return true;
}

void collect_free_vars(const TermPtr &term, std::set<std::string> &bound,
                       std::set<std::string> &out) {
  std::visit(
      [&](const auto &n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Term::Var>) {
          if (!bound.contains(n.name)) out.insert(n.name);
        } else if constexpr (std::is_same_v<T, Term::Abs>) {
          bool added = bound.insert(n.param).second;
          collect_free_vars(n.body, bound, out);
          if (added) bound.erase(n.param);
        } else if constexpr (std::is_same_v<T, Term::App>) {
          collect_free_vars(n.fn, bound, out);
          collect_free_vars(n.arg, bound, out);
        } else if constexpr (std::is_same_v<T, Term::RecordLit>) {
          for (const auto &[l, t] : n.fields) collect_free_vars(t, bound, out);
        } else if constexpr (std::is_same_v<T, Term::Project>) {
          collect_free_vars(n.subject, bound, out);
        } else if constexpr (std::is_same_v<T, Term::If>) {
          collect_free_vars(n.cond, bound, out);
          collect_free_vars(n.then_branch, bound, out);
          collect_free_vars(n.else_branch, bound, out);
        } else if constexpr (std::is_same_v<T, Term::Op>) {
          for (const auto &t : n.args) collect_free_vars(t, bound, out);
        }
      },
      term->node());
}

void collect_all_names(const TermPtr &term, std::set<std::string> &out) {
  std::visit(
      [&](const auto &n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Term::Var>) {
          out.insert(n.name);
        } else if constexpr (std::is_same_v<T, Term::Abs>) {
          out.insert(n.param);
          collect_all_names(n.body, out);
        } else if constexpr (std::is_same_v<T, Term::App>) {
          collect_all_names(n.fn, out);
          collect_all_names(n.arg, out);
        } else if constexpr (std::is_same_v<T, Term::RecordLit>) {
          for (const auto &[l, t] : n.fields) collect_all_names(t, out);
        } else if constexpr (std::is_same_v<T, Term::Project>) {
          collect_all_names(n.subject, out);
        } else if constexpr (std::is_same_v<T, Term::If>) {
          collect_all_names(n.cond, out);
          collect_all_names(n.then_branch, out);
          collect_all_names(n.else_branch, out);
        } else if constexpr (std::is_same_v<T, Term::Op>) {
          for (const auto &t : n.args) collect_all_names(t, out);
        }
      },
      term->node());
}

std::string fresh_name(const std::string &base,
                       const std::set<std::string> &avoid) {
  for (int i = 1;; ++i) {
    std::string candidate = fmt::format("{}_{}", base, i);
    if (!avoid.contains(candidate)) return candidate;
  }
}

TermPtr subst(const TermPtr &term, const std::string &var,
              const TermPtr &replacement,
              const std::set<std::string> &replacement_fv) {
  return std::visit(
      [&](const auto &n) -> TermPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Term::Var>) {
          return n.name == var ? replacement : term;
        } else if constexpr (std::is_same_v<T, Term::Const> ||
                             std::is_same_v<T, Term::Param>) {
          return term;
        } else if constexpr (std::is_same_v<T, Term::Abs>) {
          if (n.param == var) return term;
          if (replacement_fv.contains(n.param)) {
            std::set<std::string> avoid = replacement_fv;
            collect_all_names(n.body, avoid);
            avoid.insert(var);
            std::string renamed = fresh_name(n.param, avoid);
            TermPtr body =
                subst(n.body, n.param, terms::var(renamed), {renamed});
            return terms::lambda(
                renamed, n.param_type,
                subst(body, var, replacement, replacement_fv));
          }
          return terms::lambda(n.param, n.param_type,
                               subst(n.body, var, replacement, replacement_fv));
        } else if constexpr (std::is_same_v<T, Term::App>) {
          return terms::apply(subst(n.fn, var, replacement, replacement_fv),
                              subst(n.arg, var, replacement, replacement_fv));
        } else if constexpr (std::is_same_v<T, Term::RecordLit>) {
          std::vector<std::pair<std::string, TermPtr>> fields;
          for (const auto &[l, t] : n.fields) {
            fields.emplace_back(l, subst(t, var, replacement, replacement_fv));
          }
          return terms::record(std::move(fields));
        } else if constexpr (std::is_same_v<T, Term::Project>) {
          return terms::project(
              subst(n.subject, var, replacement, replacement_fv), n.label);
        } else if constexpr (std::is_same_v<T, Term::If>) {
          return terms::if_then_else(
              subst(n.cond, var, replacement, replacement_fv),
              subst(n.then_branch, var, replacement, replacement_fv),
              subst(n.else_branch, var, replacement, replacement_fv));
        } else {
          std::vector<TermPtr> args;
          for (const auto &t : n.args) {
            args.push_back(subst(t, var, replacement, replacement_fv));
          }
          return terms::op(n.code, std::move(args));
        }
      },
      term->node());
}

/// Rebuilds a term bottom-up, giving `leaf` a chance to replace each node
/// before recursion. Used by the param and projection substitutions, which
/// never go under binders that could capture.
template <typename Fn>
TermPtr rewrite(const TermPtr &term, const Fn &leaf) {
  if (TermPtr replaced = leaf(term)) return replaced;
  return std::visit(
      [&](const auto &n) -> TermPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Term::Var> ||
                      std::is_same_v<T, Term::Const> ||
                      std::is_same_v<T, Term::Param>) {
          return term;
        } else if constexpr (std::is_same_v<T, Term::Abs>) {
          return terms::lambda(n.param, n.param_type, rewrite(n.body, leaf));
        } else if constexpr (std::is_same_v<T, Term::App>) {
          return terms::apply(rewrite(n.fn, leaf), rewrite(n.arg, leaf));
        } else if constexpr (std::is_same_v<T, Term::RecordLit>) {
          std::vector<std::pair<std::string, TermPtr>> fields;
          for (const auto &[l, t] : n.fields) {
            fields.emplace_back(l, rewrite(t, leaf));
          }
          return terms::record(std::move(fields));
        } else if constexpr (std::is_same_v<T, Term::Project>) {
          return terms::project(rewrite(n.subject, leaf), n.label);
        } else if constexpr (std::is_same_v<T, Term::If>) {
          return terms::if_then_else(rewrite(n.cond, leaf),
                                     rewrite(n.then_branch, leaf),
                                     rewrite(n.else_branch, leaf));
        } else {
          std::vector<TermPtr> args;
          for (const auto &t : n.args) args.push_back(rewrite(t, leaf));
          return terms::op(n.code, std::move(args));
        }
      },
      term->node());
}

}  // namespace

bool terms_equal(const TermPtr &a, const TermPtr &b) {
  BinderStack binders;
  return equal_with(a, b, binders);
}

std::set<std::string> free_vars(const TermPtr &term) {
  std::set<std::string> bound, out;
  collect_free_vars(term, bound, out);
  return out;
}

TermPtr substitute(const TermPtr &term, const std::string &var,
                   const TermPtr &replacement) {
  return subst(term, var, replacement, free_vars(replacement));
}

std::map<std::string, BaseKind> params_of(const TermPtr &term) {
  std::map<std::string, BaseKind> out;
  rewrite(term, [&](const TermPtr &t) -> TermPtr {
    if (const auto *p = t->as<Term::Param>()) out.emplace(p->name, p->kind);
    return nullptr;
  });
  return out;
}

TermPtr bind_params(const TermPtr &term,
                    const std::map<std::string, Constant> &values) {
  return rewrite(term, [&](const TermPtr &t) -> TermPtr {
    const auto *p = t->as<Term::Param>();
    if (p == nullptr) return nullptr;
    auto it = values.find(p->name);
    if (it == values.end()) return t;
    if (kind_of(it->second) != p->kind) {
      type_error(fmt::format("parameter ${} has type {} but was given {}",
                             p->name, to_string(p->kind),
                             to_string(it->second)));
    }
    return terms::constant(it->second);
  });
}

// ---------------------------------------------------------------------------
// Typing

TypePtr typecheck_term(const TypeEnv &env, const TermPtr &term) {
  return std::visit(
      [&](const auto &n) -> TypePtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Term::Var>) {
          auto it = env.find(n.name);
          if (it == env.end()) {
            throw PredicateError(PredicateErrorKind::kUnboundVar,
                                 fmt::format("unbound variable '{}'", n.name));
          }
          return it->second;
        } else if constexpr (std::is_same_v<T, Term::Const>) {
          return Type::base(kind_of(n.value));
        } else if constexpr (std::is_same_v<T, Term::Param>) {
          return Type::base(n.kind);
        } else if constexpr (std::is_same_v<T, Term::Abs>) {
          if (!n.param_type) {
            type_error(fmt::format("binder '{}' lacks a type annotation",
                                   n.param));
          }
          TypeEnv inner = env;
          inner[n.param] = n.param_type;
          return Type::function(n.param_type, typecheck_term(inner, n.body));
        } else if constexpr (std::is_same_v<T, Term::App>) {
          TypePtr fn = typecheck_term(env, n.fn);
          TypePtr arg = typecheck_term(env, n.arg);
          const auto *f = fn->template as<Type::Function>();
          if (f == nullptr) {
            type_error(fmt::format("cannot apply '{}' of non-function type {}",
                                   to_string(n.fn), to_string(*fn)));
          }
          if (!types_equal(*f->arg, *arg)) {
            type_error(fmt::format("argument of type {} where {} expected",
                                   to_string(*arg), to_string(*f->arg)));
          }
          return f->result;
        } else if constexpr (std::is_same_v<T, Term::RecordLit>) {
          std::vector<std::pair<std::string, TypePtr>> fields;
          for (const auto &[l, t] : n.fields) {
            fields.emplace_back(l, typecheck_term(env, t));
          }
          return Type::record(std::move(fields));
        } else if constexpr (std::is_same_v<T, Term::Project>) {
          TypePtr subject = typecheck_term(env, n.subject);
          if (subject->template as<Type::Record>() == nullptr) {
            type_error(fmt::format("projection .{} from non-record type {}",
                                   n.label, to_string(*subject)));
          }
          TypePtr f = subject->field(n.label);
          if (!f) {
            throw PredicateError(
                PredicateErrorKind::kMissingField,
                fmt::format("no field '{}' in {}", n.label,
                            to_string(*subject)));
          }
          return f;
        } else if constexpr (std::is_same_v<T, Term::If>) {
          TypePtr cond = typecheck_term(env, n.cond);
          if (!types_equal(*cond, *Type::base(BaseKind::kBool))) {
            type_error(fmt::format("condition has type {}, expected bool",
                                   to_string(*cond)));
          }
          TypePtr a = typecheck_term(env, n.then_branch);
          TypePtr b = typecheck_term(env, n.else_branch);
          if (!types_equal(*a, *b)) {
            type_error(fmt::format("conditional branches differ: {} vs {}",
                                   to_string(*a), to_string(*b)));
          }
          return a;
        } else {
          if (n.args.size() != op_arity(n.code)) {
            type_error(fmt::format("operator '{}' expects {} argument(s)",
                                   op_symbol(n.code), op_arity(n.code)));
          }
          std::vector<BaseKind> kinds;
          for (const auto &arg : n.args) {
            TypePtr t = typecheck_term(env, arg);
            const auto *k = t->template as<BaseKind>();
            if (k == nullptr) {
              type_error(fmt::format(
                  "operator '{}' applied to non-base type {}",
                  op_symbol(n.code), to_string(*t)));
            }
            kinds.push_back(*k);
          }
          auto expect = [&](BaseKind want) {
            for (BaseKind k : kinds) {
              if (k != want) {
                type_error(fmt::format(
                    "operator '{}' expects {} operands, got {}",
                    op_symbol(n.code), to_string(want), to_string(k)));
              }
            }
          };
          if (is_comparison(n.code)) {
            if (kinds[0] != kinds[1]) {
              type_error(fmt::format(
                  "operator '{}' expects matching operands, got {} and {}",
                  op_symbol(n.code), to_string(kinds[0]), to_string(kinds[1])));
            }
            return Type::base(BaseKind::kBool);
          }
          switch (n.code) {
            case OpCode::kAnd:
            case OpCode::kOr:
            case OpCode::kNot:
              expect(BaseKind::kBool);
              return Type::base(BaseKind::kBool);
            default:
              expect(BaseKind::kInt);
              return Type::base(BaseKind::kInt);
          }
        }
      },
      term->node());
}

// ---------------------------------------------------------------------------
// Evaluation

Value Value::of_row(const Row &row) {
  auto rec = std::make_shared<RecordValue>();
  rec->fields.reserve(row.size());
  for (const auto &[label, c] : row) rec->fields.emplace_back(label, Value(c));
  return Value(std::shared_ptr<const RecordValue>(std::move(rec)));
}

const Closure *Value::as_closure() const {
  const auto *p = std::get_if<std::shared_ptr<const Closure>>(&node_);
  return p ? p->get() : nullptr;
}

const RecordValue *Value::as_record() const {
  const auto *p = std::get_if<std::shared_ptr<const RecordValue>>(&node_);
  return p ? p->get() : nullptr;
}

std::string to_string(const Value &value) {
  if (const auto *c = value.as_constant()) return to_string(*c);
  if (const auto *cl = value.as_closure()) {
    return fmt::format("<closure \\{}. {}>", cl->param, to_string(cl->body));
  }
  std::string out = "(";
  bool first = true;
  for (const auto &[label, v] : value.as_record()->fields) {
    if (!first) out += ", ";
    first = false;
    out += fmt::format("{} = {}", label, to_string(v));
  }
  return out + ")";
}

Constant apply_op(OpCode code, std::span<const Constant> args) {
  if (args.size() != op_arity(code)) {
    type_error(fmt::format("operator '{}' given {} arguments",
                           op_symbol(code), args.size()));
  }
  if (is_comparison(code)) {
    const Constant &a = args[0];
    const Constant &b = args[1];
    if (a.index() != b.index()) {
      type_error(fmt::format("cannot compare {} with {}", to_string(a),
                             to_string(b)));
    }
    switch (code) {
      case OpCode::kEq:
        return a == b;
      case OpCode::kNe:
        return a != b;
      case OpCode::kLt:
        return a < b;
      case OpCode::kGt:
        return b < a;
      case OpCode::kLe:
        return !(b < a);
      default:
        return !(a < b);
    }
  }
  switch (code) {
    case OpCode::kAnd:
    case OpCode::kOr:
    case OpCode::kNot: {
      std::vector<bool> bs;
      for (const auto &c : args) {
        const bool *b = std::get_if<bool>(&c);
        if (b == nullptr) {
          type_error(fmt::format("operator '{}' given non-bool {}",
                                 op_symbol(code), to_string(c)));
        }
        bs.push_back(*b);
      }
      if (code == OpCode::kNot) return !bs[0];
      return code == OpCode::kAnd ? (bs[0] && bs[1]) : (bs[0] || bs[1]);
    }
    default: {
      const Int *a = std::get_if<Int>(&args[0]);
      const Int *b = std::get_if<Int>(&args[1]);
      if (a == nullptr || b == nullptr) {
        type_error(fmt::format("operator '{}' given non-int arguments",
                               op_symbol(code)));
      }
      if (code == OpCode::kAdd) return Int(*a + *b);
      if (code == OpCode::kSub) return Int(*a - *b);
      return Int(*a * *b);
    }
  }
}

Value evaluate(const TermPtr &term, const Env &env) {
  return std::visit(
      [&](const auto &n) -> Value {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Term::Var>) {
          auto it = env.find(n.name);
          if (it == env.end()) {
            throw PredicateError(PredicateErrorKind::kUnboundVar,
                                 fmt::format("unbound variable '{}'", n.name));
          }
          return it->second;
        } else if constexpr (std::is_same_v<T, Term::Const>) {
          return Value(n.value);
        } else if constexpr (std::is_same_v<T, Term::Param>) {
          throw PredicateError(
              PredicateErrorKind::kUnboundParam,
              fmt::format("parameter ${} has no value", n.name));
        } else if constexpr (std::is_same_v<T, Term::Abs>) {
          return Value(std::make_shared<const Closure>(
              Closure{n.param, n.param_type, n.body, env}));
        } else if constexpr (std::is_same_v<T, Term::App>) {
          Value fn = evaluate(n.fn, env);
          Value arg = evaluate(n.arg, env);
          const Closure *c = fn.as_closure();
          if (c == nullptr) type_error("application of a non-function value");
          Env inner = c->env;
          inner.insert_or_assign(c->param, std::move(arg));
          return evaluate(c->body, inner);
        } else if constexpr (std::is_same_v<T, Term::RecordLit>) {
          auto rec = std::make_shared<RecordValue>();
          for (const auto &[l, t] : n.fields) {
            rec->fields.emplace_back(l, evaluate(t, env));
          }
          return Value(std::shared_ptr<const RecordValue>(std::move(rec)));
        } else if constexpr (std::is_same_v<T, Term::Project>) {
          Value subject = evaluate(n.subject, env);
          const RecordValue *rec = subject.as_record();
          if (rec == nullptr) type_error("projection from a non-record value");
          for (const auto &[l, v] : rec->fields) {
            if (l == n.label) return v;
          }
          throw PredicateError(PredicateErrorKind::kMissingField,
                               fmt::format("no field '{}'", n.label));
        } else if constexpr (std::is_same_v<T, Term::If>) {
          Value cond = evaluate(n.cond, env);
          const Constant *c = cond.as_constant();
          const bool *b = c ? std::get_if<bool>(c) : nullptr;
          if (b == nullptr) type_error("non-boolean condition");
          return evaluate(*b ? n.then_branch : n.else_branch, env);
        } else {
          std::vector<Constant> args;
          args.reserve(n.args.size());
          for (const auto &t : n.args) {
            Value v = evaluate(t, env);
            const Constant *c = v.as_constant();
            if (c == nullptr) type_error("operator applied to a non-constant");
            args.push_back(*c);
          }
          return Value(apply_op(n.code, args));
        }
      },
      term->node());
}

namespace {

TypePtr type_of_value(const Value &value) {
  if (const auto *c = value.as_constant()) return Type::base(kind_of(*c));
  if (const auto *rec = value.as_record()) {
    std::vector<std::pair<std::string, TypePtr>> fields;
    for (const auto &[l, v] : rec->fields) {
      TypePtr t = type_of_value(v);
      if (!t) return nullptr;
      fields.emplace_back(l, t);
    }
    return Type::record(std::move(fields));
  }
  const Closure *cl = value.as_closure();
  TypeEnv env;
  for (const auto &[name, v] : cl->env) {
    TypePtr t = type_of_value(v);
    if (!t) return nullptr;
    env[name] = t;
  }
  env[cl->param] = cl->param_type;
  try {
    return Type::function(cl->param_type, typecheck_term(env, cl->body));
  } catch (const PredicateError &) {
    return nullptr;
  }
}

}  // namespace

bool value_has_type(const Value &value, const Type &type) {
  TypePtr actual = type_of_value(value);
  return actual && types_equal(*actual, type);
}

// ---------------------------------------------------------------------------
// Normalisation

namespace {

struct Normalized {
  TermPtr term;
  TypePtr type;
};

class Normalizer {
 public:
  Normalized norm(const TermPtr &term, const TypeEnv &env) {
    return std::visit(
        [&](const auto &n) -> Normalized {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Term::Var>) {
            auto it = env.find(n.name);
            if (it == env.end()) {
              throw PredicateError(
                  PredicateErrorKind::kUnboundVar,
                  fmt::format("unbound variable '{}'", n.name));
            }
            return {term, it->second};
          } else if constexpr (std::is_same_v<T, Term::Const>) {
            return {term, Type::base(kind_of(n.value))};
          } else if constexpr (std::is_same_v<T, Term::Param>) {
            return {term, Type::base(n.kind)};
          } else if constexpr (std::is_same_v<T, Term::Abs>) {
            TypeEnv inner = env;
            inner[n.param] = n.param_type;
            Normalized body = norm(n.body, inner);
            return {terms::lambda(n.param, n.param_type, body.term),
                    Type::function(n.param_type, body.type)};
          } else if constexpr (std::is_same_v<T, Term::App>) {
            Normalized fn = norm(n.fn, env);
            Normalized arg = norm(n.arg, env);
            return apply(fn, arg, env);
          } else if constexpr (std::is_same_v<T, Term::RecordLit>) {
            std::vector<std::pair<std::string, TermPtr>> fields;
            std::vector<std::pair<std::string, TypePtr>> types;
            for (const auto &[l, t] : n.fields) {
              Normalized f = norm(t, env);
              fields.emplace_back(l, f.term);
              types.emplace_back(l, f.type);
            }
            return {terms::record(std::move(fields)),
                    Type::record(std::move(types))};
          } else if constexpr (std::is_same_v<T, Term::Project>) {
            Normalized subject = norm(n.subject, env);
            TypePtr field_type = subject.type->field(n.label);
            if (!field_type) {
              throw PredicateError(PredicateErrorKind::kMissingField,
                                   fmt::format("no field '{}'", n.label));
            }
            if (const auto *rec = subject.term->template as<Term::RecordLit>()) {
              for (const auto &[l, t] : rec->fields) {
                if (l == n.label) return {t, field_type};
              }
            }
            return {terms::project(subject.term, n.label), field_type};
          } else if constexpr (std::is_same_v<T, Term::If>) {
            Normalized cond = norm(n.cond, env);
            if (const auto *c = cond.term->template as<Term::Const>()) {
              if (const bool *b = std::get_if<bool>(&c->value)) {
                return norm(*b ? n.then_branch : n.else_branch, env);
              }
            }
            Normalized a = norm(n.then_branch, env);
            Normalized b = norm(n.else_branch, env);
            if (const auto *rec = a.type->template as<Type::Record>()) {
              // Push the conditional into each field of the record.
              std::vector<std::pair<std::string, TermPtr>> fields;
              for (const auto &[l, t] : rec->fields) {
                Normalized f = norm(
                    terms::if_then_else(cond.term, terms::project(a.term, l),
                                        terms::project(b.term, l)),
                    env);
                fields.emplace_back(l, f.term);
              }
              return {terms::record(std::move(fields)), a.type};
            }
            return {terms::if_then_else(cond.term, a.term, b.term), a.type};
          } else {
            std::vector<TermPtr> args;
            args.reserve(n.args.size());
            for (const auto &t : n.args) args.push_back(norm(t, env).term);
            return {terms::op(n.code, std::move(args)),
                    typecheck_term(env, term)};
          }
        },
        term->node());
  }

 private:
  Normalized apply(const Normalized &fn, const Normalized &arg,
                   const TypeEnv &env) {
    if (const auto *abs = fn.term->as<Term::Abs>()) {
      return norm(substitute(abs->body, abs->param, arg.term), env);
    }
    if (const auto *cond = fn.term->as<Term::If>()) {
      return norm(terms::if_then_else(cond->cond,
                                      terms::apply(cond->then_branch, arg.term),
                                      terms::apply(cond->else_branch, arg.term)),
                  env);
    }
    const auto *f = fn.type->as<Type::Function>();
    if (f == nullptr) type_error("application of a non-function");
    return {terms::apply(fn.term, arg.term), f->result};
  }
};

}  // namespace

TermPtr normalize(const TermPtr &term, const TypeEnv &env) {
  Normalizer normalizer;
  return normalizer.norm(term, env).term;
}

TermPtr fold_constants(const TermPtr &term) {
  return std::visit(
      [&](const auto &n) -> TermPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Term::Var> ||
                      std::is_same_v<T, Term::Const> ||
                      std::is_same_v<T, Term::Param>) {
          return term;
        } else if constexpr (std::is_same_v<T, Term::Abs>) {
          return terms::lambda(n.param, n.param_type, fold_constants(n.body));
        } else if constexpr (std::is_same_v<T, Term::App>) {
          return terms::apply(fold_constants(n.fn), fold_constants(n.arg));
        } else if constexpr (std::is_same_v<T, Term::RecordLit>) {
          std::vector<std::pair<std::string, TermPtr>> fields;
          for (const auto &[l, t] : n.fields) {
            fields.emplace_back(l, fold_constants(t));
          }
          return terms::record(std::move(fields));
        } else if constexpr (std::is_same_v<T, Term::Project>) {
          return terms::project(fold_constants(n.subject), n.label);
        } else if constexpr (std::is_same_v<T, Term::If>) {
          TermPtr cond = fold_constants(n.cond);
          if (const auto *c = cond->template as<Term::Const>()) {
            if (const bool *b = std::get_if<bool>(&c->value)) {
              return fold_constants(*b ? n.then_branch : n.else_branch);
            }
          }
          return terms::if_then_else(cond, fold_constants(n.then_branch),
                                     fold_constants(n.else_branch));
        } else {
          std::vector<TermPtr> args;
          std::vector<Constant> values;
          for (const auto &t : n.args) {
            args.push_back(fold_constants(t));
            if (const auto *c = args.back()->template as<Term::Const>()) {
              values.push_back(c->value);
            }
          }
          if (values.size() == args.size()) {
            return terms::constant(apply_op(n.code, values));
          }
          auto const_bool = [](const TermPtr &t) -> std::optional<bool> {
            const auto *c = t->template as<Term::Const>();
            if (c == nullptr) return std::nullopt;
            if (const bool *b = std::get_if<bool>(&c->value)) return *b;
            return std::nullopt;
          };
          if (n.code == OpCode::kAnd || n.code == OpCode::kOr) {
            // Unit and zero laws; operands are pure so dropping one is safe.
            bool unit = n.code == OpCode::kAnd;
            for (int i = 0; i < 2; ++i) {
              if (auto b = const_bool(args[i])) {
                return *b == unit ? args[1 - i] : args[i];
              }
            }
          }
          return terms::op(n.code, std::move(args));
        }
      },
      term->node());
}

TermPtr simplify(const TermPtr &term, const TypeEnv &env) {
  return fold_constants(normalize(term, env));
}

bool is_pnf(const TermPtr &term) {
  return std::visit(
      [&](const auto &n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Term::Const> ||
                      std::is_same_v<T, Term::Param>) {
          return true;
        } else if constexpr (std::is_same_v<T, Term::Project>) {
          return n.subject->template as<Term::Var>() != nullptr;
        } else if constexpr (std::is_same_v<T, Term::If>) {
          return is_pnf(n.cond) && is_pnf(n.then_branch) &&
                 is_pnf(n.else_branch);
        } else if constexpr (std::is_same_v<T, Term::Op>) {
          return std::all_of(n.args.begin(), n.args.end(),
                             [](const TermPtr &t) { return is_pnf(t); });
        } else {
          return false;
        }
      },
      term->node());
}

bool is_normal_form(const TermPtr &term) {
  return std::visit(
      [&](const auto &n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Term::Var> ||
                      std::is_same_v<T, Term::Const> ||
                      std::is_same_v<T, Term::Param>) {
          return true;
        } else if constexpr (std::is_same_v<T, Term::Abs>) {
          return is_normal_form(n.body);
        } else if constexpr (std::is_same_v<T, Term::RecordLit>) {
          return std::all_of(n.fields.begin(), n.fields.end(),
                             [](const auto &f) {
                               return is_normal_form(f.second);
                             });
        } else if constexpr (std::is_same_v<T, Term::Project>) {
          return n.subject->template as<Term::Var>() != nullptr;
        } else if constexpr (std::is_same_v<T, Term::If>) {
          return is_normal_form(n.cond) && is_normal_form(n.then_branch) &&
                 is_normal_form(n.else_branch);
        } else if constexpr (std::is_same_v<T, Term::Op>) {
          return std::all_of(n.args.begin(), n.args.end(),
                             [](const TermPtr &t) { return is_normal_form(t); });
        } else {
          return false;
        }
      },
      term->node());
}

// ---------------------------------------------------------------------------
// Predicates

Predicate Predicate::make(std::string binder, const TermPtr &body,
                          RowType row) {
  TypeEnv env{{binder, Type::of_row(row)}};
  TypePtr type = typecheck_term(env, body);
  if (!types_equal(*type, *Type::base(BaseKind::kBool))) {
    type_error(fmt::format("predicate has type {}, expected bool",
                           to_string(*type)));
  }
  TermPtr simplified = simplify(body, env);
  return Predicate(std::move(binder), std::move(simplified), std::move(row));
}

Predicate Predicate::always_true(RowType row) {
  return Predicate(std::string(kDefaultBinder), terms::constant(true),
                   std::move(row));
}

bool Predicate::is_true() const {
  const auto *c = body_->as<Term::Const>();
  return c != nullptr && c->value == Constant(true);
}

namespace {

// Direct evaluation of a PNF body against a row; avoids building Values.
Constant eval_pnf(const Term &term, const std::string &binder, const Row &row) {
  if (const auto *c = term.as<Term::Const>()) return c->value;
  if (const auto *p = term.as<Term::Project>()) {
    return row.at(p->label);
  }
  if (const auto *o = term.as<Term::Op>()) {
    if (o->code == OpCode::kAnd || o->code == OpCode::kOr) {
      bool lhs = std::get<bool>(eval_pnf(*o->args[0], binder, row));
      if (lhs == (o->code == OpCode::kOr)) return lhs;
      return eval_pnf(*o->args[1], binder, row);
    }
    if (o->args.size() == 1) {
      Constant a = eval_pnf(*o->args[0], binder, row);
      return apply_op(o->code, std::span<const Constant>(&a, 1));
    }
    Constant args[2] = {eval_pnf(*o->args[0], binder, row),
                        eval_pnf(*o->args[1], binder, row)};
    return apply_op(o->code, args);
  }
  if (const auto *i = term.as<Term::If>()) {
    bool c = std::get<bool>(eval_pnf(*i->cond, binder, row));
    return eval_pnf(c ? *i->then_branch : *i->else_branch, binder, row);
  }
  if (const auto *p = term.as<Term::Param>()) {
    throw PredicateError(PredicateErrorKind::kUnboundParam,
                         fmt::format("parameter ${} has no value", p->name));
  }
  throw PredicateError(PredicateErrorKind::kUnsupportedTerm,
                       "predicate body is not in predicate normal form");
}

void collect_fields(const TermPtr &term, const std::string &binder,
                    AttrSet &out) {
  rewrite(term, [&](const TermPtr &t) -> TermPtr {
    if (const auto *p = t->as<Term::Project>()) {
      if (const auto *v = p->subject->as<Term::Var>();
          v != nullptr && v->name == binder) {
        out.insert(p->label);
      }
    }
    return nullptr;
  });
}

void flatten_and(const TermPtr &term, std::vector<TermPtr> &out) {
  if (const auto *o = term->as<Term::Op>(); o != nullptr &&
                                            o->code == OpCode::kAnd) {
    flatten_and(o->args[0], out);
    flatten_and(o->args[1], out);
    return;
  }
  out.push_back(term);
}

}  // namespace

bool satisfies(const Predicate &pred, const Row &row) {
  if (!row_inhabits(row, pred.row())) {
    throw std::invalid_argument(
        fmt::format("record {} does not inhabit {}", to_string(row),
                    to_string(pred.row())));
  }
  Constant result = is_pnf(pred.body())
                        ? eval_pnf(*pred.body(), pred.binder(), row)
                        : *evaluate(pred.body(), {{pred.binder(),
                                                   Value::of_row(row)}})
                               .as_constant();
  return std::get<bool>(result);
}

AttrSet referenced_fields(const Predicate &pred) {
  AttrSet out;
  collect_fields(pred.body(), pred.binder(), out);
  return out;
}

bool ignores(const Predicate &pred, const AttrSet &labels) {
  for (const auto &l : referenced_fields(pred)) {
    if (labels.contains(l)) return false;
  }
  return true;
}

Predicate substitute_projection(const Predicate &pred, const std::string &label,
                                const Constant &value) {
  auto it = pred.row().find(label);
  if (it == pred.row().end()) {
    throw PredicateError(PredicateErrorKind::kMissingField,
                         fmt::format("no field '{}' in {}", label,
                                     to_string(pred.row())));
  }
  if (it->second != kind_of(value)) {
    type_error(fmt::format("cannot substitute {} for field '{}' of type {}",
                           to_string(value), label, to_string(it->second)));
  }
  const std::string &binder = pred.binder();
  TermPtr body = rewrite(pred.body(), [&](const TermPtr &t) -> TermPtr {
    const auto *p = t->as<Term::Project>();
    if (p == nullptr || p->label != label) return nullptr;
    const auto *v = p->subject->as<Term::Var>();
    if (v == nullptr || v->name != binder) return nullptr;
    return terms::constant(value);
  });
  RowType row = pred.row();
  row.erase(label);
  return Predicate::make(binder, body, std::move(row));
}

Predicate conjoin(const Predicate &p, const Predicate &q) {
  std::optional<RowType> row = merge_row_types(p.row(), q.row());
  if (!row) {
    type_error(fmt::format("cannot conjoin predicates over {} and {}",
                           to_string(p.row()), to_string(q.row())));
  }
  TermPtr q_body = q.body();
  if (q.binder() != p.binder()) {
    q_body = substitute(q_body, q.binder(), terms::var(p.binder()));
  }
  return Predicate::make(p.binder(),
                         terms::binary(OpCode::kAnd, p.body(), q_body),
                         std::move(*row));
}

std::vector<TermPtr> conjuncts(const Predicate &pred) {
  std::vector<TermPtr> out;
  flatten_and(pred.body(), out);
  return out;
}

bool predicates_equal(const Predicate &a, const Predicate &b) {
  if (a.row() != b.row()) return false;
  TermPtr b_body = b.body();
  if (a.binder() != b.binder()) {
    b_body = substitute(b_body, b.binder(), terms::var(a.binder()));
  }
  return terms_equal(a.body(), b_body);
}

Predicate bind_params(const Predicate &pred,
                      const std::map<std::string, Constant> &values) {
  return Predicate::make(pred.binder(), bind_params(pred.body(), values),
                         pred.row());
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

std::string sql_identifier(std::string_view name) {
  std::string out = "\"";
  for (char ch : name) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

std::string sql_constant(const Constant &c) {
  if (const bool *b = std::get_if<bool>(&c)) return *b ? "TRUE" : "FALSE";
  if (const Int *i = std::get_if<Int>(&c)) {
    return *i < 0 ? "(" + i->str() + ")" : i->str();
  }
  std::string out = "'";
  for (char ch : std::get<std::string>(c)) {
    if (ch == '\'') out += '\'';
    out += ch;
  }
  return out + "'";
}

std::string_view sql_operator(OpCode code) {
  switch (code) {
    case OpCode::kEq:
      return "=";
    case OpCode::kNe:
      return "<>";
    case OpCode::kAnd:
      return "AND";
    case OpCode::kOr:
      return "OR";
    case OpCode::kNot:
      return "NOT";
    default:
      return op_symbol(code);
  }
}

std::string sql_term(const TermPtr &term);

std::string sql_operand(const TermPtr &term) {
  std::string inner = sql_term(term);
  return term->as<Term::Op>() ? "(" + inner + ")" : inner;
}

std::string sql_term(const TermPtr &term) {
  if (const auto *c = term->as<Term::Const>()) return sql_constant(c->value);
  if (const auto *p = term->as<Term::Param>()) return ":" + p->name;
  if (const auto *p = term->as<Term::Project>()) return sql_identifier(p->label);
  if (const auto *i = term->as<Term::If>()) {
    return fmt::format("CASE WHEN {} THEN {} ELSE {} END", sql_term(i->cond),
                       sql_term(i->then_branch), sql_term(i->else_branch));
  }
  const auto &o = *term->as<Term::Op>();
  if (o.args.size() == 1) {
    return fmt::format("{} {}", sql_operator(o.code), sql_operand(o.args[0]));
  }
  return fmt::format("{} {} {}", sql_operand(o.args[0]), sql_operator(o.code),
                     sql_operand(o.args[1]));
}

// Precedence levels of the surface grammar.
constexpr int kPrecOr = 1;
constexpr int kPrecAnd = 2;
constexpr int kPrecCmp = 3;
constexpr int kPrecAdd = 4;
constexpr int kPrecMul = 5;
constexpr int kPrecUnary = 6;

int precedence(OpCode code) {
  switch (code) {
    case OpCode::kOr:
      return kPrecOr;
    case OpCode::kAnd:
      return kPrecAnd;
    case OpCode::kAdd:
    case OpCode::kSub:
      return kPrecAdd;
    case OpCode::kMul:
      return kPrecMul;
    case OpCode::kNot:
      return kPrecUnary;
    default:
      return kPrecCmp;
  }
}

std::string surface(const TermPtr &term, const std::string &binder,
                    int min_prec) {
  auto wrap = [&](std::string s, int prec) {
    return prec < min_prec ? "(" + s + ")" : s;
  };
  if (const auto *c = term->as<Term::Const>()) {
    if (const Int *i = std::get_if<Int>(&c->value); i && *i < 0) {
      return "(0 - " + Int(-*i).str() + ")";
    }
    return to_string(c->value);
  }
  if (const auto *p = term->as<Term::Param>()) return "$" + p->name;
  if (const auto *p = term->as<Term::Project>()) {
    if (const auto *v = p->subject->as<Term::Var>(); v && v->name == binder) {
      return p->label;
    }
  }
  if (const auto *i = term->as<Term::If>()) {
    return wrap(fmt::format("if {} then {} else {}", surface(i->cond, binder, 0),
                            surface(i->then_branch, binder, 0),
                            surface(i->else_branch, binder, 0)),
                0);
  }
  if (const auto *o = term->as<Term::Op>()) {
    int prec = precedence(o->code);
    if (o->args.size() == 1) {
      return wrap("!" + surface(o->args[0], binder, kPrecUnary), prec);
    }
    // Comparisons do not chain, so both sides need a tighter level.
    int lhs_prec = prec == kPrecCmp ? prec + 1 : prec;
    return wrap(fmt::format("{} {} {}", surface(o->args[0], binder, lhs_prec),
                            op_symbol(o->code),
                            surface(o->args[1], binder, prec + 1)),
                prec);
  }
  return to_string(term);
}

}  // namespace

std::string render_sql(const Predicate &pred) {
  if (!is_pnf(pred.body())) {
    throw PredicateError(
        PredicateErrorKind::kUnsupportedTerm,
        fmt::format("cannot render non-PNF term {} as SQL",
                    to_string(pred.body())));
  }
  return sql_term(pred.body());
}

std::string to_surface(const Predicate &pred) {
  return surface(pred.body(), pred.binder(), 0);
}

}  // namespace lensdb
