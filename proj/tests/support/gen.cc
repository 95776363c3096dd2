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


#include "support/gen.h"

#include <iterator>

namespace lensdb::testing {

namespace {

TypePtr base(BaseKind k) { return Type::base(k); }

BaseKind random_kind(Gen &gen) {
  return static_cast<BaseKind>(gen.range(0, 2));
}

Constant random_constant(Gen &gen, BaseKind kind) {
  switch (kind) {
    case BaseKind::kBool:
      return gen.chance(0.5);
    case BaseKind::kInt:
      return Int(gen.range(-1, 3));
    case BaseKind::kString:
      return std::string(1, static_cast<char>('a' + gen.range(0, 2)));
  }
  return false;
}

const std::vector<OpCode> kComparisons = {OpCode::kEq, OpCode::kNe, OpCode::kLt,
                                          OpCode::kGt, OpCode::kLe, OpCode::kGe};

}  // namespace

TypePtr TermGen::small_type(int depth) {
  int roll = gen_.range(0, 9);
  if (depth <= 0 || roll < 6) return base(random_kind(gen_));
  if (roll < 8) {
    std::vector<std::pair<std::string, TypePtr>> fields{{"p", base(random_kind(gen_))}};
    if (gen_.chance(0.5)) fields.emplace_back("q", base(random_kind(gen_)));
    return Type::record(std::move(fields));
  }
  return Type::function(base(random_kind(gen_)), base(random_kind(gen_)));
}

TermPtr TermGen::leaf(const TypeEnv &env, const TypePtr &type) {
  std::vector<TermPtr> options;
  for (const auto &[name, t] : env) {
    if (types_equal(*t, *type)) options.push_back(terms::var(name));
    if (const auto *rec = t->as<Type::Record>()) {
      for (const auto &[label, ft] : rec->fields) {
        if (types_equal(*ft, *type)) {
          options.push_back(terms::project(terms::var(name), label));
        }
      }
    }
  }
  if (const auto *k = type->as<BaseKind>()) {
    if (options.empty() || gen_.chance(0.3)) {
      return terms::constant(random_constant(gen_, *k));
    }
    return gen_.pick(options);
  }
  if (!options.empty() && gen_.chance(0.5)) return gen_.pick(options);
  if (const auto *rec = type->as<Type::Record>()) {
    std::vector<std::pair<std::string, TermPtr>> fields;
    for (const auto &[label, ft] : rec->fields) {
      fields.emplace_back(label, leaf(env, ft));
    }
    return terms::record(std::move(fields));
  }
  const auto &fn = *type->as<Type::Function>();
  std::string y = fresh();
  TypeEnv inner = env;
  inner[y] = fn.arg;
  return terms::lambda(y, fn.arg, leaf(inner, fn.result));
}

TermPtr TermGen::base_op(const TypeEnv &env, BaseKind kind, int depth) {
  if (kind == BaseKind::kInt) {
    static const std::vector<OpCode> arith = {OpCode::kAdd, OpCode::kSub,
                                              OpCode::kMul};
    return terms::binary(gen_.pick(arith), term(env, base(BaseKind::kInt), depth - 1),
                         term(env, base(BaseKind::kInt), depth - 1));
  }
  int roll = gen_.range(0, 9);
  if (roll < 5) {
    BaseKind operand = random_kind(gen_);
    OpCode op = operand == BaseKind::kInt ? gen_.pick(kComparisons)
                                          : (gen_.chance(0.5) ? OpCode::kEq : OpCode::kNe);
    return terms::binary(op, term(env, base(operand), depth - 1),
                         term(env, base(operand), depth - 1));
  }
  if (roll < 9) {
    return terms::binary(roll < 7 ? OpCode::kAnd : OpCode::kOr,
                         term(env, base(BaseKind::kBool), depth - 1),
                         term(env, base(BaseKind::kBool), depth - 1));
  }
  return terms::op(OpCode::kNot, {term(env, base(BaseKind::kBool), depth - 1)});
}

TermPtr TermGen::term(const TypeEnv &env, const TypePtr &type, int depth) {
  if (depth <= 1 || gen_.chance(0.2)) return leaf(env, type);
  const auto *kind = type->as<BaseKind>();
  int roll = gen_.range(0, 9);
  if (roll == 0) {
    return terms::if_then_else(term(env, base(BaseKind::kBool), depth - 1),
                               term(env, type, depth - 1),
                               term(env, type, depth - 1));
  }
  if (roll == 1) {
    TypePtr arg = small_type(1);
    std::string y = fresh();
    TypeEnv inner = env;
    inner[y] = arg;
    return terms::apply(terms::lambda(y, arg, term(inner, type, depth - 1)),
                        term(env, arg, depth - 1));
  }
  if (roll == 2) {
    TypePtr arg = base(random_kind(gen_));
    return terms::apply(term(env, Type::function(arg, type), depth - 1),
                        term(env, arg, depth - 1));
  }
  if (roll == 3) {
    std::vector<std::pair<std::string, TypePtr>> fields{{"p", type}};
    if (gen_.chance(0.5)) fields.emplace_back("q", small_type(0));
    return terms::project(term(env, Type::record(std::move(fields)), depth - 1), "p");
  }
  if (kind != nullptr) {
    if (*kind == BaseKind::kString) return leaf(env, type);
    return base_op(env, *kind, depth);
  }
  if (const auto *rec = type->as<Type::Record>()) {
    std::vector<std::pair<std::string, TermPtr>> fields;
    for (const auto &[label, ft] : rec->fields) {
      fields.emplace_back(label, term(env, ft, depth - 1));
    }
    return terms::record(std::move(fields));
  }
  const auto &fn = *type->as<Type::Function>();
  std::string y = fresh();
  TypeEnv inner = env;
  inner[y] = fn.arg;
  return terms::lambda(y, fn.arg, term(inner, fn.result, depth - 1));
}

TermPtr flat_predicate(Gen &gen, const RowType &row, int depth,
                       const std::string &binder) {
  if (depth <= 0 || gen.chance(0.3)) {
    if (row.empty() || gen.chance(0.04)) {
      return terms::constant(gen.chance(0.5));
    }
    std::vector<std::pair<std::string, BaseKind>> fields(row.begin(), row.end());
    const auto &[label, kind] = gen.pick(fields);
    TermPtr lhs = terms::field(binder, label);
    if (kind == BaseKind::kBool && gen.chance(0.5)) {
      return gen.chance(0.5) ? lhs : terms::op(OpCode::kNot, {lhs});
    }
    std::vector<std::string> same;
    for (const auto &[l, k] : fields) {
      if (k == kind && l != label) same.push_back(l);
    }
    TermPtr rhs = !same.empty() && gen.chance(0.25)
                      ? terms::field(binder, gen.pick(same))
                      : terms::constant(random_constant(gen, kind));
    OpCode op = kind == BaseKind::kInt ? gen.pick(kComparisons)
                                       : (gen.chance(0.7) ? OpCode::kEq : OpCode::kNe);
    return terms::binary(op, lhs, rhs);
  }
  int roll = gen.range(0, 19);
  if (roll < 10) {
    return terms::binary(OpCode::kAnd, flat_predicate(gen, row, depth - 1, binder),
                         flat_predicate(gen, row, depth - 1, binder));
  }
  if (roll < 17) {
    return terms::binary(OpCode::kOr, flat_predicate(gen, row, depth - 1, binder),
                         flat_predicate(gen, row, depth - 1, binder));
  }
  return terms::op(OpCode::kNot, {flat_predicate(gen, row, depth - 1, binder)});
}

FunDeps random_fundeps(Gen &gen, const AttrSet &attrs, int max_deps) {
  std::vector<std::string> pool(attrs.begin(), attrs.end());
  std::vector<FunDep> deps;
  int n = gen.range(0, max_deps);
  for (int i = 0; i < n && pool.size() >= 2; ++i) {
    FunDep fd;
    fd.lhs.insert(gen.pick(pool));
    if (gen.chance(0.2)) fd.lhs.insert(gen.pick(pool));
    for (const auto &a : pool) {
      if (!fd.lhs.contains(a) && gen.chance(0.5)) fd.rhs.insert(a);
    }
    if (fd.rhs.empty()) {
      for (const auto &a : pool) {
        if (!fd.lhs.contains(a)) {
          fd.rhs.insert(a);
          break;
        }
      }
    }
    if (!fd.rhs.empty()) deps.push_back(std::move(fd));
  }
  return FunDeps(deps, attrs);
}

SchemaEnv random_schema(Gen &gen) {
  static const std::vector<std::pair<std::string, BaseKind>> pool = {
      {"a", BaseKind::kInt},
      {"b", BaseKind::kInt},
      {"c", BaseKind::kInt},
      {"s", BaseKind::kString},
      {"t", BaseKind::kString}};
  SchemaEnv env;
  int tables = gen.range(2, 3);
  for (int i = 0; i < tables; ++i) {
    TableSchema table;
    table.name = "t" + std::to_string(i + 1);
    while (table.row.size() < 2) {
      for (const auto &[label, kind] : pool) {
        if (gen.chance(0.5)) table.row.emplace(label, kind);
      }
    }
    env.emplace(table.name, std::move(table));
  }
  return env;
}

namespace {

struct Partial {
  LensPtr expr;
  RowType row;
  std::set<std::string> tables;
};

Partial random_partial(Gen &gen, const SchemaEnv &env,
                       const std::set<std::string> &avail, int depth) {
  int roll = gen.range(0, 19);
  if (depth <= 1 || roll < 5) {
    std::vector<std::string> names;
    for (const auto &[name, t] : env) {
      if (avail.contains(name) || avail.empty()) names.push_back(name);
    }
    if (names.empty() || gen.chance(0.03)) {
      for (const auto &[name, t] : env) names.push_back(name);
    }
    const TableSchema &table = env.at(gen.pick(names));
    FunDeps fds = random_fundeps(gen, labels_of(table.row), 2);
    return {lenses::prim(table.name, fds), table.row, {table.name}};
  }
  if (roll < 11) {
    Partial child = random_partial(gen, env, avail, depth - 1);
    Predicate pred = Predicate::make(flat_predicate(gen, child.row, 2), child.row);
    return {lenses::select(child.expr, pred), child.row, child.tables};
  }
  if (roll < 15) {
    Partial left = random_partial(gen, env, avail, depth - 1);
    std::set<std::string> rest;
    for (const auto &name : avail) {
      if (!left.tables.contains(name)) rest.insert(name);
    }
    if (rest.empty() && !gen.chance(0.1)) return left;
    Partial right = random_partial(gen, env, rest, depth - 1);
    JoinVariant variant =
        gen.chance(0.03) ? JoinVariant::kDeleteRight : JoinVariant::kDeleteLeft;
    RowType row = merge_row_types(left.row, right.row).value_or(left.row);
    std::set<std::string> tables = left.tables;
    tables.insert(right.tables.begin(), right.tables.end());
    return {lenses::join(left.expr, right.expr, variant), std::move(row),
            std::move(tables)};
  }
  if (roll < 19) {
    Partial child = random_partial(gen, env, avail, depth - 1);
    if (child.row.size() < 2) return child;
    std::vector<std::string> labels;
    for (const auto &[l, k] : child.row) labels.push_back(l);
    std::string column = gen.pick(labels);
    AttrSet by;
    try {
      LensSort sort = typecheck_lens(child.expr, env);
      for (const auto &fd : sort.fds.deps()) {
        if (fd.rhs.contains(column) && !fd.lhs.contains(column) &&
            gen.chance(0.7)) {
          by = fd.lhs;
        }
      }
    } catch (const std::exception &) {
    }
    if (by.empty()) {
      for (const auto &l : labels) {
        if (l != column && gen.chance(0.4)) by.insert(l);
      }
    }
    if (by.empty() || gen.chance(0.1)) {
      for (const auto &l : labels) {
        if (l != column) {
          by = {l};
          break;
        }
      }
    }
    BaseKind kind = child.row.at(column);
    if (gen.chance(0.05)) kind = static_cast<BaseKind>((static_cast<int>(kind) + 1) % 3);
    RowType row = child.row;
    row.erase(column);
    return {lenses::drop(column, by, random_constant(gen, kind), child.expr),
            std::move(row), child.tables};
  }
  Partial child = random_partial(gen, env, avail, depth - 1);
  return {lenses::check(child.expr), child.row, child.tables};
}

}  // namespace

LensPtr random_lens(Gen &gen, const SchemaEnv &env, int depth) {
  std::set<std::string> avail;
  for (const auto &[name, t] : env) avail.insert(name);
  return random_partial(gen, env, avail, depth).expr;
}

}  // namespace lensdb::testing
