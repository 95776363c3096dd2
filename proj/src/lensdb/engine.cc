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


#include "lensdb/engine.h"

#include <fmt/core.h>

#include <algorithm>
#include <iterator>
#include <utility>

namespace lensdb {

std::string_view to_string(EngineErrorKind kind) {
  switch (kind) {
    case EngineErrorKind::kMissingTable:
      return "MissingTable";
    case EngineErrorKind::kUnknownColumn:
      return "UnknownColumn";
    case EngineErrorKind::kTypeMismatch:
      return "TypeMismatch";
    case EngineErrorKind::kAmbiguousAuthority:
      return "AmbiguousAuthority";
    case EngineErrorKind::kConstraintViolation:
      return "ConstraintViolation";
  }
  return "?";
}

EngineError::EngineError(EngineErrorKind kind, const std::string &msg,
                         std::vector<std::string> details)
    : std::runtime_error(fmt::format("{}: {}", to_string(kind), msg)),
      kind_(kind),
      details_(std::move(details)) {}

Relation make_relation(RowType type, const std::vector<Row> &rows) {
  Relation rel{std::move(type), {}};
  for (const auto &row : rows) {
    if (!row_inhabits(row, rel.type)) {
      throw EngineError(EngineErrorKind::kTypeMismatch,
                        fmt::format("row {} does not have type {}",
                                    to_string(row), to_string(rel.type)));
    }
    rel.rows.insert(row);
  }
  return rel;
}

Relation natural_join(const Relation &a, const Relation &b) {
  auto type = merge_row_types(a.type, b.type);
  if (!type) {
    throw EngineError(EngineErrorKind::kTypeMismatch,
                      fmt::format("cannot join {} with {}", to_string(a.type),
                                  to_string(b.type)));
  }
  AttrSet shared;
  for (const auto &[label, kind] : a.type) {
    if (b.type.contains(label)) shared.insert(label);
  }
  std::map<Row, std::vector<const Row *>> index;
  for (const auto &row : b.rows) index[restrict_row(row, shared)].push_back(&row);

  Relation out{std::move(*type), {}};
  for (const auto &row : a.rows) {
    auto it = index.find(restrict_row(row, shared));
    if (it == index.end()) continue;
    for (const Row *other : it->second) out.rows.insert(*concat_rows(row, *other));
  }
  return out;
}

Relation restrict(const Relation &rel, const AttrSet &labels) {
  for (const auto &label : labels) {
    if (!rel.type.contains(label)) {
      throw EngineError(EngineErrorKind::kUnknownColumn,
                        fmt::format("no column '{}' in {}", label,
                                    to_string(rel.type)));
    }
  }
  Relation out{restrict_row_type(rel.type, labels), {}};
  for (const auto &row : rel.rows) out.rows.insert(restrict_row(row, labels));
  return out;
}

std::string to_string(const Violation &v) {
  if (v.kind == Violation::Kind::kPredicate) {
    return fmt::format("row {} violates the predicate", to_string(v.row));
  }
  return fmt::format("rows {} and {} disagree on {}", to_string(v.row),
                     to_string(*v.other), to_string(*v.fd));
}

std::vector<Violation> check_constraints(const Relation &rel,
                                         const FunDeps &fds) {
  std::vector<Violation> out;
  for (const auto &fd : fds.deps()) {
    std::map<Row, const Row *> seen;
    for (const auto &row : rel.rows) {
      auto [it, inserted] = seen.emplace(restrict_row(row, fd.lhs), &row);
      if (!inserted &&
          restrict_row(*it->second, fd.rhs) != restrict_row(row, fd.rhs)) {
        out.push_back({Violation::Kind::kFunDep, *it->second, row, fd});
      }
    }
  }
  return out;
}

std::vector<Violation> check_constraints(const Relation &rel,
                                         const Predicate &pred,
                                         const FunDeps &fds) {
  std::vector<Violation> out;
  if (!pred.is_true()) {
    for (const auto &row : rel.rows) {
      if (!satisfies(pred, row)) {
        out.push_back({Violation::Kind::kPredicate, row, std::nullopt,
                       std::nullopt});
      }
    }
  }
  auto fd = check_constraints(rel, fds);
  out.insert(out.end(), fd.begin(), fd.end());
  return out;
}

namespace {

bool subset_of(const AttrSet &a, const RowType &row) {
  return std::all_of(a.begin(), a.end(),
                     [&](const std::string &l) { return row.contains(l); });
}

std::vector<std::string> describe(const std::vector<Violation> &violations) {
  std::vector<std::string> out;
  for (const auto &v : violations) out.push_back(to_string(v));
  return out;
}

}  // namespace

Relation revise(const Relation &target, const Relation &authority,
                const FunDeps &fds) {
  std::vector<FunDep> order;
  if (auto forest = tree_form(fds)) {
    order = forest->edges;
  } else {
    order.assign(fds.deps().begin(), fds.deps().end());
  }
  std::vector<FunDep> usable;
  for (const auto &fd : order) {
    if (subset_of(fd.lhs, authority.type) && subset_of(fd.lhs, target.type)) {
      FunDep u{fd.lhs, {}};
      for (const auto &a : fd.rhs) {
        if (authority.type.contains(a) && target.type.contains(a)) {
          u.rhs.insert(a);
        }
      }
      if (!u.rhs.empty()) usable.push_back(std::move(u));
    }
  }

  std::vector<Violation> conflicts;
  for (const auto &fd : usable) {
    auto found = check_constraints(authority, FunDeps({fd}, labels_of(authority.type)));
    conflicts.insert(conflicts.end(), found.begin(), found.end());
  }
  if (!conflicts.empty()) {
    throw EngineError(EngineErrorKind::kAmbiguousAuthority,
                      "the authority violates the dependencies",
                      describe(conflicts));
  }

  std::vector<Row> rows(target.rows.begin(), target.rows.end());
  for (const auto &fd : usable) {
    std::map<Row, Row> lookup;
    for (const auto &row : authority.rows) {
      lookup.emplace(restrict_row(row, fd.lhs), restrict_row(row, fd.rhs));
    }
    for (auto &row : rows) {
      auto it = lookup.find(restrict_row(row, fd.lhs));
      if (it == lookup.end()) continue;
      for (const auto &[label, value] : it->second) row[label] = value;
    }
  }
  return Relation{target.type, std::set<Row>(rows.begin(), rows.end())};
}

Relation get(const LensPtr &expr, const Store &store) {
  if (const auto *p = expr->as<LensExpr::Prim>()) {
    auto it = store.find(p->table);
    if (it == store.end()) {
      throw EngineError(EngineErrorKind::kMissingTable,
                        fmt::format("no table named '{}'", p->table));
    }
    return it->second;
  }
  if (const auto *s = expr->as<LensExpr::Select>()) {
    Relation source = get(s->source, store);
    if (s->pred.row() != source.type) {
      throw EngineError(EngineErrorKind::kTypeMismatch,
                        fmt::format("predicate over {} applied to rows {}",
                                    to_string(s->pred.row()),
                                    to_string(source.type)));
    }
    Relation out{source.type, {}};
    for (const auto &row : source.rows) {
      if (satisfies(s->pred, row)) out.rows.insert(row);
    }
    return out;
  }
  if (const auto *j = expr->as<LensExpr::Join>()) {
    return natural_join(get(j->left, store), get(j->right, store));
  }
  if (const auto *d = expr->as<LensExpr::Drop>()) {
    Relation source = get(d->source, store);
    AttrSet labels = labels_of(source.type);
    if (labels.erase(d->column) == 0) {
      throw EngineError(EngineErrorKind::kUnknownColumn,
                        fmt::format("no column '{}' in {}", d->column,
                                    to_string(source.type)));
    }
    return restrict(source, labels);
  }
  return get(expr->as<LensExpr::Check>()->source, store);
}

std::vector<std::string> check_sources(const LensPtr &expr, const Store &store) {
  std::vector<std::string> out;
  auto visit = [&](auto &self, const LensPtr &e) -> void {
    if (const auto *p = e->as<LensExpr::Prim>()) {
      auto it = store.find(p->table);
      if (it == store.end()) return;
      FunDeps fds = p->fds.with_universe(labels_of(it->second.type));
      for (const auto &v : check_constraints(it->second, fds)) {
        out.push_back(fmt::format("{}: {}", p->table, to_string(v)));
      }
    } else if (const auto *s = e->as<LensExpr::Select>()) {
      self(self, s->source);
    } else if (const auto *j = e->as<LensExpr::Join>()) {
      self(self, j->left);
      self(self, j->right);
    } else if (const auto *d = e->as<LensExpr::Drop>()) {
      self(self, d->source);
    } else {
      self(self, e->as<LensExpr::Check>()->source);
    }
  };
  visit(visit, expr);
  return out;
}

namespace {

Relation unite_rows(Relation a, const Relation &b) {
  a.rows.insert(b.rows.begin(), b.rows.end());
  return a;
}

Relation minus_rows(Relation a, const Relation &b) {
  for (const auto &row : b.rows) a.rows.erase(row);
  return a;
}

class Putter {
 public:
  explicit Putter(Store store) : store_(std::move(store)) {}

  Store finish() { return std::move(store_); }

  void put(const TypedLens &node, const Relation &view) {
    validate(node, view);
    const LensExpr &expr = *node.expr;
    if (const auto *p = expr.as<LensExpr::Prim>()) {
      auto it = store_.find(p->table);
      RowType type = it == store_.end() ? node.sort.row : it->second.type;
      store_[p->table] = Relation{std::move(type), view.rows};
      return;
    }
    if (const auto *s = expr.as<LensExpr::Select>()) {
      const TypedLens &child = *node.children.at(0);
      Relation old = get(child.expr, store_);
      Relation unselected{old.type, {}};
      for (const auto &row : old.rows) {
        if (!satisfies(s->pred, row)) unselected.rows.insert(row);
      }
      Relation revised = revise(unselected, view, child.sort.fds);
      // Rows revised into the selection would reappear in the view.
      Relation kept{old.type, {}};
      for (const auto &row : revised.rows) {
        if (!satisfies(s->pred, row)) kept.rows.insert(row);
      }
      put(child, unite_rows(view, kept));
      return;
    }
    if (expr.as<LensExpr::Join>()) {
      const TypedLens &left = *node.children.at(0);
      const TypedLens &right = *node.children.at(1);
      Relation i = get(left.expr, store_);
      Relation j = get(right.expr, store_);
      Relation view_i = restrict(view, labels_of(left.sort.row));
      Relation view_j = restrict(view, labels_of(right.sort.row));
      Relation i0 = unite_rows(view_i, revise(i, view_i, left.sort.fds));
      Relation j0 = unite_rows(view_j, revise(j, view_j, right.sort.fds));
      Relation excess = minus_rows(natural_join(i0, j0), view);
      Relation i1 = minus_rows(i0, restrict(excess, labels_of(left.sort.row)));
      put(left, i1);
      put(right, j0);
      return;
    }
    if (const auto *d = expr.as<LensExpr::Drop>()) {
      const TypedLens &child = *node.children.at(0);
      Relation old = get(child.expr, store_);
      std::map<Row, Constant> lookup;
      for (const auto &row : old.rows) {
        lookup.emplace(restrict_row(row, d->determined_by), row.at(d->column));
      }
      Relation extended{child.sort.row, {}};
      for (const auto &row : view.rows) {
        Row full = row;
        auto it = lookup.find(restrict_row(row, d->determined_by));
        full[d->column] = it == lookup.end() ? d->default_value : it->second;
        extended.rows.insert(std::move(full));
      }
      put(child, extended);
      return;
    }
    put(*node.children.at(0), view);
  }

 private:
  static void validate(const TypedLens &node, const Relation &view) {
    if (view.type != node.sort.row) {
      throw EngineError(EngineErrorKind::kTypeMismatch,
                        fmt::format("view has type {} but the lens expects {}",
                                    to_string(view.type),
                                    to_string(node.sort.row)));
    }
    auto violations = check_constraints(view, node.sort.pred, node.sort.fds);
    if (!violations.empty()) {
      throw EngineError(
          EngineErrorKind::kConstraintViolation,
          fmt::format("the view of {} violates its sort", to_string(node.expr)),
          describe(violations));
    }
  }

  Store store_;
};

}  // namespace

Store put(const TypedLensPtr &lens, const Store &store, const Relation &view) {
  Putter putter(store);
  putter.put(*lens, view);
  return putter.finish();
}

Store put(const LensPtr &expr, const SchemaEnv &env, const Store &store,
          const Relation &view) {
  return put(typecheck_tree(expr, env), store, view);
}

}  // namespace lensdb
