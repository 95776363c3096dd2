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


#include "lensdb/lens.h"

#include <fmt/core.h>

#include <algorithm>
#include <utility>

namespace lensdb {

namespace lenses {
LensPtr prim(std::string table, FunDeps fds) {
  return std::make_shared<LensExpr>(
      LensExpr::Prim{std::move(table), std::move(fds)});
}
LensPtr select(LensPtr source, Predicate pred, bool parameterized) {
  return std::make_shared<LensExpr>(
      LensExpr::Select{std::move(source), std::move(pred), parameterized});
}
LensPtr join(LensPtr left, LensPtr right, JoinVariant variant,
             std::optional<AttrSet> on) {
  return std::make_shared<LensExpr>(LensExpr::Join{
      std::move(left), std::move(right), variant, std::move(on)});
}
LensPtr drop(std::string column, AttrSet determined_by, Constant default_value,
             LensPtr source) {
  return std::make_shared<LensExpr>(
      LensExpr::Drop{std::move(column), std::move(determined_by),
                     std::move(default_value), std::move(source)});
}
LensPtr check(LensPtr source) {
  return std::make_shared<LensExpr>(LensExpr::Check{std::move(source)});
}
}  // namespace lenses

std::string to_string(const LensPtr &lens) {
  if (const auto *p = lens->as<LensExpr::Prim>()) {
    return fmt::format("lens({})", p->table);
  }
  if (const auto *s = lens->as<LensExpr::Select>()) {
    return fmt::format("select({}, {})", to_string(s->source),
                       to_surface(s->pred));
  }
  if (const auto *j = lens->as<LensExpr::Join>()) {
    return fmt::format("join({}, {})", to_string(j->left), to_string(j->right));
  }
  if (const auto *d = lens->as<LensExpr::Drop>()) {
    return fmt::format("drop({}, {})", d->column, to_string(d->source));
  }
  return fmt::format("check({})", to_string(lens->as<LensExpr::Check>()->source));
}

namespace {

std::string attr_list(const RowType &row) {
  std::string out;
  for (const auto &[label, kind] : row) {
    if (!out.empty()) out += ", ";
    out += label;
  }
  return out;
}

}  // namespace

std::string to_string(const LensSort &sort) {
  AttrSet tables(sort.tables.begin(), sort.tables.end());
  return fmt::format("lens(({}); {}; {{{}}}) with {}", attr_list(sort.row),
                     to_surface(sort.pred), to_string(sort.fds),
                     to_string(tables));
}

std::string_view to_string(LensErrorKind kind) {
  switch (kind) {
    case LensErrorKind::kNotTreeForm:
      return "NotTreeForm";
    case LensErrorKind::kIgnoresViolation:
      return "IgnoresViolation";
    case LensErrorKind::kJoinFdViolation:
      return "JoinFdViolation";
    case LensErrorKind::kSchemaOverlap:
      return "SchemaOverlap";
    case LensErrorKind::kLjdFailure:
      return "LjdFailure";
    case LensErrorKind::kDefaultValueFailure:
      return "DefaultValueFailure";
    case LensErrorKind::kUnknownColumn:
      return "UnknownColumn";
    case LensErrorKind::kTypeMismatch:
      return "TypeMismatch";
    case LensErrorKind::kUnknownTable:
      return "UnknownTable";
    case LensErrorKind::kDropFdViolation:
      return "DropFdViolation";
    case LensErrorKind::kUnimplementedVariant:
      return "UnimplementedVariant";
    case LensErrorKind::kUncheckedParameter:
      return "UncheckedParameter";
  }
  return "?";
}

LensTypeError::LensTypeError(LensErrorKind kind, std::string rule,
                             std::string site, std::string detail,
                             AttrSet labels)
    : std::runtime_error(fmt::format("{}: {} (rule {}, at {})", to_string(kind),
                                     detail, rule, site)),
      kind_(kind),
      rule_(std::move(rule)),
      site_(std::move(site)),
      detail_(std::move(detail)),
      labels_(std::move(labels)) {}

std::set<std::string> tables_of(const LensPtr &expr) {
  return std::visit(
      [](const auto &n) -> std::set<std::string> {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, LensExpr::Prim>) {
          return {n.table};
        } else if constexpr (std::is_same_v<T, LensExpr::Join>) {
          std::set<std::string> out = tables_of(n.left);
          std::set<std::string> right = tables_of(n.right);
          out.insert(right.begin(), right.end());
          return out;
        } else {
          return tables_of(n.source);
        }
      },
      expr->node());
}

// ---------------------------------------------------------------------------
// Syntactic LJD and DV

namespace {

AttrSet conjunct_fields(const Predicate &pred, const TermPtr &conjunct) {
  return referenced_fields(Predicate::make(pred.binder(), conjunct, pred.row()));
}

bool subset_of(const AttrSet &a, const AttrSet &b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

AttrSet intersection(const AttrSet &a, const AttrSet &b) {
  AttrSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(out, out.end()));
  return out;
}

}  // namespace

bool ljd_syntactic(const Predicate &pred, const RowType &r1,
                   const RowType &r2) {
  AttrSet left = labels_of(r1);
  AttrSet right = labels_of(r2);
  for (const TermPtr &c : conjuncts(pred)) {
    AttrSet fields = conjunct_fields(pred, c);
    if (!subset_of(fields, left) && !subset_of(fields, right)) return false;
  }
  return true;
}

DvOutcome dv_check(const Predicate &pred, const Row &default_record) {
  AttrSet dropped;
  RowType dropped_row;
  for (const auto &[label, value] : default_record) {
    dropped.insert(label);
    dropped_row.emplace(label, kind_of(value));
  }
  DvOutcome out;
  for (const TermPtr &c : conjuncts(pred)) {
    AttrSet fields = conjunct_fields(pred, c);
    if (intersection(fields, dropped).empty()) continue;  // DV-1
    if (!subset_of(fields, dropped)) return out;
    // DV-2: the conjunct speaks only of dropped columns.
    Predicate local = Predicate::make(pred.binder(), c, dropped_row);
    if (!local.params().empty()) {
      out.deferred.push_back(c);
      continue;
    }
    if (!satisfies(local, default_record)) return out;
  }
  out.accepted = true;
  return out;
}

bool dv_syntactic(const Predicate &pred, const Row &default_record) {
  return dv_check(pred, default_record).accepted;
}

// ---------------------------------------------------------------------------
// Typechecking

namespace {

class Checker {
 public:
  explicit Checker(const SchemaEnv &env) : env_(env) {}

  TypedLensPtr check(const LensPtr &expr, const std::string &prefix) {
    return std::visit(
        [&](const auto &n) -> TypedLensPtr { return check_node(expr, n, prefix); },
        expr->node());
  }

 private:
  [[noreturn]] static void fail(LensErrorKind kind, const std::string &rule,
                                const std::string &site,
                                const std::string &detail,
                                AttrSet labels = {}) {
    throw LensTypeError(kind, rule, site, detail, std::move(labels));
  }

  static TypedLensPtr make(const LensPtr &expr, LensSort sort,
                           std::vector<TypedLensPtr> children) {
    return std::make_shared<const TypedLens>(
        TypedLens{expr, std::move(sort), std::move(children)});
  }

  TypedLensPtr check_node(const LensPtr &expr, const LensExpr::Prim &n,
                          const std::string &prefix) {
    const std::string rule = "T-Lens";
    std::string site = prefix + fmt::format("lens({})", n.table);
    auto it = env_.find(n.table);
    if (it == env_.end()) {
      fail(LensErrorKind::kUnknownTable, rule, site,
           fmt::format("no table named '{}'", n.table));
    }
    const RowType &row = it->second.row;
    AttrSet labels = labels_of(row);
    AttrSet unknown;
    for (const auto &a : nodes_of(n.fds)) {
      if (!labels.contains(a)) unknown.insert(a);
    }
    if (!unknown.empty()) {
      fail(LensErrorKind::kUnknownColumn, rule, site,
           fmt::format("dependencies mention columns {} not in {}",
                       to_string(unknown), to_string(row)),
           unknown);
    }
    LensSort sort{{n.table},
                  row,
                  Predicate::always_true(row),
                  n.fds.with_universe(labels),
                  false,
                  {}};
    return make(expr, std::move(sort), {});
  }

  TypedLensPtr check_node(const LensPtr &expr, const LensExpr::Select &n,
                          const std::string &prefix) {
    const std::string rule = "T-Select";
    std::string site = prefix + "select";
    TypedLensPtr source = check(n.source, site + "/");
    const LensSort &s = source->sort;
    if (n.pred.row() != s.row) {
      fail(LensErrorKind::kTypeMismatch, rule, site,
           fmt::format("predicate is over {} but the lens has rows {}",
                       to_string(n.pred.row()), to_string(s.row)));
    }
    if (!is_tree_form(s.fds)) {
      fail(LensErrorKind::kNotTreeForm, rule, site,
           fmt::format("dependencies {{{}}} are not in tree form",
                       to_string(s.fds)));
    }
    AttrSet constrained = intersection(referenced_fields(s.pred), outputs(s.fds));
    if (!constrained.empty()) {
      fail(LensErrorKind::kIgnoresViolation, rule, site,
           fmt::format("select predicate constrains outputs {}",
                       to_string(constrained)),
           constrained);
    }
    LensSort sort{s.tables,
                  s.row,
                  conjoin(s.pred, n.pred),
                  s.fds,
                  s.dynamic || n.parameterized,
                  s.deferred};
    return make(expr, std::move(sort), {source});
  }

  TypedLensPtr check_node(const LensPtr &expr, const LensExpr::Join &n,
                          const std::string &prefix) {
    const std::string rule = "T-Join-Left";
    std::string site = prefix + "join";
    if (n.variant != JoinVariant::kDeleteLeft) {
      fail(LensErrorKind::kUnimplementedVariant, rule, site,
           "unimplemented variant: only delete_left joins are supported");
    }
    TypedLensPtr left = check(n.left, site + "[left]/");
    TypedLensPtr right = check(n.right, site + "[right]/");
    const LensSort &l = left->sort;
    const LensSort &r = right->sort;

    std::set<std::string> shared_tables;
    std::set_intersection(l.tables.begin(), l.tables.end(), r.tables.begin(),
                          r.tables.end(),
                          std::inserter(shared_tables, shared_tables.end()));
    if (!shared_tables.empty()) {
      AttrSet names(shared_tables.begin(), shared_tables.end());
      fail(LensErrorKind::kSchemaOverlap, rule, site,
           fmt::format("both sides use tables {}", to_string(names)), names);
    }
    AttrSet shared;
    for (const auto &[label, kind] : l.row) {
      auto it = r.row.find(label);
      if (it == r.row.end()) continue;
      if (it->second != kind) {
        fail(LensErrorKind::kTypeMismatch, rule, site,
             fmt::format("join column '{}' is {} on the left but {} on the "
                         "right",
                         label, to_string(kind), to_string(it->second)),
             {label});
      }
      shared.insert(label);
    }
    if (n.on && *n.on != shared) {
      fail(LensErrorKind::kUnknownColumn, rule, site,
           fmt::format("join columns {} differ from the shared columns {}",
                       to_string(*n.on), to_string(shared)),
           *n.on);
    }
    AttrSet right_labels = labels_of(r.row);
    if (!subset_of(right_labels, closure(r.fds, shared))) {
      AttrSet missing;
      AttrSet reached = closure(r.fds, shared);
      std::set_difference(right_labels.begin(), right_labels.end(),
                          reached.begin(), reached.end(),
                          std::inserter(missing, missing.end()));
      fail(LensErrorKind::kJoinFdViolation, rule, site,
           fmt::format("join columns {} do not determine right columns {}",
                       to_string(shared), to_string(missing)),
           missing);
    }
    if (!is_tree_form(l.fds)) {
      fail(LensErrorKind::kNotTreeForm, rule, site,
           fmt::format("left dependencies {{{}}} are not in tree form",
                       to_string(l.fds)));
    }
    if (!is_tree_form(r.fds)) {
      fail(LensErrorKind::kNotTreeForm, rule, site,
           fmt::format("right dependencies {{{}}} are not in tree form",
                       to_string(r.fds)));
    }
    const std::pair<const char *, const LensSort *> sides[] = {{"left", &l},
                                                               {"right", &r}};
    for (const auto &[side, sort] : sides) {
      AttrSet constrained =
          intersection(referenced_fields(sort->pred), outputs(sort->fds));
      if (!constrained.empty()) {
        fail(LensErrorKind::kIgnoresViolation, rule, site,
             fmt::format("{} predicate constrains outputs {}", side,
                         to_string(constrained)),
             constrained);
      }
    }
    std::set<std::string> tables = l.tables;
    tables.insert(r.tables.begin(), r.tables.end());
    RowType row = *merge_row_types(l.row, r.row);
    std::vector<std::string> deferred = l.deferred;
    deferred.insert(deferred.end(), r.deferred.begin(), r.deferred.end());
    LensSort sort{std::move(tables),   row,
                  conjoin(l.pred, r.pred), unite(l.fds, r.fds),
                  l.dynamic || r.dynamic, std::move(deferred)};
    return make(expr, std::move(sort), {left, right});
  }

  TypedLensPtr check_node(const LensPtr &expr, const LensExpr::Drop &n,
                          const std::string &prefix) {
    const std::string rule = "T-Drop";
    std::string site = prefix + fmt::format("drop({})", n.column);
    TypedLensPtr source = check(n.source, site + "/");
    const LensSort &s = source->sort;
    auto col = s.row.find(n.column);
    if (col == s.row.end()) {
      fail(LensErrorKind::kUnknownColumn, rule, site,
           fmt::format("no column '{}' in {}", n.column, to_string(s.row)),
           {n.column});
    }
    RowType kept = s.row;
    kept.erase(n.column);
    AttrSet kept_labels = labels_of(kept);
    if (n.determined_by.empty()) {
      fail(LensErrorKind::kDropFdViolation, rule, site,
           fmt::format("'{}' must be determined by at least one column",
                       n.column));
    }
    if (!subset_of(n.determined_by, kept_labels)) {
      AttrSet unknown;
      std::set_difference(n.determined_by.begin(), n.determined_by.end(),
                          kept_labels.begin(), kept_labels.end(),
                          std::inserter(unknown, unknown.end()));
      fail(LensErrorKind::kUnknownColumn, rule, site,
           fmt::format("determining columns {} are not columns of the view",
                       to_string(unknown)),
           unknown);
    }
    if (kind_of(n.default_value) != col->second) {
      fail(LensErrorKind::kTypeMismatch, rule, site,
           fmt::format("default {} does not have the column type {}",
                       to_string(n.default_value), to_string(col->second)),
           {n.column});
    }
    std::vector<FunDep> remaining;
    for (const auto &fd : s.fds.deps()) {
      if (fd.lhs.contains(n.column)) {
        fail(LensErrorKind::kDropFdViolation, rule, site,
             fmt::format("dependency '{}' is determined by the dropped column",
                         to_string(fd)),
             {n.column});
      }
      FunDep g{fd.lhs, fd.rhs};
      g.rhs.erase(n.column);
      if (!g.rhs.empty()) remaining.push_back(std::move(g));
    }
    FunDeps g(remaining, kept_labels);
    std::vector<FunDep> with_drop = remaining;
    with_drop.push_back({n.determined_by, {n.column}});
    if (!equivalent(s.fds, FunDeps(with_drop, labels_of(s.row)))) {
      fail(LensErrorKind::kDropFdViolation, rule, site,
           fmt::format("dependencies {{{}}} are not equivalent to {{{}}} plus "
                       "{} -> {}",
                       to_string(s.fds), to_string(g),
                       to_string(n.determined_by), n.column),
           {n.column});
    }
    RowType dropped{{n.column, col->second}};
    if (!ljd_syntactic(s.pred, kept, dropped)) {
      fail(LensErrorKind::kLjdFailure, rule, site,
           fmt::format("predicate '{}' relates '{}' to the remaining columns",
                       to_surface(s.pred), n.column),
           {n.column});
    }
    Row default_record{{n.column, n.default_value}};
    DvOutcome dv = dv_check(s.pred, default_record);
    if (!dv.accepted) {
      fail(LensErrorKind::kDefaultValueFailure, rule, site,
           fmt::format("default {} = {} violates predicate '{}'", n.column,
                       to_string(n.default_value), to_surface(s.pred)),
           {n.column});
    }
    std::vector<std::string> deferred = s.deferred;
    for (const TermPtr &c : dv.deferred) {
      deferred.push_back(fmt::format(
          "default {} = {} must satisfy {}", n.column,
          to_string(n.default_value),
          to_surface(Predicate::make(s.pred.binder(), c, s.row))));
    }
    LensSort sort{s.tables,
                  kept,
                  substitute_projection(s.pred, n.column, n.default_value),
                  std::move(g),
                  s.dynamic,
                  std::move(deferred)};
    return make(expr, std::move(sort), {source});
  }

  TypedLensPtr check_node(const LensPtr &expr, const LensExpr::Check &n,
                          const std::string &prefix) {
    TypedLensPtr source = check(n.source, prefix + "check/");
    LensSort sort = source->sort;
    sort.dynamic = false;
    return make(expr, std::move(sort), {source});
  }

  const SchemaEnv &env_;
};

}  // namespace

TypedLensPtr typecheck_tree(const LensPtr &expr, const SchemaEnv &env) {
  Checker checker(env);
  return checker.check(expr, "");
}

LensSort typecheck_lens(const LensPtr &expr, const SchemaEnv &env) {
  return typecheck_tree(expr, env)->sort;
}

}  // namespace lensdb
