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


#include "lensdb/sequential.h"

#include <fmt/core.h>

#include <algorithm>
#include <iterator>
#include <utility>

namespace lensdb {

namespace seq {
SeqPtr id(std::string relation) {
  return std::make_shared<SeqLens>(SeqLens::Id{std::move(relation)});
}
SeqPtr compose(SeqPtr first, SeqPtr second) {
  return std::make_shared<SeqLens>(
      SeqLens::Compose{std::move(first), std::move(second)});
}
SeqPtr select_as(std::string src, Predicate pred, std::string dst) {
  return std::make_shared<SeqLens>(
      SeqLens::SelectAs{std::move(src), std::move(pred), std::move(dst)});
}
SeqPtr join_dl_as(std::string left, std::string right, std::string dst) {
  return std::make_shared<SeqLens>(
      SeqLens::JoinDlAs{std::move(left), std::move(right), std::move(dst)});
}
SeqPtr drop_as(std::string label, AttrSet determined_by, Constant default_value,
               std::string src, std::string dst) {
  return std::make_shared<SeqLens>(SeqLens::DropAs{
      std::move(label), std::move(determined_by), std::move(default_value),
      std::move(src), std::move(dst)});
}
}  // namespace seq

namespace {

std::string comma_list(const AttrSet &attrs) {
  std::string out;
  for (const auto &a : attrs) {
    if (!out.empty()) out += ", ";
    out += a;
  }
  return out;
}

}  // namespace

std::string to_string(const RelSort &sort) {
  return fmt::format("({}; {}; {{{}}})", comma_list(sort.attrs),
                     to_surface(sort.pred), to_string(sort.fds));
}

// ---------------------------------------------------------------------------
// Flattening

namespace {

class Flattener {
 public:
  Flattening run(const LensPtr &expr) {
    Flattening out;
    auto [lens, view] = go(expr, out);
    out.lens = std::move(lens);
    out.view = std::move(view);
    return out;
  }

 private:
  std::string fresh() { return fmt::format("_v{}", counter_++); }

  std::pair<SeqPtr, std::string> go(const LensPtr &expr, Flattening &out) {
    if (const auto *p = expr->as<LensExpr::Prim>()) {
      out.schema.push_back(p->table);
      out.primitives.emplace_back(p->table, p->fds);
      return {seq::id(p->table), p->table};
    }
    if (const auto *s = expr->as<LensExpr::Select>()) {
      auto [inner, src] = go(s->source, out);
      std::string dst = fresh();
      return {seq::compose(inner, seq::select_as(src, s->pred, dst)), dst};
    }
    if (const auto *j = expr->as<LensExpr::Join>()) {
      if (j->variant != JoinVariant::kDeleteLeft) {
        throw LensTypeError(
            LensErrorKind::kUnimplementedVariant, "T-Join-RL", "join",
            "unimplemented variant: only delete_left joins are supported");
      }
      auto [left, l] = go(j->left, out);
      auto [right, r] = go(j->right, out);
      std::string dst = fresh();
      return {seq::compose(seq::compose(left, right),
                           seq::join_dl_as(l, r, dst)),
              dst};
    }
    if (const auto *d = expr->as<LensExpr::Drop>()) {
      auto [inner, src] = go(d->source, out);
      std::string dst = fresh();
      return {seq::compose(inner, seq::drop_as(d->column, d->determined_by,
                                               d->default_value, src, dst)),
              dst};
    }
    return go(expr->as<LensExpr::Check>()->source, out);
  }

  int counter_ = 0;
};

}  // namespace

Flattening flatten(const LensPtr &expr) { return Flattener().run(expr); }

std::map<std::string, RelSort> source_sorts(const Flattening &flat,
                                            const SchemaEnv &env) {
  std::map<std::string, RelSort> out;
  for (const auto &[table, fds] : flat.primitives) {
    const std::string site = fmt::format("lens({})", table);
    auto it = env.find(table);
    if (it == env.end()) {
      throw LensTypeError(LensErrorKind::kUnknownTable, "T-Id-RL", site,
                          fmt::format("no table named '{}'", table));
    }
    if (out.contains(table)) {
      throw LensTypeError(LensErrorKind::kSchemaOverlap, "T-Compose-RL", site,
                          fmt::format("table '{}' is used more than once", table),
                          {table});
    }
    AttrSet attrs = labels_of(it->second.row);
    AttrSet unknown;
    for (const auto &a : nodes_of(fds)) {
      if (!attrs.contains(a)) unknown.insert(a);
    }
    if (!unknown.empty()) {
      throw LensTypeError(LensErrorKind::kUnknownColumn, "T-Id-RL", site,
                          fmt::format("dependencies mention unknown columns {}",
                                      to_string(unknown)),
                          unknown);
    }
    out.emplace(table, RelSort{attrs, Predicate::always_true(it->second.row),
                               fds.with_universe(attrs)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sequential typechecking

namespace {

AttrSet meet(const AttrSet &a, const AttrSet &b) {
  AttrSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(out, out.end()));
  return out;
}

bool contained(const AttrSet &a, const AttrSet &b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

class SeqChecker {
 public:
  explicit SeqChecker(const std::map<std::string, RelSort> &sorts)
      : schema_(sorts) {
    for (const auto &[name, sort] : sorts) judgement_.sources.insert(name);
    judgement_.sorts = sorts;
  }

  SeqJudgement run(const SeqPtr &lens) {
    go(lens);
    for (const auto &[name, sort] : schema_) judgement_.views.insert(name);
    return std::move(judgement_);
  }

 private:
  [[noreturn]] static void fail(LensErrorKind kind, const std::string &rule,
                                const std::string &site,
                                const std::string &detail, AttrSet labels = {}) {
    throw LensTypeError(kind, rule, site, detail, std::move(labels));
  }

  // Removes a source relation from the schema; each relation is consumed
  // exactly once.
  RelSort take(const std::string &name, const std::string &rule,
               const std::string &site) {
    auto it = schema_.find(name);
    if (it == schema_.end()) {
      fail(LensErrorKind::kSchemaOverlap, rule, site,
           fmt::format("relation '{}' is not available in the schema", name),
           {name});
    }
    RelSort sort = std::move(it->second);
    schema_.erase(it);
    return sort;
  }

  void produce(const std::vector<std::string> &sources, std::string label,
               const std::string &dst, RelSort sort, const std::string &rule) {
    if (schema_.contains(dst) || judgement_.sorts.contains(dst)) {
      fail(LensErrorKind::kSchemaOverlap, rule, dst,
           fmt::format("relation '{}' already exists", dst), {dst});
    }
    schema_.emplace(dst, sort);
    judgement_.sorts.emplace(dst, sort);
    judgement_.stages.push_back({sources, std::move(label), dst, std::move(sort)});
  }

  static void require_forest(const FunDeps &fds, const std::string &rule,
                             const std::string &site, const char *which) {
    if (!is_tree_form(fds)) {
      fail(LensErrorKind::kNotTreeForm, rule, site,
           fmt::format("{}dependencies {{{}}} are not in tree form", which,
                       to_string(fds)));
    }
  }

  static void require_ignores(const RelSort &sort, const std::string &rule,
                              const std::string &site, const char *which) {
    AttrSet constrained = meet(referenced_fields(sort.pred), outputs(sort.fds));
    if (!constrained.empty()) {
      fail(LensErrorKind::kIgnoresViolation, rule, site,
           fmt::format("{} predicate constrains outputs {}", which,
                       to_string(constrained)),
           constrained);
    }
  }

  void go(const SeqPtr &lens) {
    if (const auto *i = lens->as<SeqLens::Id>()) {
      if (!i->relation.empty()) {
        auto it = schema_.find(i->relation);
        if (it == schema_.end()) {
          fail(LensErrorKind::kSchemaOverlap, "T-Id-RL", i->relation,
               fmt::format("relation '{}' is not available in the schema",
                           i->relation),
               {i->relation});
        }
        judgement_.stages.push_back(
            {{i->relation}, "id", i->relation, it->second});
      }
      return;
    }
    if (const auto *c = lens->as<SeqLens::Compose>()) {
      go(c->first);
      go(c->second);
      return;
    }
    if (const auto *s = lens->as<SeqLens::SelectAs>()) {
      const std::string rule = "T-Select-RL";
      RelSort src = take(s->src, rule, s->dst);
      if (labels_of(s->pred.row()) != src.attrs) {
        fail(LensErrorKind::kTypeMismatch, rule, s->dst,
             fmt::format("predicate is over {} but '{}' has attributes {}",
                         to_string(s->pred.row()), s->src,
                         to_string(src.attrs)));
      }
      require_forest(src.fds, rule, s->dst, "");
      require_ignores(src, rule, s->dst, "select");
      RelSort dst{src.attrs, conjoin(src.pred, s->pred), src.fds};
      produce({s->src}, "select " + to_surface(s->pred), s->dst,
              std::move(dst), rule);
      return;
    }
    if (const auto *j = lens->as<SeqLens::JoinDlAs>()) {
      const std::string rule = "T-Join-RL";
      if (j->left == j->right) {
        fail(LensErrorKind::kSchemaOverlap, rule, j->dst,
             fmt::format("relation '{}' joined with itself", j->left),
             {j->left});
      }
      RelSort r = take(j->left, rule, j->dst);
      RelSort s = take(j->right, rule, j->dst);
      AttrSet shared = meet(r.attrs, s.attrs);
      for (const auto &a : shared) {
        if (r.pred.row().at(a) != s.pred.row().at(a)) {
          fail(LensErrorKind::kTypeMismatch, rule, j->dst,
               fmt::format("join column '{}' has different types", a), {a});
        }
      }
      if (!contained(s.attrs, closure(s.fds, shared))) {
        fail(LensErrorKind::kJoinFdViolation, rule, j->dst,
             fmt::format("G does not derive {} -> {}", to_string(shared),
                         to_string(s.attrs)));
      }
      require_forest(r.fds, rule, j->dst, "left ");
      require_forest(s.fds, rule, j->dst, "right ");
      require_ignores(r, rule, j->dst, "left");
      require_ignores(s, rule, j->dst, "right");
      AttrSet attrs = r.attrs;
      attrs.insert(s.attrs.begin(), s.attrs.end());
      RelSort t{attrs, conjoin(r.pred, s.pred), unite(r.fds, s.fds)};
      produce({j->left, j->right}, "join_dl", j->dst, std::move(t), rule);
      return;
    }
    const auto &d = *lens->as<SeqLens::DropAs>();
    const std::string rule = "T-Drop-RL";
    RelSort r = take(d.src, rule, d.dst);
    if (!r.attrs.contains(d.label)) {
      fail(LensErrorKind::kUnknownColumn, rule, d.dst,
           fmt::format("attribute '{}' is not in {}", d.label,
                       to_string(r.attrs)),
           {d.label});
    }
    AttrSet rest = r.attrs;
    rest.erase(d.label);
    if (d.determined_by.empty() || !contained(d.determined_by, rest)) {
      fail(d.determined_by.empty() ? LensErrorKind::kDropFdViolation
                                   : LensErrorKind::kUnknownColumn,
           rule, d.dst,
           fmt::format("determining attributes {} must be a nonempty subset "
                       "of {}",
                       to_string(d.determined_by), to_string(rest)));
    }
    BaseKind kind = r.pred.row().at(d.label);
    if (kind_of(d.default_value) != kind) {
      fail(LensErrorKind::kTypeMismatch, rule, d.dst,
           fmt::format("default {} is not of type {}",
                       to_string(d.default_value), to_string(kind)),
           {d.label});
    }
    // G: the dependencies with A removed from every right-hand side.
    std::vector<FunDep> g_deps;
    for (const auto &fd : r.fds.deps()) {
      if (fd.lhs.contains(d.label)) {
        fail(LensErrorKind::kDropFdViolation, rule, d.dst,
             fmt::format("'{}' determines other attributes", d.label),
             {d.label});
      }
      FunDep g = fd;
      g.rhs.erase(d.label);
      if (!g.rhs.empty()) g_deps.push_back(std::move(g));
    }
    FunDeps g(g_deps, rest);
    g_deps.push_back({d.determined_by, {d.label}});
    if (!equivalent(r.fds, FunDeps(g_deps, r.attrs))) {
      fail(LensErrorKind::kDropFdViolation, rule, d.dst,
           fmt::format("F is not equivalent to G plus {} -> {}",
                       to_string(d.determined_by), d.label),
           {d.label});
    }
    RowType kept = r.pred.row();
    kept.erase(d.label);
    if (!ljd_syntactic(r.pred, kept, {{d.label, kind}})) {
      fail(LensErrorKind::kLjdFailure, rule, d.dst,
           fmt::format("predicate does not decompose around '{}'", d.label),
           {d.label});
    }
    if (!dv_check(r.pred, {{d.label, d.default_value}}).accepted) {
      fail(LensErrorKind::kDefaultValueFailure, rule, d.dst,
           fmt::format("{} = {} is not in the restriction of the predicate",
                       d.label, to_string(d.default_value)),
           {d.label});
    }
    RelSort s{rest, substitute_projection(r.pred, d.label, d.default_value),
              std::move(g)};
    produce({d.src},
            fmt::format("drop {} by {} default {}", d.label,
                        to_string(d.determined_by), to_string(d.default_value)),
            d.dst, std::move(s), rule);
  }

  std::map<std::string, RelSort> schema_;
  SeqJudgement judgement_;
};

}  // namespace

SeqJudgement typecheck_sequential(const SeqPtr &lens,
                                  const std::map<std::string, RelSort> &sorts) {
  return SeqChecker(sorts).run(lens);
}

TranslationReport verify_translation(const LensPtr &expr, const SchemaEnv &env,
                                     std::size_t bound) {
  TranslationReport report;
  try {
    report.functional = typecheck_lens(expr, env);
  } catch (const LensTypeError &e) {
    report.functional_error = e;
  }
  try {
    Flattening flat = flatten(expr);
    SeqJudgement j = typecheck_sequential(flat.lens, source_sorts(flat, env));
    if (j.views != std::set<std::string>{flat.view}) {
      report.divergences.push_back(
          fmt::format("sequential lens does not produce exactly '{}'",
                      flat.view));
    }
    report.sequential = j.sorts.at(flat.view);
  } catch (const LensTypeError &e) {
    report.sequential_error = e;
  }

  if (report.functional.has_value() != report.sequential.has_value()) {
    report.divergences.push_back(fmt::format(
        "functional checker {} but sequential checker {}",
        report.functional ? "accepts" : report.functional_error->what(),
        report.sequential ? "accepts" : report.sequential_error->what()));
    return report;
  }
  if (!report.functional) return report;

  const LensSort &f = *report.functional;
  const RelSort &s = *report.sequential;
  if (labels_of(f.row) != s.attrs) {
    report.divergences.push_back(fmt::format(
        "attributes differ: {} vs {}", to_string(labels_of(f.row)),
        to_string(s.attrs)));
    return report;
  }
  if (!equivalent(f.fds, s.fds)) {
    report.divergences.push_back(fmt::format(
        "dependencies differ: {{{}}} vs {{{}}}", to_string(f.fds),
        to_string(s.fds)));
  }
  if (!predicates_equal(f.pred, s.pred)) {
    bool same = false;
    try {
      same = equivalent_on(f.pred, s.pred,
                           FiniteDomain::covering({f.pred, s.pred}), bound);
    } catch (const std::exception &) {
      same = false;
    }
    if (!same) {
      report.divergences.push_back(fmt::format(
          "predicates differ: '{}' vs '{}'", to_surface(f.pred),
          to_surface(s.pred)));
    }
  }
  return report;
}

std::string explain(const SeqJudgement &judgement) {
  std::string out = fmt::format("{} <=> {}\n", to_string(judgement.sources),
                                to_string(judgement.views));
  for (const auto &stage : judgement.stages) {
    std::string sources;
    for (const auto &s : stage.sources) {
      if (!sources.empty()) sources += ", ";
      sources += s;
    }
    out += fmt::format("{} --[{}]--> {} : {}\n", sources, stage.label,
                       stage.dst, to_string(stage.sort));
  }
  return out;
}

}  // namespace lensdb
