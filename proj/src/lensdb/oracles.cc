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


#include "lensdb/oracles.h"

#include <fmt/core.h>

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <optional>

namespace lensdb {

FiniteDomain FiniteDomain::small() {
  FiniteDomain d;
  d.ints = {0, 1, 2};
  d.strings = {"a", "b"};
  return d;
}

void FiniteDomain::add(const Constant &c) {
  if (const Int *i = std::get_if<Int>(&c)) {
    if (std::find(ints.begin(), ints.end(), *i) == ints.end()) ints.push_back(*i);
  } else if (const auto *s = std::get_if<std::string>(&c)) {
    if (std::find(strings.begin(), strings.end(), *s) == strings.end()) {
      strings.push_back(*s);
    }
  }
}

namespace {

void collect_constants(const TermPtr &term, std::vector<Constant> &out) {
  if (const auto *c = term->as<Term::Const>()) {
    out.push_back(c->value);
  } else if (const auto *i = term->as<Term::If>()) {
    collect_constants(i->cond, out);
    collect_constants(i->then_branch, out);
    collect_constants(i->else_branch, out);
  } else if (const auto *o = term->as<Term::Op>()) {
    for (const auto &a : o->args) collect_constants(a, out);
  }
}

}  // namespace

FiniteDomain FiniteDomain::covering(const std::vector<Predicate> &preds) {
  FiniteDomain d;
  std::vector<Constant> constants;
  for (const auto &p : preds) collect_constants(p.body(), constants);
  for (const auto &c : constants) {
    d.add(c);
    if (const Int *i = std::get_if<Int>(&c)) {
      d.add(Int(*i - 1));
      d.add(Int(*i + 1));
    }
  }
  d.add(Int(0));
  std::string fresh = "_";
  while (std::find(d.strings.begin(), d.strings.end(), fresh) != d.strings.end()) {
    fresh += "_";
  }
  d.add(fresh);
  std::sort(d.ints.begin(), d.ints.end());
  std::sort(d.strings.begin(), d.strings.end());
  return d;
}

std::size_t FiniteDomain::size_of(BaseKind kind) const {
  switch (kind) {
    case BaseKind::kBool:
      return bools.size();
    case BaseKind::kInt:
      return ints.size();
    case BaseKind::kString:
      return strings.size();
  }
  return 0;
}

std::size_t oracle_bound_from_env() {
  const char *text = std::getenv("LENSDB_ORACLE_BOUND");
  if (text == nullptr || *text == '\0') return kDefaultOracleBound;
  char *end = nullptr;
  unsigned long long v = std::strtoull(text, &end, 10);
  if (end == nullptr || *end != '\0' || v == 0) return kDefaultOracleBound;
  return static_cast<std::size_t>(v);
}

namespace {

std::optional<std::size_t> count_inhabitants(const RowType &row,
                                             const FiniteDomain &domain,
                                             std::size_t bound) {
  std::size_t n = 1;
  for (const auto &[label, kind] : row) {
    std::size_t k = domain.size_of(kind);
    if (k == 0) return 0;
    if (n > bound / k) return std::nullopt;
    n *= k;
  }
  return n;
}

}  // namespace

std::vector<Row> inhabitants(const RowType &row, const FiniteDomain &domain,
                             std::size_t bound) {
  std::optional<std::size_t> count = count_inhabitants(row, domain, bound);
  if (!count || *count > bound) {
    throw DomainTooLarge(fmt::format(
        "enumerating {} exceeds the oracle bound of {}", to_string(row), bound));
  }
  std::vector<Row> out;
  out.reserve(*count);
  Row cur;
  std::vector<std::pair<std::string, BaseKind>> fields(row.begin(), row.end());
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == fields.size()) {
      out.push_back(cur);
      return;
    }
    const auto &[label, kind] = fields[i];
    switch (kind) {
      case BaseKind::kBool:
        for (bool b : domain.bools) {
          cur[label] = b;
          go(i + 1);
        }
        break;
      case BaseKind::kInt:
        for (const Int &v : domain.ints) {
          cur[label] = v;
          go(i + 1);
        }
        break;
      case BaseKind::kString:
        for (const auto &s : domain.strings) {
          cur[label] = s;
          go(i + 1);
        }
        break;
    }
    cur.erase(label);
  };
  go(0);
  return out;
}

bool ljd_oracle(const Predicate &pred, const RowType &r1, const RowType &r2,
                const FiniteDomain &domain, std::size_t bound) {
  std::vector<Row> left = inhabitants(r1, domain, bound);
  std::vector<Row> right = inhabitants(r2, domain, bound);
  if (!left.empty() && right.size() > bound / left.size()) {
    throw DomainTooLarge(fmt::format(
        "{} x {} record pairs exceed the oracle bound of {}", left.size(),
        right.size(), bound));
  }
  // sat matrix; the implication holds iff every row that has some satisfying
  // column is satisfied at every column that is satisfied by some row.
  std::vector<std::vector<bool>> sat(left.size(),
                                     std::vector<bool>(right.size()));
  std::vector<bool> live_row(left.size()), live_col(right.size());
  for (std::size_t i = 0; i < left.size(); ++i) {
    for (std::size_t j = 0; j < right.size(); ++j) {
      sat[i][j] = satisfies(pred, *concat_rows(left[i], right[j]));
      if (sat[i][j]) live_row[i] = live_col[j] = true;
    }
  }
  for (std::size_t i = 0; i < left.size(); ++i) {
    if (!live_row[i]) continue;
    for (std::size_t j = 0; j < right.size(); ++j) {
      if (live_col[j] && !sat[i][j]) return false;
    }
  }
  return true;
}

bool dv_oracle(const Predicate &pred, const RowType &kept,
               const Row &default_record, const FiniteDomain &domain,
               std::size_t bound) {
  FiniteDomain full = domain;
  RowType dropped;
  for (const auto &[label, value] : default_record) {
    full.add(value);
    dropped.emplace(label, kind_of(value));
  }
  std::vector<Row> kept_rows = inhabitants(kept, full, bound);
  std::vector<Row> dropped_rows = inhabitants(dropped, full, bound);
  if (!kept_rows.empty() && dropped_rows.size() > bound / kept_rows.size()) {
    throw DomainTooLarge(fmt::format(
        "{} x {} record pairs exceed the oracle bound of {}", kept_rows.size(),
        dropped_rows.size(), bound));
  }
  bool nonempty = false;
  for (const auto &s : kept_rows) {
    for (const auto &d : dropped_rows) {
      if (satisfies(pred, *concat_rows(s, d))) {
        nonempty = true;
        break;
      }
    }
    if (nonempty) break;
  }
  if (!nonempty) return false;
  return std::any_of(kept_rows.begin(), kept_rows.end(), [&](const Row &s) {
    return satisfies(pred, *concat_rows(s, default_record));
  });
}

bool equivalent_on(const Predicate &a, const Predicate &b,
                   const FiniteDomain &domain, std::size_t bound) {
  if (a.row() != b.row()) return false;
  for (const Row &r : inhabitants(a.row(), domain, bound)) {
    if (satisfies(a, r) != satisfies(b, r)) return false;
  }
  return true;
}

}  // namespace lensdb
