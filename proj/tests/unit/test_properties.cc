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

#include <gtest/gtest.h>

#include "lensdb/engine.h"
#include "lensdb/oracles.h"
#include "lensdb/predicate.h"
#include "lensdb/predicate_parser.h"
#include "support/gen.h"
#include "support/laws.h"

namespace {

using namespace lensdb;
using namespace lensdb::testing;

const RowType kRow{{"a", BaseKind::kInt}, {"b", BaseKind::kInt}, {"s", BaseKind::kString}};

TEST(TypeSoundness, ClosedTermsEvaluateAtTheirType) {
  Gen gen(1);
  TermGen terms(gen);
  for (int i = 0; i < 2000; ++i) {
    TypePtr type = terms.small_type(1);
    TermPtr t = terms.term({}, type, 6);
    ASSERT_TRUE(types_equal(*typecheck_term({}, t), *type)) << to_string(t);
    Value v = evaluate(t);
    EXPECT_TRUE(value_has_type(v, *type)) << to_string(t);
  }
}

TEST(Normalization, PreservesTypeAndMeaning) {
  Gen gen(2);
  TermGen terms(gen);
  TypeEnv env{{"x", Type::of_row(kRow)}};
  auto rows = inhabitants(kRow, FiniteDomain::small());
  for (int i = 0; i < 500; ++i) {
    TermPtr t = terms.term(env, Type::base(BaseKind::kBool), 6);
    TermPtr n = normalize(t, env);
    ASSERT_TRUE(is_pnf(n)) << to_string(t);
    EXPECT_TRUE(is_normal_form(n));
    EXPECT_TRUE(terms_equal(normalize(n, env), n));
    for (const Row &r : rows) {
      Env values{{"x", Value::of_row(r)}};
      EXPECT_EQ(*evaluate(t, values).as_constant(), *evaluate(n, values).as_constant());
    }
  }
}

TEST(Predicates, ConjoinIsIntersection) {
  Gen gen(3);
  auto rows = inhabitants(kRow, FiniteDomain::small());
  for (int i = 0; i < 300; ++i) {
    Predicate p = Predicate::make(flat_predicate(gen, kRow, 3), kRow);
    Predicate q = Predicate::make(flat_predicate(gen, kRow, 3), kRow);
    Predicate c = conjoin(p, q);
    for (const Row &r : rows) {
      EXPECT_EQ(satisfies(c, r), satisfies(p, r) && satisfies(q, r));
    }
  }
}

TEST(Predicates, SubstituteProjectionMatchesExtension) {
  Gen gen(4);
  RowType shrunk = kRow;
  shrunk.erase("b");
  auto rows = inhabitants(shrunk, FiniteDomain::small());
  for (int i = 0; i < 300; ++i) {
    Predicate p = Predicate::make(flat_predicate(gen, kRow, 3), kRow);
    Int v = gen.range(0, 2);
    Predicate q = substitute_projection(p, "b", v);
    for (const Row &r : rows) {
      Row full = r;
      full["b"] = v;
      EXPECT_EQ(satisfies(q, r), satisfies(p, full)) << to_surface(p);
    }
  }
}

TEST(Predicates, SurfaceRoundTrip) {
  Gen gen(5);
  for (int i = 0; i < 300; ++i) {
    Predicate p = Predicate::make(flat_predicate(gen, kRow, 3), kRow);
    Predicate again = parse_predicate(to_surface(p), kRow);
    EXPECT_TRUE(predicates_equal(p, again)) << to_surface(p);
  }
}

// Views of well-typed lenses over constraint-satisfying stores satisfy the
// lens sort.
TEST(Engine, GetSoundness) {
  LawConfig config = two_table_config();
  auto stores = enumerate_stores(config);
  std::size_t checked = 0;
  for (const LensPtr &lens : enumerate_pipelines(config)) {
    std::optional<LensSort> sort;
    try {
      sort = typecheck_lens(lens, config.env);
    } catch (const LensTypeError &) {
      continue;
    }
    for (std::size_t i = 0; i < stores.size(); i += 7) {
      Relation view = get(lens, stores[i]);
      EXPECT_TRUE(check_constraints(view, sort->pred, sort->fds).empty()) << to_string(lens);
      ++checked;
    }
  }
  EXPECT_GT(checked, 100U);
}

}  // namespace
