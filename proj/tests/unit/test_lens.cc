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

#include "lensdb/lens.h"
#include "lensdb/oracles.h"
#include "lensdb/predicate_parser.h"
#include "lensdb/workspace.h"
#include "support/gen.h"

namespace {

using namespace lensdb;
using namespace lensdb::testing;

const std::filesystem::path kFixtures = LENSDB_FIXTURES_DIR;

const RowType kAlbums{{"album", BaseKind::kString}, {"quantity", BaseKind::kInt}};
const RowType kTracks{{"album", BaseKind::kString},
                      {"rating", BaseKind::kInt},
                      {"track", BaseKind::kString},
                      {"year", BaseKind::kInt}};

SchemaEnv music_env() {
  return {{"albums", {"albums", kAlbums, {"album"}}},
          {"tracks", {"tracks", kTracks, {"track", "album"}}}};
}

LensPtr albums() {
  return lenses::prim("albums", parse_fundeps("album -> quantity", labels_of(kAlbums)));
}
LensPtr tracks() {
  return lenses::prim("tracks", parse_fundeps("track -> year rating", labels_of(kTracks)));
}

LensErrorKind error_of(const LensPtr &lens, const SchemaEnv &env = music_env()) {
  try {
    typecheck_lens(lens, env);
  } catch (const LensTypeError &e) {
    return e.kind();
  }
  ADD_FAILURE() << "accepted " << to_string(lens);
  return LensErrorKind::kUnknownColumn;
}

TEST(Typecheck, Prim) {
  LensSort s = typecheck_lens(albums(), music_env());
  EXPECT_EQ(s.tables, std::set<std::string>{"albums"});
  EXPECT_EQ(s.row, kAlbums);
  EXPECT_TRUE(s.pred.is_true());
  EXPECT_EQ(to_string(s.fds), "album -> quantity");
  EXPECT_EQ(to_string(s), "lens((album, quantity); true; {album -> quantity}) with {albums}");
}

TEST(Typecheck, PrimRejectsUnknownTableAndColumn) {
  EXPECT_EQ(error_of(lenses::prim("nope", {})), LensErrorKind::kUnknownTable);
  AttrSet wide{"album", "quantity", "price"};
  EXPECT_EQ(error_of(lenses::prim("albums", parse_fundeps("album -> price", wide))),
            LensErrorKind::kUnknownColumn);
}

TEST(Typecheck, SelectRejectsNonTreeForm) {
  LensPtr prim = lenses::prim(
      "tracks", parse_fundeps("track -> year; album -> year", labels_of(kTracks)));
  EXPECT_NO_THROW(typecheck_lens(prim, music_env()));
  EXPECT_EQ(error_of(lenses::select(prim, parse_predicate("track == \"T\"", kTracks))),
            LensErrorKind::kNotTreeForm);
}

TEST(Typecheck, Counterexamples) {
  Workspace ws = Workspace::load(kFixtures / "music" / "counterexamples.lens");
  EXPECT_EQ(error_of(ws.build("galoreLowStock", {}), ws.tables()),
            LensErrorKind::kIgnoresViolation);
  EXPECT_EQ(error_of(ws.build("reviewedTracks", {}), ws.tables()),
            LensErrorKind::kJoinFdViolation);
  EXPECT_EQ(error_of(ws.build("undated", {}), ws.tables()), LensErrorKind::kLjdFailure);
}

TEST(Typecheck, IgnoresViolationNamesLabels) {
  Workspace ws = Workspace::load(kFixtures / "music" / "counterexamples.lens");
  try {
    typecheck_lens(ws.build("galoreLowStock", {}), ws.tables());
    FAIL();
  } catch (const LensTypeError &e) {
    EXPECT_EQ(e.labels(), (AttrSet{"quantity", "rating"}));
    EXPECT_EQ(e.rule(), "T-Select");
  }
}

TEST(Typecheck, SelectConjoinsPredicates) {
  LensPtr inner = lenses::select(tracks(), parse_predicate("rating > 3", kTracks));
  // Only album is constrained, which is not an output of track -> year rating.
  LensPtr outer = lenses::select(inner, parse_predicate("album == \"Galore\"", kTracks));
  EXPECT_EQ(error_of(outer), LensErrorKind::kIgnoresViolation);
  LensPtr ok = lenses::select(lenses::select(tracks(), parse_predicate("album == \"G\"", kTracks)),
                              parse_predicate("track == \"T\"", kTracks));
  LensSort s = typecheck_lens(ok, music_env());
  EXPECT_EQ(to_surface(s.pred), "album == \"G\" && track == \"T\"");
}

TEST(Typecheck, JoinSort) {
  LensSort s = typecheck_lens(lenses::join(tracks(), albums()), music_env());
  EXPECT_EQ(s.tables, (std::set<std::string>{"albums", "tracks"}));
  EXPECT_EQ(s.row.size(), 5U);
  EXPECT_EQ(to_string(s.fds), "album -> quantity; track -> rating year");
}

TEST(Typecheck, JoinRejectsSchemaOverlap) {
  EXPECT_EQ(error_of(lenses::join(albums(), albums())), LensErrorKind::kSchemaOverlap);
}

TEST(Typecheck, JoinOnMustMatchSharedColumns) {
  EXPECT_EQ(error_of(lenses::join(tracks(), albums(), JoinVariant::kDeleteLeft,
                                  AttrSet{"track"})),
            LensErrorKind::kUnknownColumn);
}

TEST(Typecheck, OtherJoinVariantsUnimplemented) {
  EXPECT_EQ(error_of(lenses::join(tracks(), albums(), JoinVariant::kDeleteBoth)),
            LensErrorKind::kUnimplementedVariant);
}

TEST(Typecheck, DropSort) {
  LensSort s = typecheck_lens(lenses::drop("year", {"track"}, Int(1989), tracks()), music_env());
  EXPECT_FALSE(s.row.contains("year"));
  EXPECT_EQ(to_string(s.fds), "track -> rating");
}

TEST(Typecheck, DropSubstitutesDefault) {
  LensPtr sel = lenses::select(tracks(), parse_predicate("year > 1985 && album == \"G\"", kTracks));
  LensSort s = typecheck_lens(lenses::drop("year", {"track"}, Int(1990), sel), music_env());
  EXPECT_EQ(to_surface(s.pred), "album == \"G\"");
}

TEST(Typecheck, DropDefaultMustSatisfy) {
  LensPtr sel = lenses::select(tracks(), parse_predicate("year > 1985", kTracks));
  EXPECT_EQ(error_of(lenses::drop("year", {"track"}, Int(1980), sel)),
            LensErrorKind::kDefaultValueFailure);
}

TEST(Typecheck, DropChecksDeterminant) {
  EXPECT_EQ(error_of(lenses::drop("year", {"album"}, Int(1989), tracks())),
            LensErrorKind::kDropFdViolation);
  EXPECT_EQ(error_of(lenses::drop("year", {"track"}, std::string("x"), tracks())),
            LensErrorKind::kTypeMismatch);
  EXPECT_EQ(error_of(lenses::drop("month", {"track"}, Int(1), tracks())),
            LensErrorKind::kUnknownColumn);
}

TEST(Typecheck, ParameterizedSelectNeedsCheck) {
  ParamBindings symbolic;
  symbolic.symbolic_when_unbound = true;
  Predicate p = parse_predicate("album == $n", kAlbums, symbolic);
  LensSort bare = typecheck_lens(lenses::select(albums(), p, true), music_env());
  EXPECT_TRUE(bare.dynamic);
  LensSort checked =
      typecheck_lens(lenses::check(lenses::select(albums(), p, true)), music_env());
  EXPECT_FALSE(checked.dynamic);
}

TEST(Ljd, Examples) {
  RowType kept = kTracks;
  kept.erase("year");
  RowType dropped{{"year", BaseKind::kInt}};
  EXPECT_TRUE(ljd_syntactic(Predicate::always_true(kTracks), kept, dropped));
  EXPECT_TRUE(ljd_syntactic(parse_predicate("album == \"Galore\" && year > 1985", kTracks),
                            kept, dropped));
  EXPECT_FALSE(
      ljd_syntactic(parse_predicate("year > 1990 || rating > 4", kTracks), kept, dropped));
}

TEST(Ljd, OracleFindsWitness) {
  RowType row{{"rating", BaseKind::kInt}, {"year", BaseKind::kInt}};
  FiniteDomain d;
  d.ints = {Int(1989), Int(1992), Int(3), Int(5)};
  Predicate p = parse_predicate("year > 1990 || rating > 4", row);
  EXPECT_FALSE(ljd_oracle(p, {{"rating", BaseKind::kInt}}, {{"year", BaseKind::kInt}}, d));
  EXPECT_TRUE(ljd_oracle(Predicate::always_true(row), {{"rating", BaseKind::kInt}},
                         {{"year", BaseKind::kInt}}, d));
}

TEST(Dv, Examples) {
  RowType row{{"album", BaseKind::kString}, {"year", BaseKind::kInt}};
  RowType kept{{"album", BaseKind::kString}};
  Row d1990{{"year", Int(1990)}};
  Row d1980{{"year", Int(1980)}};
  Predicate galore = parse_predicate("album == \"Galore\"", row);
  Predicate recent = parse_predicate("year > 1985", row);
  EXPECT_TRUE(dv_syntactic(galore, d1990));
  EXPECT_TRUE(dv_syntactic(recent, d1990));
  EXPECT_FALSE(dv_syntactic(recent, d1980));
  FiniteDomain d = FiniteDomain::covering({recent});
  EXPECT_TRUE(dv_oracle(Predicate::always_true(row), kept, d1980, d));
  EXPECT_TRUE(dv_oracle(recent, kept, d1990, d));
  EXPECT_FALSE(dv_oracle(recent, kept, d1980, d));
}

TEST(Dv, DefersParameterConjuncts) {
  RowType row{{"album", BaseKind::kString}, {"year", BaseKind::kInt}};
  ParamBindings symbolic;
  symbolic.symbolic_when_unbound = true;
  DvOutcome o = dv_check(parse_predicate("year > $y", row, symbolic), {{"year", Int(1990)}});
  EXPECT_TRUE(o.accepted);
  EXPECT_EQ(o.deferred.size(), 1U);
}

TEST(Oracles, DomainBoundIsEnforced) {
  RowType wide;
  for (char c = 'a'; c <= 'k'; ++c) wide[std::string(1, c)] = BaseKind::kInt;
  EXPECT_THROW(inhabitants(wide, FiniteDomain::small(), 1000), DomainTooLarge);
}

// Syntactic rules never accept what the finite-domain oracles reject.
TEST(Soundness, FuzzedLjdAndDv) {
  Gen gen(3);
  RowType row{{"a", BaseKind::kInt}, {"b", BaseKind::kInt}, {"c", BaseKind::kInt},
              {"s", BaseKind::kString}};
  FiniteDomain domain = FiniteDomain::small();
  for (int i = 0; i < 400; ++i) {
    Predicate p = Predicate::make(flat_predicate(gen, row, 3), row);
    RowType r1 = row, r2;
    r2["c"] = BaseKind::kInt;
    r1.erase("c");
    if (ljd_syntactic(p, r1, r2)) EXPECT_TRUE(ljd_oracle(p, r1, r2, domain)) << to_surface(p);
    Row dflt{{"c", Int(gen.range(0, 2))}};
    if (dv_syntactic(p, dflt) &&
        !inhabitants(row, domain).empty()) {
      bool sat = false;
      for (const Row &r : inhabitants(row, domain)) sat = sat || satisfies(p, r);
      if (sat) EXPECT_TRUE(dv_oracle(p, r1, dflt, domain)) << to_surface(p);
    }
  }
}

// Sorts returned by the checker are well formed.
TEST(Soundness, SortsAreWellFormed) {
  Gen gen(41);
  int accepted = 0;
  for (int i = 0; i < 300; ++i) {
    SchemaEnv env = random_schema(gen);
    LensPtr lens = random_lens(gen, env, 3);
    std::optional<LensSort> sorted;
    try {
      sorted = typecheck_lens(lens, env);
    } catch (const LensTypeError &) {
      continue;
    }
    ++accepted;
    const LensSort &s = *sorted;
    EXPECT_EQ(s.fds.universe(), labels_of(s.row));
    EXPECT_EQ(s.pred.row(), s.row);
    EXPECT_TRUE(is_pnf(s.pred.body()));
    EXPECT_EQ(s.tables, tables_of(lens));
  }
  EXPECT_GT(accepted, 50);
}

}  // namespace
