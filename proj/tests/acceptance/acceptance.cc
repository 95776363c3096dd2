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


// Acceptance suite: one PASS/FAIL line per criterion. Pass criterion
// numbers as arguments to run a subset.

#include <fmt/core.h>

#include <chrono>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "lensdb/engine.h"
#include "lensdb/jsonl.h"
#include "lensdb/oracles.h"
#include "lensdb/sequential.h"
#include "lensdb/workspace.h"
#include "support/armstrong.h"
#include "support/gen.h"
#include "support/golden.h"
#include "support/laws.h"

namespace {

using namespace lensdb;
using namespace lensdb::testing;
namespace fs = std::filesystem;

const fs::path kFixtures = LENSDB_FIXTURES_DIR;
const fs::path kGolden = LENSDB_GOLDEN_DIR;
const fs::path kCli = LENSDB_CLI;

// Pinned limits.
constexpr double kMusicSeconds = 1.0;
constexpr double kCounterexampleSeconds = 1.0;
constexpr double kLawSeconds = 300.0;
constexpr double kNormalizeSeconds = 120.0;
constexpr double kArmstrongSeconds = 60.0;
constexpr double kDaggerSeconds = 120.0;
constexpr double kTranslationSeconds = 60.0;
constexpr int kNormalizeCount = 10000;
constexpr int kNormalizeDepth = 8;
constexpr int kDaggerCount = 5000;
constexpr int kTranslationCount = 500;

struct Outcome {
  bool pass = true;
  std::string detail;
};

Store load_music(const Workspace &ws) {
  Store store;
  for (const auto &[name, table] : ws.tables()) {
    store.emplace(name, load_jsonl(kFixtures / "music" / (name + ".jsonl"), table.row));
  }
  return store;
}

Row row(std::initializer_list<std::pair<const std::string, Constant>> fields) {
  return Row(fields);
}

Outcome music_examples() {
  Workspace music = Workspace::load(kFixtures / "music" / "music.lens");
  Workspace counter = Workspace::load(kFixtures / "music" / "counterexamples.lens");
  Store store = load_music(music);

  Relation galore = get(music.build("galoreAlbums", {}), store);
  std::set<Row> want_galore{row({{"album", std::string("Galore")}, {"quantity", Int(1)}})};

  Relation undated = get(counter.build("undated", {}), store);
  auto track = [](const char *t, int rating, const char *album) {
    return row({{"track", std::string(t)},
                {"rating", Int(rating)},
                {"album", std::string(album)}});
  };
  std::set<Row> want_undated{track("Lovesong", 5, "Galore"),
                             track("Lovesong", 5, "Paris"),
                             track("Trust", 4, "Wish")};
  Outcome o;
  o.pass = galore.rows == want_galore && undated.rows == want_undated;
  o.detail = fmt::format("galore: {} row(s), undated: {} row(s)", galore.rows.size(),
                         undated.rows.size());
  return o;
}

Outcome counterexamples() {
  Workspace ws = Workspace::load(kFixtures / "music" / "counterexamples.lens");
  struct Expect {
    const char *lens;
    LensErrorKind kind;
  };
  const Expect expects[] = {{"galoreLowStock", LensErrorKind::kIgnoresViolation},
                            {"reviewedTracks", LensErrorKind::kJoinFdViolation},
                            {"undated", LensErrorKind::kLjdFailure}};
  Outcome o;
  for (const auto &e : expects) {
    std::string got = "accepted";
    try {
      typecheck_lens(ws.build(e.lens, {}), ws.tables());
      o.pass = false;
    } catch (const LensTypeError &err) {
      got = std::string(to_string(err.kind()));
      if (err.kind() != e.kind) o.pass = false;
      if (err.kind() == LensErrorKind::kIgnoresViolation &&
          err.detail() != "select predicate constrains outputs {quantity, rating}") {
        o.pass = false;
      }
    }
    if (!o.detail.empty()) o.detail += ", ";
    o.detail += fmt::format("{} -> {}", e.lens, got);
  }
  return o;
}

Outcome laws() {
  Outcome o;
  std::size_t lenses = 0, getput = 0, putget = 0;
  for (const auto &config : {two_table_config(), one_table_config()}) {
    LawReport r = check_laws(config);
    lenses += r.lenses;
    getput += r.getput_checks;
    putget += r.putget_checks;
    if (r.violations > 0) {
      o.pass = false;
      o.detail += fmt::format("{} violation(s), e.g. {}; ", r.violations,
                              r.examples.front());
    }
  }
  o.detail += fmt::format("{} typed pipelines, {} GetPut and {} PutGet checks",
                          lenses, getput, putget);
  return o;
}

Outcome normalization() {
  Gen gen(20240601);
  TermGen terms(gen);
  RowType row{{"b", BaseKind::kBool}, {"n", BaseKind::kInt}, {"s", BaseKind::kString}};
  TypeEnv env{{"x", Type::of_row(row)}};
  std::vector<Row> rows;
  for (bool b : {false, true}) {
    for (int n = 0; n <= 2; ++n) {
      for (const char *s : {"a", "b"}) {
        rows.push_back({{"b", b}, {"n", Int(n)}, {"s", std::string(s)}});
      }
    }
  }
  Outcome o;
  int failures = 0;
  for (int i = 0; i < kNormalizeCount; ++i) {
    TermPtr term = terms.term(env, Type::base(BaseKind::kBool), kNormalizeDepth);
    std::string problem;
    try {
      TermPtr n = normalize(term, env);
      if (!is_pnf(n)) problem = "not in predicate normal form";
      if (!types_equal(*typecheck_term(env, n), *Type::base(BaseKind::kBool))) {
        problem = "normal form changed type";
      }
      for (const auto &r : rows) {
        Env values{{"x", Value::of_row(r)}};
        if (*evaluate(term, values).as_constant() != *evaluate(n, values).as_constant()) {
          problem = "evaluation differs on " + to_string(r);
        }
      }
    } catch (const std::exception &e) {
      problem = e.what();
    }
    if (!problem.empty()) {
      if (failures++ == 0) o.detail = fmt::format("{}: {}; ", to_string(term), problem);
      o.pass = false;
    }
  }
  o.detail += fmt::format("{} terms, {} failure(s), {} environments each",
                          kNormalizeCount, failures, rows.size());
  return o;
}

Outcome armstrong() {
  const AttrSet universe{"a", "b", "c", "d"};
  const std::vector<std::string> names(universe.begin(), universe.end());
  std::array<AttrSet, 16> table;
  for (int mask = 0; mask < 16; ++mask) {
    for (int i = 0; i < 4; ++i) {
      if (mask & (1 << i)) table[mask].insert(names[i]);
    }
  }
  auto attrs = [&](int mask) -> const AttrSet & { return table[mask]; };
  std::vector<MaskFd> all;
  for (int l = 1; l < 16; ++l) {
    for (int r = 1; r < 16; ++r) all.push_back({static_cast<Mask>(l), static_cast<Mask>(r)});
  }
  std::size_t sets = 0, mismatches = 0;
  std::string example;
  std::vector<MaskFd> chosen;
  auto check = [&] {
    ++sets;
    std::array<Mask, 16> oracle = armstrong_maxima(chosen);
    std::vector<FunDep> deps;
    for (const auto &fd : chosen) deps.push_back({attrs(fd.lhs), attrs(fd.rhs)});
    FunDeps fds(deps, universe);
    for (int x = 1; x < 16; ++x) {
      if (closure(fds, attrs(x)) != attrs(oracle[x])) {
        if (mismatches++ == 0) {
          example = fmt::format("{{{}}} at {}", to_string(fds), to_string(attrs(x)));
        }
      }
    }
  };
  auto go = [&](auto &self, std::size_t from, int left) -> void {
    check();
    if (left == 0) return;
    for (std::size_t i = from; i < all.size(); ++i) {
      chosen.push_back(all[i]);
      self(self, i + 1, left - 1);
      chosen.pop_back();
    }
  };
  go(go, 0, 3);
  Outcome o;
  o.pass = mismatches == 0;
  o.detail = fmt::format("{} dependency sets, {} mismatch(es){}", sets, mismatches,
                         example.empty() ? "" : ", e.g. " + example);
  return o;
}

Outcome dagger_soundness() {
  Gen gen(7031);
  const std::vector<std::pair<std::string, BaseKind>> pool = {
      {"a", BaseKind::kInt}, {"b", BaseKind::kInt}, {"c", BaseKind::kInt},
      {"s", BaseKind::kString}};
  FiniteDomain domain = FiniteDomain::small();
  std::size_t ljd_accepted = 0, dv_accepted = 0, failures = 0;
  std::string example;
  for (int i = 0; i < kDaggerCount; ++i) {
    RowType row;
    while (row.size() < 2) {
      for (const auto &[l, k] : pool) {
        if (gen.chance(0.6)) row.emplace(l, k);
      }
    }
    Predicate pred = Predicate::make(flat_predicate(gen, row, 3), row);
    RowType kept, dropped;
    while (kept.empty() || dropped.empty()) {
      kept.clear();
      dropped.clear();
      for (const auto &[l, k] : row) (gen.chance(0.5) ? kept : dropped).emplace(l, k);
    }
    if (ljd_syntactic(pred, kept, dropped)) {
      ++ljd_accepted;
      if (!ljd_oracle(pred, kept, dropped, domain)) {
        if (failures++ == 0) example = "LJD " + to_surface(pred);
      }
    }
    Row defaults;
    for (const auto &[l, k] : dropped) {
      defaults.emplace(l, k == BaseKind::kInt ? Constant(Int(gen.range(0, 2)))
                                              : Constant(std::string(gen.chance(0.5) ? "a" : "b")));
    }
    DvOutcome dv = dv_check(pred, defaults);
    bool satisfiable = false;
    for (const auto &r : inhabitants(row, domain)) {
      if (satisfies(pred, r)) {
        satisfiable = true;
        break;
      }
    }
    if (dv.accepted && dv.deferred.empty() && satisfiable) {
      ++dv_accepted;
      if (!dv_oracle(pred, kept, defaults, domain)) {
        if (failures++ == 0) example = "DV " + to_surface(pred) + " at " + to_string(defaults);
      }
    }
  }
  Outcome o;
  o.pass = failures == 0;
  o.detail = fmt::format("{} predicates, LJD accepted {}, DV accepted {}, {} counterexample(s){}",
                         kDaggerCount, ljd_accepted, dv_accepted, failures,
                         example.empty() ? "" : ", e.g. " + example);
  return o;
}

Outcome translation() {
  Gen gen(99173);
  std::size_t accepted = 0, rejected = 0, divergent = 0;
  std::string example;
  for (int i = 0; i < kTranslationCount; ++i) {
    SchemaEnv env = random_schema(gen);
    LensPtr lens = random_lens(gen, env, 4);
    TranslationReport r = verify_translation(lens, env);
    if (r.functional) {
      ++accepted;
    } else {
      ++rejected;
    }
    if (!r.agree()) {
      if (divergent++ == 0) example = to_string(lens) + ": " + r.divergences.front();
    }
  }
  Outcome o;
  o.pass = divergent == 0;
  o.detail = fmt::format("{} lenses ({} accepted, {} rejected), {} divergence(s){}",
                         kTranslationCount, accepted, rejected, divergent,
                         example.empty() ? "" : ", e.g. " + example);
  return o;
}

Outcome cli_golden() {
  Outcome o;
  auto cases = load_golden_cases(kGolden / "cases.txt");
  std::size_t mismatches = 0;
  for (const auto &c : cases) {
    std::string first = run_golden_case(kCli, kFixtures, c);
    std::string second = run_golden_case(kCli, kFixtures, c);
    std::string golden = read_file(kGolden / (c.name + ".txt"));
    if (first != golden || second != golden) {
      if (mismatches++ == 0) o.detail = "mismatch in " + c.name + "; ";
    }
  }
  std::size_t dry_runs = 0, modified = 0;
  for (const auto &c : cases) {
    if (c.args.find("--dry-run") == std::string::npos) continue;
    ++dry_runs;
    ScratchDir scratch(kFixtures);
    auto before = snapshot_dir(scratch.path());
    run_cli(kCli, c.args, scratch.path());
    if (snapshot_dir(scratch.path()) != before) ++modified;
  }
  o.pass = mismatches == 0 && modified == 0 && dry_runs > 0;
  o.detail += fmt::format("{} cases run twice, {} mismatch(es); {} dry runs, {} modified files",
                          cases.size(), mismatches, dry_runs, modified);
  return o;
}

struct Criterion {
  int id;
  const char *name;
  double limit;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char **argv) {
  const std::vector<Criterion> criteria = {
      {1, "music database examples", kMusicSeconds, music_examples},
      {2, "counterexample rejection", kCounterexampleSeconds, counterexamples},
      {3, "round-tripping laws", kLawSeconds, laws},
      {4, "normalization", kNormalizeSeconds, normalization},
      {5, "Armstrong closure vs oracle", kArmstrongSeconds, armstrong},
      {6, "LJD/DV soundness", kDaggerSeconds, dagger_soundness},
      {7, "translation soundness", kTranslationSeconds, translation},
      {8, "CLI golden files", 0, cli_golden},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const auto &c : criteria) {
    if (!selected.empty() && !selected.contains(c.id)) continue;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception &e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = c.limit <= 0 || secs <= c.limit;
    bool pass = o.pass && in_time;
    failed += !pass;
    std::string limit = c.limit > 0 ? fmt::format(", limit {:.0f} s", c.limit) : "";
    fmt::print("criterion {} [{}]: {} ({:.2f} s{}) {}{}\n", c.id, c.name,
               pass ? "PASS" : "FAIL", secs, limit, o.detail,
               in_time ? "" : " [over time limit]");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
