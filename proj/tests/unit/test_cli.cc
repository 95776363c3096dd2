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

#include <cstdlib>
#include <fstream>
#include <string>

#include "lensdb/lensdb.h"
#include "support/golden.h"

namespace {

using namespace lensdb::testing;
namespace fs = std::filesystem;

const fs::path kFixtures = LENSDB_FIXTURES_DIR;
const fs::path kGolden = LENSDB_GOLDEN_DIR;
const fs::path kCli = LENSDB_CLI;

// LENSDB_UPDATE_GOLDEN=1 rewrites the expected files instead.
TEST(Golden, MatchesExpectedOutput) {
  bool update = std::getenv("LENSDB_UPDATE_GOLDEN") != nullptr;
  for (const auto &c : load_golden_cases(kGolden / "cases.txt")) {
    std::string got = run_golden_case(kCli, kFixtures, c);
    fs::path file = kGolden / (c.name + ".txt");
    if (update) {
      std::ofstream(file, std::ios::binary) << got;
      continue;
    }
    EXPECT_EQ(got, read_file(file)) << c.name;
  }
}

TEST(Put, FailureBeforeRenameLeavesDataUntouched) {
  ScratchDir scratch(kFixtures);
  auto before = snapshot_dir(scratch.path());
  CliRun r = run_cli(kCli,
                     "put --defs music/music.lens --lens galoreTracks --data music "
                     "--view music/views/galore_tracks_lovesong4.jsonl",
                     scratch.path(), "LENSDB_FAIL_BEFORE_RENAME=1");
  EXPECT_EQ(r.status, 3);
  EXPECT_EQ(snapshot_dir(scratch.path()), before);
}

TEST(Put, SecondIdenticalPutChangesNothing) {
  ScratchDir scratch(kFixtures);
  const std::string args =
      "put --defs music/music.lens --lens galoreTracks --data music "
      "--view music/views/galore_tracks_lovesong4.jsonl";
  ASSERT_EQ(run_cli(kCli, args, scratch.path()).status, 0);
  auto once = snapshot_dir(scratch.path());
  CliRun again = run_cli(kCli, args, scratch.path());
  EXPECT_EQ(again.status, 0);
  EXPECT_EQ(snapshot_dir(scratch.path()), once);
}

TEST(Cli, MissingRequiredOptionIsUsageError) {
  CliRun r = run_cli(kCli, "get --lens albumsL", kFixtures);
  EXPECT_EQ(r.status, 3);
}

struct Output {
  lensdb_output *p = nullptr;
  ~Output() { lensdb_output_free(p); }
  std::string out() const { return lensdb_output_stdout(p); }
  std::string err() const { return lensdb_output_stderr(p); }
};

struct Ws {
  lensdb_workspace *p = nullptr;
  ~Ws() { lensdb_workspace_free(p); }
};

TEST(CApi, GetThroughOpaqueHandle) {
  Ws ws;
  Output diag;
  std::string defs = (kFixtures / "music" / "music.lens").string();
  ASSERT_EQ(lensdb_workspace_open(defs.c_str(), &ws.p, &diag.p), LENSDB_OK);
  std::string data = (kFixtures / "music").string();
  lensdb_workspace_set_data_dir(ws.p, data.c_str());
  lensdb_workspace_set_param(ws.p, "albumName", "Wish");
  Output out;
  EXPECT_EQ(lensdb_get(ws.p, "getAlbumsByName", &out.p), LENSDB_OK);
  EXPECT_EQ(out.out(), "{\"album\":\"Wish\",\"quantity\":5}\n");
  EXPECT_EQ(out.err(), "");
}

TEST(CApi, ErrorsCarryStatusAndText) {
  Ws ws;
  Output diag;
  std::string defs = (kFixtures / "music" / "counterexamples.lens").string();
  ASSERT_EQ(lensdb_workspace_open(defs.c_str(), &ws.p, &diag.p), LENSDB_OK);
  Output out;
  EXPECT_EQ(lensdb_check(ws.p, &out.p), LENSDB_TYPE_ERROR);
  EXPECT_NE(out.out().find("galoreLowStock : IgnoresViolation"), std::string::npos);
}

TEST(CApi, OpenFailureReportsDiagnostic) {
  Ws ws;
  Output diag;
  std::string defs = (kFixtures / "music" / "broken.lens").string();
  EXPECT_EQ(lensdb_workspace_open(defs.c_str(), &ws.p, &diag.p), LENSDB_IO_ERROR);
  EXPECT_EQ(ws.p, nullptr);
  ASSERT_NE(diag.p, nullptr);
  EXPECT_NE(diag.err().find("broken.lens:"), std::string::npos);
}

TEST(CApi, VersionIsSet) { EXPECT_STRNE(lensdb_version(), ""); }

}  // namespace
