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

#include "support/laws.h"

namespace {

using namespace lensdb;
using namespace lensdb::testing;

TEST(Enumeration, RelationsAndStores) {
  RowType t{{"k", BaseKind::kInt}};
  // Subsets of {0, 1, 2} with at most two elements.
  EXPECT_EQ(enumerate_relations(t, {Int(0), Int(1), Int(2)}, 2).size(), 7U);
  LawConfig one = one_table_config();
  for (const Store &s : enumerate_stores(one)) {
    for (const auto &[name, rel] : s) {
      EXPECT_TRUE(check_constraints(rel, one.fds.at(name)).empty());
      EXPECT_LE(rel.rows.size(), one.max_store_rows);
    }
  }
}

TEST(Laws, OneTable) {
  LawReport r = check_laws(one_table_config());
  EXPECT_EQ(r.violations, 0U) << (r.examples.empty() ? "" : r.examples.front());
  EXPECT_GT(r.lenses, 0U);
  EXPECT_GT(r.putget_checks, 0U);
}

TEST(Laws, TwoTables) {
  LawReport r = check_laws(two_table_config());
  EXPECT_EQ(r.violations, 0U) << (r.examples.empty() ? "" : r.examples.front());
  EXPECT_GT(r.getput_checks, 0U);
}

}  // namespace
