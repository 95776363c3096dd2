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


#pragma once

// Brute-force decision procedures over finite value domains. They back the
// enumeration fallback of the translation check and serve as reference
// implementations for the syntactic LJD/DV rules.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "lensdb/predicate.h"
#include "lensdb/value.h"

namespace lensdb {

inline constexpr std::size_t kDefaultOracleBound = 1'000'000;

class DomainTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FiniteDomain {
  std::vector<Int> ints;
  std::vector<std::string> strings;
  std::vector<bool> bools{false, true};

  /// ints {0, 1, 2}, strings {"a", "b"}.
  static FiniteDomain small();
  /// The constants of the predicates plus their integer neighbours, with a
  /// fresh value of each kind so that every comparison can go either way.
  static FiniteDomain covering(const std::vector<Predicate> &preds);

  std::size_t size_of(BaseKind kind) const;
  void add(const Constant &c);
};

/// The bound from LENSDB_ORACLE_BOUND, or kDefaultOracleBound.
std::size_t oracle_bound_from_env();

/// All records of the row type over the domain, in canonical order. Throws
/// DomainTooLarge when there would be more than `bound`.
std::vector<Row> inhabitants(const RowType &row, const FiniteDomain &domain,
                             std::size_t bound = kDefaultOracleBound);

/// sat(r1 (x) s1) and sat(r2 (x) s2) imply sat(r1 (x) s2) for all records of
/// the two row types. The bound applies to |inh r1| * |inh r2|.
bool ljd_oracle(const Predicate &pred, const RowType &r1, const RowType &r2,
                const FiniteDomain &domain,
                std::size_t bound = kDefaultOracleBound);

/// The predicate is satisfiable and some kept-side record completes the
/// default record to a satisfying one.
bool dv_oracle(const Predicate &pred, const RowType &kept,
               const Row &default_record, const FiniteDomain &domain,
               std::size_t bound = kDefaultOracleBound);

/// Same row type and the same truth value on every record over the domain.
bool equivalent_on(const Predicate &a, const Predicate &b,
                   const FiniteDomain &domain,
                   std::size_t bound = kDefaultOracleBound);

}  // namespace lensdb
