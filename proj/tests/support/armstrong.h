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

// Exhaustive Armstrong-axiom derivation over at most four attributes,
// independent of the closure algorithm under test.

#include <array>
#include <cstdint>
#include <vector>

namespace lensdb::testing {

/// Attribute sets over {0,1,2,3} as 4-bit masks.
using Mask = std::uint8_t;

struct MaskFd {
  Mask lhs;
  Mask rhs;
};

/// For every X, the largest Y such that F |- X -> Y by the six rules
/// (FD-ID, Transitive, Refl, Aug, Composition, Decomposition), computed by
/// saturating the per-lhs maxima to a fixpoint.
std::array<Mask, 16> armstrong_maxima(const std::vector<MaskFd> &fds);

/// The same relation as a literal family of derivable (X, Y) pairs,
/// saturated rule by rule. `out[X]` has bit Y set iff F |- X -> Y. Slow;
/// used to validate armstrong_maxima.
std::array<std::uint16_t, 16> armstrong_family(const std::vector<MaskFd> &fds);

}  // namespace lensdb::testing
