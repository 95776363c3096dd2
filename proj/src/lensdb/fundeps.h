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

// Functional dependencies: attribute closure, derivability, output fields,
// tree form and equivalence.

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lensdb/value.h"

namespace lensdb {

class FunDepError : public std::runtime_error {
 public:
  enum class Kind { kUnknownAttribute, kMalformed };
  FunDepError(Kind kind, const std::string &msg)
      : std::runtime_error(msg), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct FunDep {
  AttrSet lhs;
  AttrSet rhs;

  auto operator<=>(const FunDep &) const = default;
  bool operator==(const FunDep &) const = default;
};

std::string to_string(const FunDep &fd);

/// A set of dependencies over a fixed universe of attribute names.
class FunDeps {
 public:
  FunDeps() = default;
  /// Throws FunDepError if a side is empty or mentions an attribute outside
  /// the universe.
  FunDeps(std::vector<FunDep> deps, AttrSet universe);

  const std::set<FunDep> &deps() const { return deps_; }
  const AttrSet &universe() const { return universe_; }
  bool empty() const { return deps_.empty(); }

  /// The same dependencies over a larger universe.
  FunDeps with_universe(AttrSet universe) const;

  bool operator==(const FunDeps &) const = default;

 private:
  std::set<FunDep> deps_;
  AttrSet universe_;
};

/// `a b -> c; d -> e`, dependencies in set order; empty string when none.
std::string to_string(const FunDeps &fds);

/// Parses `a b -> c d; e -> f`. An empty or blank text yields no deps.
FunDeps parse_fundeps(std::string_view text, const AttrSet &universe);

/// Largest Y with F |= X -> Y.
AttrSet closure(const FunDeps &fds, const AttrSet &attrs);
bool derives(const FunDeps &fds, const FunDep &fd);

/// Fields nontrivially determined by some dependency of F.
AttrSet outputs(const FunDeps &fds);

/// Every dependency of each side is derivable from the other.
bool equivalent(const FunDeps &a, const FunDeps &b);

/// Union over the union of the universes.
FunDeps unite(const FunDeps &a, const FunDeps &b);

/// Attributes mentioned by any dependency.
AttrSet nodes_of(const FunDeps &fds);

/// The canonical forest of an FD set: one dependency per non-leaf node, each
/// mapping a node to the union of its children. Dependencies are listed
/// parents before children, siblings by lhs.
struct FdForest {
  std::vector<AttrSet> nodes;
  std::vector<FunDep> edges;
};

/// Canonicalises F (reduce left-hand sides, drop trivial and redundant
/// right-hand attributes, merge equal left-hand sides, split right-hand sides
/// at contained left-hand nodes) and returns the forest, or nullopt if the
/// canonical graph is not a forest.
std::optional<FdForest> tree_form(const FunDeps &fds);
bool is_tree_form(const FunDeps &fds);

}  // namespace lensdb
