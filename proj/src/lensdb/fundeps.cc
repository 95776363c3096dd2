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


#include "lensdb/fundeps.h"

#include <fmt/core.h>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <sstream>
#include <utility>

namespace lensdb {

namespace {

std::string join_attrs(const AttrSet &attrs) {
  std::string out;
  for (const auto &a : attrs) {
    if (!out.empty()) out += ' ';
    out += a;
  }
  return out;
}

void require_known(const AttrSet &attrs, const AttrSet &universe) {
  for (const auto &a : attrs) {
    if (!universe.contains(a)) {
      throw FunDepError(FunDepError::Kind::kUnknownAttribute,
                        fmt::format("unknown attribute '{}' (columns are {})",
                                    a, to_string(universe)));
    }
  }
}

bool subset(const AttrSet &a, const AttrSet &b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

AttrSet set_union(const AttrSet &a, const AttrSet &b) {
  AttrSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

AttrSet set_minus(const AttrSet &a, const AttrSet &b) {
  AttrSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::inserter(out, out.end()));
  return out;
}

bool intersects(const AttrSet &a, const AttrSet &b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

// Bitmask encoding of attribute sets, used when the universe is small.
/// Numbers the attributes of a small problem so closures run on bitmasks.
class MaskCodec {
 public:
  template <typename Deps>
  MaskCodec(const Deps &deps, const AttrSet &extra) {
    for (const auto &fd : deps) {
      for (const auto &a : fd.lhs) names_.push_back(&a);
      for (const auto &a : fd.rhs) names_.push_back(&a);
    }
    for (const auto &a : extra) names_.push_back(&a);
    auto less = [](const std::string *a, const std::string *b) { return *a < *b; };
    auto same = [](const std::string *a, const std::string *b) { return *a == *b; };
    std::sort(names_.begin(), names_.end(), less);
    names_.erase(std::unique(names_.begin(), names_.end(), same), names_.end());
  }

  bool fits() const { return names_.size() <= 64; }

  /// Attributes not numbered by this codec are ignored.
  std::uint64_t encode(const AttrSet &attrs) const {
    std::uint64_t m = 0;
    for (const auto &a : attrs) {
      auto it = std::lower_bound(
          names_.begin(), names_.end(), a,
          [](const std::string *n, const std::string &v) { return *n < v; });
      if (it != names_.end() && **it == a) {
        m |= std::uint64_t{1} << (it - names_.begin());
      }
    }
    return m;
  }

  AttrSet decode(std::uint64_t m) const {
    AttrSet out;
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if ((m >> i) & 1U) out.insert(*names_[i]);
    }
    return out;
  }

 private:
  std::vector<const std::string *> names_;
};

template <typename Deps>
std::uint64_t closure_mask(const MaskCodec &codec, const Deps &deps,
                           const AttrSet &attrs) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> masks;
  masks.reserve(deps.size());
  for (const auto &fd : deps) {
    masks.emplace_back(codec.encode(fd.lhs), codec.encode(fd.rhs));
  }
  std::uint64_t cur = codec.encode(attrs);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto &[l, r] : masks) {
      if ((l & ~cur) == 0 && (r & ~cur) != 0) {
        cur |= r;
        changed = true;
      }
    }
  }
  return cur;
}

template <typename Deps>
AttrSet closure_of(const Deps &deps, const AttrSet &attrs) {
  MaskCodec codec(deps, attrs);
  if (codec.fits()) return codec.decode(closure_mask(codec, deps, attrs));
  AttrSet cur = attrs;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto &fd : deps) {
      if (subset(fd.lhs, cur) && !subset(fd.rhs, cur)) {
        cur.insert(fd.rhs.begin(), fd.rhs.end());
        changed = true;
      }
    }
  }
  return cur;
}

std::vector<FunDep> as_vector(const FunDeps &fds) {
  return {fds.deps().begin(), fds.deps().end()};
}

}  // namespace

std::string to_string(const FunDep &fd) {
  return fmt::format("{} -> {}", join_attrs(fd.lhs), join_attrs(fd.rhs));
}

FunDeps::FunDeps(std::vector<FunDep> deps, AttrSet universe)
    : universe_(std::move(universe)) {
  for (auto &fd : deps) {
    if (fd.lhs.empty() || fd.rhs.empty()) {
      throw FunDepError(FunDepError::Kind::kMalformed,
                        fmt::format("dependency '{}' has an empty side",
                                    to_string(fd)));
    }
    require_known(fd.lhs, universe_);
    require_known(fd.rhs, universe_);
    deps_.insert(std::move(fd));
  }
}

FunDeps FunDeps::with_universe(AttrSet universe) const {
  return FunDeps(as_vector(*this), std::move(universe));
}

std::string to_string(const FunDeps &fds) {
  std::string out;
  for (const auto &fd : fds.deps()) {
    if (!out.empty()) out += "; ";
    out += to_string(fd);
  }
  return out;
}

FunDeps parse_fundeps(std::string_view text, const AttrSet &universe) {
  std::vector<FunDep> deps;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t semi = text.find(';', start);
    std::string_view part = text.substr(
        start, semi == std::string_view::npos ? text.size() - start
                                              : semi - start);
    start = semi == std::string_view::npos ? text.size() + 1 : semi + 1;
    if (part.find_first_not_of(" \t\r\n") == std::string_view::npos) continue;
    std::size_t arrow = part.find("->");
    if (arrow == std::string_view::npos ||
        part.find("->", arrow + 2) != std::string_view::npos) {
      throw FunDepError(FunDepError::Kind::kMalformed,
                        fmt::format("expected 'lhs -> rhs' in '{}'", part));
    }
    auto words = [](std::string_view s) {
      AttrSet out;
      std::istringstream in{std::string(s)};
      for (std::string w; in >> w;) out.insert(w);
      return out;
    };
    FunDep fd{words(part.substr(0, arrow)), words(part.substr(arrow + 2))};
    if (fd.lhs.empty() || fd.rhs.empty()) {
      throw FunDepError(FunDepError::Kind::kMalformed,
                        fmt::format("dependency '{}' has an empty side", part));
    }
    deps.push_back(std::move(fd));
  }
  return FunDeps(std::move(deps), universe);
}

AttrSet closure(const FunDeps &fds, const AttrSet &attrs) {
  require_known(attrs, fds.universe());
  return closure_of(fds.deps(), attrs);
}

namespace {

bool derives_unchecked(const FunDeps &fds, const FunDep &fd) {
  MaskCodec codec(fds.deps(), fd.lhs);
  if (codec.fits()) {
    std::uint64_t rhs = codec.encode(fd.rhs);
    // an rhs attribute unknown to every dependency and to lhs is underivable
    if (static_cast<std::size_t>(std::popcount(rhs)) != fd.rhs.size()) {
      return false;
    }
    return (rhs & ~closure_mask(codec, fds.deps(), fd.lhs)) == 0;
  }
  return subset(fd.rhs, closure_of(fds.deps(), fd.lhs));
}

}  // namespace

bool derives(const FunDeps &fds, const FunDep &fd) {
  require_known(fd.lhs, fds.universe());
  require_known(fd.rhs, fds.universe());
  return derives_unchecked(fds, fd);
}

AttrSet outputs(const FunDeps &fds) {
  const auto &deps = fds.deps();
  AttrSet out;
  for (const auto &fd : deps) {
    AttrSet c = closure_of(deps, fd.lhs);
    for (const auto &a : c) {
      if (!fd.lhs.contains(a)) out.insert(a);
    }
  }
  return out;
}

bool equivalent(const FunDeps &a, const FunDeps &b) {
  auto all_derivable = [](const FunDeps &from, const FunDeps &to) {
    return std::all_of(to.deps().begin(), to.deps().end(),
                       [&](const FunDep &fd) { return derives_unchecked(from, fd); });
  };
  return all_derivable(a, b) && all_derivable(b, a);
}

FunDeps unite(const FunDeps &a, const FunDeps &b) {
  std::vector<FunDep> deps = as_vector(a);
  deps.insert(deps.end(), b.deps().begin(), b.deps().end());
  return FunDeps(std::move(deps), set_union(a.universe(), b.universe()));
}

AttrSet nodes_of(const FunDeps &fds) {
  AttrSet out;
  for (const auto &fd : fds.deps()) {
    out.insert(fd.lhs.begin(), fd.lhs.end());
    out.insert(fd.rhs.begin(), fd.rhs.end());
  }
  return out;
}

namespace {

// Merges dependencies with equal left-hand sides, removes trivial right-hand
// attributes and drops dependencies left empty.
std::vector<FunDep> merge_by_lhs(const std::vector<FunDep> &deps) {
  std::map<AttrSet, AttrSet> merged;
  for (const auto &fd : deps) {
    AttrSet &rhs = merged[fd.lhs];
    for (const auto &a : fd.rhs) {
      if (!fd.lhs.contains(a)) rhs.insert(a);
    }
  }
  std::vector<FunDep> out;
  for (auto &[lhs, rhs] : merged) {
    if (!rhs.empty()) out.push_back({lhs, std::move(rhs)});
  }
  return out;
}

std::vector<FunDep> canonicalize(std::vector<FunDep> deps) {
  // Extraneous left-hand attributes.
  for (auto &fd : deps) {
    for (const std::string &a : AttrSet(fd.lhs)) {
      if (fd.lhs.size() == 1) break;
      AttrSet reduced = fd.lhs;
      reduced.erase(a);
      if (subset(fd.rhs, closure_of(deps, reduced))) fd.lhs = std::move(reduced);
    }
  }
  deps = merge_by_lhs(deps);
  // Right-hand attributes still derivable without themselves.
  for (auto &fd : deps) {
    for (const std::string &a : AttrSet(fd.rhs)) {
      fd.rhs.erase(a);
      if (!closure_of(deps, fd.lhs).contains(a)) fd.rhs.insert(a);
    }
  }
  return merge_by_lhs(deps);
}

}  // namespace

std::optional<FdForest> tree_form(const FunDeps &fds) {
  std::vector<FunDep> deps = canonicalize(as_vector(fds));

  for (std::size_t i = 0; i < deps.size(); ++i) {
    for (std::size_t j = i + 1; j < deps.size(); ++j) {
      if (intersects(deps[i].lhs, deps[j].lhs)) return std::nullopt;
    }
  }

  std::vector<AttrSet> nodes;
  std::map<AttrSet, std::vector<std::size_t>> children;  // lhs -> dep indices
  std::map<AttrSet, int> incoming;
  for (const auto &fd : deps) {
    nodes.push_back(fd.lhs);
    incoming[fd.lhs] = 0;
  }
  for (std::size_t i = 0; i < deps.size(); ++i) {
    AttrSet leaf = deps[i].rhs;
    for (std::size_t j = 0; j < deps.size(); ++j) {
      if (i == j || !intersects(deps[j].lhs, deps[i].rhs)) continue;
      if (!subset(deps[j].lhs, deps[i].rhs)) return std::nullopt;
      leaf = set_minus(leaf, deps[j].lhs);
      children[deps[i].lhs].push_back(j);
      if (++incoming[deps[j].lhs] > 1) return std::nullopt;
    }
    if (!leaf.empty()) nodes.push_back(std::move(leaf));
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      if (intersects(nodes[i], nodes[j])) return std::nullopt;
    }
  }

  // Breadth-first from the roots; a cycle leaves dependencies unvisited.
  FdForest forest;
  std::vector<std::size_t> queue;
  for (std::size_t i = 0; i < deps.size(); ++i) {
    if (incoming[deps[i].lhs] == 0) queue.push_back(i);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const FunDep &fd = deps[queue[head]];
    forest.edges.push_back(fd);
    std::vector<std::size_t> kids = children[fd.lhs];
    std::sort(kids.begin(), kids.end(), [&](std::size_t a, std::size_t b) {
      return deps[a].lhs < deps[b].lhs;
    });
    queue.insert(queue.end(), kids.begin(), kids.end());
  }
  if (forest.edges.size() != deps.size()) return std::nullopt;
  std::sort(nodes.begin(), nodes.end());
  forest.nodes = std::move(nodes);
  return forest;
}

bool is_tree_form(const FunDeps &fds) { return tree_form(fds).has_value(); }

}  // namespace lensdb
