// Copyright 2026 The Treehom Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "treehom/oracles.hpp"

#include <bit>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "treehom/errors.hpp"

namespace treehom {

namespace {

// rel[x] has bit y set iff x precedes y.
using Relation = std::vector<std::uint32_t>;

void close_transitively(Relation& rel) {
  const std::size_t n = rel.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (rel[i] >> k & 1u) rel[i] |= rel[k];
}

class ExtensionSearch {
 public:
  explicit ExtensionSearch(const ConstraintStructure& s) : s_(s), n_(s.size()) {
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t y = x + 1; y < n_; ++y) pairs_.emplace_back(x, y);
  }

  std::optional<Relation> run() {
    Relation rel(n_, 0);
    for (const auto& [x, y] : s_.lt_edges()) rel[x] |= 1u << y;
    for (const auto& [x, y] : s_.inc_edges())
      if (x == y) return std::nullopt;
    close_transitively(rel);
    if (!consistent(rel, Relation(n_, 0))) return std::nullopt;
    Relation apart(n_, 0);
    if (search(0, rel, apart)) return found_;
    return std::nullopt;
  }

 private:
  // `apart` records pairs already decided to be incomparable.
  bool consistent(const Relation& rel, const Relation& apart) const {
    for (std::size_t x = 0; x < n_; ++x) {
      if (rel[x] >> x & 1u) return false;
      std::uint32_t comparable = rel[x];
      for (std::size_t y = 0; y < n_; ++y)
        if (rel[y] >> x & 1u) comparable |= 1u << y;
      if (comparable & apart[x]) return false;
      for (std::size_t y : s_.inc_neighbours(x).members())
        if (comparable >> y & 1u) return false;
    }
    return true;
  }

  bool semilinear(const Relation& rel) const {
    for (std::size_t p = 0; p < n_; ++p) {
      std::vector<std::size_t> below;
      for (std::size_t q = 0; q < n_; ++q)
        if (rel[q] >> p & 1u) below.push_back(q);
      for (std::size_t i = 0; i < below.size(); ++i)
        for (std::size_t j = i + 1; j < below.size(); ++j) {
          auto a = below[i], b = below[j];
          if (!(rel[a] >> b & 1u) && !(rel[b] >> a & 1u)) return false;
        }
    }
    return true;
  }

  bool search(std::size_t next, const Relation& rel, const Relation& apart) {
    while (next < pairs_.size()) {
      auto [x, y] = pairs_[next];
      bool decided = (rel[x] >> y & 1u) || (rel[y] >> x & 1u) || (apart[x] >> y & 1u);
      if (!decided) break;
      ++next;
    }
    if (next == pairs_.size()) {
      if (!semilinear(rel)) return false;
      found_ = rel;
      return true;
    }
    auto [x, y] = pairs_[next];
    for (int choice = 0; choice < 3; ++choice) {
      Relation r = rel, a = apart;
      if (choice == 0) {
        r[x] |= 1u << y;
      } else if (choice == 1) {
        r[y] |= 1u << x;
      } else {
        a[x] |= 1u << y;
        a[y] |= 1u << x;
      }
      close_transitively(r);
      if (consistent(r, a) && search(next + 1, r, a)) return true;
    }
    return false;
  }

  const ConstraintStructure& s_;
  std::size_t n_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  Relation found_;
};

// Prefix-closed part of the complete tree touched so far.
class PartialTree {
 public:
  explicit PartialTree(std::size_t branching) : branching_(branching) { add(kNone); }

  std::size_t size() const { return parent_.size(); }
  std::size_t depth(std::size_t t) const { return depth_[t]; }
  std::size_t children(std::size_t t) const { return children_[t]; }
  bool can_grow(std::size_t t) const { return children_[t] < branching_; }

  std::size_t add(std::size_t parent) {
    parent_.push_back(parent);
    depth_.push_back(parent == kNone ? 0 : depth_[parent] + 1);
    children_.push_back(0);
    child_list_.emplace_back();
    if (parent != kNone) {
      ++children_[parent];
      child_list_[parent].push_back(size() - 1);
    }
    return size() - 1;
  }
  void pop() {
    std::size_t p = parent_.back();
    if (p != kNone) {
      --children_[p];
      child_list_[p].pop_back();
    }
    parent_.pop_back();
    depth_.pop_back();
    children_.pop_back();
    child_list_.pop_back();
  }
  const std::vector<std::size_t>& child_list(std::size_t t) const { return child_list_[t]; }

  bool below(std::size_t a, std::size_t b) const {
    if (depth_[a] >= depth_[b]) return false;
    while (depth_[b] > depth_[a]) b = parent_[b];
    return a == b;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::size_t branching_;
  std::vector<std::size_t> parent_, depth_, children_;
  std::vector<std::vector<std::size_t>> child_list_;
};

// Completeness: take any homomorphism into any tree of height <= h and close
// its image downward. Every node of that downward closure has at most one
// child per structure node above it, so branching is bounded by the node
// count and the closure embeds into the complete tree of height h with that
// branching. Children of one tree node are interchangeable, so a fresh child
// is only ever opened at the next unused index.
class TreeHomSearch {
 public:
  TreeHomSearch(const ConstraintStructure& s, std::size_t height, std::size_t branching)
      : s_(s), height_(height), tree_(branching), image_(s.size()) {}

  bool run() {
    for (std::size_t v = 0; v < s_.size(); ++v)
      if (s_.lt(v, v) || s_.inc(v, v)) return false;
    return assign(0);
  }

 private:
  bool compatible(std::size_t v, std::size_t t) const {
    for (std::size_t u = 0; u < v; ++u) {
      std::size_t su = image_[u];
      if (s_.lt(u, v) && !tree_.below(su, t)) return false;
      if (s_.lt(v, u) && !tree_.below(t, su)) return false;
      if ((s_.inc(u, v) || s_.inc(v, u)) && (su == t || tree_.below(su, t) || tree_.below(t, su))) return false;
    }
    return true;
  }

  bool assign(std::size_t v) {
    if (v == s_.size()) return true;
    return place_under(v, 0);
  }

  // Tries every existing node in the subtree of t, then fresh chains hanging
  // from each of them.
  bool place_under(std::size_t v, std::size_t t) {
    if (try_image(v, t)) return true;
    auto kids = tree_.child_list(t);
    for (std::size_t c : kids)
      if (place_under(v, c)) return true;
    return fresh_chain(v, t);
  }

  bool fresh_chain(std::size_t v, std::size_t t) {
    std::size_t added = 0;
    std::size_t at = t;
    bool ok = false;
    while (tree_.depth(at) < height_ && tree_.can_grow(at)) {
      at = tree_.add(at);
      ++added;
      if (try_image(v, at)) {
        ok = true;
        break;
      }
    }
    if (!ok)
      for (; added > 0; --added) tree_.pop();
    return ok;
  }

  bool try_image(std::size_t v, std::size_t t) {
    if (!compatible(v, t)) return false;
    image_[v] = t;
    std::size_t mark = tree_.size();
    if (assign(v + 1)) return true;
    while (tree_.size() > mark) tree_.pop();
    return false;
  }

  const ConstraintStructure& s_;
  std::size_t height_;
  PartialTree tree_;
  std::vector<std::size_t> image_;
};

}  // namespace

std::optional<ConstraintStructure> extension_oracle(const ConstraintStructure& s) {
  if (s.size() > kExtensionOracleLimit)
    throw SizeLimitExceeded("extension oracle handles at most " + std::to_string(kExtensionOracleLimit) +
                            " nodes, got " + std::to_string(s.size()));
  auto rel = ExtensionSearch(s).run();
  if (!rel) return std::nullopt;
  std::vector<Edge> lt, inc;
  const std::size_t n = s.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if ((*rel)[x] >> y & 1u) lt.emplace_back(x, y);
      else if (x != y && !((*rel)[y] >> x & 1u)) inc.emplace_back(x, y);
    }
  return ConstraintStructure(s.labels(), std::move(lt), std::move(inc));
}

bool brute_force_tree_hom_oracle(const ConstraintStructure& s, std::size_t height, std::size_t branching) {
  if (s.size() > kTreeOracleNodeLimit || height > kTreeOracleHeightLimit)
    throw SizeLimitExceeded("tree oracle handles at most " + std::to_string(kTreeOracleNodeLimit) +
                            " nodes and height " + std::to_string(kTreeOracleHeightLimit));
  if (branching == 0) branching = 1;
  return TreeHomSearch(s, height, branching).run();
}

}  // namespace treehom
