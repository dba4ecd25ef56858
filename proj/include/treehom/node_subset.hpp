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

#ifndef TREEHOM_NODE_SUBSET_HPP_
#define TREEHOM_NODE_SUBSET_HPP_

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace treehom {

using NodeIndex = std::size_t;

// Bitmask over the dense node indices of one structure.
class NodeSubset {
 public:
  NodeSubset() = default;
  explicit NodeSubset(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}
  NodeSubset(std::size_t universe, std::initializer_list<NodeIndex> members) : NodeSubset(universe) {
    for (NodeIndex v : members) insert(v);
  }

  static NodeSubset all(std::size_t universe) {
    NodeSubset s(universe);
    for (std::size_t i = 0; i < universe; ++i) s.insert(i);
    return s;
  }
  static NodeSubset from_mask(std::size_t universe, std::uint64_t mask) {
    if (universe < 64 && (mask >> universe) != 0) throw std::out_of_range("mask outside universe");
    NodeSubset s(universe);
    if (!s.words_.empty()) s.words_[0] = mask;
    return s;
  }
  static NodeSubset from_members(std::size_t universe, const std::vector<NodeIndex>& members) {
    NodeSubset s(universe);
    for (NodeIndex v : members) s.insert(v);
    return s;
  }

  std::size_t universe() const { return universe_; }

  bool contains(NodeIndex v) const { return v < universe_ && ((words_[v >> 6] >> (v & 63)) & 1u); }
  void insert(NodeIndex v) {
    check(v);
    words_[v >> 6] |= std::uint64_t{1} << (v & 63);
  }
  void erase(NodeIndex v) {
    check(v);
    words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  bool intersects(const NodeSubset& o) const {
    for (std::size_t i = 0; i < words_.size() && i < o.words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }
  bool is_subset_of(const NodeSubset& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t other = i < o.words_.size() ? o.words_[i] : 0;
      if (words_[i] & ~other) return false;
    }
    return true;
  }

  // Smallest member, or universe() when empty.
  NodeIndex first() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i]));
    return universe_;
  }

  std::vector<NodeIndex> members() const {
    std::vector<NodeIndex> out;
    for_each([&](NodeIndex v) { out.push_back(v); });
    return out;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        f(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  // Only valid for universes of at most 64 nodes.
  std::uint64_t to_mask() const {
    if (universe_ > 64) throw std::out_of_range("universe too large for a 64-bit mask");
    return words_.empty() ? 0 : words_[0];
  }

  NodeSubset& operator|=(const NodeSubset& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  NodeSubset& operator&=(const NodeSubset& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  NodeSubset& operator-=(const NodeSubset& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend NodeSubset operator|(NodeSubset a, const NodeSubset& b) { return a |= b; }
  friend NodeSubset operator&(NodeSubset a, const NodeSubset& b) { return a &= b; }
  friend NodeSubset operator-(NodeSubset a, const NodeSubset& b) { return a -= b; }

  friend bool operator==(const NodeSubset& a, const NodeSubset& b) {
    return a.universe_ == b.universe_ && a.words_ == b.words_;
  }
  friend bool operator<(const NodeSubset& a, const NodeSubset& b) {
    if (a.universe_ != b.universe_) return a.universe_ < b.universe_;
    for (std::size_t i = a.words_.size(); i-- > 0;)
      if (a.words_[i] != b.words_[i]) return a.words_[i] < b.words_[i];
    return false;
  }

  std::size_t hash() const {
    std::size_t h = universe_ * 0x9e3779b97f4a7c15ull;
    for (auto w : words_) h = (h ^ w) * 0x100000001b3ull + (h >> 29);
    return h;
  }

 private:
  void check(NodeIndex v) const {
    if (v >= universe_) throw std::out_of_range("node index outside subset universe");
  }
  void same_universe(const NodeSubset& o) const {
    if (o.universe_ != universe_) throw std::invalid_argument("subsets over different universes");
  }

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace treehom

#endif  // TREEHOM_NODE_SUBSET_HPP_
