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

// Finite {<, inc}-constraint graphs and the primitive notions built on them:
// lt-connectedness, central points, restriction, semi-linearity, and the
// exhaustive subset criterion.

#ifndef TREEHOM_STRUCTURE_HPP_
#define TREEHOM_STRUCTURE_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "treehom/node_subset.hpp"

namespace treehom {

using Edge = std::pair<NodeIndex, NodeIndex>;

// A node set with two arbitrary directed edge relations: lt ("must map
// strictly below") and inc ("must map incomparable"). No order axioms are
// imposed; self-loops are allowed. Immutable once built.
class ConstraintStructure {
 public:
  ConstraintStructure() = default;

  // Throws std::invalid_argument on duplicate/empty/whitespace labels or
  // out-of-range endpoints. Duplicate edges collapse.
  ConstraintStructure(std::vector<std::string> labels, std::vector<Edge> lt, std::vector<Edge> inc);

  // Same, with edges given by label.
  static ConstraintStructure from_labels(
      std::vector<std::string> labels,
      const std::vector<std::pair<std::string, std::string>>& lt,
      const std::vector<std::pair<std::string, std::string>>& inc);

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(NodeIndex v) const { return labels_.at(v); }
  std::optional<NodeIndex> find(std::string_view label) const;
  // Throws UnknownLabel.
  NodeIndex index_of(std::string_view label) const;

  // Sorted, duplicate-free.
  const std::vector<Edge>& lt_edges() const { return lt_; }
  const std::vector<Edge>& inc_edges() const { return inc_; }

  bool lt(NodeIndex a, NodeIndex b) const { return lt_out_[a].contains(b); }
  bool inc(NodeIndex a, NodeIndex b) const { return inc_out_[a].contains(b); }

  const NodeSubset& lt_successors(NodeIndex v) const { return lt_out_[v]; }
  const NodeSubset& lt_predecessors(NodeIndex v) const { return lt_in_[v]; }
  // Nodes joined to v by an inc-edge in either direction.
  const NodeSubset& inc_neighbours(NodeIndex v) const { return inc_any_[v]; }

  NodeSubset all_nodes() const { return NodeSubset::all(size()); }
  NodeSubset subset(const std::vector<std::string>& labels) const;

  friend bool operator==(const ConstraintStructure& a, const ConstraintStructure& b) {
    return a.labels_ == b.labels_ && a.lt_ == b.lt_ && a.inc_ == b.inc_;
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::vector<Edge> lt_;
  std::vector<Edge> inc_;
  std::vector<NodeSubset> lt_out_, lt_in_, inc_out_, inc_any_;
};

// Text format, one directive per line, '#' starts a comment:
//   node <label>
//   lt <label> <label>
//   inc <label> <label>
ConstraintStructure parse_structure(std::string_view text);
ConstraintStructure load_structure(const std::string& path);
std::string format_structure(const ConstraintStructure& s);

// Partition of `b` into maximal lt-connected pieces (edge direction ignored,
// inc-edges ignored), ordered by smallest member.
std::vector<NodeSubset> connected_components(const ConstraintStructure& s, const NodeSubset& b);

// c in b such that no a in b (a == c included) has a inc c, c inc a or a < c.
NodeSubset central_points(const ConstraintStructure& s, const NodeSubset& b);

// Node order of the result follows ascending index in `s`.
ConstraintStructure restriction(const ConstraintStructure& s, const NodeSubset& b);

// lt is a strict partial order whose down-sets are chains, and inc is
// exactly its (symmetric) incomparability relation.
bool is_semilinear_order(const ConstraintStructure& s);

inline constexpr std::size_t kSubsetOracleLimit = 20;

// Every non-empty lt-connected subset has a central point. Enumerates all
// 2^n - 1 subsets; throws SizeLimitExceeded above kSubsetOracleLimit nodes.
bool subset_criterion_oracle(const ConstraintStructure& s);

// Same, but reports the first offending subset (smallest mask) if any.
std::optional<NodeSubset> subset_criterion_counterexample(const ConstraintStructure& s);

std::string format_subset(const ConstraintStructure& s, const NodeSubset& b);

}  // namespace treehom

#endif  // TREEHOM_STRUCTURE_HPP_
