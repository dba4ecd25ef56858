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

// Decision procedures for homomorphisms from constraint structures into
// tree-like orders, plus the witness construction that backs a positive
// answer.
//
// On finite inputs, "maps into a semi-linear order", "maps into an ordinal
// tree" and "maps into a tree" are the same question: every one of them holds
// exactly when the central-point fixpoint removes every node. The three
// decide_* entry points are kept separate for API clarity and all delegate to
// fixpoint_levels.

#ifndef TREEHOM_DECISION_HPP_
#define TREEHOM_DECISION_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "treehom/node_subset.hpp"
#include "treehom/structure.hpp"

namespace treehom {

// One component examined at one stage, with the central points removed from it.
struct StageStep {
  NodeSubset component;
  NodeSubset central;
};

struct FixpointResult {
  // stage[v] is the stage at which v was removed; nullopt for residual nodes.
  std::vector<std::optional<std::size_t>> stage;
  bool exhausted = false;
  NodeSubset residual;
  // trace[a] lists every component of the stage-a residual in ascending
  // smallest-member order. A stalled run ends with one extra entry whose
  // components all have empty `central`.
  std::vector<std::vector<StageStep>> trace;

  // Number of stages that removed something.
  std::size_t stage_count() const;
  // First residual component; empty when exhausted.
  NodeSubset stalled_component() const;
};

// Throws EmptyStructure.
FixpointResult fixpoint_levels(const ConstraintStructure& s);

bool decide_semilinear(const ConstraintStructure& s);
bool decide_ordinal_tree(const ConstraintStructure& s);
bool decide_tree(const ConstraintStructure& s);

struct LevelSets {
  std::vector<NodeSubset> levels;  // A_0 .. A_h
  NodeSubset covered() const;
};

// A_0: nodes with no inc-edge of any kind and no incoming lt-edge anywhere in
// the structure. A_{i+1}: central points of the lt-components of what is
// left after removing A_0 .. A_i.
LevelSets compute_level_sets(const ConstraintStructure& s, std::size_t h);

// True iff the structure maps into a tree of height h, where height counts
// edges on the longest root-to-leaf path.
bool decide_tree_height(const ConstraintStructure& s, std::size_t h);

// Finite rooted tree. Node 0 is always the root.
class WitnessTree {
 public:
  static constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);

  WitnessTree() = default;
  // parents[0] must be kNoParent; every other entry must point to a smaller
  // index. Throws std::invalid_argument otherwise.
  WitnessTree(std::vector<std::size_t> parents, std::vector<std::string> names);

  std::size_t size() const { return parent_.size(); }
  std::size_t root() const { return 0; }
  std::size_t parent(std::size_t t) const { return parent_.at(t); }
  const std::string& name(std::size_t t) const { return names_.at(t); }
  std::size_t depth(std::size_t t) const { return depth_.at(t); }
  // Longest root-to-leaf path, counted in edges.
  std::size_t height() const;
  // a is a proper ancestor of b.
  bool strictly_below(std::size_t a, std::size_t b) const;
  bool incomparable(std::size_t a, std::size_t b) const;

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::string> names_;
  std::vector<std::size_t> depth_;
};

// node index of the structure -> tree node index.
using NodeMapping = std::vector<std::size_t>;

struct Witness {
  WitnessTree tree;
  NodeMapping mapping;
};

// Throws EmptyStructure, or NoHomomorphism carrying the stalled component.
Witness build_witness(const ConstraintStructure& s);

bool verify_homomorphism(const ConstraintStructure& s, const WitnessTree& tree, const NodeMapping& mapping);

}  // namespace treehom

#endif  // TREEHOM_DECISION_HPP_
