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

#include "treehom/decision.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "treehom/errors.hpp"

namespace treehom {

std::size_t FixpointResult::stage_count() const {
  std::size_t count = 0;
  for (const auto& st : stage)
    if (st) count = std::max(count, *st + 1);
  return count;
}

NodeSubset FixpointResult::stalled_component() const {
  if (exhausted || trace.empty() || trace.back().empty()) return NodeSubset(residual.universe());
  return trace.back().front().component;
}

FixpointResult fixpoint_levels(const ConstraintStructure& s) {
  if (s.empty()) throw EmptyStructure();
  FixpointResult out;
  out.stage.assign(s.size(), std::nullopt);
  NodeSubset residual = s.all_nodes();
  for (std::size_t stage = 0; !residual.empty(); ++stage) {
    std::vector<StageStep> steps;
    NodeSubset removed(s.size());
    for (auto& comp : connected_components(s, residual)) {
      NodeSubset central = central_points(s, comp);
      removed |= central;
      steps.push_back({std::move(comp), std::move(central)});
    }
    out.trace.push_back(std::move(steps));
    if (removed.empty()) break;
    removed.for_each([&](NodeIndex v) { out.stage[v] = stage; });
    residual -= removed;
  }
  out.exhausted = residual.empty();
  out.residual = std::move(residual);
  return out;
}

bool decide_semilinear(const ConstraintStructure& s) { return fixpoint_levels(s).exhausted; }
bool decide_ordinal_tree(const ConstraintStructure& s) { return fixpoint_levels(s).exhausted; }
bool decide_tree(const ConstraintStructure& s) { return fixpoint_levels(s).exhausted; }

NodeSubset LevelSets::covered() const {
  if (levels.empty()) return NodeSubset();
  NodeSubset all(levels.front().universe());
  for (const auto& l : levels) all |= l;
  return all;
}

LevelSets compute_level_sets(const ConstraintStructure& s, std::size_t h) {
  if (s.empty()) throw EmptyStructure();
  LevelSets out;
  NodeSubset first(s.size());
  for (NodeIndex v = 0; v < s.size(); ++v)
    if (s.inc_neighbours(v).empty() && s.lt_predecessors(v).empty()) first.insert(v);
  NodeSubset residual = s.all_nodes() - first;
  out.levels.push_back(std::move(first));
  for (std::size_t i = 1; i <= h; ++i) {
    NodeSubset level(s.size());
    for (const auto& comp : connected_components(s, residual)) level |= central_points(s, comp);
    residual -= level;
    out.levels.push_back(std::move(level));
  }
  return out;
}

bool decide_tree_height(const ConstraintStructure& s, std::size_t h) {
  return compute_level_sets(s, h).covered().count() == s.size();
}

WitnessTree::WitnessTree(std::vector<std::size_t> parents, std::vector<std::string> names)
    : parent_(std::move(parents)), names_(std::move(names)) {
  if (parent_.empty() || parent_[0] != kNoParent) throw std::invalid_argument("tree needs a root at index 0");
  if (names_.size() != parent_.size()) throw std::invalid_argument("one name per tree node required");
  depth_.assign(parent_.size(), 0);
  for (std::size_t t = 1; t < parent_.size(); ++t) {
    if (parent_[t] >= t) throw std::invalid_argument("parent must precede child");
    depth_[t] = depth_[parent_[t]] + 1;
  }
}

std::size_t WitnessTree::height() const {
  return depth_.empty() ? 0 : *std::max_element(depth_.begin(), depth_.end());
}

bool WitnessTree::strictly_below(std::size_t a, std::size_t b) const {
  if (a >= size() || b >= size() || depth_[a] >= depth_[b]) return false;
  while (depth_[b] > depth_[a]) b = parent_[b];
  return a == b;
}

bool WitnessTree::incomparable(std::size_t a, std::size_t b) const {
  return a != b && !strictly_below(a, b) && !strictly_below(b, a);
}

Witness build_witness(const ConstraintStructure& s) {
  FixpointResult fp = fixpoint_levels(s);
  if (!fp.exhausted) throw NoHomomorphism(fp.stalled_component().members());

  // Component ids are positions in the flattened trace; road(c) lists the
  // ids of the components containing c at stages 0..stage(c).
  std::vector<std::vector<std::size_t>> road(s.size());
  std::size_t id = 0;
  for (const auto& steps : fp.trace)
    for (const auto& step : steps) {
      step.component.for_each([&](NodeIndex v) { road[v].push_back(id); });
      ++id;
    }

  std::map<std::vector<std::size_t>, std::size_t> tree_index;
  std::vector<std::size_t> parents{WitnessTree::kNoParent};
  std::vector<NodeSubset> preimage{NodeSubset(s.size())};
  tree_index[{}] = 0;
  // Shorter roads first so that parents get smaller indices.
  std::vector<NodeIndex> order(s.size());
  for (NodeIndex v = 0; v < s.size(); ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(), [&](NodeIndex a, NodeIndex b) { return *fp.stage[a] < *fp.stage[b]; });

  NodeMapping mapping(s.size());
  for (NodeIndex v : order) {
    auto [it, inserted] = tree_index.try_emplace(road[v], parents.size());
    if (inserted) {
      std::vector<std::size_t> prefix(road[v].begin(), road[v].end() - 1);
      auto parent = tree_index.find(prefix);
      if (parent == tree_index.end()) throw std::logic_error("road prefix missing from witness tree");
      parents.push_back(parent->second);
      preimage.emplace_back(s.size());
    }
    mapping[v] = it->second;
    preimage[it->second].insert(v);
  }

  std::vector<std::string> names{"root"};
  for (std::size_t t = 1; t < preimage.size(); ++t) names.push_back(format_subset(s, preimage[t]));
  return Witness{WitnessTree(std::move(parents), std::move(names)), std::move(mapping)};
}

bool verify_homomorphism(const ConstraintStructure& s, const WitnessTree& tree, const NodeMapping& mapping) {
  if (mapping.size() != s.size()) return false;
  for (std::size_t t : mapping)
    if (t >= tree.size()) return false;
  for (const auto& [x, y] : s.lt_edges())
    if (!tree.strictly_below(mapping[x], mapping[y])) return false;
  for (const auto& [x, y] : s.inc_edges())
    if (!tree.incomparable(mapping[x], mapping[y])) return false;
  return true;
}

}  // namespace treehom
