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

#include "treehom/tripleu.hpp"

#include <utility>

#include "treehom/decision.hpp"
#include "treehom/errors.hpp"

namespace treehom {

namespace {

// Appends one triple-u to the label/edge lists, labelling nodes prefix+name.
TripleUNodes append_tripleu(const TripleUSpec& spec, const std::string& prefix, std::vector<std::string>& labels,
                            std::vector<Edge>& lt, std::vector<Edge>& inc) {
  auto add = [&](const std::string& name) {
    labels.push_back(prefix + name);
    return labels.size() - 1;
  };
  TripleUNodes t;
  t.l = add("l");
  t.r = add("r");
  t.a1 = add("a1");
  t.a2 = add("a2");
  t.b1 = add("b1");
  t.b2 = add("b2");
  t.b3 = add("b3");
  for (std::size_t i = 1; i <= spec.n; ++i) t.left_chain.push_back(add("La1_" + std::to_string(i)));
  for (std::size_t i = 1; i <= spec.m; ++i) t.right_chain.push_back(add("La2_" + std::to_string(i)));

  lt.insert(lt.end(), {{t.l, t.b1}, {t.a1, t.b1}, {t.a1, t.b2}, {t.a2, t.b2}, {t.a2, t.b3}, {t.r, t.b3}});
  inc.insert(inc.end(), {{t.l, t.r}, {t.r, t.l}});
  auto link_chain = [&](const std::vector<NodeIndex>& chain, NodeIndex apex) {
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) lt.emplace_back(chain[i], chain[i + 1]);
    if (!chain.empty()) lt.emplace_back(chain.back(), apex);
  };
  link_chain(t.left_chain, t.a1);
  link_chain(t.right_chain, t.a2);
  return t;
}

}  // namespace

NamedTripleU gen_tripleu(const TripleUSpec& spec) {
  std::vector<std::string> labels;
  std::vector<Edge> lt, inc;
  TripleUNodes nodes = append_tripleu(spec, "", labels, lt, inc);
  return NamedTripleU{ConstraintStructure(std::move(labels), std::move(lt), std::move(inc)), std::move(nodes)};
}

std::string_view to_string(FamilyKind kind) { return kind == FamilyKind::E ? "E" : "U"; }

FamilyKind parse_family_kind(std::string_view text) {
  if (text == "E" || text == "e") return FamilyKind::E;
  if (text == "U" || text == "u") return FamilyKind::U;
  throw InvalidConfig("family kind must be E or U, got '" + std::string(text) + "'");
}

void FamilyConfig::validate() const {
  if (sizes.empty()) throw InvalidConfig("family needs at least one chain length");
  for (std::size_t i = 1; i < sizes.size(); ++i)
    if (sizes[i] <= sizes[i - 1]) throw InvalidConfig("chain lengths must be strictly increasing");
  if (kind == FamilyKind::E && sizes.size() < 2) throw InvalidConfig("an E family needs at least two chain lengths");
  if (multiplicity < 1) throw InvalidConfig("multiplicity must be at least 1");
}

Family gen_family(const FamilyConfig& config) {
  config.validate();
  std::vector<TripleUSpec> specs;
  for (std::size_t j = 1; j < config.sizes.size(); ++j) {
    std::size_t s = config.sizes[j];
    if (config.kind == FamilyKind::U) {
      for (std::size_t c = 0; c < config.multiplicity; ++c) specs.push_back({s, s});
    } else {
      for (std::size_t c = 0; c < config.multiplicity; ++c) specs.push_back({config.sizes[0], s});
      for (std::size_t c = 0; c < config.multiplicity; ++c) specs.push_back({s, config.sizes[0]});
    }
  }

  Family fam;
  fam.config = config;
  std::vector<std::string> labels;
  std::vector<Edge> lt, inc;
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    std::string prefix = "W" + std::to_string(i);
    std::size_t begin = labels.size();
    TripleUNodes nodes = append_tripleu(specs[i], prefix + "_", labels, lt, inc);
    ranges.emplace_back(begin, labels.size());
    fam.components.push_back({prefix, specs[i], std::move(nodes), NodeSubset()});
  }
  labels.push_back("d");
  fam.final_node = labels.size() - 1;
  for (const auto& c : fam.components) lt.emplace_back(c.nodes.l, fam.final_node);

  const std::size_t n = labels.size();
  fam.component_of.assign(n, Family::kNoComponent);
  for (std::size_t i = 0; i < fam.components.size(); ++i) {
    fam.components[i].members = NodeSubset(n);
    for (std::size_t v = ranges[i].first; v < ranges[i].second; ++v) {
      fam.components[i].members.insert(v);
      fam.component_of[v] = i;
    }
  }
  fam.structure = ConstraintStructure(std::move(labels), std::move(lt), std::move(inc));
  return fam;
}

std::size_t placement_stage(const ConstraintStructure& s, std::string_view label) {
  NodeIndex v = s.index_of(label);
  FixpointResult fp = fixpoint_levels(s);
  if (!fp.exhausted) throw NotExhausted();
  return *fp.stage[v];
}

ConstraintStructure lt_cycle() {
  return ConstraintStructure::from_labels({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}}, {});
}

ConstraintStructure incomparable_tripleu() {
  return ConstraintStructure::from_labels(
      {"l", "r", "a1", "a2", "b1", "b2", "b3"},
      {{"l", "b1"}, {"a1", "b1"}, {"a1", "b2"}, {"a2", "b2"}, {"a2", "b3"}, {"r", "b3"}},
      {{"a2", "l"}, {"l", "a2"}, {"r", "a1"}, {"a1", "r"}});
}

ConstraintStructure chain_structure(std::size_t n) {
  std::vector<std::string> labels;
  std::vector<Edge> lt;
  for (std::size_t i = 1; i <= n; ++i) {
    labels.push_back("c" + std::to_string(i));
    if (i > 1) lt.emplace_back(i - 2, i - 1);
  }
  return ConstraintStructure(std::move(labels), std::move(lt), {});
}

}  // namespace treehom
