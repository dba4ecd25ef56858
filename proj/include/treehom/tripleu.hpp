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

// Triple-u gadgets, the finite E/U family truncations built from them, and a
// few small reference structures.
//
// A standard (n,m)-triple-u has nodes l, r, a1, a2, b1, b2, b3 with
//   l < b1, a1 < b1, a1 < b2, a2 < b2, a2 < b3, r < b3, l inc r, r inc l
// and two successor chains La1_1 < ... < La1_n < a1 and La2_1 < ... < La2_m < a2.

#ifndef TREEHOM_TRIPLEU_HPP_
#define TREEHOM_TRIPLEU_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "treehom/structure.hpp"

namespace treehom {

struct TripleUSpec {
  std::size_t n = 0;  // chain below a1
  std::size_t m = 0;  // chain below a2
};

// Node indices of one triple-u inside some structure.
struct TripleUNodes {
  NodeIndex l = 0, r = 0, a1 = 0, a2 = 0, b1 = 0, b2 = 0, b3 = 0;
  std::vector<NodeIndex> left_chain;   // bottom first, ends just below a1
  std::vector<NodeIndex> right_chain;  // bottom first, ends just below a2
};

struct NamedTripleU {
  ConstraintStructure structure;
  TripleUNodes nodes;
};

NamedTripleU gen_tripleu(const TripleUSpec& spec);

enum class FamilyKind { E, U };

std::string_view to_string(FamilyKind kind);
// Accepts "E" or "U"; throws InvalidConfig otherwise.
FamilyKind parse_family_kind(std::string_view text);

struct FamilyConfig {
  FamilyKind kind = FamilyKind::U;
  // Strictly increasing chain lengths; sizes[0] is the short anchor length.
  std::vector<std::size_t> sizes;
  std::size_t multiplicity = 1;

  // Throws InvalidConfig.
  void validate() const;
};

struct FamilyComponent {
  std::string prefix;  // "W<i>"
  TripleUSpec spec;
  TripleUNodes nodes;
  NodeSubset members;
};

struct Family {
  FamilyConfig config;
  ConstraintStructure structure;
  std::vector<FamilyComponent> components;
  NodeIndex final_node = 0;
  // component_of[v] is the component holding v, or kNoComponent for d.
  std::vector<std::size_t> component_of;

  static constexpr std::size_t kNoComponent = static_cast<std::size_t>(-1);
};

// U: multiplicity copies of the (s,s)-triple-u for each s in sizes[1..].
// E: multiplicity copies of (sizes[0],s) followed by multiplicity copies of
// (s,sizes[0]) for each s in sizes[1..].
// Both add a final node d with W.l < d for every component W.
Family gen_family(const FamilyConfig& config);

// Fixpoint stage of the labelled node. Throws NotExhausted or UnknownLabel.
std::size_t placement_stage(const ConstraintStructure& s, std::string_view label);

// a < b < c < a.
ConstraintStructure lt_cycle();
// Plain triple-u edges, with a2 inc l and r inc a1 (both directions) in place
// of l inc r.
ConstraintStructure incomparable_tripleu();
// c1 < c2 < ... < cn, successor edges only.
ConstraintStructure chain_structure(std::size_t n);

}  // namespace treehom

#endif  // TREEHOM_TRIPLEU_HPP_
