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

// Words over (natural, rational) letters ordered as a universal countable
// semi-linear order, and an injective embedding of finite semi-linear orders
// into it.
//
// Ordering: u <= v iff |u| <= |v|, the naturals of u and v agree on the first
// |u| letters, the rationals agree on the first |u|-1 letters, and the last
// rational of u is <= the rational of v at the same position. The empty word
// lies below every word.

#ifndef TREEHOM_UNIVERSAL_HPP_
#define TREEHOM_UNIVERSAL_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treehom/dyadic.hpp"
#include "treehom/structure.hpp"

namespace treehom {

struct Letter {
  std::uint64_t branch = 0;
  Dyadic value;
  friend bool operator==(const Letter&, const Letter&) = default;
};

using UWord = std::vector<Letter>;

enum class WordOrder { kLess, kEqual, kGreater, kIncomparable };

std::string to_string(WordOrder order);

bool uword_leq(const UWord& u, const UWord& v);
WordOrder uword_compare(const UWord& u, const UWord& v);

// Adds q to the last rational. Throws EmptyWord.
UWord uword_add(const UWord& u, const Dyadic& q);

// "(n1,p1)(n2,p2)..." with rationals in Dyadic::to_string form; "()" for the
// empty word.
std::string format_uword(const UWord& u);
// Inverse of format_uword. Throws std::invalid_argument.
UWord parse_uword(const std::string& text);

struct InfimaClosedOrder {
  // Semi-linear order with lt transitively closed and full inc.
  ConstraintStructure order;
  // Indices in `order` of synthetic nodes.
  std::vector<NodeIndex> added;
  // injection[v] = index in `order` of original node v.
  std::vector<NodeIndex> injection;
};

// Adds one bottom node when two elements have no common lower bound. In a
// finite semi-linear order every down-set is a finite chain, so a pair with
// some common lower bound already has a greatest one and nothing else is ever
// needed. Throws NotSemilinear.
InfimaClosedOrder close_under_infima(const ConstraintStructure& s);

// Greatest common lower bound of a and b (reflexive order), or nullopt.
std::optional<NodeIndex> infimum(const ConstraintStructure& order, NodeIndex a, NodeIndex b);

// Enumeration of all nodes of `closed` in which every prefix is closed under
// pairwise infima: each next node in ascending index order is preceded by its
// missing infima with the already listed nodes, lowest first.
std::vector<NodeIndex> infima_closed_enumeration(const InfimaClosedOrder& closed);

struct EmbeddingResult {
  // phi[v] is the image of original node v.
  std::vector<UWord> phi;
  // Number of placement steps; every rational in phi has exponent <= it.
  std::size_t dyadic_depth_bound = 0;
  InfimaClosedOrder closed;
  std::vector<NodeIndex> enumeration;
  // closed_phi[w] is the image of node w of closed.order.
  std::vector<UWord> closed_phi;
};

// Throws NotSemilinear.
EmbeddingResult embed_universal(const ConstraintStructure& s);

// Injective, lt maps to kLess, inc maps to kIncomparable.
bool verify_universal_embedding(const ConstraintStructure& s, const std::vector<UWord>& phi);
bool verify_universal_embedding(const ConstraintStructure& s, const EmbeddingResult& e);

// One "<label> -> <word>" line per original node.
std::string format_embedding(const ConstraintStructure& s, const EmbeddingResult& e);

}  // namespace treehom

#endif  // TREEHOM_UNIVERSAL_HPP_
