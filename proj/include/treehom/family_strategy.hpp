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

// Duplicator's compositional strategy on an E family (left) against a U
// family (right).
//
// Components touched by the play are paired one to one. Within a pair the
// seven named nodes and the final node are copied by identity, and each
// chain (left chain with left chain, right chain with right chain) is played
// as a separate game on anchored chains: by copying positions when the
// lengths agree, otherwise by the exhaustive solver.

#ifndef TREEHOM_FAMILY_STRATEGY_HPP_
#define TREEHOM_FAMILY_STRATEGY_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "treehom/game.hpp"
#include "treehom/tripleu.hpp"

namespace treehom {

enum class ChainMode { kMirror, kTable };

struct ComponentPair {
  std::size_t e_component = 0;
  std::size_t u_component = 0;
  ChainMode left_mode = ChainMode::kMirror;
  ChainMode right_mode = ChainMode::kMirror;
  friend bool operator==(const ComponentPair&, const ComponentPair&) = default;
};

// Partial bijection between E components and U components, in the order the
// pairs were created.
struct LocalPairing {
  std::vector<ComponentPair> pairs;
  // Set once the truncation ran out of partner components with at most one
  // round left after the reply. From then on duplicator answers by atomic
  // types, and positions are checked for equal rank-i types (i <= 1) instead
  // of the local conditions.
  bool unpaired = false;

  const ComponentPair* by_e(std::size_t e_component) const;
  const ComponentPair* by_u(std::size_t u_component) const;
  friend bool operator==(const LocalPairing&, const LocalPairing&) = default;
};

struct LocalCheck {
  bool ok = true;
  std::string failure;  // first failing condition, empty when ok
  explicit operator bool() const { return ok; }
};

class FamilyGame {
 public:
  // Throws InvalidConfig unless e_config is an E family and u_config a U
  // family over the same sizes, and rounds >= 1. Throws SizeLimitExceeded
  // for chains or rounds beyond the solver's limits.
  FamilyGame(FamilyConfig e_config, FamilyConfig u_config, std::size_t rounds);

  const Family& family(Side s) const { return s == Side::kLeft ? *e_ : *u_; }
  const Family& e_family() const { return *e_; }
  const Family& u_family() const { return *u_; }
  std::size_t rounds() const { return rounds_; }

  GamePosition initial() const;

  // Duplicator's reply at `p` (duplicator to move) and the updated pairing.
  // When the truncation runs out of partner components and at most one round
  // remains after the reply, a reply keeping both sides of equal rank
  // (0 or 1) is played instead and the pairing is marked unpaired.
  // Throws NotLocallyWinning when `p` breaks an invariant the strategy relies
  // on, InsufficientFreshComponents when the truncation runs out of partner
  // components before the last round, IllegalMove when spoiler is to move.
  std::pair<Move, LocalPairing> duplicator_strategy(const GamePosition& p, const LocalPairing& pairing) const;

  // All conditions of a locally-i-winning position (spoiler to move), with
  // an exhaustive check of every paired chain restriction at i rounds.
  LocalCheck locally_winning_check(const GamePosition& p, const LocalPairing& pairing, std::size_t i) const;

  // Bound duplicator names when spoiler bounds side `s` with l.
  std::size_t bound_reply(Side s, std::size_t l, const LocalPairing& pairing) const;

  // Restriction of `p` to one chain of a pair: elements lying in the E chain
  // (with their partners) and every set intersected with the two chains, on
  // anchored chains of the two lengths. Throws NotLocallyWinning when an
  // element's partner lies outside the paired chain.
  GamePosition chain_restriction(const GamePosition& p, const ComponentPair& pair, bool left_chain) const;

 private:
  struct NodeRole {
    enum Kind { kFinal, kNamed, kLeftChain, kRightChain } kind = kFinal;
    std::size_t component = 0;
    std::size_t index = 0;  // named slot (l, r, a1, a2, b1, b2, b3) or chain position
  };
  struct SolverCache;

  std::pair<Move, LocalPairing> paired_reply(const GamePosition& p, const LocalPairing& pairing) const;
  std::optional<Move> low_rank_reply(const GamePosition& p) const;
  const std::vector<NodeRole>& roles(Side s) const { return s == Side::kLeft ? e_roles_ : u_roles_; }
  const FamilyComponent& component(Side s, std::size_t c) const { return family(s).components[c]; }
  NodeIndex local_element_reply(const GamePosition& p, const ComponentPair& pair, Side s, const NodeRole& role) const;
  void local_set_reply(const GamePosition& p, const ComponentPair& pair, Side s, const NodeSubset& set,
                       NodeSubset& reply) const;

  struct ChainRef {
    const std::vector<NodeIndex>* e_chain;
    const std::vector<NodeIndex>* u_chain;
    ChainMode mode;
  };
  ChainRef chain_ref(const ComponentPair& pair, bool left_chain) const;
  ComponentPair make_pair(std::size_t e_component, std::size_t u_component) const;
  std::optional<std::size_t> fresh_partner(Side spoiler_side, std::size_t component, bool left_heavy,
                                           const LocalPairing& pairing, const std::vector<bool>& taken) const;
  TripleUSpec preferred_partner(Side spoiler_side, std::size_t component, bool left_heavy) const;
  // Smallest multiplicity at which every pair, existing and requested, gets
  // a partner of its preferred shape. `fresh` lists (component, left heavy).
  std::size_t needed_multiplicity(Side spoiler_side, const std::vector<std::pair<std::size_t, bool>>& fresh,
                                  const LocalPairing& pairing) const;

  std::shared_ptr<const Family> e_, u_;
  std::vector<NodeRole> e_roles_, u_roles_;
  std::vector<std::shared_ptr<const ConstraintStructure>> chains_;  // anchored chains by length
  std::shared_ptr<SolverCache> solvers_;
  std::size_t rounds_;
};

std::string describe(const LocalPairing& pairing);

}  // namespace treehom

#endif  // TREEHOM_FAMILY_STRATEGY_HPP_
