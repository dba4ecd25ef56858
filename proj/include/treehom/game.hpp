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

// Rules engine for the weak monadic second-order Ehrenfeucht-Fraisse game
// with bound moves, played on two finite constraint structures.
//
// A round is one of:
//   element: spoiler picks a node on one side, duplicator a node on the other;
//   set:     spoiler picks a finite subset on one side, duplicator one on the
//            other;
//   bound:   spoiler names a side and l, duplicator names m, spoiler picks a
//            subset of size >= m on that side, duplicator answers with a
//            subset of size >= l on the other side.
// A player who has no legal move loses. After the last round duplicator wins
// iff the chosen elements and sets form a partial isomorphism.

#ifndef TREEHOM_GAME_HPP_
#define TREEHOM_GAME_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "treehom/structure.hpp"

namespace treehom {

enum class Side { kLeft, kRight };
enum class Player { kSpoiler, kDuplicator };

inline Side other(Side s) { return s == Side::kLeft ? Side::kRight : Side::kLeft; }
std::string_view to_string(Side s);
std::string_view to_string(Player p);

struct ElementMove {
  Side side;
  NodeIndex node;
  friend bool operator==(const ElementMove&, const ElementMove&) = default;
};
struct DupElementMove {
  NodeIndex node;
  friend bool operator==(const DupElementMove&, const DupElementMove&) = default;
};
struct SetMove {
  Side side;
  NodeSubset set;
  friend bool operator==(const SetMove&, const SetMove&) = default;
};
struct DupSetMove {
  NodeSubset set;
  friend bool operator==(const DupSetMove&, const DupSetMove&) = default;
};
struct BoundMove {
  Side side;
  std::size_t l;
  friend bool operator==(const BoundMove&, const BoundMove&) = default;
};
struct BoundReplyMove {
  std::size_t m;
  friend bool operator==(const BoundReplyMove&, const BoundReplyMove&) = default;
};
struct BoundedSetMove {
  NodeSubset set;
  friend bool operator==(const BoundedSetMove&, const BoundedSetMove&) = default;
};
struct BoundedDupSetMove {
  NodeSubset set;
  friend bool operator==(const BoundedDupSetMove&, const BoundedDupSetMove&) = default;
};

using Move = std::variant<ElementMove, DupElementMove, SetMove, DupSetMove, BoundMove, BoundReplyMove,
                          BoundedSetMove, BoundedDupSetMove>;

// Player who makes this kind of move.
Player mover_of(const Move& mv);
std::string describe(const Move& mv);

struct AwaitingSpoiler {
  friend bool operator==(const AwaitingSpoiler&, const AwaitingSpoiler&) = default;
};
struct AwaitingBoundReply {
  Side side;
  std::size_t l;
  friend bool operator==(const AwaitingBoundReply&, const AwaitingBoundReply&) = default;
};
struct AwaitingBoundedSet {
  Side side;
  std::size_t l, m;
  friend bool operator==(const AwaitingBoundedSet&, const AwaitingBoundedSet&) = default;
};
// Pending spoiler choice that duplicator must answer. For a bounded set the
// pending move is a SetMove and `bound` holds l.
struct AwaitingDuplicator {
  std::variant<ElementMove, SetMove> pending;
  std::optional<std::size_t> bound;
  friend bool operator==(const AwaitingDuplicator&, const AwaitingDuplicator&) = default;
};

using Phase = std::variant<AwaitingSpoiler, AwaitingBoundReply, AwaitingBoundedSet, AwaitingDuplicator>;

struct GamePosition {
  std::shared_ptr<const ConstraintStructure> left, right;
  std::vector<NodeIndex> left_elems, right_elems;
  std::vector<NodeSubset> left_sets, right_sets;
  std::size_t rounds_left = 0;
  Phase phase = AwaitingSpoiler{};

  const ConstraintStructure& structure(Side s) const { return s == Side::kLeft ? *left : *right; }
  const std::vector<NodeIndex>& elems(Side s) const { return s == Side::kLeft ? left_elems : right_elems; }
  const std::vector<NodeSubset>& sets(Side s) const { return s == Side::kLeft ? left_sets : right_sets; }

  // Player to act, ignoring whether the game is already over.
  Player to_move() const;
  bool finished() const { return rounds_left == 0 && std::holds_alternative<AwaitingSpoiler>(phase); }
};

GamePosition new_game(std::shared_ptr<const ConstraintStructure> left,
                      std::shared_ptr<const ConstraintStructure> right, std::size_t rounds);
GamePosition new_game(const ConstraintStructure& left, const ConstraintStructure& right, std::size_t rounds);

// Largest bound value worth distinguishing: max(|left|, |right|) + 1.
std::size_t bound_cap(const GamePosition& p);

struct LegalMoveOptions {
  // Enumerate every subset for set phases. Refused above kSetEnumerationLimit
  // nodes on the relevant side.
  bool enumerate_sets = true;
};

inline constexpr std::size_t kSetEnumerationLimit = 16;

// Throws GameOver when no rounds remain; SizeLimitExceeded when set
// enumeration is requested on a side above kSetEnumerationLimit.
std::vector<Move> legal_moves(const GamePosition& p, const LegalMoveOptions& options = {});

// Empty when the move is legal, otherwise the reason it is not.
std::optional<std::string> illegal_reason(const GamePosition& p, const Move& mv);

// Throws IllegalMove (with the reason) or GameOver.
GamePosition apply_move(const GamePosition& p, const Move& mv);

// Whether the player to act has any legal move at all.
bool has_legal_move(const GamePosition& p);

struct FinalVerdict {
  bool membership = true;  // a_j in A_k iff b_j in B_k
  bool equality = true;    // a_j = a_k iff b_j = b_k
  bool relations = true;   // lt and inc agree on every index pair
  // First violation of each failed clause, human readable.
  std::vector<std::string> violations;
  bool duplicator_wins() const { return membership && equality && relations; }
};

// Checks the three winning clauses on the chosen elements and sets; valid in
// any phase.
FinalVerdict check_partial_isomorphism(const GamePosition& p);

// Throws GameNotOver unless rounds_left == 0 and spoiler is to move.
FinalVerdict final_verdict(const GamePosition& p);
bool duplicator_wins_final(const GamePosition& p);

// Winner if the game is decided: finished games by the final check, stuck
// positions against the player to act.
std::optional<Player> decided_winner(const GamePosition& p);

}  // namespace treehom

#endif  // TREEHOM_GAME_HPP_
