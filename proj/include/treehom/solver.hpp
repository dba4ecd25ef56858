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

// Exhaustive solver for small instances of the game in game.hpp.
//
// Instead of searching over pairs of positions, each side is summarised by
// its rank-r type: the rank-0 type is the atomic diagram of the chosen
// elements and sets, and the rank-r type is the rank-0 type together with
// the sets of rank-(r-1) types reachable by one element extension and by one
// set extension. Duplicator wins the r-round game from a pair of positions
// iff both sides have the same rank-r type. Type ids are interned in a
// TypeTable, so ids are comparable across every structure registered in the
// same table.
//
// Bound moves never help spoiler on finite structures: duplicator answers
// any bound with a value larger than both structures, which leaves spoiler
// without a legal bounded set. The solver therefore only ranges over element
// and set moves.

#ifndef TREEHOM_SOLVER_HPP_
#define TREEHOM_SOLVER_HPP_

#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "treehom/game.hpp"
#include "treehom/structure.hpp"

namespace treehom {

inline constexpr std::size_t kSolverNodeLimit = 8;
inline constexpr std::size_t kSolverRoundLimit = 3;

// Chosen elements and sets on one side; sets as bit masks.
struct SidePosition {
  std::vector<NodeIndex> elems;
  std::vector<std::uint64_t> sets;
};

SidePosition side_position(const GamePosition& p, Side s);

using TypeId = std::int32_t;

class TypeTable {
 public:
  // Registers a structure (deduplicated by equality) and returns its handle.
  // Throws SizeLimitExceeded above kSolverNodeLimit nodes.
  std::size_t add(const ConstraintStructure& s);

  // Rank-`rounds` type of `pos` on structure `handle`.
  TypeId type(std::size_t handle, const SidePosition& pos, std::size_t rounds);

  std::size_t interned_types() const;

 private:
  struct Entry {
    ConstraintStructure structure;
    std::unordered_map<std::string, TypeId> memo;
  };

  TypeId type_locked(Entry& e, SidePosition& pos, std::size_t rounds);
  TypeId intern(const std::string& key);

  mutable std::mutex mu_;
  std::deque<Entry> entries_;
  std::unordered_map<std::string, TypeId> interned_;
};

// Process-wide table shared by the solver entry points below.
TypeTable& shared_type_table();

// Decisions recorded for the winner, keyed by an exact encoding of the
// position.
class StrategyTable {
 public:
  static constexpr std::uint32_t kFormatVersion = 1;

  StrategyTable() = default;
  StrategyTable(std::uint64_t left_hash, std::uint64_t right_hash, std::size_t rounds)
      : left_hash_(left_hash), right_hash_(right_hash), rounds_(rounds) {}

  void record(const GamePosition& p, const Move& mv);
  std::optional<Move> lookup(const GamePosition& p) const;
  std::size_t size() const { return entries_.size(); }
  bool complete() const { return complete_; }
  void set_complete(bool c) { complete_ = c; }

  std::uint64_t left_hash() const { return left_hash_; }
  std::uint64_t right_hash() const { return right_hash_; }
  std::size_t rounds() const { return rounds_; }

  // Binary cache: magic, format version, structure hashes, rounds, entries.
  void save(const std::string& path) const;
  // nullopt when the file is missing, malformed, of another version, or was
  // written for different structures or round counts.
  static std::optional<StrategyTable> load(const std::string& path, const ConstraintStructure& left,
                                           const ConstraintStructure& right, std::size_t rounds);

  static std::string position_key(const GamePosition& p);

 private:
  std::uint64_t left_hash_ = 0, right_hash_ = 0;
  std::size_t rounds_ = 0;
  bool complete_ = true;
  std::map<std::string, Move> entries_;
};

std::uint64_t structure_hash(const ConstraintStructure& s);

class GameSolver {
 public:
  // Throws SizeLimitExceeded beyond kSolverNodeLimit nodes or
  // kSolverRoundLimit rounds.
  GameSolver(const ConstraintStructure& left, const ConstraintStructure& right, std::size_t rounds,
             TypeTable& table = shared_type_table());

  std::size_t rounds() const { return rounds_; }
  const GamePosition& initial() const { return initial_; }

  // Winner under optimal play from `p` (any phase).
  Player winner(const GamePosition& p);
  Player winner() { return winner(initial_); }

  // A move for the player to act that wins whenever the position is winning
  // for that player; otherwise some legal move. nullopt only when the player
  // has no legal move or the game is over. Set replies prefer the largest
  // winning set, then the smallest mask.
  std::optional<Move> best_move(const GamePosition& p);

  // Whether both sides of `p` have the same rank-`rounds` type.
  bool sides_equivalent(const GamePosition& p, std::size_t rounds);

 private:
  TypeId type_after(Side s, const GamePosition& p, std::optional<NodeIndex> elem, std::optional<std::uint64_t> set,
                    std::size_t rounds);
  std::size_t handle(Side s) const { return s == Side::kLeft ? left_handle_ : right_handle_; }

  TypeTable& table_;
  std::size_t left_handle_, right_handle_;
  std::size_t rounds_;
  GamePosition initial_;
};

struct SolveResult {
  Player winner;
  StrategyTable strategy;
};

inline constexpr std::size_t kStrategyTableLimit = 200000;

// Decides the game and expands the winner's strategy into a table, stopping
// (and marking the table incomplete) after kStrategyTableLimit entries.
SolveResult solve_game(const ConstraintStructure& left, const ConstraintStructure& right, std::size_t rounds);

// c1 < ... < cn with a self inc-loop on cn, marking the top. Used for chain
// games where the top is distinguished by its context.
ConstraintStructure anchored_chain(std::size_t n);

// Largest set of lengths in 1..max_len whose anchored chains are pairwise
// duplicator-won at `rounds` rounds; ties prefer smaller lengths. Sorted.
std::vector<std::size_t> find_equivalent_chain_lengths(std::size_t rounds, std::size_t max_len);

}  // namespace treehom

#endif  // TREEHOM_SOLVER_HPP_
