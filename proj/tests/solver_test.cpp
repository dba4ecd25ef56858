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

#include "treehom/solver.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "treehom/errors.hpp"
#include "treehom/random.hpp"
#include "treehom/tripleu.hpp"

namespace treehom {
namespace {

// Plain minimax over every legal move, bound moves included.
Player naive_winner(const GamePosition& p) {
  if (auto w = decided_winner(p)) return *w;
  const Player mover = p.to_move();
  for (const auto& mv : legal_moves(p))
    if (naive_winner(apply_move(p, mv)) == mover) return mover;
  return mover == Player::kSpoiler ? Player::kDuplicator : Player::kSpoiler;
}

TEST(SolverTest, AgreesWithNaiveMinimaxIncludingBounds) {
  Rng rng(11);
  std::size_t spoiler_wins = 0, total = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng() % 3, m = 1 + rng() % 3, k = rng() % 3;
    auto a = random_structure(n, 0.35, 0.25, rng);
    auto b = random_structure(m, 0.35, 0.25, rng);
    GameSolver solver(a, b, k);
    const Player expected = naive_winner(new_game(a, b, k));
    EXPECT_EQ(solver.winner(), expected) << format_structure(a) << "--\n" << format_structure(b) << "k=" << k;
    spoiler_wins += expected == Player::kSpoiler;
    ++total;
  }
  EXPECT_GT(spoiler_wins, 0u);
  EXPECT_LT(spoiler_wins, total);
}

TEST(SolverTest, MidGamePositionsAgreeWithNaiveMinimax) {
  Rng rng(5);
  for (int trial = 0; trial < 15; ++trial) {
    auto a = random_structure(3, 0.35, 0.25, rng);
    auto b = random_structure(3, 0.35, 0.25, rng);
    GameSolver solver(a, b, 2);
    auto p = solver.initial();
    while (!p.finished() && has_legal_move(p)) {
      EXPECT_EQ(solver.winner(p), naive_winner(p));
      auto moves = legal_moves(p);
      p = apply_move(p, moves[rng() % moves.size()]);
    }
  }
}

TEST(SolverTest, SymmetricInSides) {
  Rng rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    auto a = random_structure(1 + rng() % 5, 0.3, 0.2, rng);
    auto b = random_structure(1 + rng() % 5, 0.3, 0.2, rng);
    const std::size_t k = rng() % 3;
    EXPECT_EQ(GameSolver(a, b, k).winner(), GameSolver(b, a, k).winner());
  }
}

TEST(SolverTest, IdenticalStructuresAreDuplicators) {
  Rng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    auto a = random_structure(1 + rng() % 6, 0.3, 0.2, rng);
    for (std::size_t k = 0; k <= 2; ++k) EXPECT_EQ(GameSolver(a, a, k).winner(), Player::kDuplicator);
  }
}

TEST(SolverTest, ExtraRoundsNeverHurtSpoiler) {
  Rng rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    auto a = random_structure(1 + rng() % 5, 0.3, 0.2, rng);
    auto b = random_structure(1 + rng() % 5, 0.3, 0.2, rng);
    for (std::size_t k = 0; k < 3; ++k) {
      if (GameSolver(a, b, k).winner() == Player::kSpoiler) {
        EXPECT_EQ(GameSolver(a, b, k + 1).winner(), Player::kSpoiler);
      }
    }
  }
}

TEST(SolverTest, ShortChains) {
  auto one = chain_structure(1), two = chain_structure(2);
  EXPECT_EQ(GameSolver(one, two, 1).winner(), Player::kDuplicator);
  EXPECT_EQ(GameSolver(one, two, 2).winner(), Player::kSpoiler);
  EXPECT_EQ(GameSolver(one, two, 3).winner(), Player::kSpoiler);
  EXPECT_EQ(GameSolver(one, two, 0).winner(), Player::kDuplicator);
}

TEST(SolverTest, SizeLimits) {
  EXPECT_THROW(GameSolver(chain_structure(9), chain_structure(2), 1), SizeLimitExceeded);
  EXPECT_THROW(GameSolver(chain_structure(2), chain_structure(2), 4), SizeLimitExceeded);
  EXPECT_THROW(find_equivalent_chain_lengths(4, 4), SizeLimitExceeded);
  EXPECT_THROW(find_equivalent_chain_lengths(2, 9), SizeLimitExceeded);
  EXPECT_THROW(anchored_chain(0), InvalidConfig);
}

TEST(SolverTest, BestMoveWinsAgainstRandomOpponent) {
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_structure(1 + rng() % 4, 0.3, 0.2, rng);
    auto b = random_structure(1 + rng() % 4, 0.3, 0.2, rng);
    GameSolver solver(a, b, 2);
    const Player w = solver.winner();
    auto p = solver.initial();
    while (!decided_winner(p)) {
      if (p.to_move() == w) {
        p = apply_move(p, *solver.best_move(p));
      } else {
        auto moves = legal_moves(p);
        p = apply_move(p, moves[rng() % moves.size()]);
      }
    }
    EXPECT_EQ(decided_winner(p), w);
  }
}

// Every opponent line against the recorded strategy ends in a win.
void replay_strategy(const GamePosition& p, Player winner, const StrategyTable& table) {
  if (auto w = decided_winner(p)) {
    EXPECT_EQ(*w, winner);
    return;
  }
  if (p.to_move() == winner) {
    auto mv = table.lookup(p);
    ASSERT_TRUE(mv.has_value());
    replay_strategy(apply_move(p, *mv), winner, table);
    return;
  }
  for (const auto& mv : legal_moves(p)) replay_strategy(apply_move(p, mv), winner, table);
}

TEST(SolveGameTest, StrategyTableIsWinning) {
  const auto v = parse_structure("node a\nnode b\nnode c\nlt a c\nlt b c\n");
  const auto chain = chain_structure(3);
  for (std::size_t k = 1; k <= 2; ++k) {
    auto result = solve_game(v, chain, k);
    EXPECT_TRUE(result.strategy.complete());
    replay_strategy(new_game(v, chain, k), result.winner, result.strategy);
  }
  auto same = solve_game(chain, chain, 2);
  EXPECT_EQ(same.winner, Player::kDuplicator);
  replay_strategy(new_game(chain, chain, 2), same.winner, same.strategy);
}

TEST(SolveGameTest, CacheRoundTripAndInvalidation) {
  const auto a = anchored_chain(3), b = anchored_chain(4);
  auto result = solve_game(a, b, 2);
  const auto path = (std::filesystem::temp_directory_path() / "treehom_solver_cache_test.bin").string();
  result.strategy.save(path);

  auto loaded = StrategyTable::load(path, a, b, 2);
  ASSERT_TRUE(loaded.has_value());
  EXPECT_EQ(loaded->size(), result.strategy.size());
  EXPECT_EQ(loaded->complete(), result.strategy.complete());
  auto p = new_game(a, b, 2);
  EXPECT_EQ(loaded->lookup(p).has_value(), result.strategy.lookup(p).has_value());

  EXPECT_FALSE(StrategyTable::load(path, a, anchored_chain(5), 2).has_value());
  EXPECT_FALSE(StrategyTable::load(path, a, b, 1).has_value());
  EXPECT_FALSE(StrategyTable::load(path + ".missing", a, b, 2).has_value());
  {
    std::ofstream(path, std::ios::binary) << "THST garbage";
  }
  EXPECT_FALSE(StrategyTable::load(path, a, b, 2).has_value());
  std::filesystem::remove(path);
}

TEST(ChainLengthsTest, KnownClasses) {
  std::vector<std::size_t> all{1, 2, 3, 4, 5, 6, 7, 8};
  EXPECT_EQ(find_equivalent_chain_lengths(0, 8), all);
  EXPECT_GE(find_equivalent_chain_lengths(1, 4).size(), 2u);
  EXPECT_EQ(find_equivalent_chain_lengths(2, 6), (std::vector<std::size_t>{5, 6}));
  EXPECT_EQ(find_equivalent_chain_lengths(3, 8).size(), 1u);
}

TEST(ChainLengthsTest, ListIsPairwiseDuplicatorWon) {
  for (std::size_t k = 0; k <= 2; ++k) {
    auto lens = find_equivalent_chain_lengths(k, 7);
    for (auto m : lens)
      for (auto n : lens)
        EXPECT_EQ(GameSolver(anchored_chain(m), anchored_chain(n), k).winner(), Player::kDuplicator)
            << m << " vs " << n << " at k=" << k;
  }
}

}  // namespace
}  // namespace treehom
