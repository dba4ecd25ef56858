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

#include "treehom/game.hpp"

#include <gtest/gtest.h>

#include <algorithm>

#include "treehom/errors.hpp"
#include "treehom/random.hpp"

namespace treehom {
namespace {

ConstraintStructure two_chain() { return parse_structure("node a\nnode b\nlt a b\n"); }
ConstraintStructure loop_node() { return parse_structure("node x\nlt x x\n"); }
ConstraintStructure plain_node() { return parse_structure("node y\n"); }

template <typename T>
std::size_t count_of(const std::vector<Move>& moves) {
  return static_cast<std::size_t>(
      std::count_if(moves.begin(), moves.end(), [](const Move& m) { return std::holds_alternative<T>(m); }));
}

TEST(GameRulesTest, FreshGameMoveEnumeration) {
  auto p = new_game(two_chain(), parse_structure("node a\nnode b\nnode c\n"), 2);
  auto moves = legal_moves(p);
  EXPECT_EQ(count_of<ElementMove>(moves), 2u + 3u);
  EXPECT_EQ(count_of<SetMove>(moves), 4u + 8u);
  EXPECT_EQ(bound_cap(p), 4u);
  EXPECT_EQ(count_of<BoundMove>(moves), 2u * 5u);  // l in 0..cap on each side
  EXPECT_EQ(moves.size(), count_of<ElementMove>(moves) + count_of<SetMove>(moves) + count_of<BoundMove>(moves));
  EXPECT_EQ(p.to_move(), Player::kSpoiler);
}

TEST(GameRulesTest, ElementRoundAppendsAndDecrements) {
  auto p = new_game(two_chain(), two_chain(), 2);
  p = apply_move(p, ElementMove{Side::kLeft, 1});
  EXPECT_EQ(p.to_move(), Player::kDuplicator);
  EXPECT_EQ(p.rounds_left, 2u);
  p = apply_move(p, DupElementMove{0});
  EXPECT_EQ(p.left_elems, std::vector<NodeIndex>{1});
  EXPECT_EQ(p.right_elems, std::vector<NodeIndex>{0});
  EXPECT_EQ(p.rounds_left, 1u);
  EXPECT_TRUE(std::holds_alternative<AwaitingSpoiler>(p.phase));
}

TEST(GameRulesTest, BoundMoveConsumesOneRound) {
  auto p = new_game(two_chain(), parse_structure("node a\nnode b\nnode c\n"), 1);
  p = apply_move(p, BoundMove{Side::kRight, 1});
  ASSERT_TRUE(std::holds_alternative<AwaitingBoundReply>(p.phase));
  p = apply_move(p, BoundReplyMove{2});
  const auto& phase = std::get<AwaitingBoundedSet>(p.phase);
  EXPECT_EQ(phase.side, Side::kRight);
  EXPECT_EQ(phase.m, 2u);

  auto bounded = legal_moves(p);
  EXPECT_EQ(bounded.size(), 4u);  // three 2-subsets and the full set of the right side
  for (const auto& mv : bounded) {
    ASSERT_TRUE(std::holds_alternative<BoundedSetMove>(mv));
    EXPECT_GE(std::get<BoundedSetMove>(mv).set.count(), 2u);
  }
  EXPECT_TRUE(illegal_reason(p, BoundedSetMove{NodeSubset(3, {0})}).has_value());

  p = apply_move(p, BoundedSetMove{NodeSubset(3, {0, 2})});
  EXPECT_TRUE(illegal_reason(p, BoundedDupSetMove{NodeSubset(2)}).has_value());  // size below l
  p = apply_move(p, BoundedDupSetMove{NodeSubset(2, {1})});
  EXPECT_EQ(p.rounds_left, 0u);
  EXPECT_TRUE(p.finished());
  EXPECT_EQ(p.left_sets.size(), 1u);
  EXPECT_EQ(p.right_sets.size(), 1u);
  EXPECT_TRUE(p.right_sets[0].contains(2));
}

TEST(GameRulesTest, IllegalAndFinishedMoves) {
  auto p = new_game(two_chain(), two_chain(), 1);
  EXPECT_THROW(apply_move(p, DupSetMove{NodeSubset(2)}), IllegalMove);
  EXPECT_THROW(apply_move(p, ElementMove{Side::kLeft, 7}), IllegalMove);
  EXPECT_THROW(apply_move(p, BoundMove{Side::kLeft, bound_cap(p) + 1}), IllegalMove);
  auto bounded = apply_move(p, BoundMove{Side::kLeft, bound_cap(p)});
  EXPECT_THROW(apply_move(bounded, BoundReplyMove{bound_cap(p) + 1}), IllegalMove);
  auto done = new_game(two_chain(), two_chain(), 0);
  EXPECT_THROW(legal_moves(done), GameOver);
  EXPECT_THROW(apply_move(done, ElementMove{Side::kLeft, 0}), GameOver);
}

TEST(GameRulesTest, BoundedReplyImpossibleLeavesDuplicatorStuck) {
  auto p = new_game(parse_structure("node a\nnode b\nnode c\n"), parse_structure("node z\n"), 1);
  p = apply_move(p, BoundMove{Side::kLeft, 2});
  p = apply_move(p, BoundReplyMove{3});
  p = apply_move(p, BoundedSetMove{NodeSubset::all(3)});
  EXPECT_FALSE(has_legal_move(p));
  EXPECT_EQ(decided_winner(p), Player::kSpoiler);
}

TEST(GameRulesTest, LegalMovesAreClosedUnderApply) {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto p = new_game(random_structure(3, 0.3, 0.2, rng), random_structure(3, 0.3, 0.2, rng), 2);
    while (!p.finished() && has_legal_move(p)) {
      auto moves = legal_moves(p);
      for (const auto& mv : moves) EXPECT_FALSE(illegal_reason(p, mv).has_value()) << describe(mv);
      p = apply_move(p, moves[rng() % moves.size()]);
      EXPECT_EQ(p.left_elems.size(), p.right_elems.size());
      EXPECT_EQ(p.left_sets.size(), p.right_sets.size());
    }
  }
}

TEST(FinalCheckTest, EmptyGameIsDuplicators) {
  EXPECT_TRUE(duplicator_wins_final(new_game(loop_node(), two_chain(), 0)));
}

TEST(FinalCheckTest, RelationMismatch) {
  auto p = new_game(loop_node(), plain_node(), 1);
  p = apply_move(apply_move(p, ElementMove{Side::kLeft, 0}), DupElementMove{0});
  auto v = final_verdict(p);
  EXPECT_FALSE(v.duplicator_wins());
  EXPECT_FALSE(v.relations);
  EXPECT_TRUE(v.membership);
}

TEST(FinalCheckTest, MembershipMismatch) {
  auto p = new_game(plain_node(), plain_node(), 2);
  p = apply_move(apply_move(p, ElementMove{Side::kLeft, 0}), DupElementMove{0});
  p = apply_move(apply_move(p, SetMove{Side::kLeft, NodeSubset(1, {0})}), DupSetMove{NodeSubset(1)});
  auto v = final_verdict(p);
  EXPECT_FALSE(v.membership);
  EXPECT_FALSE(v.violations.empty());
}

TEST(FinalCheckTest, EqualityMismatch) {
  auto p = new_game(two_chain(), parse_structure("node a\nnode b\n"), 2);
  p = apply_move(apply_move(p, ElementMove{Side::kRight, 0}), DupElementMove{0});
  p = apply_move(apply_move(p, ElementMove{Side::kRight, 1}), DupElementMove{0});
  EXPECT_FALSE(final_verdict(p).equality);
}

TEST(FinalCheckTest, NotOverThrows) {
  EXPECT_THROW(final_verdict(new_game(plain_node(), plain_node(), 1)), GameNotOver);
}

}  // namespace
}  // namespace treehom
