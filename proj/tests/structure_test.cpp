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

#include "treehom/structure.hpp"

#include <gtest/gtest.h>

#include "treehom/errors.hpp"
#include "treehom/random.hpp"
#include "treehom/tripleu.hpp"

namespace treehom {
namespace {

ConstraintStructure plain() { return gen_tripleu({0, 0}).structure; }

TEST(ParseTest, ReadsDirectivesAndComments) {
  auto s = parse_structure(
      "# header\n"
      "node a\nnode b   # trailing\n\n"
      "lt a b\nlt a b\ninc b a\n");
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(s.lt_edges().size(), 1u);
  EXPECT_TRUE(s.lt(0, 1));
  EXPECT_TRUE(s.inc(1, 0));
  EXPECT_FALSE(s.inc(0, 1));
}

TEST(ParseTest, EdgesMayPrecedeNodes) {
  auto s = parse_structure("lt x y\nnode x\nnode y\n");
  EXPECT_TRUE(s.lt(s.index_of("x"), s.index_of("y")));
}

TEST(ParseTest, RejectsMalformedInput) {
  EXPECT_THROW(parse_structure("node a\nnode a\n"), ParseError);
  EXPECT_THROW(parse_structure("node a\nlt a b\n"), ParseError);
  EXPECT_THROW(parse_structure("edge a b\n"), ParseError);
  EXPECT_THROW(parse_structure("node\n"), ParseError);
  try {
    parse_structure("node a\n\nlt a zz\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(ParseTest, FormatRoundTrips) {
  auto s = gen_tripleu({2, 1}).structure;
  EXPECT_EQ(parse_structure(format_structure(s)), s);
}

TEST(StructureTest, RejectsBadConstruction) {
  EXPECT_THROW(ConstraintStructure({"a", "a"}, {}, {}), std::invalid_argument);
  EXPECT_THROW(ConstraintStructure({"a b"}, {}, {}), std::invalid_argument);
  EXPECT_THROW(ConstraintStructure({"a"}, {{0, 1}}, {}), std::invalid_argument);
  EXPECT_THROW(plain().index_of("zz"), UnknownLabel);
}

TEST(ComponentsTest, CycleIsOneComponent) {
  auto s = lt_cycle();
  auto comps = connected_components(s, s.all_nodes());
  ASSERT_EQ(comps.size(), 1u);
  EXPECT_EQ(comps[0].count(), 3u);
}

TEST(ComponentsTest, PlainTripleU) {
  auto s = plain();
  EXPECT_EQ(connected_components(s, s.all_nodes()).size(), 1u);
  auto comps = connected_components(s, s.subset({"l", "b1", "b3", "r"}));
  ASSERT_EQ(comps.size(), 2u);
  EXPECT_EQ(comps[0], s.subset({"l", "b1"}));
  EXPECT_EQ(comps[1], s.subset({"r", "b3"}));
}

TEST(ComponentsTest, EmptyInputGivesNoComponents) {
  auto s = plain();
  EXPECT_TRUE(connected_components(s, NodeSubset(s.size())).empty());
}

TEST(CentralPointsTest, Examples) {
  auto cyc = lt_cycle();
  EXPECT_TRUE(central_points(cyc, cyc.all_nodes()).empty());
  auto s = plain();
  EXPECT_EQ(central_points(s, s.all_nodes()), s.subset({"a1", "a2"}));
  ConstraintStructure single({"v"}, {}, {});
  EXPECT_EQ(central_points(single, single.all_nodes()), single.all_nodes());
}

TEST(CentralPointsTest, SelfLoopsDisqualify) {
  ConstraintStructure lt_loop({"v"}, {{0, 0}}, {});
  ConstraintStructure inc_loop({"v"}, {}, {{0, 0}});
  EXPECT_TRUE(central_points(lt_loop, lt_loop.all_nodes()).empty());
  EXPECT_TRUE(central_points(inc_loop, inc_loop.all_nodes()).empty());
}

TEST(RestrictionTest, Examples) {
  auto s = plain();
  EXPECT_EQ(restriction(s, s.all_nodes()), s);
  EXPECT_EQ(restriction(s, NodeSubset(s.size())).size(), 0u);
  auto inc = incomparable_tripleu();
  auto r = restriction(inc, inc.all_nodes() - inc.subset({"l", "r"}));
  EXPECT_EQ(r.size(), 5u);
  EXPECT_TRUE(r.inc_edges().empty());
}

TEST(RestrictionTest, Composes) {
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    auto s = random_structure(8, 0.2, 0.1, rng);
    auto b = NodeSubset::from_mask(8, rng() & 0xff);
    auto c = b & NodeSubset::from_mask(8, rng() & 0xff);
    auto rb = restriction(s, b);
    NodeSubset c_in_b(rb.size());
    c.for_each([&](NodeIndex v) { c_in_b.insert(rb.index_of(s.label(v))); });
    EXPECT_EQ(restriction(rb, c_in_b), restriction(s, c));
  }
}

TEST(SemilinearTest, Examples) {
  auto chain = ConstraintStructure::from_labels({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}}, {});
  EXPECT_TRUE(is_semilinear_order(chain));
  EXPECT_FALSE(is_semilinear_order(plain()));
  EXPECT_FALSE(is_semilinear_order(lt_cycle()));
  EXPECT_FALSE(is_semilinear_order(chain_structure(3)));  // not transitive
}

TEST(SemilinearTest, RandomForestOrdersQualify) {
  Rng rng(11);
  for (int i = 0; i < 100; ++i) EXPECT_TRUE(is_semilinear_order(random_semilinear_order(1 + i % 9, rng)));
}

TEST(SemilinearTest, TwoParentsFail) {
  auto s = ConstraintStructure::from_labels({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}},
                                            {{"a", "b"}, {"b", "a"}});
  EXPECT_FALSE(is_semilinear_order(s));
}

TEST(SubsetOracleTest, Examples) {
  EXPECT_FALSE(subset_criterion_oracle(lt_cycle()));
  EXPECT_FALSE(subset_criterion_oracle(incomparable_tripleu()));
  EXPECT_TRUE(subset_criterion_oracle(plain()));
}

TEST(SubsetOracleTest, SizeGuard) {
  EXPECT_THROW(subset_criterion_oracle(chain_structure(21)), SizeLimitExceeded);
  EXPECT_NO_THROW(subset_criterion_oracle(chain_structure(20)));
}

TEST(SubsetOracleTest, RemovingIncEdgesNeverHurts) {
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    auto s = random_structure(7, 0.15, 0.15, rng);
    if (s.inc_edges().empty() || !subset_criterion_oracle(s)) continue;
    auto inc = s.inc_edges();
    inc.erase(inc.begin() + static_cast<long>(rng() % inc.size()));
    EXPECT_TRUE(subset_criterion_oracle(ConstraintStructure(s.labels(), s.lt_edges(), inc)));
  }
}

TEST(NodeSubsetTest, SetAlgebra) {
  NodeSubset a(70, {1, 65}), b(70, {65, 3});
  EXPECT_EQ((a | b).count(), 3u);
  EXPECT_EQ((a & b).members(), std::vector<NodeIndex>{65});
  EXPECT_EQ((a - b).members(), std::vector<NodeIndex>{1});
  EXPECT_TRUE((a & b).is_subset_of(a));
  EXPECT_EQ(NodeSubset(70).first(), 70u);
  EXPECT_THROW(a.to_mask(), std::out_of_range);
  EXPECT_THROW(a |= NodeSubset(5), std::invalid_argument);
}

}  // namespace
}  // namespace treehom
