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

#include "treehom/universal.hpp"

#include <gtest/gtest.h>

#include "treehom/errors.hpp"
#include "treehom/random.hpp"
#include "treehom/tripleu.hpp"

namespace treehom {
namespace {

UWord w(const char* text) { return parse_uword(text); }

ConstraintStructure vee() {
  // c < a, c < b, a inc b; base order a, b, c.
  return ConstraintStructure::from_labels({"a", "b", "c"}, {{"c", "a"}, {"c", "b"}}, {{"a", "b"}, {"b", "a"}});
}

ConstraintStructure antichain2() {
  return ConstraintStructure::from_labels({"a", "b"}, {}, {{"a", "b"}, {"b", "a"}});
}

ConstraintStructure closed_chain(std::size_t n) {
  std::vector<std::string> labels;
  std::vector<Edge> lt;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back("x" + std::to_string(i));
    for (std::size_t j = i + 1; j < n; ++j) lt.emplace_back(i, j);
  }
  return ConstraintStructure(labels, lt, {});
}

TEST(DyadicTest, ArithmeticAndFormatting) {
  EXPECT_EQ(Dyadic(2, 3), Dyadic(1, 2));
  EXPECT_EQ(Dyadic(0, 5).to_string(), "0/2^0");
  EXPECT_EQ(Dyadic(-1, 2).to_string(), "-1/2^2");
  EXPECT_EQ(Dyadic(1, 1) + Dyadic(-1, 3), Dyadic(3, 3));
  EXPECT_EQ(Dyadic(1, 2) + Dyadic(1, 2), Dyadic(1, 1));
  EXPECT_LT(Dyadic(-1, 1), Dyadic(0, 0));
  EXPECT_LT(Dyadic(1, 3), Dyadic(1, 2));
  EXPECT_EQ(Dyadic::parse("-5/2"), Dyadic(-5, 1));
  EXPECT_EQ(Dyadic::parse("3/2^4"), Dyadic(3, 4));
  EXPECT_EQ(Dyadic::parse("7"), Dyadic::integer(7));
  EXPECT_THROW(Dyadic::parse("1/3"), std::invalid_argument);
  EXPECT_THROW(Dyadic(1, 63), std::invalid_argument);
  EXPECT_THROW(Dyadic::integer(INT64_MAX) + Dyadic::integer(1), std::overflow_error);
}

TEST(UWordTest, CompareExamples) {
  EXPECT_EQ(uword_compare(w("(0,0/2^0)"), w("(0,1/2^0)")), WordOrder::kLess);
  EXPECT_EQ(uword_compare(w("(0,0/2^0)"), w("(1,0/2^0)")), WordOrder::kIncomparable);
  EXPECT_EQ(uword_compare(w("(0,0)"), w("(0,0)(3,-5/2)")), WordOrder::kLess);
  EXPECT_EQ(uword_compare(w("(0,0)(3,-5/2)"), w("(0,0)")), WordOrder::kGreater);
  EXPECT_EQ(uword_compare(w("(0,1)"), w("(0,0)(3,-5/2)")), WordOrder::kIncomparable);
  EXPECT_EQ(uword_compare(UWord{}, w("(4,1)")), WordOrder::kLess);
  EXPECT_EQ(uword_compare(w("(2,1/2^3)"), w("(2,1/2^3)")), WordOrder::kEqual);
}

TEST(UWordTest, AddExamples) {
  EXPECT_EQ(uword_add(w("(0,0)"), Dyadic(-1, 2)), w("(0,-1/4)"));
  EXPECT_EQ(uword_add(w("(0,0)(2,1/2)"), Dyadic(-1, 3)), w("(0,0)(2,3/8)"));
  EXPECT_EQ(uword_add(w("(5,3/2^7)"), Dyadic()), w("(5,3/2^7)"));
  EXPECT_THROW(uword_add(UWord{}, Dyadic(1, 0)), EmptyWord);
}

TEST(UWordTest, FormatRoundTrips) {
  UWord u = w("(0,0)(2,-3/2^5)");
  EXPECT_EQ(format_uword(u), "(0,0/2^0)(2,-3/2^5)");
  EXPECT_EQ(parse_uword(format_uword(u)), u);
  EXPECT_THROW(parse_uword("(0;1)"), std::invalid_argument);
}

TEST(UWordTest, OrderIsSemilinearOnRandomWords) {
  Rng rng(31);
  std::uniform_int_distribution<int> branch(0, 1), value(-2, 2), len(1, 3);
  for (int round = 0; round < 40; ++round) {
    std::vector<UWord> words;
    for (int i = 0; i < 12; ++i) {
      UWord u;
      int l = len(rng);
      for (int j = 0; j < l; ++j) u.push_back({static_cast<std::uint64_t>(branch(rng)), Dyadic(value(rng), 1)});
      words.push_back(u);
    }
    for (const auto& a : words)
      for (const auto& b : words)
        for (const auto& c : words) {
          EXPECT_TRUE(!(uword_leq(a, b) && uword_leq(b, c)) || uword_leq(a, c));
          EXPECT_TRUE(!(uword_leq(a, c) && uword_leq(b, c)) || uword_leq(a, b) || uword_leq(b, a));
          EXPECT_TRUE(!(uword_leq(a, b) && uword_leq(b, a)) || a == b);
        }
  }
}

TEST(InfimaTest, ClosureExamples) {
  auto chain = closed_chain(4);
  auto c = close_under_infima(chain);
  EXPECT_TRUE(c.added.empty());
  EXPECT_EQ(c.order, chain);

  auto two = close_under_infima(antichain2());
  ASSERT_EQ(two.added.size(), 1u);
  EXPECT_EQ(two.order.size(), 3u);
  EXPECT_TRUE(two.order.lt(two.added[0], 0));
  EXPECT_TRUE(two.order.lt(two.added[0], 1));
  EXPECT_TRUE(close_under_infima(two.order).added.empty());

  EXPECT_TRUE(close_under_infima(vee()).added.empty());
  EXPECT_THROW(close_under_infima(gen_tripleu({0, 0}).structure), NotSemilinear);
}

TEST(InfimaTest, EnumerationExamples) {
  auto chain = close_under_infima(closed_chain(4));
  EXPECT_EQ(infima_closed_enumeration(chain), (std::vector<NodeIndex>{0, 1, 2, 3}));
  EXPECT_EQ(infima_closed_enumeration(close_under_infima(vee())), (std::vector<NodeIndex>{0, 2, 1}));
  EXPECT_EQ(infima_closed_enumeration(close_under_infima(closed_chain(1))), (std::vector<NodeIndex>{0}));
}

TEST(InfimaTest, PrefixesAreClosed) {
  Rng rng(41);
  for (int i = 0; i < 200; ++i) {
    auto s = random_semilinear_order(1 + rng() % 8, rng);
    auto closed = close_under_infima(s);
    EXPECT_LE(closed.added.size(), 1u);
    auto order = infima_closed_enumeration(closed);
    ASSERT_EQ(order.size(), closed.order.size());
    for (std::size_t j = 1; j <= order.size(); ++j)
      for (std::size_t x = 0; x < j; ++x)
        for (std::size_t y = 0; y < j; ++y) {
          auto inf = infimum(closed.order, order[x], order[y]);
          ASSERT_TRUE(inf.has_value());
          EXPECT_NE(std::find(order.begin(), order.begin() + static_cast<long>(j), *inf),
                    order.begin() + static_cast<long>(j));
        }
  }
}

TEST(EmbedTest, Examples) {
  auto single = closed_chain(1);
  EXPECT_EQ(embed_universal(single).phi[0], w("(0,0)"));

  auto ab = closed_chain(2);
  auto e = embed_universal(ab);
  EXPECT_EQ(e.phi[0], w("(0,0)"));
  EXPECT_EQ(e.phi[1], w("(0,0)(0,0)"));
  EXPECT_TRUE(verify_universal_embedding(ab, e));

  auto two = antichain2();
  auto e2 = embed_universal(two);
  EXPECT_EQ(e2.phi[0], w("(0,0)"));
  EXPECT_EQ(e2.phi[1], w("(0,-1/4)(0,0)"));
  EXPECT_EQ(e2.closed_phi[2], w("(0,-1/4)"));
  EXPECT_TRUE(verify_universal_embedding(two, e2));

  EXPECT_EQ(format_embedding(ab, e), "x0 -> (0,0/2^0)\nx1 -> (0,0/2^0)(0,0/2^0)\n");
}

TEST(EmbedTest, VerifierRejectsBadMaps) {
  auto ab = closed_chain(2);
  auto e = embed_universal(ab);
  EXPECT_FALSE(verify_universal_embedding(ab, std::vector<UWord>{e.phi[1], e.phi[0]}));
  EXPECT_FALSE(verify_universal_embedding(antichain2(), std::vector<UWord>{w("(0,0)"), w("(0,0)")}));
}

TEST(EmbedTest, RandomOrders) {
  Rng rng(77);
  for (int i = 0; i < 500; ++i) {
    auto s = random_semilinear_order(1 + rng() % 8, rng);
    auto e = embed_universal(s);
    ASSERT_TRUE(verify_universal_embedding(s, e)) << format_structure(s);
    ASSERT_TRUE(verify_universal_embedding(e.closed.order, e.closed_phi));
    for (const auto& word : e.closed_phi)
      for (const auto& letter : word) EXPECT_LE(static_cast<std::size_t>(letter.value.exponent()), e.dyadic_depth_bound);
  }
}

}  // namespace
}  // namespace treehom
