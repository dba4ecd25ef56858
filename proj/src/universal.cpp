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

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>
#include <stdexcept>

#include "treehom/errors.hpp"

namespace treehom {

std::string to_string(WordOrder order) {
  switch (order) {
    case WordOrder::kLess: return "less";
    case WordOrder::kEqual: return "equal";
    case WordOrder::kGreater: return "greater";
    case WordOrder::kIncomparable: return "incomparable";
  }
  return "?";
}

bool uword_leq(const UWord& u, const UWord& v) {
  if (u.empty()) return true;
  if (u.size() > v.size()) return false;
  const std::size_t k = u.size() - 1;
  for (std::size_t i = 0; i <= k; ++i)
    if (u[i].branch != v[i].branch) return false;
  for (std::size_t i = 0; i < k; ++i)
    if (u[i].value != v[i].value) return false;
  return u[k].value <= v[k].value;
}

WordOrder uword_compare(const UWord& u, const UWord& v) {
  if (u == v) return WordOrder::kEqual;
  if (uword_leq(u, v)) return WordOrder::kLess;
  if (uword_leq(v, u)) return WordOrder::kGreater;
  return WordOrder::kIncomparable;
}

UWord uword_add(const UWord& u, const Dyadic& q) {
  if (u.empty()) throw EmptyWord();
  UWord out = u;
  out.back().value = out.back().value + q;
  return out;
}

std::string format_uword(const UWord& u) {
  if (u.empty()) return "()";
  std::string out;
  for (const auto& l : u) out += "(" + std::to_string(l.branch) + "," + l.value.to_string() + ")";
  return out;
}

UWord parse_uword(const std::string& text) {
  if (text == "()") return {};
  UWord out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] != '(') throw std::invalid_argument("expected '(' in word");
    auto comma = text.find(',', pos);
    auto close = text.find(')', pos);
    if (comma == std::string::npos || close == std::string::npos || comma > close)
      throw std::invalid_argument("malformed letter in word");
    std::uint64_t branch = 0;
    const char* first = text.data() + pos + 1;
    auto [ptr, ec] = std::from_chars(first, text.data() + comma, branch);
    if (ec != std::errc() || ptr != text.data() + comma || first == ptr)
      throw std::invalid_argument("malformed branch index in word");
    out.push_back({branch, Dyadic::parse(std::string_view(text).substr(comma + 1, close - comma - 1))});
    pos = close + 1;
  }
  if (out.empty()) throw std::invalid_argument("empty word text");
  return out;
}

namespace {

// Reflexive down-set of v.
NodeSubset down_set(const ConstraintStructure& order, NodeIndex v) {
  NodeSubset d = order.lt_predecessors(v);
  d.insert(v);
  return d;
}

std::string fresh_label(const ConstraintStructure& s, std::string base) {
  while (s.find(base)) base += "_";
  return base;
}

}  // namespace

std::optional<NodeIndex> infimum(const ConstraintStructure& order, NodeIndex a, NodeIndex b) {
  NodeSubset common = down_set(order, a) & down_set(order, b);
  if (common.empty()) return std::nullopt;
  std::optional<NodeIndex> best;
  common.for_each([&](NodeIndex c) {
    if (common.is_subset_of(down_set(order, c))) best = c;
  });
  if (!best) throw std::logic_error("common lower bounds without a greatest element");
  return best;
}

InfimaClosedOrder close_under_infima(const ConstraintStructure& s) {
  if (!is_semilinear_order(s)) throw NotSemilinear("input is not a semi-linear order with full incomparability");
  const std::size_t n = s.size();
  bool needs_bottom = false;
  for (NodeIndex a = 0; a < n && !needs_bottom; ++a)
    for (NodeIndex b = a + 1; b < n; ++b)
      if (!infimum(s, a, b)) {
        needs_bottom = true;
        break;
      }

  InfimaClosedOrder out;
  out.injection.resize(n);
  for (NodeIndex v = 0; v < n; ++v) out.injection[v] = v;
  if (!needs_bottom) {
    out.order = s;
    return out;
  }
  std::vector<std::string> labels = s.labels();
  labels.push_back(fresh_label(s, "bottom"));
  std::vector<Edge> lt = s.lt_edges();
  for (NodeIndex v = 0; v < n; ++v) lt.emplace_back(n, v);
  out.order = ConstraintStructure(std::move(labels), std::move(lt), s.inc_edges());
  out.added.push_back(n);
  if (!is_semilinear_order(out.order)) throw std::logic_error("infima closure broke semi-linearity");
  return out;
}

std::vector<NodeIndex> infima_closed_enumeration(const InfimaClosedOrder& closed) {
  const ConstraintStructure& order = closed.order;
  std::vector<NodeIndex> out;
  NodeSubset placed(order.size());
  for (NodeIndex next = 0; next < order.size(); ++next) {
    if (placed.contains(next)) continue;
    std::set<NodeIndex> missing;
    for (NodeIndex s : out)
      if (auto inf = infimum(order, s, next); inf && *inf != next && !placed.contains(*inf)) missing.insert(*inf);
    // All missing infima lie below `next`, so they form a chain.
    std::vector<NodeIndex> chain(missing.begin(), missing.end());
    std::sort(chain.begin(), chain.end(), [&](NodeIndex a, NodeIndex b) { return order.lt(a, b); });
    for (NodeIndex c : chain) {
      out.push_back(c);
      placed.insert(c);
    }
    out.push_back(next);
    placed.insert(next);
  }
  return out;
}

EmbeddingResult embed_universal(const ConstraintStructure& s) {
  EmbeddingResult res;
  res.closed = close_under_infima(s);
  res.enumeration = infima_closed_enumeration(res.closed);
  const ConstraintStructure& order = res.closed.order;
  res.closed_phi.assign(order.size(), UWord{});

  std::vector<NodeIndex> placed;
  for (std::size_t step = 0; step < res.enumeration.size(); ++step) {
    NodeIndex b = res.enumeration[step];
    if (step == 0) {
      res.closed_phi[b] = UWord{{0, Dyadic()}};
      placed.push_back(b);
      continue;
    }
    std::vector<NodeIndex> above, below;
    for (NodeIndex p : placed) {
      if (order.lt(b, p)) above.push_back(p);
      if (order.lt(p, b)) below.push_back(p);
    }
    const int position = static_cast<int>(step + 1);
    if (!above.empty()) {
      NodeIndex u = above.front();
      for (NodeIndex p : above) {
        auto inf = infimum(order, u, p);
        if (!inf || std::find(placed.begin(), placed.end(), *inf) == placed.end())
          throw std::logic_error("infimum of placed nodes is not placed");
        u = *inf;
      }
      res.closed_phi[b] = uword_add(res.closed_phi[u], Dyadic::negative_power_of_two(position));
    } else {
      if (below.empty()) throw std::logic_error("node with nothing placed above or below");
      NodeIndex u = below.front();
      for (NodeIndex p : below)
        if (order.lt(u, p)) u = p;
      const UWord& base = res.closed_phi[u];
      std::vector<const UWord*> others;
      for (NodeIndex p : placed)
        if (!uword_leq(res.closed_phi[p], base)) others.push_back(&res.closed_phi[p]);
      for (std::uint64_t branch = 0;; ++branch) {
        UWord candidate = base;
        candidate.push_back({branch, Dyadic()});
        bool clear = std::all_of(others.begin(), others.end(), [&](const UWord* w) {
          return uword_compare(candidate, *w) == WordOrder::kIncomparable;
        });
        if (clear) {
          res.closed_phi[b] = std::move(candidate);
          break;
        }
      }
    }
    placed.push_back(b);
  }

  res.dyadic_depth_bound = res.enumeration.size();
  res.phi.resize(s.size());
  for (NodeIndex v = 0; v < s.size(); ++v) res.phi[v] = res.closed_phi[res.closed.injection[v]];
  return res;
}

bool verify_universal_embedding(const ConstraintStructure& s, const std::vector<UWord>& phi) {
  if (phi.size() != s.size()) return false;
  for (NodeIndex a = 0; a < s.size(); ++a)
    for (NodeIndex b = 0; b < s.size(); ++b) {
      if (a != b && phi[a] == phi[b]) return false;
      WordOrder o = uword_compare(phi[a], phi[b]);
      if (s.lt(a, b) && o != WordOrder::kLess) return false;
      if (s.inc(a, b) && o != WordOrder::kIncomparable) return false;
    }
  return true;
}

bool verify_universal_embedding(const ConstraintStructure& s, const EmbeddingResult& e) {
  return verify_universal_embedding(s, e.phi);
}

std::string format_embedding(const ConstraintStructure& s, const EmbeddingResult& e) {
  std::ostringstream out;
  for (NodeIndex v = 0; v < s.size(); ++v) out << s.label(v) << " -> " << format_uword(e.phi[v]) << '\n';
  return out.str();
}

}  // namespace treehom
