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

#include "treehom/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <optional>
#include <random>

#include "treehom/errors.hpp"

namespace treehom {

namespace {

void dedupe(std::vector<NodeSubset>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

class MoveFamilies {
 public:
  explicit MoveFamilies(const FamilyGame& game) : game_(game) {}

  std::vector<std::size_t> scope(const LocalPairing& pairing, Side s) const {
    const Family& f = game_.family(s);
    std::vector<std::size_t> out;
    for (const auto& pr : pairing.pairs) out.push_back(s == Side::kLeft ? pr.e_component : pr.u_component);
    std::map<std::pair<std::size_t, std::size_t>, int> per_shape;
    for (std::size_t c = 0; c < f.components.size(); ++c) {
      if (s == Side::kLeft ? pairing.by_e(c) : pairing.by_u(c)) continue;
      auto& seen = per_shape[{f.components[c].spec.n, f.components[c].spec.m}];
      if (seen < 2) {
        out.push_back(c);
        ++seen;
      }
    }
    return out;
  }

  std::vector<NodeSubset> coarse(Side s, std::size_t c) const {
    const Family& f = game_.family(s);
    const auto& comp = f.components[c];
    const std::size_t n = f.structure.size();
    NodeSubset named = NodeSubset::from_members(
        n, {comp.nodes.l, comp.nodes.r, comp.nodes.a1, comp.nodes.a2, comp.nodes.b1, comp.nodes.b2, comp.nodes.b3});
    NodeSubset left = NodeSubset::from_members(n, comp.nodes.left_chain);
    NodeSubset right = NodeSubset::from_members(n, comp.nodes.right_chain);
    std::vector<NodeSubset> out{comp.members, named, left, right, named | left, named | right, left | right,
                                NodeSubset(n, {comp.nodes.l}), NodeSubset(n, {comp.nodes.r})};
    for (const auto* chain : {&comp.nodes.left_chain, &comp.nodes.right_chain})
      if (!chain->empty()) {
        out.push_back(NodeSubset(n, {chain->front()}));
        out.push_back(NodeSubset(n, {chain->back()}));
      }
    dedupe(out);
    return out;
  }

  std::vector<NodeSubset> detailed(Side s, std::size_t c) const {
    const Family& f = game_.family(s);
    const auto& nodes = f.components[c].nodes;
    const std::size_t n = f.structure.size();
    const std::vector<NodeIndex> named{nodes.l, nodes.r, nodes.a1, nodes.a2, nodes.b1, nodes.b2, nodes.b3};
    std::vector<NodeIndex> chain = nodes.left_chain;
    chain.insert(chain.end(), nodes.right_chain.begin(), nodes.right_chain.end());
    std::vector<NodeSubset> out;
    for (std::uint32_t mask = 1; mask < (1u << named.size()); ++mask) {
      NodeSubset x(n);
      for (std::size_t i = 0; i < named.size(); ++i)
        if (mask >> i & 1) x.insert(named[i]);
      out.push_back(std::move(x));
    }
    for (bool with_named : {false, true})
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << chain.size()); ++mask) {
        NodeSubset x = with_named ? NodeSubset::from_members(n, named) : NodeSubset(n);
        for (std::size_t i = 0; i < chain.size(); ++i)
          if (mask >> i & 1) x.insert(chain[i]);
        out.push_back(std::move(x));
      }
    return out;
  }

  // Touched components plus every choice of at most two fresh
  // representatives, united with the final node.
  std::vector<NodeSubset> scope_unions(const LocalPairing& pairing, Side s) const {
    const Family& f = game_.family(s);
    NodeSubset touched(f.structure.size());
    touched.insert(f.final_node);
    std::vector<std::size_t> fresh;
    for (std::size_t c : scope(pairing, s)) {
      if (s == Side::kLeft ? pairing.by_e(c) : pairing.by_u(c))
        touched |= f.components[c].members;
      else
        fresh.push_back(c);
    }
    std::vector<NodeSubset> out{touched};
    for (std::size_t i = 0; i < fresh.size(); ++i) {
      out.push_back(touched | f.components[fresh[i]].members);
      for (std::size_t j = i + 1; j < fresh.size(); ++j)
        out.push_back(touched | f.components[fresh[i]].members | f.components[fresh[j]].members);
    }
    dedupe(out);
    return out;
  }

  // Coarse family: singles and pairwise unions over the scope, each with and
  // without the final node.
  std::vector<NodeSubset> coarse_sets(const LocalPairing& pairing, Side s) const {
    const Family& f = game_.family(s);
    const auto comps = scope(pairing, s);
    std::vector<std::vector<NodeSubset>> per;
    for (std::size_t c : comps) per.push_back(coarse(s, c));
    std::vector<NodeSubset> out{NodeSubset(f.structure.size())};
    for (std::size_t i = 0; i < per.size(); ++i) {
      out.insert(out.end(), per[i].begin(), per[i].end());
      for (std::size_t j = i + 1; j < per.size(); ++j)
        for (const auto& a : per[i])
          for (const auto& b : per[j]) out.push_back(a | b);
    }
    for (auto& u : scope_unions(pairing, s)) out.push_back(std::move(u));
    const std::size_t base = out.size();
    for (std::size_t i = 0; i < base; ++i) {
      NodeSubset x = out[i];
      x.insert(f.final_node);
      out.push_back(std::move(x));
    }
    dedupe(out);
    return out;
  }

  std::vector<NodeSubset> sets_before_last(const LocalPairing& pairing, Side s) const {
    std::vector<NodeSubset> out = coarse_sets(pairing, s);
    for (std::size_t c : scope(pairing, s)) {
      auto d = detailed(s, c);
      out.insert(out.end(), d.begin(), d.end());
    }
    dedupe(out);
    return out;
  }

  std::vector<NodeSubset> sets_last(const GamePosition& p, const LocalPairing& pairing, Side s) const {
    const Family& f = game_.family(s);
    const std::size_t n = f.structure.size();
    std::vector<NodeIndex> chosen = p.elems(s);
    std::sort(chosen.begin(), chosen.end());
    chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
    const NodeSubset chosen_set = NodeSubset::from_members(n, chosen);

    const auto comps = scope(pairing, s);
    std::vector<NodeSubset> fillers = scope_unions(pairing, s);
    fillers.push_back(NodeSubset(n));
    for (std::size_t c : comps) {
      auto more = coarse(s, c);
      fillers.insert(fillers.end(), more.begin(), more.end());
    }
    std::vector<NodeSubset> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << chosen.size()); ++mask) {
      NodeSubset pattern(n);
      for (std::size_t i = 0; i < chosen.size(); ++i)
        if (mask >> i & 1) pattern.insert(chosen[i]);
      for (const auto& fill : fillers) {
        NodeSubset x = (fill - chosen_set) | pattern;
        out.push_back(x);
        if (!chosen_set.contains(f.final_node)) {
          x.insert(f.final_node);
          out.push_back(std::move(x));
        }
      }
    }
    dedupe(out);
    return out;
  }

  // Bound values worth trying on side s: 1, the largest satisfiable one
  // inside the scope, and their midpoint.
  std::vector<std::size_t> bounds(const LocalPairing& pairing, Side s) const {
    std::size_t room = 0;
    for (const auto& u : scope_unions(pairing, s)) room = std::max(room, u.count());
    std::size_t lmax = 0;
    while (game_.bound_reply(s, lmax + 1, pairing) <= room) ++lmax;
    std::vector<std::size_t> out;
    for (std::size_t l : {std::size_t{1}, (1 + lmax) / 2, lmax})
      if (l >= 1 && l <= lmax && std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
    return out;
  }

 private:
  const FamilyGame& game_;
};

class Sweeper {
 public:
  Sweeper(const SweepConfig& config)
      : config_(config),
        game_(FamilyConfig{FamilyKind::E, config.sizes, config.multiplicity},
              FamilyConfig{FamilyKind::U, config.sizes, config.multiplicity}, config.rounds),
        families_(game_) {}

  const FamilyGame& game() const { return game_; }
  const MoveFamilies& families() const { return families_; }
  SweepReport& report() { return report_; }

  // Spoiler moves of one full round, each as the list of spoiler moves in
  // order (a bound round is Bound then BoundedSet, with the set chosen once
  // duplicator's m is known, so it is enumerated later).
  std::vector<Move> opening_moves(const GamePosition& p, const LocalPairing& pairing) const {
    std::vector<Move> out;
    for (Side s : {Side::kLeft, Side::kRight})
      for (NodeIndex v = 0; v < p.structure(s).size(); ++v) out.push_back(ElementMove{s, v});
    for (Side s : {Side::kLeft, Side::kRight}) {
      auto sets = p.rounds_left >= 2 ? families_.sets_before_last(pairing, s) : families_.sets_last(p, pairing, s);
      for (auto& x : sets) out.push_back(SetMove{s, std::move(x)});
      for (std::size_t l : families_.bounds(pairing, s)) out.push_back(BoundMove{s, l});
    }
    return out;
  }

  std::vector<NodeSubset> bounded_sets(const GamePosition& p, const LocalPairing& pairing, Side s,
                                       std::size_t m) const {
    auto sets = p.rounds_left >= 2 ? families_.coarse_sets(pairing, s) : families_.sets_last(p, pairing, s);
    std::vector<NodeSubset> out;
    for (auto& x : sets)
      if (x.count() >= m) out.push_back(std::move(x));
    return out;
  }

  // Duplicator's reply, or nullopt (recorded as a loss) when the strategy
  // throws.
  std::optional<std::pair<Move, LocalPairing>> reply(const GamePosition& q, const LocalPairing& pairing) {
    try {
      return game_.duplicator_strategy(q, pairing);
    } catch (const InsufficientFreshComponents& e) {
      ++report_.duplicator_losses;
      note(std::string("no reply: ") + e.what());
    } catch (const NotLocallyWinning& e) {
      ++report_.check_failures;
      note(std::string("strategy invariant: ") + e.what());
    }
    return std::nullopt;
  }

  // Checks the invariant at a spoiler-to-move position; scores finished games.
  bool visit(const GamePosition& p, const LocalPairing& pairing) {
    ++report_.positions_checked;
    auto check = game_.locally_winning_check(p, pairing, p.rounds_left);
    if (!check) {
      ++report_.check_failures;
      note("not locally winning: " + check.failure);
    }
    if (!p.finished()) return true;
    ++report_.playouts;
    if (pairing.unpaired) ++report_.unpaired_playouts;
    auto verdict = final_verdict(p);
    if (!verdict.duplicator_wins()) {
      ++report_.duplicator_losses;
      note("final check failed: " + verdict.violations.front());
    }
    return false;
  }

  // Plays one spoiler move (completing the round with duplicator's reply)
  // and calls `next` on each resulting position.
  template <typename Next>
  void play(const GamePosition& p, const LocalPairing& pairing, const Move& mv, Next&& next) {
    path_.push_back(describe(mv));
    GamePosition q = apply_move(p, mv);
    if (const auto* b = std::get_if<BoundMove>(&mv)) {
      auto r = reply(q, pairing);
      if (r) {
        GamePosition q2 = apply_move(q, r->first);
        const std::size_t m = std::get<BoundReplyMove>(r->first).m;
        path_.push_back(describe(r->first));
        auto sets = bounded_sets(p, pairing, b->side, m);
        if (sets.empty()) ++report_.playouts;  // spoiler cannot meet the bound and loses
        for (auto& x : sets) {
          path_.push_back("bounded " + describe(SetMove{b->side, x}));
          GamePosition q3 = apply_move(q2, BoundedSetMove{x});
          if (auto r2 = reply(q3, pairing)) next(apply_move(q3, r2->first), r2->second);
          path_.pop_back();
        }
        path_.pop_back();
      }
    } else if (auto r = reply(q, pairing)) {
      next(apply_move(q, r->first), r->second);
    }
    path_.pop_back();
  }

  void explore(const GamePosition& p, const LocalPairing& pairing) {
    if (!visit(p, pairing)) return;
    for (const Move& mv : opening_moves(p, pairing))
      play(p, pairing, mv, [&](const GamePosition& q, const LocalPairing& pr) { explore(q, pr); });
  }

  void note(const std::string& what) {
    if (report_.failures.size() >= config_.max_failures_recorded) return;
    std::string line = what + " after:";
    for (const auto& step : path_) line += " [" + step + "]";
    report_.failures.push_back(std::move(line));
  }

 private:
  SweepConfig config_;
  FamilyGame game_;
  MoveFamilies families_;
  SweepReport report_;
  std::vector<std::string> path_;
};

}  // namespace

SweepReport adversarial_sweep(const SweepConfig& config,
                              const std::function<void(std::size_t, std::size_t)>& progress) {
  const auto start = std::chrono::steady_clock::now();
  Sweeper sweeper(config);
  const GamePosition root = sweeper.game().initial();
  const LocalPairing empty;
  if (sweeper.visit(root, empty)) {
    auto moves = sweeper.opening_moves(root, empty);
    sweeper.report().first_round_moves = moves.size();
    for (std::size_t i = 0; i < moves.size(); ++i) {
      sweeper.play(root, empty, moves[i],
                   [&](const GamePosition& q, const LocalPairing& pr) { sweeper.explore(q, pr); });
      if (progress) progress(i + 1, moves.size());
    }
  }
  SweepReport rep = sweeper.report();
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

SweepReport random_playouts(const SweepConfig& config, std::size_t count, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  Sweeper sweeper(config);
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  for (std::size_t game = 0; game < count; ++game) {
    GamePosition p = sweeper.game().initial();
    LocalPairing pairing;
    bool alive = sweeper.visit(p, pairing);
    while (alive) {
      auto moves = sweeper.opening_moves(p, pairing);
      // Equal weight for element, set and bound moves.
      std::vector<std::size_t> kinds[3];
      for (std::size_t i = 0; i < moves.size(); ++i)
        kinds[std::holds_alternative<ElementMove>(moves[i]) ? 0 : std::holds_alternative<SetMove>(moves[i]) ? 1 : 2]
            .push_back(i);
      std::size_t kind = pick(3);
      while (kinds[kind].empty()) kind = (kind + 1) % 3;
      const Move mv = moves[kinds[kind][pick(kinds[kind].size())]];

      std::optional<std::pair<GamePosition, LocalPairing>> next;
      GamePosition q = apply_move(p, mv);
      if (const auto* b = std::get_if<BoundMove>(&mv)) {
        auto r = sweeper.reply(q, pairing);
        if (!r) break;
        GamePosition q2 = apply_move(q, r->first);
        auto sets = sweeper.bounded_sets(p, pairing, b->side, std::get<BoundReplyMove>(r->first).m);
        if (sets.empty()) {
          ++sweeper.report().playouts;
          break;
        }
        GamePosition q3 = apply_move(q2, BoundedSetMove{sets[pick(sets.size())]});
        if (auto r2 = sweeper.reply(q3, pairing)) next.emplace(apply_move(q3, r2->first), r2->second);
      } else if (auto r = sweeper.reply(q, pairing)) {
        next.emplace(apply_move(q, r->first), r->second);
      }
      if (!next) break;
      p = std::move(next->first);
      pairing = std::move(next->second);
      alive = sweeper.visit(p, pairing);
    }
  }
  SweepReport rep = sweeper.report();
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace treehom
