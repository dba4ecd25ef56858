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

#include "treehom/family_strategy.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "treehom/errors.hpp"
#include "treehom/solver.hpp"

namespace treehom {

namespace {

constexpr const char* kNamedLabels[7] = {"l", "r", "a1", "a2", "b1", "b2", "b3"};

std::vector<NodeIndex> named_nodes(const TripleUNodes& t) { return {t.l, t.r, t.a1, t.a2, t.b1, t.b2, t.b3}; }

bool same_spec(const TripleUSpec& a, const TripleUSpec& b) { return a.n == b.n && a.m == b.m; }

}  // namespace

namespace {

// Relations of one node to every chosen element, its own loops and its
// membership in every chosen set.
using AtomicType = std::vector<std::uint8_t>;

AtomicType atomic_type(const GamePosition& p, Side s, NodeIndex v) {
  const ConstraintStructure& g = p.structure(s);
  AtomicType t{static_cast<std::uint8_t>(g.lt(v, v) | g.inc(v, v) << 1)};
  for (NodeIndex e : p.elems(s))
    t.push_back(static_cast<std::uint8_t>((v == e) | g.lt(v, e) << 1 | g.lt(e, v) << 2 | g.inc(v, e) << 3 |
                                          g.inc(e, v) << 4));
  for (const auto& set : p.sets(s)) t.push_back(set.contains(v));
  return t;
}

// Duplicator wins the remaining `rounds` (0 or 1) rounds from `p`. With one
// round left only element moves matter: set moves are answered by
// membership, and bounds by a value spoiler cannot meet.
bool equal_low_rank(const GamePosition& p, std::size_t rounds) {
  if (!check_partial_isomorphism(p).duplicator_wins()) return false;
  if (rounds == 0) return true;
  std::set<AtomicType> left, right;
  for (NodeIndex v = 0; v < p.left->size(); ++v) left.insert(atomic_type(p, Side::kLeft, v));
  for (NodeIndex v = 0; v < p.right->size(); ++v) right.insert(atomic_type(p, Side::kRight, v));
  return left == right;
}

}  // namespace

const ComponentPair* LocalPairing::by_e(std::size_t e_component) const {
  for (const auto& p : pairs)
    if (p.e_component == e_component) return &p;
  return nullptr;
}

const ComponentPair* LocalPairing::by_u(std::size_t u_component) const {
  for (const auto& p : pairs)
    if (p.u_component == u_component) return &p;
  return nullptr;
}

std::string describe(const LocalPairing& pairing) {
  std::ostringstream out;
  for (const auto& p : pairing.pairs)
    out << "E#" << p.e_component << "<->U#" << p.u_component << " ("
        << (p.left_mode == ChainMode::kMirror ? "mirror" : "table") << "/"
        << (p.right_mode == ChainMode::kMirror ? "mirror" : "table") << ") ";
  if (pairing.unpaired) out << "(unpaired)";
  return out.str();
}

struct FamilyGame::SolverCache {
  std::mutex mu;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::unique_ptr<GameSolver>> solvers;
  std::unordered_map<std::string, Move> replies;

  GameSolver& get(const std::vector<std::shared_ptr<const ConstraintStructure>>& chains, std::size_t e_len,
                  std::size_t u_len, std::size_t rounds) {
    std::lock_guard lock(mu);
    auto& slot = solvers[{e_len, u_len, rounds}];
    if (!slot) slot = std::make_unique<GameSolver>(*chains[e_len], *chains[u_len], rounds);
    return *slot;
  }

  // Memoized solver reply for duplicator on a chain-local position.
  Move reply(const std::vector<std::shared_ptr<const ConstraintStructure>>& chains, const GamePosition& local) {
    const std::size_t e_len = local.left->size(), u_len = local.right->size();
    std::string key = std::to_string(e_len) + "/" + std::to_string(u_len) + "/" + StrategyTable::position_key(local);
    {
      std::lock_guard lock(mu);
      if (auto it = replies.find(key); it != replies.end()) return it->second;
    }
    Move mv = *get(chains, e_len, u_len, local.rounds_left).best_move(local);
    std::lock_guard lock(mu);
    replies.emplace(std::move(key), mv);
    return mv;
  }
};

FamilyGame::FamilyGame(FamilyConfig e_config, FamilyConfig u_config, std::size_t rounds)
    : solvers_(std::make_shared<SolverCache>()), rounds_(rounds) {
  if (e_config.kind != FamilyKind::E || u_config.kind != FamilyKind::U)
    throw InvalidConfig("family game needs an E family on the left and a U family on the right");
  if (e_config.sizes != u_config.sizes) throw InvalidConfig("E and U families must use the same sizes");
  if (rounds > kSolverRoundLimit)
    throw SizeLimitExceeded("family game supports at most " + std::to_string(kSolverRoundLimit) + " rounds");
  e_config.validate();
  u_config.validate();
  for (std::size_t s : e_config.sizes)
    if (s == 0 || s > kSolverNodeLimit)
      throw SizeLimitExceeded("chain lengths must lie in 1.." + std::to_string(kSolverNodeLimit));
  e_ = std::make_shared<const Family>(gen_family(e_config));
  u_ = std::make_shared<const Family>(gen_family(u_config));

  chains_.resize(kSolverNodeLimit + 1);
  for (std::size_t len = 1; len <= kSolverNodeLimit; ++len)
    chains_[len] = std::make_shared<const ConstraintStructure>(anchored_chain(len));

  for (Side s : {Side::kLeft, Side::kRight}) {
    const Family& f = family(s);
    auto& r = s == Side::kLeft ? e_roles_ : u_roles_;
    r.assign(f.structure.size(), NodeRole{});
    for (std::size_t c = 0; c < f.components.size(); ++c) {
      const auto& nodes = f.components[c].nodes;
      auto named = named_nodes(nodes);
      for (std::size_t x = 0; x < named.size(); ++x) r[named[x]] = {NodeRole::kNamed, c, x};
      for (std::size_t i = 0; i < nodes.left_chain.size(); ++i) r[nodes.left_chain[i]] = {NodeRole::kLeftChain, c, i};
      for (std::size_t i = 0; i < nodes.right_chain.size(); ++i)
        r[nodes.right_chain[i]] = {NodeRole::kRightChain, c, i};
    }
  }
}

GamePosition FamilyGame::initial() const {
  return new_game(std::shared_ptr<const ConstraintStructure>(e_, &e_->structure),
                  std::shared_ptr<const ConstraintStructure>(u_, &u_->structure), rounds_);
}

ComponentPair FamilyGame::make_pair(std::size_t e_component, std::size_t u_component) const {
  const auto& es = e_->components[e_component].spec;
  const auto& us = u_->components[u_component].spec;
  return {e_component, u_component, es.n == us.n ? ChainMode::kMirror : ChainMode::kTable,
          es.m == us.m ? ChainMode::kMirror : ChainMode::kTable};
}

FamilyGame::ChainRef FamilyGame::chain_ref(const ComponentPair& pair, bool left_chain) const {
  const auto& en = e_->components[pair.e_component].nodes;
  const auto& un = u_->components[pair.u_component].nodes;
  if (left_chain) return {&en.left_chain, &un.left_chain, pair.left_mode};
  return {&en.right_chain, &un.right_chain, pair.right_mode};
}

TripleUSpec FamilyGame::preferred_partner(Side spoiler_side, std::size_t c, bool left_heavy) const {
  const std::size_t anchor = e_->config.sizes.front();
  const TripleUSpec spec = component(spoiler_side, c).spec;
  if (spoiler_side == Side::kRight) return left_heavy ? TripleUSpec{spec.n, anchor} : TripleUSpec{anchor, spec.n};
  const std::size_t n = std::max(spec.n, spec.m);
  return {n, n};
}

std::optional<std::size_t> FamilyGame::fresh_partner(Side spoiler_side, std::size_t c, bool left_heavy,
                                                     const LocalPairing& pairing,
                                                     const std::vector<bool>& taken) const {
  const Side reply_side = other(spoiler_side);
  const auto& candidates = family(reply_side).components;
  auto is_free = [&](std::size_t w) {
    if (taken[w]) return false;
    return reply_side == Side::kLeft ? pairing.by_e(w) == nullptr : pairing.by_u(w) == nullptr;
  };
  std::vector<TripleUSpec> wanted{preferred_partner(spoiler_side, c, left_heavy)};
  if (spoiler_side == Side::kRight) wanted.push_back(preferred_partner(spoiler_side, c, !left_heavy));
  for (const auto& spec : wanted)
    for (std::size_t w = 0; w < candidates.size(); ++w)
      if (is_free(w) && same_spec(candidates[w].spec, spec)) return w;
  for (std::size_t w = 0; w < candidates.size(); ++w)
    if (is_free(w)) return w;
  return std::nullopt;
}

std::size_t FamilyGame::needed_multiplicity(Side spoiler_side, const std::vector<std::pair<std::size_t, bool>>& fresh,
                                            const LocalPairing& pairing) const {
  const Side reply_side = other(spoiler_side);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> demand;
  for (const auto& p : pairing.pairs) {
    const auto& spec = component(reply_side, reply_side == Side::kLeft ? p.e_component : p.u_component).spec;
    ++demand[{spec.n, spec.m}];
  }
  for (const auto& [c, heavy] : fresh) {
    auto spec = preferred_partner(spoiler_side, c, heavy);
    ++demand[{spec.n, spec.m}];
  }
  std::size_t needed = e_->config.multiplicity + 1;
  for (const auto& [spec, count] : demand) needed = std::max(needed, count);
  return needed;
}

std::size_t FamilyGame::bound_reply(Side s, std::size_t l, const LocalPairing& pairing) const {
  std::size_t touched = 0;
  for (const auto& p : pairing.pairs)
    touched += component(s, s == Side::kLeft ? p.e_component : p.u_component).members.count();
  if (s == Side::kRight) return touched + 2 * l;
  return touched + l * e_->config.sizes.front() + l;
}

GamePosition FamilyGame::chain_restriction(const GamePosition& p, const ComponentPair& pair, bool left_chain) const {
  const ChainRef ref = chain_ref(pair, left_chain);
  const NodeRole::Kind kind = left_chain ? NodeRole::kLeftChain : NodeRole::kRightChain;
  auto local_index = [&](Side s, NodeIndex v) -> std::optional<std::size_t> {
    const NodeRole& r = roles(s)[v];
    const std::size_t want = s == Side::kLeft ? pair.e_component : pair.u_component;
    if (r.kind == kind && r.component == want) return r.index;
    return std::nullopt;
  };

  GamePosition out = new_game(chains_[ref.e_chain->size()], chains_[ref.u_chain->size()], p.rounds_left);
  for (std::size_t j = 0; j < p.left_elems.size(); ++j) {
    auto a = local_index(Side::kLeft, p.left_elems[j]);
    auto b = local_index(Side::kRight, p.right_elems[j]);
    if (a.has_value() != b.has_value())
      throw NotLocallyWinning("element " + std::to_string(j + 1) + " lies in the " +
                              (left_chain ? "left" : "right") + " chain on one side only");
    if (a) {
      out.left_elems.push_back(*a);
      out.right_elems.push_back(*b);
    }
  }
  auto cut = [&](const NodeSubset& set, const std::vector<NodeIndex>& chain) {
    NodeSubset local(chain.size());
    for (std::size_t i = 0; i < chain.size(); ++i)
      if (set.contains(chain[i])) local.insert(i);
    return local;
  };
  for (std::size_t k = 0; k < p.left_sets.size(); ++k) {
    out.left_sets.push_back(cut(p.left_sets[k], *ref.e_chain));
    out.right_sets.push_back(cut(p.right_sets[k], *ref.u_chain));
  }
  return out;
}

NodeIndex FamilyGame::local_element_reply(const GamePosition& p, const ComponentPair& pair, Side s,
                                          const NodeRole& role) const {
  const Side reply_side = other(s);
  const auto& partner = component(reply_side, reply_side == Side::kLeft ? pair.e_component : pair.u_component).nodes;
  if (role.kind == NodeRole::kNamed) return named_nodes(partner)[role.index];

  const bool left_chain = role.kind == NodeRole::kLeftChain;
  const ChainRef ref = chain_ref(pair, left_chain);
  const auto& target = reply_side == Side::kLeft ? *ref.e_chain : *ref.u_chain;
  if (ref.mode == ChainMode::kMirror) return target[role.index];

  GamePosition local = apply_move(chain_restriction(p, pair, left_chain), ElementMove{s, role.index});
  return target[std::get<DupElementMove>(solvers_->reply(chains_, local)).node];
}

void FamilyGame::local_set_reply(const GamePosition& p, const ComponentPair& pair, Side s, const NodeSubset& set,
                                 NodeSubset& reply) const {
  const Side reply_side = other(s);
  const auto& own = component(s, s == Side::kLeft ? pair.e_component : pair.u_component).nodes;
  const auto& partner = component(reply_side, reply_side == Side::kLeft ? pair.e_component : pair.u_component).nodes;
  auto own_named = named_nodes(own), partner_named = named_nodes(partner);
  for (std::size_t x = 0; x < own_named.size(); ++x)
    if (set.contains(own_named[x])) reply.insert(partner_named[x]);

  for (bool left_chain : {true, false}) {
    const ChainRef ref = chain_ref(pair, left_chain);
    const auto& source = s == Side::kLeft ? *ref.e_chain : *ref.u_chain;
    const auto& target = reply_side == Side::kLeft ? *ref.e_chain : *ref.u_chain;
    NodeSubset local(source.size());
    for (std::size_t i = 0; i < source.size(); ++i)
      if (set.contains(source[i])) local.insert(i);
    if (ref.mode == ChainMode::kMirror) {
      local.for_each([&](NodeIndex i) { reply.insert(target[i]); });
      continue;
    }
    GamePosition pos = apply_move(chain_restriction(p, pair, left_chain), SetMove{s, local});
    std::get<DupSetMove>(solvers_->reply(chains_, pos)).set.for_each([&](NodeIndex i) { reply.insert(target[i]); });
  }
}

std::pair<Move, LocalPairing> FamilyGame::duplicator_strategy(const GamePosition& p,
                                                              const LocalPairing& pairing) const {
  if (p.to_move() != Player::kDuplicator || p.finished()) throw IllegalMove("duplicator is not to move");
  if (!(*p.left == e_->structure) || !(*p.right == u_->structure))
    throw InvalidConfig("position is not a game on this pair of families");
  if (pairing.unpaired) {
    if (std::holds_alternative<AwaitingBoundReply>(p.phase)) return {BoundReplyMove{bound_cap(p)}, pairing};
    auto mv = low_rank_reply(p);
    if (!mv)
      throw InsufficientFreshComponents("no reply keeps the remaining game won", e_->config.multiplicity + 1);
    return {std::move(*mv), pairing};
  }
  try {
    auto result = paired_reply(p, pairing);
    const bool exhausted = result.second.pairs.size() ==
                           std::min(e_->components.size(), u_->components.size());
    if (exhausted && p.rounds_left <= 2 && !equal_low_rank(apply_move(p, result.first), p.rounds_left - 1)) {
      if (auto mv = low_rank_reply(p)) {
        LocalPairing next = pairing;
        next.unpaired = true;
        return {std::move(*mv), next};
      }
    }
    return result;
  } catch (const InsufficientFreshComponents&) {
    if (p.rounds_left > 2) throw;
    auto mv = low_rank_reply(p);
    if (!mv) throw;
    LocalPairing next = pairing;
    next.unpaired = true;
    return {std::move(*mv), next};
  }
}

std::optional<Move> FamilyGame::low_rank_reply(const GamePosition& p) const {
  const std::size_t after = p.rounds_left - 1;
  const auto* pending = std::get_if<AwaitingDuplicator>(&p.phase);
  if (after > 1 || !pending) return std::nullopt;
  const auto& d = *pending;
  auto keeps = [&](const Move& mv) { return equal_low_rank(apply_move(p, mv), after); };

  if (std::holds_alternative<ElementMove>(d.pending)) {
    const Side s = std::get<ElementMove>(d.pending).side;
    for (NodeIndex w = 0; w < family(other(s)).structure.size(); ++w)
      if (keeps(DupElementMove{w})) return DupElementMove{w};
    return std::nullopt;
  }

  const auto& spoiler = std::get<SetMove>(d.pending);
  const Side s = spoiler.side;
  const Side r = other(s);
  const std::size_t n = family(r).structure.size();
  NodeSubset reply(n);
  if (after == 0) {
    reply = NodeSubset::all(n);
    for (std::size_t j = 0; j < p.elems(s).size(); ++j)
      if (!spoiler.set.contains(p.elems(s)[j])) reply.erase(p.elems(r)[j]);
  } else {
    // Every atomic type realised on spoiler's side, with the new membership bit.
    std::map<AtomicType, std::pair<bool, bool>> wanted;  // (some outside, some inside)
    for (NodeIndex u = 0; u < family(s).structure.size(); ++u) {
      auto& w = wanted[atomic_type(p, s, u)];
      (spoiler.set.contains(u) ? w.second : w.first) = true;
    }
    std::map<AtomicType, bool> kept_out;
    for (NodeIndex v = 0; v < n; ++v) {
      auto it = wanted.find(atomic_type(p, r, v));
      if (it == wanted.end()) return std::nullopt;
      const auto [out, in] = it->second;
      bool& done = kept_out[it->first];
      if (in && (!out || done)) {
        reply.insert(v);
      } else {
        done = true;
      }
    }
  }
  if (d.bound && reply.count() < *d.bound) return std::nullopt;
  Move mv = d.bound ? Move{BoundedDupSetMove{reply}} : Move{DupSetMove{reply}};
  if (!keeps(mv)) return std::nullopt;
  return mv;
}

std::pair<Move, LocalPairing> FamilyGame::paired_reply(const GamePosition& p, const LocalPairing& pairing) const {
  LocalPairing next = pairing;

  if (const auto* br = std::get_if<AwaitingBoundReply>(&p.phase))
    return {BoundReplyMove{bound_reply(br->side, br->l, pairing)}, next};

  const auto& d = std::get<AwaitingDuplicator>(p.phase);
  auto lookup = [&](Side s, std::size_t c) -> const ComponentPair* {
    return s == Side::kLeft ? next.by_e(c) : next.by_u(c);
  };
  auto add_pair = [&](Side s, std::size_t c, std::size_t partner) {
    next.pairs.push_back(s == Side::kLeft ? make_pair(c, partner) : make_pair(partner, c));
  };

  if (const auto* e = std::get_if<ElementMove>(&d.pending)) {
    const Side s = e->side;
    const NodeRole& role = roles(s)[e->node];
    if (role.kind == NodeRole::kFinal) return {DupElementMove{family(other(s)).final_node}, next};
    if (!lookup(s, role.component)) {
      const bool heavy = role.kind != NodeRole::kRightChain;
      std::vector<bool> taken(family(other(s)).components.size(), false);
      auto partner = fresh_partner(s, role.component, heavy, next, taken);
      if (!partner)
        throw InsufficientFreshComponents("no fresh component left to pair with",
                                          needed_multiplicity(s, {{role.component, heavy}}, next));
      add_pair(s, role.component, *partner);
    }
    return {DupElementMove{local_element_reply(p, *lookup(s, role.component), s, role)}, next};
  }

  const auto& spoiler = std::get<SetMove>(d.pending);
  const Side s = spoiler.side;
  const Side reply_side = other(s);
  NodeSubset reply(family(reply_side).structure.size());
  if (spoiler.set.contains(family(s).final_node)) reply.insert(family(reply_side).final_node);

  std::vector<std::size_t> left_count(family(s).components.size(), 0), right_count(left_count);
  std::vector<bool> touched(left_count.size(), false);
  spoiler.set.for_each([&](NodeIndex v) {
    const NodeRole& r = roles(s)[v];
    if (r.kind == NodeRole::kFinal) return;
    touched[r.component] = true;
    if (r.kind == NodeRole::kLeftChain) ++left_count[r.component];
    if (r.kind == NodeRole::kRightChain) ++right_count[r.component];
  });
  std::vector<std::pair<std::size_t, bool>> fresh;
  for (std::size_t c = 0; c < touched.size(); ++c)
    if (touched[c] && !lookup(s, c)) fresh.emplace_back(c, left_count[c] >= right_count[c]);

  std::vector<bool> taken(family(reply_side).components.size(), false);
  const LocalPairing before = next;
  for (const auto& [c, heavy] : fresh) {
    auto partner = fresh_partner(s, c, heavy, next, taken);
    if (!partner)
      throw InsufficientFreshComponents("not enough fresh components to answer the set",
                                        needed_multiplicity(s, fresh, before));
    taken[*partner] = true;
    add_pair(s, c, *partner);
  }
  for (const auto& pair : next.pairs) local_set_reply(p, pair, s, spoiler.set, reply);

  if (d.bound) {
    if (reply.count() < *d.bound)
      throw InsufficientFreshComponents("reply has " + std::to_string(reply.count()) + " nodes but the bound is " +
                                            std::to_string(*d.bound),
                                        needed_multiplicity(s, fresh, before));
    return {BoundedDupSetMove{std::move(reply)}, next};
  }
  return {DupSetMove{std::move(reply)}, next};
}

LocalCheck FamilyGame::locally_winning_check(const GamePosition& p, const LocalPairing& pairing, std::size_t i) const {
  auto fail = [](std::string why) { return LocalCheck{false, std::move(why)}; };
  if (pairing.unpaired) {
    if (i > 1) return fail("pairing was abandoned with more than one round left");
    auto verdict = check_partial_isomorphism(p);
    if (!verdict.duplicator_wins()) return fail(verdict.violations.front());
    if (!equal_low_rank(p, i)) return fail("the two sides realise different atomic types");
    return {};
  }
  const std::size_t ne = e_->components.size(), nu = u_->components.size();

  std::vector<bool> seen_e(ne, false), seen_u(nu, false);
  for (const auto& pr : pairing.pairs) {
    if (pr.e_component >= ne || pr.u_component >= nu) return fail("pairing refers to a missing component");
    if (seen_e[pr.e_component] || seen_u[pr.u_component]) return fail("pairing is not injective");
    seen_e[pr.e_component] = seen_u[pr.u_component] = true;
    if (!(pr == make_pair(pr.e_component, pr.u_component))) return fail("pairing has inconsistent chain modes");
  }
  if (p.left_elems.size() != p.right_elems.size() || p.left_sets.size() != p.right_sets.size())
    return fail("element or set lists differ in length");

  for (std::size_t j = 0; j < p.left_elems.size(); ++j) {
    const NodeRole& a = e_roles_[p.left_elems[j]];
    const NodeRole& b = u_roles_[p.right_elems[j]];
    const std::string tag = "element " + std::to_string(j + 1) + ": ";
    if ((a.kind == NodeRole::kFinal) != (b.kind == NodeRole::kFinal))
      return fail(tag + "final node chosen on one side only");
    if (a.kind == NodeRole::kFinal) continue;
    const ComponentPair* pa = pairing.by_e(a.component);
    if (!pa || pa->u_component != b.component) return fail(tag + "E component not paired with the U component");
    const ComponentPair* pb = pairing.by_u(b.component);
    if (!pb || pb->e_component != a.component) return fail(tag + "U component not paired with the E component");
  }
  for (std::size_t k = 0; k < p.left_sets.size(); ++k) {
    const std::string tag = "set " + std::to_string(k + 1) + ": ";
    if (p.left_sets[k].contains(e_->final_node) != p.right_sets[k].contains(u_->final_node))
      return fail(tag + "final node membership differs");
    for (std::size_t c = 0; c < ne; ++c)
      if (!pairing.by_e(c) && p.left_sets[k].intersects(e_->components[c].members))
        return fail(tag + "meets unpaired E component " + std::to_string(c));
    for (std::size_t c = 0; c < nu; ++c)
      if (!pairing.by_u(c) && p.right_sets[k].intersects(u_->components[c].members))
        return fail(tag + "meets unpaired U component " + std::to_string(c));
  }

  for (const auto& pr : pairing.pairs) {
    const std::string tag = "pair E#" + std::to_string(pr.e_component) + "/U#" + std::to_string(pr.u_component) + ": ";
    auto en = named_nodes(e_->components[pr.e_component].nodes);
    auto un = named_nodes(u_->components[pr.u_component].nodes);
    for (std::size_t x = 0; x < en.size(); ++x) {
      for (std::size_t j = 0; j < p.left_elems.size(); ++j)
        if ((p.left_elems[j] == en[x]) != (p.right_elems[j] == un[x]))
          return fail(tag + "element " + std::to_string(j + 1) + " disagrees on " + kNamedLabels[x]);
      for (std::size_t k = 0; k < p.left_sets.size(); ++k)
        if (p.left_sets[k].contains(en[x]) != p.right_sets[k].contains(un[x]))
          return fail(tag + "set " + std::to_string(k + 1) + " disagrees on " + kNamedLabels[x]);
    }
    for (bool left_chain : {true, false}) {
      const ChainRef ref = chain_ref(pr, left_chain);
      const std::string which = left_chain ? "left chain" : "right chain";
      GamePosition local;
      try {
        local = chain_restriction(p, pr, left_chain);
      } catch (const NotLocallyWinning& e) {
        return fail(tag + e.what());
      }
      local.rounds_left = i;
      GameSolver& solver = solvers_->get(chains_, ref.e_chain->size(), ref.u_chain->size(), i);
      if (!solver.sides_equivalent(local, i))
        return fail(tag + which + " restriction is not a duplicator win with " + std::to_string(i) + " rounds left");
    }
  }
  return {};
}

}  // namespace treehom
