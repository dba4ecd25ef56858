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

#include <algorithm>
#include <bit>
#include <functional>
#include <sstream>

#include "treehom/errors.hpp"

namespace treehom {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string subset_text(const NodeSubset& s) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  s.for_each([&](NodeIndex v) {
    out << (first ? "" : ",") << v;
    first = false;
  });
  out << '}';
  return out.str();
}

void check_subset(const NodeSubset& s, const ConstraintStructure& g, const char* what) {
  if (s.universe() != g.size()) throw IllegalMove(std::string(what) + " is not a subset of the chosen structure");
}

}  // namespace

std::string_view to_string(Side s) { return s == Side::kLeft ? "left" : "right"; }
std::string_view to_string(Player p) { return p == Player::kSpoiler ? "spoiler" : "duplicator"; }

Player mover_of(const Move& mv) {
  return std::visit(Overloaded{
                        [](const ElementMove&) { return Player::kSpoiler; },
                        [](const SetMove&) { return Player::kSpoiler; },
                        [](const BoundMove&) { return Player::kSpoiler; },
                        [](const BoundedSetMove&) { return Player::kSpoiler; },
                        [](const auto&) { return Player::kDuplicator; },
                    },
                    mv);
}

std::string describe(const Move& mv) {
  return std::visit(
      Overloaded{
          [](const ElementMove& m) { return "element " + std::string(to_string(m.side)) + " " + std::to_string(m.node); },
          [](const DupElementMove& m) { return "reply element " + std::to_string(m.node); },
          [](const SetMove& m) { return "set " + std::string(to_string(m.side)) + " " + subset_text(m.set); },
          [](const DupSetMove& m) { return "reply set " + subset_text(m.set); },
          [](const BoundMove& m) { return "bound " + std::string(to_string(m.side)) + " l=" + std::to_string(m.l); },
          [](const BoundReplyMove& m) { return "bound reply m=" + std::to_string(m.m); },
          [](const BoundedSetMove& m) { return "bounded set " + subset_text(m.set); },
          [](const BoundedDupSetMove& m) { return "reply bounded set " + subset_text(m.set); },
      },
      mv);
}

Player GamePosition::to_move() const {
  return std::holds_alternative<AwaitingSpoiler>(phase) || std::holds_alternative<AwaitingBoundedSet>(phase)
             ? Player::kSpoiler
             : Player::kDuplicator;
}

GamePosition new_game(std::shared_ptr<const ConstraintStructure> left,
                      std::shared_ptr<const ConstraintStructure> right, std::size_t rounds) {
  if (!left || !right) throw std::invalid_argument("game needs two structures");
  GamePosition p;
  p.left = std::move(left);
  p.right = std::move(right);
  p.rounds_left = rounds;
  return p;
}

GamePosition new_game(const ConstraintStructure& left, const ConstraintStructure& right, std::size_t rounds) {
  return new_game(std::make_shared<const ConstraintStructure>(left), std::make_shared<const ConstraintStructure>(right),
                  rounds);
}

std::size_t bound_cap(const GamePosition& p) { return std::max(p.left->size(), p.right->size()) + 1; }

namespace {

void all_subsets(std::size_t n, std::size_t min_size, const std::function<void(NodeSubset)>& emit) {
  if (n > kSetEnumerationLimit) throw SizeLimitExceeded("set enumeration limited to 16 nodes per side");
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask)
    if (static_cast<std::size_t>(std::popcount(mask)) >= min_size) emit(NodeSubset::from_mask(n, mask));
}

}  // namespace

std::vector<Move> legal_moves(const GamePosition& p, const LegalMoveOptions& options) {
  std::vector<Move> out;
  std::visit(Overloaded{
                 [&](const AwaitingSpoiler&) {
                   if (p.rounds_left == 0) throw GameOver();
                   for (Side s : {Side::kLeft, Side::kRight})
                     for (NodeIndex v = 0; v < p.structure(s).size(); ++v) out.push_back(ElementMove{s, v});
                   if (options.enumerate_sets)
                     for (Side s : {Side::kLeft, Side::kRight})
                       all_subsets(p.structure(s).size(), 0, [&](NodeSubset x) { out.push_back(SetMove{s, std::move(x)}); });
                   for (Side s : {Side::kLeft, Side::kRight})
                     for (std::size_t l = 0; l <= bound_cap(p); ++l) out.push_back(BoundMove{s, l});
                 },
                 [&](const AwaitingBoundReply&) {
                   for (std::size_t m = 0; m <= bound_cap(p); ++m) out.push_back(BoundReplyMove{m});
                 },
                 [&](const AwaitingBoundedSet& b) {
                   if (options.enumerate_sets)
                     all_subsets(p.structure(b.side).size(), b.m, [&](NodeSubset x) { out.push_back(BoundedSetMove{std::move(x)}); });
                 },
                 [&](const AwaitingDuplicator& d) {
                   if (const auto* e = std::get_if<ElementMove>(&d.pending)) {
                     for (NodeIndex v = 0; v < p.structure(other(e->side)).size(); ++v) out.push_back(DupElementMove{v});
                     return;
                   }
                   const auto& s = std::get<SetMove>(d.pending);
                   if (!options.enumerate_sets) return;
                   const std::size_t n = p.structure(other(s.side)).size();
                   if (d.bound)
                     all_subsets(n, *d.bound, [&](NodeSubset x) { out.push_back(BoundedDupSetMove{std::move(x)}); });
                   else
                     all_subsets(n, 0, [&](NodeSubset x) { out.push_back(DupSetMove{std::move(x)}); });
                 },
             },
             p.phase);
  return out;
}

std::optional<std::string> illegal_reason(const GamePosition& p, const Move& mv) {
  try {
    apply_move(p, mv);
  } catch (const IllegalMove& e) {
    return std::string(e.what());
  } catch (const GameOver& e) {
    return std::string(e.what());
  }
  return std::nullopt;
}

GamePosition apply_move(const GamePosition& p, const Move& mv) {
  GamePosition q = p;
  auto wrong_phase = [&]() -> IllegalMove {
    return IllegalMove("'" + describe(mv) + "' is not allowed while " + std::string(to_string(p.to_move())) +
                       " is to move in this phase");
  };
  auto close_round = [&]() {
    --q.rounds_left;
    q.phase = AwaitingSpoiler{};
  };

  if (std::holds_alternative<AwaitingSpoiler>(p.phase)) {
    if (mover_of(mv) == Player::kSpoiler && p.rounds_left == 0) throw GameOver();
    if (const auto* e = std::get_if<ElementMove>(&mv)) {
      if (e->node >= p.structure(e->side).size()) throw IllegalMove("element outside the chosen structure");
      q.phase = AwaitingDuplicator{*e, std::nullopt};
    } else if (const auto* s = std::get_if<SetMove>(&mv)) {
      check_subset(s->set, p.structure(s->side), "set");
      q.phase = AwaitingDuplicator{*s, std::nullopt};
    } else if (const auto* b = std::get_if<BoundMove>(&mv)) {
      if (b->l > bound_cap(p)) throw IllegalMove("bound exceeds " + std::to_string(bound_cap(p)));
      q.phase = AwaitingBoundReply{b->side, b->l};
    } else {
      throw wrong_phase();
    }
    return q;
  }

  if (const auto* br = std::get_if<AwaitingBoundReply>(&p.phase)) {
    const auto* r = std::get_if<BoundReplyMove>(&mv);
    if (!r) throw wrong_phase();
    if (r->m > bound_cap(p)) throw IllegalMove("bound reply exceeds " + std::to_string(bound_cap(p)));
    q.phase = AwaitingBoundedSet{br->side, br->l, r->m};
    return q;
  }

  if (const auto* bs = std::get_if<AwaitingBoundedSet>(&p.phase)) {
    const auto* s = std::get_if<BoundedSetMove>(&mv);
    if (!s) throw wrong_phase();
    check_subset(s->set, p.structure(bs->side), "bounded set");
    if (s->set.count() < bs->m)
      throw IllegalMove("bounded set has " + std::to_string(s->set.count()) + " nodes, needs at least " +
                        std::to_string(bs->m));
    q.phase = AwaitingDuplicator{SetMove{bs->side, s->set}, bs->l};
    return q;
  }

  const auto& d = std::get<AwaitingDuplicator>(p.phase);
  if (const auto* e = std::get_if<ElementMove>(&d.pending)) {
    const auto* r = std::get_if<DupElementMove>(&mv);
    if (!r) throw wrong_phase();
    if (r->node >= p.structure(other(e->side)).size()) throw IllegalMove("reply element outside the other structure");
    (e->side == Side::kLeft ? q.left_elems : q.right_elems).push_back(e->node);
    (e->side == Side::kLeft ? q.right_elems : q.left_elems).push_back(r->node);
    close_round();
    return q;
  }
  const auto& s = std::get<SetMove>(d.pending);
  const NodeSubset* reply = nullptr;
  if (d.bound) {
    const auto* r = std::get_if<BoundedDupSetMove>(&mv);
    if (!r) throw wrong_phase();
    reply = &r->set;
    check_subset(*reply, p.structure(other(s.side)), "reply set");
    if (reply->count() < *d.bound)
      throw IllegalMove("reply set has " + std::to_string(reply->count()) + " nodes, needs at least " +
                        std::to_string(*d.bound));
  } else {
    const auto* r = std::get_if<DupSetMove>(&mv);
    if (!r) throw wrong_phase();
    reply = &r->set;
    check_subset(*reply, p.structure(other(s.side)), "reply set");
  }
  (s.side == Side::kLeft ? q.left_sets : q.right_sets).push_back(s.set);
  (s.side == Side::kLeft ? q.right_sets : q.left_sets).push_back(*reply);
  close_round();
  return q;
}

bool has_legal_move(const GamePosition& p) {
  if (p.finished()) return false;
  if (const auto* bs = std::get_if<AwaitingBoundedSet>(&p.phase)) return p.structure(bs->side).size() >= bs->m;
  if (const auto* d = std::get_if<AwaitingDuplicator>(&p.phase)) {
    if (d->bound) return p.structure(other(std::get<SetMove>(d->pending).side)).size() >= *d->bound;
    if (const auto* e = std::get_if<ElementMove>(&d->pending)) return !p.structure(other(e->side)).empty();
  }
  return true;
}

FinalVerdict check_partial_isomorphism(const GamePosition& p) {
  FinalVerdict v;
  const auto& a = p.left_elems;
  const auto& b = p.right_elems;
  const ConstraintStructure& g = *p.left;
  const ConstraintStructure& h = *p.right;
  auto note = [&](bool& clause, std::string what) {
    if (clause) v.violations.push_back(std::move(what));
    clause = false;
  };
  for (std::size_t j = 0; j < a.size(); ++j)
    for (std::size_t k = 0; k < p.left_sets.size(); ++k)
      if (p.left_sets[k].contains(a[j]) != p.right_sets[k].contains(b[j]))
        note(v.membership, "element " + std::to_string(j + 1) + " and set " + std::to_string(k + 1) +
                               ": membership differs");
  for (std::size_t j = 0; j < a.size(); ++j)
    for (std::size_t k = 0; k < a.size(); ++k) {
      if ((a[j] == a[k]) != (b[j] == b[k]))
        note(v.equality, "elements " + std::to_string(j + 1) + " and " + std::to_string(k + 1) + ": equality differs");
      if (g.lt(a[j], a[k]) != h.lt(b[j], b[k]))
        note(v.relations, "elements " + std::to_string(j + 1) + " and " + std::to_string(k + 1) + ": lt differs");
      else if (g.inc(a[j], a[k]) != h.inc(b[j], b[k]))
        note(v.relations, "elements " + std::to_string(j + 1) + " and " + std::to_string(k + 1) + ": inc differs");
    }
  return v;
}

FinalVerdict final_verdict(const GamePosition& p) {
  if (!p.finished()) throw GameNotOver();
  return check_partial_isomorphism(p);
}

bool duplicator_wins_final(const GamePosition& p) { return final_verdict(p).duplicator_wins(); }

std::optional<Player> decided_winner(const GamePosition& p) {
  if (p.finished()) return duplicator_wins_final(p) ? Player::kDuplicator : Player::kSpoiler;
  if (!has_legal_move(p)) return p.to_move() == Player::kSpoiler ? Player::kDuplicator : Player::kSpoiler;
  return std::nullopt;
}

}  // namespace treehom
