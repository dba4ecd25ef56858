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

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <functional>

#include "treehom/errors.hpp"

namespace treehom {

namespace {

void put_u32(std::string& out, std::uint32_t v) { out.append(reinterpret_cast<const char*>(&v), sizeof v); }
void put_u64(std::string& out, std::uint64_t v) { out.append(reinterpret_cast<const char*>(&v), sizeof v); }

void put_subset(std::string& out, const NodeSubset& s) {
  put_u32(out, static_cast<std::uint32_t>(s.universe()));
  put_u32(out, static_cast<std::uint32_t>(s.count()));
  s.for_each([&](NodeIndex v) { put_u32(out, static_cast<std::uint32_t>(v)); });
}

class Reader {
 public:
  explicit Reader(const std::string& data) : data_(data) {}
  bool ok() const { return ok_; }
  bool at_end() const { return pos_ == data_.size(); }

  template <typename T>
  T get() {
    T v{};
    if (pos_ + sizeof v > data_.size()) {
      ok_ = false;
      return v;
    }
    std::memcpy(&v, data_.data() + pos_, sizeof v);
    pos_ += sizeof v;
    return v;
  }
  std::string bytes(std::size_t n) {
    if (pos_ + n > data_.size()) {
      ok_ = false;
      return {};
    }
    std::string s = data_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  NodeSubset subset() {
    auto universe = get<std::uint32_t>();
    auto count = get<std::uint32_t>();
    if (!ok_ || count > universe) {
      ok_ = false;
      return {};
    }
    NodeSubset s(universe);
    for (std::uint32_t i = 0; i < count && ok_; ++i) {
      auto v = get<std::uint32_t>();
      if (v >= universe) ok_ = false;
      else s.insert(v);
    }
    return s;
  }

 private:
  const std::string& data_;
  std::size_t pos_ = 0;
  bool ok_ = true;
};

void encode_move(std::string& out, const Move& mv) {
  out.push_back(static_cast<char>(mv.index()));
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ElementMove>) {
          out.push_back(static_cast<char>(m.side));
          put_u64(out, m.node);
        } else if constexpr (std::is_same_v<T, DupElementMove>) {
          put_u64(out, m.node);
        } else if constexpr (std::is_same_v<T, SetMove>) {
          out.push_back(static_cast<char>(m.side));
          put_subset(out, m.set);
        } else if constexpr (std::is_same_v<T, BoundMove>) {
          out.push_back(static_cast<char>(m.side));
          put_u64(out, m.l);
        } else if constexpr (std::is_same_v<T, BoundReplyMove>) {
          put_u64(out, m.m);
        } else {
          put_subset(out, m.set);
        }
      },
      mv);
}

std::optional<Move> decode_move(Reader& in) {
  auto kind = in.get<std::uint8_t>();
  auto side = [&] {
    auto s = in.get<std::uint8_t>();
    return s == 0 ? Side::kLeft : Side::kRight;
  };
  std::optional<Move> mv;
  switch (kind) {
    case 0: {
      Side s = side();
      mv = ElementMove{s, in.get<std::uint64_t>()};
      break;
    }
    case 1: mv = DupElementMove{in.get<std::uint64_t>()}; break;
    case 2: {
      Side s = side();
      mv = SetMove{s, in.subset()};
      break;
    }
    case 3: mv = DupSetMove{in.subset()}; break;
    case 4: {
      Side s = side();
      mv = BoundMove{s, in.get<std::uint64_t>()};
      break;
    }
    case 5: mv = BoundReplyMove{in.get<std::uint64_t>()}; break;
    case 6: mv = BoundedSetMove{in.subset()}; break;
    case 7: mv = BoundedDupSetMove{in.subset()}; break;
    default: return std::nullopt;
  }
  if (!in.ok()) return std::nullopt;
  return mv;
}

constexpr char kMagic[4] = {'T', 'H', 'S', 'T'};

}  // namespace

SidePosition side_position(const GamePosition& p, Side s) {
  SidePosition out;
  out.elems = p.elems(s);
  for (const auto& x : p.sets(s)) out.sets.push_back(x.to_mask());
  return out;
}

// ---------------------------------------------------------------- TypeTable

std::size_t TypeTable::add(const ConstraintStructure& s) {
  if (s.size() > kSolverNodeLimit)
    throw SizeLimitExceeded("game solver handles at most " + std::to_string(kSolverNodeLimit) + " nodes per side");
  std::lock_guard lock(mu_);
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i].structure == s) return i;
  entries_.push_back(Entry{s, {}});
  return entries_.size() - 1;
}

std::size_t TypeTable::interned_types() const {
  std::lock_guard lock(mu_);
  return interned_.size();
}

TypeId TypeTable::type(std::size_t handle, const SidePosition& pos, std::size_t rounds) {
  std::lock_guard lock(mu_);
  SidePosition scratch = pos;
  return type_locked(entries_.at(handle), scratch, rounds);
}

TypeId TypeTable::intern(const std::string& key) {
  auto [it, inserted] = interned_.try_emplace(key, static_cast<TypeId>(interned_.size()));
  return it->second;
}

TypeId TypeTable::type_locked(Entry& e, SidePosition& pos, std::size_t rounds) {
  const ConstraintStructure& g = e.structure;
  const std::size_t ne = pos.elems.size(), ns = pos.sets.size();

  std::string atomic;
  atomic.push_back('a');
  atomic.push_back(static_cast<char>(ne));
  atomic.push_back(static_cast<char>(ns));
  for (std::size_t j = 0; j < ne; ++j) {
    for (std::size_t k = 0; k < ne; ++k) {
      NodeIndex a = pos.elems[j], b = pos.elems[k];
      atomic.push_back(static_cast<char>((a == b) | (g.lt(a, b) << 1) | (g.inc(a, b) << 2)));
    }
    for (std::size_t k = 0; k < ns; ++k) atomic.push_back(static_cast<char>((pos.sets[k] >> pos.elems[j]) & 1));
  }
  if (rounds == 0) return intern(atomic);

  std::string memo_key;
  memo_key.push_back(static_cast<char>(rounds));
  memo_key.push_back(static_cast<char>(ne));
  for (NodeIndex v : pos.elems) memo_key.push_back(static_cast<char>(v));
  for (std::uint64_t m : pos.sets) memo_key.push_back(static_cast<char>(m));
  if (auto it = e.memo.find(memo_key); it != e.memo.end()) return it->second;

  const TypeId base = intern(atomic);
  std::vector<TypeId> by_elem, by_set;
  for (NodeIndex v = 0; v < g.size(); ++v) {
    pos.elems.push_back(v);
    by_elem.push_back(type_locked(e, pos, rounds - 1));
    pos.elems.pop_back();
  }
  // With one round left, a set extension only records memberships of the
  // chosen elements, and every pattern consistent with their equalities is
  // available on both sides.
  if (rounds >= 2) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.size()); ++mask) {
      pos.sets.push_back(mask);
      by_set.push_back(type_locked(e, pos, rounds - 1));
      pos.sets.pop_back();
    }
  }
  auto normalize = [](std::vector<TypeId>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  normalize(by_elem);
  normalize(by_set);

  std::string key;
  key.push_back('r');
  key.push_back(static_cast<char>(rounds));
  put_u32(key, static_cast<std::uint32_t>(base));
  put_u32(key, static_cast<std::uint32_t>(by_elem.size()));
  for (TypeId t : by_elem) put_u32(key, static_cast<std::uint32_t>(t));
  for (TypeId t : by_set) put_u32(key, static_cast<std::uint32_t>(t));
  TypeId id = intern(key);
  e.memo.emplace(std::move(memo_key), id);
  return id;
}

TypeTable& shared_type_table() {
  static TypeTable table;
  return table;
}

// ------------------------------------------------------------ StrategyTable

std::uint64_t structure_hash(const ConstraintStructure& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : format_structure(s)) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string StrategyTable::position_key(const GamePosition& p) {
  std::string key;
  put_u32(key, static_cast<std::uint32_t>(p.rounds_left));
  key.push_back(static_cast<char>(p.phase.index()));
  std::visit(
      [&](const auto& ph) {
        using T = std::decay_t<decltype(ph)>;
        if constexpr (std::is_same_v<T, AwaitingBoundReply>) {
          key.push_back(static_cast<char>(ph.side));
          put_u64(key, ph.l);
        } else if constexpr (std::is_same_v<T, AwaitingBoundedSet>) {
          key.push_back(static_cast<char>(ph.side));
          put_u64(key, ph.l);
          put_u64(key, ph.m);
        } else if constexpr (std::is_same_v<T, AwaitingDuplicator>) {
          std::visit([&](const auto& m) { encode_move(key, Move{m}); }, ph.pending);
          put_u64(key, ph.bound ? *ph.bound + 1 : 0);
        }
      },
      p.phase);
  for (Side s : {Side::kLeft, Side::kRight}) {
    put_u32(key, static_cast<std::uint32_t>(p.elems(s).size()));
    for (NodeIndex v : p.elems(s)) put_u32(key, static_cast<std::uint32_t>(v));
    put_u32(key, static_cast<std::uint32_t>(p.sets(s).size()));
    for (const auto& x : p.sets(s)) put_subset(key, x);
  }
  return key;
}

void StrategyTable::record(const GamePosition& p, const Move& mv) { entries_.insert_or_assign(position_key(p), mv); }

std::optional<Move> StrategyTable::lookup(const GamePosition& p) const {
  auto it = entries_.find(position_key(p));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void StrategyTable::save(const std::string& path) const {
  std::string out(kMagic, sizeof kMagic);
  put_u32(out, kFormatVersion);
  put_u64(out, left_hash_);
  put_u64(out, right_hash_);
  put_u32(out, static_cast<std::uint32_t>(rounds_));
  out.push_back(complete_ ? 1 : 0);
  put_u64(out, entries_.size());
  for (const auto& [key, mv] : entries_) {
    put_u32(out, static_cast<std::uint32_t>(key.size()));
    out += key;
    encode_move(out, mv);
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write strategy cache '" + path + "'");
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw std::runtime_error("failed writing strategy cache '" + path + "'");
}

std::optional<StrategyTable> StrategyTable::load(const std::string& path, const ConstraintStructure& left,
                                                 const ConstraintStructure& right, std::size_t rounds) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return std::nullopt;
  std::string data((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  Reader in(data);
  if (in.bytes(sizeof kMagic) != std::string(kMagic, sizeof kMagic)) return std::nullopt;
  if (in.get<std::uint32_t>() != kFormatVersion) return std::nullopt;
  auto lh = in.get<std::uint64_t>();
  auto rh = in.get<std::uint64_t>();
  auto r = in.get<std::uint32_t>();
  if (!in.ok() || lh != structure_hash(left) || rh != structure_hash(right) || r != rounds) return std::nullopt;
  StrategyTable table(lh, rh, rounds);
  table.complete_ = in.get<std::uint8_t>() != 0;
  auto count = in.get<std::uint64_t>();
  for (std::uint64_t i = 0; i < count && in.ok(); ++i) {
    auto len = in.get<std::uint32_t>();
    std::string key = in.bytes(len);
    auto mv = decode_move(in);
    if (!mv) return std::nullopt;
    table.entries_.emplace(std::move(key), std::move(*mv));
  }
  if (!in.ok() || !in.at_end()) return std::nullopt;
  return table;
}

// --------------------------------------------------------------- GameSolver

GameSolver::GameSolver(const ConstraintStructure& left, const ConstraintStructure& right, std::size_t rounds,
                       TypeTable& table)
    : table_(table), rounds_(rounds) {
  if (rounds > kSolverRoundLimit)
    throw SizeLimitExceeded("game solver handles at most " + std::to_string(kSolverRoundLimit) + " rounds");
  left_handle_ = table_.add(left);
  right_handle_ = table_.add(right);
  initial_ = new_game(left, right, rounds);
}

TypeId GameSolver::type_after(Side s, const GamePosition& p, std::optional<NodeIndex> elem,
                              std::optional<std::uint64_t> set, std::size_t rounds) {
  SidePosition pos = side_position(p, s);
  if (elem) pos.elems.push_back(*elem);
  if (set) pos.sets.push_back(*set);
  return table_.type(handle(s), pos, rounds);
}

bool GameSolver::sides_equivalent(const GamePosition& p, std::size_t rounds) {
  return type_after(Side::kLeft, p, std::nullopt, std::nullopt, rounds) ==
         type_after(Side::kRight, p, std::nullopt, std::nullopt, rounds);
}

namespace {

std::uint64_t full_mask(std::size_t n) { return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

}  // namespace

Player GameSolver::winner(const GamePosition& p) {
  if (auto w = decided_winner(p)) return *w;
  if (std::holds_alternative<AwaitingSpoiler>(p.phase))
    return sides_equivalent(p, p.rounds_left) ? Player::kDuplicator : Player::kSpoiler;
  if (std::holds_alternative<AwaitingBoundReply>(p.phase)) return Player::kDuplicator;
  auto mv = best_move(p);
  return winner(apply_move(p, *mv));
}

std::optional<Move> GameSolver::best_move(const GamePosition& p) {
  if (p.finished() || !has_legal_move(p)) return std::nullopt;
  const std::size_t after = p.rounds_left - 1;

  // Best answer on side `s` to a spoiler extension on the other side whose
  // type is `target`; sets must have at least `min_size` nodes.
  auto element_answer = [&](Side s, TypeId target) -> std::optional<NodeIndex> {
    for (NodeIndex w = 0; w < p.structure(s).size(); ++w)
      if (type_after(s, p, w, std::nullopt, after) == target) return w;
    return std::nullopt;
  };
  auto set_answer = [&](Side s, TypeId target, std::size_t min_size) -> std::optional<std::uint64_t> {
    std::optional<std::uint64_t> best;
    const std::size_t n = p.structure(s).size();
    for (std::uint64_t mask = 0; mask <= full_mask(n); ++mask) {
      const auto c = static_cast<std::size_t>(std::popcount(mask));
      if (c < min_size) continue;
      if (best && c <= static_cast<std::size_t>(std::popcount(*best))) continue;
      if (type_after(s, p, std::nullopt, mask, after) == target) best = mask;
    }
    return best;
  };

  if (std::holds_alternative<AwaitingSpoiler>(p.phase)) {
    for (Side s : {Side::kLeft, Side::kRight})
      for (NodeIndex v = 0; v < p.structure(s).size(); ++v)
        if (!element_answer(other(s), type_after(s, p, v, std::nullopt, after))) return ElementMove{s, v};
    for (Side s : {Side::kLeft, Side::kRight}) {
      const std::size_t n = p.structure(s).size();
      for (std::uint64_t mask = 0; mask <= full_mask(n); ++mask)
        if (!set_answer(other(s), type_after(s, p, std::nullopt, mask, after), 0))
          return SetMove{s, NodeSubset::from_mask(n, mask)};
    }
    if (!p.left->empty()) return ElementMove{Side::kLeft, 0};
    return SetMove{Side::kLeft, NodeSubset(0)};
  }
  if (std::holds_alternative<AwaitingBoundReply>(p.phase)) return BoundReplyMove{bound_cap(p)};
  if (const auto* bs = std::get_if<AwaitingBoundedSet>(&p.phase)) {
    const std::size_t n = p.structure(bs->side).size();
    std::optional<std::uint64_t> fallback;
    for (std::uint64_t mask = 0; mask <= full_mask(n); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) < bs->m) continue;
      if (!fallback) fallback = mask;
      if (!set_answer(other(bs->side), type_after(bs->side, p, std::nullopt, mask, after), bs->l))
        return BoundedSetMove{NodeSubset::from_mask(n, mask)};
    }
    return BoundedSetMove{NodeSubset::from_mask(n, *fallback)};
  }

  const auto& d = std::get<AwaitingDuplicator>(p.phase);
  if (const auto* e = std::get_if<ElementMove>(&d.pending)) {
    auto w = element_answer(other(e->side), type_after(e->side, p, e->node, std::nullopt, after));
    return DupElementMove{w.value_or(0)};
  }
  const auto& s = std::get<SetMove>(d.pending);
  const Side reply_side = other(s.side);
  const std::size_t n = p.structure(reply_side).size();
  auto t = set_answer(reply_side, type_after(s.side, p, std::nullopt, s.set.to_mask(), after), d.bound.value_or(0));
  NodeSubset reply = t ? NodeSubset::from_mask(n, *t) : NodeSubset::all(n);
  if (d.bound) return BoundedDupSetMove{std::move(reply)};
  return DupSetMove{std::move(reply)};
}

SolveResult solve_game(const ConstraintStructure& left, const ConstraintStructure& right, std::size_t rounds) {
  GameSolver solver(left, right, rounds);
  SolveResult res{solver.winner(), StrategyTable(structure_hash(left), structure_hash(right), rounds)};
  const Player winner = res.winner;

  std::function<void(const GamePosition&)> expand = [&](const GamePosition& p) {
    if (decided_winner(p)) return;
    if (res.strategy.size() >= kStrategyTableLimit) {
      res.strategy.set_complete(false);
      return;
    }
    if (p.to_move() == winner) {
      auto mv = solver.best_move(p);
      res.strategy.record(p, *mv);
      expand(apply_move(p, *mv));
      return;
    }
    for (const Move& mv : legal_moves(p)) {
      if (!res.strategy.complete()) return;
      expand(apply_move(p, mv));
    }
  };
  expand(solver.initial());
  return res;
}

ConstraintStructure anchored_chain(std::size_t n) {
  if (n == 0) throw InvalidConfig("anchored chain needs at least one node");
  std::vector<std::string> labels;
  std::vector<Edge> lt;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back("c" + std::to_string(i + 1));
    if (i + 1 < n) lt.emplace_back(i, i + 1);
  }
  return ConstraintStructure(std::move(labels), std::move(lt), {{n - 1, n - 1}});
}

std::vector<std::size_t> find_equivalent_chain_lengths(std::size_t rounds, std::size_t max_len) {
  if (rounds > kSolverRoundLimit || max_len > kSolverNodeLimit)
    throw SizeLimitExceeded("chain search handles at most 3 rounds and length 8");
  TypeTable& table = shared_type_table();
  std::map<TypeId, std::vector<std::size_t>> classes;
  for (std::size_t len = 1; len <= max_len; ++len)
    classes[table.type(table.add(anchored_chain(len)), {}, rounds)].push_back(len);
  std::vector<std::size_t> best;
  for (const auto& [id, lens] : classes)
    if (lens.size() > best.size() || (lens.size() == best.size() && lens < best)) best = lens;
  return best;
}

}  // namespace treehom
