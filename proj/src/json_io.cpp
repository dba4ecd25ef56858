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

#include "treehom/json_io.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "treehom/errors.hpp"

namespace treehom {
namespace {

ParseError bad_document(const std::string& what) { return ParseError(0, what); }

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw bad_document(std::string("missing field '") + name + "'");
  return j.at(name);
}

std::string string_field(const Json& j, const char* name) {
  const Json& f = field(j, name);
  if (!f.is_string()) throw bad_document(std::string("field '") + name + "' must be a string");
  return f.get<std::string>();
}

std::size_t count_field(const Json& j, const char* name) {
  const Json& f = field(j, name);
  if (!f.is_number_unsigned() && !(f.is_number_integer() && f.get<long long>() >= 0))
    throw bad_document(std::string("field '") + name + "' must be a non-negative integer");
  return f.get<std::size_t>();
}

NodeIndex node_for_move(const ConstraintStructure& s, const Json& label) {
  if (!label.is_string()) throw bad_document("node references must be label strings");
  auto v = s.find(label.get<std::string>());
  if (!v) throw IllegalMove("no node labelled '" + label.get<std::string>() + "' on that side");
  return *v;
}

Json edges_to_json(const ConstraintStructure& s, const std::vector<Edge>& edges) {
  Json out = Json::array();
  for (const auto& [a, b] : edges) out.push_back({s.label(a), s.label(b)});
  return out;
}

std::vector<std::pair<std::string, std::string>> edges_from_json(const Json& j, const char* name) {
  std::vector<std::pair<std::string, std::string>> out;
  if (!j.contains(name)) return out;
  const Json& list = j.at(name);
  if (!list.is_array()) throw bad_document(std::string("'") + name + "' must be an array");
  for (const auto& e : list) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
      throw bad_document(std::string("each entry of '") + name + "' must be a pair of labels");
    out.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  return out;
}

Json labels_of(const ConstraintStructure& s, const std::vector<NodeIndex>& nodes) {
  Json out = Json::array();
  for (NodeIndex v : nodes) out.push_back(s.label(v));
  return out;
}

// Side whose structure holds the labels of a move played in `before`.
Side move_side(const GamePosition& before, const Move& mv) {
  if (const auto* e = std::get_if<ElementMove>(&mv)) return e->side;
  if (const auto* s = std::get_if<SetMove>(&mv)) return s->side;
  if (const auto* b = std::get_if<BoundMove>(&mv)) return b->side;
  if (const auto* r = std::get_if<AwaitingBoundReply>(&before.phase)) return r->side;
  if (const auto* w = std::get_if<AwaitingBoundedSet>(&before.phase)) {
    return std::holds_alternative<BoundedSetMove>(mv) ? w->side : other(w->side);
  }
  if (const auto* d = std::get_if<AwaitingDuplicator>(&before.phase)) {
    const Side spoiler = std::visit([](const auto& m) { return m.side; }, d->pending);
    return other(spoiler);
  }
  throw IllegalMove("move does not fit the current phase");
}

}  // namespace

Json structure_to_json(const ConstraintStructure& s) {
  return {{"nodes", s.labels()}, {"lt", edges_to_json(s, s.lt_edges())}, {"inc", edges_to_json(s, s.inc_edges())}};
}

ConstraintStructure structure_from_json(const Json& j) {
  const Json& nodes = field(j, "nodes");
  if (!nodes.is_array()) throw bad_document("'nodes' must be an array of labels");
  std::vector<std::string> labels;
  for (const auto& n : nodes) {
    if (!n.is_string()) throw bad_document("'nodes' must be an array of labels");
    labels.push_back(n.get<std::string>());
  }
  try {
    return ConstraintStructure::from_labels(std::move(labels), edges_from_json(j, "lt"), edges_from_json(j, "inc"));
  } catch (const std::invalid_argument& e) {
    throw bad_document(e.what());
  } catch (const UnknownLabel& e) {
    throw bad_document(e.what());
  }
}

Json subset_to_json(const ConstraintStructure& s, const NodeSubset& b) { return labels_of(s, b.members()); }

NodeSubset subset_from_json(const ConstraintStructure& s, const Json& j) {
  if (!j.is_array()) throw bad_document("a node set must be an array of labels");
  NodeSubset out(s.size());
  for (const auto& label : j) out.insert(node_for_move(s, label));
  return out;
}

Json fixpoint_to_json(const ConstraintStructure& s, const FixpointResult& r) {
  Json stages = Json::object();
  for (NodeIndex v = 0; v < s.size(); ++v)
    if (r.stage[v]) stages[s.label(v)] = *r.stage[v];
  Json trace = Json::array();
  for (const auto& level : r.trace) {
    Json steps = Json::array();
    for (const auto& step : level)
      steps.push_back({{"component", subset_to_json(s, step.component)}, {"central", subset_to_json(s, step.central)}});
    trace.push_back(std::move(steps));
  }
  Json out = {{"exhausted", r.exhausted},
              {"stageCount", r.stage_count()},
              {"stages", std::move(stages)},
              {"residual", subset_to_json(s, r.residual)},
              {"trace", std::move(trace)}};
  if (!r.exhausted) out["stalledComponent"] = subset_to_json(s, r.stalled_component());
  return out;
}

Json level_sets_to_json(const ConstraintStructure& s, const LevelSets& l) {
  Json levels = Json::array();
  for (const auto& a : l.levels) levels.push_back(subset_to_json(s, a));
  return {{"levels", std::move(levels)}, {"covered", subset_to_json(s, l.covered())}};
}

Json witness_to_json(const ConstraintStructure& s, const Witness& w) {
  Json nodes = Json::array();
  for (std::size_t t = 0; t < w.tree.size(); ++t) {
    Json n = {{"name", w.tree.name(t)}, {"depth", w.tree.depth(t)}};
    n["parent"] = t == w.tree.root() ? Json(nullptr) : Json(w.tree.name(w.tree.parent(t)));
    nodes.push_back(std::move(n));
  }
  Json mapping = Json::object();
  for (NodeIndex v = 0; v < s.size(); ++v) mapping[s.label(v)] = w.tree.name(w.mapping[v]);
  return {{"tree", std::move(nodes)}, {"height", w.tree.height()}, {"mapping", std::move(mapping)}};
}

Json embedding_to_json(const ConstraintStructure& s, const EmbeddingResult& e) {
  Json words = Json::object();
  for (NodeIndex v = 0; v < s.size(); ++v) words[s.label(v)] = format_uword(e.phi[v]);
  Json added = Json::array();
  for (NodeIndex v : e.closed.added) added.push_back(e.closed.order.label(v));
  return {{"words", std::move(words)}, {"dyadicDepthBound", e.dyadic_depth_bound}, {"addedNodes", std::move(added)}};
}

Json family_summary(const Family& f) {
  const ConstraintStructure& s = f.structure;
  Json components = Json::array();
  for (const auto& c : f.components) {
    const auto& n = c.nodes;
    components.push_back({{"name", c.prefix},
                          {"n", c.spec.n},
                          {"m", c.spec.m},
                          {"size", c.members.count()},
                          {"named",
                           {{"l", s.label(n.l)},
                            {"r", s.label(n.r)},
                            {"a1", s.label(n.a1)},
                            {"a2", s.label(n.a2)},
                            {"b1", s.label(n.b1)},
                            {"b2", s.label(n.b2)},
                            {"b3", s.label(n.b3)}}},
                          {"leftChain", labels_of(s, n.left_chain)},
                          {"rightChain", labels_of(s, n.right_chain)}});
  }
  return {{"kind", std::string(to_string(f.config.kind))},
          {"sizes", f.config.sizes},
          {"multiplicity", f.config.multiplicity},
          {"nodeCount", s.size()},
          {"finalNode", s.label(f.final_node)},
          {"components", std::move(components)}};
}

Side side_from_string(const std::string& text) {
  if (text == "left") return Side::kLeft;
  if (text == "right") return Side::kRight;
  throw bad_document("side must be \"left\" or \"right\"");
}

Json move_to_json(const GamePosition& before, const Move& mv) {
  const Side side = move_side(before, mv);
  const ConstraintStructure& s = before.structure(side);
  const std::string side_name(to_string(side));
  return std::visit(
      [&](const auto& m) -> Json {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ElementMove>) {
          return {{"type", "element"}, {"side", side_name}, {"node", s.label(m.node)}};
        } else if constexpr (std::is_same_v<T, DupElementMove>) {
          return {{"type", "dupElement"}, {"side", side_name}, {"node", s.label(m.node)}};
        } else if constexpr (std::is_same_v<T, SetMove>) {
          return {{"type", "set"}, {"side", side_name}, {"nodes", subset_to_json(s, m.set)}};
        } else if constexpr (std::is_same_v<T, DupSetMove>) {
          return {{"type", "dupSet"}, {"side", side_name}, {"nodes", subset_to_json(s, m.set)}};
        } else if constexpr (std::is_same_v<T, BoundMove>) {
          return {{"type", "bound"}, {"side", side_name}, {"l", m.l}};
        } else if constexpr (std::is_same_v<T, BoundReplyMove>) {
          return {{"type", "boundReply"}, {"m", m.m}};
        } else if constexpr (std::is_same_v<T, BoundedSetMove>) {
          return {{"type", "boundedSet"}, {"side", side_name}, {"nodes", subset_to_json(s, m.set)}};
        } else {
          return {{"type", "boundedDupSet"}, {"side", side_name}, {"nodes", subset_to_json(s, m.set)}};
        }
      },
      mv);
}

Move move_from_json(const GamePosition& before, const Json& j) {
  const std::string type = string_field(j, "type");
  if (type == "element") {
    const Side side = side_from_string(string_field(j, "side"));
    return ElementMove{side, node_for_move(before.structure(side), field(j, "node"))};
  }
  if (type == "set") {
    const Side side = side_from_string(string_field(j, "side"));
    return SetMove{side, subset_from_json(before.structure(side), field(j, "nodes"))};
  }
  if (type == "bound") return BoundMove{side_from_string(string_field(j, "side")), count_field(j, "l")};
  if (type == "boundReply") return BoundReplyMove{count_field(j, "m")};

  const bool bounded = type == "boundedSet" || type == "boundedDupSet";
  if (bounded || type == "dupElement" || type == "dupSet") {
    // The side follows from the phase; an explicit side must agree with it.
    Move probe = type == "dupElement" ? Move{DupElementMove{0}}
                 : type == "dupSet"   ? Move{DupSetMove{NodeSubset(0)}}
                 : type == "boundedSet" ? Move{BoundedSetMove{NodeSubset(0)}}
                                        : Move{BoundedDupSetMove{NodeSubset(0)}};
    const Side side = move_side(before, probe);
    if (j.contains("side") && side_from_string(string_field(j, "side")) != side)
      throw IllegalMove(type + " must be played on the " + std::string(to_string(side)) + " side");
    const ConstraintStructure& s = before.structure(side);
    if (type == "dupElement") return DupElementMove{node_for_move(s, field(j, "node"))};
    NodeSubset set = subset_from_json(s, field(j, "nodes"));
    if (type == "dupSet") return DupSetMove{std::move(set)};
    if (type == "boundedSet") return BoundedSetMove{std::move(set)};
    return BoundedDupSetMove{std::move(set)};
  }
  throw bad_document("unknown move type '" + type + "'");
}

Json phase_to_json(const GamePosition& p) {
  return std::visit(
      [&](const auto& ph) -> Json {
        using T = std::decay_t<decltype(ph)>;
        if constexpr (std::is_same_v<T, AwaitingSpoiler>) {
          return {{"name", "awaitingSpoiler"}};
        } else if constexpr (std::is_same_v<T, AwaitingBoundReply>) {
          return {{"name", "awaitingBoundReply"}, {"side", std::string(to_string(ph.side))}, {"l", ph.l}};
        } else if constexpr (std::is_same_v<T, AwaitingBoundedSet>) {
          return {{"name", "awaitingBoundedSet"}, {"side", std::string(to_string(ph.side))}, {"l", ph.l}, {"m", ph.m}};
        } else {
          Json out = {{"name", "awaitingDuplicator"}};
          GamePosition before = p;
          before.phase = AwaitingSpoiler{};
          out["pending"] = std::visit([&](const auto& m) { return move_to_json(before, Move{m}); }, ph.pending);
          if (ph.bound) out["bound"] = *ph.bound;
          return out;
        }
      },
      p.phase);
}

Json position_to_json(const GamePosition& p) {
  Json elements = Json::array();
  for (std::size_t j = 0; j < p.left_elems.size(); ++j)
    elements.push_back({{"index", j + 1}, {"left", p.left->label(p.left_elems[j])},
                        {"right", p.right->label(p.right_elems[j])}});
  Json sets = Json::array();
  for (std::size_t k = 0; k < p.left_sets.size(); ++k)
    sets.push_back({{"index", k + 1}, {"left", subset_to_json(*p.left, p.left_sets[k])},
                    {"right", subset_to_json(*p.right, p.right_sets[k])}});
  return {{"roundsLeft", p.rounds_left},
          {"phase", phase_to_json(p)},
          {"toMove", std::string(to_string(p.to_move()))},
          {"finished", p.finished()},
          {"boundCap", bound_cap(p)},
          {"elements", std::move(elements)},
          {"sets", std::move(sets)}};
}

Json verdict_to_json(const FinalVerdict& v) {
  return {{"duplicatorWins", v.duplicator_wins()},
          {"clauses", {{"membership", v.membership}, {"equality", v.equality}, {"relations", v.relations}}},
          {"violations", v.violations}};
}

Json pairing_to_json(const FamilyGame& g, const LocalPairing& pairing) {
  auto mode = [](ChainMode m) { return m == ChainMode::kMirror ? "mirror" : "table"; };
  Json pairs = Json::array();
  for (const auto& pr : pairing.pairs)
    pairs.push_back({{"left", g.e_family().components[pr.e_component].prefix},
                     {"right", g.u_family().components[pr.u_component].prefix},
                     {"leftChain", mode(pr.left_mode)},
                     {"rightChain", mode(pr.right_mode)}});
  return {{"pairs", std::move(pairs)}, {"unpaired", pairing.unpaired}};
}

}  // namespace treehom
