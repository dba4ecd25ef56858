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

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "treehom/errors.hpp"

namespace treehom {

namespace {

bool valid_label(std::string_view label) {
  if (label.empty()) return false;
  return std::none_of(label.begin(), label.end(),
                      [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; });
}

void normalize(std::vector<Edge>& edges, std::size_t n) {
  for (const auto& [a, b] : edges)
    if (a >= n || b >= n) throw std::invalid_argument("edge endpoint outside the node list");
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

}  // namespace

ConstraintStructure::ConstraintStructure(std::vector<std::string> labels, std::vector<Edge> lt,
                                         std::vector<Edge> inc)
    : labels_(std::move(labels)), lt_(std::move(lt)), inc_(std::move(inc)) {
  const std::size_t n = labels_.size();
  index_.reserve(n);
  for (NodeIndex i = 0; i < n; ++i) {
    if (!valid_label(labels_[i])) throw std::invalid_argument("invalid node label '" + labels_[i] + "'");
    if (!index_.emplace(labels_[i], i).second)
      throw std::invalid_argument("duplicate node label '" + labels_[i] + "'");
  }
  normalize(lt_, n);
  normalize(inc_, n);
  lt_out_.assign(n, NodeSubset(n));
  lt_in_.assign(n, NodeSubset(n));
  inc_out_.assign(n, NodeSubset(n));
  inc_any_.assign(n, NodeSubset(n));
  for (const auto& [a, b] : lt_) {
    lt_out_[a].insert(b);
    lt_in_[b].insert(a);
  }
  for (const auto& [a, b] : inc_) {
    inc_out_[a].insert(b);
    inc_any_[a].insert(b);
    inc_any_[b].insert(a);
  }
}

ConstraintStructure ConstraintStructure::from_labels(
    std::vector<std::string> labels, const std::vector<std::pair<std::string, std::string>>& lt,
    const std::vector<std::pair<std::string, std::string>>& inc) {
  std::unordered_map<std::string, NodeIndex> idx;
  for (NodeIndex i = 0; i < labels.size(); ++i) idx.emplace(labels[i], i);
  auto convert = [&](const std::vector<std::pair<std::string, std::string>>& in) {
    std::vector<Edge> out;
    for (const auto& [a, b] : in) {
      auto ia = idx.find(a), ib = idx.find(b);
      if (ia == idx.end()) throw UnknownLabel(a);
      if (ib == idx.end()) throw UnknownLabel(b);
      out.emplace_back(ia->second, ib->second);
    }
    return out;
  };
  auto lt_edges = convert(lt);
  auto inc_edges = convert(inc);
  return ConstraintStructure(std::move(labels), std::move(lt_edges), std::move(inc_edges));
}

std::optional<NodeIndex> ConstraintStructure::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeIndex ConstraintStructure::index_of(std::string_view label) const {
  if (auto i = find(label)) return *i;
  throw UnknownLabel(std::string(label));
}

NodeSubset ConstraintStructure::subset(const std::vector<std::string>& labels) const {
  NodeSubset s(size());
  for (const auto& l : labels) s.insert(index_of(l));
  return s;
}

ConstraintStructure parse_structure(std::string_view text) {
  std::vector<std::string> labels;
  std::unordered_map<std::string, NodeIndex> idx;
  std::vector<std::pair<std::string, std::string>> lt, inc;
  std::vector<std::size_t> lt_lines, inc_lines;

  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::vector<std::string> tok;
    for (std::string w; words >> w;) tok.push_back(w);
    if (tok.empty()) continue;
    if (tok[0] == "node") {
      if (tok.size() != 2) throw ParseError(lineno, "expected 'node <label>'");
      if (!idx.emplace(tok[1], labels.size()).second) throw ParseError(lineno, "duplicate node '" + tok[1] + "'");
      labels.push_back(tok[1]);
    } else if (tok[0] == "lt" || tok[0] == "inc") {
      if (tok.size() != 3) throw ParseError(lineno, "expected '" + tok[0] + " <label> <label>'");
      (tok[0] == "lt" ? lt : inc).emplace_back(tok[1], tok[2]);
      (tok[0] == "lt" ? lt_lines : inc_lines).push_back(lineno);
    } else {
      throw ParseError(lineno, "unknown directive '" + tok[0] + "'");
    }
  }
  // Edges may reference nodes declared later in the file.
  auto check = [&](const auto& edges, const auto& lines) {
    for (std::size_t i = 0; i < edges.size(); ++i)
      for (const auto& l : {edges[i].first, edges[i].second})
        if (!idx.count(l)) throw ParseError(lines[i], "undeclared node '" + l + "'");
  };
  check(lt, lt_lines);
  check(inc, inc_lines);
  return ConstraintStructure::from_labels(std::move(labels), lt, inc);
}

ConstraintStructure load_structure(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_structure(buf.str());
}

std::string format_structure(const ConstraintStructure& s) {
  std::ostringstream out;
  for (const auto& l : s.labels()) out << "node " << l << '\n';
  for (const auto& [a, b] : s.lt_edges()) out << "lt " << s.label(a) << ' ' << s.label(b) << '\n';
  for (const auto& [a, b] : s.inc_edges()) out << "inc " << s.label(a) << ' ' << s.label(b) << '\n';
  return out.str();
}

std::vector<NodeSubset> connected_components(const ConstraintStructure& s, const NodeSubset& b) {
  std::vector<NodeSubset> out;
  NodeSubset left = b;
  while (!left.empty()) {
    NodeIndex seed = left.first();
    NodeSubset comp(s.size());
    comp.insert(seed);
    std::vector<NodeIndex> stack{seed};
    left.erase(seed);
    while (!stack.empty()) {
      NodeIndex v = stack.back();
      stack.pop_back();
      NodeSubset next = (s.lt_successors(v) | s.lt_predecessors(v)) & left;
      next.for_each([&](NodeIndex w) {
        comp.insert(w);
        left.erase(w);
        stack.push_back(w);
      });
    }
    out.push_back(std::move(comp));
  }
  return out;
}

NodeSubset central_points(const ConstraintStructure& s, const NodeSubset& b) {
  NodeSubset out(s.size());
  b.for_each([&](NodeIndex c) {
    if (!s.inc_neighbours(c).intersects(b) && !s.lt_predecessors(c).intersects(b)) out.insert(c);
  });
  return out;
}

ConstraintStructure restriction(const ConstraintStructure& s, const NodeSubset& b) {
  std::vector<NodeIndex> kept = b.members();
  std::vector<std::size_t> remap(s.size(), s.size());
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    remap[kept[i]] = i;
    labels.push_back(s.label(kept[i]));
  }
  auto filter = [&](const std::vector<Edge>& edges) {
    std::vector<Edge> out;
    for (const auto& [x, y] : edges)
      if (b.contains(x) && b.contains(y)) out.emplace_back(remap[x], remap[y]);
    return out;
  };
  return ConstraintStructure(std::move(labels), filter(s.lt_edges()), filter(s.inc_edges()));
}

bool is_semilinear_order(const ConstraintStructure& s) {
  const std::size_t n = s.size();
  for (NodeIndex a = 0; a < n; ++a) {
    if (s.lt(a, a)) return false;
    // transitivity: every successor of a successor is a successor
    bool ok = true;
    s.lt_successors(a).for_each([&](NodeIndex b) {
      if (!s.lt_successors(b).is_subset_of(s.lt_successors(a))) ok = false;
    });
    if (!ok) return false;
  }
  for (NodeIndex p = 0; p < n; ++p) {
    auto below = s.lt_predecessors(p).members();
    for (std::size_t i = 0; i < below.size(); ++i)
      for (std::size_t j = i + 1; j < below.size(); ++j)
        if (!s.lt(below[i], below[j]) && !s.lt(below[j], below[i])) return false;
  }
  for (NodeIndex a = 0; a < n; ++a)
    for (NodeIndex b = 0; b < n; ++b) {
      bool incomparable = a != b && !s.lt(a, b) && !s.lt(b, a);
      if (s.inc(a, b) != incomparable) return false;
    }
  return true;
}

namespace {

// 64-bit adjacency snapshot for the exhaustive oracle.
struct MaskGraph {
  std::vector<std::uint64_t> undirected_lt;
  std::vector<std::uint64_t> blockers;  // inc either way, or incoming lt

  explicit MaskGraph(const ConstraintStructure& s) {
    for (NodeIndex v = 0; v < s.size(); ++v) {
      undirected_lt.push_back((s.lt_successors(v) | s.lt_predecessors(v)).to_mask());
      blockers.push_back((s.inc_neighbours(v) | s.lt_predecessors(v)).to_mask());
    }
  }

  bool connected(std::uint64_t b) const {
    std::uint64_t seen = b & (~b + 1);
    std::uint64_t frontier = seen;
    while (frontier) {
      std::uint64_t next = 0;
      for (std::uint64_t f = frontier; f; f &= f - 1) next |= undirected_lt[std::countr_zero(f)];
      next &= b & ~seen;
      seen |= next;
      frontier = next;
    }
    return seen == b;
  }

  bool has_central(std::uint64_t b) const {
    for (std::uint64_t f = b; f; f &= f - 1)
      if ((blockers[std::countr_zero(f)] & b) == 0) return true;
    return false;
  }
};

}  // namespace

std::optional<NodeSubset> subset_criterion_counterexample(const ConstraintStructure& s) {
  if (s.size() > kSubsetOracleLimit)
    throw SizeLimitExceeded("subset criterion oracle handles at most " + std::to_string(kSubsetOracleLimit) +
                            " nodes, got " + std::to_string(s.size()));
  MaskGraph g(s);
  const std::uint64_t limit = std::uint64_t{1} << s.size();
  for (std::uint64_t b = 1; b < limit; ++b)
    if (g.connected(b) && !g.has_central(b)) return NodeSubset::from_mask(s.size(), b);
  return std::nullopt;
}

bool subset_criterion_oracle(const ConstraintStructure& s) { return !subset_criterion_counterexample(s); }

std::string format_subset(const ConstraintStructure& s, const NodeSubset& b) {
  std::string out = "{";
  bool first = true;
  b.for_each([&](NodeIndex v) {
    if (!first) out += ",";
    out += s.label(v);
    first = false;
  });
  return out + "}";
}

}  // namespace treehom
