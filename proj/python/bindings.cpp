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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "treehom/decision.hpp"
#include "treehom/errors.hpp"
#include "treehom/oracles.hpp"
#include "treehom/random.hpp"
#include "treehom/solver.hpp"
#include "treehom/structure.hpp"
#include "treehom/tripleu.hpp"
#include "treehom/universal.hpp"

namespace py = pybind11;
using namespace treehom;

namespace {

std::vector<std::string> labels_of(const ConstraintStructure& s, const NodeSubset& b) {
  std::vector<std::string> out;
  for (NodeIndex v : b.members()) out.push_back(s.label(v));
  return out;
}

std::vector<std::pair<std::string, std::string>> labelled(const ConstraintStructure& s, const std::vector<Edge>& edges) {
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(edges.size());
  for (const auto& [a, b] : edges) out.emplace_back(s.label(a), s.label(b));
  return out;
}

py::dict fixpoint_dict(const ConstraintStructure& s) {
  const FixpointResult fp = fixpoint_levels(s);
  py::dict stages;
  for (NodeIndex v = 0; v < s.size(); ++v)
    if (fp.stage[v]) stages[py::str(s.label(v))] = *fp.stage[v];
  py::dict out;
  out["exhausted"] = fp.exhausted;
  out["stages"] = stages;
  out["stage_count"] = fp.stage_count();
  out["residual"] = labels_of(s, fp.residual);
  out["stalled_component"] = labels_of(s, fp.stalled_component());
  return out;
}

py::dict witness_dict(const ConstraintStructure& s) {
  const Witness w = build_witness(s);
  std::vector<py::object> parents;
  std::vector<std::string> names;
  for (std::size_t t = 0; t < w.tree.size(); ++t) {
    names.push_back(w.tree.name(t));
    parents.push_back(t == w.tree.root() ? py::none() : py::cast(w.tree.parent(t)));
  }
  py::dict mapping;
  for (NodeIndex v = 0; v < s.size(); ++v) mapping[py::str(s.label(v))] = w.mapping[v];
  py::dict out;
  out["parents"] = parents;
  out["names"] = names;
  out["height"] = w.tree.height();
  out["mapping"] = mapping;
  out["verified"] = verify_homomorphism(s, w.tree, w.mapping);
  return out;
}

py::dict embedding_dict(const ConstraintStructure& s) {
  const EmbeddingResult e = embed_universal(s);
  py::dict words;
  for (NodeIndex v = 0; v < s.size(); ++v) words[py::str(s.label(v))] = format_uword(e.phi[v]);
  py::dict out;
  out["words"] = words;
  out["dyadic_depth_bound"] = e.dyadic_depth_bound;
  out["verified"] = verify_universal_embedding(s, e);
  return out;
}

}  // namespace

PYBIND11_MODULE(_treehom, m) {
  m.doc() = "Homomorphisms of constraint structures into trees";

  auto error = py::register_exception<Error>(m, "TreehomError");
  py::register_exception<ParseError>(m, "ParseError", error);
  py::register_exception<SizeLimitExceeded>(m, "SizeLimitExceeded", error);
  py::register_exception<EmptyStructure>(m, "EmptyStructure", error);
  py::register_exception<NoHomomorphism>(m, "NoHomomorphism", error);
  py::register_exception<NotSemilinear>(m, "NotSemilinear", error);
  py::register_exception<InvalidConfig>(m, "InvalidConfig", error);
  py::register_exception<NotExhausted>(m, "NotExhausted", error);
  py::register_exception<UnknownLabel>(m, "UnknownLabel", error);

  py::class_<ConstraintStructure>(m, "ConstraintStructure")
      .def(py::init([](std::vector<std::string> labels, const std::vector<std::pair<std::string, std::string>>& lt,
                       const std::vector<std::pair<std::string, std::string>>& inc) {
             return ConstraintStructure::from_labels(std::move(labels), lt, inc);
           }),
           py::arg("labels"), py::arg("lt") = std::vector<std::pair<std::string, std::string>>{},
           py::arg("inc") = std::vector<std::pair<std::string, std::string>>{})
      .def_static("parse", [](const std::string& text) { return parse_structure(text); }, py::arg("text"))
      .def_static("load", &load_structure, py::arg("path"))
      .def("__len__", &ConstraintStructure::size)
      .def_property_readonly("labels", &ConstraintStructure::labels)
      .def_property_readonly("lt_edges", [](const ConstraintStructure& s) { return labelled(s, s.lt_edges()); })
      .def_property_readonly("inc_edges", [](const ConstraintStructure& s) { return labelled(s, s.inc_edges()); })
      .def("lt", [](const ConstraintStructure& s, const std::string& a, const std::string& b) {
        return s.lt(s.index_of(a), s.index_of(b));
      })
      .def("inc", [](const ConstraintStructure& s, const std::string& a, const std::string& b) {
        return s.inc(s.index_of(a), s.index_of(b));
      })
      .def("to_text", &format_structure)
      .def("__eq__", [](const ConstraintStructure& a, const ConstraintStructure& b) { return a == b; })
      .def("__repr__", [](const ConstraintStructure& s) {
        return "<ConstraintStructure " + std::to_string(s.size()) + " nodes, " + std::to_string(s.lt_edges().size()) +
               " lt, " + std::to_string(s.inc_edges().size()) + " inc>";
      });

  m.def("fixpoint_levels", &fixpoint_dict, py::arg("structure"));
  m.def("decide_semilinear", &decide_semilinear, py::arg("structure"));
  m.def("decide_ordinal_tree", &decide_ordinal_tree, py::arg("structure"));
  m.def("decide_tree", &decide_tree, py::arg("structure"));
  m.def("decide_tree_height", &decide_tree_height, py::arg("structure"), py::arg("height"));
  m.def(
      "level_sets",
      [](const ConstraintStructure& s, std::size_t h) {
        std::vector<std::vector<std::string>> out;
        for (const auto& level : compute_level_sets(s, h).levels) out.push_back(labels_of(s, level));
        return out;
      },
      py::arg("structure"), py::arg("height"));
  m.def("build_witness", &witness_dict, py::arg("structure"));
  m.def("embed_universal", &embedding_dict, py::arg("structure"));
  m.def("is_semilinear_order", &is_semilinear_order, py::arg("structure"));

  m.def("subset_criterion_oracle", &subset_criterion_oracle, py::arg("structure"));
  m.def("extension_oracle", &extension_oracle, py::arg("structure"));
  m.def("brute_force_tree_hom_oracle", &brute_force_tree_hom_oracle, py::arg("structure"), py::arg("height"),
        py::arg("branching"));

  m.def(
      "random_structure",
      [](std::size_t n, double lt_density, double inc_density, std::uint64_t seed) {
        Rng rng(seed);
        return random_structure(n, lt_density, inc_density, rng);
      },
      py::arg("n"), py::arg("lt_density"), py::arg("inc_density"), py::arg("seed"));
  m.def(
      "random_semilinear_order",
      [](std::size_t n, std::uint64_t seed) {
        Rng rng(seed);
        return random_semilinear_order(n, rng);
      },
      py::arg("n"), py::arg("seed"));

  m.def(
      "tripleu", [](std::size_t n, std::size_t mm) { return gen_tripleu({n, mm}).structure; }, py::arg("n"),
      py::arg("m"));
  m.def(
      "family",
      [](const std::string& kind, std::vector<std::size_t> sizes, std::size_t multiplicity) {
        return gen_family({parse_family_kind(kind), std::move(sizes), multiplicity}).structure;
      },
      py::arg("kind"), py::arg("sizes"), py::arg("multiplicity") = 1);
  m.def("placement_stage", &placement_stage, py::arg("structure"), py::arg("label"));
  m.def("lt_cycle", &lt_cycle);
  m.def("incomparable_tripleu", &incomparable_tripleu);
  m.def("chain", &chain_structure, py::arg("n"));

  m.def(
      "solve_game",
      [](const ConstraintStructure& left, const ConstraintStructure& right, std::size_t rounds) {
        return std::string(to_string(solve_game(left, right, rounds).winner));
      },
      py::arg("left"), py::arg("right"), py::arg("rounds"));
  m.def("find_equivalent_chain_lengths", &find_equivalent_chain_lengths, py::arg("rounds"), py::arg("max_len"));
}
