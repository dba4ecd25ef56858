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

// treehom: command-line front end.
//
// Exit codes: 0 decided or constructed, 1 negative answer, 2 usage or input
// error, 3 size limit exceeded.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "treehom/decision.hpp"
#include "treehom/errors.hpp"
#include "treehom/json_io.hpp"
#include "treehom/oracles.hpp"
#include "treehom/server.hpp"
#include "treehom/solver.hpp"
#include "treehom/sweep.hpp"
#include "treehom/tripleu.hpp"
#include "treehom/universal.hpp"

namespace treehom {
namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;
constexpr int kSizeLimit = 3;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Options {
  bool json = false;
  std::string mode = "ordinal-tree";
  std::size_t height = 0;
  std::vector<std::string> files;
  std::size_t n = 0, m = 0;
  std::string kind = "E";
  std::vector<std::size_t> sizes;
  std::size_t mult = 1;
  std::size_t k = 2;
  std::size_t maxlen = 8;
  std::string cache;
  std::size_t playouts = 1000;
  std::uint64_t seed = 1;
  bool exhaustive = false;
  std::string host = "127.0.0.1";
  int port = 8080;
  double idle_minutes = 30;
};

ConstraintStructure load(const std::string& path) {
  if (!std::filesystem::is_regular_file(path)) throw UsageError("cannot read '" + path + "'");
  return load_structure(path);
}

int emit(const Options& o, Json doc, const std::string& human, int code) {
  if (o.json) {
    doc["v"] = kJsonVersion;
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << human;
  }
  return code;
}

std::string fixpoint_text(const ConstraintStructure& s, const FixpointResult& r) {
  std::string out;
  for (std::size_t a = 0; a < r.trace.size(); ++a) {
    for (const auto& step : r.trace[a]) {
      out += "  stage " + std::to_string(a) + ": component " + format_subset(s, step.component) + " central " +
             format_subset(s, step.central) + "\n";
    }
  }
  if (!r.exhausted) out += "stalled component: " + format_subset(s, r.stalled_component()) + "\n";
  return out;
}

int run_check(const Options& o) {
  const auto& path = o.files.at(0);
  auto s = load(path);
  Json doc = {{"command", "check"}, {"mode", o.mode}, {"file", path}};
  if (o.mode == "height") {
    const bool ok = decide_tree_height(s, o.height);
    auto levels = compute_level_sets(s, o.height);
    doc["height"] = o.height;
    doc["result"] = ok;
    doc["levelSets"] = level_sets_to_json(s, levels);
    std::string text = std::string(ok ? "accepted" : "rejected") + ": tree of height " + std::to_string(o.height) + "\n";
    for (std::size_t i = 0; i < levels.levels.size(); ++i)
      text += "  A_" + std::to_string(i) + " = " + format_subset(s, levels.levels[i]) + "\n";
    return emit(o, doc, text, ok ? kOk : kNegative);
  }
  auto r = fixpoint_levels(s);
  bool ok = false;
  if (o.mode == "semilinear") ok = decide_semilinear(s);
  else if (o.mode == "ordinal-tree") ok = decide_ordinal_tree(s);
  else ok = decide_tree(s);
  doc["result"] = ok;
  doc["fixpoint"] = fixpoint_to_json(s, r);
  return emit(o, doc, std::string(ok ? "accepted" : "rejected") + " (" + o.mode + ")\n" + fixpoint_text(s, r),
              ok ? kOk : kNegative);
}

int run_oracle_check(const Options& o) {
  const auto& path = o.files.at(0);
  auto s = load(path);
  Json doc = {{"command", "oracle-check"}, {"mode", o.mode}, {"file", path}};
  bool ok = false;
  std::string detail;
  if (o.mode == "semilinear") {
    auto order = extension_oracle(s);
    ok = order.has_value();
    if (order) {
      doc["order"] = structure_to_json(*order);
      detail = "compatible order found\n";
    }
  } else if (o.mode == "height") {
    ok = brute_force_tree_hom_oracle(s, o.height, std::max<std::size_t>(s.size(), 1));
    doc["height"] = o.height;
  } else {
    ok = subset_criterion_oracle(s);
    if (auto bad = subset_criterion_counterexample(s)) {
      doc["counterexample"] = subset_to_json(s, *bad);
      detail = "connected subset without a central point: " + format_subset(s, *bad) + "\n";
    }
  }
  doc["result"] = ok;
  return emit(o, doc, std::string(ok ? "accepted" : "rejected") + " (" + o.mode + " oracle)\n" + detail,
              ok ? kOk : kNegative);
}

int run_witness(const Options& o) {
  const auto& path = o.files.at(0);
  auto s = load(path);
  Json doc = {{"command", "witness"}, {"file", path}};
  try {
    auto w = build_witness(s);
    const bool verified = verify_homomorphism(s, w.tree, w.mapping);
    doc["witness"] = witness_to_json(s, w);
    doc["verified"] = verified;
    std::string text = "tree (" + std::to_string(w.tree.size()) + " nodes, height " + std::to_string(w.tree.height()) +
                       ")\n";
    for (std::size_t t = 0; t < w.tree.size(); ++t)
      text += "  " + w.tree.name(t) + (t == w.tree.root() ? " (root)" : " <- " + w.tree.name(w.tree.parent(t))) + "\n";
    text += "mapping\n";
    for (NodeIndex v = 0; v < s.size(); ++v) text += "  " + s.label(v) + " -> " + w.tree.name(w.mapping[v]) + "\n";
    text += std::string("verified: ") + (verified ? "yes" : "NO") + "\n";
    return emit(o, doc, text, verified ? kOk : kNegative);
  } catch (const NoHomomorphism& e) {
    NodeSubset stalled(s.size());
    for (auto v : e.certificate()) stalled.insert(v);
    doc["verified"] = false;
    doc["stalledComponent"] = subset_to_json(s, stalled);
    return emit(o, doc, std::string(e.what()) + "\nstalled component: " + format_subset(s, stalled) + "\n", kNegative);
  }
}

int run_embed(const Options& o) {
  const auto& path = o.files.at(0);
  auto s = load(path);
  Json doc = {{"command", "embed"}, {"file", path}};
  try {
    auto e = embed_universal(s);
    const bool verified = verify_universal_embedding(s, e);
    doc["embedding"] = embedding_to_json(s, e);
    doc["verified"] = verified;
    return emit(o, doc, format_embedding(s, e) + "verified: " + (verified ? "yes" : "NO") + "\n",
                verified ? kOk : kNegative);
  } catch (const NotSemilinear& e) {
    doc["error"] = e.what();
    return emit(o, doc, std::string("not a semi-linear order: ") + e.what() + "\n", kNegative);
  }
}

int run_gen_tripleu(const Options& o) {
  auto t = gen_tripleu({o.n, o.m});
  return emit(o, {{"command", "gen tripleu"}, {"structure", structure_to_json(t.structure)}},
              format_structure(t.structure), kOk);
}

int run_gen_family(const Options& o) {
  FamilyConfig config{parse_family_kind(o.kind), o.sizes, o.mult};
  auto f = gen_family(config);
  return emit(o,
              {{"command", "gen family"}, {"summary", family_summary(f)}, {"structure", structure_to_json(f.structure)}},
              format_structure(f.structure), kOk);
}

int run_game_solve(const Options& o) {
  if (o.files.size() != 2) throw UsageError("game solve needs two structure files");
  auto left = load(o.files[0]), right = load(o.files[1]);
  std::optional<StrategyTable> table;
  bool from_cache = false;
  if (!o.cache.empty()) {
    table = StrategyTable::load(o.cache, left, right, o.k);
    from_cache = table.has_value();
  }
  Player winner;
  if (table) {
    // The table stores moves for the winner only.
    winner = o.k > 0 && table->lookup(new_game(left, right, o.k)) ? Player::kSpoiler : Player::kDuplicator;
  } else {
    auto result = solve_game(left, right, o.k);
    winner = result.winner;
    table = std::move(result.strategy);
    if (!o.cache.empty()) table->save(o.cache);
  }
  Json doc = {{"command", "game solve"},
              {"k", o.k},
              {"files", o.files},
              {"winner", std::string(to_string(winner))},
              {"strategyEntries", table->size()},
              {"complete", table->complete()},
              {"fromCache", from_cache}};
  std::string text = "winner: " + std::string(to_string(winner)) + " (" + std::to_string(o.k) + " rounds)\n" +
                     "strategy entries: " + std::to_string(table->size()) + (table->complete() ? "" : " (truncated)") +
                     (from_cache ? ", loaded from cache" : "") + "\n";
  return emit(o, doc, text, kOk);
}

int run_game_chains(const Options& o) {
  auto lens = find_equivalent_chain_lengths(o.k, o.maxlen);
  std::string text = "equivalent chain lengths at rank " + std::to_string(o.k) + ":";
  for (auto n : lens) text += " " + std::to_string(n);
  return emit(o, {{"command", "game chains"}, {"k", o.k}, {"maxlen", o.maxlen}, {"lengths", lens}}, text + "\n", kOk);
}

int run_game_selfplay(const Options& o) {
  SweepConfig config;
  config.rounds = o.k;
  config.sizes = o.sizes;
  config.multiplicity = o.mult;
  SweepReport r;
  if (o.exhaustive) {
    r = adversarial_sweep(config, [&](std::size_t done, std::size_t total) {
      if (!o.json && (done % 1000 == 0 || done == total)) std::cerr << "\r" << done << "/" << total << std::flush;
    });
    if (!o.json) std::cerr << "\n";
  } else {
    r = random_playouts(config, o.playouts, o.seed);
  }
  Json doc = {{"command", "game selfplay"},
              {"k", o.k},
              {"sizes", o.sizes},
              {"multiplicity", o.mult},
              {"exhaustive", o.exhaustive},
              {"playouts", r.playouts},
              {"duplicatorLosses", r.duplicator_losses},
              {"checkFailures", r.check_failures},
              {"positionsChecked", r.positions_checked},
              {"unpairedPlayouts", r.unpaired_playouts},
              {"seconds", r.seconds},
              {"failures", r.failures}};
  std::string text = "playouts: " + std::to_string(r.playouts) + "\nduplicator losses: " +
                     std::to_string(r.duplicator_losses) + "\nlocal-check failures: " +
                     std::to_string(r.check_failures) + "\npositions checked: " + std::to_string(r.positions_checked) +
                     "\nunpaired playouts: " + std::to_string(r.unpaired_playouts) + "\n";
  for (const auto& f : r.failures) text += "  " + f + "\n";
  return emit(o, doc, text, r.clean() ? kOk : kNegative);
}

int run_serve(const Options& o) {
  ServerOptions options;
  options.idle_timeout = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
      std::chrono::duration<double, std::ratio<60>>(o.idle_minutes));
  std::cerr << "listening on http://" << o.host << ":" << o.port << "\n";
  if (!serve(o.host, o.port, options)) {
    std::cerr << "cannot bind " << o.host << ":" << o.port << "\n";
    return kNegative;
  }
  return kOk;
}

}  // namespace
}  // namespace treehom

int main(int argc, char** argv) {
  using namespace treehom;
  Options o;
  CLI::App app{"Homomorphisms of constraint structures into trees, universal embeddings and WMSO+B games"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", o.json, "Emit one JSON document");

  const std::vector<std::string> modes{"semilinear", "ordinal-tree", "tree", "height"};
  auto add_mode = [&](CLI::App* sub) {
    sub->add_option("--mode", o.mode, "Decision to run")->check(CLI::IsMember(modes));
    sub->add_option("--height", o.height, "Tree height for --mode height");
    sub->add_option("file", o.files, "Structure file")->required()->expected(1);
  };

  std::function<int()> action;
  auto check = app.add_subcommand("check", "Run a decision procedure");
  add_mode(check);
  check->callback([&] { action = [&] { return run_check(o); }; });
  auto oracle = app.add_subcommand("oracle-check", "Run the brute-force oracle for a decision");
  add_mode(oracle);
  oracle->callback([&] { action = [&] { return run_oracle_check(o); }; });

  auto witness = app.add_subcommand("witness", "Build and verify a witness tree and homomorphism");
  witness->add_option("file", o.files, "Structure file")->required()->expected(1);
  witness->callback([&] { action = [&] { return run_witness(o); }; });

  auto embed = app.add_subcommand("embed", "Embed a semi-linear order into the universal order");
  embed->add_option("file", o.files, "Structure file")->required()->expected(1);
  embed->callback([&] { action = [&] { return run_embed(o); }; });

  auto gen = app.add_subcommand("gen", "Generate structures");
  gen->require_subcommand(1);
  auto gen_t = gen->add_subcommand("tripleu", "(n,m) triple-u");
  gen_t->add_option("--n", o.n, "Chain length below a1")->required();
  gen_t->add_option("--m", o.m, "Chain length below a2")->required();
  gen_t->callback([&] { action = [&] { return run_gen_tripleu(o); }; });
  auto gen_f = gen->add_subcommand("family", "Truncated E or U family");
  gen_f->add_option("--kind", o.kind, "E or U")->check(CLI::IsMember({"E", "U"}))->required();
  gen_f->add_option("--sizes", o.sizes, "Strictly increasing chain lengths")->required();
  gen_f->add_option("--mult", o.mult, "Copies per size class");
  gen_f->callback([&] { action = [&] { return run_gen_family(o); }; });

  auto game = app.add_subcommand("game", "Ehrenfeucht-Fraisse games");
  game->require_subcommand(1);
  auto solve = game->add_subcommand("solve", "Solve the game on two small structures");
  solve->add_option("--k", o.k, "Rounds")->required();
  solve->add_option("--cache", o.cache, "Strategy cache file");
  solve->add_option("files", o.files, "Left and right structure files")->required()->expected(2);
  solve->callback([&] { action = [&] { return run_game_solve(o); }; });
  auto chains = game->add_subcommand("chains", "Game-equivalent chain lengths");
  chains->add_option("--k", o.k, "Rank")->required();
  chains->add_option("--maxlen", o.maxlen, "Longest chain considered");
  chains->callback([&] { action = [&] { return run_game_chains(o); }; });
  auto selfplay = game->add_subcommand("selfplay", "Random or exhaustive spoiler against the family strategy");
  selfplay->add_option("--k", o.k, "Rounds")->required();
  selfplay->add_option("--sizes", o.sizes, "Chain lengths")->required();
  selfplay->add_option("--mult", o.mult, "Multiplicity");
  selfplay->add_option("--playouts", o.playouts, "Random playouts");
  selfplay->add_option("--seed", o.seed, "Random seed");
  selfplay->add_flag("--exhaustive", o.exhaustive, "Exhaust the spoiler move family instead");
  selfplay->callback([&] { action = [&] { return run_game_selfplay(o); }; });

  auto serve_cmd = app.add_subcommand("serve", "Serve the game HTTP API");
  serve_cmd->add_option("--port", o.port, "TCP port");
  serve_cmd->add_option("--host", o.host, "Bind address");
  serve_cmd->add_option("--idle-minutes", o.idle_minutes, "Session idle expiry");
  serve_cmd->callback([&] { action = [&] { return run_serve(o); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }
  try {
    return action();
  } catch (const SizeLimitExceeded& e) {
    std::cerr << "size limit: " << e.what() << "\n";
    return kSizeLimit;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const InvalidConfig& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kUsage;
  } catch (const EmptyStructure& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  }
}
