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

#include "treehom/server.hpp"

#include <httplib.h>

#include <charconv>
#include <cstdio>
#include <random>
#include <utility>
#include <vector>

#include "treehom/errors.hpp"
#include "treehom/solver.hpp"

namespace treehom {

struct GameService::Session {
  std::mutex move_mu;
  std::string id;
  std::size_t k = 0;
  std::unique_ptr<FamilyGame> game;
  GamePosition position;
  LocalPairing pairing;
  Json history = Json::array();
  // Set when duplicator had no reply; spoiler has then won.
  std::optional<std::string> duplicator_stuck;
  std::chrono::steady_clock::time_point last_access;
};

namespace {

ServiceResponse error_response(int status, const std::string& message, Json extra = Json::object()) {
  Json body = {{"v", kJsonVersion}, {"error", message}};
  for (auto& [key, value] : extra.items()) body[key] = value;
  return {status, std::move(body)};
}

std::optional<std::size_t> parse_count(const Json& j) {
  if (j.is_number_unsigned()) return j.get<std::size_t>();
  if (j.is_number_integer() && j.get<long long>() >= 0) return static_cast<std::size_t>(j.get<long long>());
  return std::nullopt;
}

std::optional<std::size_t> parse_count(const std::string& text) {
  std::size_t value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) return std::nullopt;
  return value;
}

Json legal_hints(const GamePosition& p) {
  if (p.finished()) return {{"allowed", Json::array()}};
  if (const auto* w = std::get_if<AwaitingBoundedSet>(&p.phase))
    return {{"allowed", {"boundedSet"}}, {"side", std::string(to_string(w->side))}, {"minSize", w->m}};
  return {{"allowed", {"element", "set", "bound"}},
          {"sides", {"left", "right"}},
          {"boundRange", {0, bound_cap(p)}}};
}

bool equivalent_sizes(const std::vector<std::size_t>& sizes, std::size_t k, std::pair<std::size_t, std::size_t>& bad) {
  TypeTable& table = shared_type_table();
  const TypeId first = table.type(table.add(anchored_chain(sizes.front())), {}, k);
  for (std::size_t n : sizes) {
    if (table.type(table.add(anchored_chain(n)), {}, k) != first) {
      bad = {sizes.front(), n};
      return false;
    }
  }
  return true;
}

}  // namespace

GameService::GameService(ServerOptions options) : options_(std::move(options)), id_salt_(std::random_device{}()) {
  id_salt_ = (id_salt_ << 32) ^ std::random_device{}();
}

GameService::~GameService() = default;

std::string GameService::new_id() {
  std::mt19937_64 mix(id_salt_ + ++id_counter_);
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(mix()),
                static_cast<unsigned long long>(mix()));
  return buf;
}

std::shared_ptr<GameService::Session> GameService::find(const std::string& id) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) return nullptr;
  it->second->last_access = options_.clock();
  return it->second;
}

std::size_t GameService::expire_idle() {
  std::lock_guard<std::mutex> lock(mu_);
  const auto now = options_.clock();
  std::size_t dropped = 0;
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    Session& s = *it->second;
    if (now - s.last_access > options_.idle_timeout && s.move_mu.try_lock()) {
      s.move_mu.unlock();
      it = sessions_.erase(it);
      ++dropped;
    } else {
      ++it;
    }
  }
  return dropped;
}

std::size_t GameService::session_count() const {
  std::lock_guard<std::mutex> lock(mu_);
  return sessions_.size();
}

std::optional<std::unique_lock<std::mutex>> GameService::hold(const std::string& id) {
  auto s = find(id);
  if (!s) return std::nullopt;
  return std::unique_lock<std::mutex>(s->move_mu);
}

namespace {

Json render_session(const FamilyGame& game, const std::string& id, std::size_t k, const GamePosition& p,
                           const LocalPairing& pairing, const Json& history,
                           const std::optional<std::string>& stuck) {
  Json out = {{"v", kJsonVersion},
              {"sessionId", id},
              {"config",
               {{"k", k},
                {"sizes", game.e_family().config.sizes},
                {"multiplicity", game.e_family().config.multiplicity},
                {"rounds", game.rounds()}}},
              {"families", {{"left", family_summary(game.e_family())}, {"right", family_summary(game.u_family())}}},
              {"position", position_to_json(p)},
              {"pairing", pairing_to_json(game, pairing)},
              {"history", history}};
  if (stuck) {
    out["over"] = true;
    out["winner"] = "spoiler";
    out["duplicatorStuck"] = *stuck;
  } else if (p.finished()) {
    const FinalVerdict v = final_verdict(p);
    out["over"] = true;
    out["winner"] = v.duplicator_wins() ? "duplicator" : "spoiler";
    out["verdict"] = verdict_to_json(v);
  } else {
    out["over"] = false;
    out["winner"] = nullptr;
  }
  return out;
}

}  // namespace

ServiceResponse GameService::create_game(const std::string& body) {
  expire_idle();
  Json req = Json::parse(body, nullptr, false);
  if (req.is_discarded() || !req.is_object()) return error_response(400, "request body must be a JSON object");

  auto k = req.contains("k") ? parse_count(req["k"]) : std::nullopt;
  if (!k || *k > kSolverRoundLimit) return error_response(400, "k must be an integer in 0..3");
  auto mult = req.contains("multiplicity") ? parse_count(req["multiplicity"]) : std::nullopt;
  if (!mult || *mult < 1 || *mult > options_.max_multiplicity)
    return error_response(400, "multiplicity must be an integer in 1.." + std::to_string(options_.max_multiplicity));
  std::optional<std::size_t> rounds = *k;
  if (req.contains("rounds")) rounds = parse_count(req["rounds"]);
  if (!rounds || *rounds > *k) return error_response(400, "rounds must be an integer in 0..k");

  if (!req.contains("sizes") || !req["sizes"].is_array()) return error_response(400, "sizes must be an array");
  std::vector<std::size_t> sizes;
  for (const auto& s : req["sizes"]) {
    auto n = parse_count(s);
    if (!n || *n < 1 || *n > kSolverNodeLimit) return error_response(400, "sizes must be integers in 1..8");
    if (!sizes.empty() && *n <= sizes.back()) return error_response(400, "sizes must be strictly increasing");
    sizes.push_back(*n);
  }
  if (sizes.size() < 2) return error_response(400, "sizes needs at least two lengths");

  std::pair<std::size_t, std::size_t> bad;
  if (!equivalent_sizes(sizes, *k, bad))
    return error_response(422, "chain lengths are not game-equivalent at rank " + std::to_string(*k),
                          {{"pair", {bad.first, bad.second}},
                           {"equivalentLengths", find_equivalent_chain_lengths(*k, kSolverNodeLimit)}});

  auto session = std::make_shared<Session>();
  try {
    session->game = std::make_unique<FamilyGame>(FamilyConfig{FamilyKind::E, sizes, *mult},
                                                 FamilyConfig{FamilyKind::U, sizes, *mult}, *rounds);
  } catch (const Error& e) {
    return error_response(400, e.what());
  }
  session->k = *k;
  session->position = session->game->initial();
  session->position.rounds_left = *rounds;
  session->last_access = options_.clock();

  std::lock_guard<std::mutex> lock(mu_);
  if (sessions_.size() >= options_.max_sessions) return error_response(503, "too many open sessions");
  session->id = new_id();
  sessions_[session->id] = session;
  return {200, render_session(*session->game, session->id, session->k, session->position, session->pairing,
                              session->history, session->duplicator_stuck)};
}

ServiceResponse GameService::post_move(const std::string& id, const std::string& body) {
  expire_idle();
  auto session = find(id);
  if (!session) return error_response(404, "unknown session");
  std::unique_lock<std::mutex> lock(session->move_mu, std::try_to_lock);
  if (!lock.owns_lock()) return error_response(409, "another move on this session is in progress");

  const GamePosition& p = session->position;
  if (session->duplicator_stuck || p.finished())
    return error_response(409, "the game is over", {{"hints", legal_hints(p)}});

  Json req = Json::parse(body, nullptr, false);
  if (req.is_discarded() || !req.is_object()) return error_response(400, "request body must be a JSON move object");
  Move mv;
  try {
    mv = move_from_json(p, req);
  } catch (const ParseError& e) {
    return error_response(400, e.what());
  } catch (const IllegalMove& e) {
    return error_response(409, e.what(), {{"hints", legal_hints(p)}});
  }
  if (mover_of(mv) != Player::kSpoiler) return error_response(409, "the server plays duplicator", {{"hints", legal_hints(p)}});
  if (auto why = illegal_reason(p, mv)) return error_response(409, *why, {{"hints", legal_hints(p)}});

  const Json spoiler_json = move_to_json(p, mv);
  GamePosition q = apply_move(p, mv);
  LocalPairing pairing = session->pairing;
  Json reply_json = nullptr;
  try {
    if (q.to_move() == Player::kDuplicator && !q.finished()) {
      auto [reply, next] = session->game->duplicator_strategy(q, pairing);
      reply_json = move_to_json(q, reply);
      q = apply_move(q, reply);
      pairing = std::move(next);
    }
    if (std::holds_alternative<AwaitingSpoiler>(q.phase)) {
      auto check = session->game->locally_winning_check(q, pairing, q.rounds_left);
      if (!check) throw NotLocallyWinning(check.failure);
    }
  } catch (const InsufficientFreshComponents& e) {
    session->duplicator_stuck = e.what();
    session->position = q;
    session->history.push_back({{"spoiler", spoiler_json}, {"reply", nullptr}});
    Json state = render_session(*session->game, id, session->k, q, pairing, session->history, session->duplicator_stuck);
    return {200, {{"v", kJsonVersion}, {"spoilerMove", spoiler_json}, {"reply", nullptr}, {"state", std::move(state)}}};
  } catch (const NotLocallyWinning& e) {
    return error_response(500, std::string("duplicator strategy invariant broken: ") + e.what(),
                          {{"diagnostic",
                            {{"move", spoiler_json},
                             {"position", position_to_json(q)},
                             {"pairing", pairing_to_json(*session->game, pairing)},
                             {"history", session->history}}}});
  }

  session->position = q;
  session->pairing = pairing;
  session->history.push_back({{"spoiler", spoiler_json}, {"reply", reply_json}});
  Json state = render_session(*session->game, id, session->k, q, pairing, session->history, session->duplicator_stuck);
  Json out = {{"v", kJsonVersion}, {"spoilerMove", spoiler_json}, {"reply", reply_json}};
  if (state.contains("verdict")) out["verdict"] = state["verdict"];
  out["state"] = std::move(state);
  return {200, std::move(out)};
}

ServiceResponse GameService::get_game(const std::string& id) {
  expire_idle();
  auto session = find(id);
  if (!session) return error_response(404, "unknown session");
  std::unique_lock<std::mutex> lock(session->move_mu, std::try_to_lock);
  if (!lock.owns_lock()) return error_response(409, "a move on this session is in progress");
  return {200, render_session(*session->game, id, session->k, session->position, session->pairing, session->history,
                              session->duplicator_stuck)};
}

ServiceResponse GameService::delete_game(const std::string& id) {
  expire_idle();
  std::lock_guard<std::mutex> lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) return error_response(404, "unknown session");
  std::unique_lock<std::mutex> busy(it->second->move_mu, std::try_to_lock);
  if (!busy.owns_lock()) return error_response(409, "a move on this session is in progress");
  busy.unlock();
  sessions_.erase(it);
  return {200, {{"v", kJsonVersion}, {"deleted", id}}};
}

ServiceResponse GameService::chains(const std::optional<std::string>& k_text,
                                    const std::optional<std::string>& maxlen_text) {
  auto k = k_text ? parse_count(*k_text) : std::optional<std::size_t>(2);
  auto maxlen = maxlen_text ? parse_count(*maxlen_text) : std::optional<std::size_t>(6);
  if (!k || *k > kSolverRoundLimit) return error_response(400, "k must be an integer in 0..3");
  if (!maxlen || *maxlen < 1 || *maxlen > kSolverNodeLimit) return error_response(400, "maxlen must be in 1..8");
  return {200,
          {{"v", kJsonVersion}, {"k", *k}, {"maxlen", *maxlen}, {"lengths", find_equivalent_chain_lengths(*k, *maxlen)}}};
}

void install_routes(httplib::Server& server, GameService& service) {
  auto send = [](httplib::Response& res, const ServiceResponse& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  const std::string origin = service.options().cors_origin;
  server.set_post_routing_handler([origin](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", origin);
  });
  server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
    res.set_header("Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.set_header("Access-Control-Max-Age", "600");
  });
  server.Post("/games", [&service, send](const httplib::Request& req, httplib::Response& res) {
    send(res, service.create_game(req.body));
  });
  server.Post(R"(/games/([^/]+)/moves)", [&service, send](const httplib::Request& req, httplib::Response& res) {
    send(res, service.post_move(req.matches[1], req.body));
  });
  server.Get(R"(/games/([^/]+))", [&service, send](const httplib::Request& req, httplib::Response& res) {
    send(res, service.get_game(req.matches[1]));
  });
  server.Delete(R"(/games/([^/]+))", [&service, send](const httplib::Request& req, httplib::Response& res) {
    send(res, service.delete_game(req.matches[1]));
  });
  server.Get("/chains", [&service, send](const httplib::Request& req, httplib::Response& res) {
    auto param = [&](const char* name) -> std::optional<std::string> {
      if (!req.has_param(name)) return std::nullopt;
      return req.get_param_value(name);
    };
    send(res, service.chains(param("k"), param("maxlen")));
  });
  server.set_exception_handler([send](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    std::string what = "internal error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    send(res, error_response(500, what));
  });
  server.set_error_handler([send](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) send(res, error_response(res.status, "no such endpoint"));
  });
}

bool serve(const std::string& host, int port, const ServerOptions& options) {
  GameService service(options);
  httplib::Server server;
  install_routes(server, service);
  return server.listen(host, port);
}

}  // namespace treehom
