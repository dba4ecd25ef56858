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

// HTTP game service: a human plays spoiler, FamilyGame plays duplicator.
// The E family is the left structure, the U family the right one.
//
//   POST   /games             {"k", "sizes", "multiplicity", "rounds"?}
//   POST   /games/{id}/moves  spoiler move (see json_io.hpp)
//   GET    /games/{id}
//   DELETE /games/{id}
//   GET    /chains?k=&maxlen=
//
// GameService holds the sessions and implements the endpoints without any
// socket code; install_routes wires it into a cpp-httplib server.

#ifndef TREEHOM_SERVER_HPP_
#define TREEHOM_SERVER_HPP_

#include <chrono>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "treehom/json_io.hpp"

namespace httplib {
class Server;
}

namespace treehom {

struct ServerOptions {
  std::chrono::steady_clock::duration idle_timeout = std::chrono::minutes(30);
  std::string cors_origin = "*";
  std::size_t max_sessions = 1024;
  std::size_t max_multiplicity = 4;
  // Time source for idle expiry.
  std::function<std::chrono::steady_clock::time_point()> clock = [] { return std::chrono::steady_clock::now(); };
};

struct ServiceResponse {
  int status = 200;
  Json body;
};

class GameService {
 public:
  explicit GameService(ServerOptions options = {});
  ~GameService();
  GameService(const GameService&) = delete;
  GameService& operator=(const GameService&) = delete;

  ServiceResponse create_game(const std::string& body);
  ServiceResponse post_move(const std::string& id, const std::string& body);
  ServiceResponse get_game(const std::string& id);
  ServiceResponse delete_game(const std::string& id);
  ServiceResponse chains(const std::optional<std::string>& k, const std::optional<std::string>& maxlen);

  // Drops sessions idle for longer than the timeout; returns how many.
  std::size_t expire_idle();
  std::size_t session_count() const;

  // Holds a session's move lock: while the returned guard lives, moves on
  // that session are refused with 409. Empty for unknown ids.
  std::optional<std::unique_lock<std::mutex>> hold(const std::string& id);

  const ServerOptions& options() const { return options_; }

 private:
  struct Session;
  std::shared_ptr<Session> find(const std::string& id);
  std::string new_id();

  ServerOptions options_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t id_counter_ = 0;
  std::uint64_t id_salt_;
};

// Registers the endpoints, CORS headers and OPTIONS preflight handling.
void install_routes(httplib::Server& server, GameService& service);

// Blocks serving on host:port until the process is stopped. Returns false if
// the socket could not be bound.
bool serve(const std::string& host, int port, const ServerOptions& options = {});

}  // namespace treehom

#endif  // TREEHOM_SERVER_HPP_
