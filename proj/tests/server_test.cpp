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

#include <gtest/gtest.h>
#include <httplib.h>

#include <thread>

namespace treehom {
namespace {

std::string game_request(const Json& sizes, std::size_t k = 2, std::size_t mult = 2) {
  return Json{{"k", k}, {"sizes", sizes}, {"multiplicity", mult}, {"rounds", k}}.dump();
}

std::string new_session(GameService& svc) {
  auto r = svc.create_game(game_request({5, 6}));
  EXPECT_EQ(r.status, 200) << r.body.dump();
  return r.body.at("sessionId").get<std::string>();
}

TEST(GameServiceTest, ChainsEndpoint) {
  GameService svc;
  auto r = svc.chains("2", "6");
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(r.body["lengths"], Json({5, 6}));
  EXPECT_EQ(r.body["v"], kJsonVersion);
  EXPECT_EQ(svc.chains("7", "6").status, 400);
  EXPECT_EQ(svc.chains("2", "x").status, 400);
  EXPECT_EQ(svc.chains("2", "9").status, 400);
}

TEST(GameServiceTest, CreateGameValidation) {
  GameService svc;
  auto ok = svc.create_game(game_request({5, 6}));
  ASSERT_EQ(ok.status, 200);
  EXPECT_EQ(ok.body["v"], kJsonVersion);
  EXPECT_EQ(ok.body["families"]["left"]["kind"], "E");
  EXPECT_EQ(ok.body["families"]["right"]["kind"], "U");
  EXPECT_EQ(ok.body["families"]["left"]["finalNode"], "d");
  EXPECT_EQ(ok.body["families"]["left"]["components"].size(), 4u);
  EXPECT_EQ(ok.body["position"]["roundsLeft"], 2);
  EXPECT_FALSE(ok.body["over"].get<bool>());

  EXPECT_EQ(svc.create_game(game_request({5, 6}, 9)).status, 400);
  EXPECT_EQ(svc.create_game(game_request({5, 6}, 2, 5)).status, 400);
  EXPECT_EQ(svc.create_game(game_request({6, 5})).status, 400);
  EXPECT_EQ(svc.create_game(game_request({5, 9})).status, 400);
  EXPECT_EQ(svc.create_game("not json").status, 400);
  EXPECT_EQ(svc.create_game(R"({"k": 2, "multiplicity": 2})").status, 400);

  auto bad = svc.create_game(game_request({1, 2}));
  EXPECT_EQ(bad.status, 422);
  EXPECT_EQ(bad.body["equivalentLengths"], Json({5, 6, 7, 8}));
}

TEST(GameServiceTest, FinalNodeAndBoundReplies) {
  GameService svc;
  const auto id = new_session(svc);
  auto r = svc.post_move(id, R"({"type": "element", "side": "right", "node": "d"})");
  ASSERT_EQ(r.status, 200) << r.body.dump();
  EXPECT_EQ(r.body["reply"]["type"], "dupElement");
  EXPECT_EQ(r.body["reply"]["side"], "left");
  EXPECT_EQ(r.body["reply"]["node"], "d");

  const auto id2 = new_session(svc);
  auto b = svc.post_move(id2, R"({"type": "bound", "side": "right", "l": 3})");
  ASSERT_EQ(b.status, 200) << b.body.dump();
  EXPECT_EQ(b.body["reply"], Json({{"type", "boundReply"}, {"m", 6}}));
  EXPECT_EQ(b.body["state"]["position"]["phase"]["name"], "awaitingBoundedSet");

  auto small = svc.post_move(id2, R"({"type": "boundedSet", "nodes": ["W0_l"]})");
  EXPECT_EQ(small.status, 409);
  EXPECT_EQ(small.body["hints"]["minSize"], 6);
}

TEST(GameServiceTest, FullGameReportsVerdict) {
  GameService svc;
  const auto id = new_session(svc);
  ASSERT_EQ(svc.post_move(id, R"({"type": "element", "side": "left", "node": "W1_La1_3"})").status, 200);
  auto r = svc.post_move(id, R"({"type": "set", "side": "left", "nodes": ["W1_La1_1", "W1_La1_3", "W1_a1", "d"]})");
  ASSERT_EQ(r.status, 200) << r.body.dump();
  ASSERT_TRUE(r.body.contains("verdict"));
  EXPECT_TRUE(r.body["verdict"]["duplicatorWins"].get<bool>());
  EXPECT_EQ(r.body["verdict"]["clauses"]["membership"], true);
  EXPECT_EQ(r.body["state"]["winner"], "duplicator");
  EXPECT_EQ(r.body["state"]["history"].size(), 2u);

  auto after = svc.post_move(id, R"({"type": "element", "side": "left", "node": "d"})");
  EXPECT_EQ(after.status, 409);
}

TEST(GameServiceTest, IllegalMovesAndUnknownSessions) {
  GameService svc;
  const auto id = new_session(svc);
  EXPECT_EQ(svc.post_move(id, R"({"type": "set", "side": "right", "nodes": ["W0_l", "nope"]})").status, 409);
  EXPECT_EQ(svc.post_move(id, R"({"type": "dupElement", "node": "d"})").status, 409);
  EXPECT_EQ(svc.post_move(id, R"({"type": "bound", "side": "left", "l": 500})").status, 409);
  EXPECT_EQ(svc.post_move(id, R"({"type": "teleport"})").status, 400);
  EXPECT_EQ(svc.post_move(id, "{").status, 400);
  EXPECT_EQ(svc.post_move("missing", R"({"type": "element", "side": "left", "node": "d"})").status, 404);
  EXPECT_EQ(svc.get_game("missing").status, 404);
  EXPECT_EQ(svc.delete_game("missing").status, 404);

  auto state = svc.get_game(id);
  ASSERT_EQ(state.status, 200);
  EXPECT_TRUE(state.body["history"].empty());
  EXPECT_EQ(svc.delete_game(id).status, 200);
  EXPECT_EQ(svc.get_game(id).status, 404);
}

TEST(GameServiceTest, ConcurrentMoveOnOneSessionIsRefused) {
  GameService svc;
  const auto id = new_session(svc);
  {
    auto guard = svc.hold(id);
    ASSERT_TRUE(guard.has_value());
    auto r = svc.post_move(id, R"({"type": "element", "side": "left", "node": "d"})");
    EXPECT_EQ(r.status, 409);
  }
  EXPECT_EQ(svc.post_move(id, R"({"type": "element", "side": "left", "node": "d"})").status, 200);
}

TEST(GameServiceTest, IdleSessionsExpire) {
  auto now = std::chrono::steady_clock::now();
  ServerOptions options;
  options.clock = [&now] { return now; };
  GameService svc(options);
  const auto id = new_session(svc);
  now += std::chrono::minutes(29);
  EXPECT_EQ(svc.expire_idle(), 0u);
  EXPECT_EQ(svc.get_game(id).status, 200);
  now += std::chrono::minutes(31);
  EXPECT_EQ(svc.expire_idle(), 1u);
  EXPECT_EQ(svc.get_game(id).status, 404);
}

TEST(GameServiceTest, ReplayingHistoryReproducesReplies) {
  GameService svc;
  const auto id = new_session(svc);
  svc.post_move(id, R"({"type": "bound", "side": "left", "l": 1})");
  svc.post_move(id, R"({"type": "boundedSet", "nodes": ["W0_La1_1", "W0_La1_2", "W0_La1_3", "W0_La1_4", "W0_La1_5", "W0_l"]})");
  svc.post_move(id, R"({"type": "element", "side": "right", "node": "W1_La2_4"})");
  auto original = svc.get_game(id).body["history"];
  ASSERT_EQ(original.size(), 3u);

  const auto replay = new_session(svc);
  for (const auto& round : original) {
    auto r = svc.post_move(replay, round["spoiler"].dump());
    ASSERT_EQ(r.status, 200) << r.body.dump();
    EXPECT_EQ(r.body["reply"], round["reply"]);
  }
}

TEST(HttpServerTest, EndToEnd) {
  GameService svc;
  httplib::Server server;
  install_routes(server, svc);
  const int port = server.bind_to_any_port("127.0.0.1");
  ASSERT_GT(port, 0);
  std::thread loop([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  auto chains = client.Get("/chains?k=2&maxlen=6");
  ASSERT_TRUE(chains);
  EXPECT_EQ(chains->status, 200);
  EXPECT_EQ(chains->get_header_value("Access-Control-Allow-Origin"), "*");
  EXPECT_EQ(Json::parse(chains->body)["lengths"], Json({5, 6}));

  auto created = client.Post("/games", game_request({5, 6}), "application/json");
  ASSERT_TRUE(created);
  ASSERT_EQ(created->status, 200);
  const auto id = Json::parse(created->body)["sessionId"].get<std::string>();

  auto move = client.Post("/games/" + id + "/moves", R"({"type": "element", "side": "right", "node": "d"})",
                          "application/json");
  ASSERT_TRUE(move);
  EXPECT_EQ(move->status, 200);
  EXPECT_EQ(Json::parse(move->body)["reply"]["node"], "d");

  auto preflight = client.Options("/games");
  ASSERT_TRUE(preflight);
  EXPECT_EQ(preflight->status, 204);
  EXPECT_NE(preflight->get_header_value("Access-Control-Allow-Methods").find("POST"), std::string::npos);

  auto unknown = client.Get("/games/nope");
  ASSERT_TRUE(unknown);
  EXPECT_EQ(unknown->status, 404);
  auto deleted = client.Delete("/games/" + id);
  ASSERT_TRUE(deleted);
  EXPECT_EQ(deleted->status, 200);

  server.stop();
  loop.join();
}

}  // namespace
}  // namespace treehom
