#include <gtest/gtest.h>

#include <chrono>
#include <filesystem>
#include <thread>

#include "swapgame/service.hpp"

using namespace swapgame;
using nlohmann::json;

namespace {

GameService catalog_service(GameService::Options o = {}) {
  return GameService(GameService::catalog_boards(), std::move(o));
}

HttpResponse post(GameService& s, const std::string& path, const json& body) {
  return s.handle("POST", path, body.dump());
}

std::filesystem::path fresh_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("swapgame-test-" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

// The state vector in a response equals start + rows of every swapped move.
void expect_replay_invariant(const Board& b, const nlohmann::ordered_json& state) {
  BitVec v = BitVec::from_string(state["start"].get<std::string>());
  for (const auto& m : state["history"])
    if (m["swap"] == 1)
      v += b.move_row(b.region_index(m["region"].get<std::string>()));
  EXPECT_EQ(v.to_string(), state["state_vector"].get<std::string>());
}

} // namespace

TEST(Service, ListsBoards) {
  auto s = catalog_service();
  const auto r = s.handle("GET", "/boards", "");
  EXPECT_EQ(r.status, 200);
  ASSERT_EQ(r.body.size(), catalog_names().size());
  bool saw_twist = false;
  for (const auto& b : r.body)
    if (b["name"] == "twist5") {
      saw_twist = true;
      EXPECT_EQ(b["crossings"], 5);
      EXPECT_EQ(b["regions"], 7);
      EXPECT_EQ(b["has_embedding"], true);
      EXPECT_EQ(b["start_states"][0], "11001");
    }
  EXPECT_TRUE(saw_twist);
  const auto doc = s.handle("GET", "/boards/figure8", "");
  EXPECT_EQ(doc.status, 200);
  EXPECT_EQ(doc.body["name"], "figure8");
  EXPECT_EQ(s.handle("GET", "/boards/nope", "").status, 404);
}

TEST(Service, EngineAsFirstMoverWinsTwistKnot) {
  auto s = catalog_service();
  const auto created = post(s, "/games", {{"board", "twist5"}, {"human", "D"}, {"first", "C"}});
  ASSERT_EQ(created.status, 201);
  const std::string id = created.body["game_id"];
  EXPECT_EQ(created.body["engine_moves"].size(), 1U);
  const auto board = twist5().board;
  auto state = created.body["state"];
  // D always plays the first free region without swapping.
  while (!state["over"].get<bool>()) {
    EXPECT_EQ(state["to_move"], "D");
    std::string region;
    for (std::size_t r = 0; r < board->k(); ++r) {
      const auto& sel = state["selected"];
      if (std::find(sel.begin(), sel.end(), board->region(r).id) == sel.end()) {
        region = board->region(r).id;
        break;
      }
    }
    const auto r = post(s, "/games/" + id + "/move", {{"region", region}, {"swap", 1}});
    ASSERT_EQ(r.status, 200) << r.body.dump();
    state = r.body["state"];
    expect_replay_invariant(*board, state);
    const auto polled = s.handle("GET", "/games/" + id, "");
    EXPECT_EQ(polled.body, state);
  }
  EXPECT_EQ(state["winner"], "C");
  EXPECT_EQ(state["history"].size(), 7U);
}

TEST(Service, ErrorStatuses) {
  auto s = catalog_service();
  EXPECT_EQ(post(s, "/games", {{"board", "nope"}}).status, 404);
  EXPECT_EQ(post(s, "/games", {{"board", "twist5"}, {"start", "00001"}}).status, 422);
  EXPECT_EQ(post(s, "/games", {{"board", "twist5"}, {"start", "0x001"}}).status, 422);
  EXPECT_EQ(post(s, "/games", {{"board", "twist5"}, {"start", "110"}}).status, 422);
  EXPECT_EQ(post(s, "/games", {{"board", "twist5"}, {"human", "Q"}}).status, 422);
  EXPECT_EQ(s.handle("POST", "/games", "{not json").status, 422);
  EXPECT_EQ(s.handle("DELETE", "/games", "").status, 405);
  EXPECT_EQ(s.handle("GET", "/nowhere", "").status, 404);
  EXPECT_EQ(s.handle("GET", "/games/g999", "").status, 404);

  const auto created = post(s, "/games", {{"board", "twist5"}, {"human", "C"}, {"first", "D"}});
  ASSERT_EQ(created.status, 201);
  const std::string id = created.body["game_id"];
  // The engine (D) has moved; its region is taken now.
  const std::string taken = created.body["engine_moves"][0]["region"];
  EXPECT_EQ(post(s, "/games/" + id + "/move", {{"region", taken}, {"swap", 0}}).status, 409);
  EXPECT_EQ(post(s, "/games/" + id + "/move", {{"region", "r99"}, {"swap", 0}}).status, 422);
  EXPECT_EQ(post(s, "/games/" + id + "/move", {{"region", "r1"}, {"swap", 2}}).status, 422);
  EXPECT_EQ(post(s, "/games/" + id + "/move", {{"region", "r1"}}).status, 422);
}

TEST(Service, NotYourTurnAndFinishedGames) {
  auto s = catalog_service();
  const auto created =
      post(s, "/games", {{"board", "twist5"}, {"human", "C"}, {"first", "C"}, {"sandbox", true}});
  const std::string id = created.body["game_id"];
  EXPECT_FALSE(created.body.contains("engine_moves"));
  const std::vector<std::pair<std::string, int>> sample{{"r5", 0}, {"r2", 1}, {"r6", 0}, {"r7", 1},
                                                      {"r3", 1}, {"r4", 0}, {"r1", 1}};
  const std::vector<std::string> vectors{"00001", "00001", "00110", "10000", "10000", "01011"};
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const auto r = post(s, "/games/" + id + "/move", {{"region", sample[i].first}, {"swap", sample[i].second}});
    ASSERT_EQ(r.status, 200);
    if (i >= 1)
      EXPECT_EQ(r.body["state"]["state_vector"], vectors[i - 1]);
  }
  const auto done = s.handle("GET", "/games/" + id, "");
  EXPECT_EQ(done.body["state_vector"], "01011");
  EXPECT_EQ(done.body["winner"], "C");
  EXPECT_EQ(done.body["history"][1]["player"], "D");
  EXPECT_EQ(post(s, "/games/" + id + "/move", {{"region", "r1"}, {"swap", 0}}).status, 409);
  EXPECT_EQ(s.handle("GET", "/games/" + id + "/analysis", "").status, 409);

  const auto waiting = post(s, "/games", {{"board", "figure8"}, {"human", "D"}, {"first", "D"}});
  const std::string wid = waiting.body["game_id"];
  const auto moved = post(s, "/games/" + wid + "/move", {{"region", "r1"}, {"swap", true}});
  EXPECT_EQ(moved.status, 200);
  // The engine answers at once, so the human is to move again.
  EXPECT_EQ(moved.body["state"]["to_move"], "D");
  EXPECT_TRUE(moved.body.contains("engine_move"));
}

TEST(Service, Analysis) {
  auto s = catalog_service();
  const auto created = post(s, "/games", {{"board", "twist5"}, {"human", "C"}, {"first", "C"}});
  const std::string id = created.body["game_id"];
  const auto a = s.handle("GET", "/games/" + id + "/analysis", "");
  ASSERT_EQ(a.status, 200);
  EXPECT_EQ(a.body["to_move"], "C");
  EXPECT_EQ(a.body["value_for_mover"], "win");
  EXPECT_EQ(a.body["winner_with_best_play"], "C");
  EXPECT_TRUE(a.body["best_move"].contains("region"));

  const auto k = post(s, "/games", {{"board", "two-klein"}, {"human", "C"}, {"first", "D"}});
  ASSERT_EQ(k.status, 201);
  EXPECT_EQ(s.handle("GET", "/games/" + k.body["game_id"].get<std::string>() + "/analysis", "").status,
            503);
}

TEST(Service, EngineIsDeterministic) {
  auto s1 = catalog_service();
  auto s2 = catalog_service();
  for (const auto& name : {"twist5", "borromean", "figure8"}) {
    const json body{{"board", name}, {"human", "C"}, {"first", "D"}};
    EXPECT_EQ(post(s1, "/games", body).body["engine_moves"], post(s2, "/games", body).body["engine_moves"]);
  }
}

TEST(Service, SessionsSurviveRestart) {
  const auto dir = fresh_dir("restore");
  std::string id;
  nlohmann::ordered_json before;
  {
    auto s = catalog_service({dir});
    const auto created = post(s, "/games", {{"board", "twist5"}, {"human", "D"}, {"first", "C"}});
    id = created.body["game_id"];
    const auto r = post(s, "/games/" + id + "/move", {{"region", "r1"}, {"swap", 1}});
    ASSERT_EQ(r.status, 200) << r.body.dump();
    before = s.handle("GET", "/games/" + id, "").body;
  }
  EXPECT_TRUE(std::filesystem::exists(dir / (id + ".log")));
  auto s = catalog_service({dir});
  EXPECT_EQ(s.session_count(), 1U);
  EXPECT_EQ(s.handle("GET", "/games/" + id, "").body, before);
  const auto again = post(s, "/games", {{"board", "figure8"}});
  EXPECT_NE(again.body["game_id"], id);
  std::filesystem::remove_all(dir);
}

TEST(Service, LoadsBoardsFromADirectory) {
  const auto boards = GameService::load_boards(SWAPGAME_BOARDS_DIR);
  EXPECT_EQ(boards.size(), catalog_names().size());
  EXPECT_TRUE(boards.count("ladder-3"));
  EXPECT_THROW(GameService::load_boards("/nonexistent/boards"), ConfigurationError);
}

TEST(Service, ServesOverHttp) {
  auto service = catalog_service();
  httplib::Server server;
  mount(server, service);
  const int port = server.bind_to_any_port("127.0.0.1");
  ASSERT_GT(port, 0);
  std::thread t([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  const auto boards = client.Get("/boards");
  ASSERT_TRUE(boards);
  EXPECT_EQ(boards->status, 200);
  EXPECT_EQ(boards->get_header_value("Access-Control-Allow-Origin"), "*");
  const auto created =
      client.Post("/games", json{{"board", "twist5"}}.dump(), "application/json");
  ASSERT_TRUE(created);
  EXPECT_EQ(created->status, 201);
  const auto body = json::parse(created->body);
  const auto status = client.Get("/games/" + body["game_id"].get<std::string>());
  ASSERT_TRUE(status);
  EXPECT_EQ(json::parse(status->body)["board"], "twist5");
  const auto options = client.Options("/games");
  ASSERT_TRUE(options);
  EXPECT_EQ(options->status, 204);

  server.stop();
  t.join();
}
