#pragma once

// HTTP JSON service: boards, live sessions against the engine, analysis.
//
// GameService::handle() is the whole API as a plain function of
// (method, path, body); serve() mounts it on an httplib server. Sessions live
// in memory and, when a log directory is configured, every session is also
// an append-only file of JSON lines (a header, then one line per move) that
// is replayed on startup.

#include <atomic>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "swapgame/board.hpp"
#include "swapgame/board_io.hpp"
#include "swapgame/catalog.hpp"
#include "swapgame/connectivity.hpp"
#include "swapgame/engine.hpp"
#include "swapgame/errors.hpp"
#include "swapgame/solver.hpp"

namespace swapgame {

struct HttpResponse {
  int status = 200;
  nlohmann::ordered_json body;
};

class GameService {
public:
  struct Options {
    std::optional<std::filesystem::path> log_dir;
  };

  explicit GameService(std::map<std::string, BoardPtr> boards, Options options = {})
      : boards_(std::move(boards)), options_(std::move(options)) {
    if (options_.log_dir) {
      std::filesystem::create_directories(*options_.log_dir);
      restore_sessions();
    }
  }

  // Every catalog board.
  static std::map<std::string, BoardPtr> catalog_boards() {
    std::map<std::string, BoardPtr> out;
    for (const auto& name : catalog_names())
      out.emplace(name, catalog_entry(name).board);
    return out;
  }

  // Every *.json board file in a directory, keyed by board name.
  static std::map<std::string, BoardPtr> load_boards(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir))
      throw ConfigurationError("boards directory '" + dir.string() + "' does not exist");
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
      if (entry.is_regular_file() && entry.path().extension() == ".json")
        files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    std::map<std::string, BoardPtr> out;
    for (const auto& f : files) {
      auto b = load_board_file(f.string());
      out.emplace(b->name(), b);
    }
    return out;
  }

  std::size_t session_count() const {
    std::shared_lock lock(sessions_mutex_);
    return sessions_.size();
  }

  HttpResponse handle(const std::string& method, const std::string& path,
                      const std::string& body) {
    try {
      return route(method, split_path(path), body);
    } catch (const nlohmann::json::exception& e) {
      return error(422, std::string("malformed body: ") + e.what());
    } catch (const ParseError& e) {
      return error(422, e.what());
    } catch (const DimensionError& e) {
      return error(422, e.what());
    } catch (const RuleViolation& e) {
      return error(409, e.what());
    } catch (const TerminalError& e) {
      return error(409, e.what());
    } catch (const Error& e) {
      return error(422, e.what());
    }
  }

private:
  struct Session {
    std::string id;
    std::string board_name;
    Player human = Player::D;
    bool sandbox = false; // engine disabled; the client plays both sides
    GameState state;
    std::vector<Player> movers;
    std::unique_ptr<Solver> solver;
    std::optional<std::string> solver_error;
    std::mutex mutex;

    Session(std::string id_, std::string board_name_, Player human_, bool sandbox_, GameState state_)
        : id(std::move(id_)), board_name(std::move(board_name_)), human(human_), sandbox(sandbox_),
          state(std::move(state_)) {}
  };

  static HttpResponse error(int status, const std::string& message) {
    return {status, {{"error", message}}};
  }

  static std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> parts;
    std::string p = path.substr(0, path.find('?'));
    std::istringstream in(p);
    for (std::string part; std::getline(in, part, '/');)
      if (!part.empty())
        parts.push_back(part);
    return parts;
  }

  HttpResponse route(const std::string& method, const std::vector<std::string>& p,
                     const std::string& body) {
    const bool get = method == "GET", post = method == "POST";
    if (p.size() == 1 && p[0] == "boards")
      return get ? list_boards() : error(405, "method not allowed");
    if (p.size() == 2 && p[0] == "boards")
      return get ? board_document(p[1]) : error(405, "method not allowed");
    if (p.size() == 1 && p[0] == "games")
      return post ? create_game(body) : error(405, "method not allowed");
    if (p.size() == 2 && p[0] == "games")
      return get ? game_status(p[1]) : error(405, "method not allowed");
    if (p.size() == 3 && p[0] == "games" && p[2] == "move")
      return post ? play_move(p[1], body) : error(405, "method not allowed");
    if (p.size() == 3 && p[0] == "games" && p[2] == "analysis")
      return get ? analysis(p[1]) : error(405, "method not allowed");
    return error(404, "no such route");
  }

  static std::vector<BitVec> start_states(const Board& b) {
    std::vector<BitVec> out;
    if (b.start_state())
      out.push_back(*b.start_state());
    return out;
  }

  HttpResponse list_boards() const {
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& [name, b] : boards_) {
      nlohmann::ordered_json starts = nlohmann::ordered_json::array();
      for (const auto& s : start_states(*b))
        starts.push_back(s.to_string());
      list.push_back({{"name", name},
                      {"crossings", b->n()},
                      {"regions", b->k()},
                      {"has_embedding", b->embedding().has_value()},
                      {"start_states", starts}});
    }
    return {200, list};
  }

  HttpResponse board_document(const std::string& name) const {
    auto it = boards_.find(name);
    if (it == boards_.end())
      return error(404, "no board named '" + name + "'");
    return {200, board_to_json(*it->second)};
  }

  std::shared_ptr<Session> find_session(const std::string& id) const {
    std::shared_lock lock(sessions_mutex_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
  }

  static Player player_field(const nlohmann::json& j, const char* key, Player fallback) {
    auto it = j.find(key);
    if (it == j.end())
      return fallback;
    if (!it->is_string())
      throw ParseError(std::string("field '") + key + "' must be \"C\" or \"D\"");
    return player_from_string(it->get<std::string>());
  }

  HttpResponse create_game(const std::string& body) {
    const auto j = nlohmann::json::parse(body);
    if (!j.is_object() || !j.contains("board") || !j["board"].is_string())
      throw ParseError("body needs a string field 'board'");
    const std::string name = j["board"].get<std::string>();
    auto bit = boards_.find(name);
    if (bit == boards_.end())
      return error(404, "no board named '" + name + "'");
    const BoardPtr board = bit->second;

    BitVec start;
    if (auto s = j.find("start"); s != j.end()) {
      if (!s->is_string())
        throw ParseError("field 'start' must be a bitstring");
      start = BitVec::from_string(s->get<std::string>());
    } else if (board->start_state()) {
      start = *board->start_state();
    } else {
      throw ParseError("board '" + name + "' has no default start; give 'start'");
    }
    const Player human = player_field(j, "human", Player::D);
    const Player first = player_field(j, "first", Player::C);
    bool sandbox = false;
    if (auto s = j.find("sandbox"); s != j.end()) {
      if (!s->is_boolean())
        throw ParseError("field 'sandbox' must be a boolean");
      sandbox = s->get<bool>();
    }

    std::optional<GameState> g;
    try {
      g.emplace(new_game(board, start, first));
    } catch (const RuleViolation& e) {
      return error(422, e.what());
    }
    const std::string id = next_id();
    auto session = std::make_shared<Session>(id, name, human, sandbox, std::move(*g));
    attach_solver(*session);

    std::lock_guard lock(session->mutex);
    {
      std::unique_lock map_lock(sessions_mutex_);
      sessions_.emplace(id, session);
    }
    write_header(*session, start, first);
    nlohmann::ordered_json engine_moves = engine_reply(*session);
    auto out = state_json(*session);
    nlohmann::ordered_json resp{{"game_id", id}, {"state", out}};
    if (!engine_moves.empty())
      resp["engine_moves"] = engine_moves;
    return {201, resp};
  }

  HttpResponse game_status(const std::string& id) const {
    auto s = find_session(id);
    if (!s)
      return error(404, "no game '" + id + "'");
    std::lock_guard lock(s->mutex);
    return {200, state_json(*s)};
  }

  HttpResponse play_move(const std::string& id, const std::string& body) {
    auto s = find_session(id);
    if (!s)
      return error(404, "no game '" + id + "'");
    const auto j = nlohmann::json::parse(body);
    if (!j.is_object() || !j.contains("region") || !j.contains("swap"))
      throw ParseError("body needs 'region' and 'swap'");
    const auto& board = s->state.board();
    std::size_t region = 0;
    if (j["region"].is_string()) {
      auto r = board.find_region(j["region"].get<std::string>());
      if (!r)
        throw ParseError("unknown region '" + j["region"].get<std::string>() + "'");
      region = *r;
    } else {
      throw ParseError("field 'region' must be a region id");
    }
    bool swap = false;
    if (j["swap"].is_boolean())
      swap = j["swap"].get<bool>();
    else if (j["swap"].is_number_integer() && (j["swap"] == 0 || j["swap"] == 1))
      swap = j["swap"].get<int>() == 1;
    else
      throw ParseError("field 'swap' must be 0 or 1");

    std::lock_guard lock(s->mutex);
    if (s->state.over())
      throw TerminalError("game is over");
    if (!s->sandbox && s->state.to_move() != s->human)
      throw RuleViolation("it is not your turn");
    apply_logged(*s, Move{region, swap});
    nlohmann::ordered_json engine_moves = engine_reply(*s);
    nlohmann::ordered_json resp{{"state", state_json(*s)}};
    if (!engine_moves.empty())
      resp["engine_move"] = engine_moves.front();
    return {200, resp};
  }

  HttpResponse analysis(const std::string& id) {
    auto s = find_session(id);
    if (!s)
      return error(404, "no game '" + id + "'");
    std::lock_guard lock(s->mutex);
    if (!s->solver)
      return error(503, "analysis unavailable: " + s->solver_error.value_or("no solver"));
    if (s->state.over())
      return error(409, "game is over");
    const Player mover = s->state.to_move();
    const Player value = s->solver->value(s->state);
    const Move best = s->solver->best_move(s->state);
    nlohmann::ordered_json resp{{"to_move", std::string(to_string(mover))},
                                {"value_for_mover", value == mover ? "win" : "loss"},
                                {"winner_with_best_play", std::string(to_string(value))},
                                {"best_move", move_json(s->state.board(), best)}};
    return {200, resp};
  }

  static nlohmann::ordered_json move_json(const Board& b, const Move& m) {
    return {{"region", b.region(m.region).id}, {"swap", m.swap ? 1 : 0}};
  }

  static nlohmann::ordered_json state_json(const Session& s) {
    const auto& g = s.state;
    const auto& b = g.board();
    nlohmann::ordered_json selected = nlohmann::ordered_json::array();
    for (std::size_t r = 0; r < b.k(); ++r)
      if (g.is_selected(r))
        selected.push_back(b.region(r).id);
    nlohmann::ordered_json history = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < g.history().size(); ++i) {
      auto m = move_json(b, g.history()[i]);
      m["player"] = std::string(to_string(s.movers[i]));
      history.push_back(m);
    }
    nlohmann::ordered_json j{{"game_id", s.id},
                             {"board", s.board_name},
                             {"start", g.start().to_string()},
                             {"state_vector", g.current().to_string()},
                             {"selected", selected},
                             {"history", history},
                             {"human", std::string(to_string(s.human))},
                             {"first", std::string(to_string(g.first_mover()))},
                             {"sandbox", s.sandbox},
                             {"over", g.over()}};
    if (!g.over())
      j["to_move"] = std::string(to_string(g.to_move()));
    switch (is_connected_state(b, g.current())) {
    case Connectivity::connected:
      j["connected_now"] = true;
      break;
    case Connectivity::disconnected:
      j["connected_now"] = false;
      break;
    case Connectivity::unknown:
      break;
    }
    if (g.over())
      if (auto w = winner_or_unknown(g))
        j["winner"] = std::string(to_string(*w));
    return j;
  }

  static std::optional<Player> winner_or_unknown(const GameState& g) {
    try {
      return winner(g);
    } catch (const ConfigurationError&) {
      return std::nullopt;
    }
  }

  void attach_solver(Session& s) const {
    const auto& b = s.state.board_ptr();
    if (auto reason = solver_unavailable_reason(*b)) {
      s.solver_error = *reason;
      return;
    }
    s.solver = std::make_unique<Solver>(b);
  }

  // The engine's pick: the solver's best move, or the first legal move when
  // the board is outside the solver's reach.
  static Move engine_choice(Session& s) {
    if (s.solver)
      return s.solver->best_move(s.state);
    return legal_moves(s.state).front();
  }

  nlohmann::ordered_json engine_reply(Session& s) {
    nlohmann::ordered_json moves = nlohmann::ordered_json::array();
    while (!s.sandbox && !s.state.over() && s.state.to_move() != s.human) {
      const Move m = engine_choice(s);
      apply_logged(s, m);
      moves.push_back(move_json(s.state.board(), m));
    }
    return moves;
  }

  void apply_logged(Session& s, const Move& m) {
    const Player mover = s.state.to_move();
    s.state = s.state.apply(m);
    s.movers.push_back(mover);
    append_log(s, nlohmann::json{{"region", s.state.board().region(m.region).id},
                                 {"swap", m.swap ? 1 : 0}});
  }

  std::string next_id() {
    std::lock_guard lock(id_mutex_);
    std::string id;
    do {
      id = "g" + std::to_string(++id_counter_);
    } while (find_session(id));
    return id;
  }

  std::optional<std::filesystem::path> log_path(const std::string& id) const {
    if (!options_.log_dir)
      return std::nullopt;
    return *options_.log_dir / (id + ".log");
  }

  void write_header(const Session& s, const BitVec& start, Player first) const {
    append_log(s, nlohmann::json{{"board", s.board_name},
                                 {"start", start.to_string()},
                                 {"human", std::string(to_string(s.human))},
                                 {"first", std::string(to_string(first))},
                                 {"sandbox", s.sandbox}});
  }

  void append_log(const Session& s, const nlohmann::json& line) const {
    auto path = log_path(s.id);
    if (!path)
      return;
    std::ofstream out(*path, std::ios::app);
    out << line.dump() << "\n";
  }

  void restore_sessions() {
    std::vector<std::filesystem::path> logs;
    for (const auto& entry : std::filesystem::directory_iterator(*options_.log_dir))
      if (entry.is_regular_file() && entry.path().extension() == ".log")
        logs.push_back(entry.path());
    std::sort(logs.begin(), logs.end());
    for (const auto& path : logs) {
      std::ifstream in(path);
      std::string line;
      if (!std::getline(in, line))
        continue;
      const auto header = nlohmann::json::parse(line);
      const std::string name = header.at("board").get<std::string>();
      auto bit = boards_.find(name);
      if (bit == boards_.end())
        throw ConfigurationError("session log '" + path.string() + "' refers to unknown board '" +
                                 name + "'");
      const auto start = BitVec::from_string(header.at("start").get<std::string>());
      const Player first = player_from_string(header.at("first").get<std::string>());
      auto s = std::make_shared<Session>(path.stem().string(), name,
                                         player_from_string(header.at("human").get<std::string>()),
                                         header.value("sandbox", false),
                                         new_game(bit->second, start, first));
      while (std::getline(in, line)) {
        if (line.empty())
          continue;
        const auto j = nlohmann::json::parse(line);
        auto r = bit->second->find_region(j.at("region").get<std::string>());
        if (!r)
          throw ConfigurationError("session log '" + path.string() + "' names an unknown region");
        s->movers.push_back(s->state.to_move());
        s->state = s->state.apply(Move{*r, j.at("swap").get<int>() == 1});
      }
      attach_solver(*s);
      sessions_.emplace(s->id, s);
    }
  }

  std::map<std::string, BoardPtr> boards_;
  Options options_;
  mutable std::shared_mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::mutex id_mutex_;
  std::size_t id_counter_ = 0;
};

// Mounts the service on an httplib server with permissive CORS.
inline void mount(httplib::Server& server, GameService& service) {
  auto handler = [&service](const httplib::Request& req, httplib::Response& res) {
    const auto r = service.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});
  server.Get(".*", handler);
  server.Post(".*", handler);
  server.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
}

} // namespace swapgame
