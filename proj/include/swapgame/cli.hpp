#pragma once

// Command-line front end. run() takes argv and two streams so the whole CLI
// can be exercised in-process; tools/swapgame.cpp only forwards to it.
//
// Exit codes: 0 success or a true result, 1 a false result (verify loses,
// solve says D, invalid board, ...), 2 usage or data errors.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "swapgame/algebra.hpp"
#include "swapgame/board.hpp"
#include "swapgame/board_io.hpp"
#include "swapgame/catalog.hpp"
#include "swapgame/connectivity.hpp"
#include "swapgame/disjoint_trees.hpp"
#include "swapgame/engine.hpp"
#include "swapgame/errors.hpp"
#include "swapgame/service.hpp"
#include "swapgame/solver.hpp"
#include "swapgame/strategy.hpp"

namespace swapgame::cli {

inline constexpr int kExitTrue = 0;
inline constexpr int kExitFalse = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

using Json = nlohmann::ordered_json;

struct Context {
  std::ostream& out;
  std::ostream& err;
  bool json = false;

  int emit(const Json& j, const std::string& text, int code) const {
    if (json)
      out << j.dump(2) << "\n";
    else
      out << text;
    return code;
  }
};

inline std::string yes_no(bool b) { return b ? "true" : "false"; }

inline Backend parse_backend(const std::string& s) {
  if (s == "auto")
    return Backend::automatic;
  if (s == "planar")
    return Backend::planar;
  if (s == "ribbon")
    return Backend::ribbon;
  if (s == "designated")
    return Backend::designated;
  throw ParseError("unknown backend '" + s + "'");
}

inline std::string backend_name(Backend b) {
  switch (b) {
  case Backend::planar:
    return "planar";
  case Backend::ribbon:
    return "ribbon";
  case Backend::designated:
    return "designated";
  case Backend::automatic:
    break;
  }
  return "auto";
}

inline BitVec parse_start(const Board& b, const std::string& bits) {
  const BitVec v = BitVec::from_string(bits);
  if (v.size() != b.n())
    throw DimensionError("start has " + std::to_string(v.size()) + " bits; board '" + b.name() +
                         "' has " + std::to_string(b.n()) + " crossings");
  return v;
}

// "r5:0, r2:1 ..." separated by commas or spaces.
inline std::vector<Move> parse_moves(const Board& b, const std::string& text) {
  std::vector<Move> moves;
  std::string cleaned = text;
  for (char& c : cleaned)
    if (c == ',')
      c = ' ';
  std::istringstream in(cleaned);
  for (std::string tok; in >> tok;) {
    const auto colon = tok.find(':');
    if (colon == std::string::npos)
      throw ParseError("move '" + tok + "' must look like r5:0");
    const auto r = b.find_region(tok.substr(0, colon));
    if (!r)
      throw ParseError("unknown region in move '" + tok + "'");
    const std::string bit = tok.substr(colon + 1);
    if (bit != "0" && bit != "1")
      throw ParseError("swap bit in move '" + tok + "' must be 0 or 1");
    moves.push_back({*r, bit == "1"});
  }
  return moves;
}

inline Json witness_json(const SimpleGraphSpec& g, const PartitionWitness& w) {
  Json parts = Json::array();
  for (const auto& part : w.partition) {
    Json names = Json::array();
    for (auto v : part)
      names.push_back(g.vertices[v]);
    parts.push_back(names);
  }
  return {{"parts", parts}, {"part_count", w.partition.size()}, {"cross_edges", w.cross_edges}};
}

inline std::string witness_text(const SimpleGraphSpec& g, const PartitionWitness& w, std::size_t k) {
  std::ostringstream s;
  s << "witness partition (" << w.partition.size() << " parts):";
  for (const auto& part : w.partition) {
    s << " {";
    for (std::size_t i = 0; i < part.size(); ++i)
      s << (i ? " " : "") << g.vertices[part[i]];
    s << "}";
  }
  s << "\ncross edges: " << w.cross_edges << " < " << k * (w.partition.size() - 1) << "\n";
  return s.str();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

} // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  using detail::Json;
  using detail::yes_no;

  CLI::App app{"Region smoothing swap game: boards, solver, strategies, service"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

  std::string board_path, start_bits, first_str = "C", strategy_text, backend_str = "auto",
                                      moves_text, c_moves_str = "second";

  auto* validate_cmd = app.add_subcommand("validate", "Check a board file against its invariants");
  validate_cmd->add_option("board", board_path)->required();

  bool connected_only = false;
  auto* states_cmd = app.add_subcommand("states", "List states with their curve counts");
  states_cmd->add_option("board", board_path)->required();
  states_cmd->add_flag("--connected", connected_only, "Only connected states");
  states_cmd->add_option("--backend", backend_str, "auto|planar|ribbon|designated");

  auto* solve_cmd = app.add_subcommand("solve", "Winner with optimal play");
  solve_cmd->add_option("board", board_path)->required();
  solve_cmd->add_option("--start", start_bits)->required();
  solve_cmd->add_option("--first", first_str)->check(CLI::IsMember({"C", "D"}));

  auto* classify_cmd = app.add_subcommand("classify", "Winner for each choice of first mover");
  classify_cmd->add_option("board", board_path)->required();
  classify_cmd->add_option("--start", start_bits)->required();

  auto* verify_cmd = app.add_subcommand("verify", "Check a pairing strategy against every D reply");
  verify_cmd->add_option("board", board_path)->required();
  verify_cmd->add_option("--start", start_bits)->required();
  verify_cmd->add_option("--strategy", strategy_text)->required();

  auto* search_cmd = app.add_subcommand("search", "Look for a winning pairing strategy");
  search_cmd->add_option("board", board_path)->required();
  search_cmd->add_option("--start", start_bits)->required();
  search_cmd->add_option("--c-moves", c_moves_str)->check(CLI::IsMember({"first", "second"}));

  auto* replay_cmd = app.add_subcommand("replay", "Apply a move list and print every state");
  replay_cmd->add_option("board", board_path)->required();
  replay_cmd->add_option("--start", start_bits)->required();
  replay_cmd->add_option("--first", first_str)->check(CLI::IsMember({"C", "D"}));
  replay_cmd->add_option("--moves", moves_text, "e.g. \"r5:0 r2:1\"")->required();

  std::string gen_name, gen_out;
  int steps = 0;
  auto* gen_cmd = app.add_subcommand("gen", "Write a catalog board file");
  gen_cmd->add_option("name", gen_name, "ladder or a catalog name")->required();
  gen_cmd->add_option("--steps", steps, "Ladder steps");
  gen_cmd->add_option("-o,--output", gen_out, "Output file (stdout if omitted)");

  auto* class_cmd = app.add_subcommand("class", "Equivalence class of a state under region swaps");
  class_cmd->add_option("board", board_path)->required();
  class_cmd->add_option("--start", start_bits)->required();

  std::string graph_path;
  std::size_t tree_k = 2;
  bool link_classify = false;
  auto* trees_cmd = app.add_subcommand("trees", "Edge-disjoint spanning trees of a graph");
  trees_cmd->add_option("graph", graph_path, "Edge list, or a board file")->required();
  trees_cmd->add_option("--k", tree_k)->check(CLI::PositiveNumber);
  trees_cmd->add_flag("--link", link_classify, "Also run the link smoothing P-position check");

  int port = 8080;
  std::string host = "127.0.0.1", boards_dir, log_dir;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP JSON service");
  serve_cmd->add_option("--port", port);
  serve_cmd->add_option("--host", host);
  serve_cmd->add_option("--boards", boards_dir, "Directory of board files (catalog if omitted)");
  serve_cmd->add_option("--log-dir", log_dir, "Persist sessions as move logs here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitTrue : kExitUsage;
  }

  detail::Context ctx{out, err, format == "json"};
  try {
    auto load = [&] { return load_board_file(board_path); };

    if (*validate_cmd) {
      const auto b = load();
      const auto problems = validate(*b);
      const auto notes = notices(*b);
      Json jp = Json::array(), jn = Json::array();
      std::ostringstream text;
      text << (problems.empty() ? "valid" : "invalid") << "\n";
      for (const auto& v : problems) {
        jp.push_back({{"invariant", v.invariant}, {"detail", v.detail}});
        text << "error: " << v.invariant << ": " << v.detail << "\n";
      }
      for (const auto& v : notes) {
        jn.push_back({{"invariant", v.invariant}, {"detail", v.detail}});
        text << "note: " << v.invariant << ": " << v.detail << "\n";
      }
      return ctx.emit({{"valid", problems.empty()}, {"errors", jp}, {"notices", jn}}, text.str(),
                      problems.empty() ? kExitTrue : kExitFalse);
    }

    if (*states_cmd) {
      const auto b = load();
      require_valid(*b);
      const Backend be = resolve_backend(*b, detail::parse_backend(backend_str));
      Json list = Json::array();
      std::ostringstream text;
      if (!backend_total(*b, be)) {
        // Only the designated states are known.
        for (const auto& v : *b->designated_states()) {
          list.push_back({{"state", v.to_string()}, {"components", 1}});
          text << v.to_string() << (connected_only ? "" : " 1") << "\n";
        }
        ctx.err << "note: partial connectivity oracle; only designated states are listed\n";
        return ctx.emit({{"backend", detail::backend_name(be)}, {"complete", false}, {"states", list}},
                        text.str(), kExitTrue);
      }
      if (b->n() > kMaxEnumerateCrossings)
        throw CapacityError("enumeration is limited to " + std::to_string(kMaxEnumerateCrossings) +
                            " crossings");
      std::vector<std::pair<std::string, ComponentCount>> rows;
      const std::uint64_t total = std::uint64_t{1} << b->n();
      for (std::uint64_t s = 0; s < total; ++s) {
        const BitVec v = BitVec::from_bits(s, b->n());
        const auto count = component_count(*b, v, be);
        const bool connected = count.kind == ComponentCount::Kind::exact && count.value == 1;
        if (!connected_only || connected)
          rows.emplace_back(v.to_string(), count);
      }
      std::sort(rows.begin(), rows.end(),
                [](const auto& a, const auto& c) { return a.first < c.first; });
      for (const auto& [bits, count] : rows) {
        const std::string shown = count.kind == ComponentCount::Kind::exact
                                      ? std::to_string(count.value)
                                      : std::string(">=2");
        Json item{{"state", bits}};
        if (count.kind == ComponentCount::Kind::exact)
          item["components"] = count.value;
        else
          item["components"] = shown;
        list.push_back(item);
        text << bits << (connected_only ? "" : " " + shown) << "\n";
      }
      return ctx.emit({{"backend", detail::backend_name(be)}, {"complete", true}, {"count", list.size()},
                       {"states", list}},
                      text.str(), kExitTrue);
    }

    if (*solve_cmd) {
      const auto b = load();
      const Player first = player_from_string(first_str);
      const Player w = solve(b, detail::parse_start(*b, start_bits), first);
      return ctx.emit({{"start", start_bits}, {"first", first_str}, {"winner", std::string(to_string(w))}},
                      "winner: " + std::string(to_string(w)) + "\n",
                      w == Player::C ? kExitTrue : kExitFalse);
    }

    if (*classify_cmd) {
      const auto b = load();
      const auto oc = outcome_class(b, detail::parse_start(*b, start_bits));
      auto winner_of = [](bool c) { return std::string(c ? "C" : "D"); };
      std::ostringstream text;
      text << "C first: winner " << winner_of(oc.c_wins_moving_first) << "\n"
           << "D first: winner " << winner_of(oc.c_wins_moving_second) << "\n";
      return ctx.emit({{"start", start_bits},
                       {"c_wins_moving_first", oc.c_wins_moving_first},
                       {"c_wins_moving_second", oc.c_wins_moving_second}},
                      text.str(), kExitTrue);
    }

    if (*verify_cmd) {
      const auto b = load();
      const auto s = parse_strategy(strategy_text, *b);
      const auto v = verify(*b, detail::parse_start(*b, start_bits), s);
      Json outcomes = Json::array();
      for (const auto& o : v.outcomes)
        outcomes.push_back(o.to_string());
      Json j{{"strategy", format_strategy(s, *b)}, {"start", start_bits}, {"wins", v.wins},
             {"outcomes", outcomes}};
      std::ostringstream text;
      text << "wins: " << yes_no(v.wins) << "\n";
      if (v.counterexample) {
        std::ostringstream moves;
        const auto seq = strategy_moves(s, *v.counterexample);
        for (std::size_t i = 0; i < seq.size(); ++i)
          moves << (i ? " " : "") << b->region(seq[i].region).id << ":" << (seq[i].swap ? 1 : 0);
        j["counterexample"] = {{"moves", moves.str()}, {"state", v.counterexample_state->to_string()}};
        text << "counterexample: " << moves.str() << " -> " << v.counterexample_state->to_string()
             << "\n";
      }
      return ctx.emit(j, text.str(), v.wins ? kExitTrue : kExitFalse);
    }

    if (*search_cmd) {
      const auto b = load();
      const auto found = search(*b, detail::parse_start(*b, start_bits),
                                c_moves_str == "first" ? CMoves::first : CMoves::second);
      if (!found)
        return ctx.emit({{"found", false}}, "no pairing strategy found\n", kExitFalse);
      const std::string s = format_strategy(*found, *b);
      return ctx.emit({{"found", true}, {"strategy", s}}, "strategy: " + s + "\n", kExitTrue);
    }

    if (*replay_cmd) {
      const auto b = load();
      const auto moves = detail::parse_moves(*b, moves_text);
      GameState g = new_game(b, detail::parse_start(*b, start_bits), player_from_string(first_str));
      Json steps_json = Json::array();
      std::ostringstream text;
      text << "V0 = " << g.current().to_string() << "\n";
      for (std::size_t i = 0; i < moves.size(); ++i) {
        const Player mover = g.to_move();
        g = g.apply(moves[i]);
        steps_json.push_back({{"player", std::string(to_string(mover))},
                              {"region", b->region(moves[i].region).id},
                              {"swap", moves[i].swap ? 1 : 0},
                              {"state", g.current().to_string()}});
        text << "V" << i + 1 << " = " << g.current().to_string() << "  (" << to_string(mover) << " "
             << b->region(moves[i].region).id << ":" << (moves[i].swap ? 1 : 0) << ")\n";
      }
      Json j{{"start", start_bits}, {"steps", steps_json}, {"over", g.over()}};
      if (g.over()) {
        const auto w = winner(g);
        j["winner"] = std::string(to_string(*w));
        text << "winner: " << to_string(*w) << "\n";
      }
      return ctx.emit(j, text.str(), kExitTrue);
    }

    if (*gen_cmd) {
      CatalogEntry e = gen_name == "ladder" ? ladder(steps) : catalog_entry(gen_name);
      const std::string doc = write_board(*e.board);
      if (gen_out.empty()) {
        out << doc;
      } else {
        std::ofstream f(gen_out);
        if (!f)
          throw ParseError("cannot write '" + gen_out + "'");
        f << doc;
        if (ctx.json)
          out << Json{{"written", gen_out}, {"board", e.board->name()}}.dump(2) << "\n";
      }
      return kExitTrue;
    }

    if (*class_cmd) {
      const auto b = load();
      const auto r = equivalence_class(*b, detail::parse_start(*b, start_bits));
      Json j{{"start", start_bits}, {"rank", r.rank}, {"class_size", r.size},
             {"contains_connected", r.contains_connected}};
      std::ostringstream text;
      text << "rank: " << r.rank << "\nclass size: " << r.size
           << "\ncontains connected: " << yes_no(r.contains_connected) << "\n";
      if (r.witness) {
        j["witness"] = r.witness->to_string();
        text << "witness: " << r.witness->to_string() << "\n";
      }
      return ctx.emit(j, text.str(), r.contains_connected ? kExitTrue : kExitFalse);
    }

    if (*trees_cmd) {
      const std::string text_in = detail::read_file(graph_path);
      const SimpleGraphSpec g = graph_path.size() > 5 && graph_path.ends_with(".json")
                                    ? graph_from_board(*parse_board(text_in))
                                    : parse_edge_list(text_in);
      const bool has = has_k_disjoint_spanning_trees(g, tree_k);
      Json j{{"vertices", g.vertex_count()}, {"edges", g.edge_count()}, {"k", tree_k}, {"has_trees", has}};
      std::ostringstream text;
      text << "vertices: " << g.vertex_count() << "\nedges: " << g.edge_count() << "\n"
           << tree_k << " edge-disjoint spanning trees: " << yes_no(has) << "\n";
      if (auto w = violating_partition(g, tree_k)) {
        j["witness"] = detail::witness_json(g, *w);
        text << detail::witness_text(g, *w, tree_k);
      }
      if (link_classify) {
        const auto c = classify_link_smoothing(g);
        Json lj{{"below_edge_bound", c.below_edge_bound}};
        if (const auto* no = std::get_if<DefinitelyNotP>(&c.verdict)) {
          lj["verdict"] = "definitely not P";
          lj["reason"] = no->reason;
          text << "link smoothing: definitely not P (" << no->reason << ")\n";
        } else {
          lj["verdict"] = "necessary conditions hold";
          text << "link smoothing: necessary conditions for P hold\n";
        }
        if (c.below_edge_bound)
          text << "edge bound: |E| < 2(|V|-1)\n";
        j["link_smoothing"] = lj;
      }
      return ctx.emit(j, text.str(), has ? kExitTrue : kExitFalse);
    }

    if (*serve_cmd) {
      auto boards = boards_dir.empty() ? GameService::catalog_boards()
                                       : GameService::load_boards(boards_dir);
      GameService::Options opts;
      if (!log_dir.empty())
        opts.log_dir = log_dir;
      GameService service(std::move(boards), opts);
      httplib::Server server;
      mount(server, service);
      err << "serving " << host << ":" << port << "\n";
      if (!server.listen(host, port)) {
        err << "error: cannot listen on " << host << ":" << port << "\n";
        return kExitUsage;
      }
      return kExitTrue;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

} // namespace swapgame::cli
