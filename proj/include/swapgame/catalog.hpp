#pragma once

// Boards from the literature on the game, with their canonical starts and
// the pairing strategies known to win on them.
//
// Move rows printed in the source (twist5, two-klein) are embedded verbatim.
// Everything else (which regions are vertices, rotations, twist flags, the
// labelling of the smaller boards) is reconstructed and then checked by the
// test suite against every printed datum: validate() cross-checks rows,
// embeddings, traced faces and the Euler relation.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "swapgame/algebra.hpp"
#include "swapgame/board.hpp"
#include "swapgame/errors.hpp"
#include "swapgame/strategy.hpp"

namespace swapgame {

struct NamedStrategy {
  std::string name;
  PairingStrategy strategy;
  std::vector<BitVec> claimed_starts; // starts on which it is stated to win
};

struct CatalogEntry {
  BoardPtr board;
  std::vector<BitVec> starts; // canonical start first
  std::vector<NamedStrategy> strategies;

  const NamedStrategy& strategy(const std::string& name) const {
    for (const auto& s : strategies)
      if (s.name == name)
        return s;
    throw StructuralError("catalog entry '" + board->name() + "' has no strategy '" + name + "'");
  }
};

namespace detail {

struct RegionSpec {
  RegionKind kind;
  std::vector<int> crossings; // 1-based
};

struct BoardSketch {
  std::string name;
  std::optional<int> chi;
  int n = 0;
  std::vector<RegionSpec> regions; // r1..rk
  // Embedding, by 1-based region / crossing numbers.
  std::vector<std::pair<int, std::vector<std::pair<int, int>>>> rotations;
  std::vector<std::pair<int, int>> endpoints; // per crossing
  std::vector<int> twisted;
  std::vector<std::string> connected_states;
  std::string start;

  BoardPtr build() const {
    auto c = [](int j) { return "c" + std::to_string(j); };
    auto r = [](int i) { return "r" + std::to_string(i); };
    BoardData d;
    d.name = name;
    d.euler_characteristic = chi;
    for (int j = 1; j <= n; ++j)
      d.crossings.push_back(c(j));
    for (std::size_t i = 0; i < regions.size(); ++i) {
      Region reg;
      reg.id = r(static_cast<int>(i) + 1);
      reg.kind = regions[i].kind;
      for (int j : regions[i].crossings)
        reg.crossings.push_back(c(j));
      d.regions.push_back(std::move(reg));
    }
    if (!rotations.empty()) {
      EmbeddingSpec e;
      for (const auto& [v, darts] : rotations) {
        auto& rot = e.rotations[r(v)];
        for (const auto& [j, end] : darts)
          rot.emplace_back(c(j), end);
      }
      for (std::size_t j = 0; j < endpoints.size(); ++j)
        e.endpoints[c(static_cast<int>(j) + 1)] = {r(endpoints[j].first), r(endpoints[j].second)};
      for (int j : twisted)
        e.twisted.push_back(c(j));
      d.embedding = std::move(e);
    }
    if (!connected_states.empty())
      d.connected_states = connected_states;
    if (!start.empty())
      d.start_state = start;
    return make_board(std::move(d));
  }
};

inline PairingStrategy strategy_text(const Board& b, const std::string& text) {
  return parse_strategy(text, b);
}

inline std::vector<BitVec> bitvecs(std::initializer_list<const char*> texts) {
  std::vector<BitVec> out;
  for (const char* t : texts)
    out.push_back(BitVec::from_string(t));
  return out;
}

} // namespace detail

// Five-crossing twist knot. Rows are the printed 7x5 move matrix; the
// checkerboard graph is the 4-cycle r2-r3-r7-r6 with c3, c4 doubled between r3
// and r7, the bigon r5 between them.
inline CatalogEntry twist5() {
  using K = RegionKind;
  detail::BoardSketch s;
  s.name = "twist5";
  s.chi = 2;
  s.n = 5;
  s.regions = {
      {K::face, {1, 2, 4, 5}},   // r1
      {K::vertex, {1, 2}},       // r2
      {K::vertex, {1, 3, 4}},    // r3
      {K::face, {1, 2, 3, 5}},   // r4
      {K::face, {3, 4}},         // r5
      {K::vertex, {2, 5}},       // r6
      {K::vertex, {3, 4, 5}},    // r7
  };
  s.endpoints = {{2, 3}, {2, 6}, {3, 7}, {3, 7}, {6, 7}};
  s.rotations = {
      {2, {{1, 0}, {2, 0}}},
      {3, {{1, 1}, {3, 0}, {4, 0}}},
      {6, {{5, 0}, {2, 1}}},
      {7, {{4, 1}, {3, 1}, {5, 1}}},
  };
  s.start = "11001";

  CatalogEntry e;
  e.board = s.build();
  e.starts = {BitVec::from_string("11001")};
  e.strategies = {
      {"a", detail::strategy_text(*e.board, "first; prelude r5:0; r1==r4; r2==r6; r3==r7"), {}},
      {"b", detail::strategy_text(*e.board, "first; prelude r5:0; r1==r4; r2!=r6; r3==r7"), {}},
      {"c", detail::strategy_text(*e.board, "first; prelude r5:0; r1!=r4; r2!=r6; r3==r7"),
       {BitVec::from_string("11001")}},
  };
  return e;
}

// Figure-eight knot: vertices r1, r2, r4 in a chain with c1, c2 doubled
// between r1 and r2 and c3, c4 doubled between r2 and r4; bigons r3 and r6,
// outer face r5.
inline CatalogEntry figure8() {
  using K = RegionKind;
  detail::BoardSketch s;
  s.name = "figure8";
  s.chi = 2;
  s.n = 4;
  s.regions = {
      {K::vertex, {1, 2}},       // r1
      {K::vertex, {1, 2, 3, 4}}, // r2
      {K::face, {1, 2}},         // r3
      {K::vertex, {3, 4}},       // r4
      {K::face, {1, 2, 3, 4}},   // r5
      {K::face, {3, 4}},         // r6
  };
  s.endpoints = {{1, 2}, {1, 2}, {2, 4}, {2, 4}};
  s.rotations = {
      {1, {{1, 0}, {2, 0}}},
      {2, {{3, 0}, {1, 1}, {2, 1}, {4, 0}}},
      {4, {{3, 1}, {4, 1}}},
  };
  s.start = "1010";

  CatalogEntry e;
  e.board = s.build();
  e.starts = detail::bitvecs({"1010", "1001", "0110", "0101"});
  e.strategies = {{"mimic", detail::strategy_text(*e.board, "second; r1==r2; r3==r6; r4==r5"),
                   e.starts}};
  return e;
}

// Trefoil: the dipole, two vertices r1, r2 joined by c1, c2, c3, with bigon
// faces r3 = {c1,c2}, r4 = {c1,c3}, r5 = {c2,c3}. Every connected state has a
// single on-edge. C opens on the face avoiding that edge and keeps it.
inline std::string trefoil_strategy_text(const BitVec& start) {
  if (start.size() != 3 || start.count() != 1)
    throw DomainError("trefoil strategy needs a start with exactly one edge on");
  if (start[0])
    return "first; prelude r5:0; r1==r2; r3!=r4";
  if (start[1])
    return "first; prelude r4:0; r1==r2; r3!=r5";
  return "first; prelude r3:0; r1==r2; r4!=r5";
}

inline CatalogEntry trefoil() {
  using K = RegionKind;
  detail::BoardSketch s;
  s.name = "trefoil";
  s.chi = 2;
  s.n = 3;
  s.regions = {
      {K::vertex, {1, 2, 3}}, // r1
      {K::vertex, {1, 2, 3}}, // r2
      {K::face, {1, 2}},      // r3
      {K::face, {1, 3}},      // r4
      {K::face, {2, 3}},      // r5
  };
  s.endpoints = {{1, 2}, {1, 2}, {1, 2}};
  s.rotations = {
      {1, {{1, 0}, {3, 0}, {2, 0}}},
      {2, {{1, 1}, {2, 1}, {3, 1}}},
  };
  s.start = "100";

  CatalogEntry e;
  e.board = s.build();
  e.starts = detail::bitvecs({"100", "010", "001"});
  for (const auto& st : e.starts)
    e.strategies.push_back({"start-" + st.to_string(),
                            detail::strategy_text(*e.board, trefoil_strategy_text(st)), {st}});
  return e;
}

// Borromean rings: K4 with vertex 1 inside the triangle 2, 3, 4.
// Crossings c1..c6 are the edges 12, 13, 14, 23, 24, 34. Regions alternate a
// vertex with its opposite face: r1 = v1, r2 = f234, r3 = v3, r4 = f124,
// r5 = v4, r6 = f123, r7 = v2, r8 = f134.
inline CatalogEntry borromean() {
  using K = RegionKind;
  detail::BoardSketch s;
  s.name = "borromean";
  s.chi = 2;
  s.n = 6;
  s.regions = {
      {K::vertex, {1, 2, 3}}, // r1 = v1
      {K::face, {4, 5, 6}},   // r2 = f234
      {K::vertex, {2, 4, 6}}, // r3 = v3
      {K::face, {1, 3, 5}},   // r4 = f124
      {K::vertex, {3, 5, 6}}, // r5 = v4
      {K::face, {1, 2, 4}},   // r6 = f123
      {K::vertex, {1, 4, 5}}, // r7 = v2
      {K::face, {2, 3, 6}},   // r8 = f134
  };
  s.endpoints = {{1, 7}, {1, 3}, {1, 5}, {7, 3}, {7, 5}, {3, 5}};
  s.rotations = {
      {1, {{1, 0}, {2, 0}, {3, 0}}},
      {3, {{6, 0}, {2, 1}, {4, 1}}},
      {5, {{5, 1}, {3, 1}, {6, 1}}},
      {7, {{4, 0}, {1, 1}, {5, 0}}},
  };
  s.start = "110010"; // path 3-1-2-4

  CatalogEntry e;
  e.board = s.build();
  e.starts = {BitVec::from_string("110010")};
  e.strategies = {
      {"opposite-face", detail::strategy_text(*e.board, "second; r1==r2; r3==r4; r5==r6; r7==r8"),
       {}},
      {"star-trek", detail::strategy_text(*e.board, "second; r1==r7; r2==r8; r3==r5; r4==r6"), {}},
  };
  return e;
}

inline constexpr int kMinLadderSteps = 2;
inline constexpr int kMaxLadderSteps = 8;

// The n-step ladder on the Klein bottle, drawn in a square whose left and
// right sides are glued directly and whose top and bottom are glued with a
// reflection. Vertex levels 0..n-1 each hold a left and right vertex joined
// by two steps: one direct, one through the side gluing. Rails join
// consecutive levels; the two top rails pass through the reflected gluing
// (twisted) and land on the opposite side at level 0.
//
// Heights alternate rail, step going up: height 2j+1 holds the rails leaving
// level j (c_{4j+1} left side, c_{4j+2} right side); height 2j holds the steps
// of level j mod n (c_{4j-1} direct, c_{4j} wrapped). Regions r_{2i-1}, r_{2i}
// are the pair at height i: the two faces above level j at a rail height, the
// two vertices of the level at a step height. Swapping both regions of pair i
// flips both edges at heights i-1 and i+1 and leaves height i unchanged.
inline CatalogEntry ladder(int n) {
  if (n < kMinLadderSteps || n > kMaxLadderSteps)
    throw CapacityError("ladder needs between " + std::to_string(kMinLadderSteps) + " and " +
                        std::to_string(kMaxLadderSteps) + " steps, got " + std::to_string(n));
  using K = RegionKind;
  const int c_total = 4 * n;
  auto rail_left = [&](int j) { return 4 * j + 1; };  // leaves level j upward, left side
  auto rail_right = [&](int j) { return 4 * j + 2; }; // leaves level j upward, right side
  auto level_height = [&](int level) { return level == 0 ? n : level; }; // in step-height units
  auto step_direct = [&](int level) { return 4 * level_height(level) - 1; };
  auto step_wrapped = [&](int level) { return 4 * level_height(level); };
  auto vertex_left = [&](int level) { return 4 * level_height(level) - 1; };  // region number
  auto vertex_right = [&](int level) { return 4 * level_height(level); };
  auto up = [&](int level) { return (level + 1) % n; };

  detail::BoardSketch s;
  s.name = "ladder-" + std::to_string(n);
  s.chi = 0;
  s.n = c_total;
  s.regions.resize(static_cast<std::size_t>(4 * n));
  s.endpoints.resize(static_cast<std::size_t>(c_total));

  for (int j = 0; j < n; ++j) {
    const int above = up(j);
    // Faces between level j and the level above.
    s.regions[static_cast<std::size_t>(4 * j)] = {
        K::face, {step_direct(j), step_direct(above), rail_left(j), rail_right(j)}};
    s.regions[static_cast<std::size_t>(4 * j + 1)] = {
        K::face, {step_wrapped(j), step_wrapped(above), rail_left(j), rail_right(j)}};
  }

  for (int level = 0; level < n; ++level) {
    const int below = (level + n - 1) % n;
    const int left = vertex_left(level), right = vertex_right(level);
    s.endpoints[static_cast<std::size_t>(step_direct(level) - 1)] = {left, right};
    s.endpoints[static_cast<std::size_t>(step_wrapped(level) - 1)] = {left, right};
    const bool top = level == n - 1;
    s.endpoints[static_cast<std::size_t>(rail_left(level) - 1)] = {
        left, top ? vertex_right(0) : vertex_left(level + 1)};
    s.endpoints[static_cast<std::size_t>(rail_right(level) - 1)] = {
        right, top ? vertex_left(0) : vertex_right(level + 1)};

    // Arrival from below: level 0 is reached by the twisted top rails, which
    // change sides.
    const int left_down = level == 0 ? rail_right(n - 1) : rail_left(below);
    const int right_down = level == 0 ? rail_left(n - 1) : rail_right(below);

    // Cyclic order at every vertex: up rail, right step, down rail, left step.
    s.rotations.push_back(
        {left, {{rail_left(level), 0}, {step_direct(level), 0}, {left_down, 1}, {step_wrapped(level), 0}}});
    s.rotations.push_back(
        {right, {{rail_right(level), 0}, {step_wrapped(level), 1}, {right_down, 1}, {step_direct(level), 1}}});

    std::vector<int> row = {step_direct(level), step_wrapped(level), rail_left(level), left_down};
    s.regions[static_cast<std::size_t>(left - 1)] = {K::vertex, row};
    row = {step_direct(level), step_wrapped(level), rail_right(level), right_down};
    s.regions[static_cast<std::size_t>(right - 1)] = {K::vertex, row};
  }
  s.twisted = {rail_left(n - 1), rail_right(n - 1)};

  // Direct steps, left rails and the left top rail: one edge per height.
  std::string start(static_cast<std::size_t>(c_total), '0');
  for (int j = 0; j < n; ++j) {
    start[static_cast<std::size_t>(rail_left(j) - 1)] = '1';
    start[static_cast<std::size_t>(step_direct(j) - 1)] = '1';
  }
  s.start = start;

  CatalogEntry e;
  e.board = s.build();
  e.starts = {BitVec::from_string(start)};
  std::string text = "second";
  for (int i = 1; i <= 2 * n; ++i)
    text += "; r" + std::to_string(2 * i - 1) + "==r" + std::to_string(2 * i);
  e.strategies = {{"mimic", detail::strategy_text(*e.board, text), e.starts}};
  return e;
}

// Crossing numbers (1-based) at a height of ladder(n), heights 1..2n.
inline std::pair<int, int> ladder_height_crossings(int height) {
  return {2 * height - 1, 2 * height};
}

// Connect sum of two Klein bottles. Only the move matrix and four connected
// states are known, so connectivity comes from the designated set.
inline CatalogEntry two_klein() {
  static const char* kRows[] = {
      "1110001010", "0110010110", "0001101101", "1001110001",
      "0010010111", "1001101001", "1101110000", "0110001110",
  };
  detail::BoardSketch s;
  s.name = "two-klein";
  s.chi = -2;
  s.n = 10;
  for (const char* row : kRows) {
    detail::RegionSpec r{RegionKind::unknown, {}};
    for (int j = 0; j < 10; ++j)
      if (row[j] == '1')
        r.crossings.push_back(j + 1);
    s.regions.push_back(std::move(r));
  }
  s.connected_states = {"0100110011", "1011001100", "0100101011", "1011010100"};
  s.start = "0100110011";

  CatalogEntry e;
  e.board = s.build();
  e.starts = detail::bitvecs({"0100110011", "1011001100", "0100101011", "1011010100"});
  e.strategies = {{"mimic", detail::strategy_text(*e.board, "second; r1==r3; r2==r6; r4==r8; r5==r7"),
                   e.starts}};
  return e;
}

inline std::vector<std::string> catalog_names() {
  return {"twist5", "figure8", "trefoil", "borromean", "ladder-2", "ladder-3",
          "ladder-4", "ladder-5", "two-klein"};
}

inline CatalogEntry catalog_entry(const std::string& name) {
  if (name == "twist5")
    return twist5();
  if (name == "figure8")
    return figure8();
  if (name == "trefoil")
    return trefoil();
  if (name == "borromean")
    return borromean();
  if (name == "two-klein")
    return two_klein();
  if (name.rfind("ladder-", 0) == 0) {
    try {
      return ladder(std::stoi(name.substr(7)));
    } catch (const std::invalid_argument&) {
    }
  }
  throw StructuralError("no catalog board named '" + name + "'");
}

} // namespace swapgame
