#pragma once

// Pairing (mimicking) strategies for C.
//
// C optionally plays prelude moves, then answers every D move inside its pair:
// in an equal pair C copies D's swap bit, in an unequal pair C plays the other
// bit. Because the final state is start + sum of swapped rows, an equal pair
// contributes 0 or row_a + row_b and an unequal pair contributes row_a or
// row_b; D's only freedom is one bit per pair.
//
// Text form: "first|second; prelude r5:0; r1!=r4; r2!=r6; r3==r7".

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "swapgame/board.hpp"
#include "swapgame/connectivity.hpp"
#include "swapgame/engine.hpp"
#include "swapgame/errors.hpp"

namespace swapgame {

enum class Relation { equal, unequal };
enum class CMoves { first, second };

struct RegionPair {
  std::size_t a = 0;
  std::size_t b = 0;
  Relation relation = Relation::equal;
  friend bool operator==(const RegionPair&, const RegionPair&) = default;
};

struct PairingStrategy {
  CMoves c_moves = CMoves::second;
  std::vector<Move> prelude;
  std::vector<RegionPair> pairs;
  friend bool operator==(const PairingStrategy&, const PairingStrategy&) = default;
};

inline Player first_mover(CMoves c) noexcept { return c == CMoves::first ? Player::C : Player::D; }

inline PairingStrategy parse_strategy(std::string_view text, const Board& b) {
  PairingStrategy s;
  std::vector<std::string> parts;
  {
    std::string cur;
    for (char ch : text) {
      if (ch == ';') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    parts.push_back(cur);
  }
  auto trim = [](std::string x) {
    const auto first = x.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
      return std::string();
    const auto last = x.find_last_not_of(" \t\r\n");
    return x.substr(first, last - first + 1);
  };
  auto region = [&](const std::string& id) {
    if (auto r = b.find_region(id))
      return *r;
    throw StrategyError("strategy names unknown region '" + id + "'");
  };

  bool have_mover = false;
  for (auto& raw : parts) {
    const std::string part = trim(raw);
    if (part.empty())
      continue;
    if (part == "first" || part == "second") {
      if (have_mover)
        throw StrategyError("strategy states the mover twice");
      s.c_moves = part == "first" ? CMoves::first : CMoves::second;
      have_mover = true;
    } else if (part.rfind("prelude", 0) == 0) {
      const std::string body = trim(part.substr(7));
      const auto colon = body.find(':');
      if (colon == std::string::npos)
        throw StrategyError("prelude entry must look like 'prelude r5:0', got '" + part + "'");
      const std::string bit = trim(body.substr(colon + 1));
      if (bit != "0" && bit != "1")
        throw StrategyError("prelude swap bit must be 0 or 1, got '" + bit + "'");
      s.prelude.push_back({region(trim(body.substr(0, colon))), bit == "1"});
    } else if (auto eq = part.find("=="); eq != std::string::npos) {
      s.pairs.push_back({region(trim(part.substr(0, eq))), region(trim(part.substr(eq + 2))),
                         Relation::equal});
    } else if (auto ne = part.find("!="); ne != std::string::npos) {
      s.pairs.push_back({region(trim(part.substr(0, ne))), region(trim(part.substr(ne + 2))),
                         Relation::unequal});
    } else {
      throw StrategyError("cannot read strategy clause '" + part + "'");
    }
  }
  if (!have_mover)
    throw StrategyError("strategy must start with 'first' or 'second'");
  return s;
}

inline std::string format_strategy(const PairingStrategy& s, const Board& b) {
  std::ostringstream out;
  out << (s.c_moves == CMoves::first ? "first" : "second");
  for (const auto& m : s.prelude)
    out << "; prelude " << b.region(m.region).id << ':' << (m.swap ? 1 : 0);
  for (const auto& p : s.pairs)
    out << "; " << b.region(p.a).id << (p.relation == Relation::equal ? "==" : "!=")
        << b.region(p.b).id;
  return out.str();
}

// Structural problems; empty iff the strategy is well formed for the board.
inline std::vector<std::string> strategy_problems(const PairingStrategy& s, const Board& b) {
  std::vector<std::string> out;
  std::vector<int> uses(b.k(), 0);
  for (const auto& m : s.prelude) {
    if (m.region >= b.k()) {
      out.push_back("prelude region out of range");
      continue;
    }
    ++uses[m.region];
  }
  for (const auto& p : s.pairs) {
    if (p.a >= b.k() || p.b >= b.k()) {
      out.push_back("pair region out of range");
      continue;
    }
    if (p.a == p.b)
      out.push_back("region '" + b.region(p.a).id + "' is paired with itself");
    ++uses[p.a];
    ++uses[p.b];
  }
  for (std::size_t r = 0; r < b.k(); ++r) {
    if (uses[r] == 0)
      out.push_back("region '" + b.region(r).id + "' is not covered");
    if (uses[r] > 1)
      out.push_back("region '" + b.region(r).id + "' is used " + std::to_string(uses[r]) + " times");
  }
  if (s.c_moves == CMoves::second && !s.prelude.empty())
    out.push_back("C moving second cannot play prelude moves");
  if (s.c_moves == CMoves::first && s.prelude.size() != 1)
    out.push_back("C moving first plays exactly one prelude move");
  return out;
}

inline void require_well_formed(const PairingStrategy& s, const Board& b) {
  const auto problems = strategy_problems(s, b);
  if (!problems.empty())
    throw StrategyError("strategy is malformed: " + problems.front());
}

// Row added by swapping both regions of a pair.
inline BitVec pair_toggle(const Board& b, std::size_t a, std::size_t c) {
  if (a >= b.k() || c >= b.k())
    throw StructuralError("unknown region index");
  if (a == c)
    throw StrategyError("a region cannot be paired with itself");
  return b.move_row(a) + b.move_row(c);
}

inline BitVec pair_toggle(const Board& b, std::string_view a, std::string_view c) {
  return pair_toggle(b, b.region_index(a), b.region_index(c));
}

struct Verdict {
  bool wins = false;
  // One entry per D choice, indexed by the choice mask (bit i = pair i).
  std::vector<BitVec> outcomes;
  std::optional<std::uint64_t> counterexample; // D choice mask reaching a lost state
  std::optional<BitVec> counterexample_state;
};

// Final state for a given D choice: for pair i, bit i of `choice` selects
// "both swapped" (equal) or "b swapped instead of a" (unequal).
inline BitVec strategy_outcome(const Board& b, const BitVec& start, const PairingStrategy& s,
                               std::uint64_t choice) {
  BitVec v = start;
  for (const auto& m : s.prelude)
    if (m.swap)
      v += b.move_row(m.region);
  for (std::size_t i = 0; i < s.pairs.size(); ++i) {
    const auto& p = s.pairs[i];
    const bool bit = (choice >> i) & 1U;
    if (p.relation == Relation::equal) {
      if (bit)
        v += b.move_row(p.a) + b.move_row(p.b);
    } else {
      v += b.move_row(bit ? p.b : p.a);
    }
  }
  return v;
}

inline Verdict verify(const Board& b, const BitVec& start, const PairingStrategy& s) {
  if (start.size() != b.n())
    throw DimensionError("start state length does not match the board");
  require_well_formed(s, b);
  if (s.pairs.size() > 30)
    throw CapacityError("too many pairs to enumerate");
  const ConnectivityOracle oracle(b);
  Verdict v;
  v.wins = true;
  const std::uint64_t choices = std::uint64_t{1} << s.pairs.size();
  for (std::uint64_t c = 0; c < choices; ++c) {
    BitVec out = strategy_outcome(b, start, s, c);
    switch (oracle.status(out)) {
    case Connectivity::connected:
      break;
    case Connectivity::disconnected:
      if (v.wins) {
        v.wins = false;
        v.counterexample = c;
        v.counterexample_state = out;
      }
      break;
    case Connectivity::unknown:
      throw ConfigurationError("connectivity of outcome " + out.to_string() + " is unknown");
    }
    v.outcomes.push_back(std::move(out));
  }
  return v;
}

// The explicit move sequence realising a D choice: C's prelude, then for each
// pair D moves on `a` and C answers on `b`.
inline std::vector<Move> strategy_moves(const PairingStrategy& s, std::uint64_t choice) {
  std::vector<Move> moves = s.prelude;
  for (std::size_t i = 0; i < s.pairs.size(); ++i) {
    const auto& p = s.pairs[i];
    const bool bit = (choice >> i) & 1U;
    if (p.relation == Relation::equal) {
      moves.push_back({p.a, bit});
      moves.push_back({p.b, bit});
    } else {
      moves.push_back({p.a, !bit});
      moves.push_back({p.b, bit});
    }
  }
  return moves;
}

namespace detail {

// Depth-first enumeration of perfect matchings of `free` regions. For a
// complete matching with pair toggles d_i, the reachable outcomes are
// base + subset sums of {d_i}, where base = start + prelude + sum of row_a over
// unequal pairs. `alive` holds the connected states t with t + every subset sum
// of the toggles so far still connected; an empty set prunes the branch.
class MatchingSearch {
public:
  MatchingSearch(const Board& b, std::vector<std::uint64_t> connected, std::uint64_t base,
                 bool equal_only)
      : b_(b), connected_(std::move(connected)), base_(base), equal_only_(equal_only) {
    for (const auto& row : b.move_rows())
      rows_.push_back(row.to_bits());
  }

  std::optional<std::vector<RegionPair>> run(const std::vector<std::size_t>& free) {
    std::vector<bool> used(b_.k(), true);
    for (auto r : free)
      used[r] = false;
    std::vector<RegionPair> pairs;
    if (recurse(used, pairs, connected_))
      return pairs;
    return std::nullopt;
  }

private:
  static bool contains(const std::vector<std::uint64_t>& sorted, std::uint64_t x) {
    return std::binary_search(sorted.begin(), sorted.end(), x);
  }

  bool recurse(std::vector<bool>& used, std::vector<RegionPair>& pairs,
               const std::vector<std::uint64_t>& alive) {
    std::size_t lo = 0;
    while (lo < used.size() && used[lo])
      ++lo;
    if (lo == used.size())
      return finish(pairs, alive);
    used[lo] = true;
    for (std::size_t hi = lo + 1; hi < used.size(); ++hi) {
      if (used[hi])
        continue;
      const std::uint64_t d = rows_[lo] ^ rows_[hi];
      std::vector<std::uint64_t> next;
      for (auto t : alive)
        if (contains(alive, t ^ d))
          next.push_back(t);
      if (next.empty() || (equal_only_ && !contains(next, base_)))
        continue;
      used[hi] = true;
      pairs.push_back({lo, hi, Relation::equal});
      if (recurse(used, pairs, next))
        return true;
      pairs.pop_back();
      used[hi] = false;
    }
    used[lo] = false;
    return false;
  }

  // Choose which pairs are unequal so the base lands in `alive`; fewest
  // unequal pairs first.
  bool finish(std::vector<RegionPair>& pairs, const std::vector<std::uint64_t>& alive) {
    const std::size_t m = pairs.size();
    if (equal_only_ || m == 0)
      return contains(alive, base_);
    std::vector<std::uint64_t> masks;
    for (std::uint64_t u = 0; u < (std::uint64_t{1} << m); ++u)
      masks.push_back(u);
    std::stable_sort(masks.begin(), masks.end(), [](auto x, auto y) {
      return std::popcount(x) < std::popcount(y);
    });
    for (auto u : masks) {
      std::uint64_t t = base_;
      for (std::size_t i = 0; i < m; ++i)
        if ((u >> i) & 1U)
          t ^= rows_[pairs[i].a];
      if (contains(alive, t)) {
        for (std::size_t i = 0; i < m; ++i)
          pairs[i].relation = ((u >> i) & 1U) ? Relation::unequal : Relation::equal;
        return true;
      }
    }
    return false;
  }

  const Board& b_;
  std::vector<std::uint64_t> rows_;
  std::vector<std::uint64_t> connected_;
  std::uint64_t base_;
  bool equal_only_;
};

} // namespace detail

// Looks for a winning pairing strategy: every perfect matching of the
// non-prelude regions with every equal/unequal assignment, and for C moving
// first every prelude region with both swap bits. All-equal pairings are tried
// before any pairing with unequal pairs. Exhaustive within that family.
inline std::optional<PairingStrategy> search(const Board& b, const BitVec& start, CMoves c_moves) {
  if (start.size() != b.n())
    throw DimensionError("start state length does not match the board");
  if (b.k() > 16)
    throw CapacityError("strategy search handles at most 16 regions");
  require_enumerable(b);
  const bool need_prelude = c_moves == CMoves::first;
  if ((b.k() % 2 == 1) != need_prelude)
    return std::nullopt;

  std::vector<std::uint64_t> connected;
  for (const auto& v : enumerate_connected_states(b))
    connected.push_back(v.to_bits());
  std::sort(connected.begin(), connected.end());

  const std::uint64_t s0 = start.to_bits();
  for (bool equal_only : {true, false}) {
    const std::size_t prelude_options = need_prelude ? b.k() : 1;
    for (std::size_t p = 0; p < prelude_options; ++p) {
      for (int bit = 0; bit < (need_prelude ? 2 : 1); ++bit) {
        std::uint64_t base = s0;
        std::vector<std::size_t> free;
        for (std::size_t r = 0; r < b.k(); ++r)
          if (!need_prelude || r != p)
            free.push_back(r);
        if (need_prelude && bit)
          base ^= b.move_row(p).to_bits();
        detail::MatchingSearch ms(b, connected, base, equal_only);
        if (auto pairs = ms.run(free)) {
          PairingStrategy s;
          s.c_moves = c_moves;
          if (need_prelude)
            s.prelude.push_back({p, bit == 1});
          s.pairs = std::move(*pairs);
          return s;
        }
      }
    }
  }
  return std::nullopt;
}

} // namespace swapgame
