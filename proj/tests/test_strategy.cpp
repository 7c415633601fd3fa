#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <random>

#include "swapgame/catalog.hpp"
#include "swapgame/strategy.hpp"

using namespace swapgame;

namespace {

BitVec bv(const char* s) { return BitVec::from_string(s); }

// Every pairing strategy for C on a small board, by brute force.
std::vector<PairingStrategy> all_strategies(std::size_t k, CMoves c) {
  std::vector<PairingStrategy> out;
  std::function<void(std::vector<bool>&, PairingStrategy&)> pair_up = [&](std::vector<bool>& used,
                                                                         PairingStrategy& s) {
    std::size_t lo = 0;
    while (lo < k && used[lo])
      ++lo;
    if (lo == k) {
      const std::size_t m = s.pairs.size();
      for (std::uint64_t u = 0; u < (std::uint64_t{1} << m); ++u) {
        auto t = s;
        for (std::size_t i = 0; i < m; ++i)
          t.pairs[i].relation = (u >> i) & 1U ? Relation::unequal : Relation::equal;
        out.push_back(t);
      }
      return;
    }
    used[lo] = true;
    for (std::size_t hi = lo + 1; hi < k; ++hi) {
      if (used[hi])
        continue;
      used[hi] = true;
      s.pairs.push_back({lo, hi, Relation::equal});
      pair_up(used, s);
      s.pairs.pop_back();
      used[hi] = false;
    }
    used[lo] = false;
  };
  if (c == CMoves::second) {
    std::vector<bool> used(k, false);
    PairingStrategy s;
    pair_up(used, s);
  } else {
    for (std::size_t p = 0; p < k; ++p)
      for (bool bit : {false, true}) {
        std::vector<bool> used(k, false);
        used[p] = true;
        PairingStrategy s;
        s.c_moves = CMoves::first;
        s.prelude = {{p, bit}};
        pair_up(used, s);
      }
  }
  return out;
}

// C following the strategy against an arbitrary D; returns the final state.
BitVec play_against(const CatalogEntry& e, const BitVec& start, const PairingStrategy& s,
                    std::mt19937& rng) {
  std::map<std::size_t, std::pair<std::size_t, Relation>> partner;
  for (const auto& p : s.pairs) {
    partner[p.a] = {p.b, p.relation};
    partner[p.b] = {p.a, p.relation};
  }
  auto g = new_game(e.board, start, first_mover(s.c_moves));
  for (const auto& m : s.prelude)
    g = g.apply(m);
  while (!g.over()) {
    const auto moves = legal_moves(g);
    const Move d = moves[rng() % moves.size()];
    g = g.apply(d);
    const auto [r, rel] = partner.at(d.region);
    g = g.apply({r, rel == Relation::equal ? d.swap : !d.swap});
  }
  return g.current();
}

} // namespace

TEST(Strategy, TextRoundTrip) {
  const auto b = twist5().board;
  const std::string text = "first; prelude r5:0; r1!=r4; r2!=r6; r3==r7";
  const auto s = parse_strategy(text, *b);
  EXPECT_EQ(s.c_moves, CMoves::first);
  ASSERT_EQ(s.prelude.size(), 1U);
  EXPECT_EQ(s.prelude[0], (Move{4, false}));
  ASSERT_EQ(s.pairs.size(), 3U);
  EXPECT_EQ(s.pairs[0], (RegionPair{0, 3, Relation::unequal}));
  EXPECT_EQ(s.pairs[2], (RegionPair{2, 6, Relation::equal}));
  EXPECT_EQ(format_strategy(s, *b), text);
  EXPECT_EQ(parse_strategy(format_strategy(s, *b), *b), s);
}

TEST(Strategy, ParseErrors) {
  const auto b = twist5().board;
  EXPECT_THROW(parse_strategy("r1==r2", *b), StrategyError);
  EXPECT_THROW(parse_strategy("first; second", *b), StrategyError);
  EXPECT_THROW(parse_strategy("first; prelude r5", *b), StrategyError);
  EXPECT_THROW(parse_strategy("first; prelude r5:2", *b), StrategyError);
  EXPECT_THROW(parse_strategy("second; r1==r9", *b), StrategyError);
  EXPECT_THROW(parse_strategy("second; r1<>r2", *b), StrategyError);
}

TEST(Strategy, StructuralProblems) {
  const auto b = twist5().board;
  EXPECT_TRUE(strategy_problems(parse_strategy("first; prelude r5:0; r1==r4; r2==r6; r3==r7", *b),
                                *b)
                  .empty());
  EXPECT_FALSE(strategy_problems(parse_strategy("first; prelude r5:0; r1==r4; r2==r6", *b), *b)
                   .empty());
  EXPECT_FALSE(
      strategy_problems(parse_strategy("first; prelude r5:0; r1==r4; r2==r6; r3==r3; r7==r1", *b),
                        *b)
          .empty());
  EXPECT_FALSE(strategy_problems(parse_strategy("second; prelude r5:0; r1==r4; r2==r6; r3==r7", *b),
                                 *b)
                   .empty());
  const auto bad = parse_strategy("second; r1==r4; r2==r6; r3==r7", *b);
  EXPECT_THROW(verify(*b, bv("11001"), bad), StrategyError);
}

TEST(Strategy, TwistPairingGivesTheListedEightOutcomes) {
  const auto entry = twist5();
  const auto& b = *entry.board;
  const auto v = verify(b, bv("11001"), entry.strategy("c").strategy);
  EXPECT_TRUE(v.wins);
  EXPECT_FALSE(v.counterexample);
  ASSERT_EQ(v.outcomes.size(), 8U);

  const std::vector<std::string> e_vectors{"1110001", "1100000", "1010011", "1000010",
                                           "0111001", "0101000", "0011011", "0001010"};
  const std::vector<std::string> v7{"01011", "11010", "11010", "01011",
                                    "01101", "11100", "11100", "01101"};
  std::multiset<std::string> from_e, from_strategy;
  for (std::size_t i = 0; i < 8; ++i) {
    BitVec out = bv("11001");
    for (std::size_t r = 0; r < 7; ++r)
      if (e_vectors[i][r] == '1')
        out += b.move_row(r);
    EXPECT_EQ(out.to_string(), v7[i]);
    from_e.insert(out.to_string());
    from_strategy.insert(v.outcomes[i].to_string());
  }
  EXPECT_EQ(from_e, from_strategy);
  EXPECT_EQ(std::set<std::string>(from_e.begin(), from_e.end()).size(), 4U);
}

TEST(Strategy, EqualEverywhereLosesOnGroupC) {
  const auto entry = twist5();
  const auto v = verify(*entry.board, bv("11001"), entry.strategy("a").strategy);
  EXPECT_FALSE(v.wins);
  ASSERT_TRUE(v.counterexample);
  ASSERT_TRUE(v.counterexample_state);
  EXPECT_EQ(is_connected_state(*entry.board, *v.counterexample_state), Connectivity::disconnected);
  EXPECT_EQ(v.outcomes[*v.counterexample], *v.counterexample_state);
}

TEST(Strategy, TwistGroupsPartitionTheConnectedStates) {
  const auto entry = twist5();
  const auto& b = *entry.board;
  std::map<std::string, std::vector<std::string>> groups;
  for (const auto& v : enumerate_connected_states(b)) {
    std::string tag;
    for (const char* name : {"a", "b", "c"})
      if (verify(b, v, entry.strategy(name).strategy).wins)
        tag += name;
    groups[tag].push_back(v.to_string());
  }
  EXPECT_EQ(groups["a"], (std::vector<std::string>{"01011", "01101", "11010", "11100"}));
  EXPECT_EQ(groups["b"], (std::vector<std::string>{"10011", "10101"}));
  EXPECT_EQ(groups["c"], (std::vector<std::string>{"11001"}));
  EXPECT_EQ(groups.size(), 3U);
  // Group a is closed under its own pairing.
  for (const auto& s : groups["a"])
    for (const auto& out : verify(b, BitVec::from_string(s), entry.strategy("a").strategy).outcomes)
      EXPECT_NE(std::find(groups["a"].begin(), groups["a"].end(), out.to_string()),
                groups["a"].end());
}

TEST(Strategy, ExplicitMovesReachTheSameOutcomes) {
  for (const auto& name : {"twist5", "figure8", "borromean", "ladder-2", "two-klein"}) {
    const auto entry = catalog_entry(name);
    for (const auto& ns : entry.strategies) {
      const auto& s = ns.strategy;
      for (const auto& start : entry.starts) {
        for (std::uint64_t c = 0; c < (std::uint64_t{1} << s.pairs.size()); ++c) {
          const auto g = replay(entry.board, start, first_mover(s.c_moves), strategy_moves(s, c));
          EXPECT_EQ(g.current(), strategy_outcome(*entry.board, start, s, c)) << name;
        }
      }
    }
  }
}

TEST(Strategy, ArbitraryOpponentsStayInsideTheOutcomeSet) {
  std::mt19937 rng(53);
  for (const auto& name : {"twist5", "figure8", "trefoil", "ladder-3", "two-klein"}) {
    const auto entry = catalog_entry(name);
    for (const auto& ns : entry.strategies)
      for (const auto& start : ns.claimed_starts) {
        const auto v = verify(*entry.board, start, ns.strategy);
        ASSERT_TRUE(v.wins) << name << " " << ns.name;
        const std::set<BitVec> outcomes(v.outcomes.begin(), v.outcomes.end());
        for (int t = 0; t < 30; ++t)
          EXPECT_TRUE(outcomes.count(play_against(entry, start, ns.strategy, rng)));
      }
  }
}

TEST(Strategy, TwoKleinOutcomesStayInTheDesignatedSet) {
  const auto entry = two_klein();
  const auto& s = entry.strategy("mimic").strategy;
  const std::set<BitVec> starts(entry.starts.begin(), entry.starts.end());
  for (const auto& v0 : entry.starts) {
    const auto v = verify(*entry.board, v0, s);
    EXPECT_TRUE(v.wins);
    for (const auto& out : v.outcomes)
      EXPECT_TRUE(starts.count(out));
  }
}

TEST(Strategy, PairToggles) {
  const auto k = two_klein().board;
  EXPECT_EQ(pair_toggle(*k, "r2", "r6"), BitVec::ones(10));
  EXPECT_EQ(pair_toggle(*k, "r4", "r8"), BitVec::ones(10));
  EXPECT_EQ(pair_toggle(*k, "r1", "r3").to_string(), "1111100111");
  EXPECT_EQ(pair_toggle(*k, "r5", "r7").to_string(), "1111100111");
  EXPECT_THROW(pair_toggle(*k, "r1", "r1"), StrategyError);
  EXPECT_THROW(pair_toggle(*k, "r1", "r99"), StructuralError);
}

TEST(Strategy, SearchExamples) {
  const auto f = figure8();
  const auto s = search(*f.board, bv("1010"), CMoves::second);
  ASSERT_TRUE(s);
  EXPECT_EQ(format_strategy(*s, *f.board), "second; r1==r2; r3==r4; r5==r6");
  EXPECT_FALSE(search(*f.board, bv("1010"), CMoves::first));

  const auto t = twist5();
  for (const auto& v : enumerate_connected_states(*t.board)) {
    const auto found = search(*t.board, v, CMoves::first);
    ASSERT_TRUE(found) << v.to_string();
    EXPECT_TRUE(verify(*t.board, v, *found).wins);
  }
  EXPECT_THROW(search(*two_klein().board, two_klein().starts[0], CMoves::second),
               ConfigurationError);
}

// search finds a strategy exactly when some pairing strategy wins.
TEST(Strategy, SearchIsCompleteOnSmallBoards) {
  for (const auto& name : {"twist5", "figure8", "trefoil", "borromean"}) {
    const auto entry = catalog_entry(name);
    const auto& b = *entry.board;
    const CMoves c = b.k() % 2 == 1 ? CMoves::first : CMoves::second;
    const auto candidates = all_strategies(b.k(), c);
    for (const auto& v : enumerate_connected_states(b)) {
      const bool any = std::any_of(candidates.begin(), candidates.end(),
                                   [&](const PairingStrategy& s) { return verify(b, v, s).wins; });
      const auto found = search(b, v, c);
      EXPECT_EQ(found.has_value(), any) << name << " " << v.to_string();
      if (found)
        EXPECT_TRUE(verify(b, v, *found).wins);
    }
  }
}
