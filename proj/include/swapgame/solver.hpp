#pragma once

// Exact solver by backward induction over (unselected regions, state).
//
// Positions are packed: the unselected set is a k-bit mask and the state an
// n-bit word. The player to move follows from the number of regions already
// chosen and the first mover, so it never enters the memo key beyond the
// first-mover bit. At most 3^k (mask, state) pairs are reachable.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "swapgame/board.hpp"
#include "swapgame/connectivity.hpp"
#include "swapgame/engine.hpp"
#include "swapgame/errors.hpp"

namespace swapgame {

inline constexpr std::size_t kMaxSolverRegions = 16;
inline constexpr std::size_t kMaxSolverCrossings = 24;
inline constexpr std::size_t kTerminalTableCrossings = 20;

struct OutcomeClass {
  bool c_wins_moving_first = false;
  bool c_wins_moving_second = false;
  friend bool operator==(const OutcomeClass&, const OutcomeClass&) = default;
};

// Whether a board fits the solver at all; returns the reason when it does not.
inline std::optional<std::string> solver_unavailable_reason(const Board& b) {
  if (b.k() > kMaxSolverRegions)
    return "board has " + std::to_string(b.k()) + " regions; the solver handles at most " +
           std::to_string(kMaxSolverRegions);
  if (b.n() > kMaxSolverCrossings)
    return "board has " + std::to_string(b.n()) + " crossings; the solver handles at most " +
           std::to_string(kMaxSolverCrossings);
  if (!validate(b).empty())
    return "board is invalid";
  if (!backend_total(b))
    return "board has only a partial connectivity oracle";
  return std::nullopt;
}

class Solver {
public:
  struct Options {
    bool memoize = true;
  };

  explicit Solver(BoardPtr board) : Solver(std::move(board), Options{}) {}

  Solver(BoardPtr board, Options options)
      : board_(std::move(board)), options_(options), oracle_(init_oracle(*board_)) {
    for (const auto& row : board_->move_rows())
      rows_.push_back(static_cast<std::uint32_t>(row.to_bits()));
    if (board_->n() <= kTerminalTableCrossings)
      terminal_table_.assign(std::size_t{1} << board_->n(), -1);
  }

  const Board& board() const noexcept { return *board_; }

  // True iff C wins with optimal play from this position.
  bool c_wins(std::uint32_t unselected, std::uint32_t state, Player first) {
    const std::size_t chosen = board_->k() - static_cast<std::size_t>(std::popcount(unselected));
    const Player mover = chosen % 2 == 0 ? first : other(first);
    if (unselected == 0)
      return terminal_connected(state);
    if (std::has_single_bit(unselected)) {
      const bool keep = terminal_connected(state);
      const bool swap = terminal_connected(state ^ rows_[static_cast<std::size_t>(std::countr_zero(unselected))]);
      return mover == Player::C ? keep || swap : keep && swap;
    }

    const std::uint64_t key = (std::uint64_t{first == Player::C ? 1U : 0U} << 40) |
                              (std::uint64_t{unselected} << 24) | state;
    if (options_.memoize) {
      if (auto it = memo_.find(key); it != memo_.end())
        return it->second;
    }

    const bool mover_is_c = mover == Player::C;
    bool result = !mover_is_c; // C: looking for a win; D: looking for a refutation
    for (std::size_t r = 0; r < board_->k() && result != mover_is_c; ++r) {
      if (!((unselected >> r) & 1U))
        continue;
      const std::uint32_t rest = unselected & ~(std::uint32_t{1} << r);
      for (std::uint32_t swap = 0; swap < 2; ++swap) {
        const bool child = c_wins(rest, swap ? state ^ rows_[r] : state, first);
        if (child == mover_is_c) {
          result = mover_is_c;
          break;
        }
      }
    }
    if (options_.memoize)
      memo_.emplace(key, result);
    return result;
  }

  Player solve(const BitVec& start, Player first) {
    check_start(start);
    return c_wins(full_mask(), static_cast<std::uint32_t>(start.to_bits()), first) ? Player::C
                                                                                  : Player::D;
  }

  OutcomeClass outcome_class(const BitVec& start) {
    return {solve(start, Player::C) == Player::C, solve(start, Player::D) == Player::C};
  }

  // Value of a game in progress.
  Player value(const GameState& g) {
    if (g.over())
      return terminal_connected(pack(g.current())) ? Player::C : Player::D;
    return c_wins(unselected_mask(g), pack(g.current()), g.first_mover()) ? Player::C : Player::D;
  }

  // A move that keeps the solved value for the mover. Ties break by lowest
  // region, then keep before swap; a lost position yields the first legal move.
  Move best_move(const GameState& g) {
    if (g.over())
      throw TerminalError("game is over; no move to suggest");
    const Player mover = g.to_move();
    const std::uint32_t unselected = unselected_mask(g);
    const std::uint32_t state = pack(g.current());
    std::optional<Move> fallback;
    for (std::size_t r = 0; r < board_->k(); ++r) {
      if (!((unselected >> r) & 1U))
        continue;
      const std::uint32_t rest = unselected & ~(std::uint32_t{1} << r);
      for (std::uint32_t swap = 0; swap < 2; ++swap) {
        const Move m{r, swap == 1};
        if (!fallback)
          fallback = m;
        const bool c_win = c_wins(rest, swap ? state ^ rows_[r] : state, g.first_mover());
        if (c_win == (mover == Player::C))
          return m;
      }
    }
    return *fallback;
  }

  std::size_t memo_size() const noexcept { return memo_.size(); }
  const std::unordered_map<std::uint64_t, bool>& memo() const noexcept { return memo_; }

  std::uint32_t full_mask() const noexcept {
    return board_->k() == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << board_->k()) - 1;
  }

  bool terminal_connected(std::uint32_t state) {
    if (!terminal_table_.empty()) {
      auto& cell = terminal_table_[state];
      if (cell < 0)
        cell = evaluate_terminal(state) ? 1 : 0;
      return cell == 1;
    }
    if (auto it = terminal_cache_.find(state); it != terminal_cache_.end())
      return it->second;
    const bool c = evaluate_terminal(state);
    terminal_cache_.emplace(state, c);
    return c;
  }

private:
  static ConnectivityOracle init_oracle(const Board& b) {
    if (auto reason = solver_unavailable_reason(b)) {
      if (b.k() > kMaxSolverRegions || b.n() > kMaxSolverCrossings)
        throw CapacityError(*reason);
      if (!validate(b).empty())
        require_valid(b);
      throw ConfigurationError(*reason);
    }
    return ConnectivityOracle(b);
  }

  bool evaluate_terminal(std::uint32_t state) const {
    switch (oracle_.status(state)) {
    case Connectivity::connected:
      return true;
    case Connectivity::disconnected:
      return false;
    case Connectivity::unknown:
      break;
    }
    throw ConfigurationError("connectivity of state " +
                             BitVec::from_bits(state, board_->n()).to_string() + " is unknown");
  }

  void check_start(const BitVec& start) const {
    if (start.size() != board_->n())
      throw DimensionError("start state length does not match the board");
  }

  std::uint32_t pack(const BitVec& v) const { return static_cast<std::uint32_t>(v.to_bits()); }

  std::uint32_t unselected_mask(const GameState& g) const {
    return full_mask() & ~static_cast<std::uint32_t>(g.selected().to_bits());
  }

  BoardPtr board_;
  Options options_;
  ConnectivityOracle oracle_;
  std::vector<std::uint32_t> rows_;
  std::unordered_map<std::uint64_t, bool> memo_;
  std::vector<signed char> terminal_table_;
  std::unordered_map<std::uint32_t, bool> terminal_cache_;
};

inline Player solve(BoardPtr board, const BitVec& start, Player first) {
  return Solver(std::move(board)).solve(start, first);
}

inline OutcomeClass outcome_class(BoardPtr board, const BitVec& start) {
  return Solver(std::move(board)).outcome_class(start);
}

} // namespace swapgame
