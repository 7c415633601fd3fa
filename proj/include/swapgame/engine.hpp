#pragma once

// Rules of the Region Smoothing Swap Game. Players alternate choosing an
// unselected region and either swapping the smoothings on its boundary
// (swap = 1) or leaving them (swap = 0); after all k regions are chosen, C wins
// iff the final state is a single curve.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "swapgame/algebra.hpp"
#include "swapgame/board.hpp"
#include "swapgame/connectivity.hpp"
#include "swapgame/errors.hpp"

namespace swapgame {

enum class Player { C, D };

inline Player other(Player p) noexcept { return p == Player::C ? Player::D : Player::C; }

inline std::string_view to_string(Player p) { return p == Player::C ? "C" : "D"; }

inline Player player_from_string(std::string_view s) {
  if (s == "C" || s == "c")
    return Player::C;
  if (s == "D" || s == "d")
    return Player::D;
  throw ParseError("player must be C or D, got '" + std::string(s) + "'");
}

struct Move {
  std::size_t region = 0;
  bool swap = false;
  friend bool operator==(const Move&, const Move&) = default;
};

class GameState {
public:
  GameState(BoardPtr board, BitVec start, Player first)
      : board_(std::move(board)), start_(start), current_(std::move(start)),
        selected_(board_->k()), first_(first) {}

  const Board& board() const noexcept { return *board_; }
  const BoardPtr& board_ptr() const noexcept { return board_; }
  const BitVec& start() const noexcept { return start_; }
  const BitVec& current() const noexcept { return current_; }
  const BitVec& selected() const noexcept { return selected_; }
  const std::vector<Move>& history() const noexcept { return history_; }
  Player first_mover() const noexcept { return first_; }

  std::size_t moves_made() const noexcept { return history_.size(); }
  bool over() const noexcept { return history_.size() == board_->k(); }
  Player to_move() const noexcept { return history_.size() % 2 == 0 ? first_ : other(first_); }
  bool is_selected(std::size_t region) const { return selected_.test(region); }

  // Successor state; *this is unchanged.
  GameState apply(const Move& m) const {
    if (over())
      throw TerminalError("game is over; no region remains");
    if (m.region >= board_->k())
      throw StructuralError("region index " + std::to_string(m.region) + " out of range");
    if (selected_[m.region])
      throw RuleViolation("region '" + board_->region(m.region).id + "' was already selected");
    GameState next = *this;
    next.selected_.set(m.region);
    if (m.swap)
      next.current_ += board_->move_row(m.region);
    next.history_.push_back(m);
    return next;
  }

  // start + rows of every swapped selection, recomputed from the history.
  BitVec recomputed_current() const {
    BitVec v = start_;
    for (const auto& m : history_)
      if (m.swap)
        v += board_->move_row(m.region);
    return v;
  }

private:
  BoardPtr board_;
  BitVec start_;
  BitVec current_;
  BitVec selected_;
  Player first_;
  std::vector<Move> history_;
};

// A fresh game. The start must not be known to be disconnected; an unknown
// status (partial oracle) is accepted.
inline GameState new_game(BoardPtr board, const BitVec& start, Player first) {
  if (start.size() != board->n())
    throw DimensionError("start state has length " + std::to_string(start.size()) +
                         " but the board has " + std::to_string(board->n()) + " crossings");
  require_valid(*board);
  if (is_connected_state(*board, start) == Connectivity::disconnected)
    throw RuleViolation("start state " + start.to_string() + " is not connected");
  return GameState(std::move(board), start, first);
}

inline std::vector<Move> legal_moves(const GameState& g) {
  if (g.over())
    throw TerminalError("game is over; no legal moves");
  std::vector<Move> out;
  for (std::size_t r = 0; r < g.board().k(); ++r)
    if (!g.is_selected(r)) {
      out.push_back({r, false});
      out.push_back({r, true});
    }
  return out;
}

inline GameState apply(const GameState& g, const Move& m) { return g.apply(m); }

// nullopt while the game is running.
inline std::optional<Player> winner(const GameState& g) {
  if (!g.over())
    return std::nullopt;
  switch (is_connected_state(g.board(), g.current())) {
  case Connectivity::connected:
    return Player::C;
  case Connectivity::disconnected:
    return Player::D;
  case Connectivity::unknown:
    break;
  }
  throw ConfigurationError("cannot adjudicate: connectivity of final state " +
                           g.current().to_string() + " is unknown");
}

inline GameState replay(BoardPtr board, const BitVec& start, Player first,
                        const std::vector<Move>& moves) {
  GameState g = new_game(std::move(board), start, first);
  for (const auto& m : moves)
    g = g.apply(m);
  return g;
}

} // namespace swapgame
