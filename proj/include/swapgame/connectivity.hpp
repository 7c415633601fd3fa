#pragma once

// Connectivity of smoothed states: how many closed curves a state has and
// whether it is a single curve. Three backends:
//   planar      checkerboard graph on the sphere; curves = |E_on| - |V| + 2c
//   ribbon      boundary walk on the attached embedding (any surface)
//   designated  a listed set of connected states (partial unless complete)

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "swapgame/algebra.hpp"
#include "swapgame/board.hpp"
#include "swapgame/errors.hpp"
#include "swapgame/ribbon.hpp"

namespace swapgame {

enum class Backend { automatic, planar, ribbon, designated };

enum class Connectivity { connected, disconnected, unknown };

struct ComponentCount {
  enum class Kind { exact, at_least_two, unknown };
  Kind kind = Kind::unknown;
  std::size_t value = 0;

  static ComponentCount exact(std::size_t v) { return {Kind::exact, v}; }
  static ComponentCount at_least_two() { return {Kind::at_least_two, 2}; }
  static ComponentCount unknown() { return {Kind::unknown, 0}; }

  bool known() const noexcept { return kind != Kind::unknown; }
  friend bool operator==(const ComponentCount&, const ComponentCount&) = default;
};

inline constexpr std::size_t kMaxEnumerateCrossings = 24;

namespace detail {

struct UnionFind {
  std::vector<std::size_t> parent;
  std::size_t sets;
  explicit UnionFind(std::size_t n) : parent(n), sets(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b)
      return false;
    parent[a] = b;
    --sets;
    return true;
  }
};

} // namespace detail

// The planar backend applies when the surface is (or defaults to) the sphere
// and every region's kind is known.
inline bool planar_backend_available(const Board& b) {
  if (!b.vertex_endpoints())
    return false;
  if (b.euler_characteristic())
    return *b.euler_characteristic() == 2;
  if (b.embedding())
    return euler_characteristic(*b.embedding()) == 2;
  return true;
}

inline bool ribbon_backend_available(const Board& b) {
  return b.embedding() && embedding_problems(*b.embedding()).empty();
}

inline bool designated_backend_available(const Board& b) { return b.designated_states().has_value(); }

// The backend `automatic` resolves to: planar fast path, then ribbon, then the
// designated set.
inline Backend resolve_backend(const Board& b, Backend requested = Backend::automatic) {
  switch (requested) {
  case Backend::planar:
    if (!planar_backend_available(b))
      throw ConfigurationError("board '" + b.name() + "' has no planar checkerboard graph");
    return requested;
  case Backend::ribbon:
    if (!ribbon_backend_available(b))
      throw ConfigurationError("board '" + b.name() + "' has no usable embedding");
    return requested;
  case Backend::designated:
    if (!designated_backend_available(b))
      throw ConfigurationError("board '" + b.name() + "' has no designated connected states");
    return requested;
  case Backend::automatic:
    break;
  }
  if (planar_backend_available(b))
    return Backend::planar;
  if (ribbon_backend_available(b))
    return Backend::ribbon;
  if (designated_backend_available(b))
    return Backend::designated;
  throw ConfigurationError("board '" + b.name() + "' has no connectivity backend");
}

// Every state has a definite answer under the resolved backend.
inline bool backend_total(const Board& b, Backend requested = Backend::automatic) {
  try {
    const auto be = resolve_backend(b, requested);
    return be != Backend::designated || b.designated_complete();
  } catch (const ConfigurationError&) {
    return false;
  }
}

// Whether the on-edges form a spanning tree of the checkerboard graph.
inline bool is_spanning_tree(const Board& b, const BitVec& v) {
  const auto ends = b.vertex_endpoints();
  if (!ends)
    throw ConfigurationError("board '" + b.name() + "' has no checkerboard graph");
  const std::size_t vertices = b.vertex_region_count();
  detail::UnionFind uf(vertices);
  std::size_t edges = 0;
  for (std::size_t j = 0; j < b.n(); ++j) {
    if (!v[j])
      continue;
    ++edges;
    if (!uf.unite((*ends)[j][0], (*ends)[j][1]))
      return false;
  }
  return edges + 1 == vertices && uf.sets == 1;
}

// Curves of the state under the planar model: |E_on| - |V| + 2 c(H).
inline std::size_t planar_component_count(const Board& b, const BitVec& v) {
  const auto ends = b.vertex_endpoints();
  if (!ends)
    throw ConfigurationError("board '" + b.name() + "' has no checkerboard graph");
  const std::size_t vertices = b.vertex_region_count();
  detail::UnionFind uf(vertices);
  std::size_t edges = 0;
  for (std::size_t j = 0; j < b.n(); ++j)
    if (v[j]) {
      ++edges;
      uf.unite((*ends)[j][0], (*ends)[j][1]);
    }
  return edges + 2 * uf.sets - vertices;
}

inline ComponentCount component_count(const Board& b, const BitVec& v,
                                      Backend requested = Backend::automatic) {
  if (v.size() != b.n())
    throw DimensionError("state of length " + std::to_string(v.size()) + " on a board with " +
                         std::to_string(b.n()) + " crossings");
  switch (resolve_backend(b, requested)) {
  case Backend::planar:
    return ComponentCount::exact(planar_component_count(b, v));
  case Backend::ribbon:
    return ComponentCount::exact(boundary_components(*b.embedding(), v));
  case Backend::designated:
  case Backend::automatic:
    break;
  }
  if (b.designated_states()->count(v))
    return ComponentCount::exact(1);
  return b.designated_complete() ? ComponentCount::at_least_two() : ComponentCount::unknown();
}

inline Connectivity is_connected_state(const Board& b, const BitVec& v,
                                       Backend requested = Backend::automatic) {
  const auto be = resolve_backend(b, requested);
  const auto count = component_count(b, v, be);
  if (!count.known())
    return Connectivity::unknown;
  const bool connected = count.kind == ComponentCount::Kind::exact && count.value == 1;
  if (be == Backend::planar && connected != is_spanning_tree(b, v))
    throw std::logic_error("planar curve count disagrees with the spanning-tree criterion");
  return connected ? Connectivity::connected : Connectivity::disconnected;
}

// Fast repeated queries on packed states (bit j = crossing j), n <= 64.
class ConnectivityOracle {
public:
  explicit ConnectivityOracle(const Board& b, Backend requested = Backend::automatic)
      : board_(&b), backend_(resolve_backend(b, requested)) {
    if (b.n() > 64)
      throw CapacityError("packed connectivity queries need at most 64 crossings");
    if (backend_ == Backend::planar) {
      ends_ = *b.vertex_endpoints();
      vertices_ = b.vertex_region_count();
    }
  }

  Backend backend() const noexcept { return backend_; }
  bool total() const noexcept { return backend_ != Backend::designated || board_->designated_complete(); }

  Connectivity status(std::uint64_t state) const {
    switch (backend_) {
    case Backend::planar: {
      detail::UnionFind uf(vertices_);
      std::size_t edges = 0;
      for (std::size_t j = 0; j < ends_.size(); ++j)
        if ((state >> j) & 1U) {
          ++edges;
          if (!uf.unite(ends_[j][0], ends_[j][1]))
            return Connectivity::disconnected;
        }
      return edges + 1 == vertices_ ? Connectivity::connected : Connectivity::disconnected;
    }
    case Backend::ribbon:
      return boundary_components(*board_->embedding(), BitVec::from_bits(state, board_->n())) == 1
                 ? Connectivity::connected
                 : Connectivity::disconnected;
    case Backend::designated:
    case Backend::automatic:
      break;
    }
    if (board_->designated_states()->count(BitVec::from_bits(state, board_->n())))
      return Connectivity::connected;
    return board_->designated_complete() ? Connectivity::disconnected : Connectivity::unknown;
  }

  Connectivity status(const BitVec& v) const { return status(v.to_bits()); }

private:
  const Board* board_;
  Backend backend_;
  std::vector<std::array<std::size_t, 2>> ends_;
  std::size_t vertices_ = 0;
};

inline void require_enumerable(const Board& b) {
  if (b.n() > kMaxEnumerateCrossings)
    throw CapacityError("board '" + b.name() + "' has " + std::to_string(b.n()) +
                        " crossings; enumeration is limited to " +
                        std::to_string(kMaxEnumerateCrossings));
  if (!backend_total(b))
    throw ConfigurationError("board '" + b.name() +
                             "' has only a partial connectivity oracle; cannot enumerate");
}

// All connected states, sorted by their bitstring.
inline std::vector<BitVec> enumerate_connected_states(const Board& b) {
  require_enumerable(b);
  const ConnectivityOracle oracle(b);
  std::vector<BitVec> out;
  const std::uint64_t total = std::uint64_t{1} << b.n();
  for (std::uint64_t s = 0; s < total; ++s)
    if (oracle.status(s) == Connectivity::connected)
      out.push_back(BitVec::from_bits(s, b.n()));
  std::sort(out.begin(), out.end());
  return out;
}

struct ClassReport {
  std::size_t rank = 0;        // dimension of the move space
  std::uint64_t size = 0;      // 2^rank states in the class
  bool contains_connected = false;
  std::optional<BitVec> witness;
};

// The equivalence class of v0 under region swaps is v0 + rowspace(moves).
inline ClassReport equivalence_class(const Board& b, const BitVec& v0) {
  if (v0.size() != b.n())
    throw DimensionError("state length does not match the board");
  require_enumerable(b);
  const auto basis = reduced_row_echelon(move_matrix(b));
  ClassReport r;
  r.rank = basis.rows();
  r.size = std::uint64_t{1} << r.rank;
  const ConnectivityOracle oracle(b);
  const std::uint64_t start = v0.to_bits();
  std::vector<std::uint64_t> packed;
  for (const auto& row : basis.row_vectors())
    packed.push_back(row.to_bits());
  for (std::uint64_t combo = 0; combo < r.size; ++combo) {
    std::uint64_t s = start;
    for (std::size_t i = 0; i < packed.size(); ++i)
      if ((combo >> i) & 1U)
        s ^= packed[i];
    if (oracle.status(s) == Connectivity::connected) {
      r.contains_connected = true;
      r.witness = BitVec::from_bits(s, b.n());
      break;
    }
  }
  return r;
}

inline bool class_has_connected_state(const Board& b, const BitVec& v0) {
  return equivalence_class(b, v0).contains_connected;
}

} // namespace swapgame
