#pragma once

// The game board: crossings c_1..c_n, regions r_1..r_k, and the move row of
// each region (indicator of the crossings on its boundary). Connectivity data
// rides along: vertex/face kinds for the planar checkerboard graph, an optional
// ribbon embedding, and an optional designated set of connected states.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "swapgame/algebra.hpp"
#include "swapgame/errors.hpp"
#include "swapgame/ribbon.hpp"

namespace swapgame {

enum class RegionKind { vertex, face, unknown };

inline std::string_view to_string(RegionKind k) {
  switch (k) {
  case RegionKind::vertex:
    return "vertex";
  case RegionKind::face:
    return "face";
  case RegionKind::unknown:
    break;
  }
  return "unknown";
}

inline RegionKind region_kind_from_string(std::string_view s) {
  if (s == "vertex")
    return RegionKind::vertex;
  if (s == "face")
    return RegionKind::face;
  if (s == "unknown")
    return RegionKind::unknown;
  throw ParseError("region kind must be vertex, face or unknown, got '" + std::string(s) + "'");
}

struct Region {
  std::string id;
  RegionKind kind = RegionKind::unknown;
  std::vector<std::string> crossings;

  friend bool operator==(const Region&, const Region&) = default;
};

// Everything a board file carries, before canonicalisation.
struct BoardData {
  std::string name;
  std::optional<int> euler_characteristic;
  std::vector<std::string> crossings;
  std::vector<Region> regions;
  std::optional<EmbeddingSpec> embedding;
  std::optional<std::vector<std::string>> connected_states;
  bool connected_states_complete = false;
  std::optional<std::string> start_state;
};

struct Violation {
  std::string invariant;
  std::string detail;
  friend bool operator==(const Violation&, const Violation&) = default;
};

// Ids sort by trailing number, then lexicographically.
inline bool canonical_id_less(const std::string& a, const std::string& b) {
  auto suffix = [](const std::string& s) -> long long {
    std::size_t i = s.size();
    while (i > 0 && std::isdigit(static_cast<unsigned char>(s[i - 1])))
      --i;
    if (i == s.size() || s.size() - i > 15)
      return -1;
    return std::stoll(s.substr(i));
  };
  const auto sa = suffix(a), sb = suffix(b);
  if (sa != sb)
    return sa < sb;
  return a < b;
}

class Board {
public:
  explicit Board(BoardData data) : data_(std::move(data)) {
    std::stable_sort(data_.crossings.begin(), data_.crossings.end(), canonical_id_less);
    std::stable_sort(data_.regions.begin(), data_.regions.end(),
                     [](const Region& a, const Region& b) { return canonical_id_less(a.id, b.id); });
    for (std::size_t j = 0; j < data_.crossings.size(); ++j)
      crossing_index_.emplace(data_.crossings[j], j);
    for (std::size_t i = 0; i < data_.regions.size(); ++i)
      region_index_.emplace(data_.regions[i].id, i);
    for (auto& r : data_.regions) {
      std::sort(r.crossings.begin(), r.crossings.end(), [&](const auto& a, const auto& b) {
        auto ia = crossing_index_.find(a), ib = crossing_index_.find(b);
        const auto na = ia == crossing_index_.end() ? data_.crossings.size() : ia->second;
        const auto nb = ib == crossing_index_.end() ? data_.crossings.size() : ib->second;
        return na != nb ? na < nb : a < b;
      });
      r.crossings.erase(std::unique(r.crossings.begin(), r.crossings.end()), r.crossings.end());
    }

    rows_.reserve(data_.regions.size());
    for (const auto& r : data_.regions) {
      BitVec row(data_.crossings.size());
      for (const auto& c : r.crossings)
        if (auto it = crossing_index_.find(c); it != crossing_index_.end())
          row.set(it->second);
      rows_.push_back(std::move(row));
    }

    if (data_.embedding) {
      std::vector<std::string> vertex_order;
      for (const auto& r : data_.regions)
        if (data_.embedding->rotations.count(r.id))
          vertex_order.push_back(r.id);
      for (const auto& [vid, _] : data_.embedding->rotations)
        if (!region_index_.count(vid))
          vertex_order.push_back(vid);
      try {
        embedding_ = resolve_embedding(*data_.embedding, vertex_order, data_.crossings);
      } catch (const StructuralError& e) {
        embedding_error_ = e.what();
      }
    }

    if (data_.connected_states) {
      designated_.emplace();
      for (const auto& s : *data_.connected_states) {
        auto v = BitVec::from_string(s);
        if (v.size() == n())
          designated_->insert(std::move(v));
      }
    }
    if (data_.start_state)
      start_state_ = BitVec::from_string(*data_.start_state);
  }

  const std::string& name() const noexcept { return data_.name; }
  std::size_t n() const noexcept { return data_.crossings.size(); }
  std::size_t k() const noexcept { return data_.regions.size(); }
  std::optional<int> euler_characteristic() const noexcept { return data_.euler_characteristic; }

  const std::vector<std::string>& crossings() const noexcept { return data_.crossings; }
  const std::vector<Region>& regions() const noexcept { return data_.regions; }
  const Region& region(std::size_t i) const { return data_.regions.at(i); }
  const BoardData& data() const noexcept { return data_; }

  std::optional<std::size_t> find_crossing(std::string_view id) const {
    auto it = crossing_index_.find(std::string(id));
    if (it == crossing_index_.end())
      return std::nullopt;
    return it->second;
  }
  std::optional<std::size_t> find_region(std::string_view id) const {
    auto it = region_index_.find(std::string(id));
    if (it == region_index_.end())
      return std::nullopt;
    return it->second;
  }
  std::size_t region_index(std::string_view id) const {
    if (auto i = find_region(id))
      return *i;
    throw StructuralError("unknown region '" + std::string(id) + "'");
  }
  std::size_t crossing_index(std::string_view id) const {
    if (auto i = find_crossing(id))
      return *i;
    throw StructuralError("unknown crossing '" + std::string(id) + "'");
  }

  // Indicator row of region i; unknown crossing ids are skipped here and
  // reported by validate().
  const BitVec& move_row(std::size_t i) const { return rows_.at(i); }
  const std::vector<BitVec>& move_rows() const noexcept { return rows_; }

  bool kinds_known() const {
    return std::none_of(data_.regions.begin(), data_.regions.end(),
                        [](const Region& r) { return r.kind == RegionKind::unknown; });
  }

  const std::optional<RibbonEmbedding>& embedding() const noexcept { return embedding_; }
  const std::optional<std::string>& embedding_error() const noexcept { return embedding_error_; }

  const std::optional<std::set<BitVec>>& designated_states() const noexcept { return designated_; }
  bool designated_complete() const noexcept { return data_.connected_states_complete; }
  const std::optional<BitVec>& start_state() const noexcept { return start_state_; }

  // Checkerboard-graph edges derived from the vertex regions: the (one or two)
  // vertex regions containing each crossing. Empty when kinds are unknown or
  // any crossing does not meet one or two vertex regions.
  std::optional<std::vector<std::array<std::size_t, 2>>> vertex_endpoints() const {
    if (!kinds_known())
      return std::nullopt;
    std::vector<std::vector<std::size_t>> meets(n());
    std::size_t vi = 0;
    for (std::size_t i = 0; i < k(); ++i) {
      if (data_.regions[i].kind != RegionKind::vertex)
        continue;
      for (std::size_t j = 0; j < n(); ++j)
        if (rows_[i][j])
          meets[j].push_back(vi);
      ++vi;
    }
    std::vector<std::array<std::size_t, 2>> out;
    for (const auto& m : meets) {
      if (m.empty() || m.size() > 2)
        return std::nullopt;
      out.push_back({m[0], m.back()});
    }
    return out;
  }

  std::size_t vertex_region_count() const {
    return static_cast<std::size_t>(std::count_if(
        data_.regions.begin(), data_.regions.end(),
        [](const Region& r) { return r.kind == RegionKind::vertex; }));
  }

private:
  BoardData data_;
  std::map<std::string, std::size_t> crossing_index_;
  std::map<std::string, std::size_t> region_index_;
  std::vector<BitVec> rows_;
  std::optional<RibbonEmbedding> embedding_;
  std::optional<std::string> embedding_error_;
  std::optional<std::set<BitVec>> designated_;
  std::optional<BitVec> start_state_;
};

using BoardPtr = std::shared_ptr<const Board>;

inline BoardPtr make_board(BoardData data) { return std::make_shared<const Board>(std::move(data)); }

// All invariant violations; empty iff the board is well formed.
inline std::vector<Violation> validate(const Board& b) {
  std::vector<Violation> out;
  const auto& data = b.data();

  {
    std::set<std::string> seen;
    for (const auto& c : data.crossings)
      if (!seen.insert(c).second)
        out.push_back({"unique-crossing-ids", "crossing id '" + c + "' repeated"});
  }
  {
    std::set<std::string> seen;
    for (const auto& r : data.regions)
      if (!seen.insert(r.id).second)
        out.push_back({"unique-region-ids", "region id '" + r.id + "' repeated"});
  }

  for (const auto& r : data.regions) {
    if (r.crossings.empty())
      out.push_back({"region-nonempty", "region '" + r.id + "' has no incident crossings"});
    for (const auto& c : r.crossings)
      if (!b.find_crossing(c))
        out.push_back({"known-crossings", "region '" + r.id + "' refers to unknown crossing '" +
                                              c + "'"});
  }

  std::vector<std::size_t> corner_count(b.n(), 0);
  for (const auto& row : b.move_rows())
    for (std::size_t j = 0; j < b.n(); ++j)
      corner_count[j] += row[j] ? 1 : 0;
  for (std::size_t j = 0; j < b.n(); ++j) {
    if (corner_count[j] == 0)
      out.push_back({"crossing-referenced", "crossing '" + data.crossings[j] +
                                                "' is on no region's boundary"});
    if (corner_count[j] > 4)
      out.push_back({"crossing-corner-limit", "crossing '" + data.crossings[j] + "' meets " +
                                                  std::to_string(corner_count[j]) +
                                                  " regions; a crossing has 4 corners"});
  }

  if (auto chi = data.euler_characteristic) {
    if (static_cast<long>(b.k()) != static_cast<long>(b.n()) + *chi)
      out.push_back({"euler-relation", "k = " + std::to_string(b.k()) + " but n + chi = " +
                                           std::to_string(static_cast<long>(b.n()) + *chi)});
  }

  if (b.kinds_known()) {
    for (std::size_t j = 0; j < b.n(); ++j) {
      std::size_t vertex_regions = 0, face_regions = 0;
      for (std::size_t i = 0; i < b.k(); ++i) {
        if (!b.move_row(i)[j])
          continue;
        (b.region(i).kind == RegionKind::vertex ? vertex_regions : face_regions)++;
      }
      if (vertex_regions < 1 || vertex_regions > 2)
        out.push_back({"vertex-incidence", "crossing '" + data.crossings[j] + "' meets " +
                                               std::to_string(vertex_regions) +
                                               " vertex regions; expected 2 (or 1 for a loop)"});
      if (face_regions < 1 || face_regions > 2)
        out.push_back({"face-incidence", "crossing '" + data.crossings[j] + "' meets " +
                                             std::to_string(face_regions) +
                                             " face regions; expected 2 (or 1)"});
    }
  }

  auto check_bits = [&](const std::string& what, const std::string& bits) {
    if (bits.size() != b.n() || bits.find_first_not_of("01") != std::string::npos)
      out.push_back({"bitstring", what + " '" + bits + "' is not a length-" +
                                      std::to_string(b.n()) + " bitstring"});
  };
  if (data.connected_states)
    for (const auto& s : *data.connected_states)
      check_bits("connected state", s);
  if (data.start_state)
    check_bits("start state", *data.start_state);

  if (data.embedding) {
    if (b.embedding_error()) {
      out.push_back({"embedding", *b.embedding_error()});
    } else {
      const auto& e = *b.embedding();
      for (const auto& p : embedding_problems(e))
        out.push_back({"embedding", p});
      if (embedding_problems(e).empty()) {
        // Vertices of the embedding must be exactly the vertex regions, with
        // incidence matching the move rows.
        for (std::size_t v = 0; v < e.vertex_count(); ++v) {
          auto ri = b.find_region(e.vertices[v]);
          if (!ri) {
            out.push_back({"embedding", "vertex '" + e.vertices[v] + "' is not a region"});
            continue;
          }
          if (b.region(*ri).kind == RegionKind::face)
            out.push_back({"embedding", "vertex '" + e.vertices[v] + "' is a face region"});
          BitVec incident(b.n());
          for (std::size_t j = 0; j < b.n(); ++j)
            if (e.endpoints[j][0] == v || e.endpoints[j][1] == v)
              incident.set(j);
          if (incident != b.move_row(*ri))
            out.push_back({"embedding", "edges at vertex '" + e.vertices[v] +
                                            "' differ from its region's crossings"});
        }
        for (std::size_t i = 0; i < b.k(); ++i)
          if (b.region(i).kind == RegionKind::vertex &&
              std::find(e.vertices.begin(), e.vertices.end(), b.region(i).id) == e.vertices.end())
            out.push_back({"embedding", "vertex region '" + b.region(i).id + "' has no rotation"});

        const long chi = euler_characteristic(e);
        if (data.euler_characteristic && *data.euler_characteristic != chi)
          out.push_back({"embedding-euler", "embedding has Euler characteristic " +
                                                std::to_string(chi) + " but the board declares " +
                                                std::to_string(*data.euler_characteristic)});

        // Face regions must be the faces traced by the embedding.
        if (b.kinds_known()) {
          std::multiset<BitVec> traced, declared;
          for (const auto& f : face_edge_sets(e)) {
            BitVec row(b.n());
            for (auto j : f)
              row.set(j);
            traced.insert(row);
          }
          for (std::size_t i = 0; i < b.k(); ++i)
            if (b.region(i).kind == RegionKind::face)
              declared.insert(b.move_row(i));
          if (traced != declared)
            out.push_back({"embedding-faces",
                           "faces traced by the embedding differ from the face regions"});
        }
      }
    }
  }
  return out;
}

// Informational notes that do not invalidate a board.
inline std::vector<Violation> notices(const Board& b) {
  std::vector<Violation> out;
  for (std::size_t j = 0; j < b.n(); ++j) {
    std::size_t regions = 0;
    for (const auto& row : b.move_rows())
      regions += row[j] ? 1 : 0;
    if (regions > 0 && regions < 4)
      out.push_back({"double-corner", "crossing '" + b.crossings()[j] + "' meets only " +
                                          std::to_string(regions) +
                                          " distinct regions; its swap toggles it once"});
  }
  if (b.designated_states() && !b.designated_complete())
    out.push_back({"partial-oracle", "connectivity is known only for the designated states"});
  return out;
}

inline void require_valid(const Board& b) {
  const auto v = validate(b);
  if (!v.empty())
    throw ValidationError("board '" + b.name() + "' is invalid: " + v.front().invariant + ": " +
                          v.front().detail);
}

inline BitMatrix move_matrix(const Board& b) {
  require_valid(b);
  BitMatrix m = BitMatrix::empty(b.n());
  for (const auto& row : b.move_rows())
    m.append_row(row);
  return m;
}

} // namespace swapgame
