#pragma once

// Ribbon graphs (signed rotation systems) and the boundary walk.
//
// A vertex carries a cyclic order of dart ends; an edge carries a twist flag
// when its band passes through an orientation-reversing identification. The
// regular neighbourhood of a subgraph is a surface with boundary whose circles
// are exactly the closed curves of the corresponding smoothed state.

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "swapgame/algebra.hpp"
#include "swapgame/errors.hpp"

namespace swapgame {

// One end of an edge: end 0 sits at endpoints[edge][0], end 1 at endpoints[edge][1].
struct Dart {
  std::size_t edge = 0;
  int end = 0;
  friend bool operator==(const Dart&, const Dart&) = default;
};

struct RibbonEmbedding {
  std::vector<std::string> vertices;              // region ids of the vertex regions
  std::vector<std::string> edges;                 // crossing ids, in board order
  std::vector<std::vector<Dart>> rotations;       // per vertex, cyclic order
  std::vector<std::array<std::size_t, 2>> endpoints; // per edge, vertex indices
  std::vector<bool> twisted;                      // per edge

  std::size_t vertex_count() const noexcept { return vertices.size(); }
  std::size_t edge_count() const noexcept { return edges.size(); }

  friend bool operator==(const RibbonEmbedding&, const RibbonEmbedding&) = default;
};

// The embedding block as written in a board file: everything keyed by id.
struct EmbeddingSpec {
  std::map<std::string, std::vector<std::pair<std::string, int>>> rotations;
  std::map<std::string, std::pair<std::string, std::string>> endpoints;
  std::vector<std::string> twisted;

  friend bool operator==(const EmbeddingSpec&, const EmbeddingSpec&) = default;
};

// Problems with an embedding; empty means consistent.
inline std::vector<std::string> embedding_problems(const RibbonEmbedding& e) {
  std::vector<std::string> problems;
  const std::size_t m = e.edge_count();
  if (e.rotations.size() != e.vertex_count())
    problems.push_back("rotation count does not match vertex count");
  if (e.endpoints.size() != m || e.twisted.size() != m)
    problems.push_back("per-edge arrays do not match edge count");
  if (!problems.empty())
    return problems;

  std::vector<std::array<int, 2>> seen(m, {0, 0});
  for (std::size_t v = 0; v < e.vertex_count(); ++v) {
    for (const Dart& d : e.rotations[v]) {
      if (d.edge >= m || (d.end != 0 && d.end != 1)) {
        problems.push_back("vertex " + e.vertices[v] + " lists an invalid dart");
        continue;
      }
      ++seen[d.edge][static_cast<std::size_t>(d.end)];
      if (e.endpoints[d.edge][static_cast<std::size_t>(d.end)] != v)
        problems.push_back("edge " + e.edges[d.edge] + " end " + std::to_string(d.end) +
                           " listed at " + e.vertices[v] + " but its endpoint is elsewhere");
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t v : e.endpoints[i])
      if (v >= e.vertex_count())
        problems.push_back("edge " + e.edges[i] + " has an out-of-range endpoint");
    if (seen[i][0] != 1 || seen[i][1] != 1)
      problems.push_back("edge " + e.edges[i] + " does not appear exactly once per end");
  }
  return problems;
}

// Resolves an id-keyed spec against the given vertex and edge orders.
inline RibbonEmbedding resolve_embedding(const EmbeddingSpec& spec,
                                         const std::vector<std::string>& vertex_order,
                                         const std::vector<std::string>& edge_order) {
  RibbonEmbedding e;
  e.vertices = vertex_order;
  e.edges = edge_order;
  std::map<std::string, std::size_t> vindex, eindex;
  for (std::size_t i = 0; i < vertex_order.size(); ++i)
    vindex[vertex_order[i]] = i;
  for (std::size_t i = 0; i < edge_order.size(); ++i)
    eindex[edge_order[i]] = i;

  auto vertex_of = [&](const std::string& id) {
    auto it = vindex.find(id);
    if (it == vindex.end())
      throw StructuralError("embedding refers to unknown vertex region '" + id + "'");
    return it->second;
  };
  auto edge_of = [&](const std::string& id) {
    auto it = eindex.find(id);
    if (it == eindex.end())
      throw StructuralError("embedding refers to unknown crossing '" + id + "'");
    return it->second;
  };

  e.rotations.assign(vertex_order.size(), {});
  for (const auto& [vid, darts] : spec.rotations) {
    auto& rot = e.rotations[vertex_of(vid)];
    for (const auto& [cid, end] : darts)
      rot.push_back(Dart{edge_of(cid), end});
  }
  e.endpoints.assign(edge_order.size(), {0, 0});
  std::vector<bool> has_endpoints(edge_order.size(), false);
  for (const auto& [cid, ends] : spec.endpoints) {
    const auto i = edge_of(cid);
    e.endpoints[i] = {vertex_of(ends.first), vertex_of(ends.second)};
    has_endpoints[i] = true;
  }
  for (std::size_t i = 0; i < edge_order.size(); ++i)
    if (!has_endpoints[i])
      throw StructuralError("embedding lacks endpoints for crossing '" + edge_order[i] + "'");
  e.twisted.assign(edge_order.size(), false);
  for (const auto& cid : spec.twisted)
    e.twisted[edge_of(cid)] = true;
  return e;
}

inline EmbeddingSpec to_spec(const RibbonEmbedding& e) {
  EmbeddingSpec spec;
  for (std::size_t v = 0; v < e.vertex_count(); ++v) {
    auto& rot = spec.rotations[e.vertices[v]];
    for (const Dart& d : e.rotations[v])
      rot.emplace_back(e.edges[d.edge], d.end);
  }
  for (std::size_t i = 0; i < e.edge_count(); ++i) {
    spec.endpoints[e.edges[i]] = {e.vertices[e.endpoints[i][0]], e.vertices[e.endpoints[i][1]]};
    if (e.twisted[i])
      spec.twisted.push_back(e.edges[i]);
  }
  return spec;
}

namespace detail {

// Walk state: leaving a vertex along `dart` with local orientation `sign`.
// Darts are numbered 2*edge + end.
struct BoundaryWalk {
  std::size_t dart_count = 0;
  std::vector<std::size_t> next_ccw;   // successor in the restricted rotation
  std::vector<std::size_t> next_cw;    // predecessor
  std::vector<bool> present;
  std::vector<bool> twisted;

  BoundaryWalk(const RibbonEmbedding& e, const BitVec& on) {
    dart_count = 2 * e.edge_count();
    next_ccw.assign(dart_count, 0);
    next_cw.assign(dart_count, 0);
    present.assign(dart_count, false);
    twisted = e.twisted;
    for (const auto& rot : e.rotations) {
      std::vector<std::size_t> kept;
      for (const Dart& d : rot)
        if (on[d.edge])
          kept.push_back(2 * d.edge + static_cast<std::size_t>(d.end));
      for (std::size_t i = 0; i < kept.size(); ++i) {
        next_ccw[kept[i]] = kept[(i + 1) % kept.size()];
        next_cw[kept[i]] = kept[(i + kept.size() - 1) % kept.size()];
        present[kept[i]] = true;
      }
    }
  }

  // Cross the band of `dart`, flipping orientation on a twisted edge, then
  // turn to the next dart around the arrival vertex in the current sense.
  std::pair<std::size_t, bool> step(std::size_t dart, bool positive) const {
    const std::size_t opposite = dart ^ 1U;
    if (twisted[dart / 2])
      positive = !positive;
    return {positive ? next_ccw[opposite] : next_cw[opposite], positive};
  }

  // Orbits over all (dart, sign) states, each listed as its dart sequence.
  std::vector<std::vector<std::size_t>> orbits() const {
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> visited(2 * dart_count, false);
    for (std::size_t d = 0; d < dart_count; ++d) {
      if (!present[d])
        continue;
      for (bool sign : {true, false}) {
        if (visited[2 * d + (sign ? 1 : 0)])
          continue;
        std::vector<std::size_t> orbit;
        std::size_t cur = d;
        bool s = sign;
        while (!visited[2 * cur + (s ? 1 : 0)]) {
          visited[2 * cur + (s ? 1 : 0)] = true;
          orbit.push_back(cur);
          std::tie(cur, s) = step(cur, s);
        }
        out.push_back(std::move(orbit));
      }
    }
    return out;
  }
};

inline void require_edge_length(const RibbonEmbedding& e, const BitVec& on) {
  if (on.size() != e.edge_count())
    throw StructuralError("subgraph has " + std::to_string(on.size()) +
                          " edge bits but the embedding has " + std::to_string(e.edge_count()) +
                          " edges");
}

inline std::vector<bool> touched_vertices(const RibbonEmbedding& e, const BitVec& on) {
  std::vector<bool> touched(e.vertex_count(), false);
  for (std::size_t i = 0; i < e.edge_count(); ++i)
    if (on[i])
      touched[e.endpoints[i][0]] = touched[e.endpoints[i][1]] = true;
  return touched;
}

} // namespace detail

enum class IsolatedVertices { count, ignore };

// Number of boundary circles of a regular neighbourhood of the on-edges plus
// the retained vertices. Every (dart, sign) orbit is one circle traversed in
// one direction, and each circle is met once in each direction, hence the
// halving. An isolated vertex is a disc with one boundary circle.
inline std::size_t boundary_components(const RibbonEmbedding& e, const BitVec& on,
                                       IsolatedVertices isolated = IsolatedVertices::count) {
  detail::require_edge_length(e, on);
  const detail::BoundaryWalk walk(e, on);
  std::size_t circles = walk.orbits().size() / 2;
  if (isolated == IsolatedVertices::count) {
    const auto touched = detail::touched_vertices(e, on);
    circles += static_cast<std::size_t>(std::count(touched.begin(), touched.end(), false));
  }
  return circles;
}

// Edge multisets bounding the faces of the full embedding, one entry per face.
inline std::vector<std::vector<std::size_t>> face_edge_sets(const RibbonEmbedding& e) {
  const detail::BoundaryWalk walk(e, BitVec::ones(e.edge_count()));
  std::vector<std::vector<std::size_t>> traced;
  for (const auto& orbit : walk.orbits()) {
    std::vector<std::size_t> edges;
    for (auto d : orbit)
      edges.push_back(d / 2);
    std::sort(edges.begin(), edges.end());
    traced.push_back(std::move(edges));
  }
  // Every face is traced once per direction with the same edge multiset.
  std::sort(traced.begin(), traced.end());
  std::vector<std::vector<std::size_t>> faces;
  for (std::size_t i = 0; i < traced.size(); i += 2)
    faces.push_back(traced[i]);
  return faces;
}

inline long euler_characteristic(const RibbonEmbedding& e) {
  const auto faces = boundary_components(e, BitVec::ones(e.edge_count()));
  return static_cast<long>(e.vertex_count()) - static_cast<long>(e.edge_count()) +
         static_cast<long>(faces);
}

// Whether the band neighbourhood of the on-edges is orientable. Orientable
// iff local orientations can be chosen so every untwisted edge joins equal
// signs and every twisted edge joins opposite signs.
inline bool neighborhood_orientable(const RibbonEmbedding& e, const BitVec& on) {
  detail::require_edge_length(e, on);
  const auto touched = detail::touched_vertices(e, on);
  std::vector<std::vector<std::pair<std::size_t, bool>>> adj(e.vertex_count());
  for (std::size_t i = 0; i < e.edge_count(); ++i) {
    if (!on[i])
      continue;
    const auto [u, v] = e.endpoints[i];
    adj[u].emplace_back(v, e.twisted[i]);
    adj[v].emplace_back(u, e.twisted[i]);
  }

  std::vector<int> sign(e.vertex_count(), 0);
  bool orientable = true;
  std::size_t components = 0;
  for (std::size_t s = 0; s < e.vertex_count(); ++s) {
    if (!touched[s] || sign[s] != 0)
      continue;
    ++components;
    sign[s] = 1;
    std::queue<std::size_t> q;
    q.push(s);
    while (!q.empty()) {
      const auto u = q.front();
      q.pop();
      for (const auto& [v, twist] : adj[u]) {
        const int want = twist ? -sign[u] : sign[u];
        if (sign[v] == 0) {
          sign[v] = want;
          q.push(v);
        } else if (sign[v] != want) {
          orientable = false;
        }
      }
    }
  }
  if (components > 1)
    throw DomainError("subgraph is disconnected; orientability is per component");
  return orientable;
}

} // namespace swapgame
