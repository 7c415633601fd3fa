#pragma once

// Edge-disjoint spanning trees in multigraphs.
//
// The decision runs matroid union on k copies of the graphic matroid with
// shortest augmenting paths. When the union is not a full set of k spanning
// trees, the edges reachable from the unplaced ones close up into the parts
// of a partition with the largest deficiency k(|P|-1) - |E_P|.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "swapgame/board.hpp"
#include "swapgame/errors.hpp"

namespace swapgame {

inline constexpr std::size_t kMaxTreeEdges = 4096;

struct SimpleGraphSpec {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> edges; // loops and parallels allowed

  std::size_t vertex_count() const noexcept { return vertices.size(); }
  std::size_t edge_count() const noexcept { return edges.size(); }

  std::size_t add_vertex(const std::string& name) {
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i] == name)
        return i;
    vertices.push_back(name);
    return vertices.size() - 1;
  }

  void add_edge(const std::string& u, const std::string& v) {
    const std::size_t a = add_vertex(u);
    const std::size_t b = add_vertex(v);
    edges.emplace_back(a, b);
  }
};

// Unnamed vertices 0..n-1.
inline SimpleGraphSpec make_graph(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> edges) {
  SimpleGraphSpec g;
  for (std::size_t i = 0; i < n; ++i)
    g.vertices.push_back(std::to_string(i));
  for (const auto& [a, b] : edges)
    if (a >= n || b >= n)
      throw StructuralError("edge endpoint out of range");
  g.edges = std::move(edges);
  return g;
}

// One `u v` pair per line; blank lines and `#` comments are skipped. A line
// with a single name declares an isolated vertex.
inline SimpleGraphSpec parse_edge_list(const std::string& text) {
  SimpleGraphSpec g;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> words;
    for (std::string w; fields >> w;)
      words.push_back(w);
    if (words.empty())
      continue;
    if (words.size() == 1)
      g.add_vertex(words[0]);
    else if (words.size() == 2)
      g.add_edge(words[0], words[1]);
    else
      throw ParseError("edge list line " + std::to_string(lineno) + ": expected 'u v'");
  }
  return g;
}

// Checkerboard graph of a board: vertex-kind regions joined by crossings.
inline SimpleGraphSpec graph_from_board(const Board& b) {
  const auto ends = b.vertex_endpoints();
  if (!ends)
    throw ConfigurationError("board '" + b.name() + "' has no checkerboard graph");
  SimpleGraphSpec g;
  for (std::size_t i = 0; i < b.k(); ++i)
    if (b.region(i).kind == RegionKind::vertex)
      g.vertices.push_back(b.region(i).id);
  for (const auto& e : *ends)
    g.edges.emplace_back(e[0], e[1]);
  return g;
}

inline std::size_t count_components(const SimpleGraphSpec& g) {
  std::vector<std::size_t> parent(g.vertex_count());
  for (std::size_t i = 0; i < parent.size(); ++i)
    parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t c = g.vertex_count();
  for (const auto& [a, b] : g.edges) {
    const std::size_t ra = find(a), rb = find(b);
    if (ra != rb) {
      parent[ra] = rb;
      --c;
    }
  }
  return c;
}

inline bool is_connected(const SimpleGraphSpec& g) { return count_components(g) <= 1; }

struct PartitionWitness {
  std::vector<std::vector<std::size_t>> partition; // parts, each sorted; sorted by first vertex
  std::size_t cross_edges = 0;                     // |E_P|, loops excluded
};

// |E_P|: edges joining different parts.
inline std::size_t cross_edge_count(const SimpleGraphSpec& g,
                                    const std::vector<std::vector<std::size_t>>& parts) {
  std::vector<std::size_t> part_of(g.vertex_count(), g.vertex_count());
  for (std::size_t p = 0; p < parts.size(); ++p)
    for (std::size_t v : parts[p])
      part_of.at(v) = p;
  std::size_t c = 0;
  for (const auto& [a, b] : g.edges)
    if (part_of[a] != part_of[b])
      ++c;
  return c;
}

namespace detail {

class ForestUnion {
public:
  ForestUnion(const SimpleGraphSpec& g, std::size_t k)
      : g_(g), k_(k), owner_(g.edge_count(), kNone),
        adj_(k, std::vector<std::vector<std::size_t>>(g.vertex_count())),
        dead_(g.vertex_count()) {
    for (std::size_t v = 0; v < dead_.size(); ++v)
      dead_[v] = v;
    const std::size_t full = g_.vertex_count() > 0 ? k_ * (g_.vertex_count() - 1) : 0;
    std::size_t placed = 0;
    for (std::size_t e = 0; e < g_.edge_count() && placed < full; ++e) {
      if (is_loop(e))
        continue;
      // An edge spanned by an earlier failed search can never be placed.
      if (dead_root(g_.edges[e].first) == dead_root(g_.edges[e].second))
        continue;
      if (augment(e))
        ++placed;
    }
  }

  std::size_t placed() const {
    return static_cast<std::size_t>(
        std::count_if(owner_.begin(), owner_.end(), [](std::size_t o) { return o != kNone; }));
  }

  // Edges reachable in the exchange graph from the unplaced edges.
  std::vector<bool> stuck_closure() const {
    std::vector<bool> seen(g_.edge_count(), false);
    std::queue<std::size_t> q;
    for (std::size_t e = 0; e < g_.edge_count(); ++e)
      if (owner_[e] == kNone) {
        seen[e] = true;
        q.push(e);
      }
    while (!q.empty()) {
      const std::size_t x = q.front();
      q.pop();
      if (is_loop(x))
        continue;
      for (std::size_t i = 0; i < k_; ++i) {
        if (owner_[x] == i)
          continue;
        const auto path = forest_path(i, g_.edges[x].first, g_.edges[x].second);
        for (std::size_t y : path.value_or(std::vector<std::size_t>{}))
          if (!seen[y]) {
            seen[y] = true;
            q.push(y);
          }
      }
    }
    return seen;
  }

private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  bool is_loop(std::size_t e) const { return g_.edges[e].first == g_.edges[e].second; }

  // Edges of forest i on the path between u and v; nullopt if not joined.
  std::optional<std::vector<std::size_t>> forest_path(std::size_t i, std::size_t u,
                                                      std::size_t v) const {
    const std::size_t n = g_.vertex_count();
    std::vector<std::size_t> via(n, kNone);
    std::vector<bool> seen(n, false);
    std::queue<std::size_t> q;
    seen[u] = true;
    q.push(u);
    while (!q.empty() && !seen[v]) {
      const std::size_t x = q.front();
      q.pop();
      for (std::size_t e : adj_[i][x]) {
        const auto [a, b] = g_.edges[e];
        const std::size_t y = a == x ? b : (b == x ? a : kNone);
        if (y == kNone || seen[y])
          continue;
        seen[y] = true;
        via[y] = e;
        q.push(y);
      }
    }
    if (!seen[v])
      return std::nullopt;
    std::vector<std::size_t> path;
    for (std::size_t x = v; x != u;) {
      const std::size_t e = via[x];
      path.push_back(e);
      x = g_.edges[e].first == x ? g_.edges[e].second : g_.edges[e].first;
    }
    return path;
  }

  void set_owner(std::size_t e, std::size_t forest) {
    const auto [a, b] = g_.edges[e];
    if (owner_[e] != kNone)
      for (std::size_t end : {a, b}) {
        auto& list = adj_[owner_[e]][end];
        list.erase(std::find(list.begin(), list.end(), e));
      }
    owner_[e] = forest;
    if (forest != kNone) {
      adj_[forest][a].push_back(e);
      adj_[forest][b].push_back(e);
    }
  }

  std::size_t dead_root(std::size_t x) {
    while (dead_[x] != x)
      x = dead_[x] = dead_[dead_[x]];
    return x;
  }

  // Shortest augmenting path from the unplaced edge `start`. On failure the
  // searched edges form a tight set; their endpoints are merged in dead_.
  bool augment(std::size_t start) {
    struct Step {
      std::size_t from;
      std::size_t forest;
    };
    std::vector<std::optional<Step>> parent(g_.edge_count());
    std::vector<bool> seen(g_.edge_count(), false);
    std::queue<std::size_t> q;
    seen[start] = true;
    q.push(start);
    while (!q.empty()) {
      const std::size_t x = q.front();
      q.pop();
      for (std::size_t i = 0; i < k_; ++i) {
        if (owner_[x] == i)
          continue;
        const auto path = forest_path(i, g_.edges[x].first, g_.edges[x].second);
        if (!path) {
          // x enters forest i; each predecessor takes the slot its successor left.
          std::size_t cur = x, into = i;
          while (true) {
            const std::size_t left = owner_[cur];
            set_owner(cur, into);
            if (!parent[cur])
              return true;
            into = left;
            cur = parent[cur]->from;
          }
        }
        for (std::size_t y : *path)
          if (!seen[y]) {
            seen[y] = true;
            parent[y] = Step{x, i};
            q.push(y);
          }
      }
    }
    for (std::size_t e = 0; e < g_.edge_count(); ++e)
      if (seen[e])
        dead_[dead_root(g_.edges[e].first)] = dead_root(g_.edges[e].second);
    return false;
  }

  const SimpleGraphSpec& g_;
  std::size_t k_;
  std::vector<std::size_t> owner_;
  std::vector<std::vector<std::vector<std::size_t>>> adj_; // forest, vertex -> edges
  std::vector<std::size_t> dead_;
};

inline void check_tree_input(const SimpleGraphSpec& g, std::size_t k) {
  if (k == 0)
    throw DomainError("k must be at least 1");
  if (g.edge_count() > kMaxTreeEdges)
    throw CapacityError("graph has " + std::to_string(g.edge_count()) + " edges; limit is " +
                        std::to_string(kMaxTreeEdges));
  for (const auto& [a, b] : g.edges)
    if (a >= g.vertex_count() || b >= g.vertex_count())
      throw StructuralError("edge endpoint out of range");
}

} // namespace detail

inline bool has_k_disjoint_spanning_trees(const SimpleGraphSpec& g, std::size_t k) {
  detail::check_tree_input(g, k);
  if (g.vertex_count() <= 1)
    return true;
  if (g.edge_count() < k * (g.vertex_count() - 1))
    return false;
  return detail::ForestUnion(g, k).placed() == k * (g.vertex_count() - 1);
}

// A partition with |E_P| < k(|P| - 1), or nullopt when k disjoint spanning
// trees exist. The witness has the largest deficiency of any partition.
inline std::optional<PartitionWitness> violating_partition(const SimpleGraphSpec& g, std::size_t k) {
  detail::check_tree_input(g, k);
  const std::size_t n = g.vertex_count();
  if (n <= 1)
    return std::nullopt;
  const detail::ForestUnion fu(g, k);
  if (fu.placed() == k * (n - 1))
    return std::nullopt;

  const auto closure = fu.stuck_closure();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i)
    parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    if (closure[e])
      parent[find(g.edges[e].first)] = find(g.edges[e].second);

  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t v = 0; v < n; ++v)
    groups[find(v)].push_back(v);
  PartitionWitness w;
  for (auto& [root, part] : groups)
    w.partition.push_back(std::move(part));
  std::sort(w.partition.begin(), w.partition.end());
  w.cross_edges = cross_edge_count(g, w.partition);
  return w;
}

struct DefinitelyNotP {
  std::string reason;
  std::optional<PartitionWitness> witness;
};

struct PNecessaryConditionsHold {};

struct LinkSmoothingClassification {
  std::variant<DefinitelyNotP, PNecessaryConditionsHold> verdict;
  bool below_edge_bound = false; // |E| < 2(|V| - 1)

  bool definitely_not_p() const { return std::holds_alternative<DefinitelyNotP>(verdict); }
};

inline constexpr const char* kOddEdgeCount = "odd edge count";
inline constexpr const char* kNoTwoTrees = "no two edge-disjoint spanning trees";

// Necessary conditions for a P-position in the link smoothing game: an even
// edge count and two edge-disjoint spanning trees. Never claims P.
inline LinkSmoothingClassification classify_link_smoothing(const SimpleGraphSpec& g) {
  if (!is_connected(g))
    throw DomainError("graph is disconnected");
  LinkSmoothingClassification c;
  const std::size_t n = g.vertex_count();
  c.below_edge_bound = n >= 1 && g.edge_count() < 2 * (n - 1);
  if (g.edge_count() % 2 == 1) {
    c.verdict = DefinitelyNotP{kOddEdgeCount, std::nullopt};
    return c;
  }
  if (auto w = violating_partition(g, 2)) {
    c.verdict = DefinitelyNotP{kNoTwoTrees, std::move(w)};
    return c;
  }
  c.verdict = PNecessaryConditionsHold{};
  return c;
}

} // namespace swapgame
