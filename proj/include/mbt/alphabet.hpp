#pragma once

#include <algorithm>
#include <cassert>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mbt/digraph.hpp"
#include "mbt/permdag.hpp"
#include "mbt/sequence.hpp"

namespace mbt {

// A vertex u is fully suffix connected when every vertex after it in the
// order has an arc to it; the lowest such vertex is the next one a greedy
// relabelling can close off.  Considers only vertices with alive[v] != 0 and
// compares by original positions (removal preserves relative order).
namespace detail {

inline int lowest_fsc(const DiGraph& g, const TopOrder& t, const std::vector<char>& alive) {
  int n = g.n();
  std::vector<int> missing(n, 0);
  // missing[u] = (#alive after u) - (#alive in-neighbours after u)
  int alive_after = 0;
  for (int p = n - 1; p >= 0; --p) {
    int u = t.at[p];
    if (!alive[u]) continue;
    missing[u] = alive_after;
    alive_after++;
  }
  for (int u = 0; u < n; ++u) {
    if (!alive[u]) continue;
    for (int w : g.in(u))
      if (alive[w] && t.pos[w] > t.pos[u]) missing[u]--;
  }
  for (int p = 0; p < n; ++p) {
    int u = t.at[p];
    if (alive[u] && missing[u] == 0) return u;
  }
  return -1;
}

}  // namespace detail

// Lowest fully suffix connected vertex of the whole graph.
inline int lfsc(const DiGraph& g, const TopOrder& t) {
  if (g.n() == 0) throw std::invalid_argument("lfsc: empty graph");
  if (!is_topological(g, t)) throw std::invalid_argument("lfsc: order is not topological");
  std::vector<char> alive(g.n(), 1);
  int v = detail::lowest_fsc(g, t, alive);
  assert(v >= 0);
  return v;
}

struct Assignment {
  std::vector<int> label;       // per vertex, in 1..alpha
  int alpha = 0;
  std::vector<int> processing;  // extraction order v_1, ..., v_n
};

// Smallest alphabet realizing (g, t) as a permutation DAG, by repeatedly
// extracting the lowest fully suffix connected vertex and bumping the label
// whenever the extraction point moves left.  Requires a topological order;
// returns nothing (infinite alphabet) unless g is transitively closed and t
// umbrella-free.
inline std::optional<Assignment> greedy_assign(const DiGraph& g, const TopOrder& t) {
  if (!is_topological(g, t)) throw std::invalid_argument("greedy_assign: order is not topological");
  if (!is_transitively_closed(g) || !is_umbrella_free(g, t)) return std::nullopt;
  int n = g.n();
  Assignment a;
  a.label.assign(n, 0);
  a.alpha = n == 0 ? 0 : 1;
  std::vector<char> alive(n, 1);
  int prev_pos = -1;
  for (int step = 0; step < n; ++step) {
    int v = detail::lowest_fsc(g, t, alive);
    assert(v >= 0);
    // The extracted vertex is a sink of the remaining graph.
    for (int w : g.out(v)) assert(!alive[w]);
    if (t.pos[v] < prev_pos) a.alpha++;
    a.label[v] = a.alpha;
    a.processing.push_back(v);
    prev_pos = t.pos[v];
    alive[v] = 0;
  }
  return a;
}

// The assignment's labels listed in order positions, i.e. the sequence whose
// permutation DAG is (g, t).
inline std::vector<int> label_sequence(const Assignment& a, const TopOrder& t) {
  std::vector<int> s;
  s.reserve(t.n());
  for (int p = 0; p < t.n(); ++p) s.push_back(a.label[t.at[p]]);
  return s;
}

// The completion tournament: original arcs keep weight 0; every unordered
// pair without an arc gets a forward arc (earlier -> later) of weight 1.
struct Tournament {
  DiGraph h;
  TopOrder order;

  int weight(int u, int v) const {
    assert(h.has_arc(u, v));
    return order.pos[u] < order.pos[v] ? 1 : 0;
  }
};

inline Tournament build_tournament(const DiGraph& g, const TopOrder& t) {
  if (!is_topological(g, t)) throw std::invalid_argument("build_tournament: order is not topological");
  int n = g.n();
  std::vector<std::pair<int, int>> arcs(g.arcs());
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) {
      int u = t.at[p], v = t.at[q];
      if (!g.has_arc(v, u)) arcs.emplace_back(u, v);
    }
  Tournament tour{DiGraph(n, std::move(arcs)), t};
  assert(tour.h.m() == n * (n - 1) / 2);
  return tour;
}

struct MinmaxCert {
  int alpha = 0;
  std::vector<int> path;  // vertices of a maximum-weight path in the tournament
};

// Alphabet size as 1 + the maximum-weight path in the completion tournament.
// Returns nothing when the tournament has a cycle (the order then has an
// umbrella and no finite alphabet exists).
inline std::optional<MinmaxCert> minmax_alpha(const DiGraph& g, const TopOrder& t) {
  Tournament tour = build_tournament(g, t);
  int n = g.n();
  // Kahn with smallest-vertex extraction keeps everything deterministic.
  std::vector<int> indeg(n, 0);
  for (auto [u, v] : tour.h.arcs()) {
    (void)u;
    indeg[v]++;
  }
  std::vector<int> ready;
  for (int v = 0; v < n; ++v)
    if (indeg[v] == 0) ready.push_back(v);
  std::vector<int> topo;
  while (!ready.empty()) {
    auto it = std::min_element(ready.begin(), ready.end());
    int v = *it;
    ready.erase(it);
    topo.push_back(v);
    for (int w : tour.h.out(v))
      if (--indeg[w] == 0) ready.push_back(w);
  }
  if (static_cast<int>(topo.size()) != n) return std::nullopt;
  std::vector<int> dist(n, 0), pred(n, -1);
  for (int v : topo) {
    for (int w : tour.h.out(v)) {
      int cand = dist[v] + tour.weight(v, w);
      if (cand > dist[w] || (cand == dist[w] && pred[w] >= 0 && v < pred[w])) {
        dist[w] = cand;
        pred[w] = v;
      }
    }
  }
  MinmaxCert cert;
  if (n == 0) return cert;
  int end = 0;
  for (int v = 1; v < n; ++v)
    if (dist[v] > dist[end]) end = v;
  cert.alpha = dist[end] + 1;
  for (int v = end; v != -1; v = pred[v]) cert.path.push_back(v);
  std::reverse(cert.path.begin(), cert.path.end());
  return cert;
}

// One difference constraint x_a <= x_b + c over 1-based order positions
// (b = 0 refers to the anchored virtual variable fixed at 0).
struct DiffConstraint {
  enum class Kind { Arc, NonArc, LowerBound };
  int a = 0, b = 0;
  long long c = 0;
  Kind kind = Kind::LowerBound;
};

struct PolyhedronResult {
  bool feasible = false;
  std::vector<long long> x;              // per position 1..n when feasible
  std::vector<DiffConstraint> cycle;     // unsatisfiable constraint cycle otherwise
};

namespace detail {

// Bellman-Ford on the negated system y = -x with a virtual source.  Returns
// the constraint indices of a negative cycle, or fills dist.
struct DiffEdge {
  int from, to;
  long long w;
  size_t cidx;
};

inline bool bellman_ford(int nvars, const std::vector<DiffEdge>& edges,
                         std::vector<long long>& dist, std::vector<size_t>& cycle_out) {
  const long long big = 1LL << 60;
  dist.assign(nvars + 1, big);
  dist[0] = 0;
  std::vector<int> pred_edge(nvars + 1, -1);
  int relaxed_at = -1;
  for (int round = 0; round <= nvars; ++round) {
    relaxed_at = -1;
    for (size_t e = 0; e < edges.size(); ++e) {
      const DiffEdge& ed = edges[e];
      if (dist[ed.from] == big) continue;
      if (dist[ed.from] + ed.w < dist[ed.to]) {
        dist[ed.to] = dist[ed.from] + ed.w;
        pred_edge[ed.to] = static_cast<int>(e);
        relaxed_at = ed.to;
      }
    }
    if (relaxed_at == -1) return true;
  }
  // A vertex relaxed in round nvars sits under a negative cycle: walk the
  // predecessor edges until a vertex repeats, then cut out the loop.
  int v = relaxed_at;
  std::vector<int> seen(nvars + 1, 0);
  while (!seen[v]) {
    seen[v] = 1;
    v = edges[pred_edge[v]].from;
  }
  int start = v;
  do {
    cycle_out.push_back(edges[pred_edge[v]].cidx);
    v = edges[pred_edge[v]].from;
  } while (v != start);
  std::reverse(cycle_out.begin(), cycle_out.end());
  return false;
}

inline std::vector<DiffConstraint> order_constraints(const DiGraph& g, const TopOrder& t) {
  int n = g.n();
  std::vector<DiffConstraint> cons;
  for (auto [v, u] : g.arcs())
    cons.push_back({t.pos[u] + 1, t.pos[v] + 1, 0, DiffConstraint::Kind::Arc});
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q)
      if (!g.has_arc(t.at[q], t.at[p]))
        cons.push_back({q + 1, p + 1, -1, DiffConstraint::Kind::NonArc});
  for (int i = 1; i <= n; ++i)
    cons.push_back({0, i, -1, DiffConstraint::Kind::LowerBound});  // x_0 <= x_i - 1, x_0 = 0
  return cons;
}

inline PolyhedronResult solve_constraints(int n, const std::vector<DiffConstraint>& cons) {
  std::vector<DiffEdge> edges;
  edges.reserve(cons.size());
  for (size_t i = 0; i < cons.size(); ++i) {
    // x_a <= x_b + c becomes y_b <= y_a + c, i.e. an edge a -> b of weight c.
    edges.push_back({cons[i].a, cons[i].b, cons[i].c, i});
  }
  PolyhedronResult res;
  std::vector<long long> dist;
  std::vector<size_t> cyc;
  if (!bellman_ford(n, edges, dist, cyc)) {
    for (size_t ci : cyc) res.cycle.push_back(cons[ci]);
    return res;
  }
  res.feasible = true;
  res.x.resize(n);
  for (int i = 1; i <= n; ++i) res.x[i - 1] = -dist[i];
  return res;
}

}  // namespace detail

// Feasibility of the order polyhedron: x_pos(u) <= x_pos(v) for arcs (v, u),
// x_pos(v) <= x_pos(u) - 1 for order-comparable non-arcs, x_i >= 1.  The
// returned point is the componentwise-least integral solution.
inline PolyhedronResult polyhedron_feasible(const DiGraph& g, const TopOrder& t) {
  if (!is_topological(g, t))
    throw std::invalid_argument("polyhedron_feasible: order is not topological");
  return detail::solve_constraints(g.n(), detail::order_constraints(g, t));
}

// Minimum of the extra coordinate over the polyhedron of g extended by a
// dominating last vertex; equals the alphabet size when finite.
inline std::optional<long long> min_alpha_lp(const DiGraph& g, const TopOrder& t) {
  if (!is_topological(g, t))
    throw std::invalid_argument("min_alpha_lp: order is not topological");
  int n = g.n();
  if (n == 0) return 0;
  std::vector<std::pair<int, int>> arcs(g.arcs());
  for (int u = 0; u < n; ++u) arcs.emplace_back(n, u);
  DiGraph ext(n + 1, std::move(arcs));
  std::vector<int> verts(t.at);
  verts.push_back(n);
  TopOrder text = TopOrder::from_vertex_list(verts);
  PolyhedronResult res = detail::solve_constraints(ext.n(), detail::order_constraints(ext, text));
  if (!res.feasible) return std::nullopt;
  return res.x[n];
}

}  // namespace mbt
