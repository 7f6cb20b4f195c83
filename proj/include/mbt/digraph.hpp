#pragma once

#include <algorithm>
#include <cassert>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mbt {

// Immutable simple digraph, vertices 0..n-1.  Keeps sorted adjacency plus a
// dense membership matrix for O(1) arc queries; the matrix caps n at 4096,
// which is far beyond every intended use of this code.
class DiGraph {
 public:
  DiGraph() = default;

  DiGraph(int n, std::vector<std::pair<int, int>> arcs) : n_(n) {
    if (n < 0) throw std::invalid_argument("DiGraph: negative vertex count");
    if (n > 4096) throw std::length_error("DiGraph: vertex count exceeds membership-matrix cap");
    out_.assign(n, {});
    in_.assign(n, {});
    adj_.assign(static_cast<size_t>(n) * n, 0);
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    for (auto [u, v] : arcs) {
      if (u < 0 || u >= n || v < 0 || v >= n) throw std::invalid_argument("DiGraph: arc endpoint out of range");
      if (u == v) throw std::invalid_argument("DiGraph: self-loop");
      out_[u].push_back(v);
      in_[v].push_back(u);
      adj_[static_cast<size_t>(u) * n_ + v] = 1;
    }
    for (auto& l : out_) std::sort(l.begin(), l.end());
    for (auto& l : in_) std::sort(l.begin(), l.end());
    arcs_ = std::move(arcs);
  }

  int n() const { return n_; }
  int m() const { return static_cast<int>(arcs_.size()); }
  const std::vector<int>& out(int v) const { return out_[v]; }
  const std::vector<int>& in(int v) const { return in_[v]; }
  const std::vector<std::pair<int, int>>& arcs() const { return arcs_; }

  bool has_arc(int u, int v) const {
    assert(u >= 0 && u < n_ && v >= 0 && v < n_);
    return adj_[static_cast<size_t>(u) * n_ + v] != 0;
  }

 private:
  int n_ = 0;
  std::vector<std::vector<int>> out_, in_;
  std::vector<char> adj_;
  std::vector<std::pair<int, int>> arcs_;
};

// A total order on the vertices, stored both ways: pos[v] is the 0-based
// position of v, at[p] the vertex at position p.
struct TopOrder {
  std::vector<int> pos;
  std::vector<int> at;

  static TopOrder identity(int n) {
    TopOrder t;
    t.pos.resize(n);
    t.at.resize(n);
    for (int i = 0; i < n; ++i) t.pos[i] = t.at[i] = i;
    return t;
  }

  static TopOrder from_vertex_list(const std::vector<int>& verts) {
    int n = static_cast<int>(verts.size());
    TopOrder t;
    t.pos.assign(n, -1);
    t.at = verts;
    for (int p = 0; p < n; ++p) {
      int v = verts[p];
      if (v < 0 || v >= n || t.pos[v] != -1)
        throw std::invalid_argument("TopOrder: not a permutation of the vertices");
      t.pos[v] = p;
    }
    return t;
  }

  int n() const { return static_cast<int>(pos.size()); }
};

// Arcs must point backward: (v, u) in A implies pos[u] < pos[v].
inline bool is_topological(const DiGraph& g, const TopOrder& t) {
  if (t.n() != g.n()) return false;
  for (auto [v, u] : g.arcs())
    if (t.pos[u] >= t.pos[v]) return false;
  return true;
}

inline bool is_transitively_closed(const DiGraph& g) {
  for (int b = 0; b < g.n(); ++b)
    for (int a : g.in(b))
      for (int c : g.out(b))
        if (a != c && !g.has_arc(a, c)) return false;
  return true;
}

// An umbrella is an arc (v, u) with a vertex w strictly between u and v in
// the order that is attached to neither endpoint.  Returned as (u, w, v)
// with pos[u] < pos[w] < pos[v].
struct UmbrellaWitness {
  int u, w, v;
};

inline std::optional<UmbrellaWitness> find_umbrella(const DiGraph& g, const TopOrder& t) {
  for (auto [v, u] : g.arcs()) {
    for (int p = t.pos[u] + 1; p < t.pos[v]; ++p) {
      int w = t.at[p];
      if (!g.has_arc(w, u) && !g.has_arc(v, w)) return UmbrellaWitness{u, w, v};
    }
  }
  return std::nullopt;
}

inline bool is_umbrella_free(const DiGraph& g, const TopOrder& t) {
  return !find_umbrella(g, t).has_value();
}

}  // namespace mbt
