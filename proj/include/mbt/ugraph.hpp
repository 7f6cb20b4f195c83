#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mbt {

// Immutable simple undirected graph, vertices 0..n-1.  Edges are stored with
// the smaller endpoint first and sorted.
class UGraph {
 public:
  UGraph() = default;

  UGraph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
    if (n < 0) throw std::invalid_argument("UGraph: negative vertex count");
    adj_.assign(n, {});
    for (auto& [u, v] : edges) {
      if (u < 0 || u >= n || v < 0 || v >= n) throw std::invalid_argument("UGraph: edge endpoint out of range");
      if (u == v) throw std::invalid_argument("UGraph: self-loop");
      if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (auto [u, v] : edges) {
      adj_[u].push_back(v);
      adj_[v].push_back(u);
    }
    for (auto& l : adj_) std::sort(l.begin(), l.end());
    edges_ = std::move(edges);
  }

  int n() const { return n_; }
  int m() const { return static_cast<int>(edges_.size()); }
  const std::vector<int>& adj(int v) const { return adj_[v]; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  bool has_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(u, v));
  }

 private:
  int n_ = 0;
  std::vector<std::vector<int>> adj_;
  std::vector<std::pair<int, int>> edges_;
};

}  // namespace mbt
