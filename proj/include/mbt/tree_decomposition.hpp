#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "mbt/ugraph.hpp"

namespace mbt {

// Tree decomposition: bag nodes 0..t-1 connected by tree edges.  Bags are
// kept sorted and duplicate-free.
struct TreeDecomposition {
  std::vector<std::vector<int>> bags;
  std::vector<std::pair<int, int>> edges;

  int node_count() const { return static_cast<int>(bags.size()); }

  int width() const {
    int w = -1;
    for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
    return w;
  }
};

// Checks tree shape plus the three decomposition conditions: vertices
// covered, edges covered, and per-vertex connectivity.  Returns a message
// naming the violated condition, or nothing when valid.
inline std::optional<std::string> validate_decomposition(const UGraph& g,
                                                         const TreeDecomposition& td) {
  int t = td.node_count();
  if (t == 0) return "decomposition has no nodes";
  for (const auto& b : td.bags) {
    for (int v : b)
      if (v < 0 || v >= g.n()) return "bag vertex out of range";
    if (!std::is_sorted(b.begin(), b.end()) || std::adjacent_find(b.begin(), b.end()) != b.end())
      return "bag not sorted or has duplicates";
  }
  if (static_cast<int>(td.edges.size()) != t - 1) return "node/edge count does not form a tree";
  std::vector<std::vector<int>> nadj(t);
  for (auto [a, b] : td.edges) {
    if (a < 0 || a >= t || b < 0 || b >= t || a == b) return "tree edge out of range";
    nadj[a].push_back(b);
    nadj[b].push_back(a);
  }
  std::vector<char> seen(t, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 0;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    reached++;
    for (int w : nadj[u])
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  if (reached != t) return "tree edges do not connect the nodes";
  std::vector<char> covered(g.n(), 0);
  for (const auto& b : td.bags)
    for (int v : b) covered[v] = 1;
  for (int v = 0; v < g.n(); ++v)
    if (!covered[v]) return "T1: vertex " + std::to_string(v + 1) + " in no bag";
  for (auto [u, v] : g.edges()) {
    bool ok = false;
    for (const auto& b : td.bags)
      if (std::binary_search(b.begin(), b.end(), u) && std::binary_search(b.begin(), b.end(), v)) {
        ok = true;
        break;
      }
    if (!ok)
      return "T2: edge {" + std::to_string(u + 1) + "," + std::to_string(v + 1) + "} in no bag";
  }
  for (int v = 0; v < g.n(); ++v) {
    int occ = 0, first = -1;
    for (int i = 0; i < t; ++i)
      if (std::binary_search(td.bags[i].begin(), td.bags[i].end(), v)) {
        occ++;
        if (first < 0) first = i;
      }
    // BFS within occupied nodes; all occurrences must be reachable.
    std::vector<char> vis(t, 0);
    std::vector<int> st{first};
    vis[first] = 1;
    int got = 0;
    while (!st.empty()) {
      int u = st.back();
      st.pop_back();
      got++;
      for (int w : nadj[u])
        if (!vis[w] && std::binary_search(td.bags[w].begin(), td.bags[w].end(), v)) {
          vis[w] = 1;
          st.push_back(w);
        }
    }
    if (got != occ) return "T3: occurrences of vertex " + std::to_string(v + 1) + " not connected";
  }
  return std::nullopt;
}

// Min-degree elimination heuristic.  Eliminating v records the bag
// {v} + N(v), turns N(v) into a clique, and removes v; the bag attaches to
// the node of its first-eliminated neighbour.  Exact on trees and cycles,
// a reasonable upper bound elsewhere.
inline TreeDecomposition heuristic_decomposition(const UGraph& g) {
  int n = g.n();
  TreeDecomposition td;
  if (n == 0) {
    td.bags.push_back({});
    return td;
  }
  std::vector<std::set<int>> adj(n);
  for (auto [u, v] : g.edges()) {
    adj[u].insert(v);
    adj[v].insert(u);
  }
  std::vector<int> elim_step(n, -1);
  std::vector<char> gone(n, 0);
  td.bags.resize(n);
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int v = 0; v < n; ++v) {
      if (gone[v]) continue;
      if (best < 0 || adj[v].size() < adj[best].size()) best = v;
    }
    std::vector<int> bag(adj[best].begin(), adj[best].end());
    bag.push_back(best);
    std::sort(bag.begin(), bag.end());
    td.bags[step] = bag;
    elim_step[best] = step;
    for (int a : adj[best])
      for (int b : adj[best])
        if (a < b) {
          adj[a].insert(b);
          adj[b].insert(a);
        }
    for (int a : adj[best]) adj[a].erase(best);
    adj[best].clear();
    gone[best] = 1;
  }
  std::vector<int> vert_of(n);
  for (int v = 0; v < n; ++v)
    if (elim_step[v] >= 0) vert_of[elim_step[v]] = v;
  for (int step = 0; step < n - 1; ++step) {
    // Attach to the first-eliminated bag member besides the pivot, or just
    // chain to the next node when the bag is a singleton.
    int parent = step + 1;
    int best_step = -1;
    for (int v : td.bags[step]) {
      if (v == vert_of[step]) continue;
      if (best_step < 0 || elim_step[v] < best_step) best_step = elim_step[v];
    }
    if (best_step >= 0) parent = best_step;
    td.edges.emplace_back(step, parent);
  }
  return td;
}

}  // namespace mbt
