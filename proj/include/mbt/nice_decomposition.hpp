#pragma once

#include <algorithm>
#include <cassert>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mbt/tree_decomposition.hpp"
#include "mbt/ugraph.hpp"

namespace mbt {

// Nice tree decomposition.  Nodes are stored children-before-parents, so a
// single forward sweep visits every child before its parent; the root is the
// last node.  Non-join nodes keep their only child in `left`.
struct NiceDecomposition {
  enum class NodeType { Leaf, IntroduceVertex, IntroduceEdge, Drop, Join };

  struct Node {
    NodeType type = NodeType::Leaf;
    int v = -1;             // introduced / dropped vertex
    int ea = -1, eb = -1;   // endpoints of the introduced edge, ea < eb
    std::vector<int> bag;   // sorted
    int left = -1, right = -1;
  };

  std::vector<Node> nodes;
  int root = -1;

  int width() const {
    int w = -1;
    for (const auto& nd : nodes) w = std::max(w, static_cast<int>(nd.bag.size()) - 1);
    return w;
  }
};

namespace detail {

inline std::vector<int> bag_minus(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Rebuilds the node array in children-before-parents order.
inline void renumber_postorder(NiceDecomposition& nd) {
  std::vector<NiceDecomposition::Node> out;
  out.reserve(nd.nodes.size());
  std::vector<int> remap(nd.nodes.size(), -1);
  // Iterative post-order to keep deep chains off the call stack.
  std::vector<std::pair<int, int>> stack{{nd.root, 0}};
  while (!stack.empty()) {
    auto& [u, phase] = stack.back();
    const NiceDecomposition::Node& node = nd.nodes[u];
    if (phase == 0) {
      phase = 1;
      if (node.left >= 0) stack.push_back({node.left, 0});
    } else if (phase == 1) {
      phase = 2;
      if (node.right >= 0) stack.push_back({node.right, 0});
    } else {
      NiceDecomposition::Node copy = node;
      if (copy.left >= 0) copy.left = remap[copy.left];
      if (copy.right >= 0) copy.right = remap[copy.right];
      remap[u] = static_cast<int>(out.size());
      out.push_back(std::move(copy));
      stack.pop_back();
    }
  }
  nd.root = remap[nd.root];
  nd.nodes = std::move(out);
}

}  // namespace detail

// Turns a valid tree decomposition into a nice one: empty leaf and root
// bags, introduce-vertex / drop / join nodes, and each graph edge introduced
// exactly once in a chain directly below the drop node of whichever endpoint
// is dropped lower in the tree.
inline NiceDecomposition make_nice(const UGraph& g, const TreeDecomposition& td) {
  if (auto why = validate_decomposition(g, td))
    throw std::invalid_argument("make_nice: " + *why);
  int t = td.node_count();
  std::vector<std::vector<int>> nadj(t);
  for (auto [a, b] : td.edges) {
    nadj[a].push_back(b);
    nadj[b].push_back(a);
  }
  NiceDecomposition nd;
  auto add_node = [&](NiceDecomposition::Node node) {
    nd.nodes.push_back(std::move(node));
    return static_cast<int>(nd.nodes.size()) - 1;
  };
  // Morphs a chain from the bag of `below` (nice node index) up to `target`.
  auto morph = [&](int below, std::vector<int> from, const std::vector<int>& target) {
    int cur = below;
    std::vector<int> bag = std::move(from);
    for (int v : detail::bag_minus(bag, target)) {
      bag.erase(std::find(bag.begin(), bag.end(), v));
      NiceDecomposition::Node node;
      node.type = NiceDecomposition::NodeType::Drop;
      node.v = v;
      node.bag = bag;
      node.left = cur;
      cur = add_node(std::move(node));
    }
    for (int v : detail::bag_minus(target, bag)) {
      bag.insert(std::upper_bound(bag.begin(), bag.end(), v), v);
      NiceDecomposition::Node node;
      node.type = NiceDecomposition::NodeType::IntroduceVertex;
      node.v = v;
      node.bag = bag;
      node.left = cur;
      cur = add_node(std::move(node));
    }
    return cur;
  };
  // Builds the nice subtree for td node u; the returned nice node carries
  // exactly bag(u).  Iterative DFS rooted at td node 0.
  std::vector<int> built(t, -1);
  std::vector<int> parent(t, -2);
  std::vector<std::pair<int, int>> stack{{0, 0}};
  parent[0] = -1;
  while (!stack.empty()) {
    auto [u, phase] = stack.back();
    stack.pop_back();
    if (phase == 0) {
      stack.push_back({u, 1});
      for (int c : nadj[u])
        if (c != parent[u]) {
          parent[c] = u;
          stack.push_back({c, 0});
        }
      continue;
    }
    std::vector<int> tops;
    for (int c : nadj[u])
      if (c != parent[u]) tops.push_back(morph(built[c], td.bags[c], td.bags[u]));
    if (tops.empty()) {
      NiceDecomposition::Node leaf;
      leaf.type = NiceDecomposition::NodeType::Leaf;
      int cur = add_node(std::move(leaf));
      built[u] = morph(cur, {}, td.bags[u]);
    } else {
      int acc = tops[0];
      for (size_t i = 1; i < tops.size(); ++i) {
        NiceDecomposition::Node join;
        join.type = NiceDecomposition::NodeType::Join;
        join.bag = td.bags[u];
        join.left = acc;
        join.right = tops[i];
        acc = add_node(std::move(join));
      }
      built[u] = acc;
    }
  }
  nd.root = morph(built[0], td.bags[0], {});

  // Locate each vertex's unique drop node; with an empty root bag every
  // vertex in the graph is dropped exactly once.
  int nn = static_cast<int>(nd.nodes.size());
  std::vector<int> nparent(nn, -1), depth(nn, 0);
  for (int i = 0; i < nn; ++i) {
    if (nd.nodes[i].left >= 0) nparent[nd.nodes[i].left] = i;
    if (nd.nodes[i].right >= 0) nparent[nd.nodes[i].right] = i;
  }
  // Children precede parents in construction order, so sweep backwards for
  // depths.
  for (int i = nn - 1; i >= 0; --i)
    if (nparent[i] >= 0) depth[i] = depth[nparent[i]] + 1;
  std::vector<int> drop_at(g.n(), -1);
  for (int i = 0; i < nn; ++i)
    if (nd.nodes[i].type == NiceDecomposition::NodeType::Drop) {
      assert(drop_at[nd.nodes[i].v] == -1);
      drop_at[nd.nodes[i].v] = i;
    }
  std::map<int, std::vector<std::pair<int, int>>> edges_below;
  for (auto [a, b] : g.edges()) {
    assert(drop_at[a] >= 0 && drop_at[b] >= 0);
    int d = depth[drop_at[a]] >= depth[drop_at[b]] ? drop_at[a] : drop_at[b];
    edges_below[d].emplace_back(a, b);
  }
  for (auto& [d, list] : edges_below) {
    std::sort(list.begin(), list.end());
    int child = nd.nodes[d].left;
    int below = child;
    for (auto it = list.rbegin(); it != list.rend(); ++it) {
      NiceDecomposition::Node node;
      node.type = NiceDecomposition::NodeType::IntroduceEdge;
      node.ea = it->first;
      node.eb = it->second;
      node.bag = nd.nodes[child].bag;
      assert(std::binary_search(node.bag.begin(), node.bag.end(), node.ea));
      assert(std::binary_search(node.bag.begin(), node.bag.end(), node.eb));
      node.left = below;
      below = add_node(std::move(node));
    }
    nd.nodes[d].left = below;
  }
  detail::renumber_postorder(nd);
  return nd;
}

// G with a pendant vertex s' attached to s, plus the matching decomposition:
// s' joins every bag and the pendant edge is introduced directly below the
// node that drops s.
struct SpecialDecomposition {
  UGraph gs;
  NiceDecomposition nd;
  int s_prime = -1;
};

inline SpecialDecomposition make_special(const UGraph& g, const NiceDecomposition& nice, int s) {
  if (s < 0 || s >= g.n()) throw std::invalid_argument("make_special: root vertex out of range");
  SpecialDecomposition sp;
  int sprime = g.n();
  std::vector<std::pair<int, int>> edges(g.edges());
  edges.emplace_back(s, sprime);
  sp.gs = UGraph(g.n() + 1, std::move(edges));
  sp.s_prime = sprime;
  sp.nd = nice;
  for (auto& node : sp.nd.nodes) node.bag.push_back(sprime);  // max id keeps bags sorted
  int drop_s = -1;
  for (int i = 0; i < static_cast<int>(sp.nd.nodes.size()); ++i)
    if (sp.nd.nodes[i].type == NiceDecomposition::NodeType::Drop && sp.nd.nodes[i].v == s)
      drop_s = i;
  assert(drop_s >= 0);
  NiceDecomposition::Node node;
  node.type = NiceDecomposition::NodeType::IntroduceEdge;
  node.ea = s;
  node.eb = sprime;
  node.bag = sp.nd.nodes[sp.nd.nodes[drop_s].left].bag;
  node.left = sp.nd.nodes[drop_s].left;
  sp.nd.nodes.push_back(std::move(node));
  sp.nd.nodes[drop_s].left = static_cast<int>(sp.nd.nodes.size()) - 1;
  detail::renumber_postorder(sp.nd);
  return sp;
}

// Structural self-check used by the tests.  `pinned` names a vertex allowed
// in the leaf/root bags and exempt from being dropped (the pendant s' of a
// special decomposition), or -1 for a plain nice decomposition.
inline std::optional<std::string> check_nice(const UGraph& g, const NiceDecomposition& nd,
                                             int pinned = -1) {
  using NT = NiceDecomposition::NodeType;
  int nn = static_cast<int>(nd.nodes.size());
  if (nn == 0 || nd.root != nn - 1) return "root must be the last node";
  std::vector<int> par(nn, -1);
  for (int i = 0; i < nn; ++i) {
    const auto& node = nd.nodes[i];
    if (!std::is_sorted(node.bag.begin(), node.bag.end())) return "bag not sorted";
    for (int c : {node.left, node.right}) {
      if (c < 0) continue;
      if (c >= i) return "child does not precede parent";
      if (par[c] != -1) return "node has two parents";
      par[c] = i;
    }
  }
  for (int i = 0; i < nn - 1; ++i)
    if (par[i] < 0) return "non-root node without parent";
  std::vector<int> drops(g.n(), 0), intro_edge;
  auto base_bag = [&](const std::vector<int>& b) {
    return pinned < 0 ? b.empty() : (b.size() == 1 && b[0] == pinned);
  };
  std::map<std::pair<int, int>, int> edge_seen;
  for (int i = 0; i < nn; ++i) {
    const auto& node = nd.nodes[i];
    bool has_l = node.left >= 0, has_r = node.right >= 0;
    switch (node.type) {
      case NT::Leaf:
        if (has_l || has_r) return "leaf with children";
        if (!base_bag(node.bag)) return "leaf bag not empty";
        break;
      case NT::IntroduceVertex: {
        if (!has_l || has_r) return "introduce-vertex arity";
        std::vector<int> want = nd.nodes[node.left].bag;
        if (std::binary_search(want.begin(), want.end(), node.v)) return "introduced vertex already present";
        want.insert(std::upper_bound(want.begin(), want.end(), node.v), node.v);
        if (want != node.bag) return "introduce-vertex bag mismatch";
        break;
      }
      case NT::Drop: {
        if (!has_l || has_r) return "drop arity";
        std::vector<int> want = nd.nodes[node.left].bag;
        auto it = std::find(want.begin(), want.end(), node.v);
        if (it == want.end()) return "dropped vertex not in child bag";
        want.erase(it);
        if (want != node.bag) return "drop bag mismatch";
        if (node.v == pinned) return "pinned vertex dropped";
        drops[node.v]++;
        break;
      }
      case NT::IntroduceEdge: {
        if (!has_l || has_r) return "introduce-edge arity";
        if (node.bag != nd.nodes[node.left].bag) return "introduce-edge bag mismatch";
        if (!g.has_edge(node.ea, node.eb)) return "introduced edge not in graph";
        if (!std::binary_search(node.bag.begin(), node.bag.end(), node.ea) ||
            !std::binary_search(node.bag.begin(), node.bag.end(), node.eb))
          return "introduced edge endpoints not in bag";
        edge_seen[{std::min(node.ea, node.eb), std::max(node.ea, node.eb)}]++;
        break;
      }
      case NT::Join:
        if (!has_l || !has_r) return "join arity";
        if (nd.nodes[node.left].bag != node.bag || nd.nodes[node.right].bag != node.bag)
          return "join bag mismatch";
        break;
    }
  }
  if (!base_bag(nd.nodes[nd.root].bag)) return "root bag not empty";
  for (auto [u, v] : g.edges()) {
    if (pinned >= 0 && (u == pinned || v == pinned)) continue;
    if (edge_seen[{u, v}] != 1) return "edge not introduced exactly once";
  }
  if (pinned >= 0) {
    // The pendant edge must be introduced exactly once as well.
    int cnt = 0;
    for (auto& [e, c] : edge_seen)
      if (e.second == pinned || e.first == pinned) cnt += c;
    if (cnt != 1) return "pendant edge not introduced exactly once";
  }
  for (int v = 0; v < g.n(); ++v) {
    if (v == pinned) continue;
    bool occurs = false;
    for (const auto& node : nd.nodes)
      if (std::binary_search(node.bag.begin(), node.bag.end(), v)) {
        occurs = true;
        break;
      }
    if (occurs && drops[v] != 1) return "vertex not dropped exactly once";
    if (!occurs) return "vertex in no bag";
  }
  // Per-vertex connectivity over the nice tree.
  for (int v = 0; v < g.n(); ++v) {
    int occ = 0, top = -1;
    for (int i = 0; i < nn; ++i)
      if (std::binary_search(nd.nodes[i].bag.begin(), nd.nodes[i].bag.end(), v)) {
        occ++;
        top = i;
      }
    if (occ == 0) continue;
    // Count occurrences whose parent also holds v; exactly one occurrence
    // (the subtree top) may lack such a parent.
    int tops = 0;
    for (int i = 0; i < nn; ++i) {
      if (!std::binary_search(nd.nodes[i].bag.begin(), nd.nodes[i].bag.end(), v)) continue;
      int p = par[i];
      if (p < 0 || !std::binary_search(nd.nodes[p].bag.begin(), nd.nodes[p].bag.end(), v)) tops++;
    }
    (void)top;
    if (tops != 1) return "occurrences of vertex " + std::to_string(v) + " not connected";
  }
  // Introduce-edge chains sit directly below drop nodes and only introduce
  // edges at the dropped vertex.
  for (int i = 0; i < nn; ++i) {
    if (nd.nodes[i].type != NT::IntroduceEdge) continue;
    int p = par[i];
    while (p >= 0 && nd.nodes[p].type == NT::IntroduceEdge) p = par[p];
    if (p < 0 || nd.nodes[p].type != NT::Drop) return "introduce-edge chain not below a drop node";
    int dv = nd.nodes[p].v;
    if (nd.nodes[i].ea != dv && nd.nodes[i].eb != dv) {
      // The pendant edge of a special decomposition hangs below drop(s).
      if (!(pinned >= 0 && (nd.nodes[i].ea == pinned || nd.nodes[i].eb == pinned)))
        return "introduced edge not incident to the dropped vertex";
      if (nd.nodes[i].ea != dv && nd.nodes[i].eb != dv && nd.nodes[i].ea != pinned &&
          nd.nodes[i].eb != pinned)
        return "pendant edge in a foreign chain";
    }
  }
  return std::nullopt;
}

}  // namespace mbt
