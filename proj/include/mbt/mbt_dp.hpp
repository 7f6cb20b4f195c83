#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "mbt/nice_decomposition.hpp"
#include "mbt/tree_decomposition.hpp"
#include "mbt/ugraph.hpp"

namespace mbt {

// DP state over a bag: the forest's footprint X in the bag (as a bag-slot
// mask), the partition of X into tree components (4-bit part labels in
// restricted-growth form), and the exact forest degree of every X vertex
// (2 bits each, 0..3).  Bags are capped at 16 slots by the packing.
struct DPKey {
  uint32_t xmask = 0;
  uint64_t parts = 0;
  uint32_t degs = 0;

  bool operator==(const DPKey& o) const {
    return xmask == o.xmask && parts == o.parts && degs == o.degs;
  }
};

struct DPKeyHash {
  size_t operator()(const DPKey& k) const {
    uint64_t h = k.xmask;
    h = h * 0x9e3779b97f4a7c15ULL ^ k.parts;
    h = h * 0x9e3779b97f4a7c15ULL ^ k.degs;
    h ^= h >> 29;
    return static_cast<size_t>(h * 0xbf58476d1ce4e5b9ULL);
  }
};

namespace detail {

// Unpacked key: members of X (bag slot positions), their part labels and
// degrees, all aligned.
struct KeyView {
  std::vector<int> slots;
  std::vector<int> part;
  std::vector<int> deg;
};

inline void canonicalize_parts(std::vector<int>& part) {
  if (part.empty()) return;
  // Labels may be arbitrary (join_parts hands over union-find roots).
  std::vector<int> remap(*std::max_element(part.begin(), part.end()) + 1, -1);
  int next = 0;
  for (int& p : part) {
    if (remap[p] < 0) remap[p] = next++;
    p = remap[p];
  }
}

inline DPKey pack_key(const KeyView& v) {
  DPKey k;
  for (size_t i = 0; i < v.slots.size(); ++i) {
    int s = v.slots[i];
    k.xmask |= 1u << s;
    assert(v.part[i] >= 0 && v.part[i] < 16);
    assert(v.deg[i] >= 0 && v.deg[i] <= 3);
    k.parts |= static_cast<uint64_t>(v.part[i]) << (4 * s);
    k.degs |= static_cast<uint32_t>(v.deg[i]) << (2 * s);
  }
  return k;
}

inline KeyView unpack_key(const DPKey& k, int bag_size) {
  KeyView v;
  for (int s = 0; s < bag_size; ++s) {
    if (!(k.xmask & (1u << s))) continue;
    v.slots.push_back(s);
    v.part.push_back(static_cast<int>((k.parts >> (4 * s)) & 0xf));
    v.deg.push_back(static_cast<int>((k.degs >> (2 * s)) & 0x3));
  }
  return v;
}

// Union of two partitions of the same ground set, with cycle detection: if
// any merge closes a cycle in the bipartite parts/elements graph the union
// of the two forests would contain a cycle.  part labels are replaced by the
// joined component labels in restricted-growth form.
inline bool join_parts(const std::vector<int>& pa, const std::vector<int>& pb,
                       std::vector<int>& out) {
  int n = static_cast<int>(pa.size());
  int qa = n == 0 ? 0 : *std::max_element(pa.begin(), pa.end()) + 1;
  int qb = n == 0 ? 0 : *std::max_element(pb.begin(), pb.end()) + 1;
  std::vector<int> uf(n + qa + qb);
  for (size_t i = 0; i < uf.size(); ++i) uf[i] = static_cast<int>(i);
  auto find = [&](int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    uf[a] = b;
    return true;
  };
  for (int i = 0; i < n; ++i)
    if (!unite(i, n + pa[i])) return false;
  for (int i = 0; i < n; ++i)
    if (!unite(i, n + qa + pb[i])) return false;
  out.resize(n);
  for (int i = 0; i < n; ++i) out[i] = find(i);
  canonicalize_parts(out);
  return true;
}

}  // namespace detail

// Test-facing wrapper around the join merge: partitions given as vectors of
// parts over an arbitrary element universe; returns the merged partition or
// nothing when the overlay contains a cycle.
inline std::optional<std::vector<std::vector<int>>> merge_partitions(
    const std::vector<int>& elements, const std::vector<std::vector<int>>& pa,
    const std::vector<std::vector<int>>& pb) {
  int n = static_cast<int>(elements.size());
  auto labels_of = [&](const std::vector<std::vector<int>>& p) {
    std::vector<int> lab(n, -1);
    for (size_t j = 0; j < p.size(); ++j)
      for (int e : p[j]) {
        auto it = std::find(elements.begin(), elements.end(), e);
        if (it == elements.end()) throw std::invalid_argument("merge_partitions: foreign element");
        lab[it - elements.begin()] = static_cast<int>(j);
      }
    for (int l : lab)
      if (l < 0) throw std::invalid_argument("merge_partitions: element not covered");
    return lab;
  };
  std::vector<int> la = labels_of(pa), lb = labels_of(pb), out;
  if (!detail::join_parts(la, lb, out)) return std::nullopt;
  int q = n == 0 ? 0 : *std::max_element(out.begin(), out.end()) + 1;
  std::vector<std::vector<int>> res(q);
  for (int i = 0; i < n; ++i) res[out[i]].push_back(elements[i]);
  return res;
}

struct MbtDpResult {
  int value = 0;                            // edges of the best pendant-rooted tree
  std::vector<std::pair<int, int>> edges;   // its edge set, pendant included
  std::vector<size_t> table_sizes;          // stored states per nice node
};

// Bottom-up DP over an s'-special nice decomposition of gs.  Tables hold
// only feasible states; transitions follow the node types, and the answer is
// read at the root state ({s'}, {{s'}}, deg(s') = 1).
inline MbtDpResult mbt_dp(const UGraph& gs, const NiceDecomposition& nd, int s_prime) {
  using NT = NiceDecomposition::NodeType;
  enum Via : uint8_t { ViaLeaf, ViaCarry, ViaAddVertex, ViaEdgeSkip, ViaEdgeTake, ViaDrop, ViaJoin };
  struct Entry {
    int32_t value = -1;
    uint8_t via = ViaLeaf;
    DPKey c1, c2;
  };
  using Table = std::unordered_map<DPKey, Entry, DPKeyHash>;

  int nn = static_cast<int>(nd.nodes.size());
  for (const auto& node : nd.nodes)
    if (node.bag.size() > 16) throw std::length_error("mbt_dp: bag too large for packed states");

  auto slot_of = [](const std::vector<int>& bag, int v) {
    auto it = std::lower_bound(bag.begin(), bag.end(), v);
    assert(it != bag.end() && *it == v);
    return static_cast<int>(it - bag.begin());
  };
  // Re-slots a view from one bag to another (same vertex set membership).
  auto reslot = [&](const detail::KeyView& v, const std::vector<int>& from,
                    const std::vector<int>& to) {
    detail::KeyView out = v;
    for (size_t i = 0; i < v.slots.size(); ++i) out.slots[i] = slot_of(to, from[v.slots[i]]);
    return out;
  };

  std::vector<Table> tables(nn);
  // Introduced vertex/edge footprints per subtree, for the join disjointness
  // assertions.
  int vwords = (gs.n() + 63) / 64;
  int ewords = (gs.m() + 63) / 64;
  std::vector<std::vector<uint64_t>> vset(nn), eset(nn);
  auto edge_id = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    auto it = std::lower_bound(gs.edges().begin(), gs.edges().end(), std::make_pair(a, b));
    assert(it != gs.edges().end() && *it == std::make_pair(a, b));
    return static_cast<int>(it - gs.edges().begin());
  };

  auto relax = [](Table& t, const DPKey& k, int32_t value, uint8_t via, const DPKey& c1,
                  const DPKey& c2) {
    auto [it, fresh] = t.try_emplace(k);
    if (fresh || value > it->second.value) {
      it->second.value = value;
      it->second.via = via;
      it->second.c1 = c1;
      it->second.c2 = c2;
    }
  };

  for (int i = 0; i < nn; ++i) {
    const auto& node = nd.nodes[i];
    const std::vector<int>& bag = node.bag;
    Table& tab = tables[i];
    vset[i].assign(vwords, 0);
    eset[i].assign(ewords, 0);
    if (node.left >= 0) {
      for (int w = 0; w < vwords; ++w) vset[i][w] |= vset[node.left][w];
      for (int w = 0; w < ewords; ++w) eset[i][w] |= eset[node.left][w];
    }
    if (node.right >= 0) {
      for (int w = 0; w < vwords; ++w) vset[i][w] |= vset[node.right][w];
      for (int w = 0; w < ewords; ++w) eset[i][w] |= eset[node.right][w];
    }
    switch (node.type) {
      case NT::Leaf: {
        assert(bag.size() == 1 && bag[0] == s_prime);
        detail::KeyView v;
        v.slots = {0};
        v.part = {0};
        v.deg = {0};
        relax(tab, detail::pack_key(v), 0, ViaLeaf, {}, {});
        vset[i][s_prime / 64] |= 1ull << (s_prime % 64);
        break;
      }
      case NT::IntroduceVertex: {
        const auto& cbag = nd.nodes[node.left].bag;
        int slot = slot_of(bag, node.v);
        for (const auto& [ck, ce] : tables[node.left]) {
          detail::KeyView v = reslot(detail::unpack_key(ck, static_cast<int>(cbag.size())), cbag, bag);
          relax(tab, detail::pack_key(v), ce.value, ViaCarry, ck, {});
          // Include the new vertex as an isolated component.
          detail::KeyView w = v;
          size_t ins = std::lower_bound(w.slots.begin(), w.slots.end(), slot) - w.slots.begin();
          w.slots.insert(w.slots.begin() + ins, slot);
          int fresh_part = w.part.empty() ? 0 : *std::max_element(w.part.begin(), w.part.end()) + 1;
          w.part.insert(w.part.begin() + ins, fresh_part);
          w.deg.insert(w.deg.begin() + ins, 0);
          detail::canonicalize_parts(w.part);
          relax(tab, detail::pack_key(w), ce.value, ViaAddVertex, ck, {});
        }
        vset[i][node.v / 64] |= 1ull << (node.v % 64);
        break;
      }
      case NT::IntroduceEdge: {
        int sa = slot_of(bag, node.ea), sb = slot_of(bag, node.eb);
        for (const auto& [ck, ce] : tables[node.left]) {
          relax(tab, ck, ce.value, ViaEdgeSkip, ck, {});
          if (!(ck.xmask & (1u << sa)) || !(ck.xmask & (1u << sb))) continue;
          detail::KeyView v = detail::unpack_key(ck, static_cast<int>(bag.size()));
          size_t ia = std::lower_bound(v.slots.begin(), v.slots.end(), sa) - v.slots.begin();
          size_t ib = std::lower_bound(v.slots.begin(), v.slots.end(), sb) - v.slots.begin();
          if (v.part[ia] == v.part[ib]) continue;  // would close a cycle
          if (v.deg[ia] >= 3 || v.deg[ib] >= 3) continue;
          detail::KeyView w = v;
          int from = w.part[ib], to = w.part[ia];
          for (int& p : w.part)
            if (p == from) p = to;
          detail::canonicalize_parts(w.part);
          w.deg[ia]++;
          w.deg[ib]++;
          relax(tab, detail::pack_key(w), ce.value + 1, ViaEdgeTake, ck, {});
        }
        eset[i][edge_id(node.ea, node.eb) / 64] |= 1ull << (edge_id(node.ea, node.eb) % 64);
        break;
      }
      case NT::Drop: {
        const auto& cbag = nd.nodes[node.left].bag;
        int slot = slot_of(cbag, node.v);
        for (const auto& [ck, ce] : tables[node.left]) {
          if (!(ck.xmask & (1u << slot))) {
            detail::KeyView v = reslot(detail::unpack_key(ck, static_cast<int>(cbag.size())), cbag, bag);
            relax(tab, detail::pack_key(v), ce.value, ViaCarry, ck, {});
            continue;
          }
          detail::KeyView v = detail::unpack_key(ck, static_cast<int>(cbag.size()));
          size_t iv = std::lower_bound(v.slots.begin(), v.slots.end(), slot) - v.slots.begin();
          // A dropped vertex must already carry forest degree 1..3 and may
          // not leave its component without bag representatives.
          if (v.deg[iv] == 0) continue;
          if (std::count(v.part.begin(), v.part.end(), v.part[iv]) == 1) continue;
          detail::KeyView w;
          for (size_t t = 0; t < v.slots.size(); ++t) {
            if (t == iv) continue;
            w.slots.push_back(slot_of(bag, cbag[v.slots[t]]));
            w.part.push_back(v.part[t]);
            w.deg.push_back(v.deg[t]);
          }
          detail::canonicalize_parts(w.part);
          relax(tab, detail::pack_key(w), ce.value, ViaDrop, ck, {});
        }
        break;
      }
      case NT::Join: {
        // Subtrees below a join may only share the bag itself.
        const auto& lbag = nd.nodes[node.left].bag;
        const auto& rbag = nd.nodes[node.right].bag;
        assert(lbag == bag && rbag == bag);
        (void)lbag;
        (void)rbag;
#ifndef NDEBUG
        {
          std::vector<uint64_t> xw(vwords, 0);
          for (int v : bag) xw[v / 64] |= 1ull << (v % 64);
          for (int w = 0; w < vwords; ++w)
            assert((vset[node.left][w] & vset[node.right][w] & ~xw[w]) == 0);
          for (int w = 0; w < ewords; ++w)
            assert((eset[node.left][w] & eset[node.right][w]) == 0);
        }
#endif
        std::unordered_map<uint32_t, std::vector<const std::pair<const DPKey, Entry>*>> by_mask;
        for (const auto& kv : tables[node.right]) by_mask[kv.first.xmask].push_back(&kv);
        int bsz = static_cast<int>(bag.size());
        for (const auto& [lk, le] : tables[node.left]) {
          auto it = by_mask.find(lk.xmask);
          if (it == by_mask.end()) continue;
          detail::KeyView lv = detail::unpack_key(lk, bsz);
          for (const auto* rkv : it->second) {
            const DPKey& rk = rkv->first;
            const Entry& re = rkv->second;
            detail::KeyView rv = detail::unpack_key(rk, bsz);
            std::vector<int> joined;
            if (!detail::join_parts(lv.part, rv.part, joined)) continue;
            detail::KeyView w = lv;
            w.part = joined;
            bool ok = true;
            for (size_t t = 0; t < w.deg.size(); ++t) {
              w.deg[t] = lv.deg[t] + rv.deg[t];
              if (w.deg[t] > 3) {
                ok = false;
                break;
              }
            }
            if (!ok) continue;
            relax(tab, detail::pack_key(w), le.value + re.value, ViaJoin, lk, rk);
          }
        }
        break;
      }
    }
    // Stored states stay within the closed-form bound for the bag size.
    assert(static_cast<long double>(tab.size()) <=
           std::pow(8.0L * static_cast<long double>(bag.size() ? bag.size() : 1),
                    static_cast<long double>(bag.size() ? bag.size() : 1)));
  }

  // Answer: the root holds exactly {s'} as a single component of degree 1
  // (the pendant edge).
  const auto& rbag = nd.nodes[nd.root].bag;
  assert(rbag.size() == 1 && rbag[0] == s_prime);
  (void)rbag;
  detail::KeyView rootv;
  rootv.slots = {0};
  rootv.part = {0};
  rootv.deg = {1};
  DPKey root_key = detail::pack_key(rootv);
  auto rit = tables[nd.root].find(root_key);
  if (rit == tables[nd.root].end())
    throw std::logic_error("mbt_dp: root state missing (pendant tree should always exist)");

  MbtDpResult res;
  res.value = rit->second.value;
  res.table_sizes.reserve(nn);
  for (const auto& t : tables) res.table_sizes.push_back(t.size());
  // Replay the producing actions to collect the edge set.
  std::vector<std::pair<int, DPKey>> stack{{nd.root, root_key}};
  while (!stack.empty()) {
    auto [ni, key] = stack.back();
    stack.pop_back();
    const auto& node = nd.nodes[ni];
    auto it = tables[ni].find(key);
    assert(it != tables[ni].end());
    const Entry& e = it->second;
    switch (e.via) {
      case ViaLeaf:
        break;
      case ViaJoin:
        stack.push_back({node.left, e.c1});
        stack.push_back({node.right, e.c2});
        break;
      case ViaEdgeTake:
        res.edges.emplace_back(node.ea, node.eb);
        stack.push_back({node.left, e.c1});
        break;
      default:
        stack.push_back({node.left, e.c1});
        break;
    }
  }
  std::sort(res.edges.begin(), res.edges.end());
  assert(static_cast<int>(res.edges.size()) == res.value);
  return res;
}

struct MbtResult {
  int size = 0;  // vertices of the tree (edges + 1 when nonempty)
  std::vector<std::pair<int, int>> edges;
  std::vector<int> vertices;
};

// Largest binary tree containing s with deg(s) <= 2: attach a pendant to s,
// run the DP over the specialized decomposition, then peel the pendant off.
inline MbtResult rooted_mbt(const UGraph& g, const TreeDecomposition& td, int s) {
  if (s < 0 || s >= g.n()) throw std::invalid_argument("rooted_mbt: root vertex out of range");
  NiceDecomposition nice = make_nice(g, td);
  SpecialDecomposition sp = make_special(g, nice, s);
  MbtDpResult dp = mbt_dp(sp.gs, sp.nd, sp.s_prime);
  MbtResult res;
  res.size = dp.value;  // |V(T)| = |E(T')| once the pendant is removed
  std::vector<char> invol(g.n(), 0);
  invol[s] = 1;
  for (auto [a, b] : dp.edges) {
    if (a == sp.s_prime || b == sp.s_prime) continue;
    res.edges.emplace_back(a, b);
    invol[a] = invol[b] = 1;
  }
  for (int v = 0; v < g.n(); ++v)
    if (invol[v]) res.vertices.push_back(v);
  assert(static_cast<int>(res.vertices.size()) == res.size);
  return res;
}

// Largest binary tree anywhere in g.  Builds the usual reduction: a hub s
// adjacent to all of g plus a balanced padding tree with |E(g)| edges, so
// the hub's optimal tree keeps the padding on one side and an optimum of g
// on the other.
inline MbtResult unrooted_mbt(const UGraph& g, const TreeDecomposition& td) {
  MbtResult res;
  if (g.n() == 0) return res;
  if (g.m() == 0) {
    res.size = 1;
    res.vertices.push_back(0);
    return res;
  }
  int n = g.n(), m = g.m();
  int hub = n;
  int pad0 = n + 1;  // padding tree vertices pad0 .. pad0+m (heap-shaped)
  std::vector<std::pair<int, int>> edges(g.edges());
  for (int v = 0; v < n; ++v) edges.emplace_back(hub, v);
  edges.emplace_back(hub, pad0);
  for (int i = 1; i <= m; ++i) edges.emplace_back(pad0 + (i - 1) / 2, pad0 + i);
  UGraph gx(n + 2 + m, std::move(edges));

  TreeDecomposition tdx;
  tdx.bags = td.bags;
  for (auto& b : tdx.bags) b.push_back(hub);
  tdx.edges = td.edges;
  int hub_node = static_cast<int>(tdx.bags.size());
  tdx.bags.push_back({hub, pad0});
  tdx.edges.emplace_back(0, hub_node);
  std::vector<int> node_of(m + 1, hub_node);
  for (int i = 1; i <= m; ++i) {
    int nd = static_cast<int>(tdx.bags.size());
    int pa = (i - 1) / 2;
    tdx.bags.push_back({std::min(pad0 + pa, pad0 + i), std::max(pad0 + pa, pad0 + i)});
    tdx.edges.emplace_back(node_of[pa], nd);
    node_of[i] = nd;
  }

  MbtResult rooted = rooted_mbt(gx, tdx, hub);
  // The hub's subtree on the original side is the answer; the padding side
  // always dominates one of the two hub slots.
  std::vector<std::vector<int>> adj(gx.n());
  for (auto [a, b] : rooted.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  int best_child = -1, best_size = 0;
  std::vector<std::pair<int, int>> best_edges;
  for (int c : adj[hub]) {
    if (c >= n) continue;
    std::vector<int> comp{c};
    std::vector<char> seen(gx.n(), 0);
    seen[c] = seen[hub] = 1;
    std::vector<std::pair<int, int>> comp_edges;
    for (size_t qi = 0; qi < comp.size(); ++qi) {
      int u = comp[qi];
      for (int w : adj[u]) {
        if (w == hub) continue;
        if (!seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
        if (u < w) comp_edges.emplace_back(u, w);
      }
    }
    if (static_cast<int>(comp.size()) > best_size) {
      best_size = static_cast<int>(comp.size());
      best_child = c;
      best_edges = std::move(comp_edges);
    }
  }
  assert(best_child >= 0);
  (void)best_child;
  res.size = best_size;
  res.edges = std::move(best_edges);
  std::sort(res.edges.begin(), res.edges.end());
  std::vector<char> invol(g.n(), 0);
  invol[best_child] = 1;
  for (auto [a, b] : res.edges) invol[a] = invol[b] = 1;
  for (int v = 0; v < g.n(); ++v)
    if (invol[v]) res.vertices.push_back(v);
  return res;
}

}  // namespace mbt
