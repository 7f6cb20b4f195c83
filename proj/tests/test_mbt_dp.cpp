#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

#include "mbt/mbt_dp.hpp"
#include "mbt/oracles.hpp"

using mbt::TreeDecomposition;
using mbt::UGraph;

namespace {

UGraph random_connected(std::mt19937& rng, int n, int extra) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v) edges.emplace_back(static_cast<int>(rng() % v), v);
  int tries = 0;
  while (extra > 0 && tries++ < 200) {
    int u = static_cast<int>(rng() % n), v = static_cast<int>(rng() % n);
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (std::find(edges.begin(), edges.end(), std::make_pair(u, v)) != edges.end()) continue;
    edges.emplace_back(u, v);
    --extra;
  }
  return UGraph(n, edges);
}

// Independent certificate check: the claimed edge set forms one tree inside
// g, within the degree caps, covering exactly the claimed vertices.
void require_valid_tree(const UGraph& g, const mbt::MbtResult& r, int root) {
  if (r.size == 0) {
    CHECK(r.edges.empty());
    CHECK(r.vertices.empty());
    return;
  }
  REQUIRE(static_cast<int>(r.vertices.size()) == r.size);
  REQUIRE(static_cast<int>(r.edges.size()) == r.size - 1);
  std::vector<int> deg(g.n(), 0);
  std::vector<int> uf(g.n());
  std::iota(uf.begin(), uf.end(), 0);
  std::function<int(int)> find = [&](int x) { return uf[x] == x ? x : uf[x] = find(uf[x]); };
  for (auto [u, v] : r.edges) {
    REQUIRE(g.has_edge(u, v));
    ++deg[u];
    ++deg[v];
    int ru = find(u), rv = find(v);
    REQUIRE(ru != rv);  // acyclic
    uf[ru] = rv;
  }
  for (int v : r.vertices) {
    CHECK(deg[v] <= (v == root ? 2 : 3));
    CHECK(find(v) == find(r.vertices[0]));  // connected
  }
  if (root >= 0)
    CHECK(std::find(r.vertices.begin(), r.vertices.end(), root) != r.vertices.end());
  int touched = 0;
  for (int v = 0; v < g.n(); ++v) touched += deg[v] > 0;
  CHECK(touched <= r.size);
}

}  // namespace

TEST_CASE("partition merge unions parts and rejects cycles", "[mbt_dp]") {
  std::vector<int> elems{1, 2, 3, 4, 5, 6};
  auto merged = mbt::merge_partitions(
      elems, {{1, 2}, {3, 4}, {5}, {6}}, {{1}, {2, 3, 5}, {4}, {6}});
  REQUIRE(merged.has_value());
  REQUIRE(merged->size() == 2);
  CHECK((*merged)[0] == std::vector<int>{1, 2, 3, 4, 5});
  CHECK((*merged)[1] == std::vector<int>{6});

  // Both sides already connect {1,2}: overlaying them closes a cycle.
  CHECK_FALSE(mbt::merge_partitions({1, 2}, {{1, 2}}, {{1, 2}}).has_value());
  CHECK(mbt::merge_partitions({1, 2}, {{1, 2}}, {{1}, {2}}).has_value());
  CHECK_THROWS_AS(mbt::merge_partitions({1, 2}, {{1, 2}, {7}}, {{1}, {2}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(mbt::merge_partitions({1, 2}, {{1}}, {{1}, {2}}), std::invalid_argument);
}

TEST_CASE("table state semantics on a documented subgraph", "[mbt_dp]") {
  // Ten vertices 0..9 (diagram names v1..v10); the bag is {v1..v6}, the
  // subtree below has seen all ten edges.  For the footprint X = {v1..v5},
  // partition {{v1,v2},{v3,v5},{v4}} and degrees (1,1,2,0,1), the best
  // forest keeps 6 edges.  Enumerated directly over all edge subsets here.
  std::vector<std::pair<int, int>> ei{{0, 6}, {1, 6}, {2, 7}, {2, 8}, {4, 8},
                                      {8, 9}, {1, 7}, {3, 8}, {6, 7}, {5, 9}};
  std::vector<int> bag{0, 1, 2, 3, 4, 5};
  std::vector<int> x{0, 1, 2, 3, 4};
  std::vector<std::vector<int>> parts{{0, 1}, {2, 4}, {3}};
  int want_deg[5] = {1, 1, 2, 0, 1};

  int best = -1;
  for (unsigned mask = 0; mask < (1u << ei.size()); ++mask) {
    std::vector<int> deg(10, 0), uf(10);
    std::iota(uf.begin(), uf.end(), 0);
    std::function<int(int)> find = [&](int v) { return uf[v] == v ? v : uf[v] = find(uf[v]); };
    bool ok = true;
    int cnt = 0;
    for (size_t e = 0; e < ei.size() && ok; ++e) {
      if (!(mask >> e & 1)) continue;
      auto [u, v] = ei[e];
      ++cnt;
      if (++deg[u] > 3 || ++deg[v] > 3) ok = false;
      int ru = find(u), rv = find(v);
      if (ru == rv) ok = false;
      uf[ru] = rv;
    }
    if (!ok) continue;
    // Bag vertices outside X stay untouched; X degrees must match exactly.
    for (int v : bag)
      if (std::find(x.begin(), x.end(), v) == x.end() && deg[v] > 0) ok = false;
    for (size_t i = 0; i < x.size() && ok; ++i)
      if (deg[x[i]] != want_deg[i]) ok = false;
    if (!ok) continue;
    // Forest components restricted to X must reproduce the partition, and
    // every touched vertex must sit in a component holding an X vertex.
    for (const auto& part : parts)
      for (size_t i = 1; i < part.size() && ok; ++i)
        if (find(part[i]) != find(part[0])) ok = false;
    for (size_t a = 0; a < parts.size() && ok; ++a)
      for (size_t b = a + 1; b < parts.size() && ok; ++b)
        if (find(parts[a][0]) == find(parts[b][0])) ok = false;
    for (int v = 0; v < 10 && ok; ++v) {
      if (deg[v] == 0) continue;
      bool anchored = false;
      for (int xv : x) anchored |= find(v) == find(xv);
      if (!anchored) ok = false;
    }
    if (ok) best = std::max(best, cnt);
  }
  CHECK(best == 6);
}

TEST_CASE("rooted solutions on small named graphs", "[mbt_dp]") {
  UGraph triangle(3, {{0, 1}, {0, 2}, {1, 2}});
  TreeDecomposition td = mbt::heuristic_decomposition(triangle);
  for (int s = 0; s < 3; ++s) {
    mbt::MbtResult r = mbt::rooted_mbt(triangle, td, s);
    CHECK(r.size == 3);
    require_valid_tree(triangle, r, s);
  }

  UGraph star(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
  td = mbt::heuristic_decomposition(star);
  mbt::MbtResult center = mbt::rooted_mbt(star, td, 0);
  CHECK(center.size == 3);  // the root may only take two branches
  require_valid_tree(star, center, 0);
  mbt::MbtResult leaf = mbt::rooted_mbt(star, td, 1);
  CHECK(leaf.size == 4);  // leaf, center, and two more branches
  require_valid_tree(star, leaf, 1);

  UGraph lone(1, {});
  td = mbt::heuristic_decomposition(lone);
  CHECK(mbt::rooted_mbt(lone, td, 0).size == 1);
  CHECK_THROWS_AS(mbt::rooted_mbt(lone, td, 1), std::invalid_argument);
}

TEST_CASE("unrooted solutions on small named graphs", "[mbt_dp]") {
  UGraph p5(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  mbt::MbtResult r = mbt::unrooted_mbt(p5, mbt::heuristic_decomposition(p5));
  CHECK(r.size == 5);
  require_valid_tree(p5, r, -1);

  UGraph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  r = mbt::unrooted_mbt(k4, mbt::heuristic_decomposition(k4));
  CHECK(r.size == 4);
  require_valid_tree(k4, r, -1);

  UGraph star(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
  r = mbt::unrooted_mbt(star, mbt::heuristic_decomposition(star));
  CHECK(r.size == 4);  // center at degree three plus three leaves
  require_valid_tree(star, r, -1);

  std::vector<std::pair<int, int>> ring;
  for (int i = 0; i < 6; ++i) ring.emplace_back(i, (i + 1) % 6);
  UGraph c6(6, ring);
  r = mbt::unrooted_mbt(c6, mbt::heuristic_decomposition(c6));
  CHECK(r.size == 6);
  require_valid_tree(c6, r, -1);

  CHECK(mbt::unrooted_mbt(UGraph(0, {}), mbt::heuristic_decomposition(UGraph(0, {}))).size == 0);
  UGraph dust(3, {});
  CHECK(mbt::unrooted_mbt(dust, mbt::heuristic_decomposition(dust)).size == 1);
}

TEST_CASE("dp agrees with the exhaustive reference on random graphs", "[mbt_dp][oracle]") {
  std::mt19937 rng(11501);
  for (int it = 0; it < 40; ++it) {
    int n = 2 + static_cast<int>(rng() % 7);
    UGraph g = random_connected(rng, n, static_cast<int>(rng() % 5));
    if (g.m() > 16) continue;
    TreeDecomposition td = mbt::heuristic_decomposition(g);
    mbt::MbtResult r = mbt::unrooted_mbt(g, td);
    REQUIRE(r.size == mbt::brute_mbt_undirected(g));
    require_valid_tree(g, r, -1);
    for (int pick = 0; pick < 2; ++pick) {
      int s = static_cast<int>(rng() % n);
      mbt::MbtResult rr = mbt::rooted_mbt(g, td, s);
      REQUIRE(rr.size == mbt::brute_mbt_undirected_rooted(g, s));
      require_valid_tree(g, rr, s);
    }
  }
}

TEST_CASE("dp handles disconnected inputs", "[mbt_dp]") {
  // Two components: a triangle and a path of four; the best tree lives in
  // the larger component.
  UGraph g(7, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {4, 5}, {5, 6}});
  TreeDecomposition td = mbt::heuristic_decomposition(g);
  mbt::MbtResult r = mbt::unrooted_mbt(g, td);
  CHECK(r.size == mbt::brute_mbt_undirected(g));
  require_valid_tree(g, r, -1);
  CHECK(mbt::rooted_mbt(g, td, 0).size == 3);
  CHECK(mbt::rooted_mbt(g, td, 3).size == 4);
}
