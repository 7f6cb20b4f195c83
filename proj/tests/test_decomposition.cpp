#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mbt/nice_decomposition.hpp"
#include "mbt/tree_decomposition.hpp"

using mbt::NiceDecomposition;
using mbt::TreeDecomposition;
using mbt::UGraph;

namespace {

UGraph random_graph(std::mt19937& rng, int n, int percent) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (static_cast<int>(rng() % 100) < percent) edges.emplace_back(u, v);
  return UGraph(n, edges);
}

TreeDecomposition path_decomposition() {
  TreeDecomposition td;
  td.bags = {{0, 1}, {1, 2}};
  td.edges = {{0, 1}};
  return td;
}

}  // namespace

TEST_CASE("decomposition validation accepts the basics", "[decomposition]") {
  UGraph path(3, {{0, 1}, {1, 2}});
  CHECK_FALSE(mbt::validate_decomposition(path, path_decomposition()).has_value());

  UGraph lone(1, {});
  TreeDecomposition single;
  single.bags = {{0}};
  CHECK_FALSE(mbt::validate_decomposition(lone, single).has_value());
  CHECK(single.width() == 0);
  CHECK(path_decomposition().width() == 1);
}

TEST_CASE("decomposition validation pinpoints violations", "[decomposition]") {
  UGraph path(3, {{0, 1}, {1, 2}});

  TreeDecomposition uncovered;
  uncovered.bags = {{0}, {2}};
  uncovered.edges = {{0, 1}};
  auto why = mbt::validate_decomposition(path, uncovered);
  REQUIRE(why.has_value());
  CHECK(why->find("T1") != std::string::npos);  // vertex 1 appears nowhere

  TreeDecomposition edgeless;
  edgeless.bags = {{0, 2}, {1}};
  edgeless.edges = {{0, 1}};
  why = mbt::validate_decomposition(path, edgeless);
  REQUIRE(why.has_value());
  CHECK(why->find("T2") != std::string::npos);

  TreeDecomposition split;
  split.bags = {{0, 1}, {1, 2}, {0, 1}};
  split.edges = {{0, 1}, {1, 2}};
  // Vertex 0 occurs at both ends but not in the middle bag.
  why = mbt::validate_decomposition(path, split);
  REQUIRE(why.has_value());
  CHECK(why->find("T3") != std::string::npos);

  TreeDecomposition loop;
  loop.bags = {{0, 1}, {1, 2}, {0, 2}};
  loop.edges = {{0, 1}, {1, 2}, {2, 0}};
  why = mbt::validate_decomposition(path, loop);
  REQUIRE(why.has_value());
  CHECK(why->find("tree") != std::string::npos);

  TreeDecomposition none;
  CHECK(mbt::validate_decomposition(path, none).has_value());
}

TEST_CASE("min-degree heuristic widths on standard families", "[decomposition]") {
  // A tree eliminates leaf by leaf.
  UGraph tree(7, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}});
  TreeDecomposition td = mbt::heuristic_decomposition(tree);
  CHECK_FALSE(mbt::validate_decomposition(tree, td).has_value());
  CHECK(td.width() == 1);

  UGraph lone(1, {});
  td = mbt::heuristic_decomposition(lone);
  CHECK_FALSE(mbt::validate_decomposition(lone, td).has_value());
  CHECK(td.width() == 0);

  for (int n = 3; n <= 8; ++n) {
    std::vector<std::pair<int, int>> ring;
    for (int i = 0; i < n; ++i) ring.emplace_back(i, (i + 1) % n);
    UGraph cyc(n, ring);
    td = mbt::heuristic_decomposition(cyc);
    CHECK_FALSE(mbt::validate_decomposition(cyc, td).has_value());
    CHECK(td.width() == 2);
  }
}

TEST_CASE("min-degree heuristic stays valid on random graphs", "[decomposition]") {
  std::mt19937 rng(10401);
  for (int it = 0; it < 60; ++it) {
    UGraph g = random_graph(rng, 1 + static_cast<int>(rng() % 9), 10 + static_cast<int>(rng() % 60));
    TreeDecomposition td = mbt::heuristic_decomposition(g);
    REQUIRE_FALSE(mbt::validate_decomposition(g, td).has_value());
  }
}

TEST_CASE("nice form of a single vertex", "[decomposition][nice]") {
  UGraph lone(1, {});
  TreeDecomposition td;
  td.bags = {{0}};
  NiceDecomposition nd = mbt::make_nice(lone, td);
  REQUIRE_FALSE(mbt::check_nice(lone, nd).has_value());
  int leafs = 0, intro = 0, drops = 0;
  for (const auto& node : nd.nodes) {
    leafs += node.type == NiceDecomposition::NodeType::Leaf;
    intro += node.type == NiceDecomposition::NodeType::IntroduceVertex;
    drops += node.type == NiceDecomposition::NodeType::Drop;
  }
  CHECK(leafs == 1);
  CHECK(intro == 1);
  CHECK(drops == 1);
  CHECK(nd.nodes[nd.root].bag.empty());
}

TEST_CASE("nice form invariants on random graphs", "[decomposition][nice]") {
  std::mt19937 rng(10402);
  for (int it = 0; it < 50; ++it) {
    int n = 1 + static_cast<int>(rng() % 9);
    UGraph g = random_graph(rng, n, 10 + static_cast<int>(rng() % 70));
    TreeDecomposition td = mbt::heuristic_decomposition(g);
    NiceDecomposition nd = mbt::make_nice(g, td);
    auto why = mbt::check_nice(g, nd);
    if (why) INFO(*why);
    REQUIRE_FALSE(why.has_value());
    CHECK(nd.width() <= td.width());
    int drops = 0, ies = 0;
    for (const auto& node : nd.nodes) {
      drops += node.type == NiceDecomposition::NodeType::Drop;
      ies += node.type == NiceDecomposition::NodeType::IntroduceEdge;
    }
    CHECK(drops == g.n());
    CHECK(ies == g.m());
  }
}

TEST_CASE("make_nice rejects invalid decompositions", "[decomposition][nice]") {
  UGraph path(3, {{0, 1}, {1, 2}});
  TreeDecomposition bad;
  bad.bags = {{0}, {2}};
  bad.edges = {{0, 1}};
  CHECK_THROWS_AS(mbt::make_nice(path, bad), std::invalid_argument);
}

TEST_CASE("pendant-pinned decompositions keep the new vertex everywhere", "[decomposition][nice]") {
  std::mt19937 rng(10403);
  for (int it = 0; it < 40; ++it) {
    int n = 1 + static_cast<int>(rng() % 8);
    UGraph g = random_graph(rng, n, 10 + static_cast<int>(rng() % 70));
    TreeDecomposition td = mbt::heuristic_decomposition(g);
    NiceDecomposition nice = mbt::make_nice(g, td);
    int s = static_cast<int>(rng() % n);
    mbt::SpecialDecomposition sp = mbt::make_special(g, nice, s);
    CHECK(sp.s_prime == n);
    CHECK(sp.gs.n() == n + 1);
    CHECK(sp.gs.m() == g.m() + 1);
    CHECK(sp.gs.has_edge(s, sp.s_prime));
    for (const auto& node : sp.nd.nodes) {
      REQUIRE(!node.bag.empty());
      CHECK(std::find(node.bag.begin(), node.bag.end(), sp.s_prime) != node.bag.end());
    }
    CHECK(sp.nd.width() <= nice.width() + 1);
    auto why = mbt::check_nice(sp.gs, sp.nd, sp.s_prime);
    if (why) INFO(*why);
    REQUIRE_FALSE(why.has_value());
  }
}
