#pragma once

// Brute-force reference implementations, used by tests as independent ground
// truth.  Deliberately simple and exponential; every entry point refuses
// inputs beyond its size budget instead of silently taking forever.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mbt/alphabet.hpp"
#include "mbt/digraph.hpp"
#include "mbt/sequence.hpp"
#include "mbt/ugraph.hpp"

namespace mbt {

struct OracleBudget {
  int max_n = 0;
  long long max_millis = 0;  // advisory wall-clock cap for callers
};

inline constexpr OracleBudget lhs_oracle_budget{12, 60000};
inline constexpr OracleBudget mbt_directed_oracle_budget{10, 60000};
inline constexpr OracleBudget mbt_undirected_oracle_budget{10, 300000};
inline constexpr int mbt_undirected_oracle_max_m = 18;
inline constexpr OracleBudget gamma_alpha_oracle_budget{6, 60000};
inline constexpr OracleBudget alpha_oracle_budget{7, 60000};

// Exhaustive take/skip search over heap embeddings.  State: per-label open
// slot counts, uncapped; index 0 is the empty-heap root slot that accepts any
// label.  Memoized on (position, raw counts).
inline int brute_lhs(const Sequence& s) {
  if (s.n() > lhs_oracle_budget.max_n)
    throw std::length_error("brute_lhs: sequence longer than the oracle budget (n <= 12)");
  int n = s.n(), k = std::max(s.k, 1);
  std::map<std::pair<int, std::vector<int>>, int> memo;
  std::function<int(int, std::vector<int>&)> go = [&](int i, std::vector<int>& slots) -> int {
    if (i == n) return 0;
    auto key = std::make_pair(i, slots);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    int best = go(i + 1, slots);  // skip item i
    int a = s.items[i];
    for (int b = 0; b <= a; ++b) {
      if (slots[b] == 0) continue;
      slots[b] -= 1;
      slots[a] += 2;
      best = std::max(best, 1 + go(i + 1, slots));
      slots[a] -= 2;
      slots[b] += 1;
    }
    memo.emplace(std::move(key), best);
    return best;
  };
  std::vector<int> init(k + 1, 0);
  init[0] = 1;
  return go(0, init);
}

// Maximum vertices over r-rooted binary trees in a DAG: arcs point toward
// the root, every tree vertex uses at most two in-arcs.  Memoized on
// (root, pool of vertices still available to its subtree).
inline int brute_mbt_directed(const DiGraph& g) {
  if (g.n() > mbt_directed_oracle_budget.max_n)
    throw std::length_error("brute_mbt_directed: graph larger than the oracle budget (n <= 10)");
  int n = g.n();
  if (n == 0) return 0;
  std::vector<std::vector<int16_t>> memo(n, std::vector<int16_t>(size_t{1} << n, -1));
  std::function<int(int, int)> tree = [&](int r, int pool) -> int {
    pool &= ~(1 << r);
    int16_t& slot = memo[r][pool];
    if (slot >= 0) return slot;
    int best = 1;
    const auto& kids = g.in(r);
    for (size_t i = 0; i < kids.size(); ++i) {
      int c1 = kids[i];
      if (!(pool >> c1 & 1)) continue;
      best = std::max(best, 1 + tree(c1, pool & ~(1 << c1)));
      for (size_t j = i + 1; j < kids.size(); ++j) {
        int c2 = kids[j];
        if (!(pool >> c2 & 1)) continue;
        int rest = pool & ~(1 << c1) & ~(1 << c2);
        for (int t = rest;; t = (t - 1) & rest) {
          best = std::max(best, 1 + tree(c1, t) + tree(c2, rest & ~t));
          if (t == 0) break;
        }
      }
    }
    slot = static_cast<int16_t>(best);
    return best;
  };
  int ans = 0;
  for (int r = 0; r < n; ++r) ans = std::max(ans, tree(r, (1 << n) - 1));
  return ans;
}

namespace detail {

// Largest vertex set spanning a tree with all degrees <= 3 (root, when
// forced, capped at 2), found by size-descending subset search with
// edge-combination enumeration.  sz-1 acyclic edges on sz vertices are
// automatically connected, so union-find cycle rejection suffices.
inline int largest_capped_subtree(const UGraph& g, int forced_root) {
  int n = g.n();
  if (n == 0) return 0;
  const auto& all = g.edges();
  std::vector<std::pair<int, int>> es;
  for (int sz = n; sz >= 2; --sz) {
    for (uint32_t vs = 0; vs < (1u << n); ++vs) {
      if (__builtin_popcount(vs) != sz) continue;
      if (forced_root >= 0 && !(vs >> forced_root & 1)) continue;
      es.clear();
      for (auto [u, v] : all)
        if ((vs >> u & 1) && (vs >> v & 1)) es.emplace_back(u, v);
      int me = static_cast<int>(es.size()), need = sz - 1;
      if (me < need) continue;
      for (uint32_t comb = (1u << need) - 1; comb < (1u << me);) {
        int uf[16], deg[16] = {0};
        for (int v = 0; v < n; ++v) uf[v] = v;
        auto find = [&](int x) {
          while (uf[x] != x) x = uf[x] = uf[uf[x]];
          return x;
        };
        bool ok = true;
        for (int e = 0; e < me && ok; ++e) {
          if (!(comb >> e & 1)) continue;
          auto [u, v] = es[e];
          if (++deg[u] > (u == forced_root ? 2 : 3)) ok = false;
          if (++deg[v] > (v == forced_root ? 2 : 3)) ok = false;
          int ru = find(u), rv = find(v);
          if (ru == rv) ok = false;  // cycle
          uf[ru] = rv;
        }
        if (ok) return sz;
        uint32_t x = comb & (~comb + 1), y = comb + x;
        comb = (((comb & ~y) / x) >> 1) | y;
      }
    }
  }
  return 1;  // any single vertex qualifies
}

inline void check_undirected_budget(const UGraph& g, const char* who) {
  if (g.n() > mbt_undirected_oracle_budget.max_n || g.m() > mbt_undirected_oracle_max_m)
    throw std::length_error(std::string(who) + ": graph larger than the oracle budget (n <= 10, m <= 18)");
}

}  // namespace detail

inline int brute_mbt_undirected(const UGraph& g) {
  detail::check_undirected_budget(g, "brute_mbt_undirected");
  return detail::largest_capped_subtree(g, -1);
}

inline int brute_mbt_undirected_rooted(const UGraph& g, int root) {
  detail::check_undirected_budget(g, "brute_mbt_undirected_rooted");
  if (root < 0 || root >= g.n())
    throw std::invalid_argument("brute_mbt_undirected_rooted: root out of range");
  return detail::largest_capped_subtree(g, root);
}

struct GammaAlphaResult {
  bool finite = false;
  int alpha = 0;
  std::vector<int> tau;  // witness labels in position order, when finite
};

// Smallest k <= k_max admitting labels tau in [k]^n whose position-ordered
// comparison pattern reproduces the arc set exactly.  The isomorphism check
// is inlined here rather than shared with the main modules.
inline GammaAlphaResult brute_gamma_alpha(const DiGraph& g, const TopOrder& t, int k_max = -1) {
  if (g.n() > gamma_alpha_oracle_budget.max_n)
    throw std::length_error("brute_gamma_alpha: graph larger than the oracle budget (n <= 6)");
  if (t.n() != g.n()) throw std::invalid_argument("brute_gamma_alpha: order size mismatch");
  int n = g.n();
  if (n == 0) return {true, 0, {}};
  if (k_max < 0) k_max = n;
  std::vector<int> tau(n, 1);
  for (int k = 1; k <= k_max; ++k) {
    std::fill(tau.begin(), tau.end(), 1);
    while (true) {
      bool match = true;
      for (int i = 0; i < n && match; ++i)
        for (int j = i + 1; j < n && match; ++j)
          if (g.has_arc(t.at[j], t.at[i]) != (tau[i] <= tau[j])) match = false;
      if (match) return {true, k, tau};
      int p = n - 1;
      while (p >= 0 && tau[p] == k) tau[p--] = 1;
      if (p < 0) break;
      tau[p] += 1;
    }
  }
  return {false, 0, {}};
}

// Minimum assignment alpha over every topological ordering, by exhaustive
// ordering enumeration; nothing engages when the graph is not transitively
// closed or no ordering is umbrella-free.
inline std::optional<int> brute_alpha(const DiGraph& g) {
  if (g.n() > alpha_oracle_budget.max_n)
    throw std::length_error("brute_alpha: graph larger than the oracle budget (n <= 7)");
  int n = g.n();
  if (n == 0) return 0;
  std::optional<int> best;
  std::vector<int> order;
  std::vector<char> used(static_cast<size_t>(n), 0);
  std::function<void()> go = [&]() {
    if (static_cast<int>(order.size()) == n) {
      TopOrder t = TopOrder::from_vertex_list(order);
      if (auto a = greedy_assign(g, t))
        if (!best || a->alpha < *best) best = a->alpha;
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[v]) continue;
      bool ready = true;  // arcs run late -> early, so out-neighbours must precede v
      for (int u : g.out(v))
        if (!used[u]) {
          ready = false;
          break;
        }
      if (!ready) continue;
      used[v] = 1;
      order.push_back(v);
      go();
      order.pop_back();
      used[v] = 0;
    }
  };
  go();
  return best;
}

}  // namespace mbt
