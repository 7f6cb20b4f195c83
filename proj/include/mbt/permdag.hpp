#pragma once

#include <vector>

#include "mbt/digraph.hpp"
#include "mbt/sequence.hpp"

namespace mbt {

// The permutation DAG of a sequence: one vertex per position (vertex i-1 for
// the i-th item) and an arc from the later position j to the earlier
// position i whenever items[i] <= items[j].
inline DiGraph build_permdag(const Sequence& s) {
  int n = s.n();
  std::vector<std::pair<int, int>> arcs;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i)
      if (s.items[i] <= s.items[j]) arcs.emplace_back(j, i);
  return DiGraph(n, std::move(arcs));
}

// Does s realize g with vertex at position p playing the role of position p?
// Checks the full arc/non-arc pattern under the given order.
inline bool ordered_isomorphic(const DiGraph& g, const TopOrder& t, const Sequence& s) {
  int n = g.n();
  if (s.n() != n || t.n() != n) return false;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i)
      if (g.has_arc(t.at[j], t.at[i]) != (s.items[i] <= s.items[j])) return false;
  return true;
}

}  // namespace mbt
