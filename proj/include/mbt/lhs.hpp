#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mbt/refined_shape.hpp"
#include "mbt/sequence.hpp"

namespace mbt {

// Dedicated "unreachable" sentinel; never fed into arithmetic.
inline constexpr int32_t lhs_unreachable = std::numeric_limits<int32_t>::min();

// Longest-heapable-subsequence table.  val[i][x] is the best subsequence
// length over the first i items ending in a heap of refined shape x;
// from[i][x] is the shape index the step-i insertion came from, or -1 when
// the value was carried from layer i-1.
struct LhsResult {
  int length = 0;
  Sequence seq;
  ShapeIndex index;
  std::vector<std::vector<int32_t>> val;
  std::vector<std::vector<int32_t>> from;
  std::vector<size_t> reachable;  // shape indices in first-reached order
};

namespace detail {

// Relaxes one item into the next layer.  Sources are the shapes reachable
// before this step; newly reached shapes are appended but not used as
// sources until the next item.
template <typename Prev, typename Next>
inline void lhs_step(const ShapeIndex& index, int label, const Prev& prev, Next& next,
                     std::vector<size_t>& reachable, std::vector<char>& in_reach,
                     std::vector<int32_t>* from) {
  size_t nsrc = reachable.size();
  for (size_t si = 0; si < nsrc; ++si) {
    size_t src = reachable[si];
    int32_t base = prev[src];
    assert(base != lhs_unreachable);
    Shape x = index.decode(src);
    for (int b = 0; b <= label; ++b) {
      if (x[b] == 0) continue;
      std::optional<Shape> y = insert(x, b, label);
      assert(y.has_value());
      size_t ti = index.encode(*y);
      if (base + 1 > next[ti]) {
        next[ti] = base + 1;
        if (from) (*from)[ti] = static_cast<int32_t>(src);
        if (!in_reach[ti]) {
          in_reach[ti] = 1;
          reachable.push_back(ti);
        }
      }
    }
  }
}

}  // namespace detail

// Batch DP over all prefixes; keeps every layer so a witness can be read off.
inline LhsResult lhs_dp(const Sequence& s) {
  LhsResult r;
  r.seq = s;
  int n = s.n();
  int k = std::max(s.k, 1);
  r.index = ShapeIndex(k);
  size_t sz = r.index.size();
  r.val.assign(static_cast<size_t>(n) + 1, {});
  r.from.assign(static_cast<size_t>(n) + 1, {});
  r.val[0].assign(sz, lhs_unreachable);
  r.val[0][r.index.empty_index()] = 0;
  std::vector<char> in_reach(sz, 0);
  in_reach[r.index.empty_index()] = 1;
  r.reachable.push_back(r.index.empty_index());
  for (int i = 1; i <= n; ++i) {
    r.val[i] = r.val[i - 1];
    r.from[i].assign(sz, -1);
    detail::lhs_step(r.index, s.items[i - 1], r.val[i - 1], r.val[i], r.reachable, in_reach,
                     &r.from[i]);
  }
  int32_t best = 0;
  for (size_t x : r.reachable) best = std::max(best, r.val[n][x]);
  r.length = best;
  return r;
}

// Indices (1-based, increasing) of one longest heapable subsequence.  Ties
// are resolved toward carrying (the step is skipped) and, at the top, toward
// the smallest shape index, so the result is deterministic.
inline std::vector<int> lhs_reconstruct(const LhsResult& r) {
  int n = r.seq.n();
  size_t at = r.index.empty_index();
  int32_t best = lhs_unreachable;
  for (size_t x = 0; x < r.index.size(); ++x) {
    if (r.val[n][x] > best) {
      best = r.val[n][x];
      at = x;
    }
  }
  std::vector<int> picks;
  for (int i = n; i >= 1; --i) {
    int32_t src = r.from[i][at];
    if (src < 0) continue;
    picks.push_back(i);
    at = static_cast<size_t>(src);
  }
  assert(at == r.index.empty_index());
  assert(static_cast<int>(picks.size()) == r.length);
  std::reverse(picks.begin(), picks.end());
  return picks;
}

// One-pass accumulator over a fixed alphabet [1, k].  Live state is two
// dense shape tables (plus the reached-index bookkeeping, itself bounded by
// the table size); it does not grow with the number of items fed.
class LhsStream {
 public:
  explicit LhsStream(int k) : index_(std::max(k, 1)) {
    cur_.assign(index_.size(), lhs_unreachable);
    nxt_.assign(index_.size(), lhs_unreachable);
    in_reach_.assign(index_.size(), 0);
    cur_[index_.empty_index()] = 0;
    in_reach_[index_.empty_index()] = 1;
    reachable_.push_back(index_.empty_index());
  }

  void feed(int label) {
    if (label < 1 || label > index_.k())
      throw std::out_of_range("LhsStream: label outside [1, k]");
    nxt_ = cur_;
    detail::lhs_step(index_, label, cur_, nxt_, reachable_, in_reach_, nullptr);
    cur_.swap(nxt_);
    ++fed_;
  }

  int current_length() const {
    int32_t best = 0;
    for (size_t x : reachable_) best = std::max(best, cur_[x]);
    return best;
  }

  size_t fed() const { return fed_; }
  int k() const { return index_.k(); }

  // Structural space accounting for the fixed-size live state.
  size_t table_entries() const { return cur_.size() + nxt_.size(); }
  size_t reachable_entries() const { return reachable_.size(); }

 private:
  ShapeIndex index_;
  std::vector<int32_t> cur_, nxt_;
  std::vector<size_t> reachable_;
  std::vector<char> in_reach_;
  size_t fed_ = 0;
};

// Streaming form of the same recurrence; answers only the final length.
inline int lhs_stream(const Sequence& s) {
  LhsStream acc(s.k);
  for (int v : s.items) acc.feed(v);
  return acc.current_length();
}

inline bool is_heapable(const Sequence& s) { return lhs_stream(s) == s.n(); }

}  // namespace mbt
