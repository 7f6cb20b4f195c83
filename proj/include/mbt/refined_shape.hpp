#pragma once

#include <cassert>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace mbt {

// A shape is a (k+1)-tuple (x_0, ..., x_k); x_j counts the open insertion
// slots whose parent carries label j in a partially built min-heap over the
// alphabet [1, k].  Index 0 stands for the virtual slot of the empty heap, so
// the empty heap has shape (1, 0, ..., 0).
//
// Coordinates live in {0, 1, 2, ...} plus the overflow class shape_inf, which
// absorbs arithmetic: shape_inf + c = shape_inf and shape_inf > any count.
using Shape = std::vector<int>;

inline constexpr int shape_inf = std::numeric_limits<int>::max();

inline Shape empty_shape(int k) {
  Shape x(static_cast<size_t>(k) + 1, 0);
  x[0] = 1;
  return x;
}

inline int sat_add(int a, int c) { return a == shape_inf ? shape_inf : a + c; }
inline int sat_dec(int a) { return a == shape_inf ? shape_inf : a - 1; }

// Caps a shape at the point where it stops mattering: once some x_j reaches
// k - j + 1, slots at labels >= j can never all be consumed by the at most
// k - j remaining distinct labels, so the exact counts from j on are
// irrelevant and collapse to shape_inf.
inline Shape refine(Shape x) {
  int k = static_cast<int>(x.size()) - 1;
  for (int j = 0; j <= k; ++j) {
    if (x[j] == shape_inf || x[j] >= k - j + 1) {
      for (int t = j; t <= k; ++t) x[t] = shape_inf;
      break;
    }
  }
  return x;
}

// A refined shape: every x_j is either shape_inf or at most k - j, infinity
// only propagates rightward, and x_0 = 0 except for the empty-heap shape.
inline bool is_refined(const Shape& x) {
  int k = static_cast<int>(x.size()) - 1;
  if (k < 0) return false;
  if (x == empty_shape(k)) return true;
  if (x[0] != 0) return false;
  bool seen_inf = false;
  for (int j = 0; j <= k; ++j) {
    if (x[j] == shape_inf) {
      seen_inf = true;
      continue;
    }
    if (seen_inf) return false;
    if (x[j] < 0 || x[j] > k - j) return false;
  }
  return true;
}

// Consumes a slot with parent label a and hangs a node labelled b under it
// (requires a <= b for the heap property); the new node opens two slots at
// label b.  Returns nothing when no slot at a is open.  No refinement.
inline std::optional<Shape> insert_plain(const Shape& x, int a, int b) {
  int k = static_cast<int>(x.size()) - 1;
  if (a < 0 || b < a || b > k) throw std::invalid_argument("insert: need 0 <= a <= b <= k");
  if (x[a] == 0) return std::nullopt;
  Shape y(x);
  if (a == b) {
    y[a] = sat_add(y[a], 1);
  } else {
    y[a] = sat_dec(y[a]);
    y[b] = sat_add(y[b], 2);
  }
  return y;
}

// Insertion on refined shapes: apply the slot update, then re-refine.
inline std::optional<Shape> insert(const Shape& x, int a, int b) {
  std::optional<Shape> y = insert_plain(x, a, b);
  if (!y) return std::nullopt;
  return refine(std::move(*y));
}

// All refined shapes for alphabet size k: the empty-heap shape plus every
// tuple with x_0 = 0, x_j in {0, ..., k-j} or shape_inf, and infinity closed
// to the right.  Cardinality is at most (k+1)! + 1.
inline std::vector<Shape> enumerate_refined_shapes(int k) {
  if (k < 1) throw std::invalid_argument("enumerate_refined_shapes: need k >= 1");
  std::vector<Shape> out;
  out.push_back(empty_shape(k));
  Shape cur(static_cast<size_t>(k) + 1, 0);
  auto rec = [&](auto&& self, int j) -> void {
    if (j > k) {
      out.push_back(cur);
      return;
    }
    if (j > 1 && cur[j - 1] == shape_inf) {
      cur[j] = shape_inf;
      self(self, j + 1);
      cur[j] = 0;
      return;
    }
    for (int v = 0; v <= k - j; ++v) {
      cur[j] = v;
      self(self, j + 1);
    }
    cur[j] = shape_inf;
    self(self, j + 1);
    cur[j] = 0;
  };
  rec(rec, 1);
  return out;
}

// All refined shapes x' with x'<b <- v> = x for some slot label b <= v.
// Realized by forward enumeration over the full refined-shape family; the
// inverse of a refined insertion is multi-valued, so filtering is the simple
// total answer.  Intended for small k (tests, cross-checks).
inline std::vector<Shape> prev_shapes(const Shape& x, int v) {
  int k = static_cast<int>(x.size()) - 1;
  if (v < 1 || v > k) throw std::invalid_argument("prev_shapes: label outside [1, k]");
  std::vector<Shape> out;
  for (const Shape& cand : enumerate_refined_shapes(k)) {
    for (int b = 0; b <= v; ++b) {
      if (cand[b] == 0) continue;
      std::optional<Shape> y = insert(cand, b, v);
      if (y && *y == x) {
        out.push_back(cand);
        break;
      }
    }
  }
  return out;
}

// Mixed-radix codec for refined shapes.  Coordinate j in 1..k takes radix
// k - j + 2 (counts 0..k-j plus one code for shape_inf); x_0 is implicitly 0.
// The empty-heap shape gets the reserved final index, so the dense table size
// is (k+1)! + 1.  Codes violating infinity propagation are simply never
// produced.
class ShapeIndex {
 public:
  ShapeIndex() = default;

  explicit ShapeIndex(int k) : k_(k) {
    if (k < 1) throw std::invalid_argument("ShapeIndex: need k >= 1");
    if (k > 9) throw std::length_error("ShapeIndex: alphabet too large for dense shape tables");
    weight_.assign(static_cast<size_t>(k) + 1, 1);
    for (int j = k - 1; j >= 1; --j) {
      int radix_next = k - (j + 1) + 2;
      weight_[j] = weight_[j + 1] * static_cast<size_t>(radix_next);
    }
    size_ = weight_[1] * static_cast<size_t>(k + 1);  // (k+1)!
  }

  int k() const { return k_; }
  size_t size() const { return size_ + 1; }
  size_t empty_index() const { return size_; }

  size_t encode(const Shape& x) const {
    assert(static_cast<int>(x.size()) == k_ + 1);
    if (x[0] != 0) {
      assert(x == empty_shape(k_));
      return size_;
    }
    size_t idx = 0;
    for (int j = 1; j <= k_; ++j) {
      int code = x[j] == shape_inf ? k_ - j + 1 : x[j];
      assert(code >= 0 && code <= k_ - j + 1);
      idx += static_cast<size_t>(code) * weight_[j];
    }
    return idx;
  }

  Shape decode(size_t idx) const {
    if (idx == size_) return empty_shape(k_);
    Shape x(static_cast<size_t>(k_) + 1, 0);
    for (int j = 1; j <= k_; ++j) {
      size_t code = idx / weight_[j];
      idx %= weight_[j];
      x[j] = static_cast<int>(code) == k_ - j + 1 ? shape_inf : static_cast<int>(code);
    }
    return x;
  }

 private:
  int k_ = 0;
  size_t size_ = 0;
  std::vector<size_t> weight_;
};

}  // namespace mbt
