#pragma once

#include <algorithm>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mbt/parse.hpp"

namespace mbt {

// A finite sequence over the alphabet [1, k].  Construction through
// from_values rank-compresses arbitrary integer labels to 1..k preserving
// relative order; k then equals the number of distinct input values.
struct Sequence {
  std::vector<int> items;  // each in [1, k]
  int k = 0;

  int n() const { return static_cast<int>(items.size()); }

  static Sequence from_values(const std::vector<long long>& vals) {
    std::vector<long long> sorted(vals);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    Sequence s;
    s.k = static_cast<int>(sorted.size());
    s.items.reserve(vals.size());
    for (long long v : vals) {
      int r = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin());
      s.items.push_back(r + 1);
    }
    return s;
  }

  // Items already lie in [1, k]; k may exceed the number of distinct values.
  static Sequence raw(std::vector<int> items, int k) {
    if (k < 0) throw std::invalid_argument("sequence: negative alphabet size");
    for (int v : items)
      if (v < 1 || v > k) throw std::invalid_argument("sequence: label outside [1, k]");
    Sequence s;
    s.items = std::move(items);
    s.k = k;
    return s;
  }
};

// Text format: one sequence per line, whitespace-separated positive integers.
// Blank lines and lines starting with '#' are ignored.
inline std::vector<Sequence> read_sequences(std::istream& in) {
  std::vector<Sequence> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line[0] == '#') continue;
    std::vector<std::string> toks = split_ws(line);
    if (toks.empty()) continue;
    std::vector<long long> vals;
    vals.reserve(toks.size());
    for (const std::string& t : toks) {
      long long v = parse_int(t, lineno);
      if (v < 1) throw ParseError(lineno, "labels must be positive");
      vals.push_back(v);
    }
    out.push_back(Sequence::from_values(vals));
  }
  return out;
}

}  // namespace mbt
