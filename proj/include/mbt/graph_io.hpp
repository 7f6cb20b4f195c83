#pragma once

// Text formats: `p dag` arc lists with optional `o` ordering lines, and the
// PACE-style `p tw` graph / `s td` decomposition pair.  All files are 1-based;
// everything in memory is 0-based.

#include <algorithm>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "mbt/digraph.hpp"
#include "mbt/parse.hpp"
#include "mbt/tree_decomposition.hpp"
#include "mbt/ugraph.hpp"

namespace mbt {

struct DagFile {
  DiGraph g;
  std::optional<TopOrder> order;
};

namespace detail {

inline int parse_vertex(const std::string& tok, int n, int line) {
  int v = static_cast<int>(parse_int(tok, line));
  if (v < 1 || v > n) throw ParseError(line, "vertex id " + tok + " out of range");
  return v - 1;
}

}  // namespace detail

inline DagFile read_dag(std::istream& in) {
  std::string line;
  int lineno = 0, n = -1;
  long long m = -1;
  std::vector<std::pair<int, int>> arcs;
  std::optional<std::vector<int>> order;
  while (std::getline(in, line)) {
    ++lineno;
    auto tok = split_ws(line);
    if (tok.empty() || tok[0] == "c") continue;
    if (tok[0] == "p") {
      if (n >= 0) throw ParseError(lineno, "duplicate header");
      if (tok.size() != 4 || tok[1] != "dag")
        throw ParseError(lineno, "expected 'p dag <n> <m>' header");
      n = static_cast<int>(parse_int(tok[2], lineno));
      m = parse_int(tok[3], lineno);
      if (n < 0 || m < 0) throw ParseError(lineno, "negative counts in header");
      continue;
    }
    if (n < 0) throw ParseError(lineno, "expected 'p dag <n> <m>' header");
    if (tok[0] == "a") {
      if (tok.size() != 3) throw ParseError(lineno, "expected 'a <from> <to>'");
      int u = detail::parse_vertex(tok[1], n, lineno);
      int v = detail::parse_vertex(tok[2], n, lineno);
      if (u == v) throw ParseError(lineno, "self-loop arc");
      arcs.emplace_back(u, v);
      continue;
    }
    if (tok[0] == "o") {
      if (order) throw ParseError(lineno, "duplicate ordering line");
      if (static_cast<int>(tok.size()) != n + 1)
        throw ParseError(lineno, "ordering must list all " + std::to_string(n) + " vertices");
      std::vector<int> verts;
      for (size_t i = 1; i < tok.size(); ++i) verts.push_back(detail::parse_vertex(tok[i], n, lineno));
      order = std::move(verts);
      continue;
    }
    throw ParseError(lineno, "unrecognized line '" + tok[0] + " ...'");
  }
  if (n < 0) throw ParseError(lineno ? lineno : 1, "missing 'p dag <n> <m>' header");
  if (static_cast<long long>(arcs.size()) != m)
    throw ParseError(lineno ? lineno : 1, "header declares " + std::to_string(m) + " arcs, file has " +
                         std::to_string(arcs.size()));
  auto sorted = arcs;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ParseError(lineno ? lineno : 1, "duplicate arc");
  DagFile out{DiGraph(n, arcs), std::nullopt};
  if (order) {
    try {
      out.order = TopOrder::from_vertex_list(*order);
    } catch (const std::invalid_argument& e) {
      throw ParseError(lineno ? lineno : 1, std::string("bad ordering: ") + e.what());
    }
  }
  return out;
}

inline void write_dag(std::ostream& os, const DiGraph& g, const TopOrder* order = nullptr) {
  os << "p dag " << g.n() << " " << g.m() << "\n";
  for (auto [u, v] : g.arcs()) os << "a " << u + 1 << " " << v + 1 << "\n";
  if (order) {
    os << "o";
    for (int i = 0; i < order->n(); ++i) os << " " << order->at[i] + 1;
    os << "\n";
  }
}

// Ordering file: 1-based vertex ids, whitespace separated; an optional
// leading 'o' token and comment lines ('c' or '#') are accepted.
inline std::vector<int> read_order(std::istream& in) {
  std::string line;
  int lineno = 0;
  std::vector<int> verts;
  while (std::getline(in, line)) {
    ++lineno;
    auto tok = split_ws(line);
    if (tok.empty() || tok[0] == "c" || tok[0][0] == '#') continue;
    size_t start = tok[0] == "o" ? 1 : 0;
    for (size_t i = start; i < tok.size(); ++i) {
      long long v = parse_int(tok[i], lineno);
      if (v < 1) throw ParseError(lineno, "vertex ids are 1-based");
      verts.push_back(static_cast<int>(v) - 1);
    }
  }
  return verts;
}

inline UGraph read_gr(std::istream& in) {
  std::string line;
  int lineno = 0, n = -1;
  long long m = -1;
  std::vector<std::pair<int, int>> edges;
  while (std::getline(in, line)) {
    ++lineno;
    auto tok = split_ws(line);
    if (tok.empty() || tok[0] == "c") continue;
    if (tok[0] == "p") {
      if (n >= 0) throw ParseError(lineno, "duplicate header");
      if (tok.size() != 4 || tok[1] != "tw")
        throw ParseError(lineno, "expected 'p tw <n> <m>' header");
      n = static_cast<int>(parse_int(tok[2], lineno));
      m = parse_int(tok[3], lineno);
      if (n < 0 || m < 0) throw ParseError(lineno, "negative counts in header");
      continue;
    }
    if (n < 0) throw ParseError(lineno, "expected 'p tw <n> <m>' header");
    if (tok.size() != 2) throw ParseError(lineno, "expected '<u> <v>' edge line");
    int u = detail::parse_vertex(tok[0], n, lineno);
    int v = detail::parse_vertex(tok[1], n, lineno);
    if (u == v) throw ParseError(lineno, "self-loop edge");
    edges.emplace_back(u, v);
  }
  if (n < 0) throw ParseError(lineno ? lineno : 1, "missing 'p tw <n> <m>' header");
  if (static_cast<long long>(edges.size()) != m)
    throw ParseError(lineno ? lineno : 1, "header declares " + std::to_string(m) + " edges, file has " +
                         std::to_string(edges.size()));
  for (auto& [u, v] : edges)
    if (u > v) std::swap(u, v);
  auto sorted = edges;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ParseError(lineno ? lineno : 1, "duplicate edge");
  return UGraph(n, edges);
}

inline void write_gr(std::ostream& os, const UGraph& g) {
  os << "p tw " << g.n() << " " << g.m() << "\n";
  for (auto [u, v] : g.edges()) os << u + 1 << " " << v + 1 << "\n";
}

inline TreeDecomposition read_td(std::istream& in, int graph_n) {
  std::string line;
  int lineno = 0, nbags = -1;
  long long declared_width = 0, declared_n = 0;
  std::vector<std::vector<int>> bags;
  std::vector<char> bag_seen;
  std::vector<std::pair<int, int>> tedges;
  while (std::getline(in, line)) {
    ++lineno;
    auto tok = split_ws(line);
    if (tok.empty() || tok[0] == "c") continue;
    if (tok[0] == "s") {
      if (nbags >= 0) throw ParseError(lineno, "duplicate header");
      if (tok.size() != 5 || tok[1] != "td")
        throw ParseError(lineno, "expected 's td <bags> <max-bag-size> <n>' header");
      nbags = static_cast<int>(parse_int(tok[2], lineno));
      declared_width = parse_int(tok[3], lineno);
      declared_n = parse_int(tok[4], lineno);
      if (nbags < 0 || declared_width < 0) throw ParseError(lineno, "negative counts in header");
      if (declared_n != graph_n)
        throw ParseError(lineno, "decomposition is for " + std::to_string(declared_n) +
                             " vertices, graph has " + std::to_string(graph_n));
      bags.assign(nbags, {});
      bag_seen.assign(nbags, 0);
      continue;
    }
    if (nbags < 0) throw ParseError(lineno, "expected 's td ...' header");
    if (tok[0] == "b") {
      if (tok.size() < 2) throw ParseError(lineno, "expected 'b <id> <vertices...>'");
      int id = static_cast<int>(parse_int(tok[1], lineno));
      if (id < 1 || id > nbags) throw ParseError(lineno, "bag id out of range");
      if (bag_seen[id - 1]) throw ParseError(lineno, "duplicate bag " + std::to_string(id));
      bag_seen[id - 1] = 1;
      std::vector<int> bag;
      for (size_t i = 2; i < tok.size(); ++i)
        bag.push_back(detail::parse_vertex(tok[i], graph_n, lineno));
      std::sort(bag.begin(), bag.end());
      bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
      if (static_cast<long long>(bag.size()) > declared_width)
        throw ParseError(lineno, "bag exceeds declared maximum size");
      bags[id - 1] = std::move(bag);
      continue;
    }
    if (tok.size() != 2) throw ParseError(lineno, "expected '<bag> <bag>' tree edge line");
    int a = static_cast<int>(parse_int(tok[0], lineno));
    int b = static_cast<int>(parse_int(tok[1], lineno));
    if (a < 1 || a > nbags || b < 1 || b > nbags)
      throw ParseError(lineno, "tree edge bag id out of range");
    tedges.emplace_back(a - 1, b - 1);
  }
  if (nbags < 0) throw ParseError(lineno ? lineno : 1, "missing 's td ...' header");
  for (int i = 0; i < nbags; ++i)
    if (!bag_seen[i]) throw ParseError(lineno ? lineno : 1, "bag " + std::to_string(i + 1) + " missing");
  TreeDecomposition td;
  td.bags = std::move(bags);
  td.edges = std::move(tedges);
  return td;
}

inline void write_td(std::ostream& os, const TreeDecomposition& td, int graph_n) {
  size_t maxbag = 0;
  for (const auto& b : td.bags) maxbag = std::max(maxbag, b.size());
  os << "s td " << td.node_count() << " " << maxbag << " " << graph_n << "\n";
  for (int i = 0; i < td.node_count(); ++i) {
    os << "b " << i + 1;
    for (int v : td.bags[i]) os << " " << v + 1;
    os << "\n";
  }
  for (auto [a, b] : td.edges) os << a + 1 << " " << b + 1 << "\n";
}

}  // namespace mbt
