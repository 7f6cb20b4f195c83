// Command-line front end: lhs / alphabet / permdag / mbt / verify / oracle.
// Output is line-oriented `key: value`; exit codes: 0 success, 1 infeasible
// or infinite result, 2 input error, 4 internal cross-check failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mbt/alphabet.hpp"
#include "mbt/graph_io.hpp"
#include "mbt/lhs.hpp"
#include "mbt/mbt_dp.hpp"
#include "mbt/oracles.hpp"
#include "mbt/permdag.hpp"
#include "mbt/sequence.hpp"
#include "mbt/tree_decomposition.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_infeasible = 1;
constexpr int exit_input = 2;
constexpr int exit_internal = 4;

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

template <class Seq>
std::string join(const Seq& xs, int shift = 0) {
  std::ostringstream os;
  bool first = true;
  for (auto x : xs) {
    if (!first) os << " ";
    os << x + shift;
    first = false;
  }
  return os.str();
}

// First meaningful token decides the file kind ("p dag ..." vs "p tw ...").
std::string sniff_format(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto tok = mbt::split_ws(line);
    if (tok.empty() || tok[0] == "c" || tok[0][0] == '#') continue;
    if (tok[0] == "p" && tok.size() >= 2) return tok[1];
    if (tok[0] == "s" && tok.size() >= 2) return tok[1];
    return tok[0];
  }
  return "";
}

struct LhsArgs {
  std::string file = "-";
  bool witness = false, stream = false, pretty = false, oracle = false;
};

int cmd_lhs(const LhsArgs& a) {
  std::istringstream in(slurp(a.file));
  if (a.stream) {
    // The stream accumulator wants the label universe up front, so the CLI
    // buffers the tokens, rank-compresses, then replays them one at a time.
    std::vector<long long> raw;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      auto tok = mbt::split_ws(line);
      if (!tok.empty() && tok[0][0] == '#') continue;
      for (const auto& t : tok) raw.push_back(mbt::parse_int(t, lineno));
    }
    mbt::Sequence s = mbt::Sequence::from_values(raw);
    mbt::LhsStream st(std::max(s.k, 1));
    for (int x : s.items) {
      st.feed(x);
      std::cout << st.current_length() << "\n";
    }
    return exit_ok;
  }
  if (a.oracle && a.witness)
    throw std::runtime_error("--witness is not available with --oracle");
  std::vector<mbt::Sequence> seqs = mbt::read_sequences(in);
  if (seqs.empty()) seqs.push_back(mbt::Sequence::from_values({}));
  for (const auto& s : seqs) {
    if (a.oracle) {
      std::cout << "length: " << mbt::brute_lhs(s) << "\n";
      continue;
    }
    mbt::LhsResult r = mbt::lhs_dp(s);
    if (a.pretty)
      std::cout << "# kept " << r.length << " of " << s.n() << " labels\n";
    std::cout << "length: " << r.length << "\n";
    if (a.witness) std::cout << "witness: " << join(mbt::lhs_reconstruct(r)) << "\n";
  }
  return exit_ok;
}

struct AlphabetArgs {
  std::string file = "-", order;
  bool witness = false, pretty = false;
};

int cmd_alphabet(const AlphabetArgs& a) {
  std::istringstream in(slurp(a.file));
  mbt::DagFile df = mbt::read_dag(in);
  std::optional<mbt::TopOrder> order = df.order;
  if (!a.order.empty()) {
    std::istringstream of(slurp(a.order));
    std::vector<int> verts = mbt::read_order(of);
    if (static_cast<int>(verts.size()) != df.g.n())
      throw std::runtime_error("ordering lists " + std::to_string(verts.size()) +
                               " vertices, graph has " + std::to_string(df.g.n()));
    order = mbt::TopOrder::from_vertex_list(verts);
  }
  if (!order) throw std::runtime_error("no ordering: provide --order or an 'o' line");
  if (!mbt::is_topological(df.g, *order)) throw std::runtime_error("ordering is not topological");

  auto greedy = mbt::greedy_assign(df.g, *order);
  auto minmax = mbt::minmax_alpha(df.g, *order);
  auto lp = mbt::min_alpha_lp(df.g, *order);
  mbt::PolyhedronResult poly = mbt::polyhedron_feasible(df.g, *order);
  if (!greedy) {
    // Infinite alphabet: the polyhedron must agree that nothing is feasible.
    if (poly.feasible || lp) {
      std::cerr << "internal error: greedy says infinite, polyhedron disagrees\n";
      return exit_internal;
    }
    std::cout << "alpha: inf\n";
    return exit_infeasible;
  }
  if (!minmax || !lp || !poly.feasible || greedy->alpha != minmax->alpha ||
      static_cast<long long>(greedy->alpha) != *lp) {
    std::cerr << "internal error: alpha cross-check failed (greedy " << greedy->alpha
              << ", minmax " << (minmax ? std::to_string(minmax->alpha) : "inf") << ", lp "
              << (lp ? std::to_string(*lp) : "inf") << ")\n";
    return exit_internal;
  }
  if (a.pretty)
    std::cout << "# " << greedy->alpha << " labels suffice for " << df.g.n() << " vertices\n";
  std::cout << "alpha: " << greedy->alpha << "\n";
  std::cout << "sequence: " << join(mbt::label_sequence(*greedy, *order)) << "\n";
  std::cout << "minmax_path: " << join(minmax->path, 1) << "\n";
  std::cout << "lp_value: " << *lp << "\n";
  if (a.witness) std::cout << "lp_witness: " << join(poly.x) << "\n";
  return exit_ok;
}

struct PermdagArgs {
  std::string file = "-";
  bool pretty = false;
};

int cmd_permdag(const PermdagArgs& a) {
  std::istringstream in(slurp(a.file));
  std::vector<mbt::Sequence> seqs = mbt::read_sequences(in);
  mbt::Sequence s = seqs.empty() ? mbt::Sequence::from_values({}) : seqs.front();
  mbt::DiGraph g = mbt::build_permdag(s);
  if (a.pretty) std::cout << "c comparison DAG of " << s.n() << " labels\n";
  mbt::write_dag(std::cout, g);
  return exit_ok;
}

struct MbtArgs {
  std::string file = "-", td;
  bool heuristic = false, pretty = false, oracle = false;
  int root = 0;  // 1-based; 0 = unrooted
};

int cmd_mbt(const MbtArgs& a) {
  std::istringstream in(slurp(a.file));
  mbt::UGraph g = mbt::read_gr(in);
  if (a.root < 0 || a.root > g.n()) throw std::runtime_error("--root out of range");
  if (a.oracle) {
    int size = a.root ? mbt::brute_mbt_undirected_rooted(g, a.root - 1) : mbt::brute_mbt_undirected(g);
    std::cout << "size: " << size << "\n";
    return exit_ok;
  }
  mbt::TreeDecomposition td;
  if (!a.td.empty()) {
    std::istringstream tf(slurp(a.td));
    td = mbt::read_td(tf, g.n());
  } else if (a.heuristic) {
    td = mbt::heuristic_decomposition(g);
  } else {
    throw std::runtime_error("need --td <file> or --heuristic-td");
  }
  if (auto why = mbt::validate_decomposition(g, td))
    throw std::runtime_error("invalid decomposition: " + *why);
  mbt::MbtResult r = a.root ? mbt::rooted_mbt(g, td, a.root - 1) : mbt::unrooted_mbt(g, td);
  if (a.pretty) std::cout << "# binary tree on " << r.size << " of " << g.n() << " vertices\n";
  std::cout << "size: " << r.size << "\n";
  for (auto [u, v] : r.edges) std::cout << "edge: " << u + 1 << " " << v + 1 << "\n";
  return exit_ok;
}

struct VerifyArgs {
  std::string file = "-", order, td;
};

int cmd_verify(const VerifyArgs& a) {
  std::string text = slurp(a.file);
  std::string kind = sniff_format(text);
  if (kind == "dag") {
    std::istringstream in(text);
    mbt::DagFile df = mbt::read_dag(in);
    std::optional<mbt::TopOrder> order = df.order;
    if (!a.order.empty()) {
      std::istringstream of(slurp(a.order));
      std::vector<int> verts = mbt::read_order(of);
      if (static_cast<int>(verts.size()) != df.g.n())
        throw std::runtime_error("ordering size mismatch");
      order = mbt::TopOrder::from_vertex_list(verts);
    }
    if (!order) throw std::runtime_error("no ordering: provide --order or an 'o' line");
    bool topo = mbt::is_topological(df.g, *order);
    std::cout << "topological: " << (topo ? "yes" : "no") << "\n";
    if (!topo) return exit_infeasible;
    bool trans = mbt::is_transitively_closed(df.g);
    std::cout << "transitive: " << (trans ? "yes" : "no") << "\n";
    auto umb = mbt::find_umbrella(df.g, *order);
    std::cout << "umbrella_free: " << (umb ? "no" : "yes") << "\n";
    if (umb)
      std::cout << "umbrella: " << umb->u + 1 << " " << umb->w + 1 << " " << umb->v + 1 << "\n";
    return trans && !umb ? exit_ok : exit_infeasible;
  }
  if (kind == "tw") {
    std::istringstream in(text);
    mbt::UGraph g = mbt::read_gr(in);
    if (a.td.empty()) throw std::runtime_error("verifying a graph needs --td <file>");
    std::istringstream tf(slurp(a.td));
    mbt::TreeDecomposition td = mbt::read_td(tf, g.n());
    auto why = mbt::validate_decomposition(g, td);
    std::cout << "valid: " << (why ? "no" : "yes") << "\n";
    if (why) {
      std::cout << "violation: " << *why << "\n";
      return exit_infeasible;
    }
    std::cout << "width: " << td.width() << "\n";
    return exit_ok;
  }
  throw std::runtime_error("cannot tell input kind (want 'p dag' or 'p tw')");
}

struct OracleArgs {
  std::string kind, file = "-";
};

int cmd_oracle(const OracleArgs& a) {
  std::string text = slurp(a.file);
  if (a.kind == "lhs") {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      auto tok = mbt::split_ws(line);
      if (tok.empty() || tok[0][0] == '#') continue;
      std::vector<long long> raw;
      for (const auto& t : tok) raw.push_back(mbt::parse_int(t, lineno));
      std::cout << join(raw) << " -> " << mbt::brute_lhs(mbt::Sequence::from_values(raw)) << "\n";
    }
    return exit_ok;
  }
  if (a.kind == "mbt") {
    std::istringstream in(text);
    mbt::UGraph g = mbt::read_gr(in);
    std::cout << a.file << " -> " << mbt::brute_mbt_undirected(g) << "\n";
    return exit_ok;
  }
  if (a.kind == "alpha") {
    std::istringstream in(text);
    mbt::DagFile df = mbt::read_dag(in);
    auto v = mbt::brute_alpha(df.g);
    std::cout << a.file << " -> " << (v ? std::to_string(*v) : "inf") << "\n";
    return exit_ok;
  }
  throw std::runtime_error("unknown oracle kind '" + a.kind + "' (want lhs, mbt, or alpha)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"heapable subsequences, permutation-DAG alphabets, bounded-treewidth binary trees"};
  app.require_subcommand(1);

  LhsArgs la;
  auto* lhs = app.add_subcommand("lhs", "longest heapable subsequence per input line");
  lhs->add_option("file", la.file, "sequence file, '-' for stdin");
  lhs->add_flag("--witness", la.witness, "print 1-based kept indices");
  lhs->add_flag("--stream", la.stream, "feed labels one at a time, print running lengths");
  lhs->add_flag("--oracle", la.oracle, "use the exhaustive reference instead of the DP");
  lhs->add_flag("--pretty", la.pretty, "human summary lines");

  AlphabetArgs aa;
  auto* alphabet = app.add_subcommand("alphabet", "minimum alphabet for a permutation DAG with ordering");
  alphabet->add_option("file", aa.file, "dag file, '-' for stdin");
  alphabet->add_option("--order", aa.order, "ordering file (overrides an embedded 'o' line)");
  alphabet->add_flag("--witness", aa.witness, "print the polyhedron witness point");
  alphabet->add_flag("--pretty", aa.pretty, "human summary lines");

  PermdagArgs pa;
  auto* permdag = app.add_subcommand("permdag", "comparison DAG of a sequence");
  permdag->add_option("file", pa.file, "sequence file, '-' for stdin");
  permdag->add_flag("--pretty", pa.pretty, "human summary lines");

  MbtArgs ma;
  auto* mbtc = app.add_subcommand("mbt", "maximum binary tree of a graph");
  mbtc->add_option("file", ma.file, "graph file (p tw), '-' for stdin");
  mbtc->add_option("--td", ma.td, "tree decomposition file (s td)");
  mbtc->add_flag("--heuristic-td", ma.heuristic, "build a min-degree heuristic decomposition");
  mbtc->add_option("--root", ma.root, "1-based root vertex (rooted variant, degree <= 2)");
  mbtc->add_flag("--oracle", ma.oracle, "use the exhaustive reference instead of the DP");
  mbtc->add_flag("--pretty", ma.pretty, "human summary lines");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "check orderings or decompositions");
  verify->add_option("file", va.file, "dag or graph file, '-' for stdin");
  verify->add_option("--order", va.order, "ordering file");
  verify->add_option("--td", va.td, "tree decomposition file");

  OracleArgs oa;
  auto* oracle = app.add_subcommand("oracle", "regenerate fixture lines from brute-force values");
  oracle->add_option("kind", oa.kind, "lhs, mbt, or alpha")->required();
  oracle->add_option("file", oa.file, "input file, '-' for stdin");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_name() == "CallForHelp" ? exit_ok : exit_input;
  }

  try {
    if (lhs->parsed()) return cmd_lhs(la);
    if (alphabet->parsed()) return cmd_alphabet(aa);
    if (permdag->parsed()) return cmd_permdag(pa);
    if (mbtc->parsed()) return cmd_mbt(ma);
    if (verify->parsed()) return cmd_verify(va);
    if (oracle->parsed()) return cmd_oracle(oa);
  } catch (const mbt::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_input;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_input;
  }
  return exit_input;
}
