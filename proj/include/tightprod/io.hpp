#pragma once

// Text formats.
//
//   tpg 1            graph: "<n> <m>", then m lines "<u> <v>"
//   tpp 1            permutation graph: "<n> <d> <p>", d image lines, and a
//                    pairing line when p = 1
//   tpm 1            vertex map "<n_src>", one line of images, then optionally
//                    "darts <count>" and one line of dart images
//   edge coloring    "<edge-id> <color>" per line
//   semi-coloring    "<edge-id> solid <i>" or "<edge-id> bright <i> <j>"
//   family           "<v1> <v2> : <images>" per oriented g1 edge, in dart order
//   experiment       "key = value" lines
//
// Blank lines and lines starting with '#' are skipped everywhere.

#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "tightprod/errors.hpp"
#include "tightprod/factorization.hpp"
#include "tightprod/graph.hpp"
#include "tightprod/semi_coloring.hpp"
#include "tightprod/spectral.hpp"
#include "tightprod/tight_product.hpp"

namespace tightprod::io {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-blank, non-comment line; nullopt at end of input.
  std::optional<std::string> next() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos || line[first] == '#') continue;
      return line;
    }
    return std::nullopt;
  }

  std::string expect(const char* what) {
    auto l = next();
    if (!l) throw ParseError(line_ + 1, std::string("unexpected end of input, expected ") + what);
    return *l;
  }

  int line() const { return line_; }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, what); }

  // All whitespace-separated integers on the line, rejecting anything else.
  std::vector<long long> ints(const std::string& line) const {
    std::istringstream ss(line);
    std::vector<long long> out;
    std::string tok;
    while (ss >> tok) out.push_back(to_int(tok));
    return out;
  }

  long long to_int(const std::string& tok) const {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      fail("expected an integer, got '" + tok + "'");
    }
    if (used != tok.size()) fail("expected an integer, got '" + tok + "'");
    return v;
  }

 private:
  std::istream& in_;
  int line_ = 0;
};

inline void expect_magic(LineReader& r, const std::string& magic) {
  const std::string got = r.expect(magic.c_str());
  std::istringstream ss(got);
  std::string a, b, extra;
  ss >> a >> b;
  if (a + " " + b != magic || (ss >> extra)) r.fail("expected header '" + magic + "', got '" + got + "'");
}

inline void expect_end(LineReader& r) {
  if (r.next()) r.fail("unexpected trailing content");
}

inline MultiGraph read_graph_body(LineReader& r) {
  const auto head = r.ints(r.expect("'<n> <m>'"));
  if (head.size() != 2 || head[0] < 0 || head[1] < 0) r.fail("expected '<n> <m>' with non-negative values");
  const int n = static_cast<int>(head[0]);
  std::vector<Edge> edges;
  for (long long i = 0; i < head[1]; ++i) {
    const auto e = r.ints(r.expect("an edge line"));
    if (e.size() != 2) r.fail("expected '<u> <v>'");
    if (e[0] < 0 || e[0] >= n || e[1] < 0 || e[1] >= n) r.fail("edge endpoint out of range");
    edges.push_back({static_cast<Vertex>(e[0]), static_cast<Vertex>(e[1])});
  }
  expect_end(r);
  return MultiGraph(n, edges);
}

inline Permutation read_permutation_line(LineReader& r, int n, const char* what) {
  const auto imgs = r.ints(r.expect(what));
  if (static_cast<int>(imgs.size()) != n) r.fail(std::string(what) + ": expected " + std::to_string(n) + " images");
  std::vector<Vertex> v(imgs.begin(), imgs.end());
  try {
    return Permutation(std::move(v));
  } catch (const InputError& e) {
    r.fail(std::string(what) + ": " + e.what());
  }
}

inline PermutationGraph read_permutation_graph_body(LineReader& r) {
  const auto head = r.ints(r.expect("'<n> <d> <p>'"));
  if (head.size() != 3 || head[0] < 0 || head[1] < 0 || (head[2] != 0 && head[2] != 1))
    r.fail("expected '<n> <d> <p>' with p in {0,1}");
  PermutationGraph pg;
  pg.n = static_cast<int>(head[0]);
  for (long long i = 0; i < head[1]; ++i) pg.generators.push_back(read_permutation_line(r, pg.n, "generator"));
  if (head[2] == 1) {
    pg.pairing = read_permutation_line(r, pg.n, "pairing");
    if (!pg.pairing->is_involution() || pg.pairing->has_fixed_point())
      r.fail("pairing is not a fixed-point-free involution");
  }
  expect_end(r);
  return pg;
}

inline MultiGraph read_graph(std::istream& in) {
  LineReader r(in);
  expect_magic(r, "tpg 1");
  return read_graph_body(r);
}

inline PermutationGraph read_permutation_graph(std::istream& in) {
  LineReader r(in);
  expect_magic(r, "tpp 1");
  return read_permutation_graph_body(r);
}

struct AnyGraph {
  MultiGraph graph;
  std::optional<PermutationGraph> presentation;
};

// Accepts either format.
inline AnyGraph read_any_graph(std::istream& in) {
  LineReader r(in);
  const std::string magic = r.expect("'tpg 1' or 'tpp 1'");
  std::istringstream ss(magic);
  std::string a, b, extra;
  ss >> a >> b;
  if (b != "1" || (ss >> extra)) r.fail("unknown header '" + magic + "'");
  if (a == "tpg") return {read_graph_body(r), std::nullopt};
  if (a == "tpp") {
    PermutationGraph pg = read_permutation_graph_body(r);
    return {from_permutations(pg), pg};
  }
  r.fail("unknown header '" + magic + "'");
}

inline void write_graph(std::ostream& out, const MultiGraph& g) {
  out << "tpg 1\n" << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

inline void write_images(std::ostream& out, const Permutation& p) {
  for (int i = 0; i < p.size(); ++i) out << (i ? " " : "") << p(i);
  out << '\n';
}

inline void write_permutation_graph(std::ostream& out, const PermutationGraph& pg) {
  out << "tpp 1\n" << pg.n << ' ' << pg.generators.size() << ' ' << (pg.pairing ? 1 : 0) << '\n';
  for (const auto& s : pg.generators) write_images(out, s);
  if (pg.pairing) write_images(out, *pg.pairing);
}

inline EdgeColoring read_edge_coloring(std::istream& in, const MultiGraph& g) {
  LineReader r(in);
  EdgeColoring c;
  c.color_of.assign(g.num_edges(), -1);
  while (auto line = r.next()) {
    const auto v = r.ints(*line);
    if (v.size() != 2) r.fail("expected '<edge-id> <color>'");
    if (v[0] < 0 || v[0] >= g.num_edges()) r.fail("edge id out of range");
    if (v[1] < 0 || v[1] > 63) r.fail("color out of range");
    if (c.color_of[v[0]] >= 0) r.fail("edge listed twice");
    c.color_of[v[0]] = static_cast<int>(v[1]);
    c.num_colors = std::max(c.num_colors, static_cast<int>(v[1]) + 1);
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (c.color_of[e] < 0) throw ParseError(r.line(), "edge " + std::to_string(e) + " has no color");
  return c;
}

inline void write_edge_coloring(std::ostream& out, const EdgeColoring& c) {
  for (std::size_t e = 0; e < c.color_of.size(); ++e) out << e << ' ' << c.color_of[e] << '\n';
}

inline SemiColoring read_semi_coloring(std::istream& in, const MultiGraph& g, int delta) {
  LineReader r(in);
  SemiColoring sc;
  sc.delta = delta;
  std::vector<char> seen(g.num_edges(), 0);
  sc.color_of.assign(g.num_edges(), SemiColor::solid(1));
  while (auto line = r.next()) {
    std::istringstream ss(*line);
    std::string id, kind, a, b, extra;
    ss >> id >> kind >> a;
    const long long e = r.to_int(id);
    if (e < 0 || e >= g.num_edges()) r.fail("edge id out of range");
    if (seen[e]) r.fail("edge listed twice");
    seen[e] = 1;
    if (kind == "solid") {
      if (ss >> extra) r.fail("trailing content after solid color");
      const long long i = r.to_int(a);
      if (i < 1 || i > delta) r.fail("color out of range");
      sc.color_of[e] = SemiColor::solid(static_cast<int>(i));
    } else if (kind == "bright") {
      if (!(ss >> b) || (ss >> extra)) r.fail("expected 'bright <i> <j>'");
      const long long i = r.to_int(a), j = r.to_int(b);
      if (i < 1 || i > delta || j < 1 || j > delta || i == j) r.fail("bright pair out of range");
      sc.color_of[e] = SemiColor::bright(static_cast<int>(i), static_cast<int>(j));
    } else {
      r.fail("expected 'solid' or 'bright', got '" + kind + "'");
    }
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (!seen[e]) throw ParseError(r.line(), "edge " + std::to_string(e) + " has no color");
  return sc;
}

inline void write_semi_coloring(std::ostream& out, const SemiColoring& sc) {
  for (std::size_t e = 0; e < sc.color_of.size(); ++e) {
    const SemiColor& c = sc.color_of[e];
    if (c.is_solid())
      out << e << " solid " << c.first() << '\n';
    else
      out << e << " bright " << c.first() << ' ' << c.second() << '\n';
  }
}

inline void write_family(std::ostream& out, const NeighborlyFamily& nf) {
  for (Dart d = 0; d < nf.g1.num_darts(); ++d) {
    out << nf.g1.dart_vertex(d) << ' ' << nf.g1.head(d) << " :";
    for (int u = 0; u < nf.sigma[d].size(); ++u) out << ' ' << nf.sigma[d](u);
    out << '\n';
  }
}

// One line per dart of g1 in dart order; endpoints must agree with g1.
inline NeighborlyFamily read_family(std::istream& in, const MultiGraph& g1, const MultiGraph& g2) {
  LineReader r(in);
  NeighborlyFamily nf{g1, g2, {}};
  for (Dart d = 0; d < g1.num_darts(); ++d) {
    const std::string line = r.expect("a family line");
    const auto colon = line.find(':');
    if (colon == std::string::npos) r.fail("expected '<v1> <v2> : <images>'");
    const auto ends = r.ints(line.substr(0, colon));
    if (ends.size() != 2 || ends[0] != g1.dart_vertex(d) || ends[1] != g1.head(d))
      r.fail("endpoints do not match dart " + std::to_string(d) + " of g1");
    const auto imgs = r.ints(line.substr(colon + 1));
    if (static_cast<int>(imgs.size()) != g2.num_vertices()) r.fail("expected one image per vertex of g2");
    try {
      nf.sigma.emplace_back(std::vector<Vertex>(imgs.begin(), imgs.end()));
    } catch (const InputError& e) {
      r.fail(e.what());
    }
  }
  expect_end(r);
  return nf;
}

struct MapFile {
  std::vector<Vertex> vertex_map;
  std::optional<std::vector<Dart>> dart_map;
};

inline MapFile read_map(std::istream& in) {
  LineReader r(in);
  expect_magic(r, "tpm 1");
  const auto head = r.ints(r.expect("'<n_src>'"));
  if (head.size() != 1 || head[0] < 0) r.fail("expected '<n_src>'");
  MapFile m;
  const auto vs = head[0] == 0 ? std::vector<long long>{} : r.ints(r.expect("vertex images"));
  if (static_cast<long long>(vs.size()) != head[0]) r.fail("expected " + std::to_string(head[0]) + " vertex images");
  m.vertex_map.assign(vs.begin(), vs.end());
  if (auto line = r.next()) {
    std::istringstream ss(*line);
    std::string kw, count, extra;
    ss >> kw >> count;
    if (kw != "darts" || (ss >> extra)) r.fail("expected 'darts <count>'");
    const long long c = r.to_int(count);
    if (c < 0) r.fail("negative dart count");
    const auto ds = c == 0 ? std::vector<long long>{} : r.ints(r.expect("dart images"));
    if (static_cast<long long>(ds.size()) != c) r.fail("expected " + std::to_string(c) + " dart images");
    m.dart_map = std::vector<Dart>(ds.begin(), ds.end());
    expect_end(r);
  }
  return m;
}

inline void write_map(std::ostream& out, const CoveringMap& cm) {
  out << "tpm 1\n" << cm.vertex_map.size() << '\n';
  for (std::size_t i = 0; i < cm.vertex_map.size(); ++i) out << (i ? " " : "") << cm.vertex_map[i];
  if (!cm.vertex_map.empty()) out << '\n';
  out << "darts " << cm.dart_map.size() << '\n';
  for (std::size_t i = 0; i < cm.dart_map.size(); ++i) out << (i ? " " : "") << cm.dart_map[i];
  if (!cm.dart_map.empty()) out << '\n';
}

inline void write_matching(std::ostream& out, const std::vector<EdgeId>& m) {
  for (EdgeId e : m) out << e << '\n';
}

inline std::vector<EdgeId> read_matching(std::istream& in, const MultiGraph& g) {
  LineReader r(in);
  std::vector<EdgeId> m;
  while (auto line = r.next()) {
    const auto v = r.ints(*line);
    if (v.size() != 1 || v[0] < 0 || v[0] >= g.num_edges()) r.fail("expected one edge id in range");
    m.push_back(static_cast<EdgeId>(v[0]));
  }
  return m;
}

template <class Reader>
auto read_file(const std::string& path, Reader reader) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return reader(in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path + ": " + e.what());
  }
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << content;
  if (!out) throw InputError("write failed for '" + path + "'");
}

// Experiment config. `base` is a tpp/tpg path (relative to the config file) or
// "random:<vertices>,<degree>"; `n` may be a comma-separated list.
inline RandomProductConfig read_experiment_config(std::istream& in, const std::string& dir = ".",
                                                  std::optional<std::uint64_t> seed_override = std::nullopt) {
  LineReader r(in);
  RandomProductConfig cfg;
  std::optional<std::string> base;
  while (auto line = r.next()) {
    const auto eq = line->find('=');
    if (eq == std::string::npos) r.fail("expected 'key = value'");
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t"), b = s.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line->substr(0, eq)), value = trim(line->substr(eq + 1));
    if (key == "seed") {
      try {
        std::size_t used = 0;
        cfg.seed = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument("seed");
      } catch (const std::exception&) {
        r.fail("seed must be a non-negative integer");
      }
    } else if (key == "d") {
      const long long d = r.to_int(value);
      if (d < 1) r.fail("d must be positive");
      cfg.base.generators.resize(static_cast<std::size_t>(d));
    } else if (key == "n") {
      cfg.n.clear();
      std::string v = value;
      std::replace(v.begin(), v.end(), ',', ' ');
      for (long long x : r.ints(v)) {
        if (x < 1) r.fail("n must be positive");
        cfg.n.push_back(static_cast<int>(x));
      }
      if (cfg.n.empty()) r.fail("n is empty");
    } else if (key == "trials") {
      const long long t = r.to_int(value);
      if (t < 1) r.fail("trials must be positive");
      cfg.trials = static_cast<int>(t);
    } else if (key == "kmax") {
      const long long k = r.to_int(value);
      if (k < 1) r.fail("kmax must be positive");
      cfg.kmax = static_cast<int>(k);
    } else if (key == "base") {
      base = value;
    } else if (key == "compare_lift") {
      if (value != "true" && value != "false") r.fail("compare_lift must be true or false");
      cfg.compare_lift = value == "true";
    } else {
      r.fail("unknown key '" + key + "'");
    }
  }
  if (seed_override) cfg.seed = *seed_override;
  const int d = static_cast<int>(cfg.base.generators.size());
  if (d == 0) throw ParseError(r.line(), "missing key 'd'");
  if (!base) throw ParseError(r.line(), "missing key 'base'");
  if (base->rfind("random:", 0) == 0) {
    std::string spec = base->substr(7);
    std::replace(spec.begin(), spec.end(), ',', ' ');
    const auto v = r.ints(spec);
    if (v.size() != 2) throw ParseError(r.line(), "base random spec must be 'random:<vertices>,<degree>'");
    if (v[1] != 2 * d) throw ParseError(r.line(), "base degree must equal 2d");
    cfg.base = random_base(static_cast<int>(v[0]), static_cast<int>(v[1]), cfg.seed);
  } else {
    const std::string path = (!base->empty() && (*base)[0] == '/') ? *base : dir + "/" + *base;
    AnyGraph g = read_file(path, read_any_graph);
    if (g.presentation && !g.presentation->pairing) {
      cfg.base = *g.presentation;
    } else {
      if (g.graph.regular_degree() != 2 * d) throw InputError(path + ": base must be 2d-regular");
      cfg.base = to_permutation_graph(two_factorization(g.graph), g.graph.num_vertices());
    }
    if (static_cast<int>(cfg.base.generators.size()) != d) throw InputError(path + ": base has the wrong degree");
  }
  return cfg;
}

}  // namespace tightprod::io
