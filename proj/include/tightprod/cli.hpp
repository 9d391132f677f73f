#pragma once

// Command-line front end. Exit codes: 0 success, 2 proven negative,
// 3 undecided within budget, 64 malformed input, 70 internal error.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tightprod/errors.hpp"
#include "tightprod/factorization.hpp"
#include "tightprod/generators.hpp"
#include "tightprod/io.hpp"
#include "tightprod/semi_coloring.hpp"
#include "tightprod/spectral.hpp"
#include "tightprod/tight_product.hpp"
#include "tightprod/words.hpp"

namespace tightprod::cli {

inline constexpr int kOk = 0;
inline constexpr int kNegative = 2;
inline constexpr int kUndecided = 3;
inline constexpr int kInputError = 64;
inline constexpr int kInternalError = 70;

namespace detail {

inline std::string to_text(const auto& writer, const auto& value) {
  std::ostringstream out;
  writer(out, value);
  return out.str();
}

// Writes to `path`, or to `out` when the path is empty or "-".
inline void emit(std::ostream& out, const std::string& path, const std::string& content) {
  if (path.empty() || path == "-")
    out << content;
  else
    io::write_file(path, content);
}

inline MultiGraph load_graph(const std::string& path) { return io::read_file(path, io::read_any_graph).graph; }

inline void write_product(const std::string& dir, const TightProduct& tp) {
  std::filesystem::create_directories(dir);
  io::write_file(dir + "/h.tpg", to_text(io::write_graph, tp.h()));
  io::write_file(dir + "/g1.tpg", to_text(io::write_graph, tp.g1()));
  io::write_file(dir + "/g2.tpg", to_text(io::write_graph, tp.g2()));
  io::write_file(dir + "/family.txt", to_text(io::write_family, family_from_product(tp)));
  io::write_file(dir + "/proj1.tpm", to_text(io::write_map, tp.proj1));
  io::write_file(dir + "/proj2.tpm", to_text(io::write_map, tp.proj2));
}

inline void report_product(std::ostream& out, const TightProduct& tp) {
  const ProductCheck check = verify_product(tp);
  ensure(check.ok(), "product failed verification");
  const Structure s = structural_predicates(tp.h());
  out << "product: " << tp.h().num_vertices() << " vertices, " << tp.h().num_edges() << " edges\n";
  out << "proj1: covering, number " << check.first.covering_number.value_or(-1) << '\n';
  out << "proj2: covering, number " << check.second.covering_number.value_or(-1) << '\n';
  out << "components: " << s.num_components << ", bipartite: " << (s.bipartite ? "yes" : "no") << '\n';
}

inline int search_exit(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return kOk;
    case SearchStatus::absent: return kNegative;
    case SearchStatus::undecided: return kUndecided;
  }
  return kInternalError;
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tight products of graphs: construction, verification and experiments"};
  app.require_subcommand(1);
  int code = kOk;
  std::uint64_t seed = 0;
  auto seed_option = [&](CLI::App* sub) { return sub->add_option("--seed", seed, "random seed (default 0)"); };

  // gen
  auto* gen = app.add_subcommand("gen", "generate a graph");
  std::string gen_kind, gen_out, gen_coloring_out;
  std::vector<int> gen_args;
  bool gen_permutation = false;
  gen->add_option("kind", gen_kind, "cycle|path|complete|complete-bipartite|petersen|prism|hypercube|random-regular|gadget")
      ->required();
  gen->add_option("args", gen_args, "size parameters");
  gen->add_option("--out", gen_out, "output file (default stdout)");
  gen->add_option("--coloring-out", gen_coloring_out, "gadget: write its semi-coloring here");
  gen->add_flag("--permutation", gen_permutation, "random-regular: permutation model, written as tpp");
  seed_option(gen);

  // verify-cover
  auto* cover = app.add_subcommand("verify-cover", "check that a map is a covering");
  std::string cover_src, cover_dst, cover_map;
  cover->add_option("source", cover_src)->required();
  cover->add_option("target", cover_dst)->required();
  cover->add_option("map", cover_map)->required();
  seed_option(cover);

  // product
  auto* product = app.add_subcommand("product", "construct and verify a tight product");
  std::string prod_mode, prod_g1, prod_g2, prod_out, prod_semi, prod_coloring, prod_m1, prod_m2;
  std::uint64_t prod_cap = 50'000'000;
  product->add_option("mode", prod_mode, "even|odd-matching|semicolor|brute")
      ->required()
      ->check(CLI::IsMember({"even", "odd-matching", "semicolor", "brute"}));
  product->add_option("g1", prod_g1)->required();
  product->add_option("g2", prod_g2)->required();
  product->add_option("--out", prod_out, "directory for h/g1/g2, family and projection maps");
  product->add_option("--semi", prod_semi, "semicolor: semi-coloring of g1");
  product->add_option("--coloring", prod_coloring, "semicolor: 1-factorization of g2 as an edge coloring");
  product->add_option("--m1", prod_m1, "odd-matching: perfect matching of g1");
  product->add_option("--m2", prod_m2, "odd-matching: perfect matching of g2");
  product->add_option("--node-cap", prod_cap, "search node cap");
  seed_option(product);

  // semicolor / vizing4 / edgechroma
  auto* semi = app.add_subcommand("semicolor", "semi-color a graph (subcubic, or a supported regular family)");
  std::string semi_g, semi_out;
  semi->add_option("graph", semi_g)->required();
  semi->add_option("--out", semi_out);
  seed_option(semi);

  auto* viz = app.add_subcommand("vizing4", "4-edge-color a cubic graph");
  std::string viz_g, viz_out;
  viz->add_option("graph", viz_g)->required();
  viz->add_option("--out", viz_out);
  seed_option(viz);

  auto* chroma = app.add_subcommand("edgechroma", "exact edge coloring within a color budget");
  std::string chroma_g, chroma_out;
  int chroma_budget = 0;
  std::uint64_t chroma_cap = 50'000'000;
  chroma->add_option("graph", chroma_g)->required();
  chroma->add_option("--budget", chroma_budget)->required();
  chroma->add_option("--node-cap", chroma_cap);
  chroma->add_option("--out", chroma_out);
  seed_option(chroma);

  // classify
  auto* classify = app.add_subcommand("classify", "class-1 test through the gadget product");
  std::string cls_g, cls_out, cls_coloring;
  int cls_k = 1;
  std::uint64_t cls_cap = 50'000'000;
  classify->add_option("graph", cls_g)->required();
  classify->add_option("--k", cls_k)->required();
  classify->add_option("--coloring", cls_coloring, "use this (2k+1)-edge-coloring instead of searching");
  classify->add_option("--node-cap", cls_cap);
  classify->add_option("--out", cls_out, "directory for the witness product");
  seed_option(classify);

  // words
  auto* words = app.add_subcommand("words", "word maps");
  std::string words_op, words_w;
  int words_n = 100, words_d = 2, words_k = 1, words_jobs = 1;
  std::uint64_t words_samples = 100000;
  bool words_exact = false;
  words->add_option("op", words_op, "order|reduce|p-estimate|count-imprimitive")
      ->required()
      ->check(CLI::IsMember({"order", "reduce", "p-estimate", "count-imprimitive"}));
  words->add_option("word", words_w, "letters such as \"1 2 -1\"");
  words->add_option("--n", words_n);
  words->add_option("--d", words_d);
  words->add_option("--k", words_k);
  words->add_option("--samples", words_samples);
  words->add_option("--jobs", words_jobs);
  words->add_flag("--exact", words_exact, "p-estimate: exhaustive over S_n^d (n <= 5, d <= 2)");
  seed_option(words);

  // experiment
  auto* exp = app.add_subcommand("experiment", "random product spectra");
  std::string exp_cfg, exp_csv, exp_summary;
  int exp_jobs = 1;
  bool exp_no_timing = false;
  exp->add_option("config", exp_cfg)->required();
  exp->add_option("--jobs", exp_jobs);
  exp->add_option("--csv", exp_csv, "CSV output (default stdout)");
  exp->add_option("--summary", exp_summary, "summary output (default stdout after the CSV)");
  exp->add_flag("--no-timing", exp_no_timing, "write NA in the millis column");
  auto* exp_seed = seed_option(exp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    if (*gen) {
      auto arg = [&](std::size_t i, const char* what) {
        require(i < gen_args.size(), std::string("gen ") + gen_kind + ": missing " + what);
        return gen_args[i];
      };
      auto expect_args = [&](std::size_t count) {
        require(gen_args.size() == count, "gen " + gen_kind + ": expected " + std::to_string(count) + " arguments");
      };
      Rng rng(seed);
      std::string text;
      if (gen_kind == "cycle") {
        expect_args(1);
        text = detail::to_text(io::write_graph, gen::cycle(arg(0, "n")));
      } else if (gen_kind == "path") {
        expect_args(1);
        text = detail::to_text(io::write_graph, gen::path(arg(0, "n")));
      } else if (gen_kind == "complete") {
        expect_args(1);
        text = detail::to_text(io::write_graph, gen::complete(arg(0, "n")));
      } else if (gen_kind == "complete-bipartite") {
        expect_args(2);
        text = detail::to_text(io::write_graph, gen::complete_bipartite(arg(0, "a"), arg(1, "b")));
      } else if (gen_kind == "petersen") {
        expect_args(0);
        text = detail::to_text(io::write_graph, gen::petersen());
      } else if (gen_kind == "prism") {
        expect_args(1);
        text = detail::to_text(io::write_graph, gen::prism(arg(0, "n")));
      } else if (gen_kind == "hypercube") {
        expect_args(1);
        require(arg(0, "dim") >= 0 && arg(0, "dim") <= 16, "gen hypercube: dim must be in [0, 16]");
        text = detail::to_text(io::write_graph, gen::hypercube(arg(0, "dim")));
      } else if (gen_kind == "random-regular") {
        expect_args(2);
        if (gen_permutation)
          text = detail::to_text(io::write_permutation_graph, gen::random_permutation_graph(arg(0, "n"), arg(1, "degree"), rng));
        else
          text = detail::to_text(io::write_graph, gen::random_regular(arg(0, "n"), arg(1, "degree"), rng));
      } else if (gen_kind == "gadget") {
        expect_args(1);
        const Gadget g = build_gadget(arg(0, "k"));
        text = detail::to_text(io::write_graph, g.graph);
        if (!gen_coloring_out.empty())
          io::write_file(gen_coloring_out, detail::to_text(io::write_semi_coloring, g.coloring));
      } else {
        throw InputError("gen: unknown kind '" + gen_kind + "'");
      }
      detail::emit(out, gen_out, text);
    } else if (*cover) {
      const MultiGraph src = detail::load_graph(cover_src);
      const MultiGraph dst = detail::load_graph(cover_dst);
      const io::MapFile mf = io::read_file(cover_map, io::read_map);
      require(static_cast<int>(mf.vertex_map.size()) == src.num_vertices(), "map: vertex count differs from source");
      std::optional<CoveringMap> cm;
      if (mf.dart_map) {
        require(static_cast<int>(mf.dart_map->size()) == src.num_darts(), "map: dart count differs from source");
        cm = CoveringMap{src, dst, mf.vertex_map, *mf.dart_map};
      } else {
        cm = infer_covering(src, dst, mf.vertex_map);
      }
      if (!cm) {
        out << "not a covering: neighbor multisets do not match\n";
        code = kNegative;
      } else {
        const CoveringReport r = verify_covering(*cm);
        if (r.valid) {
          out << "covering";
          if (r.covering_number) out << ", covering number " << *r.covering_number;
          out << '\n';
        } else {
          out << "not a covering: " << r.failure;
          if (r.bad_vertex) out << " (vertex " << *r.bad_vertex << ")";
          if (r.bad_dart) out << " (dart " << *r.bad_dart << ")";
          out << '\n';
          code = kNegative;
        }
      }
    } else if (*product) {
      const MultiGraph g1 = detail::load_graph(prod_g1);
      const MultiGraph g2 = detail::load_graph(prod_g2);
      std::optional<TightProduct> tp;
      if (prod_mode == "even") {
        tp = product_even_regular(g1, g2);
      } else if (prod_mode == "odd-matching") {
        const auto m1 = prod_m1.empty() ? max_matching(g1)
                                        : io::read_file(prod_m1, [&](std::istream& in) { return io::read_matching(in, g1); });
        const auto m2 = prod_m2.empty() ? max_matching(g2)
                                        : io::read_file(prod_m2, [&](std::istream& in) { return io::read_matching(in, g2); });
        tp = product_odd_matching(g1, g2, m1, m2);
      } else if (prod_mode == "semicolor") {
        const auto reg = g2.regular_degree();
        require(reg.has_value(), "product semicolor: g2 is not regular");
        SemiColoring sc;
        if (!prod_semi.empty())
          sc = io::read_file(prod_semi, [&](std::istream& in) { return io::read_semi_coloring(in, g1, g1.max_degree()); });
        else if (g1.max_degree() <= 3 && g1.regular_degree() == 3)
          sc = semi_color_subcubic(g1);
        else
          sc = semi_color_family(g1);
        EdgeColoring c;
        if (!prod_coloring.empty()) {
          c = io::read_file(prod_coloring, [&](std::istream& in) { return io::read_edge_coloring(in, g2); });
          c.num_colors = std::max(c.num_colors, *reg);
        } else {
          const ColoringSearch s = exact_edge_chromatic(g2, *reg, prod_cap);
          if (s.status != SearchStatus::found) {
            out << (s.status == SearchStatus::absent ? "g2 has no " : "undecided: no ") << *reg
                << "-edge-coloring" << (s.status == SearchStatus::absent ? " (class-2)\n" : " found within the node cap\n");
            return detail::search_exit(s.status);
          }
          c = *s.coloring;
        }
        tp = product_via_semicoloring(g1, sc, g2, c);
      } else {
        BruteForceCaps caps;
        caps.node_cap = prod_cap;
        const BruteForceResult r = brute_force_tight_product(g1, g2, caps);
        if (r.status != SearchStatus::found) {
          out << (r.status == SearchStatus::absent ? "no tight product: " : "undecided: ") << r.certificate << '\n';
          return detail::search_exit(r.status);
        }
        tp = *r.product;
      }
      detail::report_product(out, *tp);
      if (!prod_out.empty()) detail::write_product(prod_out, *tp);
    } else if (*semi) {
      const MultiGraph g = detail::load_graph(semi_g);
      const SemiColoring sc = g.max_degree() <= 3 ? semi_color_subcubic(g) : semi_color_family(g);
      ensure(validate_semi_coloring(g, sc).valid, "semicolor: produced coloring is invalid");
      detail::emit(out, semi_out, detail::to_text(io::write_semi_coloring, sc));
    } else if (*viz) {
      const MultiGraph g = detail::load_graph(viz_g);
      const EdgeColoring c = vizing4_cubic(g);
      ensure(is_proper(g, c), "vizing4: produced coloring is not proper");
      detail::emit(out, viz_out, detail::to_text(io::write_edge_coloring, c));
    } else if (*chroma) {
      const MultiGraph g = detail::load_graph(chroma_g);
      const ColoringSearch s = exact_edge_chromatic(g, chroma_budget, chroma_cap);
      if (s.status == SearchStatus::found) {
        detail::emit(out, chroma_out, detail::to_text(io::write_edge_coloring, *s.coloring));
      } else {
        out << (s.status == SearchStatus::absent ? "absent" : "undecided") << ": no " << chroma_budget
            << "-edge-coloring" << (s.status == SearchStatus::absent ? " exists" : " found within the node cap") << " ("
            << s.nodes << " nodes)\n";
      }
      code = detail::search_exit(s.status);
    } else if (*classify) {
      const MultiGraph g = detail::load_graph(cls_g);
      std::optional<EdgeColoring> c;
      if (!cls_coloring.empty())
        c = io::read_file(cls_coloring, [&](std::istream& in) { return io::read_edge_coloring(in, g); });
      if (c) c->num_colors = std::max(c->num_colors, 2 * cls_k + 1);
      const Classification r = classify_class1_via_gadget(g, cls_k, c, cls_cap);
      out << to_string(r.verdict) << '\n';
      if (r.verdict == Verdict::class1) {
        detail::report_product(out, *r.product);
        if (!cls_out.empty()) {
          detail::write_product(cls_out, *r.product);
          io::write_file(cls_out + "/extracted.col", detail::to_text(io::write_edge_coloring, *r.extracted));
        }
        code = kOk;
      } else if (r.verdict == Verdict::class2) {
        out << "certificate: exhaustive search over " << r.search_nodes << " nodes found no " << 2 * cls_k + 1
            << "-edge-coloring\n";
        code = kNegative;
      } else {
        out << "search stopped after " << r.search_nodes << " nodes\n";
        code = kUndecided;
      }
    } else if (*words) {
      if (words_op == "count-imprimitive") {
        const ImprimitiveCount c = count_imprimitive(words_d, words_k);
        out << "d: " << words_d << "\nk: " << words_k << "\nwords: " << c.total << "\nimprimitive: " << c.count
            << "\nbound: " << format_double(c.bound) << "\nwithin_bound: " << (c.within_bound ? "true" : "false") << '\n';
      } else {
        const Word w = parse_word(words_w);
        if (words_op == "order") {
          out << word_order(w) << '\n';
        } else if (words_op == "reduce") {
          out << format_word(reduce(w)) << '\n';
        } else if (words_exact) {
          const int d = std::max(1, words_d);
          out << "p: " << format_double(exact_p(w, words_n, d)) << "\nexact: true\n";
        } else {
          const Estimate e = estimate_p(w, words_n, words_samples, seed, words_jobs);
          out << "p: " << format_double(e.p) << "\nse: " << format_double(e.standard_error) << "\nsamples: " << e.samples
              << "\nhits: " << e.hits << '\n';
        }
      }
    } else if (*exp) {
      const std::string dir = std::filesystem::path(exp_cfg).parent_path().string();
      const std::optional<std::uint64_t> override_seed = exp_seed->count() ? std::optional(seed) : std::nullopt;
      const RandomProductConfig cfg = io::read_file(exp_cfg, [&](std::istream& in) {
        return io::read_experiment_config(in, dir.empty() ? "." : dir, override_seed);
      });
      const ExperimentResult res = run_experiment(cfg, exp_jobs);
      const std::string table = csv(res, !exp_no_timing);
      const std::string summary = summary_text(cfg, res);
      if (exp_csv.empty() && exp_summary.empty()) {
        out << table << '\n' << summary;
      } else {
        detail::emit(out, exp_csv, table);
        detail::emit(out, exp_summary, summary);
      }
      for (const TraceCheck& t : res.trace_checks) ensure(t.equal(), "experiment: trace cross-check failed");
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return code;
}

}  // namespace tightprod::cli
