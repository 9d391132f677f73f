#pragma once

// Spectra of products and lifts, and the random product experiment.

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "tightprod/errors.hpp"
#include "tightprod/generators.hpp"
#include "tightprod/graph.hpp"
#include "tightprod/random.hpp"
#include "tightprod/tight_product.hpp"
#include "tightprod/words.hpp"

namespace tightprod {

inline std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& a) {
  require(a.rows() == a.cols(), "symmetric_eigenvalues: matrix is not square");
  if (a.rows() == 0) return {};
  require((a - a.transpose()).cwiseAbs().maxCoeff() <= 1e-12, "symmetric_eigenvalues: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  ensure(solver.info() == Eigen::Success, "symmetric_eigenvalues: solver did not converge");
  const Eigen::VectorXd ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<double> adjacency_spectrum(const MultiGraph& g) {
  return symmetric_eigenvalues(adjacency_matrix(g).cast<double>());
}

struct SpectrumSplit {
  std::vector<double> old_values;  // matched to the base, in base order
  std::vector<double> new_values;  // sorted
};

namespace detail {

// Greedy nearest match of each (sorted) needle among unmatched hay values.
// Returns the matched hay index per needle, or nullopt on the first needle
// without a partner within tol.
inline std::optional<std::vector<std::size_t>> greedy_match(const std::vector<double>& hay,
                                                            const std::vector<double>& needles, double tol) {
  std::vector<char> used(hay.size(), 0);
  std::vector<std::size_t> out;
  for (double x : needles) {
    const auto it = std::lower_bound(hay.begin(), hay.end(), x - tol);
    std::size_t best = hay.size();
    for (auto j = static_cast<std::size_t>(it - hay.begin()); j < hay.size() && hay[j] <= x + tol; ++j)
      if (!used[j] && (best == hay.size() || std::abs(hay[j] - x) < std::abs(hay[best] - x))) best = j;
    if (best == hay.size()) return std::nullopt;
    used[best] = 1;
    out.push_back(best);
  }
  return out;
}

}  // namespace detail

// Both inputs sorted ascending. True when `sub` is a sub-multiset of `super`
// up to tol.
inline bool multiset_contains(const std::vector<double>& super, const std::vector<double>& sub, double tol) {
  return detail::greedy_match(super, sub, tol).has_value();
}

inline SpectrumSplit split_new_eigenvalues(const std::vector<double>& spec_h, const std::vector<double>& spec_base,
                                           double tol) {
  require(!spec_base.empty() && spec_h.size() % spec_base.size() == 0,
          "split_new_eigenvalues: |spec(H)| is not a multiple of |spec(base)|");
  const auto match = detail::greedy_match(spec_h, spec_base, tol);
  if (!match) throw InternalError("split_new_eigenvalues: a base eigenvalue has no partner in spec(H)");
  SpectrumSplit s;
  std::vector<char> used(spec_h.size(), 0);
  for (std::size_t i = 0; i < match->size(); ++i) {
    used[(*match)[i]] = 1;
    s.old_values.push_back(spec_h[(*match)[i]]);
  }
  for (std::size_t j = 0; j < spec_h.size(); ++j)
    if (!used[j]) s.new_values.push_back(spec_h[j]);
  return s;
}

inline double upper_bound_constant(int d) { return std::pow(32.0, 0.25) * std::pow(d, 0.75); }
inline double alon_boppana(int d) { return 2.0 * std::sqrt(2.0 * d - 1); }

struct RandomProductConfig {
  PermutationGraph base;  // G(s_1..s_d), no pairing
  std::vector<int> n{100};
  std::uint64_t seed = 0;
  int trials = 1;
  int kmax = 2;              // trace cross-check up to A^(2 kmax)
  bool compare_lift = false;
  double slack = 2.0;
  double tolerance = 1e-6;

  int d() const { return static_cast<int>(base.generators.size()); }

  void validate() const {
    base.validate();
    require(!base.pairing, "experiment: base must be given by permutations only (no pairing)");
    require(base.n >= 1 && d() >= 1, "experiment: base needs a vertex and a generator");
    require(!n.empty(), "experiment: no fiber size given");
    for (int x : n) require(x >= 1, "experiment: n must be positive");
    require(trials >= 1, "experiment: trials must be positive");
    require(kmax >= 1, "experiment: kmax must be positive");
  }
};

struct RandomProduct {
  PermutationGraph presentation;  // H = G((s_1,p_1), ..., (s_d,p_d))
  PermutationGraph random_factor;  // G_R = G(p_1..p_d)
  TightProduct product;
};

// The product permutation sends (v, u) to (s_i(v), p_i(u)); p_i comes from the
// stream derive_seed(seed, {trial_seed, i}).
inline RandomProduct random_tight_product(const PermutationGraph& base, int n, std::uint64_t trial_seed) {
  base.validate();
  require(!base.pairing, "random_tight_product: base with a pairing is not supported");
  require(n >= 1, "random_tight_product: n must be positive");
  const int nb = base.n, d = static_cast<int>(base.generators.size());
  RandomProduct rp;
  rp.random_factor.n = n;
  rp.presentation.n = nb * n;
  for (int i = 0; i < d; ++i) {
    Rng rng(derive_seed(trial_seed, {static_cast<std::uint64_t>(i)}));
    Permutation pi = random_permutation(n, rng);
    std::vector<Vertex> images(nb * n);
    for (Vertex v = 0; v < nb; ++v)
      for (Vertex u = 0; u < n; ++u) images[v * n + u] = base.generators[i](v) * n + pi(u);
    rp.presentation.generators.emplace_back(std::move(images));
    rp.random_factor.generators.push_back(std::move(pi));
  }
  const MultiGraph h = from_permutations(rp.presentation);
  const MultiGraph gb = from_permutations(base);
  const MultiGraph gr = from_permutations(rp.random_factor);
  // H edge i*N + x maps to base edge i*nb + v and G_R edge i*n + u with the
  // same orientation.
  std::vector<Vertex> vm1(nb * n), vm2(nb * n);
  std::vector<Dart> dm1(h.num_darts()), dm2(h.num_darts());
  for (Vertex x = 0; x < nb * n; ++x) {
    vm1[x] = x / n;
    vm2[x] = x % n;
  }
  for (Dart x = 0; x < h.num_darts(); ++x) {
    const EdgeId e = edge_of(x);
    const int i = e / (nb * n);
    const Vertex tail = e % (nb * n);
    dm1[x] = 2 * (i * nb + tail / n) + (x & 1);
    dm2[x] = 2 * (i * n + tail % n) + (x & 1);
  }
  rp.product = {CoveringMap{h, gb, std::move(vm1), std::move(dm1)}, CoveringMap{h, gr, std::move(vm2), std::move(dm2)}};
  ensure(verify_product(rp.product).ok(), "random_tight_product: projections are not coverings");
  return rp;
}

// One uniform permutation per edge of the base, oriented as stored.
inline CoveringMap random_lift(const MultiGraph& base, int n, std::uint64_t seed) {
  require(n >= 1, "random_lift: n must be positive");
  Rng rng(seed);
  std::vector<Edge> edges;
  std::vector<Dart> dm;
  for (EdgeId e = 0; e < base.num_edges(); ++e) {
    const Permutation s = random_permutation(n, rng);
    const auto [a, b] = base.endpoints(e);
    for (Vertex u = 0; u < n; ++u) {
      edges.push_back({a * n + u, b * n + s(u)});
      dm.push_back(2 * e);
      dm.push_back(2 * e + 1);
    }
  }
  std::vector<Vertex> vm(base.num_vertices() * n);
  for (Vertex x = 0; x < static_cast<Vertex>(vm.size()); ++x) vm[x] = x / n;
  CoveringMap cm{MultiGraph(base.num_vertices() * n, edges), base, std::move(vm), std::move(dm)};
  ensure(verify_covering(cm).valid, "random_lift: lift is not a covering");
  return cm;
}

struct SpectrumReport {
  std::vector<double> eigenvalues_h;
  std::vector<double> eigenvalues_base;
  std::vector<double> eigenvalues_random_factor;
  std::vector<double> new_eigenvalues;
  std::optional<double> mu;  // absent when there are no new eigenvalues
  std::optional<double> lambda2_gr;
  double bound = 0;
};

inline std::optional<double> max_abs(const std::vector<double>& xs) {
  if (xs.empty()) return std::nullopt;
  double m = 0;
  for (double x : xs) m = std::max(m, std::abs(x));
  return m;
}

inline std::optional<double> second_largest(const std::vector<double>& sorted) {
  if (sorted.size() < 2) return std::nullopt;
  return sorted[sorted.size() - 2];
}

inline SpectrumReport spectrum_report(const MultiGraph& h, const MultiGraph& base, const MultiGraph* random_factor,
                                      int d, double tol) {
  SpectrumReport r;
  r.eigenvalues_h = adjacency_spectrum(h);
  r.eigenvalues_base = adjacency_spectrum(base);
  if (random_factor) {
    r.eigenvalues_random_factor = adjacency_spectrum(*random_factor);
    r.lambda2_gr = second_largest(r.eigenvalues_random_factor);
  }
  r.new_eigenvalues = split_new_eigenvalues(r.eigenvalues_h, r.eigenvalues_base, tol).new_values;
  r.mu = max_abs(r.new_eigenvalues);
  r.bound = upper_bound_constant(d);
  return r;
}

struct TrialRow {
  int trial = 0;
  std::uint64_t seed = 0;
  int n = 0;
  int d = 0;
  std::optional<double> mu;
  std::optional<double> lambda2_gr;
  double bound = 0;
  double alon_boppana = 0;
  double millis = 0;
  bool contains_base = false;
  bool contains_random_factor = false;
  bool top_is_2d = false;
  std::optional<double> lift_mu;  // matched-size random lift, when requested
};

struct TraceCheck {
  int trial = -1;
  int length = 0;
  std::int64_t trace = 0;
  std::uint64_t closed_paths = 0;
  bool equal() const { return trace >= 0 && static_cast<std::uint64_t>(trace) == closed_paths; }
};

struct EntropyReport {
  double bits_product = 0;  // d log2(n!)
  double bits_lift = 0;     // |E(G_B)| log2(n!)
  double ratio = 0;         // bits_product / bits_lift = 1 / |V(G_B)|
};

inline EntropyReport entropy_report(const PermutationGraph& base, int n) {
  const double per_perm = std::lgamma(n + 1.0) / std::log(2.0);
  const int d = static_cast<int>(base.generators.size());
  EntropyReport e;
  e.bits_product = d * per_perm;
  e.bits_lift = static_cast<double>(d) * base.n * per_perm;
  e.ratio = 1.0 / base.n;
  return e;
}

struct ExperimentResult {
  std::vector<TrialRow> rows;
  std::vector<TraceCheck> trace_checks;
  std::vector<std::pair<int, EntropyReport>> entropy;
};

inline std::uint64_t trial_seed(std::uint64_t master, int n, int trial) {
  return derive_seed(master, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(trial)});
}

inline TrialRow run_trial(const RandomProductConfig& cfg, int n, int trial) {
  const auto start = std::chrono::steady_clock::now();
  TrialRow row;
  row.trial = trial;
  row.seed = trial_seed(cfg.seed, n, trial);
  row.n = n;
  row.d = cfg.d();
  row.bound = upper_bound_constant(row.d);
  row.alon_boppana = alon_boppana(row.d);
  const RandomProduct rp = random_tight_product(cfg.base, n, row.seed);
  const MultiGraph gr = from_permutations(rp.random_factor);
  const SpectrumReport rep = spectrum_report(rp.product.h(), rp.product.g1(), &gr, row.d, cfg.tolerance);
  row.mu = rep.mu;
  row.lambda2_gr = rep.lambda2_gr;
  row.contains_base = multiset_contains(rep.eigenvalues_h, rep.eigenvalues_base, cfg.tolerance);
  row.contains_random_factor = multiset_contains(rep.eigenvalues_h, rep.eigenvalues_random_factor, cfg.tolerance);
  row.top_is_2d = std::abs(rep.eigenvalues_h.back() - 2.0 * row.d) <= 1e-8;
  if (cfg.compare_lift) {
    const CoveringMap lift = random_lift(rp.product.g1(), n, derive_seed(row.seed, {0x6c696674ULL}));
    row.lift_mu = spectrum_report(lift.source, lift.target, nullptr, row.d, cfg.tolerance).mu;
  }
  row.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return row;
}

// Trials are pure functions of (cfg, n, trial); rows come back in
// (n, trial) order whatever the number of jobs.
inline ExperimentResult run_experiment(const RandomProductConfig& cfg, int jobs = 1) {
  cfg.validate();
  ExperimentResult res;
  std::vector<std::pair<int, int>> tasks;
  for (int n : cfg.n)
    for (int t = 0; t < cfg.trials; ++t) tasks.push_back({n, t});
  res.rows.resize(tasks.size());
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
  if (jobs == 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) res.rows[i] = run_trial(cfg, tasks[i].first, tasks[i].second);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(jobs);
    for (int j = 0; j < jobs; ++j)
      pool.emplace_back([&, j] {
        try {
          for (std::size_t i = j; i < tasks.size(); i += jobs) res.rows[i] = run_trial(cfg, tasks[i].first, tasks[i].second);
        } catch (...) {
          errors[j] = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  // Trace cross-check on the first trial of each small product.
  for (int n : cfg.n) {
    if (cfg.base.n * n > 60) continue;
    const RandomProduct rp = random_tight_product(cfg.base, n, trial_seed(cfg.seed, n, 0));
    const IntMatrix a = adjacency_matrix(rp.product.h());
    IntMatrix power = IntMatrix::Identity(a.rows(), a.cols());
    const IntMatrix a2 = a * a;
    for (int k = 1; k <= cfg.kmax; ++k) {
      power = power * a2;
      if (std::pow(2.0 * cfg.d(), 2 * k) * rp.presentation.n > 1e8) break;
      res.trace_checks.push_back({0, 2 * k, power.trace(), closed_path_count(rp.presentation, 2 * k)});
    }
  }
  for (int n : cfg.n) res.entropy.push_back({n, entropy_report(cfg.base, n)});
  return res;
}

inline std::string format_optional(const std::optional<double>& x) {
  if (!x) return "NA";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10f", *x);
  return buf;
}

inline std::string format_double(double x) { return format_optional(std::optional<double>(x)); }

inline std::string csv(const ExperimentResult& res, bool with_timing = true) {
  std::ostringstream out;
  out << "trial,seed,n,d,mu,lambda2_gr,bound,alon_boppana,millis\n";
  for (const TrialRow& r : res.rows) {
    out << r.trial << ',' << r.seed << ',' << r.n << ',' << r.d << ',' << format_optional(r.mu) << ','
        << format_optional(r.lambda2_gr) << ',' << format_double(r.bound) << ',' << format_double(r.alon_boppana)
        << ',';
    if (with_timing) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3f", r.millis);
      out << buf;
    } else {
      out << "NA";
    }
    out << '\n';
  }
  return out.str();
}

struct ExperimentSummary {
  int trials = 0;
  int trials_with_mu = 0;
  double mean_mu = 0;
  double max_mu = 0;
  double frac_below_bound = 0;     // mu <= bound + slack
  double frac_above_reference = 0;  // mu >= alon_boppana - 0.5
  bool all_contain_base = true;
  bool all_contain_random_factor = true;
  bool all_top_2d = true;
  std::optional<double> lift_mean_mu;
  std::optional<double> lift_max_mu;
};

inline ExperimentSummary summarize(const ExperimentResult& res, double slack, std::optional<int> only_n = std::nullopt) {
  ExperimentSummary s;
  int below = 0, above = 0, lifts = 0;
  double lift_sum = 0, lift_max = 0;
  for (const TrialRow& r : res.rows) {
    if (only_n && r.n != *only_n) continue;
    ++s.trials;
    s.all_contain_base &= r.contains_base;
    s.all_contain_random_factor &= r.contains_random_factor;
    s.all_top_2d &= r.top_is_2d;
    if (r.lift_mu) {
      ++lifts;
      lift_sum += *r.lift_mu;
      lift_max = std::max(lift_max, *r.lift_mu);
    }
    if (!r.mu) continue;
    ++s.trials_with_mu;
    s.mean_mu += *r.mu;
    s.max_mu = std::max(s.max_mu, *r.mu);
    below += *r.mu <= r.bound + slack;
    above += *r.mu >= r.alon_boppana - 0.5;
  }
  if (s.trials_with_mu > 0) {
    s.mean_mu /= s.trials_with_mu;
    s.frac_below_bound = static_cast<double>(below) / s.trials_with_mu;
    s.frac_above_reference = static_cast<double>(above) / s.trials_with_mu;
  }
  if (lifts > 0) {
    s.lift_mean_mu = lift_sum / lifts;
    s.lift_max_mu = lift_max;
  }
  return s;
}

inline std::string summary_text(const RandomProductConfig& cfg, const ExperimentResult& res) {
  const ExperimentSummary s = summarize(res, cfg.slack);
  std::ostringstream out;
  auto kv = [&](const std::string& k, const std::string& v) { out << k << ": " << v << '\n'; };
  kv("trials", std::to_string(s.trials));
  kv("d", std::to_string(cfg.d()));
  kv("base_vertices", std::to_string(cfg.base.n));
  kv("bound", format_double(upper_bound_constant(cfg.d())));
  kv("slack", format_double(cfg.slack));
  kv("mean_mu", s.trials_with_mu ? format_double(s.mean_mu) : "NA");
  kv("max_mu", s.trials_with_mu ? format_double(s.max_mu) : "NA");
  kv("frac_mu_le_bound_plus_slack", s.trials_with_mu ? format_double(s.frac_below_bound) : "NA");
  kv("frac_mu_ge_alon_boppana_minus_half", s.trials_with_mu ? format_double(s.frac_above_reference) : "NA");
  kv("spectrum_contains_base", s.all_contain_base ? "true" : "false");
  kv("spectrum_contains_random_factor", s.all_contain_random_factor ? "true" : "false");
  kv("top_eigenvalue_is_2d", s.all_top_2d ? "true" : "false");
  if (s.lift_mean_mu) {
    kv("lift_mean_mu", format_double(*s.lift_mean_mu));
    kv("lift_max_mu", format_double(*s.lift_max_mu));
  }
  for (const TraceCheck& t : res.trace_checks)
    kv("trace_check_len" + std::to_string(t.length),
       std::to_string(t.trace) + " vs " + std::to_string(t.closed_paths) + (t.equal() ? " ok" : " MISMATCH"));
  for (const auto& [n, e] : res.entropy) {
    kv("entropy_n" + std::to_string(n) + "_bits_product", format_double(e.bits_product));
    kv("entropy_n" + std::to_string(n) + "_bits_lift", format_double(e.bits_lift));
    kv("entropy_n" + std::to_string(n) + "_ratio", format_double(e.ratio));
  }
  return out.str();
}

// Base for "random:v,deg": deg/2 fixed-point-free uniform permutations on v
// vertices, redrawn until the graph is connected.
inline PermutationGraph random_base(int v, int degree, std::uint64_t seed) {
  require(v >= 2 && degree >= 2 && degree % 2 == 0, "random base: needs v >= 2 and an even degree >= 2");
  Rng rng(derive_seed(seed, {0x62617365ULL}));
  for (int attempt = 0; attempt < 10000; ++attempt) {
    PermutationGraph pg;
    pg.n = v;
    while (static_cast<int>(pg.generators.size()) < degree / 2) {
      Permutation s = random_permutation(v, rng);
      if (!s.has_fixed_point()) pg.generators.push_back(std::move(s));
    }
    if (structural_predicates(from_permutations(pg)).connected) return pg;
  }
  throw InputError("random base: no connected base found");
}

}  // namespace tightprod
