#pragma once

// Words over the generators g_1..g_d and their inverses, evaluated on tuples
// of permutations.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "tightprod/errors.hpp"
#include "tightprod/graph.hpp"
#include "tightprod/random.hpp"

namespace tightprod {

// Generators are 0-based internally; the text form is 1-based with a sign.
struct Letter {
  int generator = 0;
  int exponent = 1;  // +1 or -1
  Letter inverse() const { return {generator, -exponent}; }
  friend bool operator==(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

inline Word inverse(const Word& w) {
  Word r;
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(it->inverse());
  return r;
}

inline bool is_reduced(const Word& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i + 1] == w[i].inverse()) return false;
  return true;
}

inline Word reduce(const Word& w) {
  Word stack;
  for (const Letter& l : w) {
    if (!stack.empty() && stack.back() == l.inverse())
      stack.pop_back();
    else
      stack.push_back(l);
  }
  return stack;
}

// Strips matching inverse first/last letters of the reduced word.
inline Word cyclic_core(const Word& w) {
  const Word r = reduce(w);
  std::size_t lo = 0, hi = r.size();
  while (hi - lo >= 2 && r[hi - 1] == r[lo].inverse()) {
    ++lo;
    --hi;
  }
  ensure(r.empty() || hi > lo, "cyclic_core: nonempty reduced word with empty core");
  return Word(r.begin() + static_cast<std::ptrdiff_t>(lo), r.begin() + static_cast<std::ptrdiff_t>(hi));
}

inline int word_order(const Word& w) {
  const Word c = cyclic_core(w);
  const std::size_t n = c.size();
  if (n == 0) return 0;
  for (std::size_t p = 1; p <= n; ++p) {
    if (n % p) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) periodic = c[i] == c[i - p];
    if (periodic) return static_cast<int>(n / p);
  }
  return 1;
}

inline bool is_primitive(const Word& w) { return word_order(w) == 1; }

// Letter index in [0, 2d): 2i for g_i, 2i+1 for its inverse.
inline Letter letter_from_index(int idx) { return {idx / 2, idx % 2 == 0 ? 1 : -1}; }

struct ImprimitiveCount {
  std::uint64_t count = 0;
  std::uint64_t total = 0;
  double bound = 0;  // k^2 (8d)^k
  bool within_bound = false;
};

// Exhaustive count of words of length 2k over d generators whose order is not 1.
inline ImprimitiveCount count_imprimitive(int d, int k, std::uint64_t cap = 10'000'000) {
  require(d >= 1 && k >= 0, "count_imprimitive: need d >= 1 and k >= 0");
  const int len = 2 * k;
  const double total = std::pow(2.0 * d, len);
  require(total <= static_cast<double>(cap), "count_imprimitive: (2d)^(2k) exceeds the enumeration cap");
  ImprimitiveCount out;
  out.total = static_cast<std::uint64_t>(total);
  std::vector<int> digits(len, 0);
  Word w(len);
  for (std::uint64_t t = 0; t < out.total; ++t) {
    for (int i = 0; i < len; ++i) w[i] = letter_from_index(digits[i]);
    if (word_order(w) != 1) ++out.count;
    for (int i = len - 1; i >= 0; --i) {
      if (++digits[i] < 2 * d) break;
      digits[i] = 0;
    }
  }
  out.bound = static_cast<double>(k) * k * std::pow(8.0 * d, k);
  out.within_bound = static_cast<double>(out.count) <= out.bound;
  return out;
}

// The first letter is applied first: result = s_{i_k}^{j_k} o ... o s_{i_1}^{j_1}.
inline Permutation evaluate_word(const Word& w, const std::vector<Permutation>& perms) {
  const int n = perms.empty() ? 0 : perms.front().size();
  for (const Letter& l : w)
    require(l.generator >= 0 && l.generator < static_cast<int>(perms.size()), "evaluate_word: generator out of range");
  std::vector<Permutation> inverses;
  for (const auto& p : perms) inverses.push_back(p.inverse());
  std::vector<Vertex> images(n);
  for (Vertex x = 0; x < n; ++x) {
    Vertex y = x;
    for (const Letter& l : w) y = l.exponent > 0 ? perms[l.generator](y) : inverses[l.generator](y);
    images[x] = y;
  }
  return Permutation(std::move(images));
}

struct Estimate {
  double p = 0;
  double standard_error = 0;
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
};

namespace detail {

// Follows point 0 through w, revealing permutation values only where the walk
// needs them. A fresh lazily revealed tuple per call has the same law on the
// walk as a fully sampled uniform tuple.
class LazyTuple {
 public:
  LazyTuple(int d, int n) : n_(n), fwd_(d, std::vector<Vertex>(n, -1)), bwd_(d, std::vector<Vertex>(n, -1)) {}

  bool fixes_zero(const Word& w, Rng& rng) {
    Vertex x = 0;
    for (const Letter& l : w) {
      auto& out = l.exponent > 0 ? fwd_[l.generator] : bwd_[l.generator];
      auto& back = l.exponent > 0 ? bwd_[l.generator] : fwd_[l.generator];
      if (out[x] < 0) {
        Vertex y;
        do {
          y = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n_)));
        } while (back[y] >= 0);
        out[x] = y;
        back[y] = x;
        log_.push_back({l.generator, l.exponent > 0 ? x : y});
      }
      x = out[x];
    }
    for (const auto& [g, a] : log_) {
      bwd_[g][fwd_[g][a]] = -1;
      fwd_[g][a] = -1;
    }
    log_.clear();
    return x == 0;
  }

 private:
  int n_;
  std::vector<std::vector<Vertex>> fwd_, bwd_;
  std::vector<std::pair<int, Vertex>> log_;
};

inline int generator_count(const Word& w) {
  int d = 0;
  for (const Letter& l : w) d = std::max(d, l.generator + 1);
  return d;
}

}  // namespace detail

inline constexpr std::uint64_t kSampleBlock = 4096;

// Monte Carlo estimate of Pr[w(s_1..s_d) fixes 0] over uniform tuples. Samples
// are split into fixed blocks with seeds derived from (seed, block), so the
// result does not depend on `jobs`.
inline Estimate estimate_p(const Word& w, int n, std::uint64_t samples, std::uint64_t seed, int jobs = 1) {
  require(n >= 1, "estimate_p: n must be positive");
  require(samples > 0, "estimate_p: zero samples");
  const int d = std::max(1, detail::generator_count(w));
  const std::uint64_t blocks = (samples + kSampleBlock - 1) / kSampleBlock;
  std::vector<std::uint64_t> hits(blocks, 0);
  auto run_block = [&](std::uint64_t b) {
    Rng rng(derive_seed(seed, {b}));
    detail::LazyTuple tuple(d, n);
    const std::uint64_t count = std::min(kSampleBlock, samples - b * kSampleBlock);
    std::uint64_t h = 0;
    for (std::uint64_t s = 0; s < count; ++s) h += tuple.fixes_zero(w, rng);
    hits[b] = h;
  };
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(blocks)));
  if (jobs == 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j)
      pool.emplace_back([&, j] {
        for (std::uint64_t b = static_cast<std::uint64_t>(j); b < blocks; b += static_cast<std::uint64_t>(jobs)) run_block(b);
      });
    for (auto& t : pool) t.join();
  }
  Estimate e;
  e.samples = samples;
  for (std::uint64_t h : hits) e.hits += h;
  e.p = static_cast<double>(e.hits) / static_cast<double>(samples);
  e.standard_error = std::sqrt(e.p * (1 - e.p) / static_cast<double>(samples));
  return e;
}

// Exact p(w) by enumerating all tuples in S_n^d. Small cases only.
inline double exact_p(const Word& w, int n, int d) {
  require(n >= 1 && n <= 5 && d >= 1 && d <= 2, "exact_p: needs n <= 5 and d <= 2");
  require(detail::generator_count(w) <= d, "exact_p: word uses more than d generators");
  std::vector<Permutation> all;
  std::vector<Vertex> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  do all.emplace_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::uint64_t hits = 0, total = 0;
  std::vector<std::size_t> idx(d, 0);
  for (;;) {
    std::vector<Permutation> tuple;
    for (int i = 0; i < d; ++i) tuple.push_back(all[idx[i]]);
    hits += evaluate_word(w, tuple)(0) == 0;
    ++total;
    int i = d - 1;
    while (i >= 0 && ++idx[i] == all.size()) idx[i--] = 0;
    if (i < 0) break;
  }
  return static_cast<double>(hits) / static_cast<double>(total);
}

// Number of pairs (v, w) with w a word of the given length over the letters of
// pg (each generator and its inverse, plus the pairing as one self-inverse
// letter) whose walk from v returns to v. Equals the trace of A^length.
inline std::uint64_t closed_path_count(const PermutationGraph& pg, int length, std::uint64_t cap = 100'000'000) {
  pg.validate();
  require(length >= 0, "closed_path_count: negative length");
  std::vector<std::vector<Vertex>> letters;
  for (const auto& s : pg.generators) {
    const Permutation inv = s.inverse();
    const auto a = s.images();
    const auto b = inv.images();
    letters.emplace_back(a.begin(), a.end());
    letters.emplace_back(b.begin(), b.end());
  }
  if (pg.pairing) {
    const auto p = pg.pairing->images();
    letters.emplace_back(p.begin(), p.end());
  }
  const double work = std::pow(static_cast<double>(letters.size()), length) * std::max(1, pg.n);
  require(work <= static_cast<double>(cap), "closed_path_count: enumeration exceeds the cap");
  std::uint64_t total = 0;
  std::vector<std::vector<Vertex>> pos(length + 1, std::vector<Vertex>(pg.n));
  for (Vertex v = 0; v < pg.n; ++v) pos[0][v] = v;
  auto rec = [&](auto&& self, int depth) -> void {
    if (depth == length) {
      for (Vertex v = 0; v < pg.n; ++v) total += pos[depth][v] == v;
      return;
    }
    for (const auto& l : letters) {
      for (Vertex v = 0; v < pg.n; ++v) pos[depth + 1][v] = l[pos[depth][v]];
      self(self, depth + 1);
    }
  };
  rec(rec, 0);
  return total;
}

// "1 2 -1" is g_1 g_2 g_1^{-1}.
inline Word parse_word(const std::string& text) {
  std::istringstream in(text);
  Word w;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw InputError("word: bad letter '" + tok + "'");
    }
    require(used == tok.size() && v != 0, "word: bad letter '" + tok + "'");
    w.push_back({std::abs(v) - 1, v > 0 ? 1 : -1});
  }
  return w;
}

inline std::string format_word(const Word& w) {
  std::string s;
  for (const Letter& l : w) {
    if (!s.empty()) s += ' ';
    s += std::to_string(l.exponent * (l.generator + 1));
  }
  return s;
}

}  // namespace tightprod
