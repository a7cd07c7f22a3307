#pragma once

// Seeded instance generators used by the test suites and the CLI selftest.
// All randomness flows through a caller-supplied mt19937_64 so runs are
// reproducible.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "signrank/geometry.hpp"
#include "signrank/rational.hpp"
#include "signrank/sign.hpp"

namespace signrank {

inline long rand_in(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

// Uniform arrangement of n lines with small integer coefficients, built by
// rejection: candidate lines are discarded while they are parallel to an
// existing line or create a triple point.
inline Arrangement random_uniform_arrangement(std::size_t n, std::mt19937_64& rng,
                                              long coeff_bound = 40) {
  if (n == 0) throw std::invalid_argument("need at least one line");
  for (int attempt = 0; attempt < 2000; ++attempt) {
    std::vector<Line> lines;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      for (int tries = 0;; ++tries) {
        if (tries > 500) { ok = false; break; }
        Line l;
        l.a = rand_in(rng, -coeff_bound, coeff_bound);
        l.b = rand_in(rng, -coeff_bound, coeff_bound);
        l.c = rand_in(rng, -coeff_bound, coeff_bound);
        l.orient = rng() % 2 ? 1 : -1;
        if (l.a == 0 && l.b == 0) continue;
        bool clashes = false;
        for (const Line& e : lines)
          if (e.a * l.b == l.a * e.b) { clashes = true; break; }
        if (clashes) continue;
        lines.push_back(l);
        break;
      }
    }
    if (!ok) continue;
    Arrangement arr(std::move(lines));
    if (is_uniform(arr)) return arr;
  }
  throw std::runtime_error("failed to sample a uniform arrangement");
}

// Strict matrix whose columns are threshold patterns over a random vector Y,
// i.e. sign patterns drawn from span{all-ones, Y}; its minimum rank is <= 2
// by construction.
inline SignMatrix random_threshold_matrix(std::size_t m, std::size_t n,
                                          std::mt19937_64& rng) {
  std::vector<long> y(m);
  for (long& v : y) v = rand_in(rng, 0, static_cast<long>(4 * m));
  std::vector<long> distinct(y.begin(), y.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  const std::size_t t = distinct.size();

  std::vector<SignVector> cols;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t cut = static_cast<std::size_t>(rand_in(rng, 0, static_cast<long>(t)));
    const bool flip = rng() % 2;
    SignVector c(m);
    for (std::size_t i = 0; i < m; ++i) {
      std::size_t rank = 0;
      while (distinct[rank] != y[i]) ++rank;
      Sign s = rank < cut ? Sign::plus : Sign::minus;
      c[i] = flip ? negate(s) : s;
    }
    cols.push_back(c);
  }
  return SignMatrix::from_columns(cols);
}

inline SignMatrix random_generalized_matrix(std::size_t m, std::size_t n,
                                            std::mt19937_64& rng,
                                            int zero_percent = 25) {
  std::vector<Sign> e(m * n);
  for (Sign& s : e) {
    if (static_cast<int>(rng() % 100) < zero_percent) s = Sign::zero;
    else s = rng() % 2 ? Sign::plus : Sign::minus;
  }
  return SignMatrix(m, n, std::move(e));
}

inline SignMatrix random_strict_matrix(std::size_t m, std::size_t n,
                                       std::mt19937_64& rng) {
  std::vector<Sign> e(m * n);
  for (Sign& s : e) s = rng() % 2 ? Sign::plus : Sign::minus;
  return SignMatrix(m, n, std::move(e));
}

// Exact rational matrix respecting the sign pattern, entries of magnitude in
// [1, bound].
inline RationalMatrix random_substitution(const SignMatrix& s, std::mt19937_64& rng,
                                          long bound = 1000) {
  RationalMatrix a(s.rows(), s.cols());
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j)
      a.at(i, j) = static_cast<int>(s.at(i, j)) * rand_in(rng, 1, bound);
  return a;
}

inline SignMatrix strict_matrix_from_bits(std::size_t m, std::size_t n,
                                          std::uint64_t bits) {
  std::vector<Sign> e(m * n);
  for (std::size_t idx = 0; idx < m * n; ++idx)
    e[idx] = (bits >> idx) & 1 ? Sign::plus : Sign::minus;
  return SignMatrix(m, n, std::move(e));
}

inline SignMatrix generalized_matrix_from_trits(std::size_t m, std::size_t n,
                                                std::uint64_t code) {
  std::vector<Sign> e(m * n);
  for (std::size_t idx = 0; idx < m * n; ++idx) {
    e[idx] = static_cast<Sign>(static_cast<int>(code % 3) - 1);
    code /= 3;
  }
  return SignMatrix(m, n, std::move(e));
}

}  // namespace signrank
