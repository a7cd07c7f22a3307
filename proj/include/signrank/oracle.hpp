#pragma once

// Independent ground-truth machinery for small instances.
//
// The rank-2 decider enumerates candidate realizing subspaces exhaustively:
// every subspace that realizes anything at all can be brought to the form
// span{f, f*Y} where f is a row sign pattern and Y is constant on the blocks
// of an ordered partition of the rows. Columns realizable in such a subspace
// are exactly the block-threshold patterns. Nothing here shares code with the
// polynomial-time decision procedures it is used to validate.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "signrank/rational.hpp"
#include "signrank/sign.hpp"

namespace signrank {

constexpr std::size_t kDefaultOracleRowLimit = 7;

struct OrderedPartition {
  std::vector<int> block_of;  // block index per element, blocks numbered 0..blocks-1
  int blocks = 0;
};

// Calls fn for every ordered partition of [m] (all set partitions in
// restricted-growth form, times all orderings of their blocks).
template <typename Fn>
bool for_each_ordered_partition(std::size_t m, Fn fn) {
  std::vector<int> rgs(m, 0);
  std::vector<int> relabel;
  OrderedPartition part;
  part.block_of.resize(m);

  auto emit = [&](int blocks) {
    relabel.resize(blocks);
    for (int i = 0; i < blocks; ++i) relabel[i] = i;
    do {
      for (std::size_t i = 0; i < m; ++i) part.block_of[i] = relabel[rgs[i]];
      part.blocks = blocks;
      if (fn(part)) return true;
    } while (std::next_permutation(relabel.begin(), relabel.end()));
    return false;
  };

  // Recursive enumeration of restricted growth strings.
  auto rec = [&](auto&& self, std::size_t i, int used) -> bool {
    if (i == m) return emit(used);
    for (int b = 0; b <= used && b < static_cast<int>(m); ++b) {
      rgs[i] = b;
      if (self(self, i + 1, std::max(used, b + 1))) return true;
    }
    return false;
  };
  return rec(rec, 0, 0);
}

namespace detail {

// A column is realizable in span{f, f*Y} iff, after undoing the row signs f,
// its per-block signs read (+^a -^b), (-^a +^b), or with allow_zero a single
// zero block separating opposite constant runs. The all-zero column is always
// realizable (the zero vector lies in every subspace).
inline bool threshold_column_ok(const std::vector<Sign>& block_sign, bool allow_zero) {
  const std::size_t t = block_sign.size();
  std::size_t zeros = 0;
  for (Sign s : block_sign) zeros += (s == Sign::zero);
  if (zeros == t) return true;
  if (zeros > 1) return false;
  if (zeros == 1) {
    if (!allow_zero) return false;
    std::size_t z = 0;
    while (block_sign[z] != Sign::zero) ++z;
    for (std::size_t i = 1; i < z; ++i)
      if (block_sign[i] != block_sign[0]) return false;
    for (std::size_t i = z + 2; i < t; ++i)
      if (block_sign[i] != block_sign[z + 1]) return false;
    if (z > 0 && z + 1 < t) return block_sign[0] == negate(block_sign[z + 1]);
    return true;
  }
  std::size_t i = 1;
  while (i < t && block_sign[i] == block_sign[0]) ++i;
  if (i == t) return true;
  const Sign second = block_sign[i];
  while (i < t && block_sign[i] == second) ++i;
  return i == t;
}

}  // namespace detail

// Exhaustive decision of "some subspace of dimension <= 2 realizes S".
// With allow_zero=false, zero entries are only accepted in all-zero columns
// (sufficient for strict inputs); pass allow_zero=true for generalized input.
inline bool minrank2_oracle(const SignMatrix& s, bool allow_zero,
                            std::size_t row_limit = kDefaultOracleRowLimit) {
  if (s.rows() > row_limit)
    throw std::invalid_argument("oracle row limit exceeded");
  if (s.rows() > 12)
    throw std::invalid_argument("oracle enumeration is infeasible beyond 12 rows");

  // Rows that are identically zero are realized by a zero coordinate in every
  // vector of the subspace; they do not constrain anything else.
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < s.rows(); ++i) {
    bool all_zero = true;
    for (std::size_t j = 0; j < s.cols(); ++j)
      if (s.at(i, j) != Sign::zero) { all_zero = false; break; }
    if (!all_zero) live.push_back(i);
  }
  const std::size_t m = live.size();
  if (m == 0) return true;

  const std::size_t n = s.cols();
  std::vector<std::vector<Sign>> col(n, std::vector<Sign>(m));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) col[j][i] = s.at(live[i], j);

  // Dimension <= 1: sign outer products u v^T over all row sign patterns u.
  for (std::uint32_t u = 0; u < (1u << m); ++u) {
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) {
      bool fits = false;
      for (Sign v : {Sign::minus, Sign::zero, Sign::plus}) {
        bool match = true;
        for (std::size_t i = 0; i < m; ++i) {
          Sign want = (v == Sign::zero) ? Sign::zero
                                        : ((u >> i) & 1 ? negate(v) : v);
          if (col[j][i] != want) { match = false; break; }
        }
        if (match) { fits = true; break; }
      }
      ok = fits;
    }
    if (ok) return true;
  }

  // Dimension 2 sweep. Row signs are enumerated with row 0 fixed positive:
  // complementing every row yields the same realizable column family.
  std::vector<Sign> block_sign;
  return for_each_ordered_partition(m, [&](const OrderedPartition& p) {
    const std::uint32_t flips = m == 1 ? 1 : (1u << (m - 1));
    for (std::uint32_t f = 0; f < flips; ++f) {
      bool all_ok = true;
      for (std::size_t j = 0; j < n && all_ok; ++j) {
        block_sign.assign(p.blocks, Sign::zero);
        std::array<bool, 32> seen{};
        bool consistent = true;
        for (std::size_t i = 0; i < m && consistent; ++i) {
          Sign v = col[j][i];
          if (i > 0 && ((f >> (i - 1)) & 1)) v = negate(v);
          const int b = p.block_of[i];
          if (!seen[b]) { seen[b] = true; block_sign[b] = v; }
          else if (block_sign[b] != v) consistent = false;
        }
        all_ok = consistent && detail::threshold_column_ok(block_sign, allow_zero);
      }
      if (all_ok) return true;
    }
    return false;
  });
}

// Exact set of zero-free sign patterns of vectors in span{(1,..,1), y},
// obtained by sweeping the threshold across the distinct values of y.
inline std::set<SignVector> subspace_patterns(const RationalVector& orig_y) {
  if (orig_y.empty()) throw std::invalid_argument("empty vector");
  RationalVector y = orig_y;
  for (Rational& q : y) q.canonicalize();
  std::set<Rational> values(y.begin(), y.end());
  std::vector<Rational> desc(values.rbegin(), values.rend());
  const std::size_t t = desc.size();
  std::set<SignVector> out;
  for (std::size_t cut = 0; cut <= t; ++cut) {
    SignVector pattern(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
      std::size_t rank = 0;
      while (desc[rank] != y[i]) ++rank;
      pattern[i] = rank < cut ? Sign::plus : Sign::minus;
    }
    out.insert(pattern);
    out.insert(complement(pattern));
  }
  return out;
}

// 2 * [ C(m-1,0) + C(m-1,1) + ... + C(m-1,d-1) ].
inline mpz_class sauer_shelah_bound(std::size_t m, std::size_t d) {
  if (d < 1 || d > m) throw std::invalid_argument("need 1 <= d <= m");
  mpz_class total = 0;
  for (std::size_t i = 0; i < d; ++i) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), m - 1, i);
    total += b;
  }
  return 2 * total;
}

namespace detail {

inline double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double normal_double(std::mt19937_64& rng) {
  double u1 = unit_double(rng), u2 = unit_double(rng);
  if (u1 <= 0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

inline Rational snap(double x, long denom) {
  const double scaled = x * static_cast<double>(denom);
  if (!(std::abs(scaled) < 9e15)) return Rational(0);
  return Rational(static_cast<long>(std::llround(scaled)), denom);
}

// Solves the r x r system M x = b in doubles (tiny r only).
inline bool solve_small(std::vector<double> mat, std::vector<double> rhs,
                        std::size_t r, std::vector<double>& out) {
  for (std::size_t c = 0; c < r; ++c) {
    std::size_t piv = c;
    for (std::size_t i = c + 1; i < r; ++i)
      if (std::abs(mat[i * r + c]) > std::abs(mat[piv * r + c])) piv = i;
    if (std::abs(mat[piv * r + c]) < 1e-12) return false;
    if (piv != c) {
      for (std::size_t j = 0; j < r; ++j) std::swap(mat[piv * r + j], mat[c * r + j]);
      std::swap(rhs[piv], rhs[c]);
    }
    for (std::size_t i = 0; i < r; ++i) {
      if (i == c) continue;
      const double f = mat[i * r + c] / mat[c * r + c];
      for (std::size_t j = c; j < r; ++j) mat[i * r + j] -= f * mat[c * r + j];
      rhs[i] -= f * rhs[c];
    }
  }
  out.resize(r);
  for (std::size_t i = 0; i < r; ++i) out[i] = rhs[i] / mat[i * r + i];
  return true;
}

}  // namespace detail

// One-sided search for a rank <= r rational matrix with the given sign
// pattern. A returned matrix is exactly verified; returning nothing proves
// nothing. Deterministic for a fixed seed.
inline std::optional<RationalMatrix> heuristic_rank_upper_bound(
    const SignMatrix& s, std::size_t r, std::uint64_t seed = 1,
    std::size_t iters = 50) {
  if (r < 1) throw std::invalid_argument("rank bound must be >= 1");
  const std::size_t m = s.rows(), n = s.cols();
  std::mt19937_64 rng(seed);

  auto verified = [&](const RationalMatrix& a) {
    return sign_of_rational_matrix(a) == s && rational_rank(a) <= r;
  };

  // Direct +-1 outer product when the pattern itself is rank <= 1.
  {
    std::vector<int> u(m, 0);
    SignVector base;
    bool shape_ok = true;
    for (std::size_t i = 0; i < m && shape_ok; ++i) {
      SignVector row = s.row(i);
      if (zero_count(row) == n) continue;
      if (base.empty()) { base = row; u[i] = 1; }
      else if (row == base) u[i] = 1;
      else if (row == complement(base)) u[i] = -1;
      else shape_ok = false;
    }
    if (shape_ok && !base.empty()) {
      RationalMatrix a(m, n);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
          a.at(i, j) = u[i] * static_cast<int>(base[j]);
      if (verified(a)) return a;
    }
    if (shape_ok && base.empty()) {
      RationalMatrix a(m, n);  // all-zero pattern
      if (verified(a)) return a;
    }
  }

  for (std::size_t attempt = 0; attempt < iters; ++attempt) {
    // Random exact substitution; succeeds whenever r is at least the rank a
    // generic substitution lands on.
    {
      RationalMatrix a(m, n);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
          a.at(i, j) = static_cast<int>(s.at(i, j)) *
                       static_cast<long>(1 + rng() % 997);
      if (verified(a)) return a;
    }

    // Alternating least squares on a margin target, then a rational snap of
    // the factors (the snapped product has rank <= r by construction).
    std::vector<double> u(m * r), v(r * n), target(m * n);
    for (double& x : u) x = detail::normal_double(rng);
    for (double& x : v) x = detail::normal_double(rng);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        target[i * n + j] = static_cast<double>(static_cast<int>(s.at(i, j)));

    std::vector<double> gram(r * r), rhs(r), sol;
    auto product_at = [&](std::size_t i, std::size_t j) {
      double acc = 0;
      for (std::size_t k = 0; k < r; ++k) acc += u[i * r + k] * v[k * n + j];
      return acc;
    };
    for (int round = 0; round < 160; ++round) {
      for (std::size_t i = 0; i < m; ++i) {
        std::fill(gram.begin(), gram.end(), 0.0);
        std::fill(rhs.begin(), rhs.end(), 0.0);
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < r; ++k) {
            rhs[k] += v[k * n + j] * target[i * n + j];
            for (std::size_t l = 0; l < r; ++l)
              gram[k * r + l] += v[k * n + j] * v[l * n + j];
          }
        for (std::size_t k = 0; k < r; ++k) gram[k * r + k] += 1e-9;
        if (detail::solve_small(gram, rhs, r, sol))
          for (std::size_t k = 0; k < r; ++k) u[i * r + k] = sol[k];
      }
      for (std::size_t j = 0; j < n; ++j) {
        std::fill(gram.begin(), gram.end(), 0.0);
        std::fill(rhs.begin(), rhs.end(), 0.0);
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t k = 0; k < r; ++k) {
            rhs[k] += u[i * r + k] * target[i * n + j];
            for (std::size_t l = 0; l < r; ++l)
              gram[k * r + l] += u[i * r + k] * u[i * r + l];
          }
        for (std::size_t k = 0; k < r; ++k) gram[k * r + k] += 1e-9;
        if (detail::solve_small(gram, rhs, r, sol))
          for (std::size_t k = 0; k < r; ++k) v[k * n + j] = sol[k];
      }
      // Push violated or weak entries out to the margin, keep satisfied ones.
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          const int sg = static_cast<int>(s.at(i, j));
          if (sg == 0) { target[i * n + j] = 0; continue; }
          const double a = product_at(i, j);
          target[i * n + j] = sg * std::max(1.0, sg * a);
        }
    }

    const long denom = 1L << 20;
    RationalMatrix uq(m, r), vq(r, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < r; ++k) uq.at(i, k) = detail::snap(u[i * r + k], denom);
    for (std::size_t k = 0; k < r; ++k)
      for (std::size_t j = 0; j < n; ++j) vq.at(k, j) = detail::snap(v[k * n + j], denom);
    RationalMatrix a = multiply(uq, vq);
    if (verified(a)) return a;
  }
  return std::nullopt;
}

}  // namespace signrank
