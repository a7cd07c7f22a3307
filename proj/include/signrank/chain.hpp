#pragma once

// Polynomial-time decision of minimum rank <= 2 for strict sign pattern
// matrices, via a chain decomposition of the family of minus-index sets of
// the columns, plus the easy rank <= 0 / <= 1 cases and explicit witness
// construction for accepted inputs.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "signrank/rational.hpp"
#include "signrank/sign.hpp"

namespace signrank {

using IndexSet = std::vector<std::size_t>;  // sorted ascending

struct SetSystem {
  std::size_t ground_size = 0;
  std::set<IndexSet> members;
};

struct ChainWitness {
  std::vector<IndexSet> chain;  // strictly increasing from {} to [m]
};

// A realizing plane for a strict matrix: columns of the matrix obtained by
// flipping rows in `row_flips` are sign(alpha_j * x + beta_j * y).
struct Rank2Witness {
  RationalVector x;  // all ones
  RationalVector y;
  std::vector<bool> row_flips;
  std::vector<std::pair<Rational, Rational>> column_combos;
};

struct TwoChainResult {
  std::optional<ChainWitness> chain;
  std::string reason;  // set when chain is empty
};

inline IndexSet t_minus(const SignVector& v) {
  IndexSet out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] == Sign::minus) out.push_back(i);
  return out;
}

inline IndexSet complement_set(const IndexSet& a, std::size_t m) {
  IndexSet out;
  out.reserve(m - a.size());
  std::size_t p = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (p < a.size() && a[p] == i) { ++p; continue; }
    out.push_back(i);
  }
  return out;
}

inline bool subset_of(const IndexSet& a, const IndexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline SetSystem build_set_system(const SignMatrix& s) {
  if (!s.strict())
    throw std::invalid_argument("set system requires a strict sign matrix");
  SetSystem t;
  t.ground_size = s.rows();
  for (std::size_t j = 0; j < s.cols(); ++j) t.members.insert(t_minus(s.column(j)));
  return t;
}

namespace detail {

// Extends the chain prefix greedily by the unique minimum-size remaining
// superset. Past the first step a size tie is always fatal: the unchosen
// minimal set can sit in neither the chain (incomparable, equal size) nor
// the complement chain (its complement would have to contain a nonempty
// prefix element it is disjoint from).
inline bool grow_chain(const SetSystem& t, std::vector<IndexSet>& chain,
                       std::set<IndexSet>& used, std::size_t k,
                       const IndexSet& full) {
  while (chain.size() < k + 1) {
    const IndexSet* best = nullptr;
    bool tie = false;
    for (const IndexSet& x : t.members) {
      if (used.count(x) || !subset_of(chain.back(), x)) continue;
      if (!best || x.size() < best->size()) { best = &x; tie = false; }
      else if (x.size() == best->size()) tie = true;
    }
    if (!best || tie) return false;
    if (*best == full && chain.size() + 1 < k + 1) return false;
    chain.push_back(*best);
    used.insert(*best);
  }
  return chain.back() == full;
}

}  // namespace detail

// Decides whether the family can be written as an increasing chain from {}
// to [m] together with the complements of its members.
inline TwoChainResult has_two_chain(const SetSystem& t) {
  const std::size_t m = t.ground_size;
  const IndexSet empty_set;
  IndexSet full(m);
  for (std::size_t i = 0; i < m; ++i) full[i] = i;

  if (!t.members.count(empty_set)) return {std::nullopt, "empty set missing"};
  if (!t.members.count(full)) return {std::nullopt, "full set missing"};
  if (t.members.size() % 2 != 0) return {std::nullopt, "odd family size"};
  for (const IndexSet& x : t.members)
    if (!t.members.count(complement_set(x, m)))
      return {std::nullopt, "family not closed under complement"};

  const std::size_t k = t.members.size() / 2;
  if (k == 1) return {ChainWitness{{empty_set, full}}, ""};

  // Minimal nonempty members. One of them must be the second chain element;
  // with three or more, at least two complements would have to coexist in
  // the chain, which is impossible for incomparable sets of equal size.
  std::vector<IndexSet> minimal;
  std::size_t best_size = m + 1;
  for (const IndexSet& x : t.members) {
    if (x.empty()) continue;
    if (x.size() < best_size) { best_size = x.size(); minimal.clear(); }
    if (x.size() == best_size) minimal.push_back(x);
  }
  if (minimal.size() > 2)
    return {std::nullopt, "three or more minimal members"};

  for (const IndexSet& second : minimal) {
    std::vector<IndexSet> chain{empty_set, second};
    std::set<IndexSet> used{empty_set, second};
    if (detail::grow_chain(t, chain, used, k, full))
      return {ChainWitness{std::move(chain)}, ""};
  }
  return {std::nullopt, "no chain decomposition"};
}

inline bool verify_rank2_witness(const SignMatrix& s, const Rank2Witness& w) {
  const std::size_t m = s.rows(), n = s.cols();
  if (w.x.size() != m || w.y.size() != m || w.row_flips.size() != m ||
      w.column_combos.size() != n)
    throw std::invalid_argument("witness dimension mismatch");
  for (std::size_t j = 0; j < n; ++j) {
    const auto& [alpha, beta] = w.column_combos[j];
    for (std::size_t i = 0; i < m; ++i) {
      Sign got = sign_of(alpha * w.x[i] + beta * w.y[i]);
      if (w.row_flips[i]) got = negate(got);
      if (got != s.at(i, j)) return false;
    }
  }
  return true;
}

// Exact rank <= 2 rational realization of a strict matrix from its witness.
inline RationalMatrix realization_from_witness(const SignMatrix& s,
                                               const Rank2Witness& w) {
  RationalMatrix a(s.rows(), s.cols());
  for (std::size_t j = 0; j < s.cols(); ++j) {
    const auto& [alpha, beta] = w.column_combos[j];
    for (std::size_t i = 0; i < s.rows(); ++i) {
      Rational v = alpha * w.x[i] + beta * w.y[i];
      a.at(i, j) = w.row_flips[i] ? Rational(-v) : v;
    }
  }
  return a;
}

inline std::optional<Rank2Witness> minrank_le2_strict(const SignMatrix& s) {
  if (!s.strict())
    throw std::invalid_argument("minrank_le2_strict requires a strict matrix");
  const std::size_t m = s.rows(), n = s.cols();

  // Normalize: flip rows so column 0 is all +, then close the column set
  // under complement. Both transformations preserve the minimum rank.
  std::vector<std::size_t> flips;
  for (std::size_t i = 0; i < m; ++i)
    if (s.at(i, 0) == Sign::minus) flips.push_back(i);
  const SignMatrix s2 = flip_rows(s, flips);

  std::vector<bool> flip_mask(m, false);
  for (std::size_t i : flips) flip_mask[i] = true;

  auto build_witness = [&](const ChainWitness& cw) -> Rank2Witness {
    Rank2Witness w;
    w.x.assign(m, Rational(1));
    w.y.assign(m, Rational(0));
    w.row_flips = flip_mask;
    std::map<IndexSet, std::size_t> position;  // 1-based chain positions
    for (std::size_t p = 0; p < cw.chain.size(); ++p)
      position[cw.chain[p]] = p + 1;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t p = 1; p < cw.chain.size(); ++p) {
        const IndexSet& a = cw.chain[p];
        if (std::binary_search(a.begin(), a.end(), i)) {
          w.y[i] = make_rational(1, static_cast<long>(p + 1));
          break;
        }
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      const IndexSet d = t_minus(s2.column(j));
      auto it = position.find(d);
      if (it != position.end()) {
        w.column_combos.emplace_back(
            Rational(1), make_rational(-(2 * static_cast<long>(it->second) + 1), 2));
      } else {
        it = position.find(complement_set(d, m));
        if (it == position.end())
          throw std::logic_error("column not covered by chain decomposition");
        w.column_combos.emplace_back(
            Rational(-1), make_rational(2 * static_cast<long>(it->second) + 1, 2));
      }
    }
    if (!verify_rank2_witness(s, w))
      throw std::logic_error("constructed witness failed verification");
    return w;
  };

  if (m == 1) {
    IndexSet full{0};
    return build_witness(ChainWitness{{IndexSet{}, full}});
  }

  SetSystem t;
  t.ground_size = m;
  for (std::size_t j = 0; j < n; ++j) {
    SignVector c = s2.column(j);
    t.members.insert(t_minus(c));
    t.members.insert(t_minus(complement(c)));
  }

  TwoChainResult res = has_two_chain(t);
  if (!res.chain) return std::nullopt;
  return build_witness(*res.chain);
}

// minrank <= r for r in {0, 1}, generalized matrices allowed.
inline bool minrank_le_r_small(const SignMatrix& s, int r) {
  if (r != 0 && r != 1) throw std::invalid_argument("r must be 0 or 1");
  bool all_zero = true;
  for (std::size_t i = 0; i < s.rows() && all_zero; ++i)
    for (std::size_t j = 0; j < s.cols(); ++j)
      if (s.at(i, j) != Sign::zero) { all_zero = false; break; }
  if (r == 0 || all_zero) return all_zero;

  std::vector<std::size_t> live_rows, live_cols;
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j)
      if (s.at(i, j) != Sign::zero) { live_rows.push_back(i); break; }
  for (std::size_t j = 0; j < s.cols(); ++j)
    for (std::size_t i = 0; i < s.rows(); ++i)
      if (s.at(i, j) != Sign::zero) { live_cols.push_back(j); break; }

  SignVector first;
  for (std::size_t i : live_rows) {
    SignVector row(live_cols.size());
    for (std::size_t c = 0; c < live_cols.size(); ++c) row[c] = s.at(i, live_cols[c]);
    if (!full_support(row)) return false;
    if (first.empty()) first = row;
    else if (row != first && row != complement(first)) return false;
  }
  return true;
}

}  // namespace signrank
