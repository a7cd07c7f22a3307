#pragma once

// Covector-level operations: reorientation, reorientation search between two
// covector sets, reconstruction of vertex and edge covectors from region
// covectors of a uniform arrangement, and the sign matrices built from an
// arrangement's covectors together with exact rank <= 3 point/line
// realizations of them.

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "signrank/geometry.hpp"
#include "signrank/rational.hpp"
#include "signrank/sign.hpp"

namespace signrank {

inline SignVector reorient(const SignVector& v, const std::vector<std::size_t>& ground) {
  SignVector out = v;
  for (std::size_t i : ground) out.at(i) = negate(out.at(i));
  return out;
}

inline std::set<SignVector> reorient(const std::set<SignVector>& covectors,
                                     const std::vector<std::size_t>& ground) {
  std::set<SignVector> out;
  for (const SignVector& v : covectors) out.insert(reorient(v, ground));
  return out;
}

// Finds the lexicographically least A with reorient(l1, A) == l2, if any.
inline std::optional<std::vector<std::size_t>> find_reorientation(
    const std::set<SignVector>& l1, const std::set<SignVector>& l2) {
  if (l1.empty() && l2.empty()) return std::vector<std::size_t>{};
  if (l1.size() != l2.size()) return std::nullopt;
  const std::size_t n = l1.begin()->size();
  for (const SignVector& v : l2)
    if (v.size() != n) return std::nullopt;

  std::multiset<std::size_t> z1, z2;
  for (const SignVector& v : l1) z1.insert(zero_count(v));
  for (const SignVector& v : l2) z2.insert(zero_count(v));
  if (z1 != z2) return std::nullopt;

  std::optional<std::vector<std::size_t>> best;
  auto consider = [&](const std::vector<std::size_t>& a) {
    if (reorient(l1, a) != l2) return;
    if (!best || a < *best) best = a;
  };

  const SignVector* pivot = nullptr;
  for (const SignVector& v : l1)
    if (full_support(v)) { pivot = &v; break; }

  if (pivot) {
    for (const SignVector& w : l2) {
      if (!full_support(w)) continue;
      std::vector<std::size_t> a;
      for (std::size_t i = 0; i < n; ++i)
        if ((*pivot)[i] != w[i]) a.push_back(i);
      consider(a);
    }
    return best;
  }

  if (n > 20) throw std::runtime_error("no full-support covector to anchor the search");
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> a;
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1) a.push_back(i);
    consider(a);
  }
  return best;
}

struct ReconstructedCells {
  std::set<SignVector> c0, c1;
};

// Rebuilds vertex (two-zero) and edge (one-zero) covectors from the full
// region covector set of a uniform arrangement. A vertex covector is any
// vector with two zeroed coordinates whose four +/- completions there are
// all regions; an edge covector arises from a vertex covector by turning
// one of its zeros into + or -.
inline ReconstructedCells reconstruct_from_regions(const std::set<SignVector>& c2,
                                                   std::size_t n) {
  for (const SignVector& v : c2) {
    if (v.size() != n) throw std::invalid_argument("region covector of wrong length");
    if (!full_support(v)) throw std::invalid_argument("region covectors must have full support");
  }
  ReconstructedCells out;
  for (const SignVector& v : c2) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        SignVector probe = v;
        bool all_present = true;
        for (Sign si : {Sign::plus, Sign::minus}) {
          for (Sign sj : {Sign::plus, Sign::minus}) {
            probe[i] = si;
            probe[j] = sj;
            if (!c2.count(probe)) { all_present = false; break; }
          }
          if (!all_present) break;
        }
        if (!all_present) continue;
        probe[i] = Sign::zero;
        probe[j] = Sign::zero;
        out.c0.insert(probe);
      }
  }
  for (const SignVector& u : out.c0) {
    for (std::size_t i = 0; i < n; ++i) {
      if (u[i] != Sign::zero) continue;
      for (Sign s : {Sign::plus, Sign::minus}) {
        SignVector e = u;
        e[i] = s;
        out.c1.insert(e);
      }
    }
  }
  return out;
}

inline SignMatrix mat_of(const std::vector<SignVector>& rows) {
  return SignMatrix::from_rows(rows);
}

inline SignMatrix mat_of_sorted(const std::set<SignVector>& covectors) {
  if (covectors.empty()) throw std::invalid_argument("empty covector set");
  return SignMatrix::from_rows(
      std::vector<SignVector>(covectors.begin(), covectors.end()));
}

struct PointLineRealization {
  RationalMatrix points;  // one row (x, y, 1) per matrix row
  RationalMatrix lines;   // one column (a, b, c), (a, b) != (0, 0), per matrix column

  PointLineRealization(RationalMatrix p, RationalMatrix l)
      : points(std::move(p)), lines(std::move(l)) {
    if (points.cols() != 3 || lines.rows() != 3)
      throw std::invalid_argument("realization shape must be m x 3 and 3 x n");
    for (std::size_t i = 0; i < points.rows(); ++i)
      if (points.at(i, 2) != 1)
        throw std::invalid_argument("third point coordinate must be 1");
    for (std::size_t j = 0; j < lines.cols(); ++j)
      if (lines.at(0, j) == 0 && lines.at(1, j) == 0)
        throw std::invalid_argument("degenerate line column");
  }
};

inline bool verify_rank3_witness(const SignMatrix& s, const PointLineRealization& r) {
  if (r.points.rows() != s.rows() || r.lines.cols() != s.cols())
    throw std::invalid_argument("realization dimension mismatch");
  RationalMatrix a = multiply(r.points, r.lines);
  return sign_of_rational_matrix(a) == s && rational_rank(a) <= 3;
}

namespace detail {

inline std::vector<SignVector> sorted_rows(const std::set<SignVector>& s) {
  return std::vector<SignVector>(s.begin(), s.end());
}

inline RationalMatrix points_matrix(const std::vector<SignVector>& rows,
                                    const std::map<SignVector, Point>& reps) {
  RationalMatrix p(rows.size(), 3);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto it = reps.find(rows[i]);
    if (it == reps.end()) throw std::logic_error("covector without sample point");
    p.at(i, 0) = it->second.x;
    p.at(i, 1) = it->second.y;
    p.at(i, 2) = 1;
  }
  return p;
}

inline void fill_line_columns(RationalMatrix& l, const Arrangement& arr) {
  for (std::size_t j = 0; j < arr.size(); ++j) {
    const Line& ln = arr.line(j);
    l.at(0, j) = ln.orient * ln.a;
    l.at(1, j) = ln.orient * ln.b;
    l.at(2, j) = ln.orient * ln.c;
  }
}

}  // namespace detail

// Sign matrix whose rows are all realized covectors of the arrangement in
// lexicographic order, with an all-+ column appended.
inline SignMatrix full_covector_matrix(const Arrangement& arr) {
  const CovectorSet cov = enumerate_covectors(arr);
  std::vector<SignVector> rows = detail::sorted_rows(cov.all());
  for (SignVector& r : rows) r.push_back(Sign::plus);
  return SignMatrix::from_rows(rows);
}

// Rank <= 3 realization of full_covector_matrix(arr): sample points as rows,
// orientation-scaled line coefficients as columns, plus one far line kept on
// the positive side of every sample point.
inline PointLineRealization full_covector_realization(const Arrangement& arr) {
  const CovectorSet cov = enumerate_covectors(arr);
  std::vector<SignVector> rows = detail::sorted_rows(cov.all());
  RationalMatrix p = detail::points_matrix(rows, cov.representative);

  RationalMatrix l(3, arr.size() + 1);
  detail::fill_line_columns(l, arr);
  Rational min_x = p.at(0, 0);
  for (std::size_t i = 1; i < p.rows(); ++i)
    if (p.at(i, 0) < min_x) min_x = p.at(i, 0);
  l.at(0, arr.size()) = 1;
  l.at(1, arr.size()) = 0;
  l.at(2, arr.size()) = 1 - min_x;
  return PointLineRealization(std::move(p), std::move(l));
}

// Strict sign matrix whose rows are the region covectors of a uniform
// arrangement in lexicographic order, dimensions (1 + C(n+1,2)) x n.
inline SignMatrix region_matrix(const Arrangement& arr) {
  if (!is_uniform(arr))
    throw std::invalid_argument("region matrix requires a uniform arrangement");
  return mat_of_sorted(enumerate_covectors(arr).c2);
}

inline PointLineRealization region_realization(const Arrangement& arr) {
  if (!is_uniform(arr))
    throw std::invalid_argument("region matrix requires a uniform arrangement");
  const CovectorSet cov = enumerate_covectors(arr);
  std::vector<SignVector> rows = detail::sorted_rows(cov.c2);
  RationalMatrix p = detail::points_matrix(rows, cov.representative);
  RationalMatrix l(3, arr.size());
  detail::fill_line_columns(l, arr);
  return PointLineRealization(std::move(p), std::move(l));
}

// --- covector set file format -------------------------------------------
//
// Header line "n=<int>" followed by one sign vector per line over {+,-,0}.

struct CovectorFile {
  std::size_t n = 0;
  std::set<SignVector> covectors;
};

inline CovectorFile parse_covector_file(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  CovectorFile out;
  bool have_header = false;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    if (!have_header) {
      if (line.rfind("n=", 0) != 0)
        throw std::invalid_argument("covector file must start with n=<int>");
      out.n = std::stoul(line.substr(2));
      if (out.n == 0) throw std::invalid_argument("ground size must be positive");
      have_header = true;
      continue;
    }
    SignVector v = sign_vector(line);
    if (v.size() != out.n)
      throw std::invalid_argument("covector of wrong length: " + line);
    out.covectors.insert(v);
  }
  if (!have_header) throw std::invalid_argument("empty covector file");
  return out;
}

inline std::string serialize(const CovectorFile& f) {
  std::string out = "n=" + std::to_string(f.n) + "\n";
  for (const SignVector& v : f.covectors) out += to_string(v) + "\n";
  return out;
}

}  // namespace signrank
