#pragma once

// Exact rational scalars, vectors and dense matrices on top of GMP.
// All arithmetic in this library is exact; nothing here ever rounds.

#include <gmpxx.h>

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace signrank {

using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

// Parses "p", "-p" or "p/q" into a canonical (reduced, q > 0) rational.
inline Rational parse_rational(const std::string& text) {
  Rational q;
  try {
    q = Rational(text);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("bad rational: '" + text + "'");
  }
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

// GMP's two-argument constructor does not reduce; this one does.
inline Rational make_rational(long num, long den) {
  Rational q(num, den);
  if (den == 0) throw std::invalid_argument("zero denominator");
  q.canonicalize();
  return q;
}

class RationalMatrix {
 public:
  RationalMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), e_(rows * cols) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("empty rational matrix");
  }

  static RationalMatrix from_rows(const std::vector<RationalVector>& rows) {
    if (rows.empty() || rows.front().empty())
      throw std::invalid_argument("empty rational matrix");
    RationalMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw std::invalid_argument("ragged rational matrix");
      for (std::size_t j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  RationalVector row(std::size_t i) const {
    return RationalVector(e_.begin() + i * cols_, e_.begin() + (i + 1) * cols_);
  }
  RationalVector column(std::size_t j) const {
    RationalVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
  }

  bool operator==(const RationalMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Rational> e_;
};

inline RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("dimension mismatch in multiply");
  RationalMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rational& aik = a.at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c.at(i, j) += aik * b.at(k, j);
    }
  return c;
}

// Exact rank over the rationals by Gaussian elimination (division is exact,
// so plain elimination loses nothing).
inline std::size_t rational_rank(RationalMatrix a) {
  std::size_t rank = 0;
  const std::size_t m = a.rows(), n = a.cols();
  for (std::size_t col = 0; col < n && rank < m; ++col) {
    std::size_t pivot = rank;
    while (pivot < m && a.at(pivot, col) == 0) ++pivot;
    if (pivot == m) continue;
    if (pivot != rank)
      for (std::size_t j = col; j < n; ++j) std::swap(a.at(pivot, j), a.at(rank, j));
    for (std::size_t i = rank + 1; i < m; ++i) {
      if (a.at(i, col) == 0) continue;
      Rational f = a.at(i, col) / a.at(rank, col);
      for (std::size_t j = col; j < n; ++j) a.at(i, j) -= f * a.at(rank, j);
    }
    ++rank;
  }
  return rank;
}

// Text format: one row per line, whitespace-separated rationals.
inline RationalMatrix parse_rational_matrix(const std::string& text) {
  std::vector<RationalVector> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    RationalVector row;
    std::string field;
    while (ls >> field) row.push_back(parse_rational(field));
    if (row.empty()) continue;
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::invalid_argument("ragged rational matrix input");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("empty rational matrix input");
  return RationalMatrix::from_rows(rows);
}

inline std::string serialize(const RationalMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ' ';
      out += to_string(m.at(i, j));
    }
    out += '\n';
  }
  return out;
}

}  // namespace signrank
