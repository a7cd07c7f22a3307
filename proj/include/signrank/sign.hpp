#pragma once

// Sign vectors and sign pattern matrices over {+, -, 0}.
// A matrix is "strict" when it contains no zero entry.

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "signrank/rational.hpp"

namespace signrank {

enum class Sign : std::int8_t { minus = -1, zero = 0, plus = 1 };

inline bool operator<(Sign a, Sign b) {
  return static_cast<std::int8_t>(a) < static_cast<std::int8_t>(b);
}

inline Sign negate(Sign s) {
  return static_cast<Sign>(-static_cast<std::int8_t>(s));
}

inline char to_char(Sign s) {
  switch (s) {
    case Sign::minus: return '-';
    case Sign::zero: return '0';
    case Sign::plus: return '+';
  }
  throw std::logic_error("bad sign value");
}

inline Sign sign_from_char(char c) {
  switch (c) {
    case '-': return Sign::minus;
    case '0': return Sign::zero;
    case '+': return Sign::plus;
    default: throw std::invalid_argument(std::string("illegal sign character '") + c + "'");
  }
}

inline Sign sign_of(const Rational& q) {
  int s = sgn(q);
  return s < 0 ? Sign::minus : (s > 0 ? Sign::plus : Sign::zero);
}

using SignVector = std::vector<Sign>;

inline SignVector complement(const SignVector& v) {
  SignVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = negate(v[i]);
  return out;
}

inline bool full_support(const SignVector& v) {
  for (Sign s : v)
    if (s == Sign::zero) return false;
  return true;
}

inline std::size_t zero_count(const SignVector& v) {
  std::size_t z = 0;
  for (Sign s : v) z += (s == Sign::zero);
  return z;
}

inline std::string to_string(const SignVector& v) {
  std::string out;
  out.reserve(v.size());
  for (Sign s : v) out += to_char(s);
  return out;
}

inline SignVector sign_vector(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty sign vector");
  SignVector v;
  v.reserve(text.size());
  for (char c : text) v.push_back(sign_from_char(c));
  return v;
}

class SignMatrix {
 public:
  SignMatrix(std::size_t rows, std::size_t cols, std::vector<Sign> entries)
      : rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (rows_ == 0 || cols_ == 0) throw std::invalid_argument("empty sign matrix");
    if (e_.size() != rows_ * cols_) throw std::invalid_argument("entry count mismatch");
    strict_ = true;
    for (Sign s : e_)
      if (s == Sign::zero) { strict_ = false; break; }
  }

  static SignMatrix from_rows(const std::vector<SignVector>& rows) {
    if (rows.empty()) throw std::invalid_argument("empty sign matrix");
    std::vector<Sign> entries;
    entries.reserve(rows.size() * rows.front().size());
    for (const SignVector& r : rows) {
      if (r.size() != rows.front().size()) throw std::invalid_argument("ragged rows");
      entries.insert(entries.end(), r.begin(), r.end());
    }
    return SignMatrix(rows.size(), rows.front().size(), std::move(entries));
  }

  static SignMatrix from_columns(const std::vector<SignVector>& cols) {
    if (cols.empty()) throw std::invalid_argument("empty sign matrix");
    const std::size_t m = cols.front().size();
    std::vector<Sign> entries(m * cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != m) throw std::invalid_argument("ragged columns");
      for (std::size_t i = 0; i < m; ++i) entries[i * cols.size() + j] = cols[j][i];
    }
    return SignMatrix(m, cols.size(), std::move(entries));
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool strict() const { return strict_; }

  Sign at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw std::out_of_range("sign matrix index");
    return e_[i * cols_ + j];
  }

  SignVector row(std::size_t i) const {
    if (i >= rows_) throw std::out_of_range("row index");
    return SignVector(e_.begin() + i * cols_, e_.begin() + (i + 1) * cols_);
  }

  SignVector column(std::size_t j) const {
    if (j >= cols_) throw std::out_of_range("column index");
    SignVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = e_[i * cols_ + j];
    return c;
  }

  std::vector<SignVector> columns() const {
    std::vector<SignVector> out;
    out.reserve(cols_);
    for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
    return out;
  }

  bool operator==(const SignMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Sign> e_;
  bool strict_;
};

// Complements the rows listed in `rows`; applying twice is the identity.
inline SignMatrix flip_rows(const SignMatrix& s, const std::vector<std::size_t>& rows) {
  std::vector<bool> flip(s.rows(), false);
  for (std::size_t r : rows) {
    if (r >= s.rows()) throw std::out_of_range("row flip index");
    flip[r] = true;
  }
  std::vector<SignVector> out;
  out.reserve(s.rows());
  for (std::size_t i = 0; i < s.rows(); ++i)
    out.push_back(flip[i] ? complement(s.row(i)) : s.row(i));
  return SignMatrix::from_rows(out);
}

// Text interchange format: one row per line over {+,-,0}, newline-terminated.
inline SignMatrix parse_sign_matrix(const std::string& text) {
  std::vector<SignVector> rows;
  std::string line;
  for (std::size_t pos = 0; pos <= text.size();) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) {
      line = text.substr(pos);
      pos = text.size() + 1;
    } else {
      line = text.substr(pos, nl - pos);
      pos = nl + 1;
    }
    if (line.empty()) continue;
    rows.push_back(sign_vector(line));
    if (rows.back().size() != rows.front().size())
      throw std::invalid_argument("ragged rows in sign matrix input");
  }
  if (rows.empty()) throw std::invalid_argument("empty sign matrix input");
  return SignMatrix::from_rows(rows);
}

inline std::string serialize(const SignMatrix& s) {
  std::string out;
  out.reserve(s.rows() * (s.cols() + 1));
  for (std::size_t i = 0; i < s.rows(); ++i) {
    out += to_string(s.row(i));
    out += '\n';
  }
  return out;
}

inline SignMatrix sign_of_rational_matrix(const RationalMatrix& a) {
  std::vector<Sign> entries;
  entries.reserve(a.rows() * a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) entries.push_back(sign_of(a.at(i, j)));
  return SignMatrix(a.rows(), a.cols(), std::move(entries));
}

}  // namespace signrank
