#pragma once

// Transformation of a generalized sign pattern matrix into a strict one with
// the same minimum rank, or a certified verdict that the minimum rank
// exceeds 2. Every rewrite is recorded in a trace that can be replayed
// backwards to turn a realization of the output into one of the input.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "signrank/chain.hpp"
#include "signrank/rational.hpp"
#include "signrank/sign.hpp"

namespace signrank {

enum class ReductionStepKind {
  drop_zero_rows,
  drop_zero_cols,
  permute_rows,
  flip_rows,
  merge_rows,
  split_column,
};

struct ReductionStep {
  ReductionStepKind kind;
  std::vector<std::size_t> indices;  // dropped/flipped/merged indices, or {zero row} for a split
  std::vector<std::size_t> perm;     // permute_rows: new row i was old row perm[i]
  std::size_t column = 0;            // split_column: index of the column that was split
};

struct ReductionTrace {
  std::vector<ReductionStep> steps;
};

enum class ReductionStatus { strict_output, rank_zero, minrank_gt2 };

struct ReductionOutcome {
  ReductionStatus status = ReductionStatus::rank_zero;
  std::optional<SignMatrix> matrix;  // present iff status == strict_output
  ReductionTrace trace;
  int failing_step = 0;              // 3 or 4 when status == minrank_gt2
  std::size_t witness_column = 0;
  IndexSet witness_rows;
};

namespace detail {

struct Grid {
  std::vector<SignVector> rows;
  std::size_t cols = 0;
};

inline bool row_all_zero(const SignVector& r) { return zero_count(r) == r.size(); }

}  // namespace detail

inline ReductionOutcome reduce_generalized(const SignMatrix& input) {
  detail::Grid g;
  g.cols = input.cols();
  for (std::size_t i = 0; i < input.rows(); ++i) g.rows.push_back(input.row(i));

  ReductionOutcome out;
  auto fail = [&](int step, std::size_t column, IndexSet rows) {
    out.status = ReductionStatus::minrank_gt2;
    out.failing_step = step;
    out.witness_column = column;
    out.witness_rows = std::move(rows);
    return out;
  };

  for (;;) {
    // Step 1: drop all-zero rows and columns.
    {
      std::vector<std::size_t> dead;
      for (std::size_t i = 0; i < g.rows.size(); ++i)
        if (detail::row_all_zero(g.rows[i])) dead.push_back(i);
      if (!dead.empty()) {
        std::vector<SignVector> kept;
        for (std::size_t i = 0; i < g.rows.size(); ++i)
          if (!std::binary_search(dead.begin(), dead.end(), i)) kept.push_back(g.rows[i]);
        g.rows = std::move(kept);
        out.trace.steps.push_back({ReductionStepKind::drop_zero_rows, dead, {}, 0});
      }
      if (g.rows.empty()) { out.status = ReductionStatus::rank_zero; return out; }

      std::vector<std::size_t> dead_cols;
      for (std::size_t j = 0; j < g.cols; ++j) {
        bool zero = true;
        for (const SignVector& r : g.rows)
          if (r[j] != Sign::zero) { zero = false; break; }
        if (zero) dead_cols.push_back(j);
      }
      if (!dead_cols.empty()) {
        for (SignVector& r : g.rows) {
          SignVector nr;
          for (std::size_t j = 0; j < g.cols; ++j)
            if (!std::binary_search(dead_cols.begin(), dead_cols.end(), j)) nr.push_back(r[j]);
          r = std::move(nr);
        }
        g.cols -= dead_cols.size();
        out.trace.steps.push_back({ReductionStepKind::drop_zero_cols, dead_cols, {}, 0});
      }
      if (g.cols == 0) { out.status = ReductionStatus::rank_zero; return out; }
    }

    const std::size_t m = g.rows.size();

    bool strict = true;
    for (const SignVector& r : g.rows)
      if (!full_support(r)) { strict = false; break; }
    if (strict) {
      out.status = ReductionStatus::strict_output;
      out.matrix = SignMatrix::from_rows(g.rows);
      return out;
    }

    // Step 2: choose the leftmost column containing a zero and normalize it
    // to k zeros followed by m-k plus entries.
    std::size_t pivot_col = 0;
    for (;; ++pivot_col) {
      bool has_zero = false;
      for (const SignVector& r : g.rows)
        if (r[pivot_col] == Sign::zero) { has_zero = true; break; }
      if (has_zero) break;
    }
    {
      std::vector<std::size_t> perm;
      for (std::size_t i = 0; i < m; ++i)
        if (g.rows[i][pivot_col] == Sign::zero) perm.push_back(i);
      for (std::size_t i = 0; i < m; ++i)
        if (g.rows[i][pivot_col] != Sign::zero) perm.push_back(i);
      bool identity = true;
      for (std::size_t i = 0; i < m; ++i)
        if (perm[i] != i) { identity = false; break; }
      if (!identity) {
        std::vector<SignVector> permuted(m);
        for (std::size_t i = 0; i < m; ++i) permuted[i] = g.rows[perm[i]];
        g.rows = std::move(permuted);
        out.trace.steps.push_back({ReductionStepKind::permute_rows, {}, perm, 0});
      }
    }
    std::size_t k = 0;
    while (k < m && g.rows[k][pivot_col] == Sign::zero) ++k;
    {
      std::vector<std::size_t> flips;
      for (std::size_t i = k; i < m; ++i)
        if (g.rows[i][pivot_col] == Sign::minus) flips.push_back(i);
      if (!flips.empty()) {
        for (std::size_t i : flips) g.rows[i] = complement(g.rows[i]);
        out.trace.steps.push_back({ReductionStepKind::flip_rows, flips, {}, 0});
      }
    }

    // Step 3: a column with nonzero first coordinate must be zero-free on the
    // first k rows; normalize those rows to +.
    std::size_t y_col = 0;
    while (g.rows[0][y_col] == Sign::zero) ++y_col;
    {
      IndexSet zero_rows;
      for (std::size_t i = 0; i < k; ++i)
        if (g.rows[i][y_col] == Sign::zero) zero_rows.push_back(i);
      if (!zero_rows.empty()) return fail(3, y_col, std::move(zero_rows));
      std::vector<std::size_t> flips;
      for (std::size_t i = 0; i < k; ++i)
        if (g.rows[i][y_col] == Sign::minus) flips.push_back(i);
      if (!flips.empty()) {
        for (std::size_t i : flips) g.rows[i] = complement(g.rows[i]);
        out.trace.steps.push_back({ReductionStepKind::flip_rows, flips, {}, 0});
      }
    }

    // Step 4: a column with two or more zeros forces its zero rows to be
    // duplicates; merge them or reject.
    bool merged = false;
    for (std::size_t j = 0; j < g.cols && !merged; ++j) {
      IndexSet u;
      for (std::size_t i = 0; i < m; ++i)
        if (g.rows[i][j] == Sign::zero) u.push_back(i);
      if (u.size() < 2) continue;
      const bool u_is_prefix = u.back() == k - 1 && u.size() == k;
      const bool u_below = u.front() >= k;
      if (!u_is_prefix && !u_below) return fail(4, j, std::move(u));
      for (std::size_t t = 1; t < u.size(); ++t)
        if (g.rows[u[t]] != g.rows[u[0]]) return fail(4, j, std::move(u));
      std::vector<SignVector> kept;
      for (std::size_t i = 0; i < m; ++i)
        if (i == u[0] || !std::binary_search(u.begin(), u.end(), i))
          kept.push_back(g.rows[i]);
      g.rows = std::move(kept);
      out.trace.steps.push_back({ReductionStepKind::merge_rows, u, {}, 0});
      merged = true;
    }
    if (merged) continue;

    // Step 5: split every remaining single-zero column into its + and -
    // completions (no all-zero row can exist here, so this is rank-safe).
    for (std::size_t j = 0; j < g.cols; ++j) {
      std::size_t zero_row = m;
      std::size_t zeros = 0;
      for (std::size_t i = 0; i < m; ++i)
        if (g.rows[i][j] == Sign::zero) { zero_row = i; ++zeros; }
      if (zeros == 0) continue;
      if (zeros > 1) throw std::logic_error("multi-zero column after merge phase");
      for (std::size_t i = 0; i < m; ++i) {
        SignVector& r = g.rows[i];
        Sign plus_val = i == zero_row ? Sign::plus : r[j];
        Sign minus_val = i == zero_row ? Sign::minus : r[j];
        r.insert(r.begin() + static_cast<std::ptrdiff_t>(j) + 1, minus_val);
        r[j] = plus_val;
      }
      ++g.cols;
      out.trace.steps.push_back({ReductionStepKind::split_column, {zero_row}, {}, j});
      ++j;  // skip the - copy just inserted
    }
  }
}

// Replays the trace backwards, turning an exact realization of the reduced
// matrix into one of the original matrix (same rank bound).
inline RationalMatrix undo_trace(const ReductionTrace& trace, RationalMatrix a) {
  for (auto it = trace.steps.rbegin(); it != trace.steps.rend(); ++it) {
    const ReductionStep& st = *it;
    const std::size_t m = a.rows(), n = a.cols();
    switch (st.kind) {
      case ReductionStepKind::split_column: {
        const std::size_t j = st.column, z = st.indices.front();
        RationalMatrix merged(m, n - 1);
        Rational p = a.at(z, j), q = a.at(z, j + 1);
        if (p == q) throw std::logic_error("degenerate split undo");
        Rational t = p / (p - q);
        for (std::size_t i = 0; i < m; ++i) {
          std::size_t out_j = 0;
          for (std::size_t jj = 0; jj < n; ++jj) {
            if (jj == j + 1) continue;
            merged.at(i, out_j++) =
                jj == j ? (1 - t) * a.at(i, j) + t * a.at(i, j + 1) : a.at(i, jj);
          }
        }
        a = std::move(merged);
        break;
      }
      case ReductionStepKind::merge_rows: {
        const std::size_t old_m = m + st.indices.size() - 1;
        RationalMatrix grown(old_m, n);
        std::size_t src = 0;
        for (std::size_t i = 0; i < old_m; ++i) {
          const bool dropped =
              i != st.indices.front() &&
              std::binary_search(st.indices.begin(), st.indices.end(), i);
          const std::size_t from = dropped ? st.indices.front() : src++;
          for (std::size_t j = 0; j < n; ++j) grown.at(i, j) = a.at(from, j);
        }
        a = std::move(grown);
        break;
      }
      case ReductionStepKind::flip_rows:
        for (std::size_t i : st.indices)
          for (std::size_t j = 0; j < n; ++j) a.at(i, j) = -a.at(i, j);
        break;
      case ReductionStepKind::permute_rows: {
        RationalMatrix unpermuted(m, n);
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < n; ++j) unpermuted.at(st.perm[i], j) = a.at(i, j);
        a = std::move(unpermuted);
        break;
      }
      case ReductionStepKind::drop_zero_rows: {
        const std::size_t old_m = m + st.indices.size();
        RationalMatrix grown(old_m, n);
        std::size_t src = 0;
        for (std::size_t i = 0; i < old_m; ++i) {
          if (std::binary_search(st.indices.begin(), st.indices.end(), i)) continue;
          for (std::size_t j = 0; j < n; ++j) grown.at(i, j) = a.at(src, j);
          ++src;
        }
        a = std::move(grown);
        break;
      }
      case ReductionStepKind::drop_zero_cols: {
        const std::size_t old_n = n + st.indices.size();
        RationalMatrix grown(m, old_n);
        std::size_t src = 0;
        for (std::size_t j = 0; j < old_n; ++j) {
          if (std::binary_search(st.indices.begin(), st.indices.end(), j)) continue;
          for (std::size_t i = 0; i < m; ++i) grown.at(i, j) = a.at(i, src);
          ++src;
        }
        a = std::move(grown);
        break;
      }
    }
  }
  return a;
}

struct GeneralizedDecision {
  bool yes = false;
  ReductionOutcome reduction;
  std::optional<Rank2Witness> witness;        // for reduction.matrix
  std::optional<RationalMatrix> realization;  // rank <= 2, signs equal the input
};

inline GeneralizedDecision minrank_le2(const SignMatrix& s) {
  GeneralizedDecision d;
  d.reduction = reduce_generalized(s);
  switch (d.reduction.status) {
    case ReductionStatus::rank_zero:
      d.yes = true;
      d.realization = RationalMatrix(s.rows(), s.cols());
      return d;
    case ReductionStatus::minrank_gt2:
      return d;
    case ReductionStatus::strict_output: {
      d.witness = minrank_le2_strict(*d.reduction.matrix);
      d.yes = d.witness.has_value();
      if (d.yes)
        d.realization = undo_trace(
            d.reduction.trace,
            realization_from_witness(*d.reduction.matrix, *d.witness));
      return d;
    }
  }
  return d;
}

}  // namespace signrank
