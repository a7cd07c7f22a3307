#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "signrank/gen.hpp"
#include "signrank/genreduce.hpp"
#include "signrank/oracle.hpp"

using namespace signrank;

TEST_CASE("all-zero input collapses to the rank-zero outcome") {
  ReductionOutcome r = reduce_generalized(parse_sign_matrix("000\n000\n"));
  CHECK(r.status == ReductionStatus::rank_zero);

  GeneralizedDecision d = minrank_le2(parse_sign_matrix("000\n000\n"));
  CHECK(d.yes);
  REQUIRE(d.realization.has_value());
  CHECK(sign_of_rational_matrix(*d.realization) ==
        parse_sign_matrix("000\n000\n"));
  CHECK(rational_rank(*d.realization) == 0);
}

TEST_CASE("strict input passes through untouched") {
  SignMatrix s = parse_sign_matrix("+-\n-+\n");
  ReductionOutcome r = reduce_generalized(s);
  REQUIRE(r.status == ReductionStatus::strict_output);
  CHECK(*r.matrix == s);
  CHECK(r.trace.steps.empty());
}

TEST_CASE("single-zero column splits into both completions") {
  ReductionOutcome r = reduce_generalized(parse_sign_matrix("0+\n++\n"));
  REQUIRE(r.status == ReductionStatus::strict_output);
  CHECK(*r.matrix == parse_sign_matrix("+-+\n+++\n"));
}

TEST_CASE("identity-like pattern has minimum rank exactly 2") {
  SignMatrix s = parse_sign_matrix("+0\n0+\n");
  GeneralizedDecision d = minrank_le2(s);
  CHECK(d.yes);
  REQUIRE(d.realization.has_value());
  CHECK(sign_of_rational_matrix(*d.realization) == s);
  CHECK(rational_rank(*d.realization) <= 2);
  CHECK_FALSE(minrank_le_r_small(s, 1));
}

TEST_CASE("single nonzero column is rank 1") {
  SignMatrix s = parse_sign_matrix("0+0\n0-0\n000\n");
  GeneralizedDecision d = minrank_le2(s);
  CHECK(d.yes);
  CHECK(minrank_le_r_small(s, 1));
}

TEST_CASE("a zero among the leading rows of an anchor column certifies rank > 2") {
  // first column forces X = (0,0,+); the first column with a nonzero top
  // entry has a zero inside the leading block
  SignMatrix s = parse_sign_matrix("0++\n00-\n+++\n");
  ReductionOutcome r = reduce_generalized(s);
  REQUIRE(r.status == ReductionStatus::minrank_gt2);
  CHECK(r.failing_step == 3);
  CHECK_FALSE(minrank2_oracle(s, true));
}

TEST_CASE("a straddling multi-zero column certifies rank > 2") {
  SignMatrix s = parse_sign_matrix("0++\n0+0\n++0\n+++\n");
  ReductionOutcome r = reduce_generalized(s);
  REQUIRE(r.status == ReductionStatus::minrank_gt2);
  CHECK(r.failing_step == 4);
  // scan order cites the anchor column first: its zero rows are not duplicates
  CHECK(r.witness_rows == IndexSet{0, 1});
  CHECK_FALSE(minrank2_oracle(s, true));

  // a column straddling the anchor's zero block is also rejected
  SignMatrix straddle = parse_sign_matrix("0+0\n++0\n+++\n");
  ReductionOutcome r2 = reduce_generalized(straddle);
  REQUIRE(r2.status == ReductionStatus::minrank_gt2);
  CHECK(r2.failing_step == 4);
  CHECK(r2.witness_column == 2);
  CHECK(r2.witness_rows == IndexSet{0, 1});
  CHECK_FALSE(minrank2_oracle(straddle, true));
}

TEST_CASE("duplicate forced rows are merged, preserving the decision") {
  // column 2 has zeros exactly on the two identical top rows
  SignMatrix s = parse_sign_matrix("0+0-\n0+0-\n++++\n-+++\n");
  ReductionOutcome r = reduce_generalized(s);
  REQUIRE(r.status == ReductionStatus::strict_output);
  CHECK(r.matrix->rows() == 3);
  GeneralizedDecision d = minrank_le2(s);
  CHECK(d.yes == minrank2_oracle(s, true));
  if (d.yes) {
    CHECK(sign_of_rational_matrix(*d.realization) == s);
    CHECK(rational_rank(*d.realization) <= 2);
  }
}

TEST_CASE("point-line pattern with an incidence agrees with the oracle") {
  // five points, five lines, one point placed exactly on one line
  std::vector<Point> pts = {
      {0, 0}, {1, 0}, {0, 1}, {make_rational(1, 2), make_rational(1, 2)}, {2, 3}};
  std::vector<Line> lines = {
      {1, 1, -1, 1},  // passes through points 1, 2 and 3
      {1, 0, -3, 1},
      {0, 1, 2, 1},
      {2, -1, 1, 1},
      {1, 2, -7, 1},
  };
  RationalMatrix p(5, 3), l(3, 5);
  for (int i = 0; i < 5; ++i) {
    p.at(i, 0) = pts[i].x;
    p.at(i, 1) = pts[i].y;
    p.at(i, 2) = 1;
  }
  for (int j = 0; j < 5; ++j) {
    l.at(0, j) = lines[j].a;
    l.at(1, j) = lines[j].b;
    l.at(2, j) = lines[j].c;
  }
  SignMatrix s = sign_of_rational_matrix(multiply(p, l));
  CHECK_FALSE(s.strict());
  CHECK(minrank_le2(s).yes == minrank2_oracle(s, true));
}

TEST_CASE("splitting a single-zero column never changes the decision") {
  std::mt19937_64 rng(71);
  int tested = 0;
  for (int t = 0; t < 400 && tested < 120; ++t) {
    SignMatrix s = random_generalized_matrix(2 + rng() % 3, 2 + rng() % 3, rng, 20);
    std::size_t split_col = s.cols();
    std::size_t zero_row = 0;
    for (std::size_t j = 0; j < s.cols() && split_col == s.cols(); ++j) {
      std::size_t zeros = 0, zr = 0;
      for (std::size_t i = 0; i < s.rows(); ++i)
        if (s.at(i, j) == Sign::zero) { ++zeros; zr = i; }
      if (zeros == 1) { split_col = j; zero_row = zr; }
    }
    if (split_col == s.cols()) continue;
    bool has_zero_row = false;
    for (std::size_t i = 0; i < s.rows(); ++i)
      if (zero_count(s.row(i)) == s.cols()) has_zero_row = true;
    if (has_zero_row) continue;
    ++tested;

    std::vector<SignVector> cols = s.columns();
    SignVector plus = cols[split_col], minus = cols[split_col];
    plus[zero_row] = Sign::plus;
    minus[zero_row] = Sign::minus;
    cols[split_col] = plus;
    cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(split_col) + 1, minus);
    SignMatrix split = SignMatrix::from_columns(cols);

    CHECK(minrank_le2(s).yes == minrank_le2(split).yes);
    CHECK(minrank2_oracle(s, true) == minrank2_oracle(split, true));
    CHECK(minrank_le2(s).yes == minrank2_oracle(s, true));
  }
  CHECK(tested >= 100);
}

TEST_CASE("exhaustive 2x2 and sampled 3x3 agreement with the oracle") {
  for (std::uint64_t code = 0; code < 81; ++code) {
    SignMatrix s = generalized_matrix_from_trits(2, 2, code);
    GeneralizedDecision d = minrank_le2(s);
    REQUIRE(d.yes == minrank2_oracle(s, true));
    if (d.yes && d.realization) {
      REQUIRE(sign_of_rational_matrix(*d.realization) == s);
      REQUIRE(rational_rank(*d.realization) <= 2);
    }
  }
  std::mt19937_64 rng(73);
  for (int t = 0; t < 800; ++t) {
    SignMatrix s = generalized_matrix_from_trits(3, 3, rng() % 19683);
    GeneralizedDecision d = minrank_le2(s);
    REQUIRE(d.yes == minrank2_oracle(s, true));
    if (d.yes) {
      REQUIRE(d.realization.has_value());
      REQUIRE(sign_of_rational_matrix(*d.realization) == s);
      REQUIRE(rational_rank(*d.realization) <= 2);
    }
  }
}

TEST_CASE("reduction terminates and stays faithful on odd shapes") {
  std::mt19937_64 rng(79);
  for (int t = 0; t < 200; ++t) {
    const std::size_t m = 1 + rng() % 5, n = 1 + rng() % 5;
    SignMatrix s = random_generalized_matrix(m, n, rng, 45);
    ReductionOutcome r = reduce_generalized(s);
    if (r.status == ReductionStatus::strict_output) {
      CHECK(r.matrix->strict());
      if (r.matrix->rows() <= 7)
        CHECK(minrank2_oracle(*r.matrix, false) == minrank2_oracle(s, true));
    } else if (r.status == ReductionStatus::minrank_gt2) {
      CHECK_FALSE(minrank2_oracle(s, true));
    }
  }
}
