#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <functional>
#include <random>

#include "signrank/chain.hpp"
#include "signrank/gen.hpp"
#include "signrank/oracle.hpp"

using namespace signrank;

namespace {

SignMatrix columns_of(const std::vector<std::string>& cols) {
  std::vector<SignVector> cs;
  for (const auto& c : cols) cs.push_back(sign_vector(c));
  return SignMatrix::from_columns(cs);
}

IndexSet set_of(std::initializer_list<std::size_t> xs) { return IndexSet(xs); }

bool valid_decomposition(const SetSystem& t, const std::vector<IndexSet>& chain) {
  const std::size_t m = t.ground_size;
  if (t.members.size() % 2 != 0) return false;
  if (chain.size() != t.members.size() / 2 + 1) return false;
  if (!chain.front().empty() || chain.back().size() != m) return false;
  std::set<IndexSet> both;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    if (chain[i] == chain[i + 1] || !subset_of(chain[i], chain[i + 1])) return false;
  }
  for (const IndexSet& a : chain) {
    if (!t.members.count(a)) return false;
    both.insert(a);
    both.insert(complement_set(a, m));
  }
  return both == t.members;
}

// Independent ground truth: search over every subset selection that could
// form the increasing chain.
bool brute_force_two_chain(const SetSystem& t) {
  std::vector<IndexSet> members(t.members.begin(), t.members.end());
  const std::size_t sz = members.size();
  if (sz % 2 != 0 || sz == 0) return false;
  const std::size_t want = sz / 2 + 1;
  if (sz > 20) throw std::logic_error("family too large for brute force");
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << sz); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != want) continue;
    std::vector<IndexSet> chosen;
    for (std::size_t i = 0; i < sz; ++i)
      if ((mask >> i) & 1) chosen.push_back(members[i]);
    std::sort(chosen.begin(), chosen.end(),
              [](const IndexSet& a, const IndexSet& b) { return a.size() < b.size(); });
    if (valid_decomposition(t, chosen)) return true;
  }
  return false;
}

SetSystem family(std::size_t m, std::vector<IndexSet> sets) {
  SetSystem t;
  t.ground_size = m;
  for (auto& s : sets) t.members.insert(std::move(s));
  return t;
}

}  // namespace

TEST_CASE("minus index set extraction") {
  CHECK(t_minus(sign_vector("+--+")) == set_of({1, 2}));
  CHECK(t_minus(sign_vector("++++")).empty());
  CHECK(t_minus(sign_vector("-0+")) == set_of({0}));
}

TEST_CASE("set system construction dedupes and requires strictness") {
  SignMatrix s = columns_of({"+++", "---"});
  SetSystem t = build_set_system(s);
  CHECK(t.members == std::set<IndexSet>{set_of({}), set_of({0, 1, 2})});

  SignMatrix dup = columns_of({"++-", "++-"});
  CHECK(build_set_system(dup).members.size() == 1);

  SignMatrix two = columns_of({"++-", "+--"});
  CHECK(build_set_system(two).members ==
        std::set<IndexSet>{set_of({2}), set_of({1, 2})});

  CHECK_THROWS_AS(build_set_system(parse_sign_matrix("+0\n++\n")),
                  std::invalid_argument);
}

TEST_CASE("chain decomposition of the textbook family") {
  SetSystem t = family(3, {{}, {0, 1}, {0, 1, 2}, {2}});
  TwoChainResult r = has_two_chain(t);
  REQUIRE(r.chain.has_value());
  CHECK(valid_decomposition(t, r.chain->chain));
  // deterministic: repeated runs yield the identical witness
  TwoChainResult again = has_two_chain(t);
  REQUIRE(again.chain.has_value());
  CHECK(again.chain->chain == r.chain->chain);
}

TEST_CASE("trivial two-element family") {
  SetSystem t = family(4, {{}, {0, 1, 2, 3}});
  TwoChainResult r = has_two_chain(t);
  REQUIRE(r.chain.has_value());
  CHECK(r.chain->chain == std::vector<IndexSet>{{}, {0, 1, 2, 3}});
}

TEST_CASE("two minimal members can both be absorbed via the complement chain") {
  // {0} starts the chain while {1} rides along as the complement of {0,2}.
  SetSystem t = family(3, {{}, {0}, {1}, {0, 2}, {1, 2}, {0, 1, 2}});
  CHECK(brute_force_two_chain(t));
  TwoChainResult r = has_two_chain(t);
  REQUIRE(r.chain.has_value());
  CHECK(valid_decomposition(t, r.chain->chain));
}

TEST_CASE("failing preconditions are reported as negatives") {
  CHECK_FALSE(has_two_chain(family(2, {{0}, {1}})).chain.has_value());
  CHECK(has_two_chain(family(2, {{0}, {1}})).reason == "empty set missing");
  CHECK_FALSE(has_two_chain(family(2, {{}, {0}, {1}})).chain.has_value());
  CHECK_FALSE(has_two_chain(family(3, {{}, {0}, {1, 2}, {1}, {0, 1, 2}}))
                  .chain.has_value());  // odd
  SetSystem not_closed = family(3, {{}, {0}, {1, 2}, {0, 1, 2}, {1}, {0, 1}});
  CHECK(has_two_chain(not_closed).reason == "family not closed under complement");
}

TEST_CASE("accepted families always satisfy the structural invariants") {
  std::mt19937_64 rng(97);
  for (int trial = 0; trial < 4000; ++trial) {
    const std::size_t m = 2 + rng() % 4;
    SetSystem t;
    t.ground_size = m;
    const int extra = static_cast<int>(rng() % 4);
    t.members.insert(IndexSet{});
    IndexSet full;
    for (std::size_t i = 0; i < m; ++i) full.push_back(i);
    if (rng() % 8) t.members.insert(full);
    for (int e = 0; e < extra; ++e) {
      IndexSet s;
      for (std::size_t i = 0; i < m; ++i)
        if (rng() % 2) s.push_back(i);
      t.members.insert(s);
      if (rng() % 4) t.members.insert(complement_set(s, m));
    }
    TwoChainResult r = has_two_chain(t);
    CHECK(r.chain.has_value() == brute_force_two_chain(t));
    if (r.chain) {
      CHECK(valid_decomposition(t, r.chain->chain));
      CHECK(t.members.size() % 2 == 0);
      CHECK(t.members.count(IndexSet{}) == 1);
      CHECK(t.members.count(full) == 1);
      for (const IndexSet& x : t.members)
        CHECK(t.members.count(complement_set(x, m)) == 1);
    }
  }
}

TEST_CASE("rank bound 2: easy strict positives") {
  auto all_plus = parse_sign_matrix("++++\n++++\n++++\n");
  auto w = minrank_le2_strict(all_plus);
  REQUIRE(w.has_value());
  CHECK(verify_rank2_witness(all_plus, *w));

  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    SignMatrix col = random_strict_matrix(1 + rng() % 6, 1, rng);
    auto wc = minrank_le2_strict(col);
    REQUIRE(wc.has_value());
    CHECK(verify_rank2_witness(col, *wc));
  }

  for (int t = 0; t < 10; ++t) {
    SignMatrix one_row = random_strict_matrix(1, 1 + rng() % 7, rng);
    auto wr = minrank_le2_strict(one_row);
    REQUIRE(wr.has_value());
    CHECK(verify_rank2_witness(one_row, *wr));
  }

  CHECK_THROWS_AS(minrank_le2_strict(parse_sign_matrix("+0\n++\n")),
                  std::invalid_argument);
}

TEST_CASE("rank bound 2: witnesses on threshold instances verify") {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 200; ++t) {
    SignMatrix s =
        random_threshold_matrix(1 + rng() % 7, 1 + rng() % 10, rng);
    auto w = minrank_le2_strict(s);
    REQUIRE(w.has_value());
    CHECK(verify_rank2_witness(s, *w));
    RationalMatrix a = realization_from_witness(s, *w);
    CHECK(sign_of_rational_matrix(a) == s);
    CHECK(rational_rank(a) <= 2);
  }
}

TEST_CASE("rank bound 2: exhaustive 3x3 agreement with the oracle") {
  for (std::uint64_t bits = 0; bits < 512; ++bits) {
    SignMatrix s = strict_matrix_from_bits(3, 3, bits);
    const bool fast = minrank_le2_strict(s).has_value();
    const bool truth = minrank2_oracle(s, false);
    REQUIRE(fast == truth);
  }
}

TEST_CASE("rank bound 2: decision is invariant under symmetry operations") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 150; ++t) {
    const std::size_t m = 2 + rng() % 4, n = 1 + rng() % 5;
    SignMatrix s = rng() % 2 ? random_strict_matrix(m, n, rng)
                             : random_threshold_matrix(m, n, rng);
    const bool base = minrank_le2_strict(s).has_value();

    std::vector<std::size_t> flips;
    for (std::size_t i = 0; i < m; ++i)
      if (rng() % 2) flips.push_back(i);
    CHECK(minrank_le2_strict(flip_rows(s, flips)).has_value() == base);

    std::vector<std::size_t> rperm(m), cperm(n);
    for (std::size_t i = 0; i < m; ++i) rperm[i] = i;
    for (std::size_t j = 0; j < n; ++j) cperm[j] = j;
    std::shuffle(rperm.begin(), rperm.end(), rng);
    std::shuffle(cperm.begin(), cperm.end(), rng);
    std::vector<SignVector> rows;
    for (std::size_t i = 0; i < m; ++i) {
      SignVector r(n);
      for (std::size_t j = 0; j < n; ++j) r[j] = s.at(rperm[i], cperm[j]);
      rows.push_back(r);
    }
    CHECK(minrank_le2_strict(SignMatrix::from_rows(rows)).has_value() == base);

    std::vector<SignVector> cols = s.columns();
    cols.push_back(cols[rng() % n]);
    CHECK(minrank_le2_strict(SignMatrix::from_columns(cols)).has_value() == base);
  }
}

TEST_CASE("rank bound 2: region matrix instances agree with the oracle") {
  std::mt19937_64 rng(29);
  Arrangement arr = random_uniform_arrangement(3, rng);
  auto c2 = enumerate_covectors(arr).c2;
  REQUIRE(c2.size() == 7);
  std::vector<SignVector> rows(c2.begin(), c2.end());
  SignMatrix full7 = SignMatrix::from_rows(rows);
  CHECK(minrank_le2_strict(full7).has_value() == minrank2_oracle(full7, false));
  for (std::size_t drop = 0; drop < rows.size(); ++drop) {
    std::vector<SignVector> sub;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != drop) sub.push_back(rows[i]);
    SignMatrix s6 = SignMatrix::from_rows(sub);
    CHECK(minrank_le2_strict(s6).has_value() == minrank2_oracle(s6, false));
  }
}

TEST_CASE("rank bounds 0 and 1") {
  CHECK(minrank_le_r_small(parse_sign_matrix("00\n00\n"), 0));
  CHECK_FALSE(minrank_le_r_small(parse_sign_matrix("0+\n00\n"), 0));
  CHECK(minrank_le_r_small(parse_sign_matrix("+-\n-+\n"), 1));
  CHECK_FALSE(minrank_le_r_small(parse_sign_matrix("++\n+-\n"), 1));
  CHECK(minrank_le_r_small(parse_sign_matrix("00\n00\n"), 1));
  CHECK(minrank_le_r_small(parse_sign_matrix("0+0-\n0000\n0-0+\n"), 1));
  CHECK_THROWS_AS(minrank_le_r_small(parse_sign_matrix("+\n"), 2),
                  std::invalid_argument);

  // brute force over sign outer products u v^T as independent ground truth
  auto outer_truth = [](const SignMatrix& s) {
    const std::size_t m = s.rows(), n = s.cols();
    std::vector<Sign> u(m), v(n);
    std::function<bool(std::size_t)> pick_v = [&](std::size_t j) -> bool {
      if (j == n) {
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t jj = 0; jj < n; ++jj) {
            Sign want = u[i] == Sign::zero || v[jj] == Sign::zero
                            ? Sign::zero
                            : (u[i] == v[jj] ? Sign::plus : Sign::minus);
            if (want != s.at(i, jj)) return false;
          }
        return true;
      }
      for (Sign sv : {Sign::minus, Sign::zero, Sign::plus}) {
        v[j] = sv;
        if (pick_v(j + 1)) return true;
      }
      return false;
    };
    std::function<bool(std::size_t)> pick_u = [&](std::size_t i) -> bool {
      if (i == m) return pick_v(0);
      for (Sign su : {Sign::minus, Sign::zero, Sign::plus}) {
        u[i] = su;
        if (pick_u(i + 1)) return true;
      }
      return false;
    };
    return pick_u(0);
  };

  std::mt19937_64 rng(31);
  for (int t = 0; t < 300; ++t) {
    SignMatrix s = random_generalized_matrix(1 + rng() % 3, 1 + rng() % 3, rng, 40);
    CHECK(minrank_le_r_small(s, 1) == outer_truth(s));
  }
}

TEST_CASE("witness verification catches corrupted witnesses") {
  SignMatrix s = columns_of({"+++", "---", "+--"});
  auto w = minrank_le2_strict(s);
  REQUIRE(w.has_value());
  CHECK(verify_rank2_witness(s, *w));

  Rank2Witness bad = *w;
  bad.column_combos[0].first = -bad.column_combos[0].first;
  bad.column_combos[0].second = -bad.column_combos[0].second;
  CHECK_FALSE(verify_rank2_witness(s, bad));

  Rank2Witness wrong_dims = *w;
  wrong_dims.column_combos.pop_back();
  CHECK_THROWS_AS(verify_rank2_witness(s, wrong_dims), std::invalid_argument);

  // hand-built witness for the matrix whose columns are +/- the ones vector
  SignMatrix pm = columns_of({"++", "--"});
  Rank2Witness manual;
  manual.x = {1, 1};
  manual.y = {make_rational(1, 2), make_rational(1, 2)};
  manual.row_flips = {false, false};
  manual.column_combos = {{1, 0}, {-1, 0}};
  CHECK(verify_rank2_witness(pm, manual));
}
