#include <gtest/gtest.h>

#include <random>
#include <set>

#include "aprseq/attain.hpp"
#include "aprseq/minorseq.hpp"
#include "oracles.hpp"

using namespace aprseq;

namespace {

const FieldSpec Q = FieldSpec::rationals();

SymMatrix ints(const std::vector<std::vector<std::int64_t>>& g) { return SymMatrix::from_ints(Q, g); }

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

const SymMatrix ak2ak2 = direct_sum(ak2(Q), ak2(Q));

}  // namespace

TEST(CharSeqTest, Validation) {
  EXPECT_EQ(CharSeq::parse("SNS").order_n(), 4u);
  EXPECT_EQ(CharSeq::parse("SNS", SeqKind::epr).order_n(), 3u);
  EXPECT_EQ(CharSeq::parse("ASN").letter(2), Letter::S);
  EXPECT_THROW(CharSeq::parse("SXS"), ParseError);
  EXPECT_THROW(CharSeq::parse("sns"), ParseError);
  EXPECT_THROW(CharSeq::parse(""), ParseError);
  EXPECT_THROW(CharSeq(SeqKind::apr, 4, "SN"), std::invalid_argument);
  EXPECT_THROW(CharSeq(SeqKind::apr, 1, ""), std::invalid_argument);
}

TEST(MinorEnumeration, SpecExamples) {
  const auto m = minors_of_order(3, 1, MinorKind::almost_principal);
  ASSERT_EQ(m.size(), 3u);
  EXPECT_EQ(m[0], MinorSpec(IndexSet(3, {1}), IndexSet(3, {2})));
  EXPECT_EQ(m[1], MinorSpec(IndexSet(3, {1}), IndexSet(3, {3})));
  EXPECT_EQ(m[2], MinorSpec(IndexSet(3, {2}), IndexSet(3, {3})));
  EXPECT_EQ(minors_of_order(4, 2, MinorKind::almost_principal).size(), 12u);
  const auto p = minors_of_order(3, 3, MinorKind::principal);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0].rows(), IndexSet::full(3));
  EXPECT_THROW(minors_of_order(3, 3, MinorKind::almost_principal), std::out_of_range);
  EXPECT_THROW(minors_of_order(3, 0, MinorKind::principal), std::out_of_range);
}

TEST(MinorEnumeration, CountsAndKindsMatchBruteForce) {
  for (std::size_t n = 2; n <= 8; ++n) {
    for (std::size_t k = 1; k < n; ++k) {
      const auto m = minors_of_order(n, k, MinorKind::almost_principal);
      EXPECT_EQ(m.size(), binom(n, k - 1) * binom(n - k + 1, 2));
      // brute force over unordered {rows, cols} pairs with |rows & cols| = k - 1
      std::set<std::pair<std::uint32_t, std::uint32_t>> expect, got;
      for (std::uint32_t r = 0; r < (1U << n); ++r) {
        for (std::uint32_t c = r + 1; c < (1U << n); ++c) {
          if (std::popcount(r) == static_cast<int>(k) && std::popcount(c) == static_cast<int>(k) &&
              std::popcount(r & c) == static_cast<int>(k) - 1) {
            expect.insert({std::min(r, c), std::max(r, c)});
          }
        }
      }
      for (const auto& s : m) {
        EXPECT_EQ(s.kind(), MinorKind::almost_principal);
        got.insert({std::min(s.rows().mask(), s.cols().mask()), std::max(s.rows().mask(), s.cols().mask())});
      }
      EXPECT_EQ(got, expect) << n << " " << k;
    }
    for (std::size_t k = 1; k <= n; ++k) {
      EXPECT_EQ(minors_of_order(n, k, MinorKind::principal).size(), binom(n, k));
      const auto q = minors_of_order(n, k, MinorKind::quasi_principal);
      EXPECT_EQ(q.size(), binom(n, k) + (k < n ? binom(n, k - 1) * binom(n - k + 1, 2) : 0));
    }
  }
}

TEST(MinorEnumeration, ColexOrder) {
  // alpha in increasing mask order, then (i, j) lexicographic
  const auto m = minors_of_order(4, 2, MinorKind::almost_principal);
  std::vector<std::uint32_t> alphas;
  for (const auto& s : m) alphas.push_back((s.rows() & s.cols()).mask());
  EXPECT_TRUE(std::is_sorted(alphas.begin(), alphas.end()));
  EXPECT_EQ(m.front(), MinorSpec(IndexSet(4, {1, 2}), IndexSet(4, {1, 3})));
}

TEST(Letters, SpecExamples) {
  const auto j3 = SymMatrix::ones(Q, 3);
  EXPECT_EQ(letter(j3, 2, MinorKind::almost_principal), Letter::N);
  EXPECT_EQ(letter(j3, 1, MinorKind::almost_principal), Letter::A);
  EXPECT_EQ(letter(direct_sum(SymMatrix::ones(Q, 2), SymMatrix::identity(Q, 1)), 1, MinorKind::almost_principal), Letter::S);
}

TEST(Sequences, SpecExamples) {
  EXPECT_EQ(apr_sequence(ak2ak2).word(), "SNS");
  EXPECT_EQ(apr_sequence(SymMatrix::ones(Q, 3)).word(), "AN");
  EXPECT_EQ(apr_sequence(SymMatrix::zero(Q, 4)).word(), "NNN");
  EXPECT_EQ(epr_sequence(SymMatrix::identity(Q, 3)).word(), "AAA");
  EXPECT_EQ(epr_sequence(SymMatrix::zero(Q, 3)).word(), "NNN");
  EXPECT_EQ(epr_sequence(ak2(Q)).word(), "NA");
  EXPECT_EQ(qpr_sequence(ak2ak2).word(), oracle::qpr(ak2ak2));
  EXPECT_EQ(last_nonzero_index(qpr_sequence(ak2ak2).word()), 4u);
  EXPECT_EQ(qpr_sequence(SymMatrix::identity(Q, 2)).word(), "SA");
  EXPECT_EQ(qpr_sequence(SymMatrix::zero(Q, 2)).word(), "NN");
  EXPECT_THROW(apr_sequence(ints({{5}})), UndefinedSequenceError);
  EXPECT_EQ(epr_sequence(ints({{5}})).word(), "A");
}

TEST(Sequences, MatchBruteForceOracle) {
  std::mt19937 gen(11);
  for (int t = 0; t < 120; ++t) {
    const std::size_t n = 2 + t % 5;
    const auto b = oracle::random_int_matrix(gen, n, 2, t % 9);
    const MinorEvaluator ev(b);
    ASSERT_EQ(apr_sequence(ev).word(), oracle::apr(b)) << b.to_string();
    ASSERT_EQ(epr_sequence(ev).word(), oracle::epr(b)) << b.to_string();
    ASSERT_EQ(qpr_sequence(ev).word(), oracle::qpr(b)) << b.to_string();
    ASSERT_EQ(ap_rank(ev), oracle::ap_rank(b));
  }
}

TEST(Sequences, GFpMatchBruteForceOracle) {
  std::mt19937 gen(12);
  for (std::uint64_t p : {2ULL, 3ULL, 7ULL}) {
    const auto f = FieldSpec::prime(p);
    std::uniform_int_distribution<std::int64_t> v(0, static_cast<std::int64_t>(p) - 1);
    for (int t = 0; t < 30; ++t) {
      const std::size_t n = 2 + t % 4;
      std::vector<std::vector<std::int64_t>> g(n, std::vector<std::int64_t>(n));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) g[i][j] = g[j][i] = v(gen);
      }
      const auto b = SymMatrix::from_ints(f, g);
      ASSERT_EQ(apr_sequence(b).word(), oracle::apr(b));
      ASSERT_EQ(qpr_sequence(b).word(), oracle::qpr(b));
    }
  }
}

TEST(Sequences, ShortCircuitMatchesExhaustive) {
  std::mt19937 gen(13);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + t % 5;
    const auto b = oracle::random_int_matrix(gen, n, 3, t % 8);
    for (auto kind : {MinorKind::principal, MinorKind::almost_principal, MinorKind::quasi_principal}) {
      for (std::size_t k = 1; k <= (kind == MinorKind::almost_principal ? n - 1 : n); ++k) {
        ASSERT_EQ(letter(b, k, kind), letter_exhaustive(b, k, kind));
      }
    }
  }
}

TEST(Sequences, TransposeHalvingIsSound) {
  std::mt19937 gen(14);
  for (int t = 0; t < 20; ++t) {
    const auto b = oracle::random_int_matrix(gen, 5, 4);
    for_each_minor_mask(5, 3, MinorKind::almost_principal, [&](std::uint32_t r, std::uint32_t c) {
      EXPECT_EQ(minor_det(b, IndexSet::from_mask(5, r), IndexSet::from_mask(5, c)), minor_det(b, IndexSet::from_mask(5, c), IndexSet::from_mask(5, r)));
      return true;
    });
  }
}

TEST(ApRank, Examples) {
  EXPECT_EQ(ap_rank(SymMatrix::identity(Q, 4)), 0u);
  EXPECT_EQ(ap_rank(ints({{3, 0, 0}, {0, -1, 0}, {0, 0, 0}})), 0u);
  EXPECT_EQ(ap_rank(ints({{1, 1, 0, 0}, {1, 2, 1, 0}, {0, 1, 3, 1}, {0, 0, 1, 4}})), 3u);
  EXPECT_EQ(ap_rank(direct_sum(SymMatrix::ones(Q, 2), SymMatrix::zero(Q, 1))), 1u);
  EXPECT_EQ(ap_rank(ak2ak2), 3u);
}

TEST(PrincipalRankWitness, Examples) {
  EXPECT_TRUE(principal_rank_witness(SymMatrix::zero(Q, 3)).empty());
  EXPECT_EQ(principal_rank_witness(SymMatrix::ones(Q, 3)).size(), 1u);
  EXPECT_EQ(principal_rank_witness(direct_sum(ak2(Q), SymMatrix::zero(Q, 1))), IndexSet(3, {1, 2}));
  std::mt19937 gen(15);
  for (int t = 0; t < 60; ++t) {
    const auto b = oracle::random_int_matrix(gen, 2 + t % 6, 2, 6);
    const auto g = principal_rank_witness(b);
    EXPECT_EQ(g.size(), oracle::rank(b));
    if (!g.empty()) EXPECT_TRUE(oracle::nonzero_minor(b, g.mask(), g.mask()));
  }
}

TEST(Sequences, InvariantsOnRandomMatrices) {
  std::mt19937 gen(16);
  for (int t = 0; t < 150; ++t) {
    const std::size_t n = 2 + t % 6;
    const auto b = oracle::random_int_matrix(gen, n, 2, t % 10);
    const auto a = apr_sequence(b), e = epr_sequence(b), q = qpr_sequence(b);
    EXPECT_EQ(a.length(), n - 1);
    EXPECT_EQ(e.length(), n);
    EXPECT_EQ(ap_rank(b), last_nonzero_index(a.word()));
    EXPECT_EQ(rank(b), last_nonzero_index(q.word()));
    const auto first_n = q.word().find('N');
    if (first_n != std::string::npos) EXPECT_EQ(q.word().find_first_not_of('N', first_n), std::string::npos);
  }
}
