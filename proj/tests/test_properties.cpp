#include <gtest/gtest.h>

#include "aprseq/properties.hpp"

using namespace aprseq;

class SuiteTest : public ::testing::TestWithParam<std::string> {};

TEST_P(SuiteTest, PassesOnSeededSample) {
  const auto r = run_suite(GetParam(), {.trials = 200, .n_max = 7, .seed = 3});
  EXPECT_TRUE(r.passed) << r.failure << "\n" << (r.counterexample ? r.counterexample->to_string() : "");
  EXPECT_EQ(r.trials, 200u);
}

INSTANTIATE_TEST_SUITE_P(AllSuites, SuiteTest, ::testing::ValuesIn(suite_names()),
                         [](const auto& info) {
                           std::string s = info.param;
                           for (auto& c : s) {
                             if (c == '-') c = '_';
                           }
                           return s;
                         });

TEST(Suites, NamesAndLookup) {
  const auto names = suite_names();
  EXPECT_EQ(names.size(), property_suites().size());
  EXPECT_NO_THROW(find_suite("schur"));
  EXPECT_THROW(find_suite("no-such-suite"), std::invalid_argument);
}

TEST(Suites, Deterministic) {
  const auto a = run_suite("aprank-bounds", {.trials = 100, .n_max = 6, .seed = 9});
  const auto b = run_suite("aprank-bounds", {.trials = 100, .n_max = 6, .seed = 9});
  EXPECT_EQ(a.hits, b.hits);
  EXPECT_EQ(a.passed, b.passed);
}

TEST(Suites, FailingCheckRecordsCounterexample) {
  Suite s{"always-fails", "rejects matrices with a nonzero (1,1) entry", 2, 4,
          [](const SymMatrix& b, Rng&, bool& hit) -> std::optional<std::string> {
            hit = true;
            if (!b(1, 1).is_zero()) return "b11 is nonzero";
            return std::nullopt;
          }};
  const auto r = run_suite(s, {.trials = 500, .n_max = 7, .seed = 1});
  EXPECT_FALSE(r.passed);
  EXPECT_EQ(r.failure, "b11 is nonzero");
  ASSERT_TRUE(r.counterexample.has_value());
  EXPECT_FALSE((*r.counterexample)(1, 1).is_zero());
  EXPECT_LT(r.trials, 500u);
}

TEST(Generator, SymmetricAndOfRequestedOrder) {
  Rng rng(4);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 2 + t % 6;
    const auto b = random_symmetric(rng, n);
    EXPECT_EQ(b.order(), n);
    EXPECT_TRUE(b.field().is_rational());
  }
  for (auto f : {Flavor::dense, Flavor::sparse, Flavor::low_rank, Flavor::zero_padded, Flavor::zero_one, Flavor::fractions,
                 Flavor::diagonal, Flavor::canonical}) {
    const auto b = random_symmetric(rng, 5, f);
    EXPECT_EQ(b.order(), 5u) << to_string(f);
    if (f == Flavor::diagonal) EXPECT_TRUE(structure_flags(b).is_diagonal);
    if (f == Flavor::zero_padded) EXPECT_TRUE(structure_flags(b).has_zero_row);
  }
  EXPECT_THROW(random_symmetric(rng, 1), std::invalid_argument);
}
