#include <gtest/gtest.h>

#include <random>

#include "aprseq/exactfield.hpp"

using namespace aprseq;

namespace {

const FieldSpec Q = FieldSpec::rationals();

Scalar q(std::int64_t num, std::int64_t den = 1) { return Scalar::rational(num, den); }

}  // namespace

TEST(FieldSpec, PrimeModulusValidated) {
  EXPECT_NO_THROW(FieldSpec::prime(2));
  EXPECT_NO_THROW(FieldSpec::prime(4294967291ULL));
  EXPECT_THROW(FieldSpec::prime(1), FieldError);
  EXPECT_THROW(FieldSpec::prime(9), FieldError);
  EXPECT_THROW(FieldSpec::prime(std::uint64_t{1} << 33), FieldError);
}

TEST(FieldSpec, ParsesSpellings) {
  EXPECT_TRUE(parse_field_spec("rational").is_rational());
  EXPECT_TRUE(parse_field_spec("char0").is_rational());
  EXPECT_EQ(parse_field_spec("gf:7").modulus(), 7u);
  EXPECT_EQ(parse_field_spec("GF 3").modulus(), 3u);
  EXPECT_EQ(parse_field_spec("gf5").modulus(), 5u);
  EXPECT_THROW(parse_field_spec("gf:x"), ParseError);
  EXPECT_THROW(parse_field_spec("reals"), ParseError);
  EXPECT_THROW(parse_field_spec("gf:6"), FieldError);
}

TEST(Scalar, RationalAddition) { EXPECT_EQ(q(1, 2) + q(1, 3), q(5, 6)); }

TEST(Scalar, NegativeDenominatorNormalized) {
  EXPECT_EQ(q(3, -2), q(-3, 2));
  EXPECT_EQ(q(-4, -6).to_string(), "2/3");
  EXPECT_THROW(q(1, 0), FieldError);
}

TEST(Scalar, InverseModSeven) {
  const auto f = FieldSpec::prime(7);
  EXPECT_EQ(Scalar::from_int(f, 3).inv().residue(), 5u);
}

TEST(Scalar, InverseOfZeroFails) {
  EXPECT_THROW(Scalar::zero(Q).inv(), FieldError);
  EXPECT_THROW(Scalar::zero(FieldSpec::prime(5)).inv(), FieldError);
  EXPECT_THROW(q(1) / q(0), FieldError);
}

TEST(Scalar, ArithmeticOverGFp) {
  const auto f = FieldSpec::prime(11);
  const auto a = Scalar::from_int(f, 7), b = Scalar::from_int(f, 9);
  EXPECT_EQ((a + b).residue(), 5u);
  EXPECT_EQ((a - b).residue(), 9u);
  EXPECT_EQ((a * b).residue(), 8u);
  EXPECT_EQ((-a).residue(), 4u);
  EXPECT_EQ((a / b * b), a);
  EXPECT_EQ(Scalar::from_int(f, -1).residue(), 10u);
}

TEST(Scalar, FieldsNeverMix) {
  const auto a = Scalar::one(Q), b = Scalar::one(FieldSpec::prime(3));
  EXPECT_THROW(a + b, FieldError);
  EXPECT_THROW((void)(a == b), FieldError);
  EXPECT_THROW((void)(Scalar::one(FieldSpec::prime(3)) * Scalar::one(FieldSpec::prime(5))), FieldError);
}

TEST(Scalar, ParseRationalLowestTerms) {
  const auto s = parse_scalar("-4/6", Q);
  EXPECT_EQ(s, q(-2, 3));
  EXPECT_EQ(s.to_string(), "-2/3");
  EXPECT_EQ(parse_scalar("12", Q).to_string(), "12");
  EXPECT_EQ(parse_scalar("123456789012345678901234567890", Q).to_string(), "123456789012345678901234567890");
}

TEST(Scalar, ParsePrimeField) {
  EXPECT_EQ(parse_scalar("9", FieldSpec::prime(7)).residue(), 2u);
  EXPECT_THROW(parse_scalar("1/2", FieldSpec::prime(7)), ParseError);
  EXPECT_THROW(parse_scalar("-1", FieldSpec::prime(7)), ParseError);
}

TEST(Scalar, ParseErrors) {
  for (const char* bad : {"", "-", "1/", "/2", "1/0", "abc", "1.5", "--1", "2/-3"}) {
    EXPECT_THROW(parse_scalar(bad, Q), ParseError) << bad;
  }
}

TEST(Scalar, InverseRoundTripInvariant) {
  std::mt19937 gen(5);
  std::uniform_int_distribution<int> num(-50, 50), den(1, 30);
  for (int i = 0; i < 500; ++i) {
    const auto a = q(num(gen), den(gen));
    if (a.is_zero()) continue;
    EXPECT_TRUE((a * a.inv()).is_one());
    // canonical form: reduced with positive denominator
    EXPECT_GT(a.denominator(), 0);
    EXPECT_EQ(boost::multiprecision::gcd(a.numerator(), a.denominator()), 1);
  }
  for (std::uint64_t p : {2ULL, 3ULL, 101ULL, 65521ULL, 4294967291ULL}) {
    const auto f = FieldSpec::prime(p);
    for (std::uint64_t v = 1; v < std::min<std::uint64_t>(p, 200); ++v) {
      const auto a = Scalar::residue(f, v);
      EXPECT_TRUE((a * a.inv()).is_one()) << p << " " << v;
    }
  }
}

TEST(Scalar, CanonicalAfterOperations) {
  const auto a = q(3, 4) - q(1, 4) + q(-1, 2) * q(2, 3);
  EXPECT_EQ(a.to_string(), "1/6");
  EXPECT_EQ((q(2, 4) / q(-1, 2)).to_string(), "-1");
}

TEST(Sampling, DeterministicAndInRange) {
  Rng a(42), b(42);
  for (int i = 0; i < 200; ++i) {
    const auto x = sample_scalar(a, Q, 100);
    const auto y = sample_scalar(b, Q, 100);
    EXPECT_EQ(x, y);
    EXPECT_TRUE(x.is_integer());
    EXPECT_LE(abs(x.numerator()), 100);
  }
  Rng c(7);
  const auto gf2 = FieldSpec::prime(2);
  for (int i = 0; i < 100; ++i) EXPECT_LE(sample_scalar(c, gf2).residue(), 1u);
  EXPECT_THROW(sample_scalar(c, Q, 0), std::invalid_argument);
}

TEST(Sampling, UniformHelpersCoverRange) {
  Rng rng(3);
  std::vector<int> seen(7, 0);
  for (int i = 0; i < 2000; ++i) ++seen[static_cast<std::size_t>(uniform_int(rng, -3, 3) + 3)];
  for (int s : seen) EXPECT_GT(s, 200);
  EXPECT_THROW(uniform_below(rng, 0), std::invalid_argument);
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_EQ(derive_seed(9, 4), derive_seed(9, 4));
}
