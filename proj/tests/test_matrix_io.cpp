#include <gtest/gtest.h>

#include <filesystem>

#include "aprseq/matrix_io.hpp"
#include "aprseq/minorseq.hpp"

using namespace aprseq;

namespace {

std::string sample(const std::string& name) { return std::string(APRSEQ_SAMPLES_DIR) + "/matrices/" + name; }
std::string data(const std::string& name) { return std::string(APRSEQ_SAMPLES_DIR) + "/../tests/data/" + name; }

void expect_error_at(const std::string& text, std::size_t line, std::size_t column, const std::string& fragment) {
  try {
    (void)parse_matrix(text);
    FAIL() << "expected a MatrixFormatError for:\n" << text;
  } catch (const MatrixFormatError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
    EXPECT_EQ(e.column(), column) << e.what();
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

}  // namespace

TEST(MatrixIo, ParsesRationalMatrix) {
  const auto b = parse_matrix("# comment\nfield rational\n\n2\n1/2 -3\n-3 0\n");
  EXPECT_EQ(b.order(), 2u);
  EXPECT_EQ(b(1, 1), Scalar::rational(1, 2));
  EXPECT_EQ(b(1, 2), Scalar::from_int(FieldSpec::rationals(), -3));
}

TEST(MatrixIo, ParsesPrimeField) {
  const auto b = parse_matrix("field gf 3\n2\n4 1\n1 2\n");
  EXPECT_EQ(b.field(), FieldSpec::prime(3));
  EXPECT_EQ(b(1, 1).residue(), 1u);
}

TEST(MatrixIo, ReportsLineAndColumn) {
  expect_error_at("field rational\n2\n1 2\n3 4\n", 4, 1, "not symmetric");
  expect_error_at("field rational\n2\n1 x\nx 4\n", 3, 3, "bad scalar 'x'");
  expect_error_at("field rational\n3\n1 2 3\n2 4\n3 5 6\n", 4, 4, "row 2 has 2 entries");
  expect_error_at("field rational\n2\n1 2\n", 4, 1, "expected 2 rows");
  expect_error_at("field rational\n2\n1 2\n2 1\n5 5\n", 5, 1, "unexpected content");
  expect_error_at("feld rational\n1\n1\n", 1, 1, "expected 'field'");
  expect_error_at("field real\n1\n1\n", 1, 7, "expected 'rational'");
  expect_error_at("field gf 4\n1\n1\n", 1, 10, "not prime");
  expect_error_at("field rational\n0\n", 2, 1, "between 1 and 32");
  expect_error_at("field rational\nx\n", 2, 1, "between 1 and 32");
  expect_error_at("field gf 5\n1\n1/2\n", 3, 1, "expected digits");
  expect_error_at("", 1, 1, "empty input");
}

TEST(MatrixIo, RoundTrip) {
  const auto b = parse_matrix("field rational\n3\n1 -1/2 0\n-1/2 7 3\n0 3 -4/3\n");
  EXPECT_EQ(parse_matrix(format_matrix(b)), b);
  const auto g = parse_matrix("field gf 5\n2\n1 4\n4 0\n");
  EXPECT_EQ(parse_matrix(format_matrix(g)), g);
  const auto path = std::filesystem::temp_directory_path() / "aprseq_roundtrip.txt";
  save_matrix(b, path.string());
  EXPECT_EQ(load_matrix(path.string()), b);
  std::filesystem::remove(path);
  EXPECT_THROW(load_matrix("/nonexistent/dir/matrix.txt"), std::runtime_error);
}

TEST(MatrixIo, SampleFiles) {
  EXPECT_EQ(apr_sequence(load_matrix(sample("matching_blocks_2.txt"))).word(), "SNS");
  EXPECT_EQ(apr_sequence(load_matrix(sample("ones3.txt"))).word(), "AN");
  EXPECT_EQ(load_matrix(sample("zero3.txt")), SymMatrix::zero(FieldSpec::rationals(), 3));
  EXPECT_EQ(load_matrix(sample("gf3_example.txt")).field(), FieldSpec::prime(3));
  EXPECT_EQ(load_matrix(sample("fractions4.txt")).order(), 4u);
  EXPECT_THROW(load_matrix(data("asymmetric.txt")), MatrixFormatError);
  EXPECT_THROW(load_matrix(data("bad_token.txt")), MatrixFormatError);
  EXPECT_THROW(load_matrix(data("short_row.txt")), MatrixFormatError);
  EXPECT_EQ(load_matrix(data("one_by_one.txt")).order(), 1u);
}
