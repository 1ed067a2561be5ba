#include "rpca/io.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "rpca/rng.hpp"

namespace {

rpca::DenseMatrix random_matrix(int m, int n, std::uint64_t seed) {
  rpca::SplitMix64 rng(seed);
  rpca::DenseMatrix a(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.normal() * 1e3;
  return a;
}

TEST(MatrixIo, RoundTripIsBitExact) {
  const rpca::DenseMatrix a = random_matrix(7, 11, 99);
  std::stringstream ss;
  rpca::write_matrix(ss, a);
  const rpca::DenseMatrix b = rpca::read_matrix(ss);
  ASSERT_EQ(b.rows(), a.rows());
  ASSERT_EQ(b.cols(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) EXPECT_EQ(a(i, j), b(i, j));
}

TEST(MatrixIo, SeventeenSignificantDigits) {
  rpca::DenseMatrix a(1, 1);
  a(0, 0) = 1.0 / 3.0;
  const std::string text = rpca::format_matrix(a);
  EXPECT_EQ(text, "0.33333333333333331\n");
}

TEST(MatrixIo, LayoutOneRowPerLine) {
  rpca::DenseMatrix a(2, 3);
  a << 1, 2, 3, 4, 5, 6;
  EXPECT_EQ(rpca::format_matrix(a), "1,2,3\n4,5,6\n");
}

TEST(MatrixIo, ParsesExponentsAndSigns) {
  std::stringstream ss("-1.5e-3,2E+4\n0,-0\n");
  const rpca::DenseMatrix a = rpca::read_matrix(ss);
  EXPECT_EQ(a(0, 0), -1.5e-3);
  EXPECT_EQ(a(0, 1), 2e4);
  EXPECT_EQ(a(1, 0), 0.0);
}

TEST(MatrixIo, ToleratesCrlfAndBlankLines) {
  std::stringstream ss("1,2\r\n\n3,4\r\n");
  const rpca::DenseMatrix a = rpca::read_matrix(ss);
  ASSERT_EQ(a.rows(), 2);
  EXPECT_EQ(a(1, 0), 3.0);
}

TEST(MatrixIo, RejectsRaggedRows) {
  std::stringstream ss("1,2\n3\n");
  EXPECT_THROW(rpca::read_matrix(ss), std::invalid_argument);
}

TEST(MatrixIo, RejectsJunkEntries) {
  std::stringstream ss("1,banana\n");
  EXPECT_THROW(rpca::read_matrix(ss), std::invalid_argument);
  std::stringstream ss2("1,2x\n");
  EXPECT_THROW(rpca::read_matrix(ss2), std::invalid_argument);
}

TEST(MatrixIo, RejectsEmptyInput) {
  std::stringstream ss("");
  EXPECT_THROW(rpca::read_matrix(ss), std::invalid_argument);
}

TEST(MatrixIo, FileRoundTrip) {
  const rpca::DenseMatrix a = random_matrix(5, 9, 1234);
  const std::string path = ::testing::TempDir() + "/mat_roundtrip.txt";
  rpca::write_matrix_file(path, a);
  const rpca::DenseMatrix b = rpca::read_matrix_file(path);
  EXPECT_TRUE(a == b);
}

}  // namespace
