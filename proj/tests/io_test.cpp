#include <gtest/gtest.h>

#include <fstream>
#include <limits>
#include <sstream>

#include "ssrom/error.hpp"
#include "ssrom/matrix_io.hpp"
#include "test_util.hpp"

using namespace ssrom;
using ssrom::testing::temp_path;

namespace {

Matrix awkward_values() {
  Matrix a(3, 4);
  a << 0.1, -1e-300, 3.141592653589793, 1e308,
       -0.0, 2.5e-17, 123456789.123456789, -7.0,
       std::numeric_limits<double>::denorm_min(), 1.0 / 3.0, -2.0 / 7.0, 42;
  return a;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(MatrixIo, CsvRoundTripIsExact) {
  const Matrix a = awkward_values();
  const auto path = temp_path("roundtrip.csv");
  io::write_csv(path, a);
  const Matrix b = io::read_csv(path);
  ASSERT_EQ(b.rows(), a.rows());
  ASSERT_EQ(b.cols(), a.cols());
  for (Eigen::Index i = 0; i < a.size(); ++i) EXPECT_EQ(a.data()[i], b.data()[i]);
}

TEST(MatrixIo, CsvHeaderIsDetected) {
  const auto path = temp_path("header.csv");
  io::write_csv(path, Matrix::Identity(2, 2), {"x", "y"});
  std::vector<std::string> header;
  const Matrix b = io::read_csv(path, &header);
  EXPECT_EQ(header, (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(b, Matrix::Identity(2, 2));
}

TEST(MatrixIo, MatrixMarketRoundTripIsExact) {
  const Matrix a = awkward_values();
  const auto path = temp_path("roundtrip.mtx");
  io::write_matrix(path, a);
  EXPECT_EQ(slurp(path).rfind("%%MatrixMarket matrix array real general", 0), 0u);
  const Matrix b = io::read_matrix(path);
  ASSERT_EQ(b.rows(), 3);
  for (Eigen::Index i = 0; i < a.size(); ++i) EXPECT_EQ(a.data()[i], b.data()[i]);
}

TEST(MatrixIo, MalformedInputsThrow) {
  const auto csv = temp_path("ragged.csv");
  std::ofstream(csv) << "1,2\n3\n";
  EXPECT_THROW(io::read_csv(csv), InputError);
  const auto mtx = temp_path("coord.mtx");
  std::ofstream(mtx) << "%%MatrixMarket matrix coordinate real general\n1 1 1\n1 1 2\n";
  EXPECT_THROW(io::read_matrix_market(mtx), InputError);
  EXPECT_THROW(io::read_csv(temp_path("does_not_exist.csv")), InputError);
  EXPECT_THROW(io::parse_double("1.5x"), InputError);
}

TEST(MatrixIo, Rfc4180Quoting) {
  EXPECT_EQ(io::csv_escape("plain"), "plain");
  EXPECT_EQ(io::csv_escape("a,b"), "\"a,b\"");
  EXPECT_EQ(io::csv_escape("say \"hi\""), "\"say \"\"hi\"\"\"");
  const auto path = temp_path("rows.csv");
  io::write_csv_rows(path, {{"a", "b,c"}, {"1", "2"}});
  EXPECT_EQ(slurp(path), "a,\"b,c\"\r\n1,2\r\n");
}
