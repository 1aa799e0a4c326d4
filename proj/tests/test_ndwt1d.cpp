#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "support.hpp"
#include "wavecorr/depstats.hpp"
#include "wavecorr/filterbank.hpp"
#include "wavecorr/ndwt1d.hpp"

using namespace wavecorr;
using testsupport::circular_shift;
using testsupport::gaussian_vector;

TEST_CASE("constant input has vanishing details", "[ndwt1d]") {
  for (const char* name : {"haar", "db4", "la8", "coif6"}) {
    const FilterBank fb = get_filter(name);
    const std::vector<double> y(64, 2.25);
    const Decomposition1D dec = ndwt_forward(y, fb, 3);
    CAPTURE(name);
    for (const auto& d : dec.details)
      for (double v : d) CHECK(std::abs(v) < 1e-12);
  }
}

TEST_CASE("redundant shape: L+1 subvectors of length n", "[ndwt1d]") {
  const auto y = gaussian_vector(8, 5);
  const Decomposition1D dec = ndwt_forward(y, get_filter("haar"), 2);
  CHECK(dec.scheme == Scheme::nondecimated);
  CHECK_FALSE(dec.J.has_value());
  CHECK(dec.smooth.size() == 8);
  REQUIRE(dec.details.size() == 2);
  for (const auto& d : dec.details) CHECK(d.size() == 8);
  CHECK(dec.coefficient_count() == 24);

  // non-dyadic lengths are fine
  const auto y12 = gaussian_vector(12, 6);
  CHECK(ndwt_forward(y12, get_filter("haar"), 2).coefficient_count() == 36);
}

TEST_CASE("shift equivariance of every subvector", "[ndwt1d]") {
  std::mt19937_64 eng(99);
  const char* families[] = {"haar", "db4", "la8", "coif6"};
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 32 + (eng() % 4) * 8;
    const std::size_t s = eng() % n;
    const char* name = families[rep % 4];
    const FilterBank fb = get_filter(name);
    const auto y = gaussian_vector(n, eng());
    const Decomposition1D plain = ndwt_forward(y, fb, 2);
    const Decomposition1D shifted = ndwt_forward(circular_shift(y, s), fb, 2);
    CAPTURE(n, s, name);
    for (std::size_t i = 0; i < plain.smooth.size(); ++i)
      CHECK(std::abs(circular_shift(plain.smooth, s)[i] - shifted.smooth[i]) < 1e-12);
    for (std::size_t lev = 0; lev < plain.details.size(); ++lev) {
      const auto want = circular_shift(plain.details[lev], s);
      for (std::size_t i = 0; i < want.size(); ++i)
        CHECK(std::abs(want[i] - shifted.details[lev][i]) < 1e-12);
    }
  }
}

TEST_CASE("levelwise correlations invariant under a common shift", "[ndwt1d]") {
  std::mt19937_64 eng(123);
  const FilterBank fb = get_filter("db4");
  const auto x = gaussian_vector(96, 1);
  auto y = gaussian_vector(96, 2);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = 0.6 * x[i] + 0.8 * y[i];
  const std::size_t s = 31;

  const auto dx = ndwt_forward(x, fb, 3);
  const auto dy = ndwt_forward(y, fb, 3);
  const auto dxs = ndwt_forward(circular_shift(x, s), fb, 3);
  const auto dys = ndwt_forward(circular_shift(y, s), fb, 3);
  for (std::size_t lev = 0; lev < dx.details.size(); ++lev) {
    const double r = pearson(dx.details[lev], dy.details[lev]);
    const double rs = pearson(dxs.details[lev], dys.details[lev]);
    CHECK(std::abs(r - rs) < 1e-10);
    const double tau = kendall_tau(dx.details[lev], dy.details[lev]).tau_hat;
    const double taus = kendall_tau(dxs.details[lev], dys.details[lev]).tau_hat;
    CHECK(std::abs(tau - taus) < 1e-10);
  }
}

TEST_CASE("level-1 high-pass rows of the matrix are circulant shifts of g", "[ndwt1d]") {
  const FilterBank fb = get_filter("haar");
  const WaveletMatrix wm = build_ndwt_matrix(4, fb, 1);
  REQUIRE(wm.rows == 8);
  REQUIRE(wm.cols == 4);
  const double s = 1.0 / std::sqrt(2.0);
  const double expected[4][4] = {
      {s, -s, 0, 0}, {0, s, -s, 0}, {0, 0, s, -s}, {-s, 0, 0, s}};
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c)
      CHECK(wm.entries(4 + r, c) == Catch::Approx(expected[r][c]).margin(1e-15));
}

TEST_CASE("matrix product reproduces the pyramid", "[ndwt1d]") {
  const FilterBank fb = get_filter("db4");
  const WaveletMatrix wm = build_ndwt_matrix(16, fb, 2);
  REQUIRE(wm.rows == 48);
  std::mt19937_64 eng(777);
  for (int rep = 0; rep < 50; ++rep) {
    const auto y = gaussian_vector(16, eng());
    const auto via_matrix = matvec(wm.entries, y);
    const auto via_pyramid = ndwt_forward(y, fb, 2).flatten();
    double worst = 0.0;
    for (std::size_t i = 0; i < via_matrix.size(); ++i)
      worst = std::max(worst, std::abs(via_matrix[i] - via_pyramid[i]));
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("row count is (L+1) n", "[ndwt1d]") {
  for (std::size_t n : {16u, 24u, 40u}) {
    for (int L = 1; L <= 2; ++L) {
      const WaveletMatrix wm = build_ndwt_matrix(n, get_filter("db4"), L);
      CHECK(wm.rows == static_cast<std::size_t>(L + 1) * n);
      CHECK(wm.cols == n);
    }
  }
}

TEST_CASE("depth guard and empty input", "[ndwt1d]") {
  const FilterBank la8 = get_filter("la8");
  const auto y = gaussian_vector(32, 8);
  CHECK_NOTHROW(ndwt_forward(y, la8, 3));   // 8 * 2^2 = 32 <= 32
  CHECK_THROWS_AS(ndwt_forward(y, la8, 4), InvalidInputError);
  CHECK_THROWS_AS(ndwt_forward(std::vector<double>{}, la8, 1), InvalidInputError);
  CHECK_THROWS_AS(ndwt_forward(y, la8, 0), InvalidInputError);
  CHECK_THROWS_AS(build_ndwt_matrix(4096, la8, 1), InvalidInputError);
}
