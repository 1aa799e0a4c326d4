#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "support.hpp"
#include "wavecorr/multiscale.hpp"
#include "wavecorr/simgen.hpp"

using namespace wavecorr;
using testsupport::circular_shift;
using testsupport::gaussian_vector;

TEST_CASE("identical series give unit estimates at every level", "[multiscale]") {
  const auto x = gaussian_vector(128, 3);
  for (Scheme scheme : {Scheme::orthogonal, Scheme::nondecimated}) {
    const Correlogram cg = correlogram(x, x, get_filter("haar"), 4, scheme, Measure::pearson);
    REQUIRE(cg.rows.size() == 5);
    for (const auto& row : cg.rows) {
      REQUIRE(row.estimate.has_value());
      CHECK(*row.estimate == Catch::Approx(1.0).margin(1e-12));
      CHECK(row.status == "degenerate");  // |r| = 1 has no Fisher interval
    }
  }
}

TEST_CASE("row order and effective sizes follow the plotting convention", "[multiscale]") {
  const auto x = gaussian_vector(256, 5);
  const auto y = gaussian_vector(256, 6);
  const Correlogram cg = correlogram(x, y, get_filter("db4"), 3, Scheme::orthogonal,
                                     Measure::pearson);
  REQUIRE(cg.rows.size() == 4);
  CHECK(cg.rows[0].label == "1");
  CHECK(cg.rows[0].n_eff == 128);  // finest detail
  CHECK(cg.rows[1].label == "2");
  CHECK(cg.rows[1].n_eff == 64);
  CHECK(cg.rows[2].label == "3");
  CHECK(cg.rows[2].n_eff == 32);
  CHECK(cg.rows[3].label == "smooth");
  CHECK(cg.rows[3].n_eff == 32);

  const Correlogram nd = correlogram(x, y, get_filter("db4"), 3, Scheme::nondecimated,
                                     Measure::pearson);
  for (const auto& row : nd.rows) CHECK(row.n_eff == 256);
}

TEST_CASE("white-noise levels mostly contain zero", "[multiscale]") {
  std::mt19937_64 eng(99);
  double covered_levels = 0.0;
  const int seeds = 100;
  for (int rep = 0; rep < seeds; ++rep) {
    const auto x = gaussian_vector(1024, eng());
    const auto y = gaussian_vector(1024, eng());
    const Correlogram cg = correlogram(x, y, get_filter("haar"), 6, Scheme::orthogonal,
                                       Measure::pearson);
    for (const auto& row : cg.rows) {
      if (row.label == "smooth") continue;
      REQUIRE(row.interval.has_value());
      if (row.interval->lower <= 0.0 && 0.0 <= row.interval->upper) covered_levels += 1.0;
    }
  }
  CHECK(covered_levels / seeds >= 5.0);  // of the 6 detail levels
}

TEST_CASE("coarse levels dominate for the coupled AR pair", "[multiscale]") {
  int wins = 0;
  const int seeds = 100;
  for (int rep = 0; rep < seeds; ++rep) {
    ARSystem cfg;
    cfg.system_id = 1;
    cfg.seed = 7919u * static_cast<unsigned>(rep) + 1;
    const auto [x, y] = simulate_ar_pair(cfg);
    const Correlogram cg = correlogram(x, y, get_filter("haar"), 6, Scheme::orthogonal,
                                       Measure::pearson);
    const double fine = *cg.rows[0].estimate;   // level 1
    const double coarse = *cg.rows[5].estimate; // level 6
    if (coarse > fine) ++wins;
  }
  CHECK(wins >= 95);
}

TEST_CASE("kendall and blomqvist correlograms carry matching intervals", "[multiscale]") {
  const auto x = gaussian_vector(256, 31);
  auto y = gaussian_vector(256, 32);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += 0.8 * x[i];

  const Correlogram ck = correlogram(x, y, get_filter("haar"), 3, Scheme::orthogonal,
                                     Measure::kendall);
  for (const auto& row : ck.rows) {
    REQUIRE(row.interval.has_value());
    CHECK(row.interval->method == CiMethod::kendall_asymptotic);
    CHECK(row.interval->lower <= *row.estimate);
    CHECK(*row.estimate <= row.interval->upper);
  }

  const Correlogram cb = correlogram(x, y, get_filter("haar"), 3, Scheme::orthogonal,
                                     Measure::blomqvist);
  for (const auto& row : cb.rows) {
    REQUIRE(row.estimate.has_value());
    CHECK(std::abs(*row.estimate) <= 1.0);
  }
}

TEST_CASE("small levels switch to bias-corrected Fisher intervals", "[multiscale]") {
  const auto x = gaussian_vector(128, 41);
  const auto y = gaussian_vector(128, 42);
  const Correlogram cg = correlogram(x, y, get_filter("haar"), 4, Scheme::orthogonal,
                                     Measure::pearson);
  // finest level has 64 >= 30 coefficients, coarsest detail only 8
  CHECK(cg.rows[0].interval->method == CiMethod::fisher);
  CHECK(cg.rows[3].interval->method == CiMethod::fisher_bias_corrected);

  CorrelogramOptions no_bc;
  no_bc.bias_correction_threshold = 0;
  const Correlogram plain = correlogram(x, y, get_filter("haar"), 4, Scheme::orthogonal,
                                        Measure::pearson, no_bc);
  CHECK(plain.rows[3].interval->method == CiMethod::fisher);
}

TEST_CASE("partial correlogram controls levelwise", "[multiscale]") {
  // x and y share z; controlling for z must shrink the estimates
  std::mt19937_64 eng(55);
  const auto z = gaussian_vector(512, eng());
  auto x = gaussian_vector(512, eng());
  auto y = gaussian_vector(512, eng());
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] += 2.0 * z[i];
    y[i] += 2.0 * z[i];
  }
  const Correlogram raw = correlogram(x, y, get_filter("haar"), 4, Scheme::orthogonal,
                                      Measure::pearson);
  const Correlogram part = correlogram(x, y, get_filter("haar"), 4, Scheme::orthogonal,
                                       Measure::pearson, {}, {z}, {"z"});
  REQUIRE(part.controls == std::vector<std::string>{"z"});
  for (std::size_t i = 0; i < raw.rows.size(); ++i) {
    REQUIRE(part.rows[i].estimate.has_value());
    CHECK(std::abs(*part.rows[i].estimate) < std::abs(*raw.rows[i].estimate));
    CHECK(part.rows[i].interval->method == CiMethod::fisher);
  }

  // controlling for y itself degenerates every level
  const Correlogram degen = correlogram(x, y, get_filter("haar"), 4, Scheme::orthogonal,
                                        Measure::pearson, {}, {y}, {"y"});
  for (const auto& row : degen.rows) CHECK(row.status == "degenerate");
}

TEST_CASE("kendall partial uses the same recursion on tau values", "[multiscale]") {
  std::mt19937_64 eng(66);
  const auto z = gaussian_vector(256, eng());
  auto x = gaussian_vector(256, eng());
  auto y = gaussian_vector(256, eng());
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] += z[i];
    y[i] += z[i];
  }
  const Correlogram part = correlogram(x, y, get_filter("haar"), 2, Scheme::orthogonal,
                                       Measure::kendall, {}, {z}, {"z"});
  // reproduce level 1 by hand from the three pairwise tau values
  const auto dx = dwt_forward(x, get_filter("haar"), 2);
  const auto dy = dwt_forward(y, get_filter("haar"), 2);
  const auto dz = dwt_forward(z, get_filter("haar"), 2);
  const auto& fx = dx.details[1];
  const auto& fy = dy.details[1];
  const auto& fz = dz.details[1];
  const double txy = kendall_tau(fx, fy).tau_hat;
  const double txz = kendall_tau(fx, fz).tau_hat;
  const double tyz = kendall_tau(fy, fz).tau_hat;
  const double want = (txy - txz * tyz) / std::sqrt((1 - txz * txz) * (1 - tyz * tyz));
  CHECK(*part.rows[0].estimate == Catch::Approx(want).margin(1e-12));
  CHECK(part.rows[0].interval->method == CiMethod::kendall_asymptotic);
}

TEST_CASE("nondecimated correlograms are shift invariant", "[multiscale]") {
  std::mt19937_64 eng(77);
  const auto x = gaussian_vector(96, eng());
  auto y = gaussian_vector(96, eng());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += 0.5 * x[i];
  const Correlogram base = correlogram(x, y, get_filter("db4"), 3, Scheme::nondecimated,
                                       Measure::pearson);
  const Correlogram moved = correlogram(circular_shift(x, 17), circular_shift(y, 17),
                                        get_filter("db4"), 3, Scheme::nondecimated,
                                        Measure::pearson);
  for (std::size_t i = 0; i < base.rows.size(); ++i)
    CHECK(std::abs(*base.rows[i].estimate - *moved.rows[i].estimate) < 1e-10);
}

TEST_CASE("scale decomposition identities are exact", "[multiscale]") {
  std::mt19937_64 eng(888);
  for (int rep = 0; rep < 100; ++rep) {
    auto x = gaussian_vector(256, eng());
    auto y = gaussian_vector(256, eng());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = 0.4 * x[i] + y[i];
    for (const char* name : {"haar", "db4"}) {
      for (int L : {2, 4, 8}) {
        const ScaleDecomposition sd = scale_decomposition(x, y, get_filter(name), L);
        double contrib_sum = 0.0;
        for (const auto& row : sd.rows) contrib_sum += row.contribution;
        CAPTURE(name, L, rep);
        REQUIRE(std::abs(contrib_sum - sd.direct_covariance) < 1e-10);
        REQUIRE(std::abs(sd.recovered_correlation - sd.direct_correlation) < 1e-10);
        REQUIRE(std::abs(sd.recovered_correlation - pearson(x, y)) < 1e-10);
      }
    }
  }
}

TEST_CASE("identical inputs decompose with weights summing to one", "[multiscale]") {
  const auto x = gaussian_vector(128, 91);
  const ScaleDecomposition sd = scale_decomposition(x, x, get_filter("haar"), 4);
  CHECK(sd.recovered_correlation == Catch::Approx(1.0).margin(1e-12));
  CHECK(sd.direct_correlation == Catch::Approx(1.0).margin(1e-12));
  CHECK(sd.weight_sum == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("full-depth smooth contribution vanishes after de-meaning", "[multiscale]") {
  const auto x = gaussian_vector(64, 95);
  const auto y = gaussian_vector(64, 96);
  const ScaleDecomposition sd = scale_decomposition(x, y, get_filter("haar"), 6);
  CHECK(std::abs(sd.rows.back().contribution) < 1e-12);  // smooth row is last
}

TEST_CASE("averaging correlograms", "[multiscale]") {
  const auto x = gaussian_vector(128, 101);
  const auto y = gaussian_vector(128, 102);
  const Correlogram one = correlogram(x, y, get_filter("haar"), 3, Scheme::orthogonal,
                                      Measure::pearson);

  SECTION("single run is unchanged") {
    const Correlogram avg = average_correlogram(std::vector<Correlogram>{one});
    for (std::size_t i = 0; i < one.rows.size(); ++i)
      CHECK(*avg.rows[i].estimate == Catch::Approx(*one.rows[i].estimate).margin(1e-15));
  }

  SECTION("two runs average arithmetically") {
    const auto x2 = gaussian_vector(128, 103);
    const auto y2 = gaussian_vector(128, 104);
    const Correlogram two = correlogram(x2, y2, get_filter("haar"), 3, Scheme::orthogonal,
                                        Measure::pearson);
    const Correlogram avg = average_correlogram(std::vector<Correlogram>{one, two});
    for (std::size_t i = 0; i < one.rows.size(); ++i)
      CHECK(*avg.rows[i].estimate ==
            Catch::Approx((*one.rows[i].estimate + *two.rows[i].estimate) / 2).margin(1e-14));
    CHECK(avg.rows[0].interval->method == CiMethod::fisher);
  }

  SECTION("mismatched structure is rejected") {
    const Correlogram other = correlogram(x, y, get_filter("haar"), 2, Scheme::orthogonal,
                                          Measure::pearson);
    CHECK_THROWS_AS(average_correlogram(std::vector<Correlogram>{one, other}),
                    InvalidInputError);
  }

  SECTION("degenerate intervals do not drop estimates from the average") {
    const Correlogram self = correlogram(x, x, get_filter("haar"), 3, Scheme::orthogonal,
                                         Measure::pearson);
    const Correlogram avg = average_correlogram(std::vector<Correlogram>{self, self});
    for (const auto& row : avg.rows) {
      REQUIRE(row.estimate.has_value());
      CHECK(*row.estimate == Catch::Approx(1.0).margin(1e-12));
      CHECK(row.status == "degenerate");  // the mean of 1s has no Fisher interval
    }
  }

  SECTION("ten-run averages sit closer to zero for independent noise") {
    std::mt19937_64 eng(111);
    int closer = 0;
    const int trials = 100;
    for (int t = 0; t < trials; ++t) {
      std::vector<Correlogram> runs;
      for (int k = 0; k < 10; ++k) {
        const auto a = gaussian_vector(256, eng());
        const auto b = gaussian_vector(256, eng());
        runs.push_back(correlogram(a, b, get_filter("haar"), 4, Scheme::orthogonal,
                                   Measure::pearson));
      }
      const Correlogram avg = average_correlogram(runs);
      double mean_avg = 0.0, mean_single = 0.0;
      for (std::size_t i = 0; i < avg.rows.size(); ++i) {
        if (!avg.rows[i].estimate) continue;
        mean_avg += std::abs(*avg.rows[i].estimate);
        mean_single += std::abs(*runs[0].rows[i].estimate);
      }
      if (mean_avg < mean_single) ++closer;
    }
    CHECK(closer >= 90);
  }
}

TEST_CASE("independent images: levels mostly cover zero", "[multiscale]") {
  int covered = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto [a, b] = simulate_image_pair(64, 0.0, 3000 + seed);
    const Correlogram cg = correlogram2d(a, b, get_filter("coif6"), 3, Scheme::nondecimated,
                                         Measure::pearson);
    for (const auto& row : cg.rows) {
      REQUIRE(row.interval.has_value());
      if (row.interval->lower <= 0.0 && 0.0 <= row.interval->upper) ++covered;
      ++total;
    }
  }
  CHECK(covered * 3 >= total * 2);  // at least 2/3 of (seed, level) cells
}

TEST_CASE("2D correlogram over the diagonal hierarchy", "[multiscale]") {
  const auto [a, b] = simulate_image_pair(32, 0.7, 2024);
  const Correlogram cg = correlogram2d(a, b, get_filter("haar"), 3, Scheme::nondecimated,
                                       Measure::pearson);
  REQUIRE(cg.rows.size() == 4);
  CHECK(cg.rows[0].label == "1");
  CHECK(cg.rows[0].n_eff == 16 * 16);  // decimated-equivalent count at level 1
  CHECK(cg.rows[2].n_eff == 4 * 4);
  CHECK(cg.rows[3].label == "smooth");
  CHECK(cg.rows[3].n_eff == 4 * 4);
  for (const auto& row : cg.rows) {
    REQUIRE(row.estimate.has_value());
    CHECK(*row.estimate > 0.0);
  }

  const Correlogram self = correlogram2d(a, a, get_filter("haar"), 3, Scheme::nondecimated,
                                         Measure::pearson);
  for (const auto& row : self.rows) CHECK(*row.estimate == Catch::Approx(1.0).margin(1e-12));

  const Correlogram orth = correlogram2d(a, b, get_filter("haar"), 3, Scheme::orthogonal,
                                         Measure::pearson);
  CHECK(orth.rows[0].n_eff == 16 * 16);  // finest diagonal block of a 32x32 image
  CHECK(orth.rows[3].n_eff == 4 * 4);
}
