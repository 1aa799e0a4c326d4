#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "wavecorr/errors.hpp"
#include "wavecorr/matrix.hpp"

namespace wavecorr {

/// Identity of the generator recorded in simulation metadata.
inline const char* generator_identity() { return "mt19937_64/box-muller"; }

/// Offset applied to derive the y-innovation stream seed from the
/// configured seed, keeping the two streams independent.
inline constexpr std::uint64_t kYStreamSeedOffset = 0x9E3779B97F4A7C15ULL;

namespace detail {

/// Standard normal draws from mt19937_64 via the trigonometric
/// Box-Muller transform. The uniform mapping uses the top 53 bits, so
/// the sequence is reproducible bit-for-bit on one platform and to
/// rounding across platforms.
class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint64_t seed) : engine_(seed) {}

  double operator()() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform_open();
    const double u2 = uniform_open();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  double uniform_open() {  // (0, 1]
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace detail

/// Configuration of the coupled AR(1) pair generators.
/// System 1: y_t = 0.5 x_{t-1} + 0.5 y_{t-1} + e_t,
/// system 2: y_t =     x_{t-1} + 0.5 y_{t-1} + e_t,
/// both over x_t = 0.5 x_{t-1} + e_t with independent unit-normal
/// innovation streams for x and y.
struct ARSystem {
  int system_id = 1;
  std::size_t n = 512;
  std::uint64_t seed = 0;
  std::size_t burn_in = 1000;
};

inline std::pair<std::vector<double>, std::vector<double>> simulate_ar_pair(const ARSystem& cfg) {
  if (cfg.system_id != 1 && cfg.system_id != 2)
    throw InvalidInputError("simulate_ar_pair: system must be 1 or 2");
  if (cfg.n == 0) throw InvalidInputError("simulate_ar_pair: n must be >= 1");

  detail::GaussianSampler ex(cfg.seed);
  detail::GaussianSampler ey(cfg.seed ^ kYStreamSeedOffset);
  const double b = cfg.system_id == 1 ? 0.5 : 1.0;

  std::vector<double> xs(cfg.n), ys(cfg.n);
  double x = 0.0, y = 0.0;
  for (std::size_t t = 0; t < cfg.burn_in + cfg.n; ++t) {
    const double x_prev = x;
    x = 0.5 * x_prev + ex();
    y = b * x_prev + 0.5 * y + ey();
    if (t >= cfg.burn_in) {
      xs[t - cfg.burn_in] = x;
      ys[t - cfg.burn_in] = y;
    }
  }
  return {std::move(xs), std::move(ys)};
}

/// Pair of n-by-n images sharing a smooth common component. The common
/// field is a circularly box-smoothed unit-variance Gaussian field; each
/// image is dependence * common + (1 - dependence) * own iid noise, so
/// dependence 0 gives independent images and dependence 1 identical
/// ones.
inline std::pair<Matrix, Matrix> simulate_image_pair(std::size_t n, double dependence,
                                                     std::uint64_t seed) {
  if (n < 8) throw InvalidInputError("simulate_image_pair: n must be >= 8");
  if (!(dependence >= 0.0 && dependence <= 1.0))
    throw InvalidInputError("simulate_image_pair: dependence must be in [0, 1]");

  detail::GaussianSampler gen(seed);
  Matrix base(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) base(i, j) = gen();

  // 5x5 circular box mean, rescaled back to unit variance
  Matrix common(n, n);
  auto wrap = [n](std::size_t i, int d) { return (i + n + static_cast<std::size_t>(d + 2) - 2) % n; };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int di = -2; di <= 2; ++di)
        for (int dj = -2; dj <= 2; ++dj) acc += base(wrap(i, di), wrap(j, dj));
      common(i, j) = acc / 5.0;
    }
  }

  const double noise_w = 1.0 - dependence;
  Matrix a(n, n), b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = dependence * common(i, j) + noise_w * gen();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = dependence * common(i, j) + noise_w * gen();
  return {std::move(a), std::move(b)};
}

}  // namespace wavecorr
