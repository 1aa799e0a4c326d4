#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "wavecorr/errors.hpp"

namespace wavecorr {

/// Orthonormal two-channel filter pair for one wavelet family.
/// h is the low-pass (scaling) filter, g the high-pass derived from it by
/// the quadrature-mirror rule g_k = (-1)^k h_{m-1-k}. Immutable after
/// construction; safe to share across threads.
struct FilterBank {
  std::string name;
  std::vector<double> h;
  std::vector<double> g;

  std::size_t length() const { return h.size(); }
};

namespace detail {

inline std::vector<double> qmf_highpass(const std::vector<double>& h) {
  const std::size_t m = h.size();
  std::vector<double> g(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    g[k] = sign * h[m - 1 - k];
  }
  return g;
}

inline std::vector<double> lowpass_taps(std::string_view name) {
  const double sq2 = std::sqrt(2.0);
  if (name == "haar") {
    return {1.0 / sq2, 1.0 / sq2};
  }
  if (name == "db4") {
    // Daubechies extremal-phase 4-tap, closed form.
    const double s3 = std::sqrt(3.0);
    const double c = 4.0 * sq2;
    return {(1.0 + s3) / c, (3.0 + s3) / c, (3.0 - s3) / c, (1.0 - s3) / c};
  }
  if (name == "la8") {
    // Least-asymmetric 8-tap scaling filter, standard published table.
    return {-0.075765714789502213, -0.029635527646002492,
            0.49761866763277499,   0.80373875180513208,
            0.29785779560530605,   -0.099219543576633533,
            -0.012603967262031304, 0.032223100604051468};
  }
  if (name == "coif6") {
    // 6-tap Coiflet, closed form in sqrt(7).
    const double s7 = std::sqrt(7.0);
    const double c = sq2 / 32.0;
    return {(1.0 - s7) * c,        (5.0 + s7) * c, (14.0 + 2.0 * s7) * c,
            (14.0 - 2.0 * s7) * c, (1.0 - s7) * c, (-3.0 + s7) * c};
  }
  throw InvalidInputError("unknown wavelet family '" + std::string(name) +
                          "'; supported: haar, db4, la8, coif6");
}

}  // namespace detail

/// Lists the conditions an orthonormal filter pair must satisfy that `fb`
/// violates beyond tolerance 1e-10. Empty result means valid.
inline std::vector<std::string> validate(const FilterBank& fb) {
  constexpr double tol = 1e-10;
  std::vector<std::string> issues;
  const std::size_t m = fb.h.size();
  if (m == 0 || m % 2 != 0) {
    issues.push_back("filter length must be a positive even number");
    return issues;
  }
  if (fb.g.size() != m) {
    issues.push_back("h and g must have equal length");
    return issues;
  }

  double sum_h = 0.0, sum_g = 0.0, energy_h = 0.0, energy_g = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    sum_h += fb.h[k];
    sum_g += fb.g[k];
    energy_h += fb.h[k] * fb.h[k];
    energy_g += fb.g[k] * fb.g[k];
  }
  if (std::abs(sum_h - std::sqrt(2.0)) > tol) issues.push_back("sum of h differs from sqrt(2)");
  if (std::abs(energy_h - 1.0) > tol) issues.push_back("energy of h differs from 1");
  if (std::abs(energy_g - 1.0) > tol) issues.push_back("energy of g differs from 1");
  if (std::abs(sum_g) > tol) issues.push_back("sum of g differs from 0");

  for (std::size_t s = 1; 2 * s < m; ++s) {
    double acc = 0.0;
    for (std::size_t k = 0; k + 2 * s < m; ++k) acc += fb.h[k] * fb.h[k + 2 * s];
    if (std::abs(acc) > tol)
      issues.push_back("h not orthogonal to its shift by " + std::to_string(2 * s));
  }

  for (std::size_t k = 0; k < m; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    if (std::abs(fb.g[k] - sign * fb.h[m - 1 - k]) > tol) {
      issues.push_back("g is not the quadrature mirror of h");
      break;
    }
  }
  return issues;
}

/// Returns the filter bank for one of the supported families
/// (haar, db4, la8, coif6). Table-sourced taps are checked against the
/// orthonormality conditions on every load.
inline FilterBank get_filter(std::string_view name) {
  FilterBank fb;
  fb.name = std::string(name);
  fb.h = detail::lowpass_taps(name);
  fb.g = detail::qmf_highpass(fb.h);
  if (auto issues = validate(fb); !issues.empty()) {
    std::string msg = "filter table for '" + fb.name + "' failed validation:";
    for (const auto& s : issues) msg += " " + s + ";";
    throw NumericError(msg);
  }
  return fb;
}

}  // namespace wavecorr
