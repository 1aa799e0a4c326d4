#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "wavecorr/matrix.hpp"

namespace testsupport {

/// Deterministic standard-normal vectors for tests.
inline std::vector<double> gaussian_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> v(n);
  for (auto& x : v) x = normal(eng);
  return v;
}

inline wavecorr::Matrix gaussian_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::normal_distribution<double> normal;
  wavecorr::Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = normal(eng);
  return m;
}

inline std::vector<double> circular_shift(const std::vector<double>& v, std::size_t s) {
  const std::size_t n = v.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[(i + s) % n] = v[i];
  return out;
}

}  // namespace testsupport
