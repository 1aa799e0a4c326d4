#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wavecorr/errors.hpp"
#include "wavecorr/filterbank.hpp"
#include "wavecorr/matrix.hpp"

namespace wavecorr {

enum class Scheme { orthogonal, nondecimated };

inline std::string to_string(Scheme s) {
  return s == Scheme::orthogonal ? "orthogonal" : "nondecimated";
}

/// Levelwise coefficients of a 1D transform. `details` is ordered
/// coarsest first; the last entry is the finest detail level. For the
/// orthogonal scheme subvector lengths halve toward the coarse end and
/// sum to n; for the nondecimated scheme every subvector has length n.
struct Decomposition1D {
  Scheme scheme = Scheme::orthogonal;
  std::size_t n = 0;
  std::optional<int> J;  // log2(n); set for the orthogonal scheme only
  int L = 0;
  std::vector<double> smooth;
  std::vector<std::vector<double>> details;

  std::size_t coefficient_count() const {
    std::size_t total = smooth.size();
    for (const auto& d : details) total += d.size();
    return total;
  }

  /// Concatenation (smooth, coarsest detail, ..., finest detail).
  std::vector<double> flatten() const {
    std::vector<double> out;
    out.reserve(coefficient_count());
    out.insert(out.end(), smooth.begin(), smooth.end());
    for (const auto& d : details) out.insert(out.end(), d.begin(), d.end());
    return out;
  }
};

/// Dense transform matrix, kept as a verification path next to the
/// pyramid implementations.
struct WaveletMatrix {
  Scheme scheme = Scheme::orthogonal;
  std::size_t rows = 0;
  std::size_t cols = 0;
  Matrix entries;
};

namespace detail {

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline int log2_exact(std::size_t n) {
  int j = 0;
  while ((std::size_t{1} << j) < n) ++j;
  return j;
}

/// One analysis step with periodized filters: out_c[t] and out_d[t]
/// accumulate taps applied at indices (2t + k) mod N.
inline void dwt_step(std::span<const double> s, const FilterBank& fb,
                     std::span<double> out_c, std::span<double> out_d) {
  const std::size_t N = s.size();
  const std::size_t m = fb.length();
  for (std::size_t t = 0; t < N / 2; ++t) {
    double c = 0.0, d = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const double v = s[(2 * t + k) % N];
      c += fb.h[k] * v;
      d += fb.g[k] * v;
    }
    out_c[t] = c;
    out_d[t] = d;
  }
}

inline void check_dyadic_depth(std::size_t n, int L, const char* who) {
  if (n < 2 || !is_power_of_two(n))
    throw InvalidInputError(std::string(who) + ": input length must be a power of two >= 2, got " +
                            std::to_string(n));
  if (L < 1) throw InvalidInputError(std::string(who) + ": level count must be >= 1");
  if ((std::size_t{1} << L) > n)
    throw InvalidInputError(std::string(who) + ": level count " + std::to_string(L) +
                            " exceeds log2(n) = " + std::to_string(log2_exact(n)));
}

}  // namespace detail

/// Orthogonal DWT by Mallat's pyramid with periodic boundaries. O(n).
inline Decomposition1D dwt_forward(std::span<const double> y, const FilterBank& fb, int L) {
  detail::check_dyadic_depth(y.size(), L, "dwt_forward");
  Decomposition1D dec;
  dec.scheme = Scheme::orthogonal;
  dec.n = y.size();
  dec.J = detail::log2_exact(y.size());
  dec.L = L;
  dec.details.resize(L);

  std::vector<double> s(y.begin(), y.end());
  for (int j = 1; j <= L; ++j) {
    const std::size_t N = s.size();
    std::vector<double> c(N / 2), d(N / 2);
    detail::dwt_step(s, fb, c, d);
    dec.details[L - j] = std::move(d);  // coarsest ends up first
    s = std::move(c);
  }
  dec.smooth = std::move(s);
  return dec;
}

/// Exact inverse of dwt_forward (transpose of the orthogonal transform).
inline std::vector<double> dwt_inverse(const Decomposition1D& dec, const FilterBank& fb) {
  if (dec.scheme != Scheme::orthogonal)
    throw InvalidInputError("dwt_inverse: decomposition scheme is not orthogonal");
  if (dec.details.empty() || dec.smooth.empty())
    throw InvalidInputError("dwt_inverse: empty decomposition");
  std::size_t expect = dec.smooth.size();
  for (const auto& d : dec.details) {
    if (d.size() != expect)
      throw InvalidInputError("dwt_inverse: inconsistent subvector lengths");
    expect *= 2;
  }
  if (expect != dec.n) throw InvalidInputError("dwt_inverse: coefficients do not sum to n");

  const std::size_t m = fb.length();
  std::vector<double> s = dec.smooth;
  for (const auto& d : dec.details) {  // coarsest first
    const std::size_t N = 2 * s.size();
    std::vector<double> prev(N, 0.0);
    for (std::size_t t = 0; t < s.size(); ++t) {
      for (std::size_t k = 0; k < m; ++k) {
        prev[(2 * t + k) % N] += fb.h[k] * s[t] + fb.g[k] * d[t];
      }
    }
    s = std::move(prev);
  }
  return s;
}

/// Dense n-by-n transform matrix reproducing dwt_forward's flattened
/// layout. Built by cascading periodized analysis blocks, independently
/// of the pyramid code path. Verification/teaching path with an explicit
/// size guard; the pyramid is the production path.
inline WaveletMatrix build_dwt_matrix(std::size_t n, const FilterBank& fb, int L) {
  constexpr std::size_t kDenseGuard = 4096;
  if (n > kDenseGuard)
    throw InvalidInputError("build_dwt_matrix: n exceeds dense-storage guard " +
                            std::to_string(kDenseGuard));
  detail::check_dyadic_depth(n, L, "build_dwt_matrix");

  const std::size_t m = fb.length();
  Matrix w = Matrix::identity(n);
  for (int j = 1; j <= L; ++j) {
    const std::size_t N = n >> (j - 1);
    // Replace the leading N rows of w with the level-j analysis of them.
    Matrix top(N, n);
    for (std::size_t t = 0; t < N / 2; ++t) {
      for (std::size_t k = 0; k < m; ++k) {
        const std::size_t src = (2 * t + k) % N;
        const double* row = w.row_ptr(src);
        double* crow = top.row_ptr(t);
        double* drow = top.row_ptr(N / 2 + t);
        const double hk = fb.h[k], gk = fb.g[k];
        for (std::size_t col = 0; col < n; ++col) {
          crow[col] += hk * row[col];
          drow[col] += gk * row[col];
        }
      }
    }
    for (std::size_t r = 0; r < N; ++r) {
      double* dst = w.row_ptr(r);
      const double* src = top.row_ptr(r);
      for (std::size_t col = 0; col < n; ++col) dst[col] = src[col];
    }
  }

  WaveletMatrix out;
  out.scheme = Scheme::orthogonal;
  out.rows = n;
  out.cols = n;
  out.entries = std::move(w);
  return out;
}

}  // namespace wavecorr
