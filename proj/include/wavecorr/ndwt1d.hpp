#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "wavecorr/dwt1d.hpp"
#include "wavecorr/errors.hpp"
#include "wavecorr/filterbank.hpp"

namespace wavecorr {

namespace detail {

/// Depth guard: the filter upsampled for the deepest level must not wrap
/// the signal more than once, i.e. m * 2^(L-1) <= n.
inline void check_ndwt_depth(std::size_t n, std::size_t m, int L, const char* who) {
  if (n == 0) throw InvalidInputError(std::string(who) + ": empty input");
  if (L < 1) throw InvalidInputError(std::string(who) + ": level count must be >= 1");
  const std::size_t span = m << (L - 1);
  if (span > n)
    throw InvalidInputError(std::string(who) + ": depth " + std::to_string(L) +
                            " too deep for length " + std::to_string(n) +
                            " (need filter_length * 2^(L-1) <= n, got " + std::to_string(span) +
                            ")");
}

}  // namespace detail

/// Non-decimated (stationary) transform: at level j the filters are
/// upsampled by 2^(j-1) and applied circularly, so every subvector keeps
/// length n. No per-level rescaling is applied; levelwise correlations
/// are invariant to that choice. n need not be dyadic.
inline Decomposition1D ndwt_forward(std::span<const double> y, const FilterBank& fb, int L) {
  const std::size_t n = y.size();
  const std::size_t m = fb.length();
  detail::check_ndwt_depth(n, m, L, "ndwt_forward");

  Decomposition1D dec;
  dec.scheme = Scheme::nondecimated;
  dec.n = n;
  dec.L = L;
  dec.details.resize(L);

  std::vector<double> s(y.begin(), y.end());
  for (int j = 1; j <= L; ++j) {
    const std::size_t stride = std::size_t{1} << (j - 1);
    std::vector<double> c(n), d(n);
    for (std::size_t t = 0; t < n; ++t) {
      double cv = 0.0, dv = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        const double v = s[(t + k * stride) % n];
        cv += fb.h[k] * v;
        dv += fb.g[k] * v;
      }
      c[t] = cv;
      d[t] = dv;
    }
    dec.details[L - j] = std::move(d);
    s = std::move(c);
  }
  dec.smooth = std::move(s);
  return dec;
}

/// Dense (L+1)n-by-n matrix whose product with y reproduces
/// ndwt_forward's flattened output. Row blocks are ordered smooth first,
/// then details coarsest to finest.
inline WaveletMatrix build_ndwt_matrix(std::size_t n, const FilterBank& fb, int L) {
  constexpr std::size_t kDenseGuard = 2048;
  if (n > kDenseGuard)
    throw InvalidInputError("build_ndwt_matrix: n exceeds dense-storage guard " +
                            std::to_string(kDenseGuard));
  const std::size_t m = fb.length();
  detail::check_ndwt_depth(n, m, L, "build_ndwt_matrix");

  // Cascade of circulant level operators applied to the smooth path.
  Matrix smooth_path = Matrix::identity(n);
  std::vector<Matrix> detail_blocks(L);
  for (int j = 1; j <= L; ++j) {
    const std::size_t stride = std::size_t{1} << (j - 1);
    Matrix next(n, n), det(n, n);
    for (std::size_t t = 0; t < n; ++t) {
      for (std::size_t k = 0; k < m; ++k) {
        const std::size_t src = (t + k * stride) % n;
        const double* row = smooth_path.row_ptr(src);
        double* crow = next.row_ptr(t);
        double* drow = det.row_ptr(t);
        const double hk = fb.h[k], gk = fb.g[k];
        for (std::size_t col = 0; col < n; ++col) {
          crow[col] += hk * row[col];
          drow[col] += gk * row[col];
        }
      }
    }
    detail_blocks[L - j] = std::move(det);
    smooth_path = std::move(next);
  }

  WaveletMatrix out;
  out.scheme = Scheme::nondecimated;
  out.rows = static_cast<std::size_t>(L + 1) * n;
  out.cols = n;
  out.entries = Matrix(out.rows, n);
  auto copy_block = [&](std::size_t block, const Matrix& src) {
    for (std::size_t r = 0; r < n; ++r) {
      double* dst = out.entries.row_ptr(block * n + r);
      const double* s = src.row_ptr(r);
      for (std::size_t col = 0; col < n; ++col) dst[col] = s[col];
    }
  };
  copy_block(0, smooth_path);
  for (int i = 0; i < L; ++i) copy_block(static_cast<std::size_t>(1 + i), detail_blocks[i]);
  return out;
}

}  // namespace wavecorr
