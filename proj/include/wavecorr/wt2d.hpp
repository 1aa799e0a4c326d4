#pragma once

#include <cstddef>
#include <vector>

#include "wavecorr/dwt1d.hpp"
#include "wavecorr/errors.hpp"
#include "wavecorr/filterbank.hpp"
#include "wavecorr/matrix.hpp"
#include "wavecorr/ndwt1d.hpp"
#include "wavecorr/parallel.hpp"

namespace wavecorr {

/// Two-dimensional transform of a square image. `full` holds the
/// two-sided product (n-by-n for the orthogonal scale-mixing transform,
/// (L+1)n-by-(L+1)n for the nondecimated one). `diagonal_blocks` are the
/// L+1 scale-coincident blocks, smooth block first, then detail blocks
/// coarsest to finest; they are the locus of the 2D correlations.
struct Decomposition2D {
  Scheme scheme = Scheme::nondecimated;
  std::size_t n = 0;
  int L = 0;
  Matrix full;
  std::vector<Matrix> diagonal_blocks;
};

namespace detail {

inline std::vector<double> transform_line(std::span<const double> line, const FilterBank& fb,
                                          int L, Scheme scheme) {
  if (scheme == Scheme::orthogonal) return dwt_forward(line, fb, L).flatten();
  return ndwt_forward(line, fb, L).flatten();
}

/// Applies the 1D transform to every column, then to every row of the
/// result. Columns and rows are independent, so both passes parallelize
/// without changing any arithmetic.
inline Matrix two_sided_transform(const Matrix& a, const FilterBank& fb, int L, Scheme scheme) {
  const std::size_t n = a.rows();
  const std::size_t out_n = scheme == Scheme::orthogonal ? n : (static_cast<std::size_t>(L) + 1) * n;

  Matrix colpass(out_n, n);
  parallel_for(0, n, [&](std::size_t c) {
    std::vector<double> col(n);
    for (std::size_t r = 0; r < n; ++r) col[r] = a(r, c);
    const std::vector<double> t = transform_line(col, fb, L, scheme);
    for (std::size_t r = 0; r < out_n; ++r) colpass(r, c) = t[r];
  });

  Matrix full(out_n, out_n);
  parallel_for(0, out_n, [&](std::size_t r) {
    std::vector<double> row(colpass.row_ptr(r), colpass.row_ptr(r) + n);
    const std::vector<double> t = transform_line(row, fb, L, scheme);
    double* dst = full.row_ptr(r);
    for (std::size_t c = 0; c < out_n; ++c) dst[c] = t[c];
  });
  return full;
}

/// Index ranges of the scale-coincident diagonal blocks in the flattened
/// layout: smooth range first, then detail ranges coarsest to finest.
inline std::vector<std::pair<std::size_t, std::size_t>> diagonal_ranges(std::size_t n, int L,
                                                                        Scheme scheme) {
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  if (scheme == Scheme::orthogonal) {
    const std::size_t coarse = n >> L;
    ranges.emplace_back(0, coarse);  // smooth
    std::size_t lo = coarse;
    for (int j = 0; j < L; ++j) {  // coarsest detail has the same side as the smooth block
      const std::size_t len = coarse << j;
      ranges.emplace_back(lo, lo + len);
      lo += len;
    }
  } else {
    for (int b = 0; b <= L; ++b)
      ranges.emplace_back(static_cast<std::size_t>(b) * n, static_cast<std::size_t>(b + 1) * n);
  }
  return ranges;
}

}  // namespace detail

/// Forward 2D transform with extraction of the diagonal hierarchy.
inline Decomposition2D wt2d_forward(const Matrix& a, const FilterBank& fb, int L, Scheme scheme) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw InvalidInputError("wt2d_forward: input must be a nonempty square matrix");
  const std::size_t n = a.rows();
  if (scheme == Scheme::orthogonal) {
    detail::check_dyadic_depth(n, L, "wt2d_forward");
  } else {
    detail::check_ndwt_depth(n, fb.length(), L, "wt2d_forward");
  }

  Decomposition2D dec;
  dec.scheme = scheme;
  dec.n = n;
  dec.L = L;
  dec.full = detail::two_sided_transform(a, fb, L, scheme);

  for (const auto& [lo, hi] : detail::diagonal_ranges(n, L, scheme)) {
    const std::size_t side = hi - lo;
    Matrix block(side, side);
    for (std::size_t r = 0; r < side; ++r)
      for (std::size_t c = 0; c < side; ++c) block(r, c) = dec.full(lo + r, lo + c);
    dec.diagonal_blocks.push_back(std::move(block));
  }
  return dec;
}

/// Flattens each diagonal block row-major into one vector per level,
/// smooth first, then details coarsest to finest.
inline std::vector<std::vector<double>> diagonal_block_series(const Decomposition2D& dec) {
  std::vector<std::vector<double>> out;
  out.reserve(dec.diagonal_blocks.size());
  for (const auto& block : dec.diagonal_blocks) out.push_back(block.data());
  return out;
}

}  // namespace wavecorr
