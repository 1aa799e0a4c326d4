#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wavecorr/depstats.hpp"
#include "wavecorr/dwt1d.hpp"
#include "wavecorr/errors.hpp"
#include "wavecorr/filterbank.hpp"
#include "wavecorr/ndwt1d.hpp"
#include "wavecorr/wt2d.hpp"

namespace wavecorr {

enum class Measure { pearson, kendall, blomqvist };

inline std::string to_string(Measure m) {
  switch (m) {
    case Measure::pearson: return "pearson";
    case Measure::kendall: return "kendall";
    case Measure::blomqvist: return "blomqvist";
  }
  return "unknown";
}

inline Measure measure_from_string(std::string_view s) {
  if (s == "pearson") return Measure::pearson;
  if (s == "kendall") return Measure::kendall;
  if (s == "blomqvist") return Measure::blomqvist;
  throw InvalidInputError("unknown measure '" + std::string(s) +
                          "'; supported: pearson, kendall, blomqvist");
}

/// One correlogram row. A level whose estimate or interval could not be
/// computed (zero variance, collinear control, |r| = 1, sample too
/// small) is marked "degenerate" and keeps whatever was computable.
struct LevelEstimate {
  std::string label;       // "1" (finest detail) .. "L" (coarsest), or "smooth"
  std::size_t n_eff = 0;
  std::optional<double> estimate;
  std::optional<IntervalEstimate> interval;
  std::string status = "ok";  // "ok" or "degenerate"
  std::string note;           // diagnostic detail when degenerate
};

/// Levelwise correlations with confidence bands. Rows are ordered for
/// plotting: finest detail (level 1) through coarsest (level L), then
/// the smooth level.
struct Correlogram {
  Measure measure = Measure::pearson;
  Scheme scheme = Scheme::orthogonal;
  std::string wavelet;
  int L = 0;
  std::size_t n = 0;
  double alpha = 0.05;
  std::vector<std::string> controls;
  std::vector<LevelEstimate> rows;
};

struct CorrelogramOptions {
  double alpha = 0.05;
  /// Plain Fisher intervals switch to the bias-corrected transform when
  /// the level sample is below this; 0 disables the switch.
  std::size_t bias_correction_threshold = 30;
};

namespace detail {

/// Per-level estimate + interval for any measure, shared by the 1D and
/// 2D correlogram builders. Controls, when present, are removed by the
/// iterated first-order recursion applied to the measure's own pairwise
/// values; for Kendall and Blomqvist the matching interval treats the
/// partial value as if it were a plain estimate of its kind, an
/// approximation inherited from the averaging-style workflows.
inline LevelEstimate level_estimate(const std::string& label, std::span<const double> xs,
                                    std::span<const double> ys,
                                    const std::vector<std::vector<double>>& controls,
                                    Measure measure, std::size_t n_eff,
                                    const CorrelogramOptions& opts) {
  LevelEstimate row;
  row.label = label;
  row.n_eff = n_eff;
  const std::size_t p = controls.size();

  auto pairwise = [&](std::span<const double> a, std::span<const double> b) -> double {
    switch (measure) {
      case Measure::pearson: return pearson(a, b);
      case Measure::kendall: return kendall_tau(a, b).tau_hat;
      case Measure::blomqvist: return blomqvist_beta(a, b);
    }
    return 0.0;
  };

  try {
    if (p == 0) {
      row.estimate = pairwise(xs, ys);
    } else if (measure == Measure::pearson) {
      row.estimate = partial_correlation(xs, ys, controls);
    } else {
      const std::size_t nv = p + 2;
      std::vector<std::span<const double>> vars;
      vars.push_back(xs);
      vars.push_back(ys);
      for (const auto& c : controls) vars.emplace_back(c);
      Matrix r(nv, nv, 0.0);
      for (std::size_t i = 0; i < nv; ++i) {
        r(i, i) = 1.0;
        for (std::size_t j = i + 1; j < nv; ++j) {
          const double v = pairwise(vars[i], vars[j]);
          r(i, j) = v;
          r(j, i) = v;
        }
      }
      row.estimate = iterated_partial(std::move(r), default_names(p));
    }
  } catch (const Error& e) {
    row.status = "degenerate";
    row.note = e.what();
    return row;
  }

  try {
    const double est = *row.estimate;
    switch (measure) {
      case Measure::pearson:
        if (p == 0) {
          const bool bc = opts.bias_correction_threshold > 0 &&
                          n_eff < opts.bias_correction_threshold;
          row.interval = fisher_ci(est, n_eff, opts.alpha, bc);
        } else {
          row.interval = partial_ci(est, n_eff, p, opts.alpha);
        }
        break;
      case Measure::kendall:
        row.interval = kendall_ci_from_value(est, n_eff, opts.alpha);
        break;
      case Measure::blomqvist:
        if (p == 0) {
          row.interval = fisher_ci(est, n_eff, opts.alpha, false);
        } else {
          row.interval = partial_ci(est, n_eff, p, opts.alpha);
        }
        break;
    }
  } catch (const Error& e) {
    row.status = "degenerate";
    row.note = e.what();
  }
  return row;
}

inline Decomposition1D transform_series(std::span<const double> v, const FilterBank& fb, int L,
                                        Scheme scheme) {
  return scheme == Scheme::orthogonal ? dwt_forward(v, fb, L) : ndwt_forward(v, fb, L);
}

/// Subvector for plot level k (1 = finest detail, ..., L = coarsest,
/// L+1 = smooth). details are stored coarsest first.
inline const std::vector<double>& plot_level(const Decomposition1D& dec, int k) {
  if (k == dec.L + 1) return dec.smooth;
  return dec.details[static_cast<std::size_t>(dec.L - k)];
}

}  // namespace detail

/// Levelwise correlogram of two equal-length series, optionally
/// controlling levelwise for further series transformed identically.
inline Correlogram correlogram(std::span<const double> x, std::span<const double> y,
                               const FilterBank& fb, int L, Scheme scheme, Measure measure,
                               const CorrelogramOptions& opts = {},
                               const std::vector<std::vector<double>>& controls = {},
                               const std::vector<std::string>& control_names = {}) {
  detail::check_equal_lengths(x, y, "correlogram");
  for (const auto& c : controls) detail::check_equal_lengths(x, c, "correlogram controls");
  if (!(opts.alpha > 0.0 && opts.alpha < 1.0))
    throw InvalidInputError("correlogram: alpha must be in (0, 1)");

  const Decomposition1D dx = detail::transform_series(x, fb, L, scheme);
  const Decomposition1D dy = detail::transform_series(y, fb, L, scheme);
  std::vector<Decomposition1D> dz;
  dz.reserve(controls.size());
  for (const auto& c : controls) dz.push_back(detail::transform_series(c, fb, L, scheme));

  Correlogram cg;
  cg.measure = measure;
  cg.scheme = scheme;
  cg.wavelet = fb.name;
  cg.L = L;
  cg.n = x.size();
  cg.alpha = opts.alpha;
  cg.controls = control_names;
  if (cg.controls.size() < controls.size()) {
    for (std::size_t i = cg.controls.size(); i < controls.size(); ++i)
      cg.controls.push_back("control " + std::to_string(i + 1));
  }

  for (int k = 1; k <= L + 1; ++k) {
    const std::string label = k == L + 1 ? "smooth" : std::to_string(k);
    const auto& xs = detail::plot_level(dx, k);
    const auto& ys = detail::plot_level(dy, k);
    std::vector<std::vector<double>> zs;
    zs.reserve(dz.size());
    for (const auto& d : dz) zs.push_back(detail::plot_level(d, k));
    cg.rows.push_back(detail::level_estimate(label, xs, ys, zs, measure, xs.size(), opts));
  }
  return cg;
}

/// One row of the exact covariance decomposition.
struct ScaleContribution {
  std::string label;   // "1".."L" or "smooth"
  double weight = 0.0;       // w_j or w*
  double correlation = 0.0;  // rho_j or rho*
  double contribution = 0.0; // weighted covariance term
};

/// Exact cross-scale covariance decomposition of an orthogonal DWT pair
/// and the weighted recovery of the overall correlation.
///
/// Estimator convention making both identities exact finite-sample
/// statements: x and y are de-meaned once globally, per-level second
/// moments are uncentered means of coefficient products, and the overall
/// covariance uses the 1/n normalization. The smooth correlation is
/// Corr(smooth_x, smooth_y).
struct ScaleDecomposition {
  std::string wavelet;
  int L = 0;
  std::size_t n = 0;
  std::vector<ScaleContribution> rows;  // finest (level 1) .. coarsest, then smooth
  double weight_sum = 0.0;              // need not equal 1
  double direct_covariance = 0.0;
  double recovered_correlation = 0.0;
  double direct_correlation = 0.0;
};

inline ScaleDecomposition scale_decomposition(std::span<const double> x,
                                              std::span<const double> y, const FilterBank& fb,
                                              int L) {
  detail::check_equal_lengths(x, y, "scale_decomposition");
  const std::size_t n = x.size();
  detail::check_dyadic_depth(n, L, "scale_decomposition");

  std::vector<double> xc(x.begin(), x.end()), yc(y.begin(), y.end());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xc[i];
    my += yc[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    xc[i] -= mx;
    yc[i] -= my;
    sxx += xc[i] * xc[i];
    syy += yc[i] * yc[i];
    sxy += xc[i] * yc[i];
  }
  const double sigma_x = std::sqrt(sxx / static_cast<double>(n));
  const double sigma_y = std::sqrt(syy / static_cast<double>(n));
  if (sigma_x <= 0.0 || sigma_y <= 0.0)
    throw DegenerateError("scale_decomposition: an input has zero variance");

  const Decomposition1D dx = dwt_forward(xc, fb, L);
  const Decomposition1D dy = dwt_forward(yc, fb, L);

  ScaleDecomposition out;
  out.wavelet = fb.name;
  out.L = L;
  out.n = n;
  out.direct_covariance = sxy / static_cast<double>(n);
  out.direct_correlation = detail::clamp_corr(out.direct_covariance / (sigma_x * sigma_y));

  auto level_row = [&](const std::string& label, const std::vector<double>& a,
                       const std::vector<double>& b, double scale_weight) {
    double maa = 0.0, mbb = 0.0, mab = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      maa += a[i] * a[i];
      mbb += b[i] * b[i];
      mab += a[i] * b[i];
    }
    const double len = static_cast<double>(a.size());
    maa /= len;
    mbb /= len;
    mab /= len;
    ScaleContribution row;
    row.label = label;
    row.contribution = scale_weight * mab;
    const double sa = std::sqrt(maa), sb = std::sqrt(mbb);
    if (sa > 0.0 && sb > 0.0) {
      row.correlation = detail::clamp_corr(mab / (sa * sb));
      row.weight = sa * sb * scale_weight / (sigma_x * sigma_y);
    } else {
      // a dead level contributes nothing and gets zero weight
      row.correlation = 0.0;
      row.weight = 0.0;
    }
    return row;
  };

  double recovered = 0.0;
  // the detail level at plot position k carries scale weight 1/2^k;
  // the smooth level carries 1/2^L
  for (int k = 1; k <= L; ++k) {
    const auto& a = detail::plot_level(dx, k);
    const auto& b = detail::plot_level(dy, k);
    ScaleContribution row = level_row(std::to_string(k), a, b, std::ldexp(1.0, -k));
    recovered += row.weight * row.correlation;
    out.weight_sum += row.weight;
    out.rows.push_back(row);
  }
  ScaleContribution smooth = level_row("smooth", dx.smooth, dy.smooth, std::ldexp(1.0, -L));
  recovered += smooth.weight * smooth.correlation;
  out.weight_sum += smooth.weight;
  out.rows.push_back(smooth);
  out.recovered_correlation = recovered;
  return out;
}

/// Mean correlogram across runs sharing the same structure. Per level,
/// estimates are averaged arithmetically over runs where the level is
/// defined; the interval is a plain Fisher-z band around the mean with
/// the level's subvector length as effective sample size.
inline Correlogram average_correlogram(std::span<const Correlogram> runs) {
  if (runs.empty()) throw InvalidInputError("average_correlogram: no runs");
  const Correlogram& first = runs.front();
  for (const Correlogram& r : runs) {
    if (r.rows.size() != first.rows.size() || r.measure != first.measure ||
        r.scheme != first.scheme || r.wavelet != first.wavelet || r.L != first.L ||
        r.alpha != first.alpha)
      throw InvalidInputError("average_correlogram: runs have mismatched structure");
    for (std::size_t i = 0; i < r.rows.size(); ++i)
      if (r.rows[i].label != first.rows[i].label || r.rows[i].n_eff != first.rows[i].n_eff)
        throw InvalidInputError("average_correlogram: runs have mismatched levels");
  }

  Correlogram out = first;
  out.rows.clear();
  for (std::size_t i = 0; i < first.rows.size(); ++i) {
    LevelEstimate row;
    row.label = first.rows[i].label;
    row.n_eff = first.rows[i].n_eff;
    double sum = 0.0;
    std::size_t defined = 0;
    for (const Correlogram& r : runs) {
      if (r.rows[i].estimate) {
        sum += *r.rows[i].estimate;
        ++defined;
      }
    }
    if (defined == 0) {
      row.status = "degenerate";
      row.note = "no run produced an estimate at this level";
    } else {
      row.estimate = sum / static_cast<double>(defined);
      try {
        row.interval = fisher_ci(*row.estimate, row.n_eff, out.alpha, false);
      } catch (const Error& e) {
        row.status = "degenerate";
        row.note = e.what();
      }
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

namespace detail {

/// Effective sample size for a 2D level. Orthogonal blocks are made of
/// uncorrelated coefficients, so their element count is used directly.
/// Nondecimated blocks are redundant: coefficients at level j are a
/// 4^j-fold oversampling of the decimated grid, so the decimated count
/// (n/2^j)^2 is used (the smooth block counts as level L).
inline std::size_t neff_2d(std::size_t n, int L, Scheme scheme, int plot_level,
                           std::size_t block_elements) {
  if (scheme == Scheme::orthogonal) return block_elements;
  const int j = plot_level == L + 1 ? L : plot_level;
  const std::size_t side = std::max<std::size_t>(1, n >> j);
  return side * side;
}

}  // namespace detail

/// Levelwise correlogram across the diagonal hierarchy of two images,
/// optionally controlling for further images levelwise.
inline Correlogram correlogram2d(const Matrix& a, const Matrix& b, const FilterBank& fb, int L,
                                 Scheme scheme, Measure measure,
                                 const CorrelogramOptions& opts = {},
                                 const std::vector<Matrix>& controls = {},
                                 const std::vector<std::string>& control_names = {}) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InvalidInputError("correlogram2d: image shapes differ");
  for (const auto& c : controls)
    if (c.rows() != a.rows() || c.cols() != a.cols())
      throw InvalidInputError("correlogram2d: control image shape differs");
  if (!(opts.alpha > 0.0 && opts.alpha < 1.0))
    throw InvalidInputError("correlogram2d: alpha must be in (0, 1)");

  const auto series_a = diagonal_block_series(wt2d_forward(a, fb, L, scheme));
  const auto series_b = diagonal_block_series(wt2d_forward(b, fb, L, scheme));
  std::vector<std::vector<std::vector<double>>> series_c;
  series_c.reserve(controls.size());
  for (const auto& c : controls)
    series_c.push_back(diagonal_block_series(wt2d_forward(c, fb, L, scheme)));

  Correlogram cg;
  cg.measure = measure;
  cg.scheme = scheme;
  cg.wavelet = fb.name;
  cg.L = L;
  cg.n = a.rows();
  cg.alpha = opts.alpha;
  cg.controls = control_names;
  if (cg.controls.size() < controls.size()) {
    for (std::size_t i = cg.controls.size(); i < controls.size(); ++i)
      cg.controls.push_back("control " + std::to_string(i + 1));
  }

  // series are ordered smooth, coarsest .. finest; emit finest-first
  for (int k = 1; k <= L + 1; ++k) {
    const std::string label = k == L + 1 ? "smooth" : std::to_string(k);
    const std::size_t idx = k == L + 1 ? 0 : static_cast<std::size_t>(L + 1 - k);
    const auto& xs = series_a[idx];
    const auto& ys = series_b[idx];
    std::vector<std::vector<double>> zs;
    zs.reserve(series_c.size());
    for (const auto& s : series_c) zs.push_back(s[idx]);
    const std::size_t n_eff = detail::neff_2d(cg.n, L, scheme, k, xs.size());
    cg.rows.push_back(detail::level_estimate(label, xs, ys, zs, measure, n_eff, opts));
  }
  return cg;
}

}  // namespace wavecorr
