#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "wavecorr/errors.hpp"
#include "wavecorr/matrix.hpp"

namespace wavecorr {

enum class CiMethod { fisher, fisher_bias_corrected, kendall_asymptotic, kendall_exact_variance };

inline std::string to_string(CiMethod m) {
  switch (m) {
    case CiMethod::fisher: return "fisher";
    case CiMethod::fisher_bias_corrected: return "fisher_bias_corrected";
    case CiMethod::kendall_asymptotic: return "kendall_asymptotic";
    case CiMethod::kendall_exact_variance: return "kendall_exact_variance";
  }
  return "unknown";
}

/// Point estimate with a two-sided confidence interval.
/// Always satisfies lower <= estimate <= upper and [lower, upper] within
/// [-1, 1]. For bias-corrected Fisher intervals the estimate is the
/// bias-corrected point value (the interval midpoint in z-space), which
/// keeps the containment invariant unconditional.
struct IntervalEstimate {
  double estimate = 0.0;
  double lower = -1.0;
  double upper = 1.0;
  double alpha = 0.05;
  std::size_t n_eff = 0;
  CiMethod method = CiMethod::fisher;
};

/// Concordance bookkeeping for Kendall's tau (no ties).
/// c_i[k] counts the concordant pairs involving observation k, so
/// sum(c_i) = 2C and C + D = n(n-1)/2.
struct KendallStats {
  std::uint64_t concordant = 0;  // C
  std::uint64_t discordant = 0;  // D
  std::size_t n = 0;
  std::vector<std::uint64_t> c_i;
  double tau_hat = 0.0;
};

namespace detail {

inline double clamp_corr(double r) { return std::clamp(r, -1.0, 1.0); }

/// Standard normal quantile (lower tail). Acklam's rational
/// approximation refined by one Halley step through erfc; accurate to
/// full double precision over (0, 1).
inline double z_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidInputError("z_quantile: p must be in (0, 1)");
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double plow = 0.02425;
  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
  return x - u / (1.0 + x * u / 2.0);
}

inline void check_equal_lengths(std::span<const double> x, std::span<const double> y,
                                const char* who) {
  if (x.size() != y.size())
    throw InvalidInputError(std::string(who) + ": input lengths differ (" +
                            std::to_string(x.size()) + " vs " + std::to_string(y.size()) + ")");
}

/// Merge-sort inversion count: pairs (i < j) with v[i] > v[j].
inline std::uint64_t count_inversions(std::vector<double>& v, std::vector<double>& buf,
                                      std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t inv = count_inversions(v, buf, lo, mid) + count_inversions(v, buf, mid, hi);
  std::size_t a = lo, b = mid, out = lo;
  while (a < mid && b < hi) {
    if (v[b] < v[a]) {
      inv += mid - a;
      buf[out++] = v[b++];
    } else {
      buf[out++] = v[a++];
    }
  }
  while (a < mid) buf[out++] = v[a++];
  while (b < hi) buf[out++] = v[b++];
  std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo),
            buf.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return inv;
}

struct Fenwick {
  explicit Fenwick(std::size_t n) : tree(n + 1, 0) {}
  void add(std::size_t i) {  // 0-based
    for (++i; i < tree.size(); i += i & (~i + 1)) ++tree[i];
  }
  std::uint64_t count_below(std::size_t i) const {  // strictly below 0-based i
    std::uint64_t s = 0;
    for (; i > 0; i -= i & (~i + 1)) s += tree[i];
    return s;
  }
  std::vector<std::uint64_t> tree;
};

[[noreturn]] inline void throw_ties(const char* which, std::size_t i, std::size_t j, double v) {
  throw TiesError(std::string("tied values in ") + which + " at indices " + std::to_string(i) +
                  " and " + std::to_string(j) + " (value " + std::to_string(v) + ")");
}

}  // namespace detail

/// Sample Pearson correlation. Degenerate (zero-variance) input raises
/// rather than returning 0 or NaN; the result is clamped against
/// rounding drift beyond [-1, 1].
inline double pearson(std::span<const double> x, std::span<const double> y) {
  detail::check_equal_lengths(x, y, "pearson");
  const std::size_t n = x.size();
  if (n < 2) throw InsufficientSampleError("pearson: need at least 2 observations");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx <= 0.0) throw DegenerateError("pearson: first input has zero variance");
  if (syy <= 0.0) throw DegenerateError("pearson: second input has zero variance");
  return detail::clamp_corr(sxy / std::sqrt(sxx * syy));
}

/// Kendall's tau by merge-sort inversion counting, O(n log n). The
/// per-observation concordance counts c_i come from a Fenwick pass over
/// y-ranks; sum(c_i) == 2C is asserted against the merge-sort count.
/// Ties in either input are rejected.
inline KendallStats kendall_tau(std::span<const double> x, std::span<const double> y) {
  detail::check_equal_lengths(x, y, "kendall_tau");
  const std::size_t n = x.size();
  if (n < 2) throw InsufficientSampleError("kendall_tau: need at least 2 observations");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (x[order[i]] == x[order[i + 1]])
      detail::throw_ties("x", order[i], order[i + 1], x[order[i]]);

  // y in x-sorted order, plus dense y-ranks for the Fenwick pass
  std::vector<double> ysorted(n);
  for (std::size_t i = 0; i < n; ++i) ysorted[i] = y[order[i]];
  std::vector<std::size_t> yrank_order(n);
  std::iota(yrank_order.begin(), yrank_order.end(), 0);
  std::sort(yrank_order.begin(), yrank_order.end(),
            [&](std::size_t a, std::size_t b) { return y[a] < y[b]; });
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (y[yrank_order[i]] == y[yrank_order[i + 1]])
      detail::throw_ties("y", yrank_order[i], yrank_order[i + 1], y[yrank_order[i]]);
  std::vector<std::size_t> rank_of(n);  // original index -> y rank
  for (std::size_t r = 0; r < n; ++r) rank_of[yrank_order[r]] = r;

  KendallStats stats;
  stats.n = n;
  stats.c_i.assign(n, 0);
  detail::Fenwick fen(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t orig = order[i];
    const std::size_t rank = rank_of[orig];
    const std::uint64_t less_left = fen.count_below(rank);
    const std::uint64_t less_right = static_cast<std::uint64_t>(rank) - less_left;
    const std::uint64_t greater_right = static_cast<std::uint64_t>(n - 1 - i) - less_right;
    stats.c_i[orig] = less_left + greater_right;
    fen.add(rank);
  }

  std::vector<double> buf(n);
  stats.discordant = detail::count_inversions(ysorted, buf, 0, n);
  const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  stats.concordant = total - stats.discordant;
  const std::uint64_t csum = std::accumulate(stats.c_i.begin(), stats.c_i.end(), std::uint64_t{0});
  if (csum != 2 * stats.concordant)
    throw NumericError("kendall_tau: internal concordance counts disagree");
  stats.tau_hat = (static_cast<double>(stats.concordant) - static_cast<double>(stats.discordant)) /
                  static_cast<double>(total);
  return stats;
}

/// Definitional O(n^2) enumeration of all pairs; reference
/// implementation for kendall_tau.
inline KendallStats kendall_tau_oracle(std::span<const double> x, std::span<const double> y) {
  detail::check_equal_lengths(x, y, "kendall_tau_oracle");
  const std::size_t n = x.size();
  if (n < 2) throw InsufficientSampleError("kendall_tau_oracle: need at least 2 observations");
  KendallStats stats;
  stats.n = n;
  stats.c_i.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (x[i] == x[j]) detail::throw_ties("x", i, j, x[i]);
      if (y[i] == y[j]) detail::throw_ties("y", i, j, y[i]);
      const bool concordant = (x[i] - x[j]) * (y[i] - y[j]) > 0.0;
      if (concordant) {
        ++stats.concordant;
        ++stats.c_i[i];
        ++stats.c_i[j];
      } else {
        ++stats.discordant;
      }
    }
  }
  const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  stats.tau_hat = (static_cast<double>(stats.concordant) - static_cast<double>(stats.discordant)) /
                  static_cast<double>(total);
  return stats;
}

/// Pairwise contrast for the G-correlation family. difference and sign
/// are antisymmetric in (a, b); the Blomqvist contrast follows the
/// median-sign definition and uses only its first argument.
struct ContrastFunction {
  enum class Kind { difference, sign, blomqvist };
  Kind kind = Kind::difference;
  double center = 0.0;

  static ContrastFunction difference() { return {Kind::difference, 0.0}; }
  static ContrastFunction sign() { return {Kind::sign, 0.0}; }

  /// Blomqvist contrast centered at the sample median (lower median for
  /// even n, a fixed deterministic convention).
  static ContrastFunction blomqvist(std::span<const double> sample) {
    if (sample.empty()) throw InvalidInputError("blomqvist contrast: empty sample");
    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    return {Kind::blomqvist, sorted[(sorted.size() - 1) / 2]};
  }

  double operator()(double a, double b) const {
    switch (kind) {
      case Kind::difference: return a - b;
      case Kind::sign: return a > b ? 1.0 : (a < b ? -1.0 : 0.0);
      case Kind::blomqvist: return a > center ? 1.0 : (a < center ? -1.0 : 0.0);
    }
    return 0.0;
  }
};

/// Sample G-correlation over all ordered pairs (i != j):
/// sum Gx(x_i,x_j) Gy(y_i,y_j) / sqrt(sum Gx^2 * sum Gy^2).
/// O(n^2) reference path; difference/difference reproduces Pearson and
/// sign/sign reproduces Kendall's tau.
inline double g_correlation(std::span<const double> x, std::span<const double> y,
                            const ContrastFunction& gx, const ContrastFunction& gy) {
  detail::check_equal_lengths(x, y, "g_correlation");
  const std::size_t n = x.size();
  if (n < 2) throw InsufficientSampleError("g_correlation: need at least 2 observations");
  double num = 0.0, sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double a = gx(x[i], x[j]);
      const double b = gy(y[i], y[j]);
      num += a * b;
      sx += a * a;
      sy += b * b;
    }
  }
  if (sx <= 0.0) throw DegenerateError("g_correlation: first contrast is identically zero");
  if (sy <= 0.0) throw DegenerateError("g_correlation: second contrast is identically zero");
  return detail::clamp_corr(num / std::sqrt(sx * sy));
}

/// Blomqvist median correlation, O(n) fast path. Equals g_correlation
/// with blomqvist contrasts on both sides.
inline double blomqvist_beta(std::span<const double> x, std::span<const double> y) {
  detail::check_equal_lengths(x, y, "blomqvist_beta");
  const std::size_t n = x.size();
  if (n < 2) throw InsufficientSampleError("blomqvist_beta: need at least 2 observations");
  const ContrastFunction gx = ContrastFunction::blomqvist(x);
  const ContrastFunction gy = ContrastFunction::blomqvist(y);
  double num = 0.0, sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = gx(x[i], 0.0);
    const double b = gy(y[i], 0.0);
    num += a * b;
    sx += a * a;
    sy += b * b;
  }
  if (sx <= 0.0) throw DegenerateError("blomqvist_beta: first input constant at its median");
  if (sy <= 0.0) throw DegenerateError("blomqvist_beta: second input constant at its median");
  return detail::clamp_corr(num / std::sqrt(sx * sy));
}

/// Fisher z-transform confidence interval for a plain correlation,
/// standard error 1/sqrt(n-3). With bias_corrected the z-space center is
/// arctanh(r) - r/(2(n-1)) and the reported estimate is its tanh.
inline IntervalEstimate fisher_ci(double r, std::size_t n, double alpha,
                                  bool bias_corrected = false) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidInputError("fisher_ci: alpha must be in (0, 1)");
  if (n < 4) throw InsufficientSampleError("fisher_ci: need n >= 4");
  if (std::abs(r) >= 1.0)
    throw DegenerateError("fisher_ci: |r| = 1 gives a degenerate interval (arctanh diverges)");
  double w = std::atanh(r);
  if (bias_corrected) w -= r / (2.0 * (static_cast<double>(n) - 1.0));
  const double half = detail::z_quantile(1.0 - alpha / 2.0) / std::sqrt(static_cast<double>(n) - 3.0);
  IntervalEstimate ci;
  ci.estimate = bias_corrected ? std::tanh(w) : r;
  ci.lower = std::tanh(w - half);
  ci.upper = std::tanh(w + half);
  ci.alpha = alpha;
  ci.n_eff = n;
  ci.method = bias_corrected ? CiMethod::fisher_bias_corrected : CiMethod::fisher;
  return ci;
}

namespace detail {

/// Iterated first-order partial-correlation recursion on a precomputed
/// pairwise matrix over [x, y, controls...]. Controls are removed in the
/// given order; each stage checks the pivot correlations for
/// collinearity.
inline double iterated_partial(Matrix r, const std::vector<std::string>& names) {
  const std::size_t nv = r.rows();
  constexpr double tol = 1e-12;
  for (std::size_t k = 2; k < nv; ++k) {
    std::vector<std::size_t> remaining{0, 1};
    for (std::size_t v = k + 1; v < nv; ++v) remaining.push_back(v);
    Matrix next = r;
    for (std::size_t a = 0; a < remaining.size(); ++a) {
      const std::size_t i = remaining[a];
      const double di = 1.0 - r(i, k) * r(i, k);
      if (di < tol)
        throw CollinearityError("partial correlation stage " + std::to_string(k - 1) + ": '" +
                                names[k] + "' is collinear with '" + names[i] + "'");
      for (std::size_t b = a + 1; b < remaining.size(); ++b) {
        const std::size_t j = remaining[b];
        const double dj = 1.0 - r(j, k) * r(j, k);
        if (dj < tol)
          throw CollinearityError("partial correlation stage " + std::to_string(k - 1) + ": '" +
                                  names[k] + "' is collinear with '" + names[j] + "'");
        const double v = clamp_corr((r(i, j) - r(i, k) * r(j, k)) / std::sqrt(di * dj));
        next(i, j) = v;
        next(j, i) = v;
      }
    }
    r = std::move(next);
  }
  return r(0, 1);
}

inline std::vector<std::string> default_names(std::size_t p) {
  std::vector<std::string> names{"x", "y"};
  for (std::size_t i = 0; i < p; ++i) names.push_back("control " + std::to_string(i + 1));
  return names;
}

}  // namespace detail

/// Partial correlation of x and y given the controls, removed
/// iteratively in the given order by the first-order recursion. An empty
/// control list reduces to the plain Pearson correlation.
inline double partial_correlation(std::span<const double> x, std::span<const double> y,
                                  const std::vector<std::vector<double>>& controls) {
  if (controls.empty()) return pearson(x, y);
  const std::size_t nv = controls.size() + 2;
  std::vector<std::span<const double>> vars;
  vars.reserve(nv);
  vars.push_back(x);
  vars.push_back(y);
  for (const auto& c : controls) vars.emplace_back(c);
  for (const auto& v : vars) detail::check_equal_lengths(vars[0], v, "partial_correlation");

  Matrix r(nv, nv, 0.0);
  for (std::size_t i = 0; i < nv; ++i) {
    r(i, i) = 1.0;
    for (std::size_t j = i + 1; j < nv; ++j) {
      const double v = pearson(vars[i], vars[j]);
      r(i, j) = v;
      r(j, i) = v;
    }
  }
  return detail::iterated_partial(std::move(r), detail::default_names(controls.size()));
}

/// Semipartial correlation of x and y with the control removed from x
/// only: (r_xy - r_xz r_yz) / sqrt(1 - r_xz^2).
inline double semipartial_correlation(std::span<const double> x, std::span<const double> y,
                                      std::span<const double> z) {
  const double rxy = pearson(x, y);
  const double rxz = pearson(x, z);
  const double ryz = pearson(y, z);
  const double denom = 1.0 - rxz * rxz;
  if (denom < 1e-12)
    throw CollinearityError("semipartial_correlation: x is collinear with the control");
  return detail::clamp_corr((rxy - rxz * ryz) / std::sqrt(denom));
}

/// Fisher-z interval for a partial correlation with p controls,
/// standard error 1/sqrt(n-p-2).
inline IntervalEstimate partial_ci(double r_partial, std::size_t n, std::size_t p, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidInputError("partial_ci: alpha must be in (0, 1)");
  if (n <= p + 3) throw InsufficientSampleError("partial_ci: need n > p + 3");
  if (std::abs(r_partial) >= 1.0) throw DegenerateError("partial_ci: |r| = 1 degenerate interval");
  const double w = std::atanh(r_partial);
  const double half = detail::z_quantile(1.0 - alpha / 2.0) /
                      std::sqrt(static_cast<double>(n) - static_cast<double>(p) - 2.0);
  IntervalEstimate ci;
  ci.estimate = r_partial;
  ci.lower = std::tanh(w - half);
  ci.upper = std::tanh(w + half);
  ci.alpha = alpha;
  ci.n_eff = n;
  ci.method = CiMethod::fisher;
  return ci;
}

/// Fisher-z interval for a semipartial correlation, standard error
/// 1/sqrt(n-p-1).
inline IntervalEstimate semipartial_ci(double r_s, std::size_t n, std::size_t p, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw InvalidInputError("semipartial_ci: alpha must be in (0, 1)");
  if (n <= p + 2) throw InsufficientSampleError("semipartial_ci: need n > p + 2");
  if (std::abs(r_s) >= 1.0) throw DegenerateError("semipartial_ci: |r| = 1 degenerate interval");
  const double w = std::atanh(r_s);
  const double half = detail::z_quantile(1.0 - alpha / 2.0) /
                      std::sqrt(static_cast<double>(n) - static_cast<double>(p) - 1.0);
  IntervalEstimate ci;
  ci.estimate = r_s;
  ci.lower = std::tanh(w - half);
  ci.upper = std::tanh(w + half);
  ci.alpha = alpha;
  ci.n_eff = n;
  ci.method = CiMethod::fisher;
  return ci;
}

enum class KendallVariance { asymptotic, exact };

/// Normal-approximation interval for tau from its asymptotic null
/// variance 2(2n+5)/(9n(n-1)), intersected with [-1, 1].
inline IntervalEstimate kendall_ci_from_value(double tau, std::size_t n, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw InvalidInputError("kendall_ci: alpha must be in (0, 1)");
  if (n < 3) throw InsufficientSampleError("kendall_ci: asymptotic variance needs n >= 3");
  const double nn = static_cast<double>(n);
  const double var = 2.0 * (2.0 * nn + 5.0) / (9.0 * nn * (nn - 1.0));
  const double half = detail::z_quantile(1.0 - alpha / 2.0) * std::sqrt(var);
  IntervalEstimate ci;
  ci.estimate = detail::clamp_corr(tau);
  ci.lower = std::max(-1.0, tau - half);
  ci.upper = std::min(1.0, tau + half);
  ci.alpha = alpha;
  ci.n_eff = n;
  ci.method = CiMethod::kendall_asymptotic;
  return ci;
}

/// Interval for Kendall's tau. The exact variance mode evaluates the
/// concordance-count formula
///   [4 sum c_i^2 - 2C - 2D(2n-3) - C^2/(n(n-1))] / binom(n,2)^2
/// verbatim; it is nonstandard and can go negative, in which case a
/// NumericError is raised unless fallback_to_asymptotic is set.
inline IntervalEstimate kendall_ci(const KendallStats& stats, double alpha,
                                   KendallVariance mode = KendallVariance::asymptotic,
                                   bool fallback_to_asymptotic = false) {
  if (mode == KendallVariance::asymptotic)
    return kendall_ci_from_value(stats.tau_hat, stats.n, alpha);

  if (!(alpha > 0.0 && alpha < 1.0))
    throw InvalidInputError("kendall_ci: alpha must be in (0, 1)");
  if (stats.n < 2) throw InsufficientSampleError("kendall_ci: need n >= 2");
  const double n = static_cast<double>(stats.n);
  const double C = static_cast<double>(stats.concordant);
  const double D = static_cast<double>(stats.discordant);
  double csq = 0.0;
  for (std::uint64_t c : stats.c_i) csq += static_cast<double>(c) * static_cast<double>(c);
  const double pairs = n * (n - 1.0) / 2.0;
  const double var =
      (4.0 * csq - 2.0 * C - 2.0 * D * (2.0 * n - 3.0) - C * C / (n * (n - 1.0))) / (pairs * pairs);
  if (var < 0.0) {
    if (fallback_to_asymptotic) return kendall_ci_from_value(stats.tau_hat, stats.n, alpha);
    throw NumericError("kendall_ci: exact variance formula evaluated negative (" +
                       std::to_string(var) + "); asymptotic mode available on request");
  }
  const double half = detail::z_quantile(1.0 - alpha / 2.0) * std::sqrt(var);
  IntervalEstimate ci;
  ci.estimate = detail::clamp_corr(stats.tau_hat);
  ci.lower = std::max(-1.0, stats.tau_hat - half);
  ci.upper = std::min(1.0, stats.tau_hat + half);
  ci.alpha = alpha;
  ci.n_eff = stats.n;
  ci.method = CiMethod::kendall_exact_variance;
  return ci;
}

}  // namespace wavecorr
