#pragma once

#include <span>
#include <vector>

#include "markovnik/norms.hpp"
#include "markovnik/polynomial.hpp"

namespace markovnik {

/// Truncated binomial series of (1 - x)^{-alpha}.
struct SeriesSpec {
  int n = 1;
  double alpha = 1.0;
  /// Lowest power kept. 0 keeps the constant term (full Taylor partial sum);
  /// 1 drops it.
  int first_power = 0;
};

/// sum_{k=first_power}^{n} (alpha)_k / k! x^k, all coefficients positive.
Polynomial q_series(const SeriesSpec& spec);

struct GrowthPoint {
  int n;
  double value;
};

/// integral_0^1 Q_n^{1/alpha} for each n in the grid: term by term when
/// 1/alpha is an integer, otherwise via the L_{1/alpha} norm on [0, 1]. The default drops the constant term, matching the series
/// as the log-growth statement writes it.
std::vector<GrowthPoint> q_log_growth(double alpha, std::span<const int> n_grid, int first_power = 1);

/// max over [-1, 0] of |Q_{n,alpha}| for even n and 0 < alpha <= 1.
double q_bounded_on_left(double alpha, int n);

/// Lower-bound family of the logarithmic regime: with alpha = 1/(2 m q),
/// P = kernel_integral(q_series(n, alpha)^{2m}, k), so deg P = 2mn + k and
/// P^{(k)} = Q_n^{2m}. Throws DegreeOverflow past the degree cap.
Polynomial lower_family(int n, int k, int m, const NormParam& q);

enum class BaselineFamily { PowerRamp, ChebyshevBump };

/// PowerRamp: ((1 + x)/2)^n. ChebyshevBump: kernel_integral((T_m + 1)^2, k)
/// with m = floor((n - k)/2). Both lie in the k-absolutely monotone class.
Polynomial baseline_family(BaselineFamily family, int n, int k);

}  // namespace markovnik
