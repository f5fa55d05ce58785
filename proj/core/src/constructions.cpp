#include "markovnik/constructions.hpp"

#include <cmath>

#include "markovnik/errors.hpp"

namespace markovnik {

Polynomial q_series(const SeriesSpec& spec) {
  if (spec.n < 1) throw DomainError("q_series needs n >= 1");
  if (!(spec.alpha > 0.0)) throw DomainError("q_series needs alpha > 0");
  if (spec.first_power < 0 || spec.first_power > spec.n) throw DomainError("q_series first_power out of range");
  std::vector<double> coeffs(static_cast<std::size_t>(spec.n) + 1, 0.0);
  double c = 1.0;  // (alpha)_k / k!
  for (int k = 0; k <= spec.n; ++k) {
    if (k > 0) c *= (spec.alpha + k - 1.0) / k;
    if (k >= spec.first_power) coeffs[static_cast<std::size_t>(k)] = c;
  }
  return Polynomial(std::move(coeffs));
}

std::vector<GrowthPoint> q_log_growth(double alpha, std::span<const int> n_grid, int first_power) {
  if (!(alpha > 0.0)) throw DomainError("q_log_growth needs alpha > 0");
  const NormParam p = NormParam::finite(1.0 / alpha);
  std::vector<GrowthPoint> out;
  out.reserve(n_grid.size());
  int previous = 0;
  for (int n : n_grid) {
    if (n <= previous) throw DomainError("q_log_growth grid must be increasing");
    previous = n;
    const Polynomial q = q_series({n, alpha, first_power});
    const double power = p.value();
    const double whole = std::round(power);
    if (std::fabs(power - whole) <= 1e-12 && whole * n <= Polynomial::kMaxDegree) {
      // Integer power: all coefficients are positive, so term-wise integration is exact.
      const Polynomial full = pow(q, static_cast<int>(whole));
      double s = 0.0;
      for (int i = full.degree(); i >= 0; --i) s += full[i] / (i + 1);
      out.push_back({n, s});
    } else {
      out.push_back({n, std::pow(lp_norm(q, p, {0.0, 1.0}), power)});
    }
  }
  return out;
}

double q_bounded_on_left(double alpha, int n) {
  if (n < 2 || n % 2 != 0) throw DomainError("q_bounded_on_left needs an even n >= 2");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("q_bounded_on_left needs 0 < alpha <= 1");
  return lp_norm(q_series({n, alpha, 0}), NormParam::infinity(), {-1.0, 0.0});
}

Polynomial lower_family(int n, int k, int m, const NormParam& q) {
  if (k < 1 || m < 1) throw DomainError("lower_family needs k >= 1 and m >= 1");
  if (q.is_infinite()) throw DomainError("lower_family needs a finite q");
  if (static_cast<long long>(2) * m * n + k > Polynomial::kMaxDegree) {
    throw DegreeOverflow("lower_family degree 2mn+k exceeds the cap");
  }
  const double alpha = 1.0 / (2.0 * m * q.value());
  return kernel_integral(pow(q_series({n, alpha, 0}), 2 * m), k);
}

Polynomial baseline_family(BaselineFamily family, int n, int k) {
  if (k < 0 || n < k) throw DomainError("baseline_family needs 0 <= k <= n");
  switch (family) {
    case BaselineFamily::PowerRamp:
      return Polynomial::linear_power(0.5, 0.5, n);
    case BaselineFamily::ChebyshevBump: {
      const int m = (n - k) / 2;
      const Polynomial bump = chebyshev_t(m) + Polynomial::constant(1.0);
      const Polynomial r = bump * bump;
      return k >= 1 ? kernel_integral(r, k) : r;
    }
  }
  throw DomainError("unknown baseline family");
}

}  // namespace markovnik
