#include "markovnik/constants.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#include "markovnik/errors.hpp"

namespace markovnik {

namespace {

// Diagonal and squared off-diagonal of the monic Jacobi recurrence.
void jacobi_recurrence(double a, double b, int m, std::vector<double>& diag, std::vector<double>& off2) {
  diag.assign(static_cast<std::size_t>(m), 0.0);
  off2.assign(static_cast<std::size_t>(m), 0.0);
  const double ab = a + b;
  diag[0] = (b - a) / (ab + 2.0);
  for (int j = 1; j < m; ++j) {
    const double s = 2.0 * j + ab;
    diag[static_cast<std::size_t>(j)] = (b * b - a * a) / (s * (s + 2.0));
  }
  if (m > 1) {
    // j = 1 written out: the general formula is 0/0 when a + b = -1.
    off2[1] = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
  }
  for (int j = 2; j < m; ++j) {
    const double s = 2.0 * j + ab;
    off2[static_cast<std::size_t>(j)] =
        4.0 * j * (j + a) * (j + b) * (j + ab) / (s * s * (s + 1.0) * (s - 1.0));
  }
}

// Number of eigenvalues strictly below x (Sturm count of the LDL^T pivots).
int eigenvalues_below(const std::vector<double>& diag, const std::vector<double>& off2, double x) {
  int count = 0;
  double d = 1.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    d = diag[i] - x - (i == 0 ? 0.0 : off2[i] / d);
    if (d == 0.0) d = -std::numeric_limits<double>::min();
    if (d < 0.0) ++count;
  }
  return count;
}

// Three-way comparison of l against a threshold, exact when possible.
int compare(int l, const std::optional<Rational>& exact_threshold, double threshold) {
  if (exact_threshold) {
    const Rational lr(l);
    if (lr < *exact_threshold) return -1;
    return lr == *exact_threshold ? 0 : 1;
  }
  const double diff = l - threshold;
  if (std::fabs(diff) <= 1e-12 * std::max(1.0, std::fabs(threshold))) return 0;
  return diff < 0 ? -1 : 1;
}

RegimeClass polynomial(double exponent) {
  if (exponent <= 0.0) return {};
  return {RegimeKind::PolynomialGrowth, exponent, 0.0, false};
}

RegimeClass log_power(double exponent) {
  if (exponent <= 0.0) return {};
  return {RegimeKind::LogPower, 0.0, exponent, false};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

Rational bernstein_qazi(int n) {
  if (n < 1) throw DomainError("bernstein_qazi needs n >= 1");
  const std::int64_t nn = n;
  if (n % 2 == 1) return Rational((nn + 1) * (nn + 1), 4);
  return Rational(nn * (nn + 2), 4);
}

double jacobi_largest_zero(double alpha, double beta, int m) {
  if (!(alpha > -1.0) || !(beta > -1.0)) throw DomainError("Jacobi parameters must exceed -1");
  if (m < 1) throw DomainError("Jacobi degree must be >= 1");
  std::vector<double> diag;
  std::vector<double> off2;
  jacobi_recurrence(alpha, beta, m, diag, off2);
  if (m == 1) return diag[0];
  // All zeros lie in (-1, 1); bisect for the point where m eigenvalues are below.
  double lo = -1.0;
  double hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (eigenvalues_below(diag, off2, mid) == m) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double kroo_szabados_sup(int n, int k) {
  if (k < 2 || k > n) throw DomainError("kroo_szabados_sup needs 2 <= k <= n");
  const int m = (n - k) / 2 + 1;
  const double beta = ((n - k) % 2 == 0) ? 0.0 : 1.0;
  const double x = jacobi_largest_zero(k - 2.0, beta, m);
  return (k - 1.0) / (1.0 - x);
}

double kroo_szabados_l1(int n, int k) {
  if (k < 1 || k > n) throw DomainError("kroo_szabados_l1 needs 1 <= k <= n");
  return kroo_szabados_sup(n + 1, k + 1);
}

std::string RegimeClass::str() const {
  std::string s;
  switch (kind) {
    case RegimeKind::PolynomialGrowth:
      s = "PolynomialGrowth(" + fmt(n_exponent) + ")";
      break;
    case RegimeKind::LogPower:
      s = "LogPower(" + fmt(log_exponent) + ")";
      if (n_exponent != 0.0) s += "*n^" + fmt(n_exponent);
      break;
    case RegimeKind::Bounded:
      s = "Bounded";
      break;
  }
  if (upper_bound_only) s += " [upper bound]";
  return s;
}

RegimeClass regime(int l, const NormParam& p, const NormParam& q, RegimeTable table) {
  if (l < 0) throw DomainError("derivative order l must be non-negative");
  const auto inv_p = p.reciprocal();
  const auto inv_q = q.reciprocal();
  std::optional<Rational> exact_gap;
  if (inv_p && inv_q) exact_gap = *inv_q - *inv_p;
  const double gap = q.reciprocal_value() - p.reciprocal_value();

  switch (table) {
    case RegimeTable::Classical: {
      std::optional<Rational> twice;
      if (exact_gap) twice = Rational(2) * *exact_gap;
      const int c = compare(l, twice, 2.0 * gap);
      if (c > 0) return polynomial(2.0 * l - 2.0 * gap);
      if (c == 0) {
        if (gap <= 0.0) return polynomial(l);
        return {RegimeKind::LogPower, static_cast<double>(l), gap, false};
      }
      return polynomial(l);
    }
    case RegimeTable::Constrained: {
      if (p.is_infinite()) throw DomainError("the constrained table needs p < inf");
      const int c = compare(l, exact_gap, gap);
      if (c > 0) return polynomial(2.0 * (l - gap));
      if (c == 0) return log_power(l);
      return {};
    }
    case RegimeTable::ConstrainedSupInput: {
      if (!p.is_infinite()) throw DomainError("the sup-input table needs p == inf");
      RegimeClass out;
      if (q.is_infinite()) {
        out = polynomial(2.0 * l);
      } else {
        const int c = -compare(l, q.exact_value(), q.value());  // sign of q - l
        if (c > 0) {
          out = polynomial(2.0 * l - 2.0 * q.reciprocal_value());
        } else if (c == 0) {
          out = log_power(l - 1.0);
        }
      }
      out.upper_bound_only = true;
      return out;
    }
  }
  throw DomainError("unknown regime table");
}

}  // namespace markovnik
