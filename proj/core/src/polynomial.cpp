#include "markovnik/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "markovnik/errors.hpp"

namespace markovnik {

namespace {

constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2;
constexpr int kCompensatedAbove = 60;
constexpr double kCancellationRatio = 64.0;

double gamma(int k) {
  const double ku = k * kUnitRoundoff;
  return ku / (1.0 - ku);
}

// Horner on |a_i| at |x|: the condition-number term of every error bound below.
double abs_horner(std::span<const double> c, double ax) {
  double s = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * ax + std::fabs(*it);
  return s;
}

double horner(std::span<const double> c, double x) {
  double s = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
  return s;
}

// Compensated Horner (error-free transformations, TwoProd via fma).
double comp_horner(std::span<const double> c, double x) {
  const int n = static_cast<int>(c.size()) - 1;
  double s = c[n];
  double err = 0.0;
  for (int i = n - 1; i >= 0; --i) {
    const double prod = s * x;
    const double prod_err = std::fma(s, x, -prod);
    const double sum = prod + c[i];
    const double z = sum - prod;
    const double sum_err = (prod - (sum - z)) + (c[i] - z);
    err = err * x + (prod_err + sum_err);
    s = sum;
  }
  return s + err;
}

double checked(double v) {
  if (!std::isfinite(v)) throw OutOfRange("polynomial evaluation overflowed");
  return v;
}

// Neumaier-compensated sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

int certified_sign(const Evaluation& e) {
  if (e.value > e.error_bound) return 1;
  if (e.value < -e.error_bound) return -1;
  return 0;
}

// Bisection on a bracket whose left end has certified sign `left_sign` and
// right end the opposite sign. Stops early once the midpoint is within
// rounding error of zero.
double bisect(const Polynomial& p, double a, double b, int left_sign, double tol) {
  for (int it = 0; it < 200 && b - a > tol; ++it) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const int s = certified_sign(eval_with_bound(p, mid));
    if (s == 0) return mid;
    if (s == left_sign) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

std::vector<double> refinement_grid(Interval interval, int degree) {
  const int n = std::max(8 * degree, 16);
  std::vector<double> xs;
  xs.reserve(2 * static_cast<std::size_t>(n) + 2);
  xs.push_back(interval.lo);
  xs.push_back(interval.hi);
  for (int j = 1; j < n; ++j) {
    xs.push_back(interval.lo + interval.length() * j / n);
  }
  // Chebyshev-clustered points of [-1, 1] resolve the O(1/n^2) spacing of
  // oscillation near the ends.
  for (int j = 1; j < n; ++j) {
    const double c = -std::cos(std::numbers::pi * j / n);
    if (c > interval.lo && c < interval.hi) xs.push_back(c);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

std::vector<double> merge_close(std::vector<double> roots, double tol) {
  std::sort(roots.begin(), roots.end());
  std::vector<double> merged;
  std::size_t i = 0;
  while (i < roots.size()) {
    std::size_t j = i;
    double sum = roots[i];
    while (j + 1 < roots.size() && roots[j + 1] - roots[j] <= tol) {
      ++j;
      sum += roots[j];
    }
    merged.push_back(sum / static_cast<double>(j - i + 1));
    i = j + 1;
  }
  return merged;
}

}  // namespace

Polynomial::Polynomial(std::vector<double> coeffs, int max_degree) : coeffs_(std::move(coeffs)) {
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw OutOfRange("non-finite polynomial coefficient");
  }
  trim();
  if (degree() > max_degree) {
    throw DegreeOverflow("polynomial degree " + std::to_string(degree()) + " exceeds cap " +
                         std::to_string(max_degree));
  }
}

Polynomial Polynomial::constant(double c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(int power, double c) {
  if (power < 0) throw DomainError("monomial power must be non-negative");
  if (power > kMaxDegree) throw DegreeOverflow("monomial power exceeds degree cap");
  std::vector<double> coeffs(static_cast<std::size_t>(power) + 1, 0.0);
  coeffs.back() = c;
  return Polynomial(std::move(coeffs));
}

Polynomial Polynomial::linear_power(double a, double b, int power) {
  if (power < 0) throw DomainError("power must be non-negative");
  if (power > kMaxDegree) throw DegreeOverflow("power exceeds degree cap");
  std::vector<double> coeffs(static_cast<std::size_t>(power) + 1, 0.0);
  if (b == 0.0) {
    coeffs[0] = std::pow(a, power);
    return Polynomial(std::move(coeffs));
  }
  if (a == 0.0) {
    coeffs.back() = std::pow(b, power);
    return Polynomial(std::move(coeffs));
  }
  // Log space keeps C(n,i) a^{n-i} b^i from underflowing at large n.
  const double la = std::log(std::fabs(a));
  const double lb = std::log(std::fabs(b));
  const double lg_n = std::lgamma(power + 1.0);
  for (int i = 0; i <= power; ++i) {
    const double log_mag = lg_n - std::lgamma(i + 1.0) - std::lgamma(power - i + 1.0) +
                           (power - i) * la + i * lb;
    const bool negative = ((a < 0) && ((power - i) % 2 == 1)) != ((b < 0) && (i % 2 == 1));
    coeffs[static_cast<std::size_t>(i)] = negative ? -std::exp(log_mag) : std::exp(log_mag);
  }
  return Polynomial(std::move(coeffs));
}

double Polynomial::operator[](int i) const noexcept {
  if (i < 0 || i > degree()) return 0.0;
  return coeffs_[static_cast<std::size_t>(i)];
}

double Polynomial::max_abs_coeff() const noexcept {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::fabs(c));
  return m;
}

double Polynomial::operator()(double x) const { return eval(*this, x); }

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(double scale) {
  for (double& c : coeffs_) c *= scale;
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw OutOfRange("coefficient overflow in scaling");
  }
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) return {};
  if (lhs.degree() + rhs.degree() > Polynomial::kMaxDegree) {
    throw DegreeOverflow("product degree exceeds cap");
  }
  std::vector<double> out(lhs.coeffs_.size() + rhs.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i) {
    const double a = lhs.coeffs_[i];
    if (a == 0.0) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += a * rhs.coeffs_[j];
  }
  return Polynomial(std::move(out));
}

void Polynomial::trim() noexcept {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
  double total = 0.0;
  double at_plus = 0.0;
  double at_minus = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    total += std::fabs(coeffs_[i]);
    at_plus += coeffs_[i];
    at_minus += i % 2 == 0 ? coeffs_[i] : -coeffs_[i];
  }
  cancellation_prone_ = degree() > kCompensatedAbove ||
                        total > kCancellationRatio * std::max(std::fabs(at_plus), std::fabs(at_minus));
}

void Interval::require_within_unit() const {
  if (!(lo >= -1.0 && lo < hi && hi <= 1.0)) {
    throw DomainError("interval must satisfy -1 <= lo < hi <= 1");
  }
}

double eval(const Polynomial& p, double x) {
  const auto c = p.coeffs();
  if (c.empty()) return 0.0;
  if (p.cancellation_prone()) return checked(comp_horner(c, x));
  return checked(horner(c, x));
}

Evaluation eval_with_bound(const Polynomial& p, double x) {
  const auto c = p.coeffs();
  if (c.empty()) return {0.0, 0.0};
  const int n = p.degree();
  const double cond = abs_horner(c, std::fabs(x));
  if (p.cancellation_prone()) {
    const double v = checked(comp_horner(c, x));
    const double g = gamma(2 * n);
    return {v, 2.0 * (kUnitRoundoff * std::fabs(v) + g * g * cond)};
  }
  const double v = checked(horner(c, x));
  return {v, 2.0 * gamma(2 * n) * cond};
}

Polynomial derivative(const Polynomial& p, int j) {
  if (j < 0) throw DomainError("derivative order must be non-negative");
  if (j == 0) return p;
  if (j > p.degree()) return {};
  const auto c = p.coeffs();
  std::vector<double> out(c.size() - static_cast<std::size_t>(j));
  for (std::size_t i = 0; i < out.size(); ++i) {
    double factor = 1.0;
    for (int t = 1; t <= j; ++t) factor *= static_cast<double>(i + static_cast<std::size_t>(t));
    out[i] = c[i + static_cast<std::size_t>(j)] * factor;
  }
  return Polynomial(std::move(out));
}

Polynomial antiderivative(const Polynomial& p, double anchor) {
  if (p.is_zero()) return {};
  if (p.degree() + 1 > Polynomial::kMaxDegree) {
    throw DegreeOverflow("antiderivative degree exceeds cap");
  }
  const auto c = p.coeffs();
  std::vector<double> out(c.size() + 1, 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) out[i + 1] = c[i] / static_cast<double>(i + 1);
  CompensatedSum at_anchor;
  double power = anchor;
  for (std::size_t i = 1; i < out.size(); ++i) {
    at_anchor.add(out[i] * power);
    power *= anchor;
  }
  out[0] = -at_anchor.value();
  return Polynomial(std::move(out));
}

Polynomial kernel_integral(const Polynomial& r, int k) {
  if (k < 1) throw DomainError("kernel_integral order must be >= 1");
  if (r.degree() + k > Polynomial::kMaxDegree) {
    throw DegreeOverflow("kernel_integral degree exceeds cap");
  }
  // Cauchy's formula: k nested antiderivatives from -1 equal the
  // (y - t)^{k-1}/(k-1)! kernel integral.
  Polynomial out = r;
  for (int i = 0; i < k; ++i) out = antiderivative(out, -1.0);
  return out;
}

Polynomial pow(const Polynomial& p, int exponent) {
  if (exponent < 0) throw DomainError("negative polynomial power");
  if (exponent == 0) return Polynomial::constant(1.0);
  if (!p.is_zero() && static_cast<long long>(p.degree()) * exponent > Polynomial::kMaxDegree) {
    throw DegreeOverflow("power degree exceeds cap");
  }
  Polynomial result = Polynomial::constant(1.0);
  Polynomial base = p;
  int e = exponent;
  while (true) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e == 0) break;
    base = base * base;
  }
  return result;
}

Polynomial chebyshev_t(int m) {
  if (m < 0) throw DomainError("Chebyshev degree must be non-negative");
  if (m > Polynomial::kMaxDegree) throw DegreeOverflow("Chebyshev degree exceeds cap");
  Polynomial prev = Polynomial::constant(1.0);
  if (m == 0) return prev;
  Polynomial cur = Polynomial::monomial(1);
  const Polynomial two_x = Polynomial::monomial(1, 2.0);
  for (int i = 1; i < m; ++i) {
    Polynomial next = two_x * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

RootIsolation isolate_roots(const Polynomial& p, Interval interval, double tol) {
  if (p.is_zero()) throw DomainError("root isolation of the zero polynomial");
  if (!(tol > 0.0)) throw DomainError("root tolerance must be positive");
  if (!(interval.lo < interval.hi)) throw DomainError("empty interval");
  RootIsolation out;
  if (p.degree() == 0) return out;

  const Polynomial dp = derivative(p, 1);
  const std::vector<double> xs = refinement_grid(interval, p.degree());
  const std::size_t n = xs.size();
  std::vector<int> s(n);
  std::vector<int> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = certified_sign(eval_with_bound(p, xs[i]));
    d[i] = certified_sign(eval_with_bound(dp, xs[i]));
  }

  std::vector<double> roots;
  for (std::size_t i = 0; i < n;) {
    if (s[i] != 0) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && s[j + 1] == 0) ++j;
    if (xs[j] - xs[i] <= tol) {
      roots.push_back(0.5 * (xs[i] + xs[j]));
    } else {
      out.unresolved.push_back({xs[i], xs[j]});
    }
    i = j + 1;
  }

  for (std::size_t i = 0; i + 1 < n; ++i) {
    const int sl = s[i];
    const int sr = s[i + 1];
    if (sl == 0 || sr == 0) continue;
    if (sl != sr) {
      roots.push_back(bisect(p, xs[i], xs[i + 1], sl, tol));
      continue;
    }
    // Same sign at both ends: an extremum turning toward zero may touch or
    // cross it inside the cell.
    if (d[i] == -sl && d[i + 1] == sl) {
      const double c = bisect(dp, xs[i], xs[i + 1], d[i], tol);
      const int sc = certified_sign(eval_with_bound(p, c));
      if (sc == 0) {
        roots.push_back(c);
      } else if (sc != sl) {
        roots.push_back(bisect(p, xs[i], c, sl, tol));
        roots.push_back(bisect(p, c, xs[i + 1], sc, tol));
      }
    }
  }

  out.roots = merge_close(std::move(roots), tol);
  if (static_cast<int>(out.roots.size()) > p.degree()) {
    throw RootIsolationError("found more roots than the degree allows; grid too coarse");
  }
  return out;
}

std::vector<double> roots_in_interval(const Polynomial& p, Interval interval, double tol) {
  RootIsolation iso = isolate_roots(p, interval, tol);
  if (!iso.unresolved.empty()) {
    const Interval& bad = iso.unresolved.front();
    throw RootIsolationError("cannot separate roots in [" + std::to_string(bad.lo) + ", " +
                             std::to_string(bad.hi) + "]: |P| is within rounding error there");
  }
  return std::move(iso.roots);
}

}  // namespace markovnik
