#pragma once

#include <span>
#include <vector>

namespace markovnik {

/// Dense real polynomial in the monomial basis.
///
/// Coefficient i multiplies x^i. Trailing zeros are trimmed on construction so
/// degree() is exact; the zero polynomial has degree -1. Values are immutable
/// once built and all operations below are pure.
class Polynomial {
 public:
  static constexpr int kMaxDegree = 4096;

  Polynomial() = default;
  /// Throws DegreeOverflow past `max_degree`, OutOfRange on non-finite input.
  explicit Polynomial(std::vector<double> coeffs, int max_degree = kMaxDegree);

  static Polynomial constant(double c);
  static Polynomial monomial(int power, double c = 1.0);
  /// (a + b x)^power, expanded with binomial coefficients.
  static Polynomial linear_power(double a, double b, int power);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  std::span<const double> coeffs() const noexcept { return coeffs_; }
  /// Coefficient of x^i, zero outside [0, degree].
  double operator[](int i) const noexcept;
  double max_abs_coeff() const noexcept;

  double operator()(double x) const;
  /// True when evaluation on [-1, 1] is exposed to heavy cancellation: degree
  /// above 60, or sum |a_i| far exceeding max(|P(-1)|, |P(1)|).
  bool cancellation_prone() const noexcept { return cancellation_prone_; }

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(double scale);

  friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
  friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs) { return lhs -= rhs; }
  friend Polynomial operator*(Polynomial lhs, double s) { return lhs *= s; }
  friend Polynomial operator*(double s, Polynomial rhs) { return rhs *= s; }
  friend Polynomial operator-(Polynomial p) { return p *= -1.0; }
  friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim() noexcept;

  std::vector<double> coeffs_;
  bool cancellation_prone_ = false;
};

/// Closed interval [lo, hi] with lo < hi.
struct Interval {
  double lo = -1.0;
  double hi = 1.0;

  double length() const noexcept { return hi - lo; }
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
  /// Throws DomainError unless -1 <= lo < hi <= 1.
  void require_within_unit() const;
};

inline constexpr Interval kUnitInterval{-1.0, 1.0};

struct Evaluation {
  double value;
  /// Rigorous bound on |computed - exact| for the arithmetic performed.
  double error_bound;
};

/// Nested (Horner) evaluation, compensated for cancellation-prone polynomials. Throws OutOfRange
/// when the result overflows.
double eval(const Polynomial& p, double x);
Evaluation eval_with_bound(const Polynomial& p, double x);

/// j-th derivative; the zero polynomial once j exceeds the degree.
Polynomial derivative(const Polynomial& p, int j = 1);

/// Antiderivative that vanishes at `anchor`.
Polynomial antiderivative(const Polynomial& p, double anchor);

/// P(y) = 1/(k-1)! * integral_{-1}^{y} R(t) (y - t)^{k-1} dt.
///
/// Satisfies derivative(P, k) == R and P^{(j)}(-1) == 0 for j < k.
Polynomial kernel_integral(const Polynomial& r, int k);

/// Non-negative integer power by binary exponentiation.
Polynomial pow(const Polynomial& p, int exponent);

/// Chebyshev polynomial of the first kind T_m.
Polynomial chebyshev_t(int m);

/// Roots found by isolate_roots together with stretches of the interval where
/// |P| never rises above its own rounding error. Such stretches are zero to
/// working precision and cannot be resolved into individual roots.
struct RootIsolation {
  std::vector<double> roots;
  std::vector<Interval> unresolved;
};

/// Tolerant root isolation for internal consumers (norms, cone checks): never
/// throws on numerically-flat stretches, reports them in `unresolved`.
RootIsolation isolate_roots(const Polynomial& p, Interval interval, double tol);

/// All real roots of `p` in `interval` to absolute accuracy `tol`, sorted.
///
/// Sign changes are bracketed on a grid of at least 8*degree points (Chebyshev
/// clustered plus uniform) and refined by bisection. Roots of even
/// multiplicity are caught where the derivative changes sign and |P| is within
/// rounding error. Throws RootIsolationError when part of the interval cannot
/// be separated, DomainError for the zero polynomial or tol <= 0.
std::vector<double> roots_in_interval(const Polynomial& p, Interval interval, double tol);

}  // namespace markovnik
