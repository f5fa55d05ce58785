#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "markovnik/polynomial.hpp"
#include "markovnik/rational.hpp"

namespace markovnik {

/// Exponent p in (0, inf] of an L_p norm (a quasi-norm when p < 1).
///
/// Keeps the exact rational value when one is known so that regime boundaries
/// such as 1/q - 1/p == l can be decided without rounding.
class NormParam {
 public:
  static NormParam infinity() noexcept;
  /// Throws DomainError unless 0 < p < inf.
  static NormParam finite(double p);
  static NormParam exact(Rational p);
  /// "inf", "2", "0.5", "1/3". Throws DomainError on anything else.
  static NormParam parse(std::string_view text);

  bool is_infinite() const noexcept { return infinite_; }
  bool is_quasi() const noexcept { return !infinite_ && value_ < 1.0; }
  /// p itself; +inf for the sup norm.
  double value() const noexcept;
  const std::optional<Rational>& exact_value() const noexcept { return exact_; }
  /// 1/p exactly (0 for the sup norm), when p is rational.
  std::optional<Rational> reciprocal() const;
  double reciprocal_value() const noexcept { return infinite_ ? 0.0 : 1.0 / value_; }
  std::string str() const;

 private:
  bool infinite_ = true;
  double value_ = 0.0;
  std::optional<Rational> exact_;
};

struct NormResult {
  double value = 0.0;
  /// Estimated relative error of `value` (0 for the sup norm).
  double rel_error_estimate = 0.0;
};

/// ||P||_{L_p(I)}, I within [-1, 1].
///
/// Finite p: I is split at the real roots of P and (integral of |P|^p)^(1/p)
/// is taken by adaptive composite Gauss-Legendre, starting from a panel count
/// proportional to degree*max(p, 1). Throws QuadratureError when the error
/// estimate stays above 1e-10 (p >= 1) or 1e-8 (p < 1) relative.
/// p = inf: max |P| over the endpoints and the critical points in I.
NormResult lp_norm_detailed(const Polynomial& p, const NormParam& np, Interval interval = kUnitInterval);
double lp_norm(const Polynomial& p, const NormParam& np, Interval interval = kUnitInterval);

/// (integral_{-1}^{1-delta} (1-x)^{-r} dx)^{1/r} in closed form, r finite.
double weight_norm(const NormParam& r, double delta);

}  // namespace markovnik
