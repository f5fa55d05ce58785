#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "markovnik/polynomial.hpp"

namespace markovnik {

/// A constrained polynomial class of degree at most n: either the
/// k-absolutely monotone polynomials (P^{(m)} >= 0 on [-1, 1] for 0 <= m <= k)
/// or the monotone polynomials (P' >= 0, sign of P free).
struct ConeSpec {
  enum class Kind { AbsMonotone, MonotoneOnly };

  Kind kind = Kind::AbsMonotone;
  int k = 0;
  int n = 0;

  /// Throws DomainError unless 0 <= k <= n.
  static ConeSpec abs_monotone(int k, int n);
  /// Throws DomainError unless n >= 1.
  static ConeSpec monotone_only(int n);

  /// Derivative orders whose nonnegativity defines the class.
  int first_order() const noexcept { return kind == Kind::MonotoneOnly ? 1 : 0; }
  int last_order() const noexcept { return kind == Kind::MonotoneOnly ? 1 : k; }
  std::string str() const;
};

inline constexpr double kDefaultConeTol = 1e-10;

struct MembershipReport {
  bool member = true;
  std::optional<int> violated_order;
  std::optional<double> location;
  /// min over [-1, 1] of P^{(violated_order)}, or of the last order checked.
  double min_value = 0.0;
};

/// Certifies P^{(m)} >= -slack on [-1, 1] for every order the class
/// constrains. Each minimum is taken over the endpoints and the critical
/// points of P^{(m)}. The slack is tol * max|coeff of P^{(m)}| plus the
/// rounding-error bound of the evaluation, so tol = 0 still tolerates
/// sign noise below working precision.
MembershipReport cone_membership(const Polynomial& p, const ConeSpec& spec, double tol = kDefaultConeTol);

/// Membership-by-construction parameters of a cone element.
///
/// With d the degree of R (n - k, or n - 1 for the monotone class),
///   R = A^2 + (1 - x^2) B^2          (d even)
///   R = (1 + x) A^2 + (1 - x) B^2    (d odd)
///   R += sum_j ramp[j] (1 + x)^j,    ramp[j] >= 0
/// which reaches every polynomial nonnegative on [-1, 1] (Lukacs). Then
///   P = kernel_integral(R, k) + sum_{j<k} boundary[j] (1 + x)^j / j!,
/// boundary[j] >= 0, or P = R when k = 0. The monotone class uses k = 1 and
/// adds an unconstrained constant `shift`.
struct ConeParams {
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> ramp;
  std::vector<double> boundary;
  double shift = 0.0;

  std::size_t size() const noexcept { return a.size() + b.size() + ramp.size() + boundary.size() + 1; }
  /// Flat view for coordinate search, in the order a, b, ramp, boundary, shift.
  double& at(std::size_t i);
  /// True for coordinates that must stay >= 0.
  bool nonnegative(std::size_t i) const noexcept;
};

/// Shape of ConeParams for a class, all zero.
ConeParams zero_params(const ConeSpec& spec);
/// Random parameters as used by random_cone_member: Gaussian A and B, a
/// sparse exponential ramp, zero boundary terms (so P^{(j)}(-1) = 0 for j < k)
/// and, for the monotone class, a Gaussian shift.
ConeParams draw_params(const ConeSpec& spec, std::mt19937_64& rng);
Polynomial build_member(const ConeSpec& spec, const ConeParams& params);

/// Random member of the class, deterministic per seed.
Polynomial random_cone_member(const ConeSpec& spec, std::uint64_t seed);

/// Stream seed for (seed, index) so parallel tasks draw independent,
/// schedule-independent streams.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

}  // namespace markovnik
