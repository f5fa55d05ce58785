#pragma once

#include <string>

#include "markovnik/norms.hpp"
#include "markovnik/rational.hpp"

namespace markovnik {

/// sup over monotone P of degree n of ||P'||_inf / ||P||_inf:
/// (n+1)^2/4 for odd n, n(n+2)/4 for even n.
Rational bernstein_qazi(int n);

/// Largest zero of the degree-m Jacobi polynomial for the weight
/// (1-x)^alpha (1+x)^beta: the top eigenvalue of the symmetric tridiagonal
/// Jacobi matrix, found by Sturm-count bisection.
double jacobi_largest_zero(double alpha, double beta, int m);

/// Exact sup-norm Markov constant of the k-absolutely monotone class of
/// degree n, 2 <= k <= n: (k-1) / (1 - x), x the largest zero for
/// (alpha, beta) = (k-2, (1-(-1)^{n-k})/2) and m = floor((n-k)/2) + 1.
double kroo_szabados_sup(int n, int k);

/// L_1 counterpart, 1 <= k <= n, via kroo_szabados_sup(n+1, k+1).
double kroo_szabados_l1(int n, int k);

enum class RegimeKind { PolynomialGrowth, LogPower, Bounded };

/// Order of growth n^{n_exponent} (log n)^{log_exponent}.
///
/// The constrained tables populate a single exponent. The classical middle row
/// n^l (log n)^{1/q-1/p} is reported as LogPower with both exponents set.
struct RegimeClass {
  RegimeKind kind = RegimeKind::Bounded;
  double n_exponent = 0.0;
  double log_exponent = 0.0;
  /// The p = inf constrained table only bounds the order from above.
  bool upper_bound_only = false;

  std::string str() const;
};

enum class RegimeTable { Classical, Constrained, ConstrainedSupInput };

/// Order of the extremal ratio ||P^{(l)}||_q / ||P||_p as n grows.
///
/// Boundary cases (e.g. 1/q - 1/p == l) are decided in exact rational
/// arithmetic when both exponents carry exact values. Throws DomainError when
/// the table's precondition on p fails (Constrained needs p < inf,
/// ConstrainedSupInput needs p == inf) or l < 0.
RegimeClass regime(int l, const NormParam& p, const NormParam& q, RegimeTable table);

}  // namespace markovnik
