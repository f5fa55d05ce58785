#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "markovnik/cone.hpp"
#include "markovnik/constants.hpp"
#include "markovnik/norms.hpp"
#include "markovnik/polynomial.hpp"

namespace markovnik {

/// ||P^{(l)}||_q / ||P||_p on [-1, 1]. Throws DomainError for a zero
/// denominator or l > degree(P).
double ratio(const Polynomial& p, int l, const NormParam& p_norm, const NormParam& q_norm);

// ---------------------------------------------------------------------------
// Brute-force extremal search

struct OracleResult {
  /// Ratio of the witness: a certified lower bound on the class supremum.
  double best_ratio = 0.0;
  Polynomial witness;
  int draws = 0;
  int refinements = 0;
  long long evaluations = 0;
};

/// Multi-start search for sup ||P^{(l)}||_q / ||P||_p over the class.
///
/// `budget` random draws (ConeParams from draw_params, seeded per draw index)
/// are scored; the first few draws and every draw setting a new raw record
/// are polished by coordinate pattern search over the parameters, accepting only feasible
/// improvements. For the monotone class the free constant is set to the shift
/// minimizing ||P||_p. Doubling the budget with the same seed never lowers
/// the result: the first `budget` draws and their treatment are identical.
OracleResult brute_force_sup(const ConeSpec& spec, int l, const NormParam& p_norm, const NormParam& q_norm,
                             int budget, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Growth-exponent sweeps

enum class FamilyKind { Lower, PowerRamp, ChebyshevBump, KrooSzabadosExact };

struct FamilySpec {
  FamilyKind kind = FamilyKind::Lower;
  int k = 1;
  int m = 1;

  std::string name() const;
};

struct RatioSample {
  int n = 0;
  double ratio = 0.0;
  std::string family;
  int l = 1;
  NormParam p;
  NormParam q;
};

/// Least-squares fit of log(ratio) = c + a log n + b log log n.
struct FitResult {
  double n_exponent = 0.0;
  double log_exponent = 0.0;
  /// RMS of the log-residuals.
  double residual = 0.0;
};

FitResult fit_growth(std::span<const int> n, std::span<const double> ratios);

/// LogPower when |n_exponent| < 0.15 and log_exponent > 0.3, Bounded when
/// |n_exponent| < 0.15 otherwise, PolynomialGrowth(n_exponent) beyond.
RegimeClass classify_fit(const FitResult& fit);

/// Ratio of one family member at grid point n.
double family_ratio(const FamilySpec& family, int n, int l, const NormParam& p_norm, const NormParam& q_norm);

struct SweepResult {
  std::vector<RatioSample> samples;
  FitResult fit;
};

/// Samples the family over `grid` (>= 5 points, max/min >= 10, all >= 2) and
/// fits the growth exponents.
SweepResult sweep_and_fit(const FamilySpec& family, int l, const NormParam& p_norm, const NormParam& q_norm,
                          std::span<const int> grid);

/// "a:b" (step 1) or "a:b:xS" (geometric factor S).
std::vector<int> parse_grid(const std::string& text);

// ---------------------------------------------------------------------------
// Local Remez inequality

struct RemezThreshold {
  double value = 0.0;
  /// Empirical ||P||_1 <= C1 n^{2/q-2} ||P||_q constant, q < 1 only.
  double nikolskii_constant = 0.0;
  std::string calibration;
};

/// C*(q): 40 for q >= 1; 2*C1(q) for q < 1 with C1(q) measured on a fixed,
/// seed-independent sample set of degree <= 50.
RemezThreshold remez_threshold(const NormParam& q);

struct RemezReport {
  int n = 0;
  NormParam q;
  double c = 0.0;
  int trials = 0;
  double width = 0.0;
  double max_scaled_ratio = 0.0;
  double worst_a = 0.0;
  RemezThreshold threshold;
  bool pass = false;
};

/// Max of c * ||P||_{L_q[a,b]} / ||P||_{L_q[-1,1]} over `trials` degree-n
/// polynomials and subintervals of width (c n^2)^{-max(q,1)}.
RemezReport remez_check(int n, const NormParam& q, double c, int trials, std::uint64_t seed);

// ---------------------------------------------------------------------------
// q < 1 key inequality

struct KeyInequalityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

/// lhs = integral (P')^q, rhs = (1/q) integral P^q (1-x)^{-q} over [-1, 1].
/// The rhs weight singularity is removed by u = (1-x)^{1-q}. Requires P in
/// the 1-absolutely monotone class with P(-1) = 0 and 0 < q < 1.
KeyInequalityReport key_inequality_check(const Polynomial& p, const NormParam& q);

}  // namespace markovnik
