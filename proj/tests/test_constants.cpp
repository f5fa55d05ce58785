#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "markovnik/constants.hpp"
#include "markovnik/errors.hpp"

using namespace markovnik;

namespace {

// P_m^{(a,b)}(x) by the standard three-term recurrence (not the symmetric
// matrix used by the library).
double jacobi_value(double a, double b, int m, double x) {
  double p0 = 1.0;
  if (m == 0) return p0;
  double p1 = 0.5 * (a - b + (a + b + 2.0) * x);
  for (int j = 2; j <= m; ++j) {
    const double s = 2.0 * j + a + b;
    const double c1 = 2.0 * j * (j + a + b) * (s - 2.0);
    const double c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
    const double c3 = 2.0 * (j + a - 1.0) * (j + b - 1.0) * s;
    const double p2 = (c2 * p1 - c3 * p0) / c1;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

}  // namespace

TEST(BernsteinQazi, Examples) {
  EXPECT_EQ(bernstein_qazi(3), Rational(4));
  EXPECT_EQ(bernstein_qazi(2), Rational(2));
  EXPECT_EQ(bernstein_qazi(5), Rational(9));
  EXPECT_EQ(bernstein_qazi(1), Rational(1));
  EXPECT_THROW(bernstein_qazi(0), DomainError);
}

TEST(JacobiZero, Examples) {
  for (double a : {0.0, 0.5, 2.0}) {
    for (double b : {0.0, 1.0, -0.5}) {
      EXPECT_NEAR(jacobi_largest_zero(a, b, 1), (b - a) / (a + b + 2.0), 1e-13);
    }
  }
  EXPECT_NEAR(jacobi_largest_zero(0.0, 0.0, 2), 1.0 / std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(jacobi_largest_zero(0.0, 0.0, 3), std::sqrt(0.6), 1e-12);
  EXPECT_THROW(jacobi_largest_zero(-1.0, 0.0, 2), DomainError);
  EXPECT_THROW(jacobi_largest_zero(0.0, -1.5, 2), DomainError);
  EXPECT_THROW(jacobi_largest_zero(0.0, 0.0, 0), DomainError);
}

TEST(JacobiZero, IsTheLargestRootOfTheRecurrencePolynomial) {
  for (double a : {0.0, 1.0, 2.0, 3.5}) {
    for (double b : {0.0, 1.0}) {
      for (int m : {2, 5, 11, 40}) {
        const double x = jacobi_largest_zero(a, b, m);
        const double h = 1e-9;
        const double left = jacobi_value(a, b, m, x - h);
        const double right = jacobi_value(a, b, m, x + h);
        EXPECT_LT(left * right, 0.0) << a << " " << b << " " << m;
        // No further sign change between the zero and 1.
        double prev = jacobi_value(a, b, m, x + 1e-7);
        for (int i = 1; i <= 2000; ++i) {
          const double t = x + 1e-7 + (1.0 - x - 1e-7) * i / 2000.0;
          const double v = jacobi_value(a, b, m, t);
          EXPECT_GT(v * prev, 0.0) << a << " " << b << " " << m << " " << t;
          prev = v;
        }
      }
    }
  }
}

TEST(JacobiZero, InsideIntervalAndIncreasingInDegree) {
  for (double a : {0.0, 1.0, 2.0}) {
    for (double b : {0.0, 1.0}) {
      double prev = -1.0;
      for (int m = 1; m <= 60; ++m) {
        const double x = jacobi_largest_zero(a, b, m);
        EXPECT_GT(x, -1.0);
        EXPECT_LT(x, 1.0);
        EXPECT_GT(x, prev);
        prev = x;
      }
    }
  }
}

TEST(KrooSzabados, Examples) {
  EXPECT_NEAR(kroo_szabados_sup(2, 2), 1.0, 1e-12);
  EXPECT_NEAR(kroo_szabados_sup(3, 2), 1.5, 1e-12);
  EXPECT_NEAR(kroo_szabados_sup(4, 4), 2.0, 1e-12);
  EXPECT_NEAR(kroo_szabados_l1(1, 1), 1.0, 1e-12);
  EXPECT_NEAR(kroo_szabados_l1(2, 1), 1.5, 1e-12);
  EXPECT_NEAR(kroo_szabados_l1(3, 3), 2.0, 1e-12);
  EXPECT_THROW(kroo_szabados_sup(3, 1), DomainError);
  EXPECT_THROW(kroo_szabados_sup(3, 4), DomainError);
  EXPECT_THROW(kroo_szabados_l1(3, 0), DomainError);
  EXPECT_THROW(kroo_szabados_l1(3, 4), DomainError);
}

TEST(KrooSzabados, DualityIdentity) {
  for (int n = 1; n <= 50; ++n) {
    for (int k = 1; k <= n; ++k) {
      EXPECT_EQ(kroo_szabados_l1(n, k), kroo_szabados_sup(n + 1, k + 1)) << n << " " << k;
    }
  }
}

TEST(KrooSzabados, NondecreasingInDegree) {
  for (int k : {2, 3, 4}) {
    double prev = 0.0;
    for (int n = k; n <= 200; ++n) {
      const double v = kroo_szabados_sup(n, k);
      EXPECT_GE(v, prev * (1.0 - 1e-12)) << n << " " << k;
      prev = v;
    }
  }
}

TEST(Regime, ConstrainedExamples) {
  const auto r1 = regime(2, NormParam::parse("2"), NormParam::parse("2"), RegimeTable::Constrained);
  EXPECT_EQ(r1.kind, RegimeKind::PolynomialGrowth);
  EXPECT_DOUBLE_EQ(r1.n_exponent, 4.0);

  const auto r2 = regime(1, NormParam::parse("1"), NormParam::parse("1/2"), RegimeTable::Constrained);
  EXPECT_EQ(r2.kind, RegimeKind::LogPower);
  EXPECT_DOUBLE_EQ(r2.log_exponent, 1.0);
  EXPECT_EQ(r2.str(), "LogPower(1)");

  const auto r3 = regime(1, NormParam::parse("1"), NormParam::parse("1/3"), RegimeTable::Constrained);
  EXPECT_EQ(r3.kind, RegimeKind::Bounded);

  const auto r4 = regime(1, NormParam::infinity(), NormParam::infinity(), RegimeTable::ConstrainedSupInput);
  EXPECT_EQ(r4.kind, RegimeKind::PolynomialGrowth);
  EXPECT_DOUBLE_EQ(r4.n_exponent, 2.0);
  EXPECT_TRUE(r4.upper_bound_only);
}

TEST(Regime, BoundaryDecidedExactly) {
  // 1/q - 1/p = 10/3 - 1/3 = 3 exactly, although 0.3 and 3.0 are not exact in
  // binary floating point.
  const auto r = regime(3, NormParam::parse("3"), NormParam::parse("3/10"), RegimeTable::Constrained);
  EXPECT_EQ(r.kind, RegimeKind::LogPower);
  EXPECT_DOUBLE_EQ(r.log_exponent, 3.0);
}

TEST(Regime, SupInputRows) {
  const NormParam inf = NormParam::infinity();
  const auto above = regime(1, inf, NormParam::parse("2"), RegimeTable::ConstrainedSupInput);
  EXPECT_EQ(above.kind, RegimeKind::PolynomialGrowth);
  EXPECT_DOUBLE_EQ(above.n_exponent, 1.0);
  const auto equal = regime(2, inf, NormParam::parse("2"), RegimeTable::ConstrainedSupInput);
  EXPECT_EQ(equal.kind, RegimeKind::LogPower);
  EXPECT_DOUBLE_EQ(equal.log_exponent, 1.0);
  const auto below = regime(2, inf, NormParam::parse("1"), RegimeTable::ConstrainedSupInput);
  EXPECT_EQ(below.kind, RegimeKind::Bounded);
  EXPECT_TRUE(below.upper_bound_only);
}

TEST(Regime, TablePreconditions) {
  EXPECT_THROW(regime(1, NormParam::infinity(), NormParam::parse("1"), RegimeTable::Constrained), DomainError);
  EXPECT_THROW(regime(1, NormParam::parse("1"), NormParam::parse("1"), RegimeTable::ConstrainedSupInput), DomainError);
  EXPECT_THROW(regime(-1, NormParam::parse("1"), NormParam::parse("1"), RegimeTable::Classical), DomainError);
}

TEST(Regime, ClassicalFirstRowExponentIdentity) {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> num(1, 9);
  std::uniform_int_distribution<int> den(1, 6);
  int checked = 0;
  while (checked < 20) {
    const Rational p(num(rng), den(rng));
    const Rational q(num(rng), den(rng));
    const Rational twice_gap = Rational(2) / q - Rational(2) / p;
    const int l = static_cast<int>(std::floor(std::max(0.0, twice_gap.to_double()))) + 1;
    const auto r = regime(l, NormParam::exact(p), NormParam::exact(q), RegimeTable::Classical);
    ASSERT_EQ(r.kind, RegimeKind::PolynomialGrowth);
    EXPECT_NEAR(r.n_exponent, 2.0 * l + 2.0 / p.to_double() - 2.0 / q.to_double(), 1e-12);
    ++checked;
  }
}

TEST(Regime, ClassicalMiddleRowCarriesBothExponents) {
  // l = 2/q - 2/p = 4 - 2 = 2 with q = 1/2, p = 1.
  const auto r = regime(2, NormParam::parse("1"), NormParam::parse("1/2"), RegimeTable::Classical);
  EXPECT_EQ(r.kind, RegimeKind::LogPower);
  EXPECT_DOUBLE_EQ(r.n_exponent, 2.0);
  EXPECT_DOUBLE_EQ(r.log_exponent, 1.0);
}
