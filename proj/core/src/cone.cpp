#include "markovnik/cone.hpp"

#include <algorithm>
#include <cmath>

#include "markovnik/errors.hpp"

namespace markovnik {

namespace {

int r_degree(const ConeSpec& spec) {
  return spec.kind == ConeSpec::Kind::MonotoneOnly ? spec.n - 1 : spec.n - spec.k;
}

int integration_order(const ConeSpec& spec) {
  return spec.kind == ConeSpec::Kind::MonotoneOnly ? 1 : spec.k;
}

struct Minimum {
  double value;
  double location;
  double slack;
};

Minimum minimum_on_unit(const Polynomial& d, double tol) {
  const double coeff_scale = tol * d.max_abs_coeff();
  auto probe = [&](double x) {
    const Evaluation e = eval_with_bound(d, x);
    return Minimum{e.value, x, coeff_scale + e.error_bound};
  };
  Minimum best = probe(-1.0);
  auto consider = [&](double x) {
    const Minimum m = probe(x);
    // Compare by how far each point sits below its own slack.
    if (m.value + m.slack < best.value + best.slack) best = m;
  };
  consider(1.0);
  const Polynomial dd = derivative(d, 1);
  if (!dd.is_zero()) {
    const RootIsolation iso = isolate_roots(dd, kUnitInterval, 1e-14);
    for (double c : iso.roots) consider(c);
    for (const Interval& u : iso.unresolved) {
      consider(u.lo);
      consider(u.hi);
    }
  }
  return best;
}

}  // namespace

ConeSpec ConeSpec::abs_monotone(int k, int n) {
  if (k < 0 || k > n) throw DomainError("AbsMonotone class needs 0 <= k <= n");
  return {Kind::AbsMonotone, k, n};
}

ConeSpec ConeSpec::monotone_only(int n) {
  if (n < 1) throw DomainError("MonotoneOnly class needs n >= 1");
  return {Kind::MonotoneOnly, 1, n};
}

std::string ConeSpec::str() const {
  if (kind == Kind::MonotoneOnly) return "MonotoneOnly(n=" + std::to_string(n) + ")";
  return "AbsMonotone(k=" + std::to_string(k) + ",n=" + std::to_string(n) + ")";
}

MembershipReport cone_membership(const Polynomial& p, const ConeSpec& spec, double tol) {
  if (p.degree() > spec.n) throw DomainError("polynomial degree exceeds the class degree bound");
  if (!(tol >= 0.0)) throw DomainError("membership tolerance must be non-negative");
  MembershipReport report;
  for (int m = spec.first_order(); m <= spec.last_order(); ++m) {
    const Polynomial d = derivative(p, m);
    if (d.is_zero()) {
      report.min_value = 0.0;
      continue;
    }
    const Minimum lowest = minimum_on_unit(d, tol);
    report.min_value = lowest.value;
    if (lowest.value < -lowest.slack) {
      report.member = false;
      report.violated_order = m;
      report.location = lowest.location;
      return report;
    }
  }
  return report;
}

double& ConeParams::at(std::size_t i) {
  if (i < a.size()) return a[i];
  i -= a.size();
  if (i < b.size()) return b[i];
  i -= b.size();
  if (i < ramp.size()) return ramp[i];
  i -= ramp.size();
  if (i < boundary.size()) return boundary[i];
  return shift;
}

bool ConeParams::nonnegative(std::size_t i) const noexcept {
  const std::size_t free_end = a.size() + b.size();
  return i >= free_end && i < free_end + ramp.size() + boundary.size();
}

ConeParams zero_params(const ConeSpec& spec) {
  const int d = r_degree(spec);
  ConeParams out;
  const int s = d / 2;
  out.a.assign(static_cast<std::size_t>(s) + 1, 0.0);
  out.b.assign(static_cast<std::size_t>(d % 2 == 0 ? s : s + 1), 0.0);
  out.ramp.assign(static_cast<std::size_t>(d) + 1, 0.0);
  if (spec.kind == ConeSpec::Kind::AbsMonotone) out.boundary.assign(static_cast<std::size_t>(spec.k), 0.0);
  return out;
}

ConeParams draw_params(const ConeSpec& spec, std::mt19937_64& rng) {
  ConeParams out = zero_params(spec);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::exponential_distribution<double> expo(1.0);
  std::bernoulli_distribution coin(0.5);
  for (double& v : out.a) v = normal(rng);
  for (double& v : out.b) v = normal(rng);
  for (double& v : out.ramp) v = coin(rng) ? expo(rng) : 0.0;
  if (spec.kind == ConeSpec::Kind::MonotoneOnly) {
    const double top = eval(build_member(spec, out), 1.0);
    out.shift = normal(rng) * 0.5 * top;
  }
  return out;
}

Polynomial build_member(const ConeSpec& spec, const ConeParams& params) {
  const int d = r_degree(spec);
  const Polynomial a(params.a);
  const Polynomial b(params.b);
  Polynomial r;
  if (d % 2 == 0) {
    r = a * a + Polynomial({1.0, 0.0, -1.0}) * (b * b);
  } else {
    r = Polynomial({1.0, 1.0}) * (a * a) + Polynomial({1.0, -1.0}) * (b * b);
  }
  for (std::size_t j = 0; j < params.ramp.size(); ++j) {
    if (params.ramp[j] != 0.0) r += params.ramp[j] * Polynomial::linear_power(1.0, 1.0, static_cast<int>(j));
  }
  const int k = integration_order(spec);
  Polynomial p = k >= 1 ? kernel_integral(r, k) : r;
  double factorial = 1.0;
  for (std::size_t j = 0; j < params.boundary.size(); ++j) {
    if (j > 0) factorial *= static_cast<double>(j);
    if (params.boundary[j] != 0.0) {
      p += (params.boundary[j] / factorial) * Polynomial::linear_power(1.0, 1.0, static_cast<int>(j));
    }
  }
  if (params.shift != 0.0) p += Polynomial::constant(params.shift);
  return p;
}

Polynomial random_cone_member(const ConeSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(derive_seed(seed, 0));
  return build_member(spec, draw_params(spec, rng));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  // splitmix64 finalizer over the combined key.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace markovnik
