#include "markovnik/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

#include "markovnik/errors.hpp"
#include "markovnik/quadrature.hpp"

namespace markovnik {

namespace {

constexpr double kRootTol = 1e-13;

GaussRule compute_gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    rule.nodes[static_cast<std::size_t>(i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

// Breakpoints of the interval at roots and numerically-flat stretches.
std::vector<double> split_points(const Polynomial& p, Interval interval) {
  std::vector<double> pts{interval.lo, interval.hi};
  const RootIsolation iso = isolate_roots(p, interval, kRootTol);
  for (double r : iso.roots) pts.push_back(r);
  for (const Interval& u : iso.unresolved) {
    pts.push_back(u.lo);
    pts.push_back(u.hi);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::erase_if(pts, [&](double x) { return x < interval.lo || x > interval.hi; });
  return pts;
}

double sup_norm(const Polynomial& p, Interval interval) {
  double best = std::max(std::fabs(eval(p, interval.lo)), std::fabs(eval(p, interval.hi)));
  const Polynomial dp = derivative(p, 1);
  if (dp.is_zero()) return best;
  const RootIsolation iso = isolate_roots(dp, interval, kRootTol);
  for (double c : iso.roots) best = std::max(best, std::fabs(eval(p, c)));
  for (const Interval& u : iso.unresolved) {
    best = std::max({best, std::fabs(eval(p, u.lo)), std::fabs(eval(p, u.hi))});
  }
  return best;
}

}  // namespace

const GaussRule& gauss_legendre(int points) {
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(points);
  if (it == cache.end()) it = cache.emplace(points, compute_gauss_legendre(points)).first;
  return it->second;
}

NormParam NormParam::infinity() noexcept { return NormParam{}; }

NormParam NormParam::finite(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("norm exponent must lie in (0, inf)");
  NormParam out;
  out.infinite_ = false;
  out.value_ = p;
  return out;
}

NormParam NormParam::exact(Rational p) {
  if (p <= Rational(0)) throw DomainError("norm exponent must be positive");
  NormParam out = finite(p.to_double());
  out.exact_ = p;
  return out;
}

NormParam NormParam::parse(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return infinity();
  if (auto r = Rational::parse(text)) return exact(*r);
  std::string owned(text);
  char* end = nullptr;
  const double v = std::strtod(owned.c_str(), &end);
  if (end == owned.c_str() || *end != '\0') {
    throw DomainError("cannot parse norm exponent '" + owned + "'");
  }
  return finite(v);
}

double NormParam::value() const noexcept {
  return infinite_ ? std::numeric_limits<double>::infinity() : value_;
}

std::optional<Rational> NormParam::reciprocal() const {
  if (infinite_) return Rational(0);
  if (!exact_) return std::nullopt;
  return Rational(1) / *exact_;
}

std::string NormParam::str() const {
  if (infinite_) return "inf";
  if (exact_) return exact_->str();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value_);
  return buf;
}

NormResult lp_norm_detailed(const Polynomial& p, const NormParam& np, Interval interval) {
  interval.require_within_unit();
  if (p.is_zero()) return {};
  if (np.is_infinite()) return {sup_norm(p, interval), 0.0};

  // Normalize so |P|^p neither overflows nor underflows for large p.
  const double scale = p.max_abs_coeff();
  const Polynomial unit = p * (1.0 / scale);
  const double e = np.value();
  const std::vector<double> pts = split_points(unit, interval);

  auto integrand = [&](double x) {
    const double v = std::fabs(eval(unit, x));
    if (e == 1.0) return v;
    if (e == 2.0) return v * v;
    return std::pow(v, e);
  };
  QuadratureOptions opt;
  opt.rel_tol = e >= 1.0 ? 1e-13 : 1e-11 * e;
  const int degree = std::max(unit.degree(), 1);
  opt.initial_panels = std::max(
      1, static_cast<int>(std::ceil(degree * std::max(e, 1.0) * interval.length() / (2.0 * kPanelPoints))));
  const QuadratureResult q = integrate(integrand, std::span<const double>(pts), opt);
  if (q.value <= 0.0) return {0.0, 0.0};

  const double rel = q.error_estimate / (e * q.value);
  const double limit = e >= 1.0 ? 1e-10 : 1e-8;
  if (!(rel <= limit)) {
    throw QuadratureError("L_" + np.str() + " norm quadrature stalled at relative error estimate " +
                          std::to_string(rel));
  }
  return {scale * std::pow(q.value, 1.0 / e), rel};
}

double lp_norm(const Polynomial& p, const NormParam& np, Interval interval) {
  return lp_norm_detailed(p, np, interval).value;
}

double weight_norm(const NormParam& r, double delta) {
  if (r.is_infinite()) throw DomainError("weight_norm needs a finite exponent");
  if (!(delta > 0.0 && delta < 2.0)) throw DomainError("weight_norm needs 0 < delta < 2");
  const double e = r.value();
  if (e == 1.0) return std::log(2.0 / delta);
  const double inner = (std::pow(delta, 1.0 - e) - std::pow(2.0, 1.0 - e)) / (e - 1.0);
  return std::pow(inner, 1.0 / e);
}

}  // namespace markovnik
