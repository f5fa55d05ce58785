#include "markovnik/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <stdexcept>

#include "markovnik/constructions.hpp"
#include "markovnik/errors.hpp"
#include "markovnik/parallel.hpp"
#include "markovnik/quadrature.hpp"

namespace markovnik {

double ratio(const Polynomial& p, int l, const NormParam& p_norm, const NormParam& q_norm) {
  if (l < 0 || l > p.degree()) throw DomainError("ratio needs 0 <= l <= degree(P)");
  const double den = lp_norm(p, p_norm);
  if (!(den > 0.0)) throw DomainError("ratio denominator ||P||_p is zero");
  return lp_norm(derivative(p, l), q_norm) / den;
}

// ---------------------------------------------------------------------------
// Brute-force extremal search

namespace {

constexpr std::size_t kDrawBlock = 64;
constexpr std::size_t kAlwaysRefine = 16;
constexpr double kInitialStep = 0.25;
constexpr double kFinalStep = 1e-6;

struct Scored {
  ConeParams params;
  Polynomial poly;
  double ratio = 0.0;
};

class SearchObjective {
 public:
  SearchObjective(const ConeSpec& spec, int l, const NormParam& p_norm, const NormParam& q_norm)
      : spec_(spec), l_(l), p_(p_norm), q_(q_norm) {}

  bool shift_is_free() const noexcept { return spec_.kind == ConeSpec::Kind::MonotoneOnly && l_ == 0; }

  std::optional<Scored> operator()(ConeParams params) const {
    try {
      if (spec_.kind == ConeSpec::Kind::MonotoneOnly && l_ >= 1) {
        params.shift = 0.0;
        params.shift = best_shift(build_member(spec_, params));
      }
      Polynomial poly = build_member(spec_, params);
      if (poly.is_zero()) return std::nullopt;
      const double den = lp_norm(poly, p_);
      if (!(den > 0.0)) return std::nullopt;
      const Polynomial d = derivative(poly, l_);
      const double num = d.is_zero() ? 0.0 : lp_norm(d, q_);
      const double r = num / den;
      if (!std::isfinite(r)) return std::nullopt;
      return Scored{std::move(params), std::move(poly), r};
    } catch (const std::runtime_error&) {
      return std::nullopt;
    } catch (const DomainError&) {
      return std::nullopt;
    }
  }

  bool feasible(const Polynomial& poly) const {
    try {
      return cone_membership(poly, spec_).member;
    } catch (const std::runtime_error&) {
      return false;
    }
  }

 private:
  // Constant c minimizing ||P + c||_p for monotone P (so P(-1) <= P(1)).
  double best_shift(const Polynomial& p) const {
    const double lo = -eval(p, 1.0);
    const double hi = -eval(p, -1.0);
    if (p_.is_infinite()) return 0.5 * (lo + hi);
    auto cost = [&](double c) { return lp_norm(p + Polynomial::constant(c), p_); };
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo;
    double b = hi;
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = cost(x1);
    double f2 = cost(x2);
    for (int it = 0; it < 40; ++it) {
      if (f1 < f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - phi * (b - a);
        f1 = cost(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + phi * (b - a);
        f2 = cost(x2);
      }
    }
    return 0.5 * (a + b);
  }

  ConeSpec spec_;
  int l_;
  NormParam p_;
  NormParam q_;
};

struct RefineOutcome {
  Scored best;
  long long evaluations = 0;
};

// Coordinate pattern search with halving steps; only feasible, strictly
// improving moves are taken.
RefineOutcome refine(const SearchObjective& objective, Scored start) {
  RefineOutcome out{std::move(start), 0};
  Scored& best = out.best;
  const std::size_t dims = best.params.size();
  std::vector<std::size_t> coords;
  for (std::size_t i = 0; i + 1 < dims; ++i) coords.push_back(i);
  if (objective.shift_is_free()) coords.push_back(dims - 1);

  const long long cap = 600LL * static_cast<long long>(coords.size()) + 2000;
  double step = kInitialStep;
  while (step > kFinalStep && out.evaluations < cap) {
    double scale = 0.0;
    for (std::size_t i : coords) scale = std::max(scale, std::fabs(best.params.at(i)));
    if (scale == 0.0) scale = 1.0;
    bool improved = false;
    for (std::size_t i : coords) {
      for (double direction : {1.0, -1.0}) {
        ConeParams trial = best.params;
        double& v = trial.at(i);
        const double old = v;
        v += direction * step * scale;
        if (best.params.nonnegative(i) && v < 0.0) v = 0.0;
        if (v == old) continue;
        ++out.evaluations;
        auto scored = objective(std::move(trial));
        if (scored && scored->ratio > best.ratio * (1.0 + 1e-13) && objective.feasible(scored->poly)) {
          best = std::move(*scored);
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return out;
}

}  // namespace

OracleResult brute_force_sup(const ConeSpec& spec, int l, const NormParam& p_norm, const NormParam& q_norm,
                             int budget, std::uint64_t seed) {
  if (l < 0 || l > spec.n) throw DomainError("brute_force_sup needs 0 <= l <= n");
  if (budget < 1) throw DomainError("brute_force_sup needs budget >= 1");
  const SearchObjective objective(spec, l, p_norm, q_norm);

  OracleResult result;
  std::optional<Scored> best;
  double best_raw = 0.0;
  auto offer = [&](Scored&& s) {
    if (best && s.ratio <= best->ratio) return;
    if (!objective.feasible(s.poly)) return;
    best = std::move(s);
  };

  for (std::size_t start = 0; start < static_cast<std::size_t>(budget); start += kDrawBlock) {
    const std::size_t count = std::min(kDrawBlock, static_cast<std::size_t>(budget) - start);
    std::vector<std::optional<Scored>> raw(count);
    parallel_for(count, [&](std::size_t j) {
      std::mt19937_64 rng(derive_seed(seed, start + j));
      raw[j] = objective(draw_params(spec, rng));
    });
    result.draws += static_cast<int>(count);
    result.evaluations += static_cast<long long>(count);

    // Which draws to polish depends only on earlier draws, so a longer run
    // with the same seed repeats every decision of a shorter one.
    std::vector<std::size_t> chosen;
    for (std::size_t j = 0; j < count; ++j) {
      if (!raw[j]) continue;
      const bool record = raw[j]->ratio > best_raw * (1.0 + 1e-9);
      best_raw = std::max(best_raw, raw[j]->ratio);
      if (record || start + j < kAlwaysRefine) chosen.push_back(j);
    }
    std::vector<RefineOutcome> refined(chosen.size());
    parallel_for(chosen.size(), [&](std::size_t t) { refined[t] = refine(objective, *raw[chosen[t]]); });
    result.refinements += static_cast<int>(chosen.size());

    for (std::size_t j = 0; j < count; ++j) {
      if (raw[j]) offer(std::move(*raw[j]));
    }
    for (auto& r : refined) {
      result.evaluations += r.evaluations;
      offer(std::move(r.best));
    }
  }

  if (best) {
    result.best_ratio = best->ratio;
    result.witness = std::move(best->poly);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Growth-exponent sweeps

std::string FamilySpec::name() const {
  switch (kind) {
    case FamilyKind::Lower:
      return "lower";
    case FamilyKind::PowerRamp:
      return "powerramp";
    case FamilyKind::ChebyshevBump:
      return "chebybump";
    case FamilyKind::KrooSzabadosExact:
      return "ks-exact";
  }
  return "unknown";
}

FitResult fit_growth(std::span<const int> n, std::span<const double> ratios) {
  if (n.size() != ratios.size()) throw DomainError("fit_growth needs matching sample counts");
  if (n.size() < 3) throw DomainError("fit_growth needs at least three samples");
  const std::size_t rows = n.size();
  std::array<std::vector<double>, 3> cols;
  std::vector<double> y(rows);
  for (auto& c : cols) c.resize(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    if (n[i] < 2) throw DomainError("fit_growth needs n >= 2");
    if (!(ratios[i] > 0.0)) throw DomainError("fit_growth needs positive ratios");
    const double ln = std::log(static_cast<double>(n[i]));
    cols[0][i] = 1.0;
    cols[1][i] = ln;
    cols[2][i] = std::log(ln);
    y[i] = std::log(ratios[i]);
  }
  // Modified Gram-Schmidt QR of the 3-column design matrix.
  std::array<std::array<double, 3>, 3> r{};
  auto dot = [&](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < rows; ++i) s += a[i] * b[i];
    return s;
  };
  std::array<double, 3> norms0{};
  for (int j = 0; j < 3; ++j) norms0[static_cast<std::size_t>(j)] = std::sqrt(dot(cols[j], cols[j]));
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < j; ++i) {
      const double proj = dot(cols[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
      r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = proj;
      for (std::size_t t = 0; t < rows; ++t) cols[static_cast<std::size_t>(j)][t] -= proj * cols[static_cast<std::size_t>(i)][t];
    }
    const double nrm = std::sqrt(dot(cols[static_cast<std::size_t>(j)], cols[static_cast<std::size_t>(j)]));
    if (!(nrm > 1e-10 * norms0[static_cast<std::size_t>(j)])) throw DomainError("degenerate grid for growth fit");
    r[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] = nrm;
    for (std::size_t t = 0; t < rows; ++t) cols[static_cast<std::size_t>(j)][t] /= nrm;
  }
  std::array<double, 3> qty{};
  for (std::size_t j = 0; j < 3; ++j) qty[j] = dot(cols[j], y);
  std::array<double, 3> beta{};
  for (int j = 2; j >= 0; --j) {
    double s = qty[static_cast<std::size_t>(j)];
    for (int i = j + 1; i < 3; ++i) s -= r[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] * beta[static_cast<std::size_t>(i)];
    beta[static_cast<std::size_t>(j)] = s / r[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)];
  }
  double ss = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    const double ln = std::log(static_cast<double>(n[i]));
    const double e = y[i] - (beta[0] + beta[1] * ln + beta[2] * std::log(ln));
    ss += e * e;
  }
  return {beta[1], beta[2], std::sqrt(ss / static_cast<double>(rows))};
}

RegimeClass classify_fit(const FitResult& fit) {
  if (std::fabs(fit.n_exponent) < 0.15) {
    if (fit.log_exponent > 0.3) return {RegimeKind::LogPower, 0.0, fit.log_exponent, false};
    return {};
  }
  return {RegimeKind::PolynomialGrowth, fit.n_exponent, 0.0, false};
}

double family_ratio(const FamilySpec& family, int n, int l, const NormParam& p_norm, const NormParam& q_norm) {
  switch (family.kind) {
    case FamilyKind::Lower:
      return ratio(lower_family(n, family.k, family.m, q_norm), l, p_norm, q_norm);
    case FamilyKind::PowerRamp:
      return ratio(baseline_family(BaselineFamily::PowerRamp, n, family.k), l, p_norm, q_norm);
    case FamilyKind::ChebyshevBump:
      return ratio(baseline_family(BaselineFamily::ChebyshevBump, n, family.k), l, p_norm, q_norm);
    case FamilyKind::KrooSzabadosExact:
      if (l != 1) throw DomainError("ks-exact constants exist for l = 1 only");
      if (p_norm.is_infinite() && q_norm.is_infinite()) return kroo_szabados_sup(n, family.k);
      if (p_norm.value() == 1.0 && q_norm.value() == 1.0) return kroo_szabados_l1(n, family.k);
      throw DomainError("ks-exact constants exist for p = q = inf or p = q = 1 only");
  }
  throw DomainError("unknown family");
}

SweepResult sweep_and_fit(const FamilySpec& family, int l, const NormParam& p_norm, const NormParam& q_norm,
                          std::span<const int> grid) {
  if (grid.size() < 5) throw DomainError("sweep grid needs at least 5 points");
  const auto [lo, hi] = std::minmax_element(grid.begin(), grid.end());
  if (*lo < 2) throw DomainError("sweep grid points must be >= 2");
  if (*hi < 10 * *lo) throw DomainError("sweep grid must span at least one decade");

  SweepResult out;
  out.samples.resize(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    RatioSample& s = out.samples[i];
    s.n = grid[i];
    s.ratio = family_ratio(family, grid[i], l, p_norm, q_norm);
    s.family = family.name();
    s.l = l;
    s.p = p_norm;
    s.q = q_norm;
  });
  std::sort(out.samples.begin(), out.samples.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
  std::vector<int> ns;
  std::vector<double> rs;
  for (const auto& s : out.samples) {
    ns.push_back(s.n);
    rs.push_back(s.ratio);
  }
  out.fit = fit_growth(ns, rs);
  return out;
}

std::vector<int> parse_grid(const std::string& text) {
  const auto bad = [&] { return DomainError("invalid grid '" + text + "' (expected a:b or a:b:xS)"); };
  const auto c1 = text.find(':');
  if (c1 == std::string::npos) throw bad();
  const auto c2 = text.find(':', c1 + 1);
  int a = 0;
  int b = 0;
  try {
    std::size_t used = 0;
    a = std::stoi(text.substr(0, c1), &used);
    if (used != c1) throw bad();
    const std::string second = text.substr(c1 + 1, c2 == std::string::npos ? std::string::npos : c2 - c1 - 1);
    b = std::stoi(second, &used);
    if (used != second.size()) throw bad();
  } catch (const std::logic_error&) {
    throw bad();
  }
  if (a < 1 || b < a) throw bad();
  std::vector<int> out;
  if (c2 == std::string::npos) {
    for (int v = a; v <= b; ++v) out.push_back(v);
    return out;
  }
  const std::string step = text.substr(c2 + 1);
  if (step.size() < 2 || step[0] != 'x') throw bad();
  double factor = 0.0;
  try {
    std::size_t used = 0;
    factor = std::stod(step.substr(1), &used);
    if (used != step.size() - 1) throw bad();
  } catch (const std::logic_error&) {
    throw bad();
  }
  if (!(factor > 1.0)) throw bad();
  for (double v = a; v <= b + 1e-9; v *= factor) {
    const int iv = static_cast<int>(std::lround(v));
    if (out.empty() || iv != out.back()) out.push_back(iv);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Local Remez inequality

namespace {

constexpr std::uint64_t kCalibrationSeed = 20120306;

Polynomial chebyshev_series(std::span<const double> c) {
  Polynomial out;
  for (std::size_t j = 0; j < c.size(); ++j) out += c[j] * chebyshev_t(static_cast<int>(j));
  return out;
}

Polynomial random_chebyshev_series(int degree, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> c(static_cast<std::size_t>(degree) + 1);
  for (double& v : c) v = normal(rng);
  if (c.back() == 0.0) c.back() = 1.0;
  return chebyshev_series(c);
}

double measure_nikolskii_constant(const NormParam& q) {
  const NormParam l1 = NormParam::finite(1.0);
  std::mt19937_64 rng(kCalibrationSeed);
  std::vector<Polynomial> samples;
  for (int d : {1, 2, 3, 5, 8, 13, 20, 30, 40, 50}) {
    samples.push_back(chebyshev_t(d));
    samples.push_back(Polynomial::linear_power(0.5, 0.5, d));
    if (d >= 2) {
      const Polynomial bump = chebyshev_t(d / 2) + Polynomial::constant(1.0);
      samples.push_back(bump * bump);
    }
    samples.push_back(random_chebyshev_series(d, rng));
    samples.push_back(random_chebyshev_series(d, rng));
  }
  std::vector<double> values(samples.size());
  parallel_for(samples.size(), [&](std::size_t i) {
    const Polynomial& p = samples[i];
    const double deg = std::max(p.degree(), 1);
    values[i] = lp_norm(p, l1) / (std::pow(deg, 2.0 / q.value() - 2.0) * lp_norm(p, q));
  });
  return *std::max_element(values.begin(), values.end());
}

Polynomial remez_trial_polynomial(int n, std::size_t trial, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  switch (trial % 4) {
    case 0: {
      std::vector<double> c(static_cast<std::size_t>(n) + 1);
      for (double& v : c) v = normal(rng);
      if (c.back() == 0.0) c.back() = 1.0;
      return Polynomial(std::move(c));
    }
    case 1:
      return normal(rng) * chebyshev_t(n);
    case 2:
      return chebyshev_t(n) + 0.3 * random_chebyshev_series(std::max(n - 1, 0), rng);
    default:
      return random_chebyshev_series(n, rng);
  }
}

}  // namespace

RemezThreshold remez_threshold(const NormParam& q) {
  if (q.is_infinite()) throw DomainError("remez threshold needs a finite q");
  RemezThreshold out;
  if (q.value() >= 1.0) {
    out.value = 40.0;
    out.calibration = "fixed C*(q) = 40 for q >= 1";
    return out;
  }
  static std::mutex mutex;
  static std::map<double, double> cache;
  double c1 = 0.0;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(q.value()); it != cache.end()) c1 = it->second;
  }
  if (c1 == 0.0) {
    c1 = measure_nikolskii_constant(q);
    std::lock_guard lock(mutex);
    cache.emplace(q.value(), c1);
  }
  out.nikolskii_constant = c1;
  out.value = 2.0 * c1;
  out.calibration = "C*(q) = 2*C1(q), C1 = max ||P||_1 / (n^{2/q-2} ||P||_q) over degree <= 50 samples";
  return out;
}

RemezReport remez_check(int n, const NormParam& q, double c, int trials, std::uint64_t seed) {
  if (n < 1) throw DomainError("remez_check needs n >= 1");
  if (q.is_infinite()) throw DomainError("remez_check needs a finite q");
  if (!(c > 0.0)) throw DomainError("remez_check needs c > 0");
  if (trials < 1) throw DomainError("remez_check needs trials >= 1");

  RemezReport report;
  report.n = n;
  report.q = q;
  report.c = c;
  report.trials = trials;
  report.width = std::pow(c * n * n, -std::max(q.value(), 1.0));
  report.threshold = remez_threshold(q);

  std::vector<double> scaled(static_cast<std::size_t>(trials));
  std::vector<double> left_end(static_cast<std::size_t>(trials));
  parallel_for(scaled.size(), [&](std::size_t t) {
    std::mt19937_64 rng(derive_seed(seed, t));
    const Polynomial p = remez_trial_polynomial(n, t, rng);
    double a = -1.0;
    switch ((t / 4) % 3) {
      case 0:
        a = 1.0 - report.width;
        break;
      case 1:
        a = -1.0;
        break;
      default:
        a = std::uniform_real_distribution<double>(-1.0, 1.0 - report.width)(rng);
    }
    const double b = std::min(a + report.width, 1.0);
    scaled[t] = c * lp_norm(p, q, {a, b}) / lp_norm(p, q);
    left_end[t] = a;
  });
  const auto worst = std::max_element(scaled.begin(), scaled.end());
  report.max_scaled_ratio = *worst;
  report.worst_a = left_end[static_cast<std::size_t>(worst - scaled.begin())];
  report.pass = report.max_scaled_ratio <= report.threshold.value;
  return report;
}

// ---------------------------------------------------------------------------
// q < 1 key inequality

KeyInequalityReport key_inequality_check(const Polynomial& p, const NormParam& q) {
  if (q.is_infinite() || !(q.value() < 1.0)) throw DomainError("key inequality needs 0 < q < 1");
  if (p.is_zero()) throw DomainError("key inequality needs a nonzero polynomial");
  if (!cone_membership(p, ConeSpec::abs_monotone(std::min(1, p.degree()), std::max(p.degree(), 1))).member) {
    throw DomainError("key inequality needs P in the 1-absolutely monotone class");
  }
  if (std::fabs(eval(p, -1.0)) > 1e-9 * p.max_abs_coeff()) {
    throw DomainError("key inequality needs P(-1) = 0");
  }
  const double e = q.value();
  KeyInequalityReport out;
  const Polynomial dp = derivative(p, 1);
  out.lhs = dp.is_zero() ? 0.0 : std::pow(lp_norm(dp, q), e);

  // x = 1 - u^{1/(1-q)} turns (1-x)^{-q} dx into du/(1-q).
  const double inv = 1.0 / (1.0 - e);
  auto integrand = [&](double u) {
    const double x = 1.0 - std::pow(u, inv);
    return std::pow(std::max(eval(p, x), 0.0), e);
  };
  QuadratureOptions opt;
  opt.rel_tol = 1e-12;
  opt.initial_panels = std::max(1, p.degree());
  const QuadratureResult integral = integrate(integrand, 0.0, std::pow(2.0, 1.0 - e), opt);
  if (integral.error_estimate > 1e-8 * integral.value) {
    throw QuadratureError("key inequality rhs quadrature did not converge");
  }
  out.rhs = integral.value * inv / e;
  out.pass = out.lhs <= out.rhs * (1.0 + 1e-6);
  return out;
}

}  // namespace markovnik
