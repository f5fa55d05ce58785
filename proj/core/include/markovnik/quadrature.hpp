#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <queue>
#include <span>
#include <vector>

namespace markovnik {

/// Nodes and weights of the fixed-order Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// The M-point rule, computed once by Newton iteration on the Legendre
/// recurrence and cached.
const GaussRule& gauss_legendre(int points);

inline constexpr int kPanelPoints = 20;

struct QuadratureOptions {
  double rel_tol = 1e-12;
  double abs_tol = 0.0;
  int initial_panels = 1;
  int max_panels = 50000;
};

struct QuadratureResult {
  double value = 0.0;
  /// Sum over panels of |coarse - refined|: the panel rule against the same
  /// rule on both halves. Conservative for the refined value returned.
  double error_estimate = 0.0;
  int panels = 0;
};

namespace detail {

template <class F>
double apply_rule(const GaussRule& rule, F& f, double a, double b) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return s * half;
}

struct Panel {
  double a;
  double b;
  double left;   // refined value on [a, mid]
  double right;  // refined value on [mid, b]
  double error;

  double value() const { return left + right; }
  friend bool operator<(const Panel& x, const Panel& y) { return x.error < y.error; }
};

}  // namespace detail

/// Globally adaptive composite Gauss-Legendre quadrature over the pieces
/// delimited by `breakpoints` (sorted, at least two).
///
/// Each panel is integrated once whole and once as two halves; the halves are
/// kept and the difference is the panel's error estimate. The worst panel is
/// bisected until the summed estimate meets max(abs_tol, rel_tol*|I|) or the
/// panel budget runs out. Endpoint singularities of integrable power type are
/// handled by the resulting geometric grading. `initial_panels` is spread over
/// the pieces in proportion to their length, at least one each.
template <class F>
QuadratureResult integrate(F&& f, std::span<const double> breakpoints, const QuadratureOptions& opt = {}) {
  const GaussRule& rule = gauss_legendre(kPanelPoints);
  QuadratureResult out;
  if (breakpoints.size() < 2 || !(breakpoints.back() > breakpoints.front())) return out;
  const double span_length = breakpoints.back() - breakpoints.front();

  auto make = [&](double lo, double hi, double coarse) {
    const double mid = 0.5 * (lo + hi);
    const double l = detail::apply_rule(rule, f, lo, mid);
    const double r = detail::apply_rule(rule, f, mid, hi);
    return detail::Panel{lo, hi, l, r, std::fabs(coarse - (l + r))};
  };

  std::priority_queue<detail::Panel> heap;
  double total = 0.0;
  double total_err = 0.0;
  int panels = 0;
  for (std::size_t piece = 0; piece + 1 < breakpoints.size(); ++piece) {
    const double a = breakpoints[piece];
    const double b = breakpoints[piece + 1];
    if (!(b > a)) continue;
    const int n0 = std::max(1, static_cast<int>(std::ceil(opt.initial_panels * (b - a) / span_length)));
    for (int i = 0; i < n0; ++i) {
      const double lo = a + (b - a) * i / n0;
      const double hi = (i + 1 == n0) ? b : a + (b - a) * (i + 1) / n0;
      auto p = make(lo, hi, detail::apply_rule(rule, f, lo, hi));
      total += p.value();
      total_err += p.error;
      heap.push(p);
      ++panels;
    }
  }

  double frozen_value = 0.0;
  double frozen_error = 0.0;
  while (!heap.empty() && total_err > std::max(opt.abs_tol, opt.rel_tol * std::fabs(total)) &&
         panels < opt.max_panels) {
    detail::Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const double width = worst.b - worst.a;
    const double scale = std::max({std::fabs(worst.a), std::fabs(worst.b), 1.0});
    if (width < 64.0 * std::numeric_limits<double>::epsilon() * scale) {
      // Cannot split further in double precision.
      frozen_value += worst.value();
      frozen_error += worst.error;
      continue;
    }
    auto left = make(worst.a, mid, worst.left);
    auto right = make(mid, worst.b, worst.right);
    total += left.value() + right.value() - worst.value();
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++panels;
  }

  // Re-sum from scratch so the running updates leave no drift.
  double value = frozen_value;
  double err = frozen_error;
  std::vector<double> parts;
  while (!heap.empty()) {
    parts.push_back(heap.top().value());
    err += heap.top().error;
    heap.pop();
  }
  std::sort(parts.begin(), parts.end(), [](double x, double y) { return std::fabs(x) < std::fabs(y); });
  for (double v : parts) value += v;
  out.value = value;
  out.error_estimate = err;
  out.panels = panels;
  return out;
}

template <class F>
QuadratureResult integrate(F&& f, double a, double b, const QuadratureOptions& opt = {}) {
  const double ends[2] = {a, b};
  return integrate(std::forward<F>(f), std::span<const double>(ends), opt);
}

}  // namespace markovnik
