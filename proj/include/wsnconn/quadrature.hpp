#pragma once

// Globally adaptive Gauss-Kronrod (7/15) integration in one dimension and
// its iterated extension to axis-aligned rectangles.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

namespace wsnconn {

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

struct QuadOptions {
  double abs_tol = 1e-9;
  std::size_t max_intervals = 4000;
  // Equal panels to start from. A single 15-point panel can miss a feature
  // narrower than its node spacing and still report zero error.
  std::size_t initial_panels = 4;
};

namespace detail {

// Kronrod abscissae on [0,1]; odd indices are the Gauss-Legendre 7-point nodes.
inline constexpr std::array<double, 8> kKronrodNodes{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrodWeights{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr std::array<double, 4> kGaussWeights{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;

  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F>
Panel gauss_kronrod_15(const F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[j] * pair;
    if (j % 2 == 1) {
      gauss += kGaussWeights[j / 2] * pair;
    }
  }
  kronrod *= half;
  gauss *= half;
  return Panel{a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace detail

/// Integrate f over [a, b], bisecting the worst panel until the summed error
/// estimate drops below abs_tol or the panel budget runs out.
template <class F>
QuadResult integrate(const F& f, double a, double b, QuadOptions options = {}) {
  QuadResult result;
  if (!(b > a)) {
    result.converged = true;
    return result;
  }
  std::priority_queue<detail::Panel> panels;
  double total = 0.0;
  double error = 0.0;
  const std::size_t initial = std::max<std::size_t>(1, options.initial_panels);
  for (std::size_t i = 0; i < initial; ++i) {
    const double lo = i == 0 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(initial);
    const double hi = i + 1 == initial ? b : a + (b - a) * static_cast<double>(i + 1) / static_cast<double>(initial);
    panels.push(detail::gauss_kronrod_15(f, lo, hi));
    total += panels.top().value;
    error += panels.top().error;
  }
  result.evaluations = 15 * initial;

  while (error > options.abs_tol && panels.size() < options.max_intervals) {
    const detail::Panel worst = panels.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      break;  // no more floating-point room
    }
    panels.pop();
    const detail::Panel left = detail::gauss_kronrod_15(f, worst.a, mid);
    const detail::Panel right = detail::gauss_kronrod_15(f, mid, worst.b);
    result.evaluations += 30;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }

  // Re-sum to shed the drift of the running updates.
  total = 0.0;
  error = 0.0;
  while (!panels.empty()) {
    total += panels.top().value;
    error += panels.top().error;
    panels.pop();
  }
  result.value = total;
  result.abs_error = error;
  result.converged = error <= options.abs_tol;
  return result;
}

/// Iterated integral of f(x, y) over [x0, x1] x [y0, y1]. The inner tolerance
/// is scaled so that its accumulated contribution stays within abs_tol / 2.
template <class F>
QuadResult integrate_rectangle(const F& f, double x0, double x1, double y0, double y1,
                               QuadOptions options = {}) {
  QuadResult result;
  if (!(x1 > x0) || !(y1 > y0)) {
    result.converged = true;
    return result;
  }
  QuadOptions inner_options = options;
  inner_options.abs_tol = 0.5 * options.abs_tol / (x1 - x0);
  double worst_inner = 0.0;
  bool inner_converged = true;
  std::size_t inner_evaluations = 0;

  const auto slice = [&](double x) {
    const QuadResult inner = integrate([&](double y) { return f(x, y); }, y0, y1, inner_options);
    worst_inner = std::max(worst_inner, inner.abs_error);
    inner_converged = inner_converged && inner.converged;
    inner_evaluations += inner.evaluations;
    return inner.value;
  };
  QuadOptions outer_options = options;
  outer_options.abs_tol = 0.5 * options.abs_tol;
  const QuadResult outer = integrate(slice, x0, x1, outer_options);

  result.value = outer.value;
  result.abs_error = outer.abs_error + worst_inner * (x1 - x0);
  result.evaluations = inner_evaluations;
  result.converged = outer.converged && inner_converged;
  return result;
}

}  // namespace wsnconn
