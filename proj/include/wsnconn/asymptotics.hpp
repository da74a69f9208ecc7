#pragma once

// Closed-form analytic quantities for the secure sensor network model:
// edge probabilities, critical transmission ranges with their regime branch,
// the alpha/delta deviation terms, the phase-transition limit of the square's
// critical range, finite-n readings of the scaling hypotheses, coupling
// parameters, and isolated-node probabilities.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wsnconn/combinatorics.hpp"
#include "wsnconn/errors.hpp"
#include "wsnconn/geometry.hpp"
#include "wsnconn/graph_models.hpp"
#include "wsnconn/quadrature.hpp"

namespace wsnconn {

// Which of the two square-region scalings applies at this n.
enum class RegimeBranch { Dense, Sparse };

inline std::string_view to_string(RegimeBranch branch) {
  return branch == RegimeBranch::Dense ? "Dense" : "Sparse";
}

/// Dense iff density * n^(1/3) * ln n >= 1. Applied to K^2/P for alpha and to
/// p_s for delta.
inline RegimeBranch regime_branch(std::uint64_t n, double density) {
  const double nd = static_cast<double>(n);
  return density * std::cbrt(nd) * std::log(nd) >= 1.0 ? RegimeBranch::Dense : RegimeBranch::Sparse;
}

struct ConditionConstants {
  double c1 = 1.0;
  double c2 = 1.0;
  double c3 = 0.5;
  double c4 = 1.0;
  double mu = 1.0;  // stand-in for the omega(1) sequence at this n
  double nu = 1.0;  // stand-in for the o(1) sequence at this n
  double c0 = 0.25;
  double eps1 = 0.5;
  double eps2 = 0.3;

  void validate() const {
    detail::require(c1 > 0.0 && c2 > 0.0 && c4 > 0.0, "ConditionConstants", "c1, c2, c4 must be positive");
    detail::require(c3 > 0.0 && c3 < 1.0, "ConditionConstants", "c3 must lie in (0, 1)");
    detail::require(mu > 0.0 && nu > 0.0, "ConditionConstants", "mu and nu must be positive");
    detail::require(c0 > 0.0 && c0 < 0.5, "ConditionConstants", "c0 must lie in (0, 0.5)");
  }
};

// One inequality evaluated at a single n: holds = (lhs <relation> rhs).
struct Verdict {
  std::string name;
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string relation;
};

struct ConditionReport {
  std::vector<Verdict> verdicts;
  std::string note;

  bool all() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.holds; });
  }

  const Verdict& at(std::string_view name) const {
    for (const Verdict& v : verdicts) {
      if (v.name == name) return v;
    }
    throw DomainError("ConditionReport: no verdict named '" + std::string(name) + "'");
  }
};

namespace detail {

inline Verdict less_equal(std::string name, double lhs, double rhs) {
  return Verdict{std::move(name), lhs <= rhs, lhs, rhs, "<="};
}

inline Verdict less(std::string name, double lhs, double rhs) {
  return Verdict{std::move(name), lhs < rhs, lhs, rhs, "<"};
}

// ln x - ln ln x, increasing for x > e.
inline double log_minus_loglog(double x, const char* who) {
  require(x > std::numbers::e, who,
          "inner argument " + std::to_string(x) + " must exceed e for ln x - ln ln x to be monotone");
  const double lx = std::log(x);
  return lx - std::log(lx);
}

// Right-hand side of the square scaling without the alpha term.
inline double square_threshold(std::uint64_t n, double density, RegimeBranch branch, const char* who) {
  if (branch == RegimeBranch::Dense) {
    return log_minus_loglog(static_cast<double>(n) / density, who);
  }
  return 4.0 * log_minus_loglog(1.0 / density, who);
}

inline void require_torus(const NetworkParams& params, const char* who) {
  require(params.region == Region::Torus, who, "requires the torus region");
}

inline void require_square(const NetworkParams& params, const char* who) {
  require(params.region == Region::Square, who, "requires the square region");
}

}  // namespace detail

/// pi r^2 p_s: exact edge probability on the torus.
inline double edge_probability_torus(const NetworkParams& params) {
  params.validate();
  return std::numbers::pi * params.r * params.r * key_share_probability(params.scheme);
}

/// Bounds (1 - 2r)^2 pi r^2 p_s <= p_e <= pi r^2 p_s on the square.
inline std::pair<double, double> edge_probability_square_bounds(const NetworkParams& params) {
  const double upper = edge_probability_torus(params);
  const double shrink = (1.0 - 2.0 * params.r) * (1.0 - 2.0 * params.r);
  return {shrink * upper, upper};
}

/// r*(T) = sqrt(ln n / (pi n) * P / K^2).
inline double critical_range_torus(std::uint64_t n, const KeyScheme& scheme) {
  scheme.validate();
  detail::require(n >= 2, "critical_range_torus", "n must be at least 2");
  const double nd = static_cast<double>(n);
  return std::sqrt(std::log(nd) / (std::numbers::pi * nd) / scheme.density());
}

struct CriticalRange {
  double r = 0.0;
  RegimeBranch branch = RegimeBranch::Dense;
};

/// r*(S): sqrt((ln x - ln ln x) / (pi n K^2/P)) with x = nP/K^2 in the dense
/// branch, 2 sqrt((ln y - ln ln y) / (pi n K^2/P)) with y = P/K^2 otherwise.
inline CriticalRange critical_range_square(std::uint64_t n, const KeyScheme& scheme) {
  scheme.validate();
  detail::require(n >= 3, "critical_range_square", "n must be at least 3");
  const double density = scheme.density();
  const RegimeBranch branch = regime_branch(n, density);
  const double scale = std::numbers::pi * static_cast<double>(n) * density;
  return {std::sqrt(detail::square_threshold(n, density, branch, "critical_range_square") / scale), branch};
}

struct AlphaResult {
  double alpha = 0.0;
  std::optional<RegimeBranch> branch;  // square only
};

/// Deviation alpha in n pi r^2 K^2/P = threshold + alpha, where the threshold
/// is ln n on the torus and the branch-specific expression on the square.
inline AlphaResult alpha_from_radius(const NetworkParams& params) {
  params.validate();
  const double density = params.scheme.density();
  const double scaled = static_cast<double>(params.n) * std::numbers::pi * params.r * params.r * density;
  if (params.region == Region::Torus) {
    return {scaled - std::log(static_cast<double>(params.n)), std::nullopt};
  }
  const RegimeBranch branch = regime_branch(params.n, density);
  return {scaled - detail::square_threshold(params.n, density, branch, "alpha_from_radius"), branch};
}

/// Inverse of alpha_from_radius: the radius at which the deviation equals alpha.
inline double radius_for_alpha(std::uint64_t n, const KeyScheme& scheme, Region region, double alpha) {
  scheme.validate();
  detail::require(n >= 3, "radius_for_alpha", "n must be at least 3");
  const double density = scheme.density();
  const double threshold = region == Region::Torus
                               ? std::log(static_cast<double>(n))
                               : detail::square_threshold(n, density, regime_branch(n, density), "radius_for_alpha");
  const double target = threshold + alpha;
  detail::require(target > 0.0, "radius_for_alpha", "threshold + alpha must be positive");
  return std::sqrt(target / (static_cast<double>(n) * std::numbers::pi * density));
}

struct DeltaResult {
  double delta = 0.0;
  RegimeBranch delta_branch = RegimeBranch::Dense;
  double alpha = 0.0;
  RegimeBranch alpha_branch = RegimeBranch::Dense;
  double gap = 0.0;  // |delta - alpha|
};

/// The square scaling re-expressed with the exact p_s in place of K^2/P.
inline DeltaResult delta_from_radius(const NetworkParams& params) {
  detail::require_square(params, "delta_from_radius");
  const AlphaResult alpha = alpha_from_radius(params);
  const double ps = key_share_probability(params.scheme);
  const double scaled = static_cast<double>(params.n) * std::numbers::pi * params.r * params.r * ps;
  DeltaResult out;
  out.delta_branch = regime_branch(params.n, ps);
  out.delta = scaled - detail::square_threshold(params.n, ps, out.delta_branch, "delta_from_radius");
  out.alpha = alpha.alpha;
  out.alpha_branch = *alpha.branch;
  out.gap = std::abs(out.delta - out.alpha);
  return out;
}

/// Limit of pi r*(S)^2 (K^2/P) / (ln n / n) when ln(P/K^2)/ln n -> a:
/// 1 + a on [0, 1/3], 4a beyond.
inline double phase_transition_limit(double a) {
  detail::require(a >= 0.0 && a <= 1.0, "phase_transition_limit", "exponent a must lie in [0, 1]");
  return a <= 1.0 / 3.0 ? 1.0 + a : 4.0 * a;
}

/// ln(P/K^2) / ln n, the finite-n value of the exponent a.
inline double implied_exponent(std::uint64_t n, const KeyScheme& scheme) {
  scheme.validate();
  detail::require(n >= 2, "implied_exponent", "n must be at least 2");
  return std::log(1.0 / scheme.density()) / std::log(static_cast<double>(n));
}

inline constexpr std::string_view kFiniteNNote =
    "finite-n verdict: asymptotic o(1)/omega(1) sequences are replaced by the supplied stand-ins";

/// Torus hypotheses: max{ln n / ln ln n, mu sqrt(P ln n / n)} <= K <= c1 sqrt(P / ln n),
/// plus the derived constraints (i)-(iii).
inline ConditionReport check_theorem1_conditions(std::uint64_t n, const KeyScheme& scheme,
                                                 const ConditionConstants& consts) {
  scheme.validate();
  consts.validate();
  detail::require(n >= 3, "check_theorem1_conditions", "n must be at least 3");
  const double ln_n = std::log(static_cast<double>(n));
  const double nd = static_cast<double>(n);
  const double K = static_cast<double>(scheme.K);
  const double P = static_cast<double>(scheme.P);
  const double density = scheme.density();
  const double loglog_floor = ln_n / std::log(ln_n);

  ConditionReport report;
  report.note = std::string(kFiniteNNote);
  auto& v = report.verdicts;
  v.push_back(detail::less_equal("K >= ln n / ln ln n", loglog_floor, K));
  v.push_back(detail::less_equal("K >= mu sqrt(P ln n / n)", consts.mu * std::sqrt(P * ln_n / nd), K));
  v.push_back(detail::less_equal("K <= c1 sqrt(P / ln n)", K, consts.c1 * std::sqrt(P / ln_n)));
  v.push_back(detail::less_equal("(i) K^2/P >= mu^2 ln n / n", consts.mu * consts.mu * ln_n / nd, density));
  v.push_back(detail::less_equal("(ii) K^2/P <= c1^2 / ln n", density, consts.c1 * consts.c1 / ln_n));
  v.push_back(detail::less_equal("(iii) K >= ln n / ln ln n", loglog_floor, K));
  return report;
}

/// Square hypotheses: c2 sqrt(P ln n / n^c3) <= K <= min{nu sqrt(P / ln n), c4 P / (n ln n)},
/// the derived constraints (iv)-(vii), and the P = n^(1+eps1), K = n^eps2 family test.
inline ConditionReport check_theorem2_conditions(std::uint64_t n, const KeyScheme& scheme,
                                                 const ConditionConstants& consts) {
  scheme.validate();
  consts.validate();
  detail::require(n >= 3, "check_theorem2_conditions", "n must be at least 3");
  const double ln_n = std::log(static_cast<double>(n));
  const double nd = static_cast<double>(n);
  const double K = static_cast<double>(scheme.K);
  const double P = static_cast<double>(scheme.P);
  const double density = scheme.density();
  const double c2 = consts.c2;
  const double c3 = consts.c3;
  const double c4 = consts.c4;
  const double nu = consts.nu;

  ConditionReport report;
  report.note = std::string(kFiniteNNote) +
                "; whether K^2/P n^(1/3) ln n stays bounded or diverges cannot be decided at one n";
  auto& v = report.verdicts;
  v.push_back(detail::less_equal("K >= c2 sqrt(P ln n / n^c3)", c2 * std::sqrt(P * ln_n / std::pow(nd, c3)), K));
  v.push_back(detail::less_equal("K <= nu sqrt(P / ln n)", K, nu * std::sqrt(P / ln_n)));
  v.push_back(detail::less_equal("K <= c4 P / (n ln n)", K, c4 * P / (nd * ln_n)));
  v.push_back(detail::less_equal("(iv) K/P <= c4 / (n ln n)", K / P, c4 / (nd * ln_n)));
  v.push_back(detail::less_equal("(v) K^2/P >= c2^2 ln n / n^c3", c2 * c2 * ln_n / std::pow(nd, c3), density));
  v.push_back(detail::less_equal("(v) K^2/P <= nu^2 / ln n", density, nu * nu / ln_n));
  v.push_back(detail::less_equal("(vi) P >= c2^2 c4^-2 n^(2-c3) (ln n)^3",
                                 c2 * c2 / (c4 * c4) * std::pow(nd, 2.0 - c3) * ln_n * ln_n * ln_n, P));
  v.push_back(
      detail::less_equal("(vii) K >= c2^2 c4^-1 n^(1-c3) (ln n)^2", c2 * c2 / c4 * std::pow(nd, 1.0 - c3) * ln_n * ln_n, K));
  const bool family = consts.eps1 > 0.0 && consts.eps1 < 1.0 && 0.5 * consts.eps1 < consts.eps2 &&
                      consts.eps2 < consts.eps1;
  v.push_back(Verdict{"family: 0 < eps1 < 1 and eps1/2 < eps2 < eps1", family, consts.eps2, consts.eps1, "in"});
  return report;
}

/// The three core hypotheses of the square scaling (the K sandwich) only.
inline bool square_sandwich_holds(const ConditionReport& report) {
  return report.at("K >= c2 sqrt(P ln n / n^c3)").holds && report.at("K <= nu sqrt(P / ln n)").holds &&
         report.at("K <= c4 P / (n ln n)").holds;
}

/// P[node isolated] on the torus: exp(-pi r^2 p_s n).
inline double isolated_prob_torus(const NetworkParams& params) {
  params.validate();
  detail::require_torus(params, "isolated_prob_torus");
  const double ps = key_share_probability(params.scheme);
  return std::exp(-std::numbers::pi * params.r * params.r * ps * static_cast<double>(params.n));
}

struct IsolationBreakdown {
  double total = 0.0;
  std::array<double, 4> zone{};  // T0..T3
  double abs_error = 0.0;
  bool converged = true;
};

/// P[node isolated] on the square: the integral of exp(-n p_s |D_r(v)|) over
/// the square, split over the zones S0..S3.
inline IsolationBreakdown isolated_prob_square(const NetworkParams& params, double tol_1d = 1e-9,
                                               double tol_2d = 1e-7) {
  params.validate();
  detail::require_square(params, "isolated_prob_square");
  detail::require(params.r < 0.25, "isolated_prob_square", "radius must be below 0.25 for the zone split");
  const double r = params.r;
  const double rate = key_share_probability(params.scheme) * static_cast<double>(params.n);
  const auto weight = [rate](double area) { return std::exp(-rate * area); };

  IsolationBreakdown out;
  out.zone[0] = (1.0 - 2.0 * r) * (1.0 - 2.0 * r) * weight(std::numbers::pi * r * r);

  const QuadResult t1 =
      integrate([&](double g) { return weight(boundary_area_H(g, r).value); }, 0.0, 0.5 * r, {tol_1d / 4.0});
  out.zone[1] = 4.0 * (1.0 - 2.0 * r) * t1.value;

  // One of four congruent strips: edge distance in (r/2, r], the other axis in (r, 1 - r).
  const QuadResult t2 = integrate_rectangle(
      [&](double g, double t) { return weight(clipped_disk_area(Region::Square, {g, t}, r)); }, 0.5 * r, r, r,
      1.0 - r, {tol_2d / 4.0});
  out.zone[2] = 4.0 * t2.value;

  // One of four corners; the inner integral is split where the corner enters the disk.
  double t3_error = 0.0;
  bool t3_converged = true;
  const QuadOptions corner_inner{tol_2d / (16.0 * r)};
  const QuadResult t3 = integrate(
      [&](double x) {
        const auto f = [&](double y) { return weight(clipped_disk_area(Region::Square, {x, y}, r)); };
        const double split = std::sqrt(std::max(0.0, r * r - x * x));
        const QuadResult lo = integrate(f, 0.0, split, corner_inner);
        const QuadResult hi = integrate(f, split, r, corner_inner);
        t3_error = std::max(t3_error, lo.abs_error + hi.abs_error);
        t3_converged = t3_converged && lo.converged && hi.converged;
        return lo.value + hi.value;
      },
      0.0, r, {tol_2d / 8.0});
  out.zone[3] = 4.0 * t3.value;

  out.total = out.zone[0] + out.zone[1] + out.zone[2] + out.zone[3];
  out.abs_error = 4.0 * (1.0 - 2.0 * r) * t1.abs_error + 4.0 * t2.abs_error + 4.0 * (t3.abs_error + r * t3_error);
  out.converged = t1.converged && t2.converged && t3.converged && t3_converged;
  return out;
}

/// P[I_x and I_y | |S_xy| = u] on the torus. Translation invariance reduces the
/// double integral to one over the center distance d (density 2 pi d while the
/// lens is non-empty); pairs with d <= r share a link when u >= 1 and
/// contribute nothing.
inline QuadResult pair_isolation_torus(const NetworkParams& params, std::uint64_t u, double tol = 1e-9) {
  params.validate();
  detail::require_torus(params, "pair_isolation_torus");
  detail::require(params.r < 0.25, "pair_isolation_torus", "radius must be below 0.25 so disk images do not wrap");
  const double r = params.r;
  const double nd = static_cast<double>(params.n);
  const double ps = key_share_probability(params.scheme);
  const double phi = conditional_joint_share(params.scheme, u);
  const double both_disks = std::exp(-2.0 * nd * std::numbers::pi * r * r * ps);

  const double lower = u >= 1 ? r : 0.0;
  QuadResult near = integrate(
      [&](double d) { return 2.0 * std::numbers::pi * d * both_disks * std::exp(nd * phi * lens_area(d, r)); },
      lower, 2.0 * r, {tol});
  near.value += (1.0 - 4.0 * std::numbers::pi * r * r) * both_disks;
  return near;
}

struct SecondMoment {
  double pair = 0.0;        // sum_u P[|S_xy| = u] P[I_x and I_y | u]
  double single = 0.0;      // P[I_x]
  double excess = 0.0;      // pair / single^2 - 1
  double abs_error = 0.0;
};

/// Unconditioned P[I_x and I_y] on the torus against P[I_x]^2.
inline SecondMoment pair_isolation_torus_unconditioned(const NetworkParams& params, double tol = 1e-9) {
  const OverlapDistribution law = overlap_distribution(params.scheme);
  SecondMoment out;
  for (std::uint64_t u = 0; u < law.size(); ++u) {
    if (law[u] < 1e-18) continue;
    const QuadResult term = pair_isolation_torus(params, u, tol);
    out.pair += law[u] * term.value;
    out.abs_error += law[u] * term.abs_error;
  }
  out.single = isolated_prob_torus(params);
  out.excess = out.pair / (out.single * out.single) - 1.0;
  return out;
}

struct CouplingParameters {
  double p_n = 0.0;
  double s_n = 0.0;
  ConditionReport verdicts;
};

/// Coupling of G_ER(n, s_n) below G_RKG(n, K, P) through G_RIG(n, P, p_n):
/// p_n = (K/P)(1 - sqrt(3 ln n / K)), s_n = p_n^2 P (1 - n p_n + 2 p_n - p_n^2 P / 2).
inline CouplingParameters coupling_parameters(std::uint64_t n, const KeyScheme& scheme) {
  scheme.validate();
  detail::require(n >= 2, "coupling_parameters", "n must be at least 2");
  const double nd = static_cast<double>(n);
  const double ln_n = std::log(nd);
  const double K = static_cast<double>(scheme.K);
  const double P = static_cast<double>(scheme.P);
  detail::require(K > 3.0 * ln_n, "coupling_parameters",
                  "K=" + std::to_string(scheme.K) + " must exceed 3 ln n = " + std::to_string(3.0 * ln_n) +
                      " for p_n to be positive");

  CouplingParameters out;
  out.p_n = K / P * (1.0 - std::sqrt(3.0 * ln_n / K));
  const double pP = out.p_n * P;
  const double p2P = out.p_n * pP;
  out.s_n = p2P * (1.0 - nd * out.p_n + 2.0 * out.p_n - 0.5 * p2P);

  out.verdicts.note = std::string(kFiniteNNote);
  auto& v = out.verdicts.verdicts;
  v.push_back(detail::less("p_n P > ln n", ln_n, pP));
  v.push_back(detail::less_equal("K >= p_n P + sqrt(3 (p_n P + ln n) ln n)",
                                 pP + std::sqrt(3.0 * (pP + ln_n) * ln_n), K));
  v.push_back(detail::less("p_n < 1/n", out.p_n, 1.0 / nd));
  v.push_back(detail::less("p_n^2 P < 1", p2P, 1.0));
  v.push_back(detail::less("0 < s_n", 0.0, out.s_n));
  v.push_back(detail::less("s_n < K^2/P", out.s_n, scheme.density()));
  return out;
}

}  // namespace wsnconn
