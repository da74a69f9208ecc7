#pragma once

// Key-sharing probabilities for uniform random key rings.
//
// Every ratio of binomial coefficients is evaluated in log space and
// exponentiated last, so pool sizes in the 1e8 range neither overflow nor
// lose relative precision.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "wsnconn/errors.hpp"

namespace wsnconn {

// K keys per node drawn without replacement from a pool of P keys.
struct KeyScheme {
  std::uint64_t K = 1;
  std::uint64_t P = 1;

  void validate() const {
    detail::require(K >= 1, "KeyScheme", "ring size K must be at least 1");
    detail::require(K <= P, "KeyScheme",
                    "ring size K=" + std::to_string(K) + " exceeds pool size P=" + std::to_string(P));
  }

  // K^2 / P, the asymptotic key-sharing probability.
  double density() const {
    const double k = static_cast<double>(K);
    return k * k / static_cast<double>(P);
  }

  bool degenerate_pool() const { return P < 2 * K; }

  friend bool operator==(const KeyScheme&, const KeyScheme&) = default;
};

// Law of |S_x ∩ S_y|; probs[u] = P[overlap = u], u = 0..K.
struct OverlapDistribution {
  std::vector<double> probs;

  double operator[](std::size_t u) const { return probs[u]; }
  std::size_t size() const { return probs.size(); }
};

namespace detail {

inline constexpr double kClampSlack = 1e-10;

// Rounding can push a probability a hair outside [0,1]; anything larger is a bug.
inline double clamp_probability(double p) {
  if (p < -kClampSlack || p > 1.0 + kClampSlack || std::isnan(p)) {
    throw std::logic_error("probability " + std::to_string(p) + " outside [0,1] beyond rounding slack");
  }
  return std::clamp(p, 0.0, 1.0);
}

// Above this many factors the product form is replaced by log-gamma.
inline constexpr std::uint64_t kProductTermLimit = std::uint64_t{1} << 22;

// ln[ C(P - m, k) / C(P, k) ] = sum_{i<k} ln(1 - m / (P - i)).
inline double log_binomial_shift_ratio(std::uint64_t P, std::uint64_t m, std::uint64_t k) {
  if (m > P || P - m < k) {
    return -std::numeric_limits<double>::infinity();
  }
  if (m == 0 || k == 0) {
    return 0.0;
  }
  if (k > kProductTermLimit) {
    const auto lg = [](double x) { return std::lgamma(x + 1.0); };
    const double p = static_cast<double>(P);
    const double md = static_cast<double>(m);
    const double kd = static_cast<double>(k);
    return lg(p - md) - lg(p - md - kd) - lg(p) + lg(p - kd);
  }
  const double md = static_cast<double>(m);
  double sum = 0.0;
  for (std::uint64_t i = 0; i < k; ++i) {
    sum += std::log1p(-md / static_cast<double>(P - i));
  }
  return sum;
}

}  // namespace detail

/// ln C(n, k). Returns -inf when k > n and exactly 0 for k in {0, n}.
inline double log_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) {
    return -std::numeric_limits<double>::infinity();
  }
  const std::uint64_t kk = std::min(k, n - k);
  if (kk == 0) {
    return 0.0;
  }
  if (kk <= 512) {
    double sum = 0.0;
    for (std::uint64_t i = 1; i <= kk; ++i) {
      sum += std::log(static_cast<double>(n - kk + i) / static_cast<double>(i));
    }
    return sum;
  }
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(kk);
  return std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0);
}

/// Probability that two independent rings share at least one key:
/// p_s = 1 - C(P-K, K) / C(P, K), exactly 1 when P < 2K.
inline double key_share_probability(const KeyScheme& scheme) {
  scheme.validate();
  if (scheme.degenerate_pool()) {
    return 1.0;
  }
  const double log_miss = detail::log_binomial_shift_ratio(scheme.P, scheme.K, scheme.K);
  return detail::clamp_probability(-std::expm1(log_miss));
}

/// K^2 / P. Only stated for P >= 2K.
inline double key_share_upper_bound(const KeyScheme& scheme) {
  scheme.validate();
  detail::require(!scheme.degenerate_pool(), "key_share_upper_bound",
                  "bound K^2/P requires P >= 2K (got K=" + std::to_string(scheme.K) +
                      ", P=" + std::to_string(scheme.P) + ")");
  return scheme.density();
}

/// Hypergeometric law of the ring overlap: C(K,u) C(P-K,K-u) / C(P,K).
inline OverlapDistribution overlap_distribution(const KeyScheme& scheme) {
  scheme.validate();
  const std::uint64_t K = scheme.K;
  const std::uint64_t P = scheme.P;
  OverlapDistribution out;
  out.probs.assign(K + 1, 0.0);

  const std::uint64_t u_min = (2 * K > P) ? 2 * K - P : 0;
  double log_h = (u_min == 0) ? detail::log_binomial_shift_ratio(P, K, K)
                              : log_binomial(K, u_min) - log_binomial(P, K);
  out.probs[u_min] = std::exp(log_h);
  for (std::uint64_t u = u_min; u < K; ++u) {
    const double remaining = static_cast<double>(K - u);
    log_h += 2.0 * std::log(remaining) - std::log(static_cast<double>(u + 1)) -
             std::log(static_cast<double>(P + u + 1 - 2 * K));
    out.probs[u + 1] = std::exp(log_h);
  }
  for (double& p : out.probs) {
    p = detail::clamp_probability(p);
  }
  return out;
}

/// phi_u: probability that a third ring meets both of two rings that share
/// exactly u keys, 2 p_s - 1 + C(P - (2K - u), K) / C(P, K).
inline double conditional_joint_share(const KeyScheme& scheme, std::uint64_t u) {
  scheme.validate();
  const std::uint64_t K = scheme.K;
  const std::uint64_t P = scheme.P;
  detail::require(u <= K, "conditional_joint_share",
                  "overlap u=" + std::to_string(u) + " exceeds ring size K=" + std::to_string(K));
  detail::require(P + u >= 2 * K, "conditional_joint_share",
                  "two rings of size " + std::to_string(K) + " cannot overlap in only " +
                      std::to_string(u) + " keys within a pool of " + std::to_string(P));
  // 2 p_s - 1 + r = -2 (q - 1) + (r - 1), written with expm1 to avoid cancellation.
  const double log_q = detail::log_binomial_shift_ratio(P, K, K);
  const double log_r = detail::log_binomial_shift_ratio(P, 2 * K - u, K);
  return detail::clamp_probability(-2.0 * std::expm1(log_q) + std::expm1(log_r));
}

/// uK/P + 2K^4/P^2, an upper bound on phi_u valid once P >= 3K.
inline double joint_share_upper_bound(const KeyScheme& scheme, std::uint64_t u) {
  scheme.validate();
  detail::require(u <= scheme.K, "joint_share_upper_bound", "overlap u exceeds ring size");
  detail::require(scheme.P >= 3 * scheme.K, "joint_share_upper_bound", "bound requires P >= 3K");
  const double k = static_cast<double>(scheme.K);
  const double p = static_cast<double>(scheme.P);
  return static_cast<double>(u) * k / p + 2.0 * k * k * k * k / (p * p);
}

}  // namespace wsnconn
