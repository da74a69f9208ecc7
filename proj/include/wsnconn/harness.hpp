#pragma once

// Experiment orchestration: connectivity sweeps over a radius grid, CSV
// emission and parsing, and the analytic report for one parameter tuple.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <functional>
#include <cmath>
#include <iomanip>
#include <istream>
#include <locale>
#include <numbers>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "wsnconn/asymptotics.hpp"
#include "wsnconn/combinatorics.hpp"
#include "wsnconn/errors.hpp"
#include "wsnconn/geometry.hpp"
#include "wsnconn/graph_analysis.hpp"
#include "wsnconn/graph_models.hpp"
#include "wsnconn/random.hpp"

namespace wsnconn {

// Coupled: one realization of positions and rings per trial, evaluated at
// every radius, so connectivity is monotone in r within a trial.
// Independent: a fresh realization for every (trial, radius).
enum class SweepMode { Independent, Coupled };

inline std::string_view to_string(SweepMode mode) {
  return mode == SweepMode::Coupled ? "coupled" : "independent";
}

inline SweepMode parse_sweep_mode(std::string_view text) {
  if (text == "coupled") return SweepMode::Coupled;
  if (text == "independent") return SweepMode::Independent;
  throw DomainError("mode: expected 'coupled' or 'independent', got '" + std::string(text) + "'");
}

struct SweepConfig {
  std::uint64_t n = 2000;
  KeyScheme scheme{20, 10000};
  Region region = Region::Torus;
  double r_min = 0.05;
  double r_max = 0.3;
  std::size_t r_steps = 20;
  std::size_t trials = 500;
  Seed seed{1};
  SweepMode mode = SweepMode::Coupled;
  unsigned threads = 0;  // 0: one per hardware thread

  void validate() const {
    detail::require(n >= 1, "SweepConfig", "n must be at least 1");
    scheme.validate();
    detail::require(r_min > 0.0 && r_min < r_max && r_max < 0.5, "SweepConfig",
                    "radii must satisfy 0 < r_min < r_max < 0.5");
    detail::require(r_steps >= 2, "SweepConfig", "r_steps must be at least 2");
    detail::require(trials >= 1, "SweepConfig", "trials must be at least 1");
  }

  // Linear grid from r_min to r_max inclusive.
  std::vector<double> radii() const {
    std::vector<double> out(r_steps);
    for (std::size_t i = 0; i < r_steps; ++i) {
      out[i] = r_min + (r_max - r_min) * static_cast<double>(i) / static_cast<double>(r_steps - 1);
    }
    out.back() = r_max;
    return out;
  }
};

struct SweepRow {
  Region region = Region::Torus;
  std::uint64_t n = 0;
  std::uint64_t K = 0;
  std::uint64_t P = 0;
  double r = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t connected_count = 0;
  double connected_frac = 0.0;
  double mean_isolated = 0.0;
  double mean_edges = 0.0;
  double mean_components = 0.0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepResult {
  std::vector<SweepRow> rows;

  friend bool operator==(const SweepResult&, const SweepResult&) = default;
};

// Per-radius statistics of one trial.
struct TrialPoint {
  bool connected = false;
  std::uint32_t isolated = 0;
  std::uint64_t edges = 0;
  std::uint32_t components = 0;
};

namespace detail {

// Runs job(t) for t in [0, count) on up to `threads` workers. Jobs write only
// to their own slot, so the result does not depend on scheduling.
inline void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& job) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t t = 0; t < count; ++t) job(t);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> workers;
  workers.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    workers.emplace_back([&] {
      for (std::size_t t = next++; t < count; t = next++) job(t);
    });
  }
}

inline TrialPoint snapshot(const IncrementalConnectivity& state) {
  return TrialPoint{state.connected(), static_cast<std::uint32_t>(state.isolated()), state.edges(),
                    static_cast<std::uint32_t>(state.components())};
}

// Adds candidate links in increasing length and records the state at each radius.
inline std::vector<TrialPoint> sweep_candidates(std::size_t nodes, std::vector<WeightedEdge> candidates,
                                                std::span<const double> radii) {
  std::sort(candidates.begin(), candidates.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    if (a.distance_sq != b.distance_sq) return a.distance_sq < b.distance_sq;
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  IncrementalConnectivity state(nodes);
  std::vector<TrialPoint> points;
  points.reserve(radii.size());
  std::size_t next = 0;
  for (const double r : radii) {
    const double r2 = r * r;
    while (next < candidates.size() && candidates[next].distance_sq <= r2) {
      state.add_edge(candidates[next].u, candidates[next].v);
      ++next;
    }
    points.push_back(snapshot(state));
  }
  return points;
}

inline std::vector<TrialPoint> sample_and_sweep(std::uint64_t n, const KeyScheme& scheme, Region region,
                                                Seed seed, std::span<const double> radii) {
  const CandidateStrategy strategy = choose_candidate_strategy(n, scheme, radii.back());
  Rng position_rng = make_rng(derive_seed(seed, streams::kPositions));
  Rng ring_rng = make_rng(derive_seed(seed, streams::kKeyRings));
  const std::vector<Point> positions = sample_positions(n, position_rng);
  const KeyRings rings = sample_key_rings(n, scheme, ring_rng, strategy == CandidateStrategy::GeometryFirst);
  return sweep_candidates(n, intersection_candidates(region, positions, rings, scheme, radii.back(), strategy),
                          radii);
}

}  // namespace detail

/// Statistics of trial `trial` at every radius of the grid.
inline std::vector<TrialPoint> run_trial(const SweepConfig& config, std::size_t trial) {
  const std::vector<double> radii = config.radii();
  const Seed trial_seed = derive_seed(config.seed, streams::kTrial, trial);
  if (config.mode == SweepMode::Coupled) {
    return detail::sample_and_sweep(config.n, config.scheme, config.region, trial_seed, radii);
  }
  std::vector<TrialPoint> points;
  points.reserve(radii.size());
  for (std::size_t k = 0; k < radii.size(); ++k) {
    const Seed seed = derive_seed(trial_seed, streams::kRadius, k);
    points.push_back(detail::sample_and_sweep(config.n, config.scheme, config.region, seed,
                                              std::span<const double>(&radii[k], 1))
                         .front());
  }
  return points;
}

/// Empirical connectivity over the radius grid. Deterministic in the seed and
/// independent of the thread count.
inline SweepResult run_sweep(const SweepConfig& config) {
  config.validate();
  const std::vector<double> radii = config.radii();
  std::vector<std::vector<TrialPoint>> outcomes(config.trials);
  detail::parallel_for(config.trials, config.threads, [&](std::size_t t) { outcomes[t] = run_trial(config, t); });

  SweepResult result;
  const double trials = static_cast<double>(config.trials);
  for (std::size_t k = 0; k < radii.size(); ++k) {
    std::uint64_t connected = 0, isolated = 0, edges = 0, components = 0;
    for (const auto& trial : outcomes) {
      connected += trial[k].connected ? 1 : 0;
      isolated += trial[k].isolated;
      edges += trial[k].edges;
      components += trial[k].components;
    }
    SweepRow row;
    row.region = config.region;
    row.n = config.n;
    row.K = config.scheme.K;
    row.P = config.scheme.P;
    row.r = radii[k];
    row.trials = config.trials;
    row.seed = config.seed.value;
    row.connected_count = connected;
    row.connected_frac = static_cast<double>(connected) / trials;
    row.mean_isolated = static_cast<double>(isolated) / trials;
    row.mean_edges = static_cast<double>(edges) / trials;
    row.mean_components = static_cast<double>(components) / trials;
    result.rows.push_back(row);
  }
  return result;
}

inline constexpr std::string_view kCsvHeader =
    "region,n,K,P,r,trials,seed,connected_count,connected_frac,mean_isolated,mean_edges,mean_components";

namespace detail {

// Nine significant digits, '.' as decimal point regardless of locale.
inline std::string format_real(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::general, 9);
  return std::string(buffer, end);
}

template <class T>
T parse_number(std::string_view field, const char* column) {
  T value{};
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || end != field.data() + field.size()) {
    throw DomainError(std::string("csv: cannot parse column '") + column + "' from '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace detail

/// Writes the header and one line per radius.
inline void emit_csv(const SweepResult& result, std::ostream& out) {
  using detail::format_real;
  out << kCsvHeader << '\n';
  for (const SweepRow& row : result.rows) {
    out << to_string(row.region) << ',' << row.n << ',' << row.K << ',' << row.P << ',' << format_real(row.r) << ','
        << row.trials << ',' << row.seed << ',' << row.connected_count << ',' << format_real(row.connected_frac)
        << ',' << format_real(row.mean_isolated) << ',' << format_real(row.mean_edges) << ','
        << format_real(row.mean_components) << '\n';
  }
}

inline void write_csv(const SweepResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open '" + path + "' for writing");
  }
  emit_csv(result, out);
  out.flush();
  if (!out) {
    throw IoError("write to '" + path + "' failed");
  }
}

inline SweepResult parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw DomainError("csv: missing or unexpected header");
  }
  SweepResult result;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest = line;
    for (std::size_t comma; (comma = rest.find(',')) != std::string_view::npos; rest.remove_prefix(comma + 1)) {
      fields.push_back(rest.substr(0, comma));
    }
    fields.push_back(rest);
    if (fields.size() != 12) {
      throw DomainError("csv: expected 12 columns, got " + std::to_string(fields.size()));
    }
    using detail::parse_number;
    SweepRow row;
    row.region = parse_region(fields[0]);
    row.n = parse_number<std::uint64_t>(fields[1], "n");
    row.K = parse_number<std::uint64_t>(fields[2], "K");
    row.P = parse_number<std::uint64_t>(fields[3], "P");
    row.r = parse_number<double>(fields[4], "r");
    row.trials = parse_number<std::uint64_t>(fields[5], "trials");
    row.seed = parse_number<std::uint64_t>(fields[6], "seed");
    row.connected_count = parse_number<std::uint64_t>(fields[7], "connected_count");
    row.connected_frac = parse_number<double>(fields[8], "connected_frac");
    row.mean_isolated = parse_number<double>(fields[9], "mean_isolated");
    row.mean_edges = parse_number<double>(fields[10], "mean_edges");
    row.mean_components = parse_number<double>(fields[11], "mean_components");
    result.rows.push_back(row);
  }
  return result;
}

/// Smallest radius where the empirical connectivity reaches one half, by
/// linear interpolation between grid points. Empty if never reached.
inline std::optional<double> half_connectivity_radius(const SweepResult& result) {
  for (std::size_t k = 0; k < result.rows.size(); ++k) {
    const SweepRow& row = result.rows[k];
    if (row.connected_frac >= 0.5) {
      if (k == 0) return row.r;
      const SweepRow& prev = result.rows[k - 1];
      const double t = (0.5 - prev.connected_frac) / (row.connected_frac - prev.connected_frac);
      return prev.r + t * (row.r - prev.r);
    }
  }
  return std::nullopt;
}

struct CouplingComparisonRow {
  double r = 0.0;
  std::size_t trials = 0;
  std::size_t key_graph_connected = 0;  // G_RKG(n, K, P) and G_RGG
  std::size_t er_graph_connected = 0;   // G_ER(n, s_n) and G_RGG
};

/// Connectivity of G_RKG and G_RGG against G_ER(s) and G_RGG at the given
/// ascending radii. Both graphs share node positions within a trial; their
/// link layers are sampled independently.
inline std::vector<CouplingComparisonRow> run_coupling_comparison(std::uint64_t n, const KeyScheme& scheme,
                                                                  double er_probability, Region region,
                                                                  std::vector<double> radii, std::size_t trials,
                                                                  Seed seed, unsigned threads = 0) {
  scheme.validate();
  detail::require(!radii.empty() && std::is_sorted(radii.begin(), radii.end()) && radii.front() > 0.0 &&
                      radii.back() < 0.5,
                  "run_coupling_comparison", "radii must be ascending within (0, 0.5)");
  struct Outcome {
    std::vector<TrialPoint> key_graph;
    std::vector<TrialPoint> er_graph;
  };
  std::vector<Outcome> outcomes(trials);
  detail::parallel_for(trials, threads, [&](std::size_t t) {
    const Seed trial_seed = derive_seed(seed, streams::kTrial, t);
    outcomes[t].key_graph = detail::sample_and_sweep(n, scheme, region, trial_seed, radii);
    Rng position_rng = make_rng(derive_seed(trial_seed, streams::kPositions));
    const std::vector<Point> positions = sample_positions(n, position_rng);
    const Seed er_seed = derive_seed(trial_seed, streams::kEdges);
    std::vector<WeightedEdge> candidates;
    for_each_geometric_pair(region, positions, radii.back(), [&](NodeId i, NodeId j, double d2) {
      if (er_pair_present(er_seed, i, j, er_probability)) candidates.push_back({i, j, d2});
    });
    outcomes[t].er_graph = detail::sweep_candidates(n, std::move(candidates), radii);
  });

  std::vector<CouplingComparisonRow> rows(radii.size());
  for (std::size_t k = 0; k < radii.size(); ++k) {
    rows[k].r = radii[k];
    rows[k].trials = trials;
    for (const Outcome& o : outcomes) {
      rows[k].key_graph_connected += o.key_graph[k].connected ? 1 : 0;
      rows[k].er_graph_connected += o.er_graph[k].connected ? 1 : 0;
    }
  }
  return rows;
}

struct AnalyticReport {
  NetworkParams params;
  double p_s = 0.0;
  bool degenerate_pool = false;
  std::optional<double> key_share_bound;
  double p_e_torus = 0.0;
  std::pair<double, double> p_e_square_bounds{};
  double r_star = 0.0;
  std::optional<RegimeBranch> branch;
  double alpha = 0.0;
  std::optional<DeltaResult> delta;
  double exponent = 0.0;
  std::optional<double> phase_limit;
  ConditionReport torus_conditions;
  ConditionReport square_conditions;
  std::optional<CouplingParameters> coupling;
  std::optional<double> isolated_probability;
};

/// Every analytic quantity for one parameter tuple. Domain errors from the
/// underlying formulas propagate with the quantity named in the message.
inline AnalyticReport build_report(const NetworkParams& params, const ConditionConstants& consts) {
  params.validate();
  consts.validate();
  AnalyticReport report;
  report.params = params;
  report.p_s = key_share_probability(params.scheme);
  report.degenerate_pool = params.scheme.degenerate_pool();
  if (!report.degenerate_pool) {
    report.key_share_bound = key_share_upper_bound(params.scheme);
  }
  report.p_e_torus = edge_probability_torus(params);
  report.p_e_square_bounds = edge_probability_square_bounds(params);
  if (params.region == Region::Torus) {
    report.r_star = critical_range_torus(params.n, params.scheme);
  } else {
    const CriticalRange range = critical_range_square(params.n, params.scheme);
    report.r_star = range.r;
    report.branch = range.branch;
    report.delta = delta_from_radius(params);
  }
  report.alpha = alpha_from_radius(params).alpha;
  report.exponent = implied_exponent(params.n, params.scheme);
  if (report.exponent >= 0.0 && report.exponent <= 1.0) {
    report.phase_limit = phase_transition_limit(report.exponent);
  }
  report.torus_conditions = check_theorem1_conditions(params.n, params.scheme, consts);
  report.square_conditions = check_theorem2_conditions(params.n, params.scheme, consts);
  if (static_cast<double>(params.scheme.K) > 3.0 * std::log(static_cast<double>(params.n))) {
    report.coupling = coupling_parameters(params.n, params.scheme);
  }
  if (params.region == Region::Torus) {
    report.isolated_probability = isolated_prob_torus(params);
  } else if (params.r < 0.25) {
    report.isolated_probability = isolated_prob_square(params).total;
  }
  return report;
}

namespace detail {

// Fixed nine decimals with negative zero folded to zero.
inline std::string format_fixed(double value) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << std::fixed << std::setprecision(9) << value;
  std::string text = out.str();
  if (text.find_first_not_of("-0.") == std::string::npos && text.front() == '-') {
    text.erase(0, 1);
  }
  return text;
}

inline void render_verdicts(std::ostream& out, std::string_view title, const ConditionReport& report) {
  out << title << " (" << report.note << ")\n";
  for (const Verdict& v : report.verdicts) {
    out << "  [" << (v.holds ? "true " : "false") << "] " << v.name << "    " << format_real(v.lhs) << ' '
        << v.relation << ' ' << format_real(v.rhs) << '\n';
  }
}

}  // namespace detail

inline void render_report(const AnalyticReport& report, std::ostream& out) {
  using detail::format_fixed;
  using detail::format_real;
  const NetworkParams& p = report.params;
  out << "region = " << to_string(p.region) << '\n'
      << "n = " << p.n << '\n'
      << "K = " << p.scheme.K << '\n'
      << "P = " << p.scheme.P << '\n'
      << "r = " << format_real(p.r) << '\n';
  out << "p_s = " << format_real(report.p_s);
  if (report.degenerate_pool) out << "    (degenerate pool: P < 2K, every pair of rings shares a key)";
  out << '\n';
  if (report.key_share_bound) out << "K^2/P = " << format_real(*report.key_share_bound) << '\n';
  out << "p_e torus = " << format_real(report.p_e_torus) << '\n'
      << "p_e square bounds = [" << format_real(report.p_e_square_bounds.first) << ", "
      << format_real(report.p_e_square_bounds.second) << "]\n"
      << "r* = " << format_real(report.r_star) << '\n';
  if (report.branch) out << "branch = " << to_string(*report.branch) << '\n';
  out << "alpha = " << format_fixed(report.alpha) << '\n';
  if (report.delta) {
    out << "delta = " << format_fixed(report.delta->delta) << "    (branch " << to_string(report.delta->delta_branch)
        << ", |delta - alpha| = " << format_real(report.delta->gap) << ")\n";
  }
  out << "exponent ln(P/K^2)/ln n = " << format_real(report.exponent) << '\n';
  if (report.phase_limit) out << "phase-transition limit = " << format_real(*report.phase_limit) << '\n';
  if (report.isolated_probability) out << "P[isolated] = " << format_real(*report.isolated_probability) << '\n';
  detail::render_verdicts(out, "torus conditions", report.torus_conditions);
  detail::render_verdicts(out, "square conditions", report.square_conditions);
  if (report.coupling) {
    out << "coupling p_n = " << format_real(report.coupling->p_n) << '\n'
        << "coupling s_n = " << format_real(report.coupling->s_n) << '\n';
    detail::render_verdicts(out, "coupling conditions", report.coupling->verdicts);
  }
}

}  // namespace wsnconn
