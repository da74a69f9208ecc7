// Command-line front end for the wsnconn library.
//
//   wsnconn report --n 2000 --k 20 --p 10000 --r 0.17 --region square
//   wsnconn sweep --region torus --r-min 0.09 --r-max 0.26 --out sweep.csv
//
// Exit status: 0 on success, 1 on a domain error, 2 on an I/O error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "wsnconn/wsnconn.hpp"

namespace {

struct ModelOptions {
  std::uint64_t n = 2000;
  std::uint64_t k = 20;
  std::uint64_t p = 10000;
  double r = 0.1;
  std::string region = "torus";
};

void add_model_options(CLI::App* cmd, ModelOptions& model, bool with_radius) {
  cmd->add_option("--n", model.n, "number of nodes")->capture_default_str();
  cmd->add_option("--k", model.k, "keys per node")->capture_default_str();
  cmd->add_option("--p", model.p, "key pool size")->capture_default_str();
  cmd->add_option("--region", model.region, "torus or square")->capture_default_str();
  if (with_radius) cmd->add_option("--r", model.r, "transmission range")->capture_default_str();
}

void add_constant_options(CLI::App* cmd, wsnconn::ConditionConstants& c) {
  cmd->add_option("--c1", c.c1)->capture_default_str();
  cmd->add_option("--c2", c.c2)->capture_default_str();
  cmd->add_option("--c3", c.c3)->capture_default_str();
  cmd->add_option("--c4", c.c4)->capture_default_str();
  cmd->add_option("--mu", c.mu, "stand-in for the growing sequence mu_n")->capture_default_str();
  cmd->add_option("--nu", c.nu, "stand-in for the vanishing sequence nu_n")->capture_default_str();
  cmd->add_option("--c0", c.c0)->capture_default_str();
  cmd->add_option("--eps1", c.eps1)->capture_default_str();
  cmd->add_option("--eps2", c.eps2)->capture_default_str();
}

wsnconn::NetworkParams to_params(const ModelOptions& model) {
  wsnconn::NetworkParams params;
  params.n = model.n;
  params.scheme = {model.k, model.p};
  params.r = model.r;
  params.region = wsnconn::parse_region(model.region);
  params.validate();
  return params;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace wsnconn;
  using detail::format_real;

  CLI::App app{"Connectivity of secure sensor networks: random key graphs intersected with random geometric graphs"};
  app.require_subcommand(1);

  ModelOptions model;
  ConditionConstants consts;

  auto* report_cmd = app.add_subcommand("report", "all analytic quantities for one parameter tuple");
  add_model_options(report_cmd, model, true);
  add_constant_options(report_cmd, consts);

  auto* range_cmd = app.add_subcommand("critical-range", "critical transmission range for the region");
  add_model_options(range_cmd, model, false);

  SweepConfig sweep;
  std::string mode = "coupled";
  std::uint64_t seed = 1;
  std::string out_path;
  auto* sweep_cmd = app.add_subcommand("sweep", "empirical connectivity over a radius grid, as CSV");
  add_model_options(sweep_cmd, model, false);
  sweep_cmd->add_option("--r-min", sweep.r_min)->capture_default_str();
  sweep_cmd->add_option("--r-max", sweep.r_max)->capture_default_str();
  sweep_cmd->add_option("--r-steps", sweep.r_steps)->capture_default_str();
  sweep_cmd->add_option("--trials", sweep.trials)->capture_default_str();
  sweep_cmd->add_option("--seed", seed)->capture_default_str();
  sweep_cmd->add_option("--mode", mode, "coupled or independent")->capture_default_str();
  sweep_cmd->add_option("--threads", sweep.threads, "worker threads, 0 for all cores")->capture_default_str();
  sweep_cmd->add_option("--out", out_path, "CSV destination (stdout when omitted)");

  auto* isolated_cmd = app.add_subcommand("isolated", "probability that a given node is isolated");
  add_model_options(isolated_cmd, model, true);

  std::optional<std::uint64_t> overlap;
  auto* pair_cmd = app.add_subcommand("pair-isolated", "probability that two given nodes are both isolated (torus)");
  add_model_options(pair_cmd, model, true);
  pair_cmd->add_option("--u", overlap, "condition on the two rings sharing exactly u keys");

  auto* check_cmd = app.add_subcommand("check-conditions", "finite-n verdicts for the scaling hypotheses");
  add_model_options(check_cmd, model, false);
  add_constant_options(check_cmd, consts);

  auto* coupling_cmd = app.add_subcommand("coupling", "Erdos-Renyi coupling parameters p_n and s_n");
  add_model_options(coupling_cmd, model, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*report_cmd) {
      render_report(build_report(to_params(model), consts), std::cout);
    } else if (*range_cmd) {
      const KeyScheme scheme{model.k, model.p};
      if (parse_region(model.region) == Region::Torus) {
        std::cout << "r* = " << format_real(critical_range_torus(model.n, scheme)) << '\n';
      } else {
        const CriticalRange range = critical_range_square(model.n, scheme);
        std::cout << "r* = " << format_real(range.r) << '\n' << "branch = " << to_string(range.branch) << '\n';
      }
    } else if (*sweep_cmd) {
      sweep.n = model.n;
      sweep.scheme = {model.k, model.p};
      sweep.region = parse_region(model.region);
      sweep.seed = Seed{seed};
      sweep.mode = parse_sweep_mode(mode);
      const SweepResult result = run_sweep(sweep);
      if (out_path.empty()) {
        emit_csv(result, std::cout);
      } else {
        write_csv(result, out_path);
      }
    } else if (*isolated_cmd) {
      const NetworkParams params = to_params(model);
      if (params.region == Region::Torus) {
        std::cout << "P[isolated] = " << format_real(isolated_prob_torus(params)) << '\n';
      } else {
        const IsolationBreakdown b = isolated_prob_square(params);
        std::cout << "P[isolated] = " << format_real(b.total) << '\n';
        for (int z = 0; z < 4; ++z) std::cout << "T" << z << " = " << format_real(b.zone[z]) << '\n';
        std::cout << "abs_error = " << format_real(b.abs_error) << (b.converged ? "" : "    (not converged)") << '\n';
      }
    } else if (*pair_cmd) {
      const NetworkParams params = to_params(model);
      if (overlap) {
        const QuadResult q = pair_isolation_torus(params, *overlap);
        std::cout << "P[both isolated | u = " << *overlap << "] = " << format_real(q.value) << '\n'
                  << "abs_error = " << format_real(q.abs_error) << (q.converged ? "" : "    (not converged)")
                  << '\n';
      } else {
        const SecondMoment m = pair_isolation_torus_unconditioned(params);
        std::cout << "P[both isolated] = " << format_real(m.pair) << '\n'
                  << "P[isolated]^2 = " << format_real(m.single * m.single) << '\n'
                  << "excess = " << format_real(m.excess) << '\n'
                  << "abs_error = " << format_real(m.abs_error) << '\n';
      }
    } else if (*check_cmd) {
      const KeyScheme scheme{model.k, model.p};
      detail::render_verdicts(std::cout, "torus conditions", check_theorem1_conditions(model.n, scheme, consts));
      detail::render_verdicts(std::cout, "square conditions", check_theorem2_conditions(model.n, scheme, consts));
    } else if (*coupling_cmd) {
      const CouplingParameters c = coupling_parameters(model.n, {model.k, model.p});
      std::cout << "p_n = " << format_real(c.p_n) << '\n' << "s_n = " << format_real(c.s_n) << '\n';
      detail::render_verdicts(std::cout, "coupling conditions", c.verdicts);
    }
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
