#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eonsim/sweep.hpp"

namespace {

std::vector<eonsim::PolicyKind> parse_policies(const std::vector<std::string>& names) {
  std::vector<eonsim::PolicyKind> policies;
  const auto add = [&policies](eonsim::PolicyKind policy) {
    if (std::find(policies.begin(), policies.end(), policy) == policies.end()) {
      policies.push_back(policy);
    }
  };
  for (const std::string& name : names) {
    if (name == "all") {
      for (eonsim::PolicyKind policy : eonsim::kAllPolicies) add(policy);
      continue;
    }
    add(eonsim::parse_policy(name));
  }
  return policies;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "eonsim - dynamic routing and spectrum assignment simulator for "
      "flexible-grid optical networks"};
  app.fallthrough();  // flags after `bench` still reach the main option set
  app.set_config("--config", "", "plain-text key=value configuration file");

  std::string topology;
  std::vector<std::string> policy_names{"all"};
  std::vector<double> rhos;
  std::vector<double> caps;
  int k = 10;
  std::vector<std::uint64_t> seeds;
  std::size_t requests = 200'000;
  std::string out_dir = "results";
  std::string preset;
  std::string format = "both";
  unsigned workers = 0;
  bool raw = false;
  bool debug_checks = false;
  double grid_ghz = 12.5;
  double gb_ghz = 10.0;
  int modulation = 1;
  double holding = 100.0;
  double warmup = 3.0;
  bool continuous_demand = false;

  app.add_option("--topology", topology, "topology file (nodes header + edge lines)")
      ->required();
  app.add_option("--policy", policy_names,
                 "sp_km, sp_hops, ksp_km, type1, type2, type3 or all")
      ->delimiter(',');
  app.add_option("--rho", rhos, "offered load per node, Erlang")->delimiter(',');
  app.add_option("--B", caps, "demand cap per request, Gbps")->delimiter(',');
  app.add_option("--k", k, "path budget for type1/type3/ksp_km");
  app.add_option("--seeds", seeds, "RNG seeds, one replica each")->delimiter(',');
  auto* opt_requests = app.add_option("--requests", requests, "arrivals per replica");
  app.add_option("--out", out_dir, "output directory")->envname("EONSIM_OUT");
  app.add_option("--preset", preset, "desk (2e4 requests, 5 seeds) or paper (2e5)");
  app.add_option("--format", format, "csv, json or both");
  app.add_option("--workers", workers, "parallel replicas (default: hardware)");
  app.add_flag("--raw", raw, "write per-request logs per cell");
  app.add_flag("--debug-checks", debug_checks,
               "cross-check spectrum state against live assignments");
  app.add_option("--grid-ghz", grid_ghz, "slot width");
  app.add_option("--gb-ghz", gb_ghz, "guard band");
  app.add_option("--m", modulation, "modulation bits per symbol");
  app.add_option("--holding", holding, "mean holding time 1/mu, seconds");
  app.add_option("--warmup", warmup, "warm-up window in units of 1/mu");
  app.add_flag("--continuous-demand", continuous_demand,
               "demands uniform over [1,B] Gbps instead of slot-quantized");

  auto* bench_cmd = app.add_subcommand("bench", "per-request routing time per policy");
  double bench_rho = 20.0;
  double bench_cap = 100.0;
  std::string bench_csv;
  bench_cmd->add_option("--rho", bench_rho, "offered load for the bench run");
  bench_cmd->add_option("--B", bench_cap, "demand cap for the bench run");
  bench_cmd->add_option("--csv", bench_csv, "also write the report as CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    eonsim::SweepSpec spec;
    if (!preset.empty()) {
      eonsim::apply_preset(spec, preset);
    }
    spec.topology_path = topology;
    spec.policies = parse_policies(policy_names);
    if (!rhos.empty()) spec.rhos = rhos;
    if (!caps.empty()) spec.demand_caps = caps;
    spec.k = k;
    if (!seeds.empty()) spec.seeds = seeds;
    if (opt_requests->count() > 0) spec.total_requests = requests;
    spec.out_dir = out_dir;
    spec.format = eonsim::parse_format(format);
    spec.workers = workers;
    spec.write_raw = raw;
    spec.debug_checks = debug_checks;
    spec.grid_ghz = grid_ghz;
    spec.guard_band_ghz = gb_ghz;
    spec.modulation_bits = modulation;
    spec.mean_holding_time = holding;
    spec.warmup_multiplier = warmup;
    spec.demand_model = continuous_demand ? eonsim::DemandModel::ContinuousUniform
                                          : eonsim::DemandModel::SlotQuantized;

    if (bench_cmd->parsed()) {
      if (spec.total_requests == 200'000 && opt_requests->count() == 0) {
        spec.total_requests = 5'000;
      }
      const auto rows = eonsim::bench_policies(spec, bench_rho, bench_cap, &std::cerr);
      eonsim::write_bench_report(std::cout, rows);
      if (!bench_csv.empty()) {
        std::ofstream out(bench_csv);
        eonsim::write_bench_report(out, rows);
      }
      return 0;
    }

    const eonsim::SweepOutcome outcome = eonsim::run_sweep(spec, &std::cout);
    if (outcome.failed_cells > 0) {
      std::cerr << outcome.failed_cells << " replica(s) aborted with engine errors\n";
      return 2;
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
