// Acceptance suite: every criterion prints one PASS/FAIL line; the binary
// exits nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "eonsim/sweep.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

namespace fs = std::filesystem;
using namespace eonsim;

namespace {

const fs::path kDataDir = EONSIM_DATA_DIR;

struct CheckFailure {
  std::string message;
};

void require(bool condition, const std::string& message) {
  if (!condition) throw CheckFailure{message};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// ---- shared grids -------------------------------------------------------

struct GridPoint {
  double mean = 0.0;
  double half_width = 0.0;
};

using PolicyRhoTable = std::map<std::pair<std::string, double>, GridPoint>;

struct GridRuns {
  PolicyRhoTable bp;
  std::uint64_t post_route_failures = 0;
  std::uint64_t failed_cells = 0;
};

GridRuns run_grid(const Network& topology, const std::vector<PolicyKind>& policies,
                  const std::vector<double>& rhos, std::size_t requests,
                  bool debug_checks) {
  SweepSpec spec;
  spec.policies = policies;
  spec.rhos = rhos;
  spec.demand_caps = {100.0};
  spec.k = 10;
  spec.seeds = {1, 2, 3, 4, 5};
  spec.total_requests = requests;
  spec.debug_checks = debug_checks;
  spec.progress = false;

  const auto cells = run_cells(topology, spec, nullptr);

  GridRuns grid;
  for (PolicyKind policy : policies) {
    for (double rho : rhos) {
      std::vector<RunSummary> summaries;
      for (const CellResult& cell : cells) {
        if (cell.policy != policy || cell.rho != rho) continue;
        if (cell.failed) {
          ++grid.failed_cells;
          continue;
        }
        grid.post_route_failures += cell.post_route_failures;
        summaries.push_back(cell.summary);
      }
      if (summaries.empty()) continue;
      const MetricPoint point =
          aggregate(std::string(to_string(policy)), rho, 100.0, 10, summaries);
      grid.bp[{std::string(to_string(policy)), rho}] = {point.bp, point.bp_hw};
    }
  }
  return grid;
}

// ---- criteria -----------------------------------------------------------

std::string criterion_fig3() {
  const Network uniform =
      test_helpers::chain_with_bitmaps({"00111001", "11111001", "10011001"});
  const auto uniform_search = candidate_paths_all(uniform, 0, 3, 1);
  require(uniform_search.paths.size() == 1, "uniform chain: path not found");
  const std::string uniform_bits = uniform_search.paths[0].bitmap.to_string();
  require(uniform_bits == "00011001",
          "uniform chain bitmap is " + uniform_bits + ", want 00011001");

  const Network padded =
      test_helpers::chain_with_bitmaps({"00111", "111110", "100110011"});
  require(padded.slot_count() == 9, "padded chain: normalized length not 9");
  const auto padded_search = candidate_paths_all(padded, 0, 3, 1);
  require(padded_search.paths.size() == 1, "padded chain: path not found");
  const std::string padded_bits = padded_search.paths[0].bitmap.to_string();
  require(padded_bits == "000110000",
          "padded chain bitmap is " + padded_bits + ", want 000110000");
  return "uniform 00011001, padded 000110000";
}

std::string criterion_slot_arithmetic() {
  require(slot_count(4000.0, 12.5) == 320, "4 THz / 12.5 GHz != 320");
  require(required_slots(100.0, 12.5, 1, 0.0) == 8, "100 Gbps != 8 data slots");
  require(required_slots(200.0, 12.5, 1, 0.0) == 16, "200 Gbps != 16 data slots");
  require(required_slots(100.0, 12.5, 1, 10.0) == 9, "100 Gbps + GB != 9 slots");
  require(required_slots(200.0, 12.5, 1, 10.0) == 17, "200 Gbps + GB != 17 slots");
  return "320 slots; 8/16 data slots; +1 guard slot";
}

std::string criterion_oracle_equivalence() {
  std::mt19937_64 rng(987654321);
  int graphs = 0;
  int mismatches = 0;
  constexpr std::size_t kNoLimit = 1'000'000'000;

  while (graphs < 200) {
    const int vertices = 2 + static_cast<int>(rng() % 5);
    std::vector<EdgeSpec> specs;
    for (int u = 0; u < vertices; ++u) {
      for (int v = u + 1; v < vertices; ++v) {
        if (rng() % 100 < 55) {
          const double slots = 2.0 + static_cast<double>(rng() % 11);
          specs.push_back({u, v, 1.0 + static_cast<double>(rng() % 9), slots});
        }
      }
    }
    if (specs.empty()) continue;
    Network net = test_helpers::unit_grid_network(vertices, specs);
    for (std::size_t e = 0; e < net.edge_count(); ++e) {
      Edge& edge = net.edge(e);
      for (int i = 0; i < edge.real_slot_count; ++i) {
        if (rng() % 100 < 35) edge.bitmap.set(static_cast<std::size_t>(i), false);
      }
    }
    const int s = static_cast<int>(rng() % static_cast<std::uint64_t>(vertices));
    int d = s;
    while (d == s) d = static_cast<int>(rng() % static_cast<std::uint64_t>(vertices));
    ++graphs;

    std::vector<std::vector<int>> adjacency(static_cast<std::size_t>(vertices));
    for (const Edge& edge : net.edges()) {
      adjacency[static_cast<std::size_t>(edge.u)].push_back(edge.v);
      adjacency[static_cast<std::size_t>(edge.v)].push_back(edge.u);
    }
    const auto path_bits = [&net](const std::vector<int>& nodes) {
      std::string bits(static_cast<std::size_t>(net.slot_count()), '1');
      for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        bits = oracle::bit_and(bits,
                               net.edge_between(nodes[i], nodes[i + 1]).bitmap.to_string());
      }
      return bits;
    };

    std::set<std::vector<int>> expected_all;
    for (const auto& nodes : oracle::enumerate_simple_paths(adjacency, s, d)) {
      if (oracle::popcount(path_bits(nodes)) > 0) expected_all.insert(nodes);
    }
    std::set<std::vector<int>> got_all;
    for (const auto& path : candidate_paths_all(net, s, d, kNoLimit).paths) {
      got_all.insert(path.nodes);
    }
    if (got_all != expected_all) ++mismatches;

    const std::size_t required = 1 + rng() % 4;
    std::set<std::vector<int>> expected_feasible;
    for (const auto& nodes : expected_all) {
      if (oracle::max_run(path_bits(nodes)) >= required) expected_feasible.insert(nodes);
    }
    std::set<std::vector<int>> got_feasible;
    for (const auto& path :
         candidate_paths_feasible(net, s, d, required, kNoLimit).paths) {
      got_feasible.insert(path.nodes);
    }
    if (got_feasible != expected_feasible) ++mismatches;
  }
  require(mismatches == 0,
          std::to_string(mismatches) + " mismatches against brute-force enumeration");
  return "200 random graphs, zero mismatches";
}

std::string criterion_safety(const Network& nsfnet) {
  std::ostringstream detail;
  for (PolicyKind policy : kAllPolicies) {
    SimConfig config;
    config.policy = policy;
    config.k = 10;
    config.demand_max_gbps = 100.0;
    config.offered_load_per_node = 20.0;
    config.total_requests = 20'000;
    config.seed = 1;
    config.debug_checks = true;
    config.cross_check_interval = 512;
    const auto start = std::chrono::steady_clock::now();
    const RunResult result = run(nsfnet, config);  // throws on any violation
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    require(result.served + result.blocked == config.total_requests,
            "request conservation broken");
    require(result.spectrum_restored,
            std::string(to_string(policy)) + ": spectrum not restored after drain");
    require(seconds < 60.0, std::string(to_string(policy)) + ": run exceeded one minute");
    detail << to_string(policy) << " ";
  }
  return "zero violations, spectrum restored (" + detail.str() + ")";
}

std::string criterion_ordering(const GridRuns& grid) {
  std::ostringstream detail;
  for (double rho : {20.0, 24.0, 28.0}) {
    const GridPoint sp = grid.bp.at({"sp_km", rho});
    for (const std::string other : {"type2", "type3"}) {
      const GridPoint adaptive = grid.bp.at({other, rho});
      const double sp_low = sp.mean - sp.half_width;
      const double adaptive_high = adaptive.mean + adaptive.half_width;
      char buf[160];
      std::snprintf(buf, sizeof(buf),
                    "rho=%g sp_km=%.4f+-%.4f %s=%.4f+-%.4f", rho, sp.mean,
                    sp.half_width, other.c_str(), adaptive.mean, adaptive.half_width);
      require(sp_low > adaptive_high,
              std::string("confidence intervals overlap: ") + buf);
    }
    detail << "rho=" << rho << " ok; ";
  }
  return detail.str();
}

std::string criterion_apriori(const GridRuns& a, const GridRuns& b) {
  require(a.failed_cells + b.failed_cells == 0, "some replicas aborted");
  const std::uint64_t failures = a.post_route_failures + b.post_route_failures;
  require(failures == 0,
          std::to_string(failures) + " post-routing commit failures for type2/type3");
  return "0 post-routing failures across all runs";
}

std::string criterion_monotonicity(const GridRuns& grid,
                                   const std::vector<double>& rhos) {
  int inversions_within_noise = 0;
  for (PolicyKind policy : kAllPolicies) {
    const std::string name(to_string(policy));
    for (std::size_t i = 0; i + 1 < rhos.size(); ++i) {
      const GridPoint lo = grid.bp.at({name, rhos[i]});
      const GridPoint hi = grid.bp.at({name, rhos[i + 1]});
      const double inversion = lo.mean - hi.mean;
      if (inversion <= 0) continue;  // nondecreasing
      const double tolerance =
          std::sqrt(lo.half_width * lo.half_width + hi.half_width * hi.half_width);
      char buf[160];
      std::snprintf(buf, sizeof(buf), "%s: bp(%g)=%.5f > bp(%g)=%.5f beyond +-%.5f",
                    name.c_str(), rhos[i], lo.mean, rhos[i + 1], hi.mean, tolerance);
      require(inversion < tolerance, buf);
      ++inversions_within_noise;
    }
  }
  return "nondecreasing for all 6 policies (" +
         std::to_string(inversions_within_noise) + " single-step inversions within noise)";
}

std::string criterion_determinism() {
  const fs::path dir_a = fs::temp_directory_path() / "eonsim_acceptance_det_a";
  const fs::path dir_b = fs::temp_directory_path() / "eonsim_acceptance_det_b";
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);

  SweepSpec spec;
  spec.topology_path = kDataDir / "nsfnet.topo";
  spec.policies = {PolicyKind::Type2, PolicyKind::SpKm};
  spec.rhos = {12.0, 20.0};
  spec.demand_caps = {100.0};
  spec.seeds = {1, 2};
  spec.total_requests = 2'000;
  spec.workers = 2;
  spec.progress = false;
  spec.out_dir = dir_a;

  const auto first = run_sweep(spec);
  spec.out_dir = dir_b;
  const auto second = run_sweep(spec);

  require(slurp(first.csv_path) == slurp(second.csv_path), "metrics.csv differs");
  require(slurp(first.json_path) == slurp(second.json_path), "metrics.json differs");
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
  return "metrics.csv and metrics.json byte-identical across two sweeps";
}

// 99th percentile of chi-square via the Wilson-Hilferty approximation.
double chi_square_crit_99(int dof) {
  const double z = 2.3263478740408408;
  const double k = static_cast<double>(dof);
  const double term = 1.0 - 2.0 / (9.0 * k) + z * std::sqrt(2.0 / (9.0 * k));
  return k * term * term * term;
}

std::string criterion_traffic_stats(const Network& nsfnet) {
  SimConfig config;
  config.offered_load_per_node = 10.0;
  config.mean_holding_time = 100.0;
  config.demand_max_gbps = 100.0;
  config.seed = 20240808;
  TrafficGenerator generator(config, nsfnet.vertex_count());

  const int draws = 100'000;
  const int vertices = nsfnet.vertex_count();
  std::vector<std::uint64_t> pair_counts(
      static_cast<std::size_t>(vertices) * static_cast<std::size_t>(vertices), 0);

  double clock = generator.first_arrival();
  double interarrival_sum = clock;
  double holding_sum = 0.0;
  for (int i = 0; i < draws; ++i) {
    const auto draw = generator.next(clock);
    interarrival_sum += draw.next_arrival_time - clock;
    clock = draw.next_arrival_time;
    holding_sum += draw.request.holding_time;
    pair_counts[static_cast<std::size_t>(draw.request.s) *
                    static_cast<std::size_t>(vertices) +
                static_cast<std::size_t>(draw.request.d)]++;
  }

  const double expected_interarrival = generator.mean_interarrival();
  const double interarrival_mean = interarrival_sum / (draws + 1);
  require(std::abs(interarrival_mean - expected_interarrival) <
              0.01 * expected_interarrival,
          "inter-arrival mean off by more than 1%");
  const double holding_mean = holding_sum / draws;
  require(std::abs(holding_mean - config.mean_holding_time) <
              0.01 * config.mean_holding_time,
          "holding-time mean off by more than 1%");

  const int pairs = vertices * (vertices - 1);
  const double expected = static_cast<double>(draws) / pairs;
  double stat = 0.0;
  for (int s = 0; s < vertices; ++s) {
    for (int d = 0; d < vertices; ++d) {
      if (s == d) continue;
      const double observed = static_cast<double>(
          pair_counts[static_cast<std::size_t>(s) * static_cast<std::size_t>(vertices) +
                      static_cast<std::size_t>(d)]);
      stat += (observed - expected) * (observed - expected) / expected;
    }
  }
  const double crit = chi_square_crit_99(pairs - 1);
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "means within 1%%; chi-square %.1f < %.1f (dof %d, alpha 0.01)", stat,
                crit, pairs - 1);
  require(stat < crit, std::string("pair uniformity rejected: ") + buf);
  return buf;
}

}  // namespace

int main() {
  const Network nsfnet = Network::load(kDataDir / "nsfnet.topo");
  const std::vector<double> mono_rhos{2, 6, 10, 14, 18, 22, 26, 30};

  // The two simulation grids are shared between criteria 5/6/7 and built on
  // first use so the cheap criteria report immediately.
  std::optional<GridRuns> ordering_grid;
  std::optional<GridRuns> mono_grid;
  const auto get_ordering_grid = [&]() -> const GridRuns& {
    if (!ordering_grid) {
      std::cerr << "  (running sp_km/type2/type3 x rho {20,24,28} x 5 seeds, "
                   "2e4 requests each...)\n";
      ordering_grid =
          run_grid(nsfnet, {PolicyKind::SpKm, PolicyKind::Type2, PolicyKind::Type3},
                   {20.0, 24.0, 28.0}, 20'000, false);
    }
    return *ordering_grid;
  };
  const auto get_mono_grid = [&]() -> const GridRuns& {
    if (!mono_grid) {
      std::cerr << "  (running 6 policies x rho {2,6,...,30} x 5 seeds, "
                   "2e4 requests each...)\n";
      mono_grid = run_grid(nsfnet, {kAllPolicies, kAllPolicies + 6}, mono_rhos,
                           20'000, false);
    }
    return *mono_grid;
  };

  struct Criterion {
    int number;
    std::string title;
    std::function<std::string()> check;
  };
  const std::vector<Criterion> criteria{
      {1, "chain path bitmaps reproduced bit-for-bit",
       [] { return criterion_fig3(); }},
      {2, "slot arithmetic exact",
       [] { return criterion_slot_arithmetic(); }},
      {3, "candidate searches equal brute-force enumeration",
       [] { return criterion_oracle_equivalence(); }},
      {4, "constraint safety on desk-scale nsfnet runs",
       [&] { return criterion_safety(nsfnet); }},
      {5, "sp_km blocks more than type2/type3 with separated CIs",
       [&] { return criterion_ordering(get_ordering_grid()); }},
      {6, "type2/type3 never fail after routing",
       [&] { return criterion_apriori(get_ordering_grid(), get_mono_grid()); }},
      {7, "blocking nondecreasing in offered load",
       [&] { return criterion_monotonicity(get_mono_grid(), mono_rhos); }},
      {8, "byte-identical sweep outputs",
       [] { return criterion_determinism(); }},
      {9, "traffic statistics match the configured model",
       [&] { return criterion_traffic_stats(nsfnet); }},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    std::string verdict = "PASS";
    std::string detail;
    try {
      detail = criterion.check();
    } catch (const CheckFailure& failure) {
      verdict = "FAIL";
      detail = failure.message;
      ++failures;
    } catch (const std::exception& e) {
      verdict = "FAIL";
      detail = std::string("exception: ") + e.what();
      ++failures;
    }
    std::printf("[%d/9] %s  %s — %s\n", criterion.number, verdict.c_str(),
                criterion.title.c_str(), detail.c_str());
    std::fflush(stdout);
  }

  if (failures == 0) {
    std::printf("acceptance: all 9 criteria passed\n");
  } else {
    std::printf("acceptance: %d criteria FAILED\n", failures);
  }
  return failures == 0 ? 0 : 1;
}
