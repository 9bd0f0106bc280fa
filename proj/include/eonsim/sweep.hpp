#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "eonsim/metrics.hpp"

namespace eonsim {

enum class OutputFormat { Csv, Json, Both };

OutputFormat parse_format(std::string_view name);  // csv|json|both

/// Full experiment grid: every (policy, rho, B, seed) cell is one
/// simulation replica. Defaults mirror the usual flex-grid settings:
/// 12.5 GHz grid, 10 GHz guard band, BPSK, k = 10, loads 2..30 Erlang.
struct SweepSpec {
  std::filesystem::path topology_path;
  std::vector<PolicyKind> policies{kAllPolicies, kAllPolicies + 6};
  std::vector<double> rhos{2, 4, 6, 8, 10, 12, 14, 16, 18, 20, 22, 24, 26, 28, 30};
  std::vector<double> demand_caps{100.0, 200.0};
  int k = 10;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  std::size_t total_requests = 200'000;
  std::filesystem::path out_dir = "results";
  OutputFormat format = OutputFormat::Both;
  unsigned workers = 0;  // 0 = hardware concurrency
  bool write_raw = false;
  bool debug_checks = false;
  bool progress = true;

  double grid_ghz = 12.5;
  double guard_band_ghz = 10.0;
  int modulation_bits = 1;
  double mean_holding_time = 100.0;
  double warmup_multiplier = 3.0;
  DemandModel demand_model = DemandModel::SlotQuantized;
  std::size_t max_frontier = 1'000'000;

  void validate() const;  // throws config_error
};

/// desk: 2e4 requests, 5 seeds — the whole grid runs in minutes.
/// paper: 2e5 requests.
void apply_preset(SweepSpec& spec, std::string_view name);

struct CellResult {
  PolicyKind policy{};
  double rho = 0.0;
  double demand_max_gbps = 0.0;
  std::uint64_t seed = 0;
  RunSummary summary;
  std::uint64_t frontier_overflows = 0;
  std::uint64_t post_route_failures = 0;
  bool failed = false;       // engine violation; error holds the message
  std::string error;
};

/// Runs one simulation per grid cell on a worker pool and returns results
/// in deterministic grid order regardless of scheduling.
std::vector<CellResult> run_cells(const Network& topology, const SweepSpec& spec,
                                  std::ostream* progress);

struct SweepOutcome {
  std::vector<MetricPoint> points;
  int failed_cells = 0;
  std::filesystem::path csv_path;
  std::filesystem::path json_path;
};

/// Full sweep: simulate, aggregate seeds per (policy, rho, B), write
/// metrics.csv / metrics.json under spec.out_dir. Failed cells are skipped
/// in the aggregation and counted; results of healthy cells are preserved.
SweepOutcome run_sweep(const SweepSpec& spec, std::ostream* progress = nullptr);

struct BenchRow {
  PolicyKind policy{};
  double median_us = 0.0;
  double p90_us = 0.0;
  double mean_us = 0.0;
  std::size_t samples = 0;
};

/// Wall-clock routing time per request for each policy at one load point,
/// run on the same traffic. Reports medians; ordering is empirical, not
/// asserted.
std::vector<BenchRow> bench_policies(const SweepSpec& spec, double rho, double demand_cap,
                                     std::ostream* progress = nullptr);

void write_bench_report(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace eonsim
