#include "eonsim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace eonsim {

OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  if (name == "both") return OutputFormat::Both;
  throw config_error("unknown format: " + std::string(name) + " (want csv|json|both)");
}

void SweepSpec::validate() const {
  if (policies.empty() || rhos.empty() || demand_caps.empty() || seeds.empty()) {
    throw config_error("policies, rho, B and seeds lists must be nonempty");
  }
  for (double rho : rhos) {
    if (rho <= 0.0) throw config_error("offered load must be positive");
  }
  for (double cap : demand_caps) {
    if (cap < grid_ghz * modulation_bits) {
      throw config_error("demand cap below one slot");
    }
  }
  if (total_requests < 1) {
    throw config_error("total_requests must be at least 1");
  }
  if (k < 1) {
    throw config_error("path budget k must be at least 1");
  }
}

void apply_preset(SweepSpec& spec, std::string_view name) {
  if (name == "desk") {
    spec.total_requests = 20'000;
    spec.seeds = {1, 2, 3, 4, 5};
  } else if (name == "paper") {
    spec.total_requests = 200'000;
  } else if (!name.empty()) {
    throw config_error("unknown preset: " + std::string(name) + " (want desk|paper)");
  }
}

namespace {

SimConfig cell_config(const SweepSpec& spec, PolicyKind policy, double rho,
                      double demand_cap, std::uint64_t seed) {
  SimConfig config;
  config.policy = policy;
  config.k = spec.k;
  config.grid_ghz = spec.grid_ghz;
  config.guard_band_ghz = spec.guard_band_ghz;
  config.modulation_bits = spec.modulation_bits;
  config.demand_max_gbps = demand_cap;
  config.demand_model = spec.demand_model;
  config.offered_load_per_node = rho;
  config.mean_holding_time = spec.mean_holding_time;
  config.total_requests = spec.total_requests;
  config.seed = seed;
  config.warmup_multiplier = spec.warmup_multiplier;
  config.limits.max_frontier = spec.max_frontier;
  config.debug_checks = spec.debug_checks;
  return config;
}

std::string cell_label(const CellResult& cell) {
  std::ostringstream label;
  label << to_string(cell.policy) << " rho=" << cell.rho << " B=" << cell.demand_max_gbps
        << " seed=" << cell.seed;
  return label.str();
}

std::filesystem::path raw_log_path(const SweepSpec& spec, const CellResult& cell) {
  std::ostringstream name;
  name << "raw_" << to_string(cell.policy) << "_rho" << cell.rho << "_B"
       << cell.demand_max_gbps << "_seed" << cell.seed << ".log";
  return spec.out_dir / name.str();
}

}  // namespace

std::vector<CellResult> run_cells(const Network& topology, const SweepSpec& spec,
                                  std::ostream* progress) {
  spec.validate();

  std::vector<CellResult> cells;
  for (PolicyKind policy : spec.policies) {
    for (double rho : spec.rhos) {
      for (double cap : spec.demand_caps) {
        for (std::uint64_t seed : spec.seeds) {
          CellResult cell;
          cell.policy = policy;
          cell.rho = rho;
          cell.demand_max_gbps = cap;
          cell.seed = seed;
          cells.push_back(std::move(cell));
        }
      }
    }
  }

  unsigned workers = spec.workers != 0 ? spec.workers : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(cells.size())));

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex io_mutex;

  const auto worker = [&] {
    for (;;) {
      const std::size_t index = next.fetch_add(1);
      if (index >= cells.size()) return;
      CellResult& cell = cells[index];
      try {
        const SimConfig config =
            cell_config(spec, cell.policy, cell.rho, cell.demand_max_gbps, cell.seed);
        const RunResult result = run(topology, config);
        if (spec.write_raw) {
          std::ofstream raw(raw_log_path(spec, cell));
          write_raw_records(raw, result);
        }
        cell.summary = summarize(result);
        cell.frontier_overflows = result.frontier_overflows;
        cell.post_route_failures = result.post_route_failures;
      } catch (const std::exception& e) {
        cell.failed = true;
        cell.error = e.what();
      }
      const std::size_t finished = done.fetch_add(1) + 1;
      if (progress) {
        std::lock_guard<std::mutex> lock(io_mutex);
        *progress << "[" << finished << "/" << cells.size() << "] " << cell_label(cell);
        if (cell.failed) {
          *progress << " FAILED: " << cell.error;
        } else {
          char bp[32];
          std::snprintf(bp, sizeof(bp), "%.5f", cell.summary.bp);
          *progress << " bp=" << bp;
          if (cell.frontier_overflows > 0) {
            *progress << " frontier_overflows=" << cell.frontier_overflows;
          }
        }
        *progress << '\n';
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  return cells;
}

namespace {

void print_final_table(std::ostream& out, const SweepSpec& spec,
                       const std::vector<MetricPoint>& points) {
  for (double cap : spec.demand_caps) {
    out << "\nblocking probability, B=" << cap << " Gbps (policy x rho)\n";
    out << "policy   ";
    for (double rho : spec.rhos) {
      char cell[16];
      std::snprintf(cell, sizeof(cell), "%8g", rho);
      out << cell;
    }
    out << '\n';
    for (PolicyKind policy : spec.policies) {
      char name[16];
      std::snprintf(name, sizeof(name), "%-9s", std::string(to_string(policy)).c_str());
      out << name;
      for (double rho : spec.rhos) {
        const auto it = std::find_if(points.begin(), points.end(), [&](const MetricPoint& p) {
          return p.policy == to_string(policy) && p.rho == rho && p.demand_max_gbps == cap;
        });
        char cell[16];
        if (it != points.end()) {
          std::snprintf(cell, sizeof(cell), "%8.4f", it->bp);
        } else {
          std::snprintf(cell, sizeof(cell), "%8s", "-");
        }
        out << cell;
      }
      out << '\n';
    }
  }
}

}  // namespace

SweepOutcome run_sweep(const SweepSpec& spec, std::ostream* progress) {
  spec.validate();
  const Network topology = Network::load(spec.topology_path);
  std::filesystem::create_directories(spec.out_dir);

  const std::vector<CellResult> cells =
      run_cells(topology, spec, spec.progress ? progress : nullptr);

  SweepOutcome outcome;
  for (PolicyKind policy : spec.policies) {
    for (double rho : spec.rhos) {
      for (double cap : spec.demand_caps) {
        std::vector<RunSummary> summaries;
        for (const CellResult& cell : cells) {
          if (cell.policy != policy || cell.rho != rho ||
              cell.demand_max_gbps != cap) {
            continue;
          }
          if (cell.failed) continue;
          summaries.push_back(cell.summary);
        }
        if (summaries.empty()) continue;
        outcome.points.push_back(aggregate(std::string(to_string(policy)), rho, cap,
                                           spec.k, summaries));
      }
    }
  }
  for (const CellResult& cell : cells) {
    if (cell.failed) ++outcome.failed_cells;
  }

  if (spec.format == OutputFormat::Csv || spec.format == OutputFormat::Both) {
    outcome.csv_path = spec.out_dir / "metrics.csv";
    std::ofstream csv(outcome.csv_path);
    write_csv(csv, outcome.points);
  }
  if (spec.format == OutputFormat::Json || spec.format == OutputFormat::Both) {
    outcome.json_path = spec.out_dir / "metrics.json";
    std::ofstream json(outcome.json_path);
    write_json(json, outcome.points);
  }

  if (progress) {
    print_final_table(*progress, spec, outcome.points);
    if (outcome.failed_cells > 0) {
      *progress << "\n" << outcome.failed_cells
                << " cell(s) failed; partial results written\n";
    }
  }
  return outcome;
}

std::vector<BenchRow> bench_policies(const SweepSpec& spec, double rho,
                                     double demand_cap, std::ostream* progress) {
  const Network topology = Network::load(spec.topology_path);
  std::vector<BenchRow> rows;
  for (PolicyKind policy : spec.policies) {
    SimConfig config = cell_config(spec, policy, rho, demand_cap,
                                   spec.seeds.empty() ? 1 : spec.seeds.front());
    config.collect_route_timings = true;
    const RunResult result = run(topology, config);

    std::vector<std::uint32_t> times = result.route_times_ns;
    std::sort(times.begin(), times.end());
    BenchRow row;
    row.policy = policy;
    row.samples = times.size();
    if (!times.empty()) {
      row.median_us = times[times.size() / 2] / 1000.0;
      row.p90_us = times[times.size() * 9 / 10] / 1000.0;
      double total = 0.0;
      for (std::uint32_t t : times) total += t;
      row.mean_us = total / static_cast<double>(times.size()) / 1000.0;
    }
    rows.push_back(row);
    if (progress) {
      *progress << "benched " << to_string(policy) << ": median "
                << row.median_us << " us over " << row.samples << " requests\n";
    }
  }
  return rows;
}

void write_bench_report(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "policy,median_us,p90_us,mean_us,samples\n";
  for (const BenchRow& row : rows) {
    char line[128];
    std::snprintf(line, sizeof(line), "%s,%.3f,%.3f,%.3f,%zu\n",
                  std::string(to_string(row.policy)).c_str(), row.median_us,
                  row.p90_us, row.mean_us, row.samples);
    out << line;
  }
}

}  // namespace eonsim
