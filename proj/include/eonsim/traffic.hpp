#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "eonsim/rng.hpp"
#include "eonsim/rsa.hpp"

namespace eonsim {

enum class DemandModel {
  // Uniform over whole data-slot counts 1..B/(grid*m); demands below one
  // slot are indistinguishable after the ceiling anyway.
  SlotQuantized,
  // Uniform over [1, B] Gbps.
  ContinuousUniform,
};

struct SimConfig {
  PolicyKind policy = PolicyKind::Type2;
  int k = 10;
  double grid_ghz = 12.5;
  double guard_band_ghz = 10.0;
  int modulation_bits = 1;
  double demand_max_gbps = 100.0;      // B
  DemandModel demand_model = DemandModel::SlotQuantized;
  double offered_load_per_node = 10.0; // rho, Erlang
  double mean_holding_time = 100.0;    // 1/mu, seconds
  std::size_t total_requests = 200'000;
  std::uint64_t seed = 1;
  double warmup_multiplier = 3.0;      // warm-up ends at warmup_multiplier / mu
  SearchLimits limits;
  // Extra cross-checks of the whole spectrum state against the live
  // assignment set, every cross_check_interval events.
  bool debug_checks = false;
  std::size_t cross_check_interval = 1024;
  bool collect_route_timings = false;

  void validate(int vertex_count) const;  // throws config_error
};

/// Draws the dynamic traffic: Poisson arrivals for the whole network with
/// rate lambda = rho_per_node * V * mu (so the per-node offered load is
/// rho), source/destination uniform over ordered distinct pairs, demands
/// per DemandModel, holding times exponential with mean 1/mu. Four
/// independent sub-streams: arrivals, pairs, demands, holding times.
class TrafficGenerator {
 public:
  TrafficGenerator(const SimConfig& config, int vertex_count);

  struct Draw {
    LightpathRequest request;
    double next_arrival_time;
  };

  /// Time of the first arrival, drawn from the arrival stream.
  double first_arrival();

  /// Request arriving at `clock` plus the time of the arrival after it.
  Draw next(double clock);

  double mean_interarrival() const { return mean_interarrival_; }

 private:
  const SimConfig& config_;
  int vertex_count_;
  double mean_interarrival_;
  int max_data_slots_;
  std::int64_t next_id_ = 0;
  std::mt19937_64 arrivals_;
  std::mt19937_64 pairs_;
  std::mt19937_64 demands_;
  std::mt19937_64 holdings_;
};

struct RequestOutcome {
  std::int64_t id = 0;
  double arrival_time = 0.0;
  int s = 0;
  int d = 0;
  int demanded_slots = 0;
  bool served = false;
  bool warmup = false;
  std::vector<int> path;  // empty when blocked
  SlotRange range;        // meaningful when served
};

struct RunResult {
  std::vector<RequestOutcome> requests;
  std::uint64_t served = 0;
  std::uint64_t blocked = 0;
  std::uint64_t frontier_overflows = 0;
  // Type II/III assignments that failed at commit; stays 0 by construction,
  // a violation aborts the run instead.
  std::uint64_t post_route_failures = 0;
  double warmup_time = 0.0;
  double last_arrival_time = 0.0;
  double end_time = 0.0;
  // Time-averaged fraction of real slots occupied, integrated between every
  // pair of events over [warmup_time, last_arrival_time].
  double utilization = 0.0;
  double utilization_window = 0.0;
  bool spectrum_restored = false;
  std::vector<std::uint32_t> route_times_ns;  // filled when collect_route_timings
};

/// Runs the discrete-event loop: arrivals route-and-commit (or block),
/// departures release; the run drains all departures after the last
/// arrival. The topology argument is copied; the replica owns its state.
RunResult run(const Network& topology, const SimConfig& config);

/// Same event loop fed with a fixed arrival list instead of drawn traffic
/// (arrival_time/holding_time must be set; list must be time-ordered).
RunResult run_scripted(const Network& topology, const SimConfig& config,
                       const std::vector<LightpathRequest>& arrivals);

/// Newline-delimited record per request:
///   id arrival_time s d demanded_slots path-or-BLOCKED range
/// e.g. "7 12.345678 3 9 5 3-5-9 120+5" or "8 12.900000 1 2 9 BLOCKED -".
void write_raw_records(std::ostream& out, const RunResult& result);

}  // namespace eonsim
