#include "eonsim/traffic.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <limits>
#include <ostream>
#include <queue>
#include <unordered_map>
#include <utility>

namespace eonsim {

void SimConfig::validate(int vertex_count) const {
  if (vertex_count < 2) {
    throw config_error("simulation needs at least two vertices");
  }
  if (offered_load_per_node <= 0.0) {
    throw config_error("offered load must be positive");
  }
  if (mean_holding_time <= 0.0) {
    throw config_error("mean holding time must be positive");
  }
  if (total_requests < 1) {
    throw config_error("total_requests must be at least 1");
  }
  if (grid_ghz <= 0.0 || modulation_bits < 1) {
    throw config_error("grid size and modulation level must be positive");
  }
  if (guard_band_ghz < 0.0) {
    throw config_error("guard band cannot be negative");
  }
  if (demand_max_gbps < grid_ghz * modulation_bits) {
    throw config_error("demand cap below one slot");
  }
  if (k < 1) {
    throw config_error("path budget k must be at least 1");
  }
  if (warmup_multiplier < 0.0) {
    throw config_error("warmup multiplier cannot be negative");
  }
}

namespace {

enum StreamId : std::uint64_t {
  kArrivalStream = 0,
  kPairStream = 1,
  kDemandStream = 2,
  kHoldingStream = 3,
};

}  // namespace

TrafficGenerator::TrafficGenerator(const SimConfig& config, int vertex_count)
    : config_(config),
      vertex_count_(vertex_count),
      arrivals_(make_stream(config.seed, kArrivalStream)),
      pairs_(make_stream(config.seed, kPairStream)),
      demands_(make_stream(config.seed, kDemandStream)),
      holdings_(make_stream(config.seed, kHoldingStream)) {
  config.validate(vertex_count);
  // One Poisson process for the whole network; per-node offered load rho
  // means lambda = rho * V * mu.
  mean_interarrival_ = config.mean_holding_time /
                       (config.offered_load_per_node * static_cast<double>(vertex_count));
  max_data_slots_ = slot_count(config.demand_max_gbps,
                               config.grid_ghz * config.modulation_bits);
}

double TrafficGenerator::first_arrival() {
  return exponential_draw(arrivals_, mean_interarrival_);
}

TrafficGenerator::Draw TrafficGenerator::next(double clock) {
  LightpathRequest request;
  request.id = next_id_++;
  request.arrival_time = clock;
  request.k = config_.k;

  const auto v = static_cast<std::uint64_t>(vertex_count_);
  const std::uint64_t pair = uniform_index(pairs_, v * (v - 1));
  const auto s = static_cast<int>(pair / (v - 1));
  const auto rest = static_cast<int>(pair % (v - 1));
  request.s = s;
  request.d = rest + (rest >= s ? 1 : 0);

  if (config_.demand_model == DemandModel::SlotQuantized) {
    const std::uint64_t slots =
        1 + uniform_index(demands_, static_cast<std::uint64_t>(max_data_slots_));
    request.demanded_gbps =
        static_cast<double>(slots) * config_.grid_ghz * config_.modulation_bits;
  } else {
    request.demanded_gbps = 1.0 + u01(demands_) * (config_.demand_max_gbps - 1.0);
  }
  request.required_slots = required_slots(request.demanded_gbps, config_.grid_ghz,
                                          config_.modulation_bits, config_.guard_band_ghz);
  request.holding_time = exponential_draw(holdings_, config_.mean_holding_time);

  return Draw{std::move(request), clock + exponential_draw(arrivals_, mean_interarrival_)};
}

namespace {

struct DepartureEvent {
  double time = 0.0;
  std::uint64_t seq = 0;
  std::int64_t request_id = 0;
};

struct DepartureLater {
  bool operator()(const DepartureEvent& a, const DepartureEvent& b) const {
    if (a.time != b.time) return a.time > b.time;
    return a.seq > b.seq;
  }
};

class EventLoop {
 public:
  EventLoop(const Network& topology, const SimConfig& config)
      : net_(topology), config_(config) {
    config.validate(net_.vertex_count());
    initial_edges_ = net_.edges();
    occupied_ = net_.occupied_real_slots();
    total_real_ = net_.total_real_slots();
    result_.warmup_time = config.warmup_multiplier * config.mean_holding_time;
    result_.requests.reserve(config.total_requests);
  }

  void arrive(const LightpathRequest& request) {
    advance_to(request.arrival_time);
    result_.last_arrival_time = request.arrival_time;
    util_at_last_arrival_ = util_integral_;

    RouteStats stats;
    std::optional<Assignment> assignment;
    if (config_.collect_route_timings) {
      const auto start = std::chrono::steady_clock::now();
      assignment = route(net_, request, config_.policy, config_.limits, &stats);
      const auto elapsed = std::chrono::steady_clock::now() - start;
      result_.route_times_ns.push_back(static_cast<std::uint32_t>(std::min<std::int64_t>(
          std::chrono::duration_cast<std::chrono::nanoseconds>(elapsed).count(),
          std::numeric_limits<std::uint32_t>::max())));
    } else {
      assignment = route(net_, request, config_.policy, config_.limits, &stats);
    }
    result_.frontier_overflows += stats.frontier_overflows;

    RequestOutcome outcome;
    outcome.id = request.id;
    outcome.arrival_time = request.arrival_time;
    outcome.s = request.s;
    outcome.d = request.d;
    outcome.demanded_slots = request.required_slots;
    outcome.warmup = request.arrival_time < result_.warmup_time;

    if (assignment) {
      commit(net_, *assignment);
      occupied_ += assignment->range.length * static_cast<std::size_t>(assignment->path.hop_count);
      outcome.served = true;
      outcome.path = assignment->path.nodes;
      outcome.range = assignment->range;
      departures_.push(DepartureEvent{request.arrival_time + request.holding_time,
                                      next_seq_++, request.id});
      live_.emplace(request.id, std::move(*assignment));
      ++result_.served;
    } else {
      ++result_.blocked;
    }
    result_.requests.push_back(std::move(outcome));
    maybe_cross_check();
  }

  bool has_departure_before(double time) const {
    return !departures_.empty() && departures_.top().time <= time;
  }

  bool has_departures() const { return !departures_.empty(); }

  void depart() {
    const DepartureEvent event = departures_.top();
    departures_.pop();
    advance_to(event.time);
    const auto it = live_.find(event.request_id);
    if (it == live_.end()) {
      throw engine_violation("departure for an unknown live assignment");
    }
    release(net_, it->second);
    occupied_ -= it->second.range.length * static_cast<std::size_t>(it->second.path.hop_count);
    live_.erase(it);
    maybe_cross_check();
  }

  RunResult finish() {
    if (!live_.empty()) {
      throw engine_violation("live assignments left after drain");
    }
    result_.end_time = clock_;
    const double window = result_.last_arrival_time - result_.warmup_time;
    result_.utilization_window = std::max(window, 0.0);
    if (window > 0.0 && total_real_ > 0) {
      result_.utilization =
          util_at_last_arrival_ / (window * static_cast<double>(total_real_));
    }
    result_.spectrum_restored = net_.edges().size() == initial_edges_.size();
    for (std::size_t i = 0; result_.spectrum_restored && i < initial_edges_.size(); ++i) {
      result_.spectrum_restored = net_.edge(i).bitmap == initial_edges_[i].bitmap;
    }
    cross_check();
    return std::move(result_);
  }

 private:
  void advance_to(double time) {
    const double from = std::max(clock_, result_.warmup_time);
    if (time > from) {
      util_integral_ += (time - from) * static_cast<double>(occupied_);
    }
    clock_ = std::max(clock_, time);
  }

  void maybe_cross_check() {
    if (!config_.debug_checks) return;
    if (++events_since_check_ >= config_.cross_check_interval) {
      events_since_check_ = 0;
      cross_check();
    }
  }

  // Rebuilds the expected spectrum state of every edge from the initial
  // state plus all live assignments. Any overlap, continuity break or stray
  // bit shows up as an engine_violation here.
  void cross_check() {
    if (!config_.debug_checks) return;
    std::vector<SlotBitmap> expected;
    expected.reserve(initial_edges_.size());
    for (const Edge& e : initial_edges_) {
      expected.push_back(e.bitmap);
    }
    for (const auto& [id, assignment] : live_) {
      (void)id;
      const auto& nodes = assignment.path.nodes;
      for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const int index = net_.edge_index_between(nodes[i], nodes[i + 1]);
        if (index < 0) {
          throw engine_violation("live assignment crosses a missing edge");
        }
        expected[static_cast<std::size_t>(index)].occupy(assignment.range);
      }
    }
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (!(expected[i] == net_.edge(i).bitmap)) {
        throw engine_violation("edge bitmap diverged from the live assignment set");
      }
    }
    if (net_.occupied_real_slots() != occupied_) {
      throw engine_violation("occupied-slot counter diverged from bitmaps");
    }
  }

  Network net_;
  const SimConfig& config_;
  std::vector<Edge> initial_edges_;
  RunResult result_;
  std::priority_queue<DepartureEvent, std::vector<DepartureEvent>, DepartureLater> departures_;
  std::unordered_map<std::int64_t, Assignment> live_;
  std::uint64_t next_seq_ = 0;
  double clock_ = 0.0;
  std::size_t occupied_ = 0;
  std::size_t total_real_ = 0;
  double util_integral_ = 0.0;
  double util_at_last_arrival_ = 0.0;
  std::size_t events_since_check_ = 0;
};

}  // namespace

RunResult run(const Network& topology, const SimConfig& config) {
  EventLoop loop(topology, config);
  TrafficGenerator generator(config, topology.vertex_count());

  TrafficGenerator::Draw pending = generator.next(generator.first_arrival());
  std::size_t arrivals_left = config.total_requests;
  // Departures strictly before (or tied with) the next arrival go first.
  while (arrivals_left > 0) {
    if (loop.has_departure_before(pending.request.arrival_time)) {
      loop.depart();
      continue;
    }
    loop.arrive(pending.request);
    --arrivals_left;
    if (arrivals_left > 0) {
      pending = generator.next(pending.next_arrival_time);
    }
  }
  while (loop.has_departures()) {
    loop.depart();
  }
  return loop.finish();
}

RunResult run_scripted(const Network& topology, const SimConfig& config,
                       const std::vector<LightpathRequest>& arrivals) {
  EventLoop loop(topology, config);
  for (const LightpathRequest& request : arrivals) {
    while (loop.has_departure_before(request.arrival_time)) {
      loop.depart();
    }
    loop.arrive(request);
  }
  while (loop.has_departures()) {
    loop.depart();
  }
  return loop.finish();
}

void write_raw_records(std::ostream& out, const RunResult& result) {
  char buffer[64];
  for (const RequestOutcome& outcome : result.requests) {
    std::snprintf(buffer, sizeof(buffer), "%.6f", outcome.arrival_time);
    out << outcome.id << ' ' << buffer << ' ' << outcome.s << ' ' << outcome.d
        << ' ' << outcome.demanded_slots << ' ';
    if (outcome.served) {
      for (std::size_t i = 0; i < outcome.path.size(); ++i) {
        if (i > 0) out << '-';
        out << outcome.path[i];
      }
      out << ' ' << outcome.range.start << '+' << outcome.range.length;
    } else {
      out << "BLOCKED -";
    }
    out << '\n';
  }
}

}  // namespace eonsim
