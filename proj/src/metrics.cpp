#include "eonsim/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace eonsim {

namespace {

struct BlockingCounts {
  std::uint64_t arrived = 0;
  std::uint64_t blocked = 0;
  std::uint64_t arrived_slots = 0;
  std::uint64_t blocked_slots = 0;
};

BlockingCounts count_post_warmup(std::span<const RequestOutcome> records) {
  BlockingCounts counts;
  for (const RequestOutcome& record : records) {
    if (record.warmup) continue;
    ++counts.arrived;
    counts.arrived_slots += static_cast<std::uint64_t>(record.demanded_slots);
    if (!record.served) {
      ++counts.blocked;
      counts.blocked_slots += static_cast<std::uint64_t>(record.demanded_slots);
    }
  }
  if (counts.arrived == 0) {
    throw metric_error("no post-warm-up requests to measure");
  }
  return counts;
}

}  // namespace

double blocking_probability(std::span<const RequestOutcome> records) {
  const BlockingCounts counts = count_post_warmup(records);
  return static_cast<double>(counts.blocked) / static_cast<double>(counts.arrived);
}

double bandwidth_blocking_probability(std::span<const RequestOutcome> records) {
  const BlockingCounts counts = count_post_warmup(records);
  if (counts.arrived_slots == 0) {
    throw metric_error("no post-warm-up demanded slots to measure");
  }
  return static_cast<double>(counts.blocked_slots) /
         static_cast<double>(counts.arrived_slots);
}

double spectrum_utilization(std::span<const UtilizationSample> samples) {
  double weighted = 0.0;
  double duration = 0.0;
  for (const UtilizationSample& sample : samples) {
    if (sample.duration <= 0.0 || sample.total == 0) continue;
    weighted += sample.duration *
                (static_cast<double>(sample.occupied) / static_cast<double>(sample.total));
    duration += sample.duration;
  }
  if (duration <= 0.0) {
    throw metric_error("no post-warm-up utilization samples");
  }
  return weighted / duration;
}

RunSummary summarize(const RunResult& result) {
  RunSummary summary;
  summary.bp = blocking_probability(result.requests);
  summary.bbp = bandwidth_blocking_probability(result.requests);
  summary.util = result.utilization;
  return summary;
}

double student_t_975(int degrees_of_freedom) {
  static constexpr double kTable[] = {
      12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228,
      2.201,  2.179, 2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086,
      2.080,  2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042,
  };
  if (degrees_of_freedom < 1) {
    throw config_error("confidence interval needs at least two runs");
  }
  if (degrees_of_freedom <= 30) {
    return kTable[degrees_of_freedom - 1];
  }
  return 1.96;
}

namespace {

struct MeanHalfWidth {
  double mean = 0.0;
  double half_width = 0.0;
};

MeanHalfWidth mean_hw(std::span<const RunSummary> runs, double RunSummary::*field) {
  const auto n = static_cast<double>(runs.size());
  double sum = 0.0;
  for (const RunSummary& run : runs) sum += run.*field;
  const double mean = sum / n;
  if (runs.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (const RunSummary& run : runs) {
    const double delta = run.*field - mean;
    ss += delta * delta;
  }
  const double stddev = std::sqrt(ss / (n - 1.0));
  return {mean, student_t_975(static_cast<int>(runs.size()) - 1) * stddev / std::sqrt(n)};
}

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.10g", value);
  return buffer;
}

}  // namespace

MetricPoint aggregate(std::string policy, double rho, double demand_max_gbps,
                      int k, std::span<const RunSummary> runs) {
  if (runs.empty()) {
    throw metric_error("cannot aggregate zero runs");
  }
  MetricPoint point;
  point.policy = std::move(policy);
  point.rho = rho;
  point.demand_max_gbps = demand_max_gbps;
  point.k = k;
  point.seed_count = static_cast<int>(runs.size());
  const auto bp = mean_hw(runs, &RunSummary::bp);
  const auto bbp = mean_hw(runs, &RunSummary::bbp);
  const auto util = mean_hw(runs, &RunSummary::util);
  point.bp = bp.mean;
  point.bp_hw = bp.half_width;
  point.bbp = bbp.mean;
  point.bbp_hw = bbp.half_width;
  point.util = util.mean;
  point.util_hw = util.half_width;
  return point;
}

void write_csv(std::ostream& out, std::span<const MetricPoint> points) {
  out << "policy,rho,B,k,seed_count,bp,bp_hw,bbp,bbp_hw,util,util_hw\n";
  for (const MetricPoint& p : points) {
    out << p.policy << ',' << format_double(p.rho) << ','
        << format_double(p.demand_max_gbps) << ',' << p.k << ',' << p.seed_count
        << ',' << format_double(p.bp) << ',' << format_double(p.bp_hw) << ','
        << format_double(p.bbp) << ',' << format_double(p.bbp_hw) << ','
        << format_double(p.util) << ',' << format_double(p.util_hw) << '\n';
  }
}

void write_json(std::ostream& out, std::span<const MetricPoint> points) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const MetricPoint& p : points) {
    rows.push_back({
        {"policy", p.policy},
        {"rho", p.rho},
        {"B", p.demand_max_gbps},
        {"k", p.k},
        {"seed_count", p.seed_count},
        {"bp", p.bp},
        {"bp_hw", p.bp_hw},
        {"bbp", p.bbp},
        {"bbp_hw", p.bbp_hw},
        {"util", p.util},
        {"util_hw", p.util_hw},
    });
  }
  out << rows.dump(2) << '\n';
}

}  // namespace eonsim
