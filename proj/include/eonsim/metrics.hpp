#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "eonsim/traffic.hpp"

namespace eonsim {

/// Fraction of post-warm-up requests that were blocked. Throws metric_error
/// when no post-warm-up request exists.
double blocking_probability(std::span<const RequestOutcome> records);

/// Slot-weighted blocking: sum of demanded slots over blocked requests
/// divided by the sum over all arrived requests, post-warm-up. Guard-band
/// slots are counted in both numerator and denominator.
double bandwidth_blocking_probability(std::span<const RequestOutcome> records);

struct UtilizationSample {
  double duration = 0.0;
  std::size_t occupied = 0;
  std::size_t total = 0;
};

/// Duration-weighted mean of occupied/total over the samples.
double spectrum_utilization(std::span<const UtilizationSample> samples);

/// Per-run scalars, inputs to the multi-seed aggregation.
struct RunSummary {
  double bp = 0.0;
  double bbp = 0.0;
  double util = 0.0;
};

RunSummary summarize(const RunResult& result);

/// One sweep-grid cell aggregated over seeds: mean and 95% confidence
/// half-width per metric (Student t).
struct MetricPoint {
  std::string policy;
  double rho = 0.0;
  double demand_max_gbps = 0.0;
  int k = 0;
  int seed_count = 0;
  double bp = 0.0, bp_hw = 0.0;
  double bbp = 0.0, bbp_hw = 0.0;
  double util = 0.0, util_hw = 0.0;
};

MetricPoint aggregate(std::string policy, double rho, double demand_max_gbps,
                      int k, std::span<const RunSummary> runs);

/// Two-sided 97.5% Student t quantile (95% confidence interval width).
double student_t_975(int degrees_of_freedom);

/// CSV schema: policy,rho,B,k,seed_count,bp,bp_hw,bbp,bbp_hw,util,util_hw
void write_csv(std::ostream& out, std::span<const MetricPoint> points);

/// JSON mirror of the CSV with identical fields.
void write_json(std::ostream& out, std::span<const MetricPoint> points);

}  // namespace eonsim
