#include <doctest.h>

#include <sstream>
#include <vector>

#include <json.hpp>

#include "eonsim/metrics.hpp"

using eonsim::MetricPoint;
using eonsim::RequestOutcome;
using eonsim::RunSummary;
using eonsim::UtilizationSample;

namespace {

RequestOutcome outcome(bool served, int slots, bool warmup = false) {
  RequestOutcome r;
  r.served = served;
  r.demanded_slots = slots;
  r.warmup = warmup;
  return r;
}

}  // namespace

TEST_CASE("blocking probability") {
  std::vector<RequestOutcome> records(1000, outcome(true, 4));
  CHECK(eonsim::blocking_probability(records) == 0.0);

  for (int i = 0; i < 25; ++i) records[static_cast<std::size_t>(i)].served = false;
  CHECK(eonsim::blocking_probability(records) == doctest::Approx(0.025));

  SUBCASE("hand-traced pair: one of two blocked") {
    std::vector<RequestOutcome> two{outcome(true, 4), outcome(false, 4)};
    CHECK(eonsim::blocking_probability(two) == doctest::Approx(0.5));
  }
  SUBCASE("warm-up records do not count") {
    std::vector<RequestOutcome> mixed{outcome(false, 4, true), outcome(true, 4)};
    CHECK(eonsim::blocking_probability(mixed) == 0.0);
  }
  SUBCASE("zero post-warm-up arrivals is undefined") {
    std::vector<RequestOutcome> only_warmup{outcome(true, 4, true)};
    CHECK_THROWS_AS((void)eonsim::blocking_probability(only_warmup), eonsim::metric_error);
    CHECK_THROWS_AS((void)eonsim::blocking_probability(std::vector<RequestOutcome>{}),
                    eonsim::metric_error);
  }
}

TEST_CASE("bandwidth blocking probability") {
  SUBCASE("equal-sized requests make BBP equal BP") {
    std::vector<RequestOutcome> records(100, outcome(true, 5));
    for (int i = 0; i < 10; ++i) records[static_cast<std::size_t>(i)].served = false;
    CHECK(eonsim::bandwidth_blocking_probability(records) ==
          doctest::Approx(eonsim::blocking_probability(records)));
  }
  SUBCASE("slot weighting") {
    std::vector<RequestOutcome> records{outcome(false, 9), outcome(true, 2)};
    CHECK(eonsim::bandwidth_blocking_probability(records) == doctest::Approx(9.0 / 11.0));
  }
  SUBCASE("no blocking") {
    std::vector<RequestOutcome> records(10, outcome(true, 3));
    CHECK(eonsim::bandwidth_blocking_probability(records) == 0.0);
  }
}

TEST_CASE("spectrum utilization") {
  SUBCASE("idle network") {
    std::vector<UtilizationSample> samples{{10.0, 0, 7040}};
    CHECK(eonsim::spectrum_utilization(samples) == 0.0);
  }
  SUBCASE("one 8-slot connection on a 22-edge network of 320-slot links") {
    std::vector<UtilizationSample> samples{{5.0, 8, 22 * 320}};
    CHECK(eonsim::spectrum_utilization(samples) == doctest::Approx(8.0 / 7040.0));
  }
  SUBCASE("saturated link") {
    std::vector<UtilizationSample> samples{{1.0, 320, 320}};
    CHECK(eonsim::spectrum_utilization(samples) == doctest::Approx(1.0));
  }
  SUBCASE("duration weighting") {
    std::vector<UtilizationSample> samples{{3.0, 0, 100}, {1.0, 100, 100}};
    CHECK(eonsim::spectrum_utilization(samples) == doctest::Approx(0.25));
  }
  SUBCASE("empty window is undefined") {
    CHECK_THROWS_AS((void)eonsim::spectrum_utilization({}), eonsim::metric_error);
  }
}

TEST_CASE("aggregation across seeds") {
  std::vector<RunSummary> five{{0.10, 0.11, 0.5},
                               {0.12, 0.13, 0.5},
                               {0.08, 0.09, 0.5},
                               {0.11, 0.12, 0.5},
                               {0.09, 0.10, 0.5}};
  const MetricPoint point = eonsim::aggregate("type2", 20.0, 100.0, 10, five);
  CHECK(point.seed_count == 5);
  CHECK(point.bp == doctest::Approx(0.10));
  CHECK(point.bp_hw > 0.0);
  CHECK(point.util_hw == doctest::Approx(0.0));
  CHECK(point.bp >= 0.0);
  CHECK(point.bp <= 1.0);

  SUBCASE("half-width shrinks roughly like 1/sqrt(n)") {
    // same spread repeated four times: 20 runs
    std::vector<RunSummary> twenty;
    for (int i = 0; i < 4; ++i) {
      twenty.insert(twenty.end(), five.begin(), five.end());
    }
    const MetricPoint wide = eonsim::aggregate("type2", 20.0, 100.0, 10, twenty);
    CHECK(wide.bp_hw < point.bp_hw);
    CHECK(wide.bp_hw / point.bp_hw < 0.7);
    CHECK(wide.bp_hw / point.bp_hw > 0.2);
  }
}

TEST_CASE("student t table") {
  CHECK(eonsim::student_t_975(4) == doctest::Approx(2.776));
  CHECK(eonsim::student_t_975(19) == doctest::Approx(2.093));
  CHECK(eonsim::student_t_975(200) == doctest::Approx(1.96));
  CHECK_THROWS_AS((void)eonsim::student_t_975(0), eonsim::config_error);
}

TEST_CASE("csv schema") {
  MetricPoint p;
  p.policy = "sp_km";
  p.rho = 20;
  p.demand_max_gbps = 100;
  p.k = 10;
  p.seed_count = 5;
  p.bp = 0.025;
  p.bp_hw = 0.001;
  p.bbp = 0.03;
  p.bbp_hw = 0.002;
  p.util = 0.4;
  p.util_hw = 0.01;

  std::ostringstream out;
  eonsim::write_csv(out, std::vector<MetricPoint>{p});
  const std::string text = out.str();
  CHECK(text.find("policy,rho,B,k,seed_count,bp,bp_hw,bbp,bbp_hw,util,util_hw\n") == 0);
  CHECK(text.find("sp_km,20,100,10,5,0.025,0.001,0.03,0.002,0.4,0.01\n") != std::string::npos);
}

TEST_CASE("json mirrors the csv fields") {
  MetricPoint p;
  p.policy = "type3";
  p.rho = 12;
  p.demand_max_gbps = 200;
  p.k = 10;
  p.seed_count = 3;
  p.bp = 0.5;

  std::ostringstream out;
  eonsim::write_json(out, std::vector<MetricPoint>{p});
  const auto parsed = nlohmann::json::parse(out.str());
  REQUIRE(parsed.is_array());
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0]["policy"] == "type3");
  CHECK(parsed[0]["rho"] == 12.0);
  CHECK(parsed[0]["B"] == 200.0);
  CHECK(parsed[0]["k"] == 10);
  CHECK(parsed[0]["seed_count"] == 3);
  CHECK(parsed[0]["bp"] == 0.5);
  CHECK(parsed[0].size() == 11);
}
