#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "gsalloc/report.hpp"
#include "gsalloc/sim.hpp"

using gsalloc::AggregateMetrics;
using gsalloc::Algorithm;
using gsalloc::algorithm_from_name;
using gsalloc::algorithm_name;
using gsalloc::default_l_param;
using gsalloc::jain_index;
using gsalloc::run_experiment;
using gsalloc::run_slot;
using gsalloc::SimConfig;
using gsalloc::SlotMetrics;
using gsalloc::sweep;
using gsalloc::SweepRow;

namespace {

constexpr double kTight = 1e-12;

SimConfig small_config() {
  SimConfig config;
  config.users = 4;
  config.subcarriers = 32;
  config.group_size = 2;
  config.epsilon = 0.5;
  config.gap = 1.0;
  config.l_param = 2;
  config.alpha = {1.0, 1.0, 1.0, 1.0};
  config.slots = 25;
  config.snr_db = {10.0};
  config.seed = 5;
  return config;
}

}  // namespace

TEST_CASE("algorithm names round-trip") {
  for (Algorithm algo :
       {Algorithm::kVariance, Algorithm::kBestGain, Algorithm::kDecentralized,
        Algorithm::kSuperiority}) {
    CHECK(algorithm_from_name(algorithm_name(algo)) == algo);
  }
  CHECK(!algorithm_from_name("fastest"));
  CHECK(!algorithm_from_name(""));
}

TEST_CASE("default candidate count is a quarter of the users, rounded") {
  CHECK(default_l_param(1) == 1);
  CHECK(default_l_param(2) == 1);
  CHECK(default_l_param(4) == 1);
  CHECK(default_l_param(8) == 2);
  CHECK(default_l_param(10) == 3);
  CHECK(default_l_param(24) == 6);
}

TEST_CASE("config validation names the offender") {
  SimConfig config = small_config();
  config.group_size = 5;
  CHECK_THROWS_WITH_AS(config.validate(),
                       "group size 5 does not divide subcarrier count 32",
                       std::invalid_argument);

  config = small_config();
  config.l_param = 5;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);

  config = small_config();
  config.alpha = {1.0, 1.0};
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);

  config = small_config();
  config.snr_db.clear();
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);

  CHECK_NOTHROW(small_config().validate());
}

TEST_CASE("fairness index reference points") {
  const std::vector<double> ones = {1.0, 1.0, 1.0};
  CHECK(*jain_index(ones, ones) == doctest::Approx(1.0).epsilon(kTight));

  const std::vector<double> uneven = {1.0, 0.0};
  const std::vector<double> unit = {1.0, 1.0};
  CHECK(*jain_index(uneven, unit) == doctest::Approx(0.5).epsilon(kTight));

  const std::vector<double> matched_rates = {3.0, 1.0};
  const std::vector<double> matched_alpha = {3.0, 1.0};
  CHECK(*jain_index(matched_rates, matched_alpha) ==
        doctest::Approx(1.0).epsilon(kTight));

  const std::vector<double> mixed = {5.0, 3.0};
  CHECK(*jain_index(mixed, unit) ==
        doctest::Approx(0.9411764705882353).epsilon(kTight));

  const std::vector<double> zeros = {0.0, 0.0};
  CHECK(!jain_index(zeros, unit).has_value());

  // Invariant to a common scaling of the weights.
  const std::vector<double> alpha2 = {2.0, 2.0};
  CHECK(*jain_index(mixed, alpha2) == *jain_index(mixed, unit));

  CHECK_THROWS_AS(jain_index(mixed, ones), std::invalid_argument);
  CHECK_THROWS_AS(jain_index({}, {}), std::invalid_argument);
}

TEST_CASE("slots are reproducible and index-sensitive") {
  const SimConfig config = small_config();
  const SlotMetrics a = run_slot(config, 10.0, 3);
  const SlotMetrics b = run_slot(config, 10.0, 3);
  CHECK(a.user_rate == b.user_rate);
  CHECK(a.slot_rate == b.slot_rate);

  const SlotMetrics c = run_slot(config, 10.0, 4);
  CHECK(a.user_rate != c.user_rate);
}

TEST_CASE("a zero threshold reports nothing and assigns nothing") {
  SimConfig config = small_config();
  config.epsilon = 0.0;  // continuous draws: no group is exactly flat
  const SlotMetrics slot = run_slot(config, 10.0, 0);
  CHECK(slot.slot_rate == 0.0);
  CHECK(slot.assigned_fraction == 0.0);
  for (double r : slot.user_rate) CHECK(r == 0.0);

  // The aggregate over an all-zero window carries no fairness value.
  config.slots = 3;
  const std::vector<AggregateMetrics> agg = run_experiment(config);
  CHECK(agg[0].throughput_per_subcarrier == 0.0);
  CHECK(!agg[0].jain.has_value());
  CHECK(agg[0].user_share.empty());
}

TEST_CASE("a one-slot aggregate equals its slot") {
  SimConfig config = small_config();
  config.slots = 1;
  config.snr_db = {3.0};
  const std::vector<AggregateMetrics> agg = run_experiment(config);
  const SlotMetrics slot = run_slot(config, std::pow(10.0, 0.3), 0);
  REQUIRE(agg.size() == 1);
  CHECK(agg[0].snr_db == 3.0);
  CHECK(agg[0].user_rate_total == slot.user_rate);
  CHECK(agg[0].throughput_per_subcarrier ==
        doctest::Approx(slot.slot_rate / config.subcarriers).epsilon(kTight));
  CHECK(agg[0].assigned_fraction == slot.assigned_fraction);
}

TEST_CASE("aggregate throughput accounts for every slot") {
  SimConfig config = small_config();
  config.slots = 37;
  const std::vector<AggregateMetrics> agg = run_experiment(config);

  double rate_sum = 0.0;
  for (int t = 0; t < config.slots; ++t) {
    rate_sum += run_slot(config, 10.0, t).slot_rate;
  }
  CHECK(agg[0].throughput_per_subcarrier ==
        doctest::Approx(rate_sum / (37.0 * config.subcarriers))
            .epsilon(1e-9));

  double share_sum = 0.0;
  for (double s : agg[0].user_share) share_sum += s;
  CHECK(share_sum == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("throughput grows with the operating SNR") {
  SimConfig config = small_config();
  config.snr_db = {0.0, 10.0, 20.0};
  const std::vector<AggregateMetrics> agg = run_experiment(config, 4);
  REQUIRE(agg.size() == 3);
  CHECK(agg[0].throughput_per_subcarrier < agg[1].throughput_per_subcarrier);
  CHECK(agg[1].throughput_per_subcarrier < agg[2].throughput_per_subcarrier);
}

TEST_CASE("equal weights give symmetric long-run shares") {
  SimConfig config = small_config();
  config.slots = 2000;
  const std::vector<AggregateMetrics> agg = run_experiment(config, 8);
  REQUIRE(agg[0].user_share.size() == 4);
  for (double share : agg[0].user_share) {
    CHECK(share == doctest::Approx(0.25).epsilon(0.08));
  }
}

TEST_CASE("experiments are reproducible across thread counts") {
  const SimConfig config = small_config();
  const std::vector<AggregateMetrics> serial = run_experiment(config, 1);
  const std::vector<AggregateMetrics> threaded = run_experiment(config, 8);
  REQUIRE(serial.size() == threaded.size());
  CHECK(serial[0].user_rate_total == threaded[0].user_rate_total);
  CHECK(serial[0].throughput_per_subcarrier ==
        threaded[0].throughput_per_subcarrier);
  CHECK(serial[0].jain == threaded[0].jain);
}

TEST_CASE("sweep emits one row per config per SNR point, in order") {
  SimConfig a = small_config();
  a.snr_db = {0.0, 10.0};
  SimConfig b = a;
  b.algo = Algorithm::kBestGain;
  const std::vector<SweepRow> rows = sweep({a, b}, 2);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].config.algo == Algorithm::kVariance);
  CHECK(rows[0].metrics.snr_db == 0.0);
  CHECK(rows[1].metrics.snr_db == 10.0);
  CHECK(rows[3].config.algo == Algorithm::kBestGain);
  CHECK(sweep({a}, 1).size() == 2);
  CHECK_THROWS_AS(sweep({}, 1), std::invalid_argument);
}

TEST_CASE("csv output is stable, locale-free and schema-exact") {
  SimConfig config = small_config();
  config.snr_db = {10.0};
  const std::vector<AggregateMetrics> agg = run_experiment(config);
  std::vector<SweepRow> rows;
  rows.push_back({config, agg[0]});

  gsalloc::RunManifest manifest;
  manifest.seed = config.seed;
  manifest.command_line = "run --seed 5";
  manifest.timestamp = "2026-01-01T00:00:00Z";  // must NOT appear in the file

  std::ostringstream first;
  gsalloc::write_csv(first, manifest, rows);
  manifest.timestamp = "2031-12-31T23:59:59Z";
  std::ostringstream second;
  gsalloc::write_csv(second, manifest, rows);
  CHECK(first.str() == second.str());

  std::istringstream in(first.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "# gsalloc 0.1.0");
  std::getline(in, line);
  CHECK(line == "# seed: 5");
  std::getline(in, line);
  CHECK(line == "# command: run --seed 5");
  std::getline(in, line);
  CHECK(line ==
        "algo,snr_db,users,subcarriers,group_size,epsilon,gap,l_param,slots,"
        "seed,throughput_per_subcarrier,jain_index,assigned_fraction,"
        "share_user_0,share_user_1,share_user_2,share_user_3");
  std::getline(in, line);
  CHECK(line.rfind("variance,10,4,32,2,0.5,1,2,25,5,", 0) == 0);
  CHECK(line.find(',') != std::string::npos);
  CHECK(line.find(';') == std::string::npos);  // no locale surprises
}

TEST_CASE("format_double round-trips through parsing") {
  for (double v : {0.0, 1.0, 0.5, 1.0 / 3.0, 1366.6666666666667, 1e-9}) {
    CHECK(std::stod(gsalloc::format_double(v)) == v);
  }
}
