#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "gsalloc/channel.hpp"
#include "gsalloc/group_map.hpp"
#include "gsalloc/link.hpp"
#include "gsalloc/rng.hpp"

using gsalloc::GroupMap;
using gsalloc::group_stats;
using gsalloc::GroupStats;
using gsalloc::LinkParams;
using gsalloc::make_group_map;
using gsalloc::rate;
using gsalloc::report_set;
using gsalloc::ReportSet;
using gsalloc::sample_variance;
using gsalloc::SnrMatrix;
using gsalloc::snr_gap_from_ber;

namespace {
constexpr double kTight = 1e-12;

SnrMatrix matrix_of(gsalloc::Matrix values) {
  SnrMatrix snr;
  snr.values = std::move(values);
  return snr;
}
}  // namespace

TEST_CASE("snr gap from target BER") {
  CHECK(snr_gap_from_ber(0.2) == doctest::Approx(0.0).epsilon(kTight));
  CHECK(snr_gap_from_ber(1e-3) ==
        doctest::Approx(3.3114483540925224).epsilon(kTight));
  // ber = exp(-1.6)/5 is exactly a unit gap.
  CHECK(snr_gap_from_ber(std::exp(-1.6) / 5.0) ==
        doctest::Approx(1.0).epsilon(kTight));

  CHECK_THROWS_AS(snr_gap_from_ber(0.0), std::domain_error);
  CHECK_THROWS_AS(snr_gap_from_ber(-1e-3), std::domain_error);
  CHECK_THROWS_AS(snr_gap_from_ber(0.25), std::domain_error);
  // A 0.2 BER target means a zero gap, unusable as a rate divisor.
  CHECK_THROWS_AS(LinkParams::from_ber(0.2), std::domain_error);
  CHECK(LinkParams::from_ber(1e-3).gamma_gap ==
        doctest::Approx(3.3114483540925224).epsilon(kTight));
}

TEST_CASE("transmissible rate") {
  CHECK(rate(3.0, 1.0) == doctest::Approx(2.0).epsilon(kTight));
  CHECK(rate(0.0, 1.0) == 0.0);
  CHECK(rate(7.0, 7.0) == doctest::Approx(1.0).epsilon(kTight));
  CHECK(rate(1.0, 2.0) == doctest::Approx(0.5849625007211562).epsilon(kTight));
  CHECK(rate(5.0, 1.0) == doctest::Approx(2.584962500721156).epsilon(kTight));
}

TEST_CASE("sample variance of the two reference gain rows") {
  const std::vector<double> low_spread = {100.0, 90.0, 70.0, 70.0};
  const std::vector<double> high_spread = {90.0, 60.0, 20.0, 10.0};
  CHECK(sample_variance(high_spread) ==
        doctest::Approx(4100.0 / 3.0).epsilon(kTight));
  CHECK(sample_variance(low_spread) == doctest::Approx(225.0).epsilon(kTight));
  CHECK(sample_variance(std::vector<double>{5.0, 5.0, 5.0}) == 0.0);
  CHECK_THROWS_AS(sample_variance(std::vector<double>{1.0}), std::domain_error);
}

TEST_CASE("sample variance ignores translation and scales quadratically") {
  gsalloc::rng::Stream stream(99);
  for (int i = 0; i < 200; ++i) {
    const int n = 2 + static_cast<int>(stream.next_unit() * 10.0);
    std::vector<double> values(n);
    for (double& v : values) v = stream.next_exponential(4.0);
    const double base = sample_variance(values);

    std::vector<double> moved(values);
    for (double& v : moved) v += 17.5;
    CHECK(sample_variance(moved) ==
          doctest::Approx(base).epsilon(1e-9).scale(std::max(1.0, base)));

    std::vector<double> scaled(values);
    for (double& v : scaled) v *= 3.0;
    CHECK(sample_variance(scaled) == doctest::Approx(9.0 * base).epsilon(1e-9));
  }
}

TEST_CASE("group statistics on a two-subcarrier group") {
  // One user, M = 2, N_g = 2: gains 4 and 6 in the single group.
  const GroupMap map = make_group_map(2, 2);
  const SnrMatrix snr = matrix_of({{4.0, 6.0}});
  const GroupStats stats = group_stats(snr, map, LinkParams{1.0});
  CHECK(stats.users() == 1);
  CHECK(stats.num_groups() == 1);
  CHECK(stats.mean_gain[0][0] == doctest::Approx(5.0).epsilon(kTight));
  CHECK(stats.gain_variance[0][0] == doctest::Approx(2.0).epsilon(kTight));
  // (log2(5) + log2(7)) / 2
  CHECK(stats.mean_rate[0][0] ==
        doctest::Approx(2.564641508472483).epsilon(kTight));
}

TEST_CASE("group statistics pick interleaved members") {
  // M = 4, N_g = 2 -> group 0 = {0, 2}, group 1 = {1, 3}.
  const GroupMap map = make_group_map(4, 2);
  const SnrMatrix snr = matrix_of({{4.0, 1.0, 6.0, 9.0}});
  const GroupStats stats = group_stats(snr, map, LinkParams{1.0});
  CHECK(stats.mean_gain[0][0] == doctest::Approx(5.0).epsilon(kTight));
  CHECK(stats.mean_gain[0][1] == doctest::Approx(5.0).epsilon(kTight));
  CHECK(stats.gain_variance[0][0] == doctest::Approx(2.0).epsilon(kTight));
  CHECK(stats.gain_variance[0][1] == doctest::Approx(32.0).epsilon(kTight));
}

TEST_CASE("group statistics match a from-scratch evaluation") {
  const GroupMap map = make_group_map(16, 2);
  const SnrMatrix snr = gsalloc::gen_iid_exp_snr(3, 16, 4.0, 21);
  const LinkParams link{1.7};
  const GroupStats stats = group_stats(snr, map, link);
  for (int k = 0; k < 3; ++k) {
    for (int m = 0; m < map.num_groups; ++m) {
      std::vector<double> gains;
      double rate_sum = 0.0;
      for (int s : map.group_members(m)) {
        gains.push_back(snr.values[k][s]);
        rate_sum += std::log2(1.0 + snr.values[k][s] / 1.7);
      }
      double mean = (gains[0] + gains[1]) / 2.0;
      CHECK(stats.mean_gain[k][m] == doctest::Approx(mean).epsilon(kTight));
      CHECK(stats.gain_variance[k][m] ==
            doctest::Approx(sample_variance(gains)).epsilon(kTight));
      CHECK(stats.mean_rate[k][m] ==
            doctest::Approx(rate_sum / 2.0).epsilon(kTight));
    }
  }
}

TEST_CASE("singleton groups report zero variance") {
  const GroupMap map = make_group_map(3, 1);
  const SnrMatrix snr = matrix_of({{1.0, 2.0, 3.0}});
  const GroupStats stats = group_stats(snr, map, LinkParams{1.0});
  for (int m = 0; m < 3; ++m) CHECK(stats.gain_variance[0][m] == 0.0);
}

TEST_CASE("threshold keeps the flat group and drops the spread group") {
  // Group 0 gains [4, 6]: variance 2, mean 5 -> 2 <= 0.5 * 25, reported.
  // Group 1 gains [1, 9]: variance 32, mean 5 -> 32 > 12.5, not reported.
  const GroupMap map = make_group_map(4, 2);
  const SnrMatrix snr = matrix_of({{4.0, 1.0, 6.0, 9.0}});
  const GroupStats stats = group_stats(snr, map, LinkParams{1.0});
  const ReportSet reports = report_set(stats, 0.5);
  CHECK(reports.num_groups == 2);
  REQUIRE(reports.per_user.size() == 1);
  REQUIRE(reports.per_user[0].size() == 1);
  CHECK(reports.per_user[0][0].group == 0);
  CHECK(reports.per_user[0][0].mean_rate ==
        doctest::Approx(stats.mean_rate[0][0]).epsilon(kTight));
}

TEST_CASE("epsilon edge cases") {
  const GroupMap map = make_group_map(4, 2);
  const SnrMatrix snr = matrix_of({{4.0, 1.0, 6.0, 9.0}, {5.0, 0.0, 5.0, 0.0}});
  const GroupStats stats = group_stats(snr, map, LinkParams{1.0});

  // Report-all sentinel: every group of every user, zero-mean ones included.
  const ReportSet all =
      report_set(stats, std::numeric_limits<double>::infinity());
  for (int k = 0; k < 2; ++k) REQUIRE(all.per_user[k].size() == 2);

  // epsilon = 0 keeps exactly the zero-variance groups: both of user 1's
  // groups are flat ([5, 5] and [0, 0]), both of user 0's are spread.
  const ReportSet none = report_set(stats, 0.0);
  CHECK(none.per_user[0].empty());
  REQUIRE(none.per_user[1].size() == 2);
  CHECK(none.per_user[1][0].group == 0);
  CHECK(none.per_user[1][1].group == 1);
  CHECK(none.per_user[1][1].mean_rate == 0.0);
}
