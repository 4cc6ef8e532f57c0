#include "gsalloc/link.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gsalloc {

double snr_gap_from_ber(double ber) {
  // -ln(5*ber)/1.6 is non-negative only up to ber = 0.2.
  if (!(ber > 0.0) || ber > 0.2) {
    throw std::domain_error("target BER must lie in (0, 0.2], got " +
                            std::to_string(ber));
  }
  return -std::log(5.0 * ber) / 1.6;
}

LinkParams LinkParams::from_ber(double ber) {
  const double gap = snr_gap_from_ber(ber);
  if (!(gap > 0.0)) {
    throw std::domain_error("BER " + std::to_string(ber) +
                            " gives a zero SNR gap");
  }
  return LinkParams{gap};
}

double rate(double snr, double gap) {
  return std::log2(1.0 + snr / gap);
}

double sample_variance(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) {
    throw std::domain_error("sample variance needs at least 2 values");
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : values) {
    const double d = v - mean;
    ss += d * d;
  }
  return ss / static_cast<double>(n - 1);
}

GroupStats group_stats(const SnrMatrix& snr, const GroupMap& map,
                       const LinkParams& link) {
  if (snr.subcarriers() != map.subcarriers) {
    throw std::invalid_argument("SNR matrix has " +
                                std::to_string(snr.subcarriers()) +
                                " subcarriers, group map expects " +
                                std::to_string(map.subcarriers));
  }
  if (!(link.gamma_gap > 0.0)) {
    throw std::invalid_argument("SNR gap must be > 0");
  }
  const int users = snr.users();
  const int groups = map.num_groups;
  const int n = map.group_size;

  GroupStats stats;
  stats.group_size = n;
  stats.mean_gain.assign(users, std::vector<double>(groups, 0.0));
  stats.gain_variance.assign(users, std::vector<double>(groups, 0.0));
  stats.mean_rate.assign(users, std::vector<double>(groups, 0.0));

  for (int k = 0; k < users; ++k) {
    const std::vector<double>& row = snr.values[k];
    for (int m = 0; m < groups; ++m) {
      double gain_sum = 0.0;
      double rate_sum = 0.0;
      for (int j = 0; j < n; ++j) {
        const double g = row[m + j * groups];
        gain_sum += g;
        rate_sum += rate(g, link.gamma_gap);
      }
      const double mean = gain_sum / n;
      stats.mean_gain[k][m] = mean;
      stats.mean_rate[k][m] = rate_sum / n;
      if (n >= 2) {
        double ss = 0.0;
        for (int j = 0; j < n; ++j) {
          const double d = row[m + j * groups] - mean;
          ss += d * d;
        }
        stats.gain_variance[k][m] = ss / (n - 1);
      }
      // n == 1 keeps the variance-0 convention so singleton groups always
      // pass the reporting test.
    }
  }
  return stats;
}

ReportSet report_set(const GroupStats& stats, double epsilon) {
  if (epsilon < 0.0) {
    throw std::invalid_argument("reporting threshold must be >= 0");
  }
  // The report-all sentinel must not turn into inf*0 = NaN on a zero-mean
  // group.
  const bool report_all = std::isinf(epsilon);
  ReportSet reports;
  reports.num_groups = stats.num_groups();
  reports.per_user.resize(stats.users());
  for (int k = 0; k < stats.users(); ++k) {
    for (int m = 0; m < reports.num_groups; ++m) {
      const double mean = stats.mean_gain[k][m];
      if (report_all || stats.gain_variance[k][m] <= epsilon * mean * mean) {
        reports.per_user[k].push_back({m, stats.mean_rate[k][m]});
      }
    }
  }
  return reports;
}

}  // namespace gsalloc
