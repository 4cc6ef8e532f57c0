#pragma once

#include <span>
#include <vector>

#include "gsalloc/channel.hpp"
#include "gsalloc/group_map.hpp"

namespace gsalloc {

// SNR gap for the target BER of an uncoded square QAM constellation:
// gap = -ln(5*ber)/1.6. Valid for 0 < ber <= 0.2 (gap >= 0).
double snr_gap_from_ber(double ber);

struct LinkParams {
  double gamma_gap = 1.0;  // linear, > 0

  static LinkParams from_ber(double ber);
};

// Transmissible rate log2(1 + snr/gap) in bits/s/Hz.
double rate(double snr, double gap);

// Unbiased sample variance (denominator n-1). Needs at least two values.
double sample_variance(std::span<const double> values);

// Per (user, group) statistics of the within-group per-subcarrier values.
// Single-subcarrier groups get variance 0 by convention.
struct GroupStats {
  int group_size = 1;    // N_g of the map the stats were computed on
  Matrix mean_gain;      // users x num_groups
  Matrix gain_variance;  // users x num_groups
  Matrix mean_rate;      // users x num_groups, mean per-subcarrier rate

  int users() const { return static_cast<int>(mean_gain.size()); }
  int num_groups() const {
    return mean_gain.empty() ? 0 : static_cast<int>(mean_gain.front().size());
  }
};

GroupStats group_stats(const SnrMatrix& snr, const GroupMap& map,
                       const LinkParams& link);

// CSI the scheduler actually sees: per user, the groups whose within-group
// gain variance passed the threshold test, with the mean per-subcarrier
// rate for each reported group.
struct ReportSet {
  struct Entry {
    int group = 0;
    double mean_rate = 0.0;
  };

  int num_groups = 0;
  std::vector<std::vector<Entry>> per_user;  // sorted by group index

  int users() const { return static_cast<int>(per_user.size()); }
};

// Group m is reported by user k iff V_{k,m} <= epsilon * mean_gain^2.
// epsilon = +inf is the report-all sentinel.
ReportSet report_set(const GroupStats& stats, double epsilon);

}  // namespace gsalloc
