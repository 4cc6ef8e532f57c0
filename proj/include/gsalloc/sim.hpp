#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gsalloc/allocator.hpp"

namespace gsalloc {

enum class Algorithm {
  kVariance,
  kBestGain,
  kDecentralized,
  kSuperiority,
};

const char* algorithm_name(Algorithm algo);
std::optional<Algorithm> algorithm_from_name(const std::string& name);

// One experiment: channel draw -> report -> allocate -> rates, repeated for
// `slots` slots at each SNR point.
struct SimConfig {
  int users = 8;
  int subcarriers = 128;
  int group_size = 4;
  double epsilon = 0.5;
  double gap = 1.0;  // linear
  int l_param = 2;
  std::vector<double> alpha;  // raw weights, normalized internally
  int slots = 200;
  std::vector<double> snr_db;
  Algorithm algo = Algorithm::kVariance;
  std::uint64_t seed = 1;
  double total_power = 1.0;

  // Throws std::invalid_argument naming the offending values.
  void validate() const;
};

// L = K/4 rounded half-up, at least 1.
int default_l_param(int users);

struct SlotMetrics {
  std::vector<double> user_rate;  // realized bits/s/Hz per user
  std::vector<int> user_groups;
  double assigned_fraction = 0.0;
  double slot_rate = 0.0;  // sum over users
};

struct AggregateMetrics {
  double snr_db = 0.0;
  double throughput_per_subcarrier = 0.0;  // time-averaged sum rate / M
  std::vector<double> user_share;          // R_k / sum R, empty if no data
  std::vector<double> user_rate_total;     // window totals R_k
  std::optional<double> jain;              // empty when all rates are zero
  double assigned_fraction = 0.0;
};

// Modified Jain index (sum R_k/a_k)^2 / (K * sum (R_k/a_k)^2), in [1/K, 1].
// Empty when every rate is zero.
std::optional<double> jain_index(std::span<const double> rates,
                                 std::span<const double> alpha);

// Deterministic per (config.seed, slot_index); the SNR mean only scales the
// channel draw, so different SNR points share the same underlying fading.
SlotMetrics run_slot(const SimConfig& config, double mean_snr_linear,
                     int slot_index);

// One AggregateMetrics per SNR point. Slots are independent and may be
// computed on `threads` workers; the reduction always runs in slot order,
// so the result is byte-identical to a serial run.
std::vector<AggregateMetrics> run_experiment(const SimConfig& config,
                                             int threads = 1);

struct SweepRow {
  SimConfig config;
  AggregateMetrics metrics;
};

// One row per (config, SNR point), in input order.
std::vector<SweepRow> sweep(const std::vector<SimConfig>& configs,
                            int threads = 1);

}  // namespace gsalloc
