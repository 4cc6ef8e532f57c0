#include "gsalloc/sim.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "gsalloc/channel.hpp"
#include "gsalloc/rng.hpp"

namespace gsalloc {

const char* algorithm_name(Algorithm algo) {
  switch (algo) {
    case Algorithm::kVariance: return "variance";
    case Algorithm::kBestGain: return "best_gain";
    case Algorithm::kDecentralized: return "decentralized";
    case Algorithm::kSuperiority: return "superiority";
  }
  return "?";
}

std::optional<Algorithm> algorithm_from_name(const std::string& name) {
  for (Algorithm algo : {Algorithm::kVariance, Algorithm::kBestGain,
                         Algorithm::kDecentralized, Algorithm::kSuperiority}) {
    if (name == algorithm_name(algo)) return algo;
  }
  return std::nullopt;
}

int default_l_param(int users) {
  return std::max(1, static_cast<int>(std::floor(users / 4.0 + 0.5)));
}

void SimConfig::validate() const {
  if (users < 1) throw std::invalid_argument("need at least one user");
  if (subcarriers < 1 || group_size < 1) {
    throw std::invalid_argument("subcarrier and group sizes must be positive");
  }
  if (subcarriers % group_size != 0) {
    throw std::invalid_argument(
        "group size " + std::to_string(group_size) +
        " does not divide subcarrier count " + std::to_string(subcarriers));
  }
  if (epsilon < 0.0) throw std::invalid_argument("epsilon must be >= 0");
  if (!(gap > 0.0)) throw std::invalid_argument("SNR gap must be > 0");
  if (l_param < 1 || l_param > users) {
    throw std::invalid_argument("l_param " + std::to_string(l_param) +
                                " out of range [1, " + std::to_string(users) +
                                "]");
  }
  if (static_cast<int>(alpha.size()) != users) {
    throw std::invalid_argument("got " + std::to_string(alpha.size()) +
                                " alpha weights for " + std::to_string(users) +
                                " users");
  }
  for (double a : alpha) {
    if (!(a > 0.0)) throw std::invalid_argument("alpha weights must be > 0");
  }
  if (slots < 1) throw std::invalid_argument("need at least one slot");
  if (snr_db.empty()) throw std::invalid_argument("SNR list is empty");
  if (!(total_power > 0.0)) throw std::invalid_argument("total power must be > 0");
}

std::optional<double> jain_index(std::span<const double> rates,
                                 std::span<const double> alpha) {
  if (rates.size() != alpha.size() || rates.empty()) {
    throw std::invalid_argument("rate and alpha vectors must match");
  }
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t k = 0; k < rates.size(); ++k) {
    if (!(alpha[k] > 0.0)) {
      throw std::invalid_argument("alpha weights must be > 0");
    }
    const double weighted = rates[k] / alpha[k];
    sum += weighted;
    sum_sq += weighted * weighted;
  }
  if (sum_sq == 0.0) return std::nullopt;  // all-zero window, no data
  return (sum * sum) / (rates.size() * sum_sq);
}

SlotMetrics run_slot(const SimConfig& config, double mean_snr_linear,
                     int slot_index) {
  const GroupMap map = make_group_map(config.subcarriers, config.group_size);
  const std::uint64_t slot_seed =
      rng::derive(config.seed, static_cast<std::uint64_t>(slot_index));
  const SnrMatrix snr =
      gen_iid_exp_snr(config.users, config.subcarriers, mean_snr_linear,
                      slot_seed);
  const GroupStats stats = group_stats(snr, map, LinkParams{config.gap});
  const ReportSet reports = report_set(stats, config.epsilon);
  const FairnessWeights weights{config.alpha};

  Allocation alloc;
  switch (config.algo) {
    case Algorithm::kVariance:
      alloc = allocate_variance(reports, weights, config.l_param, -1,
                                map.group_size);
      break;
    case Algorithm::kBestGain:
      alloc = allocate_best_gain(reports, -1, map.group_size);
      break;
    case Algorithm::kDecentralized:
      alloc = allocate_decentralized(reports, weights, map.group_size);
      break;
    case Algorithm::kSuperiority:
      alloc = allocate_superiority(reports, weights, map.group_size);
      break;
  }

  SlotMetrics metrics;
  metrics.user_rate = alloc.user_rate;
  metrics.user_groups = alloc.user_groups;
  metrics.assigned_fraction =
      static_cast<double>(alloc.assigned_groups()) / map.num_groups;
  metrics.slot_rate = alloc.sum_rate();
  return metrics;
}

namespace {

AggregateMetrics reduce_slots(const SimConfig& config, double snr_db,
                              const std::vector<SlotMetrics>& slots) {
  AggregateMetrics agg;
  agg.snr_db = snr_db;
  agg.user_rate_total.assign(config.users, 0.0);
  double rate_sum = 0.0;
  double fraction_sum = 0.0;
  for (const SlotMetrics& slot : slots) {  // fixed slot order
    for (int k = 0; k < config.users; ++k) {
      agg.user_rate_total[k] += slot.user_rate[k];
    }
    rate_sum += slot.slot_rate;
    fraction_sum += slot.assigned_fraction;
  }
  agg.throughput_per_subcarrier =
      rate_sum / (static_cast<double>(config.slots) * config.subcarriers);
  agg.assigned_fraction = fraction_sum / config.slots;
  double total = 0.0;
  for (double r : agg.user_rate_total) total += r;
  if (total > 0.0) {
    agg.user_share.resize(config.users);
    for (int k = 0; k < config.users; ++k) {
      agg.user_share[k] = agg.user_rate_total[k] / total;
    }
  }
  agg.jain = jain_index(agg.user_rate_total, config.alpha);
  return agg;
}

}  // namespace

std::vector<AggregateMetrics> run_experiment(const SimConfig& config,
                                             int threads) {
  config.validate();
  if (threads < 1) threads = 1;

  std::vector<AggregateMetrics> result;
  result.reserve(config.snr_db.size());
  for (double snr_db : config.snr_db) {
    const double mean_linear = std::pow(10.0, snr_db / 10.0);
    std::vector<SlotMetrics> slots(config.slots);
    if (threads == 1 || config.slots == 1) {
      for (int t = 0; t < config.slots; ++t) {
        slots[t] = run_slot(config, mean_linear, t);
      }
    } else {
      // Slots are independent; workers fill a fixed-index table and the
      // reduction below stays in slot order, which keeps parallel output
      // byte-identical to serial.
      std::atomic<int> next{0};
      auto worker = [&]() {
        for (int t = next.fetch_add(1); t < config.slots;
             t = next.fetch_add(1)) {
          slots[t] = run_slot(config, mean_linear, t);
        }
      };
      std::vector<std::thread> pool;
      const int workers = std::min(threads, config.slots);
      pool.reserve(workers);
      for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
      for (std::thread& th : pool) th.join();
    }
    result.push_back(reduce_slots(config, snr_db, slots));
  }
  return result;
}

std::vector<SweepRow> sweep(const std::vector<SimConfig>& configs,
                            int threads) {
  if (configs.empty()) {
    throw std::invalid_argument("sweep needs at least one configuration");
  }
  std::vector<SweepRow> rows;
  for (const SimConfig& config : configs) {
    for (AggregateMetrics& metrics : run_experiment(config, threads)) {
      rows.push_back({config, std::move(metrics)});
    }
  }
  return rows;
}

}  // namespace gsalloc
