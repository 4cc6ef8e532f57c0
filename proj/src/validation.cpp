#include "gsalloc/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>

#include "gsalloc/allocator.hpp"
#include "gsalloc/report.hpp"
#include "gsalloc/rng.hpp"
#include "gsalloc/sim.hpp"

namespace gsalloc {

namespace {

// The two-user table used throughout: per-group mean rates with one
// subcarrier per group.
const Matrix kExampleRates = {{90.0, 60.0, 20.0, 10.0},
                              {100.0, 90.0, 70.0, 70.0}};

ReportSet report_everything(const Matrix& rates) {
  ReportSet reports;
  reports.num_groups = static_cast<int>(rates.front().size());
  reports.per_user.resize(rates.size());
  for (std::size_t k = 0; k < rates.size(); ++k) {
    for (int m = 0; m < reports.num_groups; ++m) {
      reports.per_user[k].push_back({m, rates[k][m]});
    }
  }
  return reports;
}

// Random scheduler-visible instance: i.i.d. exp(1) rates, each one reported
// with probability report_prob.
struct RandomInstance {
  Matrix rates;
  ReportSet reports;
  FairnessWeights weights;
};

RandomInstance random_instance(rng::Stream& stream, int users, int groups,
                               double report_prob) {
  RandomInstance inst;
  inst.rates.assign(users, std::vector<double>(groups, 0.0));
  inst.reports.num_groups = groups;
  inst.reports.per_user.resize(users);
  for (int k = 0; k < users; ++k) {
    for (int m = 0; m < groups; ++m) {
      inst.rates[k][m] = stream.next_exponential(1.0);
      if (stream.next_unit() < report_prob) {
        inst.reports.per_user[k].push_back({m, inst.rates[k][m]});
      }
    }
  }
  inst.weights.alpha.resize(users);
  for (int k = 0; k < users; ++k) {
    inst.weights.alpha[k] = 1.0 + std::floor(stream.next_unit() * 4.0);
  }
  return inst;
}

bool allocation_consistent(const Allocation& alloc) {
  std::vector<int> counts(alloc.users(), 0);
  for (int m = 0; m < alloc.num_groups(); ++m) {
    const int o = alloc.owner[m];
    if (o == Allocation::kUnowned) {
      if (alloc.phase[m] != Phase::kUnassigned) return false;
      continue;
    }
    if (o < 0 || o >= alloc.users()) return false;
    if (alloc.phase[m] == Phase::kUnassigned) return false;
    counts[o] += 1;
  }
  return counts == alloc.user_groups;
}

std::string fmt(double v) { return format_double(v); }

CheckResult check_worked_example() {
  const ReportSet reports = report_everything(kExampleRates);
  const FairnessWeights weights{{1.0, 1.0}};
  const double var_total = allocate_variance(reports, weights, 1).sum_rate();
  const double best_total = allocate_best_gain(reports, 2).sum_rate();
  const std::vector<int> caps = {2, 2};
  const double oracle = oracle_exhaustive(kExampleRates, caps).best_rate;
  const bool ok = std::abs(var_total - 290.0) < 1e-9 &&
                  std::abs(best_total - 220.0) < 1e-9 &&
                  std::abs(oracle - 290.0) < 1e-9;
  return {"worked_example_oracle", ok,
          "variance=" + fmt(var_total) + " best_gain=" + fmt(best_total) +
              " oracle=" + fmt(oracle)};
}

CheckResult check_oracle_dominance(std::uint64_t seed, int instances) {
  rng::Stream stream(rng::derive(seed, 1));
  double ratio_sum = 0.0;
  int failures = 0;
  for (int i = 0; i < instances; ++i) {
    const int users = 1 + static_cast<int>(stream.next_unit() * 3.0);
    const int groups = 1 + static_cast<int>(stream.next_unit() * 6.0);
    RandomInstance inst = random_instance(stream, users, groups, 1.0);
    const int l_param = 1 + static_cast<int>(stream.next_unit() * users);

    // Uncapped oracle: the variance algorithm's fairness step has no quota
    // guard, so only the cap-free optimum is a sound upper bound.
    const std::vector<int> caps(users, groups);
    const OracleResult oracle = oracle_exhaustive(inst.rates, caps);
    const double got =
        allocate_variance(inst.reports, inst.weights, std::min(l_param, users))
            .sum_rate();
    if (got > oracle.best_rate + 1e-9) failures += 1;
    if (oracle.best_rate > 0.0) ratio_sum += got / oracle.best_rate;
  }
  std::ostringstream detail;
  detail << "instances=" << instances << " violations=" << failures
         << " mean_optimality_ratio=" << fmt(ratio_sum / instances);
  return {"oracle_dominance", failures == 0, detail.str()};
}

CheckResult check_quota_safety(std::uint64_t seed, int cases) {
  rng::Stream stream(rng::derive(seed, 2));
  int failures = 0;
  for (int i = 0; i < cases; ++i) {
    const int users = 1 + static_cast<int>(stream.next_unit() * 6.0);
    const int groups = 1 + static_cast<int>(stream.next_unit() * 12.0);
    RandomInstance inst = random_instance(stream, users, groups, 0.7);
    const Quotas limit = quotas(inst.weights, groups);
    Quotas remaining = limit;
    Allocation alloc =
        preassign_unconflicted(inst.reports, remaining, 1);
    step1_variance(inst.reports, remaining, alloc);
    for (int k = 0; k < users; ++k) {
      if (alloc.user_groups[k] > limit.per_user[k]) failures += 1;
    }
    if (!allocation_consistent(alloc)) failures += 1;
  }
  return {"quota_safety", failures == 0,
          "cases=" + std::to_string(cases) +
              " violations=" + std::to_string(failures)};
}

CheckResult check_exclusivity(std::uint64_t seed, int cases) {
  rng::Stream stream(rng::derive(seed, 3));
  int failures = 0;
  for (int i = 0; i < cases; ++i) {
    const int users = 1 + static_cast<int>(stream.next_unit() * 6.0);
    const int groups = 1 + static_cast<int>(stream.next_unit() * 12.0);
    RandomInstance inst = random_instance(stream, users, groups, 0.6);
    const int l_param = 1 + static_cast<int>(stream.next_unit() * users);
    const Allocation allocs[] = {
        allocate_variance(inst.reports, inst.weights,
                          std::min(l_param, users)),
        allocate_best_gain(inst.reports),
        allocate_decentralized(inst.reports, inst.weights),
        allocate_superiority(inst.reports, inst.weights),
    };
    for (const Allocation& alloc : allocs) {
      if (!allocation_consistent(alloc)) failures += 1;
    }
  }
  return {"group_exclusivity", failures == 0,
          "cases=" + std::to_string(cases) +
              " violations=" + std::to_string(failures)};
}

CheckResult check_power(std::uint64_t seed, int cases) {
  rng::Stream stream(rng::derive(seed, 4));
  int failures = 0;
  for (int i = 0; i < cases; ++i) {
    const int users = 1 + static_cast<int>(stream.next_unit() * 6.0);
    const int group_size = 1 + static_cast<int>(stream.next_unit() * 4.0);
    const int groups = 1 + static_cast<int>(stream.next_unit() * 12.0);
    const GroupMap map = make_group_map(groups * group_size, group_size);
    RandomInstance inst = random_instance(stream, users, groups, 0.7);
    const Allocation alloc =
        allocate_variance(inst.reports, inst.weights, 1, -1, group_size);
    const double total = 0.25 + stream.next_unit() * 4.0;
    const PowerMap power = power_allocate(alloc, total, map);

    const double per_subcarrier = total / map.subcarriers;
    for (int s = 0; s < map.subcarriers; ++s) {
      const bool assigned =
          alloc.owner[map.group_of(s)] != Allocation::kUnowned;
      if (power.per_subcarrier[s] != (assigned ? per_subcarrier : 0.0)) {
        failures += 1;
      }
    }
    const double used =
        total * (static_cast<double>(alloc.assigned_groups()) / map.num_groups);
    if (used > total) failures += 1;
    double user_sum = 0.0;
    for (double p : power.per_user) user_sum += p;
    if (std::abs(user_sum - used) > 1e-9 * std::max(1.0, total)) failures += 1;
  }
  return {"power_split", failures == 0,
          "cases=" + std::to_string(cases) +
              " violations=" + std::to_string(failures)};
}

CheckResult check_jain(std::uint64_t seed, int cases) {
  rng::Stream stream(rng::derive(seed, 5));
  int failures = 0;
  for (int i = 0; i < cases; ++i) {
    const int users = 1 + static_cast<int>(stream.next_unit() * 16.0);
    std::vector<double> rates(users);
    std::vector<double> alpha(users);
    bool any = false;
    for (int k = 0; k < users; ++k) {
      rates[k] = stream.next_unit() < 0.1 ? 0.0 : stream.next_exponential(2.0);
      any |= rates[k] > 0.0;
      alpha[k] = 0.1 + stream.next_unit() * 4.0;
    }
    if (!any) rates[0] = 1.0;
    const auto index = jain_index(rates, alpha);
    if (!index || *index < 1.0 / users - 1e-12 || *index > 1.0 + 1e-12) {
      failures += 1;
      continue;
    }
    const double scale = 0.5 + stream.next_unit() * 10.0;
    std::vector<double> scaled(rates);
    for (double& r : scaled) r *= scale;
    const auto scaled_index = jain_index(scaled, alpha);
    if (!scaled_index || std::abs(*scaled_index - *index) > 1e-12) {
      failures += 1;
    }
  }
  return {"jain_bounds_and_scale", failures == 0,
          "cases=" + std::to_string(cases) +
              " violations=" + std::to_string(failures)};
}

CheckResult check_variance_laws(std::uint64_t seed, int cases) {
  rng::Stream stream(rng::derive(seed, 6));
  int failures = 0;
  for (int i = 0; i < cases; ++i) {
    const int n = 2 + static_cast<int>(stream.next_unit() * 14.0);
    std::vector<double> values(n);
    for (double& v : values) v = stream.next_exponential(3.0);
    const double base = sample_variance(values);

    const double shift = stream.next_unit() * 20.0 - 10.0;
    std::vector<double> shifted(values);
    for (double& v : shifted) v += shift;
    const double tol = 1e-9 * std::max(1.0, base);
    if (std::abs(sample_variance(shifted) - base) > tol) failures += 1;

    const double scale = 0.25 + stream.next_unit() * 8.0;
    std::vector<double> scaled(values);
    for (double& v : scaled) v *= scale;
    if (std::abs(sample_variance(scaled) - scale * scale * base) >
        1e-9 * std::max(1.0, scale * scale * base)) {
      failures += 1;
    }
  }
  return {"variance_laws", failures == 0,
          "cases=" + std::to_string(cases) +
              " violations=" + std::to_string(failures)};
}

CheckResult check_swap_monotonicity(std::uint64_t seed, int cases) {
  rng::Stream stream(rng::derive(seed, 7));
  int failures = 0;
  for (int i = 0; i < cases; ++i) {
    const int users = 2 + static_cast<int>(stream.next_unit() * 4.0);
    const int groups = 2 + static_cast<int>(stream.next_unit() * 10.0);
    RandomInstance inst = random_instance(stream, users, groups, 0.8);
    Allocation alloc = allocate_best_gain(inst.reports);
    const double before = alloc.sum_rate();
    const std::vector<double> trace = improve_by_swaps(inst.reports, alloc);
    double last = before;
    for (double t : trace) {
      if (t <= last) failures += 1;
      last = t;
    }
    if (alloc.sum_rate() < before - 1e-12) failures += 1;
    if (!allocation_consistent(alloc)) failures += 1;
  }
  return {"swap_monotonicity", failures == 0,
          "cases=" + std::to_string(cases) +
              " violations=" + std::to_string(failures)};
}

CheckResult check_determinism(std::uint64_t seed) {
  SimConfig config;
  config.users = 4;
  config.subcarriers = 32;
  config.group_size = 2;
  config.epsilon = 0.5;
  config.l_param = 2;
  config.alpha = {2.0, 1.0, 1.0, 2.0};
  config.slots = 50;
  config.snr_db = {0.0, 10.0};
  config.seed = seed;

  bool ok = true;
  const auto serial = run_experiment(config, 1);
  const auto repeat = run_experiment(config, 1);
  const auto threaded = run_experiment(config, 8);
  for (const auto& other : {repeat, threaded}) {
    if (other.size() != serial.size()) {
      ok = false;
      break;
    }
    for (std::size_t i = 0; i < serial.size(); ++i) {
      ok &= serial[i].user_rate_total == other[i].user_rate_total;
      ok &= serial[i].throughput_per_subcarrier ==
            other[i].throughput_per_subcarrier;
      ok &= serial[i].jain == other[i].jain;
    }
  }
  return {"determinism_serial_vs_threaded", ok,
          ok ? "bit-identical across repeat and 8-thread runs"
             : "mismatch between runs"};
}

}  // namespace

std::vector<CheckResult> run_validation(const ValidationOptions& options) {
  std::vector<CheckResult> results;
  results.push_back(check_worked_example());
  results.push_back(check_oracle_dominance(options.seed, options.oracle_instances));
  results.push_back(check_quota_safety(options.seed, options.property_cases));
  results.push_back(check_exclusivity(options.seed, options.property_cases));
  results.push_back(check_power(options.seed, options.property_cases));
  results.push_back(check_jain(options.seed, options.property_cases));
  results.push_back(check_variance_laws(options.seed, options.property_cases));
  results.push_back(check_swap_monotonicity(options.seed,
                                            options.property_cases));
  results.push_back(check_determinism(options.seed));
  return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.passed; });
}

}  // namespace gsalloc
