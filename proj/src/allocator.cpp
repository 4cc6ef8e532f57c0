#include "gsalloc/allocator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace gsalloc {

namespace {

constexpr double kSwapEps = 1e-12;

void check_weights_match(const FairnessWeights& weights, int users) {
  if (static_cast<int>(weights.alpha.size()) != users) {
    throw std::invalid_argument("got " + std::to_string(weights.alpha.size()) +
                                " fairness weights for " +
                                std::to_string(users) + " users");
  }
}

// Dense lookup of the reported CSI; entries the user did not report are
// absent for the scheduler.
struct RateTable {
  int users = 0;
  int groups = 0;
  std::vector<double> rate;     // users x groups
  std::vector<char> reported;   // users x groups

  explicit RateTable(const ReportSet& reports)
      : users(reports.users()),
        groups(reports.num_groups),
        rate(static_cast<std::size_t>(users) * groups, 0.0),
        reported(static_cast<std::size_t>(users) * groups, 0) {
    for (int k = 0; k < users; ++k) {
      for (const ReportSet::Entry& e : reports.per_user[k]) {
        if (e.group < 0 || e.group >= groups) {
          throw std::invalid_argument("reported group index out of range");
        }
        rate[idx(k, e.group)] = e.mean_rate;
        reported[idx(k, e.group)] = 1;
      }
    }
  }

  std::size_t idx(int user, int group) const {
    return static_cast<std::size_t>(user) * groups + group;
  }
  bool has(int user, int group) const { return reported[idx(user, group)] != 0; }
  double at(int user, int group) const { return rate[idx(user, group)]; }
};

}  // namespace

std::vector<double> FairnessWeights::normalized() const {
  if (alpha.empty()) {
    throw std::invalid_argument("fairness weights are empty");
  }
  double sum = 0.0;
  for (double a : alpha) {
    if (!(a > 0.0)) {
      throw std::invalid_argument("fairness weights must be > 0");
    }
    sum += a;
  }
  std::vector<double> result(alpha.size());
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    result[k] = alpha[k] / sum;
  }
  return result;
}

Quotas quotas(const FairnessWeights& weights, int num_groups) {
  if (num_groups < 1) {
    throw std::invalid_argument("quota computation needs at least one group");
  }
  const std::vector<double> alpha = weights.normalized();
  Quotas result;
  result.per_user.resize(alpha.size());
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    // The 1e-9 nudge keeps floor() exact when rational weights land on an
    // integer boundary up to binary rounding (e.g. uniform weights).
    result.per_user[k] =
        static_cast<int>(std::floor(alpha[k] * num_groups + 1e-9));
  }
  return result;
}

Allocation::Allocation(int users, int num_groups, int group_size)
    : owner(num_groups, kUnowned),
      phase(num_groups, Phase::kUnassigned),
      user_rate(users, 0.0),
      user_groups(users, 0),
      group_size(group_size) {}

int Allocation::assigned_groups() const {
  int count = 0;
  for (int o : owner) count += (o != kUnowned);
  return count;
}

double Allocation::sum_rate() const {
  double sum = 0.0;
  for (double r : user_rate) sum += r;
  return sum;
}

void Allocation::assign(int group, int user, double mean_rate, Phase p) {
  if (owner[group] != kUnowned) {
    throw std::logic_error("group " + std::to_string(group) +
                           " already assigned");
  }
  owner[group] = user;
  phase[group] = p;
  user_rate[user] += mean_rate * group_size;
  user_groups[user] += 1;
}

namespace detail {

double step1_user_variance(std::span<const double> remaining_rates) {
  if (remaining_rates.size() < 2) return 0.0;
  return sample_variance(remaining_rates);
}

int best_reported_group(const ReportSet& reports, int user,
                        const std::vector<bool>& group_taken) {
  int best = -1;
  double best_rate = -std::numeric_limits<double>::infinity();
  for (const ReportSet::Entry& e : reports.per_user[user]) {
    if (group_taken[e.group]) continue;
    if (e.mean_rate > best_rate) {
      best_rate = e.mean_rate;
      best = e.group;
    }
  }
  return best;
}

}  // namespace detail

Allocation preassign_unconflicted(const ReportSet& reports, Quotas& remaining,
                                  int group_size) {
  const int users = reports.users();
  const int groups = reports.num_groups;
  if (static_cast<int>(remaining.per_user.size()) != users) {
    throw std::invalid_argument("quota vector does not match user count");
  }
  Allocation alloc(users, groups, group_size);

  std::vector<int> reporter_count(groups, 0);
  std::vector<int> sole_reporter(groups, -1);
  std::vector<double> sole_rate(groups, 0.0);
  for (int k = 0; k < users; ++k) {
    for (const ReportSet::Entry& e : reports.per_user[k]) {
      reporter_count[e.group] += 1;
      sole_reporter[e.group] = k;
      sole_rate[e.group] = e.mean_rate;
    }
  }
  for (int m = 0; m < groups; ++m) {
    if (reporter_count[m] != 1) continue;
    const int k = sole_reporter[m];
    if (remaining.per_user[k] < 1) continue;  // left for the fairness step
    alloc.assign(m, k, sole_rate[m], Phase::kPreassign);
    remaining.per_user[k] -= 1;
  }
  return alloc;
}

void step1_variance(const ReportSet& reports, Quotas& remaining,
                    Allocation& alloc, int max_it) {
  const int users = reports.users();
  const int groups = reports.num_groups;
  if (max_it < 0) max_it = groups;

  std::vector<bool> taken(groups, false);
  for (int m = 0; m < groups; ++m) taken[m] = alloc.owner[m] != Allocation::kUnowned;

  // U: users that reported anything; retirement removes them.
  std::vector<bool> active(users);
  for (int k = 0; k < users; ++k) active[k] = !reports.per_user[k].empty();

  std::vector<double> scratch;
  for (int it = 0; it < max_it; ++it) {
    int chosen = -1;
    double chosen_variance = -1.0;
    int widest = 0;  // most remaining reported groups over active users
    for (int k = 0; k < users; ++k) {
      if (!active[k]) continue;
      scratch.clear();
      for (const ReportSet::Entry& e : reports.per_user[k]) {
        if (!taken[e.group]) scratch.push_back(e.mean_rate);
      }
      const int count = static_cast<int>(scratch.size());
      widest = std::max(widest, count);
      if (count == 0) continue;  // nothing left to claim
      const double v = detail::step1_user_variance(scratch);
      if (v > chosen_variance) {
        chosen_variance = v;
        chosen = k;
      }
    }
    // Single leftovers are the fairness step's business.
    if (chosen < 0 || widest < 2) break;

    if (remaining.per_user[chosen] >= 1) {
      const int m = detail::best_reported_group(reports, chosen, taken);
      double r = 0.0;
      for (const ReportSet::Entry& e : reports.per_user[chosen]) {
        if (e.group == m) r = e.mean_rate;
      }
      alloc.assign(m, chosen, r, Phase::kStep1);
      remaining.per_user[chosen] -= 1;
      taken[m] = true;
    } else {
      active[chosen] = false;  // quota exhausted, still eligible in step 2
    }
  }
}

void step2_fairness(const ReportSet& reports, const FairnessWeights& weights,
                    Allocation& alloc, int l_param) {
  const int users = reports.users();
  check_weights_match(weights, users);
  if (l_param < 1 || l_param > users) {
    throw std::invalid_argument("l_param " + std::to_string(l_param) +
                                " out of range [1, " + std::to_string(users) +
                                "]");
  }
  const std::vector<double> alpha = weights.normalized();

  struct Candidate {
    int user;
    double mean_rate;
  };
  std::vector<std::vector<Candidate>> candidates(reports.num_groups);
  for (int k = 0; k < users; ++k) {
    for (const ReportSet::Entry& e : reports.per_user[k]) {
      candidates[e.group].push_back({k, e.mean_rate});
    }
  }

  for (int m = 0; m < reports.num_groups; ++m) {
    if (alloc.owner[m] != Allocation::kUnowned) continue;
    std::vector<Candidate>& cands = candidates[m];
    if (cands.empty()) continue;  // nobody reported it: stays unassigned
    std::sort(cands.begin(), cands.end(),
              [](const Candidate& a, const Candidate& b) {
                if (a.mean_rate != b.mean_rate) return a.mean_rate > b.mean_rate;
                return a.user < b.user;
              });
    const int take = std::min<int>(l_param, static_cast<int>(cands.size()));
    int best = -1;
    double best_load = std::numeric_limits<double>::infinity();
    double best_rate = 0.0;
    for (int i = 0; i < take; ++i) {
      const double load = alloc.user_rate[cands[i].user] / alpha[cands[i].user];
      if (load < best_load ||
          (load == best_load && cands[i].user < best)) {
        best_load = load;
        best = cands[i].user;
        best_rate = cands[i].mean_rate;
      }
    }
    // R_k updates immediately, so later groups see the new totals.
    alloc.assign(m, best, best_rate, Phase::kStep2);
  }
}

Allocation allocate_variance(const ReportSet& reports,
                             const FairnessWeights& weights, int l_param,
                             int max_it, int group_size) {
  check_weights_match(weights, reports.users());
  Quotas remaining = quotas(weights, reports.num_groups);
  Allocation alloc = preassign_unconflicted(reports, remaining, group_size);
  step1_variance(reports, remaining, alloc, max_it);
  step2_fairness(reports, weights, alloc, l_param);
  return alloc;
}

Allocation allocate_best_gain(const ReportSet& reports, int max_per_user,
                              int group_size) {
  const int users = reports.users();
  RateTable table(reports);
  Allocation alloc(users, reports.num_groups, group_size);
  for (int m = 0; m < reports.num_groups; ++m) {
    int best = -1;
    double best_rate = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < users; ++k) {
      if (!table.has(k, m)) continue;
      if (max_per_user >= 0 && alloc.user_groups[k] >= max_per_user) continue;
      if (table.at(k, m) > best_rate) {
        best_rate = table.at(k, m);
        best = k;
      }
    }
    if (best >= 0) {
      alloc.assign(m, best, best_rate, Phase::kBaseline);
    }
  }
  return alloc;
}

Allocation allocate_decentralized(const ReportSet& reports,
                                  const FairnessWeights& weights,
                                  int group_size) {
  const int users = reports.users();
  check_weights_match(weights, users);
  const int groups = reports.num_groups;
  Quotas remaining = quotas(weights, groups);
  RateTable table(reports);
  Allocation alloc(users, groups, group_size);
  std::vector<bool> taken(groups, false);

  while (true) {
    // Every user with quota left claims his best remaining reported group.
    std::vector<int> claim_of(users, -1);
    bool any_claim = false;
    for (int k = 0; k < users; ++k) {
      if (remaining.per_user[k] < 1) continue;
      claim_of[k] = detail::best_reported_group(reports, k, taken);
      any_claim |= claim_of[k] >= 0;
    }
    if (!any_claim) break;

    // Contested groups go to the higher rate; losers retry next round.
    for (int m = 0; m < groups; ++m) {
      int winner = -1;
      double winner_rate = -std::numeric_limits<double>::infinity();
      for (int k = 0; k < users; ++k) {
        if (claim_of[k] != m) continue;
        if (table.at(k, m) > winner_rate) {
          winner_rate = table.at(k, m);
          winner = k;
        }
      }
      if (winner >= 0) {
        alloc.assign(m, winner, winner_rate, Phase::kBaseline);
        remaining.per_user[winner] -= 1;
        taken[m] = true;
      }
    }
  }
  return alloc;
}

std::vector<double> improve_by_swaps(const ReportSet& reports,
                                     Allocation& alloc, int max_scans) {
  const int groups = reports.num_groups;
  if (max_scans < 0) max_scans = groups * groups;
  RateTable table(reports);
  std::vector<double> totals;

  for (int scan = 0; scan < max_scans; ++scan) {
    bool improved = false;
    for (int g1 = 0; g1 < groups; ++g1) {
      if (alloc.owner[g1] == Allocation::kUnowned) continue;
      for (int g2 = g1 + 1; g2 < groups; ++g2) {
        // Re-read on every pair: an applied swap changes owner[g1].
        const int u1 = alloc.owner[g1];
        const int u2 = alloc.owner[g2];
        if (u2 == Allocation::kUnowned || u2 == u1) continue;
        // Both users must know the group they would take over.
        if (!table.has(u1, g2) || !table.has(u2, g1)) continue;
        const double gain = table.at(u1, g2) + table.at(u2, g1) -
                            table.at(u1, g1) - table.at(u2, g2);
        if (gain <= kSwapEps) continue;
        alloc.owner[g1] = u2;
        alloc.owner[g2] = u1;
        alloc.user_rate[u1] +=
            (table.at(u1, g2) - table.at(u1, g1)) * alloc.group_size;
        alloc.user_rate[u2] +=
            (table.at(u2, g1) - table.at(u2, g2)) * alloc.group_size;
        totals.push_back(alloc.sum_rate());
        improved = true;
      }
    }
    if (!improved) break;
  }
  return totals;
}

Allocation allocate_superiority(const ReportSet& reports,
                                const FairnessWeights& weights,
                                int group_size) {
  const int users = reports.users();
  check_weights_match(weights, users);
  const int groups = reports.num_groups;
  Quotas remaining = quotas(weights, groups);
  RateTable table(reports);
  Allocation alloc(users, groups, group_size);

  // Conflicts resolved by the higher mean rate, within quotas.
  for (int m = 0; m < groups; ++m) {
    int best = -1;
    double best_rate = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < users; ++k) {
      if (!table.has(k, m) || remaining.per_user[k] < 1) continue;
      if (table.at(k, m) > best_rate) {
        best_rate = table.at(k, m);
        best = k;
      }
    }
    if (best >= 0) {
      alloc.assign(m, best, best_rate, Phase::kBaseline);
      remaining.per_user[best] -= 1;
    }
  }

  improve_by_swaps(reports, alloc);
  return alloc;
}

PowerMap power_allocate(const Allocation& alloc, double total_power,
                        const GroupMap& map) {
  if (!(total_power > 0.0)) {
    throw std::invalid_argument("total power must be > 0");
  }
  if (map.num_groups != alloc.num_groups()) {
    throw std::invalid_argument("group map does not match the allocation");
  }
  PowerMap power;
  power.total_budget = total_power;
  power.per_user.assign(alloc.users(), 0.0);
  for (int k = 0; k < alloc.users(); ++k) {
    if (alloc.user_groups[k] > 0) {
      power.per_user[k] =
          total_power *
          (static_cast<double>(alloc.user_groups[k]) / map.num_groups);
    }
  }
  // P_k / (M_{g,k} * N_g) reduces to P_t / M; computing it directly keeps
  // every assigned subcarrier bit-identical.
  const double per_subcarrier = total_power / map.subcarriers;
  power.per_subcarrier.assign(map.subcarriers, 0.0);
  for (int s = 0; s < map.subcarriers; ++s) {
    if (alloc.owner[map.group_of(s)] != Allocation::kUnowned) {
      power.per_subcarrier[s] = per_subcarrier;
    }
  }
  return power;
}

OracleResult oracle_exhaustive(const Matrix& rates, std::span<const int> caps) {
  const int users = static_cast<int>(rates.size());
  if (users < 1 || users > 4) {
    throw std::invalid_argument("oracle limited to 1..4 users, got " +
                                std::to_string(users));
  }
  const int groups = static_cast<int>(rates.front().size());
  if (groups < 1 || groups > 8) {
    throw std::invalid_argument("oracle limited to 1..8 groups, got " +
                                std::to_string(groups));
  }
  if (static_cast<int>(caps.size()) != users) {
    throw std::invalid_argument("oracle cap vector does not match user count");
  }

  OracleResult best;
  best.best_rate = -std::numeric_limits<double>::infinity();
  std::vector<int> owner(groups, Allocation::kUnowned);
  std::vector<int> load(users, 0);

  auto recurse = [&](auto&& self, int group, double total) -> void {
    if (group == groups) {
      // A group may only stay unassigned once every user is at his cap.
      bool has_unassigned = false;
      for (int o : owner) has_unassigned |= o == Allocation::kUnowned;
      if (has_unassigned) {
        for (int k = 0; k < users; ++k) {
          if (load[k] < caps[k]) return;
        }
      }
      if (total > best.best_rate) {
        best.best_rate = total;
        best.owner = owner;
      }
      return;
    }
    for (int k = 0; k < users; ++k) {
      if (load[k] >= caps[k]) continue;
      owner[group] = k;
      load[k] += 1;
      self(self, group + 1, total + rates[k][group]);
      load[k] -= 1;
    }
    owner[group] = Allocation::kUnowned;
    self(self, group + 1, total);
  };
  // A valid leaf always exists (fill every cap, leave the rest unassigned),
  // so best is populated.
  recurse(recurse, 0, 0.0);
  return best;
}

}  // namespace gsalloc
