#pragma once

#include <span>
#include <vector>

#include "gsalloc/group_map.hpp"
#include "gsalloc/link.hpp"

namespace gsalloc {

// Proportional fairness weights alpha_1 : ... : alpha_K, all > 0.
struct FairnessWeights {
  std::vector<double> alpha;

  // Scaled to sum 1.
  std::vector<double> normalized() const;
};

// Per-user group quota for the first allocation step.
struct Quotas {
  std::vector<int> per_user;  // M_k = floor(alpha_k * M_g)
};

Quotas quotas(const FairnessWeights& weights, int num_groups);

// Which phase of the allocation assigned a group.
enum class Phase : unsigned char {
  kUnassigned,
  kPreassign,
  kStep1,
  kStep2,
  kBaseline,
};

// Group -> user assignment with per-user accumulated rate. Rates are
// accumulated as mean per-subcarrier rate times group_size, so totals are
// comparable across group sizes.
struct Allocation {
  static constexpr int kUnowned = -1;

  std::vector<int> owner;         // per group, user index or kUnowned
  std::vector<Phase> phase;       // per group
  std::vector<double> user_rate;  // R_k
  std::vector<int> user_groups;   // M_{g,k}
  int group_size = 1;             // N_g

  Allocation() = default;
  Allocation(int users, int num_groups, int group_size);

  int users() const { return static_cast<int>(user_rate.size()); }
  int num_groups() const { return static_cast<int>(owner.size()); }
  int assigned_groups() const;
  double sum_rate() const;

  void assign(int group, int user, double mean_rate, Phase phase);
};

// Groups reported by exactly one user go straight to that user while his
// quota lasts; conflicted or unreported groups are left for later phases.
Allocation preassign_unconflicted(const ReportSet& reports, Quotas& remaining,
                                  int group_size = 1);

// Variance-ordered greedy step. Up to max_it iterations (default: the group
// count), the active user with the highest sample variance of mean rates
// over his remaining reported groups takes his best remaining group if his
// quota allows, otherwise he retires from the competition. Assigned groups
// disappear from every user's report set. Stops early once no unassigned
// reported group remains or no active user has two or more remaining
// reported groups.
void step1_variance(const ReportSet& reports, Quotas& remaining,
                    Allocation& alloc, int max_it = -1);

// Fairness step: every still-unassigned group goes to the user with the
// lowest R_k/alpha_k among the l_param best-rate reporters of that group.
// R_k totals update as groups are handed out. Groups reported by nobody
// stay unassigned.
void step2_fairness(const ReportSet& reports, const FairnessWeights& weights,
                    Allocation& alloc, int l_param);

// The full two-step variance-based allocation:
// quotas -> pre-assignment -> variance step -> fairness step.
// Deterministic; all ties break toward the lowest index.
Allocation allocate_variance(const ReportSet& reports,
                             const FairnessWeights& weights, int l_param,
                             int max_it = -1, int group_size = 1);

// Each group to the reporter with the highest mean rate. max_per_user < 0
// means uncapped; with a cap, a full user drops out of the competition for
// later groups.
Allocation allocate_best_gain(const ReportSet& reports, int max_per_user = -1,
                              int group_size = 1);

// Each user with remaining quota repeatedly claims his best remaining
// reported group; a contested group goes to the claimant with the higher
// mean rate and losers retry against the remainder.
Allocation allocate_decentralized(const ReportSet& reports,
                                  const FairnessWeights& weights,
                                  int group_size = 1);

// Quota-capped best-rate assignment followed by improving pairwise swaps of
// assigned groups between users, until a local optimum or the scan cap.
Allocation allocate_superiority(const ReportSet& reports,
                                const FairnessWeights& weights,
                                int group_size = 1);

// Swap-improvement loop used by allocate_superiority, exposed so the local
// search can be driven from an arbitrary starting assignment. A swap needs
// both users to have reported the group they would receive and is applied
// only when the total rate strictly increases. Returns the totals after
// each applied swap.
std::vector<double> improve_by_swaps(const ReportSet& reports,
                                     Allocation& alloc, int max_scans = -1);

// Equal-power split: P_k = P_t * M_{g,k} / M_g, so every assigned
// subcarrier carries exactly P_t / M and unassigned subcarriers carry 0.
struct PowerMap {
  double total_budget = 0.0;
  std::vector<double> per_user;        // P_k
  std::vector<double> per_subcarrier;  // p, length M
};

PowerMap power_allocate(const Allocation& alloc, double total_power,
                        const GroupMap& map);

// Exhaustive search over all capped group -> user assignments; a group may
// be left unassigned only when every user is at his cap. Desk-scale
// verification only: refuses users > 4 or groups > 8.
struct OracleResult {
  double best_rate = 0.0;
  std::vector<int> owner;
};

OracleResult oracle_exhaustive(const Matrix& rates, std::span<const int> caps);

namespace detail {

// Step-1 ordering key: sample variance of the user's remaining reported
// mean rates; 0 when fewer than two groups remain.
double step1_user_variance(std::span<const double> remaining_rates);

// Lowest-index argmax over a user's remaining reported groups.
int best_reported_group(const ReportSet& reports, int user,
                        const std::vector<bool>& group_taken);

}  // namespace detail

}  // namespace gsalloc
