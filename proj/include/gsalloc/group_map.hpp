#pragma once

#include <vector>

namespace gsalloc {

// Partition of M subcarriers into M_g interleaved groups of N_g each.
// Group m holds subcarriers {m, m+M_g, ..., m+(N_g-1)*M_g}, so the members
// of one group are spread across the whole band for frequency diversity.
// All indices are 0-based.
struct GroupMap {
  int subcarriers = 0;  // M
  int group_size = 1;   // N_g
  int num_groups = 0;   // M_g = M / N_g

  std::vector<int> group_members(int group) const;
  int group_of(int subcarrier) const { return subcarrier % num_groups; }
};

// Fails if group_size does not divide subcarriers.
GroupMap make_group_map(int subcarriers, int group_size);

}  // namespace gsalloc
