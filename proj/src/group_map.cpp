#include "gsalloc/group_map.hpp"

#include <stdexcept>
#include <string>

namespace gsalloc {

GroupMap make_group_map(int subcarriers, int group_size) {
  if (subcarriers <= 0 || group_size <= 0) {
    throw std::invalid_argument(
        "group map needs positive sizes, got subcarriers=" +
        std::to_string(subcarriers) + " group_size=" +
        std::to_string(group_size));
  }
  if (subcarriers % group_size != 0) {
    throw std::invalid_argument(
        "group_size " + std::to_string(group_size) +
        " does not divide subcarriers " + std::to_string(subcarriers));
  }
  GroupMap map;
  map.subcarriers = subcarriers;
  map.group_size = group_size;
  map.num_groups = subcarriers / group_size;
  return map;
}

std::vector<int> GroupMap::group_members(int group) const {
  std::vector<int> members(group_size);
  for (int j = 0; j < group_size; ++j) {
    members[j] = group + j * num_groups;
  }
  return members;
}

}  // namespace gsalloc
