#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "gsalloc/sim.hpp"

namespace gsalloc {

inline constexpr const char* kVersion = "0.1.0";

// Provenance of one CSV emission. Only the deterministic fields (version,
// seed, command, config) are written into the file, as `#` comment lines
// ahead of the header; the timestamp is display-only so that repeated runs
// of one command produce byte-identical output.
struct RunManifest {
  std::string version = kVersion;
  std::uint64_t seed = 0;
  std::string command_line;
  std::string timestamp;    // not embedded in the CSV
  std::string output_path;  // "-" for stdout

  std::string status_line() const;
};

// Locale-independent shortest round-trip formatting.
std::string format_double(double value);

// Fixed schema: manifest comments, then
//   algo,snr_db,users,subcarriers,group_size,epsilon,gap,l_param,slots,seed,
//   throughput_per_subcarrier,jain_index,assigned_fraction,share_user_<k>...
// with one share column per user up to the largest K among the rows; rows
// with fewer users leave the extra cells empty. '\n' newlines.
void write_csv(std::ostream& out, const RunManifest& manifest,
               std::span<const SweepRow> rows);

}  // namespace gsalloc
