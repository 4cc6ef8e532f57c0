#include "gsalloc/report.hpp"

#include <charconv>
#include <system_error>

namespace gsalloc {

std::string format_double(double value) {
  char buf[64];
  const std::to_chars_result res = std::to_chars(buf, buf + sizeof(buf), value);
  if (res.ec != std::errc()) return "nan";
  return std::string(buf, res.ptr);
}

std::string RunManifest::status_line() const {
  std::string line = "gsalloc " + version + " seed=" + std::to_string(seed);
  if (!timestamp.empty()) line += " " + timestamp;
  if (!output_path.empty()) line += " -> " + output_path;
  return line;
}

void write_csv(std::ostream& out, const RunManifest& manifest,
               std::span<const SweepRow> rows) {
  // Only reproducible fields go into the file; the timestamp stays out so
  // identical commands emit identical bytes.
  out << "# gsalloc " << manifest.version << "\n";
  out << "# seed: " << manifest.seed << "\n";
  if (!manifest.command_line.empty()) {
    out << "# command: " << manifest.command_line << "\n";
  }

  int max_users = 0;
  for (const SweepRow& row : rows) {
    max_users = std::max(max_users, row.config.users);
  }

  out << "algo,snr_db,users,subcarriers,group_size,epsilon,gap,l_param,slots,"
         "seed,throughput_per_subcarrier,jain_index,assigned_fraction";
  for (int k = 0; k < max_users; ++k) {
    out << ",share_user_" << k;
  }
  out << "\n";

  for (const SweepRow& row : rows) {
    const SimConfig& c = row.config;
    const AggregateMetrics& m = row.metrics;
    out << algorithm_name(c.algo) << ',' << format_double(m.snr_db) << ','
        << c.users << ',' << c.subcarriers << ',' << c.group_size << ','
        << format_double(c.epsilon) << ',' << format_double(c.gap) << ','
        << c.l_param << ',' << c.slots << ',' << c.seed << ','
        << format_double(m.throughput_per_subcarrier) << ','
        << (m.jain ? format_double(*m.jain) : "nan") << ','
        << format_double(m.assigned_fraction);
    for (int k = 0; k < max_users; ++k) {
      out << ',';
      if (k < static_cast<int>(m.user_share.size())) {
        out << format_double(m.user_share[k]);
      } else if (k < c.users) {
        out << format_double(0.0);  // no-data window
      }
      // cells beyond this row's user count stay empty
    }
    out << "\n";
  }
}

}  // namespace gsalloc
