// Command-line frontend: run experiments, sweep a parameter axis, print the
// built-in two-user example, or run the self-validation suite. Emits CSV with
// a deterministic manifest header; all randomness derives from --seed.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gsalloc/allocator.hpp"
#include "gsalloc/link.hpp"
#include "gsalloc/report.hpp"
#include "gsalloc/sim.hpp"
#include "gsalloc/validation.hpp"

namespace {

using namespace gsalloc;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

template <typename T>
std::string join_csv(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    if constexpr (std::is_same_v<T, double>) {
      out += format_double(values[i]);
    } else {
      out += std::to_string(values[i]);
    }
  }
  return out;
}

// Everything the user can set that shapes the experiment itself. Volatile
// flags (--threads, --out) stay outside so they never reach the CSV bytes.
struct ExperimentFlags {
  int users = 8;
  int subcarriers = 128;
  int group_size = 4;
  double epsilon = 0.5;
  double gap = 1.0;
  double ber = 0.0;
  int l_param = 0;
  int slots = 200;
  std::vector<double> snr_db = {10.0};
  std::vector<double> alpha;
  std::uint64_t seed = 1;

  bool l_given = false;
  bool ber_given = false;
  bool alpha_given = false;
};

struct ExperimentOptions {
  CLI::Option* l_opt = nullptr;
  CLI::Option* ber_opt = nullptr;
  CLI::Option* alpha_opt = nullptr;
};

ExperimentOptions add_experiment_flags(CLI::App* cmd, ExperimentFlags& f,
                                       int& threads, std::string& out_path) {
  ExperimentOptions opts;
  cmd->add_option("--users", f.users, "Number of users K")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--subcarriers", f.subcarriers, "Number of subcarriers M")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--group-size", f.group_size,
                  "Subcarriers per group N_g (must divide M)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--epsilon", f.epsilon,
                  "Reporting threshold: report groups with variance <= "
                  "epsilon * mean_snr^2")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  CLI::Option* gap_opt =
      cmd->add_option("--gap", f.gap, "SNR gap (linear)")
          ->check(CLI::PositiveNumber)
          ->capture_default_str();
  opts.ber_opt =
      cmd->add_option("--ber", f.ber,
                      "Target BER; sets the SNR gap to -ln(5*ber)/1.6");
  gap_opt->excludes(opts.ber_opt);
  opts.ber_opt->excludes(gap_opt);
  opts.l_opt = cmd->add_option(
                      "--l-param", f.l_param,
                      "Fairness-step candidate count L (default: K/4, min 1)")
                   ->check(CLI::PositiveNumber);
  cmd->add_option("--slots", f.slots, "Scheduling slots per SNR point")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--snr-db", f.snr_db, "Mean SNR points in dB")
      ->delimiter(',')
      ->capture_default_str();
  opts.alpha_opt =
      cmd->add_option("--alpha", f.alpha,
                      "Fairness weights, one per user (default: uniform)")
          ->delimiter(',');
  cmd->add_option("--seed", f.seed, "Master RNG seed")->capture_default_str();
  cmd->add_option("--threads", threads, "Worker threads (output-invariant)")
      ->check(CLI::PositiveNumber)
      ->envname("GSALLOC_THREADS")
      ->capture_default_str();
  cmd->add_option("--out", out_path, "Output file ('-' for stdout)")
      ->capture_default_str();
  cmd->set_config("--config", "",
                  "key=value defaults file ('#' comments); flags override");
  return opts;
}

void read_given_flags(const ExperimentOptions& opts, ExperimentFlags& f) {
  f.l_given = opts.l_opt->count() > 0;
  f.ber_given = opts.ber_opt->count() > 0;
  f.alpha_given = opts.alpha_opt->count() > 0;
}

// Resolves flags into a validated SimConfig. Returns false with a message
// on any config error; the caller maps that to exit code 2.
bool resolve_config(const ExperimentFlags& f, Algorithm algo, SimConfig& config,
                    std::string& error) {
  config.users = f.users;
  config.subcarriers = f.subcarriers;
  config.group_size = f.group_size;
  config.epsilon = f.epsilon;
  config.slots = f.slots;
  config.snr_db = f.snr_db;
  config.seed = f.seed;
  config.algo = algo;
  try {
    config.gap = f.ber_given ? snr_gap_from_ber(f.ber) : f.gap;
  } catch (const std::exception& e) {
    error = e.what();
    return false;
  }
  config.l_param = f.l_given ? f.l_param : default_l_param(f.users);
  config.alpha = f.alpha_given
                     ? f.alpha
                     : std::vector<double>(f.users, 1.0);
  try {
    config.validate();
  } catch (const std::exception& e) {
    error = e.what();
    return false;
  }
  return true;
}

std::string canonical_experiment_args(const SimConfig& c) {
  std::ostringstream out;
  out << "--algo " << algorithm_name(c.algo) << " --users " << c.users
      << " --subcarriers " << c.subcarriers << " --group-size "
      << c.group_size << " --epsilon " << format_double(c.epsilon) << " --gap "
      << format_double(c.gap) << " --l-param " << c.l_param << " --slots "
      << c.slots << " --snr-db " << join_csv(c.snr_db) << " --alpha "
      << join_csv(c.alpha) << " --seed " << c.seed;
  return out.str();
}

int emit_rows(const std::vector<SweepRow>& rows, RunManifest manifest,
              const std::string& out_path) {
  manifest.timestamp = utc_timestamp();
  manifest.output_path = out_path;
  if (out_path == "-") {
    write_csv(std::cout, manifest, rows);
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "error: cannot open output file " << out_path << "\n";
      return kExitUsage;
    }
    write_csv(out, manifest, rows);
  }
  std::clog << manifest.status_line() << "\n";
  return kExitOk;
}

int cmd_run(const ExperimentFlags& flags, const std::string& algo_name,
            int threads, const std::string& out_path) {
  const std::optional<Algorithm> algo = algorithm_from_name(algo_name);
  if (!algo) {
    std::cerr << "error: --algo: unknown algorithm '" << algo_name << "'\n";
    return kExitUsage;
  }
  SimConfig config;
  std::string error;
  if (!resolve_config(flags, *algo, config, error)) {
    std::cerr << "error: " << error << "\n";
    return kExitUsage;
  }

  const std::vector<AggregateMetrics> metrics = run_experiment(config, threads);
  std::vector<SweepRow> rows;
  rows.reserve(metrics.size());
  for (const AggregateMetrics& m : metrics) rows.push_back({config, m});

  RunManifest manifest;
  manifest.seed = config.seed;
  manifest.command_line = "run " + canonical_experiment_args(config);
  return emit_rows(rows, manifest, out_path);
}

bool as_positive_int(double value, int& out) {
  if (value < 1.0 || value != std::floor(value) || value > 1e9) return false;
  out = static_cast<int>(value);
  return true;
}

int cmd_sweep(const ExperimentFlags& flags, const std::string& axis,
              const std::vector<double>& values,
              const std::vector<std::string>& algo_names,
              const std::string& metric, int threads,
              const std::string& out_path) {
  if (values.empty()) {
    std::cerr << "error: --values: sweep list is empty\n";
    return kExitUsage;
  }
  std::vector<Algorithm> algos;
  for (const std::string& name : algo_names) {
    const std::optional<Algorithm> algo = algorithm_from_name(name);
    if (!algo) {
      std::cerr << "error: --algo: unknown algorithm '" << name << "'\n";
      return kExitUsage;
    }
    algos.push_back(*algo);
  }

  std::vector<SimConfig> configs;
  for (const Algorithm algo : algos) {
    for (const double value : values) {
      ExperimentFlags point = flags;
      if (axis == "ng") {
        if (!as_positive_int(value, point.group_size)) {
          std::cerr << "error: --values: " << format_double(value)
                    << " is not a valid group size\n";
          return kExitUsage;
        }
      } else if (axis == "l") {
        if (!as_positive_int(value, point.l_param)) {
          std::cerr << "error: --values: " << format_double(value)
                    << " is not a valid L\n";
          return kExitUsage;
        }
        point.l_given = true;
      } else if (axis == "users") {
        if (!as_positive_int(value, point.users)) {
          std::cerr << "error: --values: " << format_double(value)
                    << " is not a valid user count\n";
          return kExitUsage;
        }
      } else if (axis == "snr") {
        point.snr_db = {value};
      } else {
        std::cerr << "error: --axis: expected ng, l, snr or users, got '"
                  << axis << "'\n";
        return kExitUsage;
      }
      SimConfig config;
      std::string error;
      if (!resolve_config(point, algo, config, error)) {
        std::cerr << "error: " << error << "\n";
        return kExitUsage;
      }
      configs.push_back(std::move(config));
    }
  }

  const std::vector<SweepRow> rows = sweep(configs, threads);

  RunManifest manifest;
  manifest.seed = flags.seed;
  std::ostringstream cmd;
  cmd << "sweep --axis " << axis << " --values " << join_csv(values);
  if (!metric.empty()) cmd << " --metric " << metric;
  cmd << " " << canonical_experiment_args(configs.front());
  manifest.command_line = cmd.str();
  return emit_rows(rows, manifest, out_path);
}

int cmd_example(bool corrupt_table) {
  // Two users, four single-subcarrier groups; entries are mean rates.
  Matrix table = {{90.0, 60.0, 20.0, 10.0}, {100.0, 90.0, 70.0, 70.0}};
  if (corrupt_table) table[1][3] = 0.0;

  const double v1 = sample_variance(table[0]);
  const double v2 = sample_variance(table[1]);

  ReportSet reports;
  reports.num_groups = 4;
  reports.per_user.resize(2);
  for (int k = 0; k < 2; ++k) {
    for (int m = 0; m < 4; ++m) {
      reports.per_user[k].push_back({m, table[k][m]});
    }
  }
  const FairnessWeights weights{{1.0, 1.0}};
  const double r_var =
      allocate_variance(reports, weights, default_l_param(2)).sum_rate();
  const double r_best = allocate_best_gain(reports, 2).sum_rate();

  std::printf("V1=%.2f V2=%.2f R_var=%g R_best=%g\n", v1, v2, r_var, r_best);

  struct Check {
    const char* name;
    double expected;
    double got;
    double tolerance;
  };
  const Check checks[] = {
      {"V1", 1366.67, v1, 0.5},
      {"V2", 225.0, v2, 0.0},
      {"R_var", 290.0, r_var, 0.0},
      {"R_best", 220.0, r_best, 0.0},
  };
  bool ok = true;
  for (const Check& c : checks) {
    if (std::abs(c.got - c.expected) > c.tolerance) {
      std::printf("mismatch: %s expected %g got %g\n", c.name, c.expected,
                  c.got);
      ok = false;
    }
  }
  if (!ok) return kExitCheckFailed;
  std::printf("note: V1 = 4100/3 = 1366.67, i.e. 1367 at integer precision\n");
  return kExitOk;
}

int cmd_validate(std::uint64_t seed, int instances, int cases) {
  ValidationOptions options;
  options.seed = seed;
  options.oracle_instances = instances;
  options.property_cases = cases;
  const std::vector<CheckResult> results = run_validation(options);
  for (const CheckResult& r : results) {
    std::printf("%s %s %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.c_str());
  }
  const bool ok = all_passed(results);
  std::printf("RESULT %s\n", ok ? "pass" : "fail");
  return ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Grouped-subcarrier OFDMA scheduling simulator: variance-ordered "
      "two-step allocation with proportional-fairness quotas, plus "
      "best-gain, decentralized and swap-improvement baselines."};
  app.require_subcommand(1);
  app.set_version_flag("--version", gsalloc::kVersion);

  ExperimentFlags run_flags;
  int run_threads = 1;
  std::string run_out = "-";
  std::string run_algo = "variance";
  CLI::App* run_cmd =
      app.add_subcommand("run", "Run one experiment, one CSV row per SNR point");
  ExperimentOptions run_opts =
      add_experiment_flags(run_cmd, run_flags, run_threads, run_out);
  run_cmd->add_option("--algo", run_algo,
                      "variance | best_gain | decentralized | superiority")
      ->capture_default_str();

  ExperimentFlags sweep_flags;
  int sweep_threads = 1;
  std::string sweep_out = "-";
  std::string sweep_axis;
  std::vector<double> sweep_values;
  std::vector<std::string> sweep_algos = {"variance"};
  std::string sweep_metric;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Sweep one axis, one CSV row per point per algorithm");
  ExperimentOptions sweep_opts =
      add_experiment_flags(sweep_cmd, sweep_flags, sweep_threads, sweep_out);
  sweep_cmd->add_option("--axis", sweep_axis, "ng | l | snr | users")
      ->required();
  sweep_cmd->add_option("--values", sweep_values, "Sweep points")
      ->delimiter(',')
      ->required();
  sweep_cmd->add_option("--algo", sweep_algos, "Algorithms, comma-separated")
      ->delimiter(',')
      ->capture_default_str();
  sweep_cmd->add_option("--metric", sweep_metric,
                        "Metric of interest, recorded in the manifest");

  bool corrupt_table = false;
  CLI::App* example_cmd = app.add_subcommand(
      "example", "Print the built-in two-user worked example");
  example_cmd
      ->add_flag("--corrupt-table", corrupt_table,
                 "Perturb the example table (negative-path test hook)")
      ->group("");

  std::uint64_t validate_seed = 7;
  int validate_instances = 500;
  int validate_cases = 1000;
  CLI::App* validate_cmd = app.add_subcommand(
      "validate", "Run the oracle-equivalence and invariant suites");
  validate_cmd->add_option("--seed", validate_seed, "Suite RNG seed")
      ->capture_default_str();
  validate_cmd
      ->add_option("--instances", validate_instances,
                   "Random instances for the oracle comparison")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  validate_cmd
      ->add_option("--cases", validate_cases, "Cases per property check")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (app.got_subcommand(run_cmd)) {
    read_given_flags(run_opts, run_flags);
    return cmd_run(run_flags, run_algo, run_threads, run_out);
  }
  if (app.got_subcommand(sweep_cmd)) {
    read_given_flags(sweep_opts, sweep_flags);
    return cmd_sweep(sweep_flags, sweep_axis, sweep_values, sweep_algos,
                     sweep_metric, sweep_threads, sweep_out);
  }
  if (app.got_subcommand(example_cmd)) {
    return cmd_example(corrupt_table);
  }
  return cmd_validate(validate_seed, validate_instances, validate_cases);
}
