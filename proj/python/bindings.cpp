#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gsalloc/allocator.hpp"
#include "gsalloc/channel.hpp"
#include "gsalloc/group_map.hpp"
#include "gsalloc/link.hpp"
#include "gsalloc/report.hpp"
#include "gsalloc/rng.hpp"
#include "gsalloc/sim.hpp"
#include "gsalloc/validation.hpp"

namespace py = pybind11;

namespace {

// Scheduler input where every (user, group) rate is visible.
gsalloc::ReportSet report_all(const gsalloc::Matrix& rates) {
  gsalloc::ReportSet reports;
  if (rates.empty()) return reports;
  reports.num_groups = static_cast<int>(rates.front().size());
  reports.per_user.resize(rates.size());
  for (std::size_t k = 0; k < rates.size(); ++k) {
    for (int m = 0; m < reports.num_groups; ++m) {
      reports.per_user[k].push_back({m, rates[k][m]});
    }
  }
  return reports;
}

gsalloc::FairnessWeights weights_of(const std::vector<double>& alpha) {
  return gsalloc::FairnessWeights{alpha};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Grouped-subcarrier OFDMA scheduling: variance-ordered allocation, "
      "baselines, channel and link models, and the simulation driver.";
  m.attr("__version__") = gsalloc::kVersion;

  py::class_<gsalloc::GroupMap>(m, "GroupMap")
      .def_readonly("subcarriers", &gsalloc::GroupMap::subcarriers)
      .def_readonly("group_size", &gsalloc::GroupMap::group_size)
      .def_readonly("num_groups", &gsalloc::GroupMap::num_groups)
      .def("group_members", &gsalloc::GroupMap::group_members, py::arg("group"))
      .def("group_of", &gsalloc::GroupMap::group_of, py::arg("subcarrier"));
  m.def("make_group_map", &gsalloc::make_group_map, py::arg("subcarriers"),
        py::arg("group_size"),
        "Interleaved grouping: group m holds subcarriers m, m+M_g, ...");

  py::class_<gsalloc::Tap>(m, "Tap")
      .def(py::init<std::complex<double>, double>(), py::arg("amplitude"),
           py::arg("delay_s"))
      .def_readwrite("amplitude", &gsalloc::Tap::amplitude)
      .def_readwrite("delay_s", &gsalloc::Tap::delay_s);
  py::class_<gsalloc::TapSet>(m, "TapSet")
      .def(py::init([](std::vector<gsalloc::Tap> taps, double spacing_hz) {
             gsalloc::TapSet set;
             set.taps = std::move(taps);
             set.subcarrier_spacing_hz = spacing_hz;
             return set;
           }),
           py::arg("taps"), py::arg("subcarrier_spacing_hz"))
      .def_readwrite("taps", &gsalloc::TapSet::taps)
      .def_readwrite("subcarrier_spacing_hz",
                     &gsalloc::TapSet::subcarrier_spacing_hz);
  m.def("freq_response", &gsalloc::freq_response, py::arg("taps"),
        py::arg("subcarriers"));
  m.def(
      "snr_from_response",
      [](const std::vector<std::complex<double>>& gains, double rho) {
        return gsalloc::snr_from_response(gains, rho);
      },
      py::arg("gains"), py::arg("rho"));

  py::class_<gsalloc::SnrMatrix>(m, "SnrMatrix")
      .def_readonly("values", &gsalloc::SnrMatrix::values)
      .def_readonly("mean_snr", &gsalloc::SnrMatrix::mean_snr)
      .def("users", &gsalloc::SnrMatrix::users)
      .def("subcarriers", &gsalloc::SnrMatrix::subcarriers);
  m.def("gen_iid_exp_snr", &gsalloc::gen_iid_exp_snr, py::arg("users"),
        py::arg("subcarriers"), py::arg("mean_snr"), py::arg("seed"),
        "Per-user i.i.d. exponential SNR draws, reproducible by seed.");

  m.def("snr_gap_from_ber", &gsalloc::snr_gap_from_ber, py::arg("ber"));
  m.def("rate", &gsalloc::rate, py::arg("snr"), py::arg("gap"),
        "log2(1 + snr/gap)");
  m.def(
      "sample_variance",
      [](const std::vector<double>& values) {
        return gsalloc::sample_variance(values);
      },
      py::arg("values"));

  py::class_<gsalloc::GroupStats>(m, "GroupStats")
      .def_readonly("group_size", &gsalloc::GroupStats::group_size)
      .def_readonly("mean_gain", &gsalloc::GroupStats::mean_gain)
      .def_readonly("gain_variance", &gsalloc::GroupStats::gain_variance)
      .def_readonly("mean_rate", &gsalloc::GroupStats::mean_rate)
      .def("users", &gsalloc::GroupStats::users)
      .def("num_groups", &gsalloc::GroupStats::num_groups);
  m.def(
      "group_stats",
      [](const gsalloc::SnrMatrix& snr, const gsalloc::GroupMap& map,
         double gap) {
        return gsalloc::group_stats(snr, map, gsalloc::LinkParams{gap});
      },
      py::arg("snr"), py::arg("map"), py::arg("gap") = 1.0);

  py::class_<gsalloc::ReportSet::Entry>(m, "ReportEntry")
      .def_readonly("group", &gsalloc::ReportSet::Entry::group)
      .def_readonly("mean_rate", &gsalloc::ReportSet::Entry::mean_rate);
  py::class_<gsalloc::ReportSet>(m, "ReportSet")
      .def_readonly("num_groups", &gsalloc::ReportSet::num_groups)
      .def_readonly("per_user", &gsalloc::ReportSet::per_user)
      .def("users", &gsalloc::ReportSet::users);
  m.def("report_set", &gsalloc::report_set, py::arg("stats"),
        py::arg("epsilon"),
        "Groups whose gain variance stays within epsilon * mean^2.");
  m.def("report_all", &report_all, py::arg("rates"),
        "ReportSet in which every (user, group) mean rate is reported.");

  m.def(
      "quotas",
      [](const std::vector<double>& alpha, int num_groups) {
        return gsalloc::quotas(weights_of(alpha), num_groups).per_user;
      },
      py::arg("alpha"), py::arg("num_groups"),
      "Per-user group quota floor(alpha_k * num_groups), alpha normalized.");

  py::enum_<gsalloc::Phase>(m, "Phase")
      .value("UNASSIGNED", gsalloc::Phase::kUnassigned)
      .value("PREASSIGN", gsalloc::Phase::kPreassign)
      .value("STEP1", gsalloc::Phase::kStep1)
      .value("STEP2", gsalloc::Phase::kStep2)
      .value("BASELINE", gsalloc::Phase::kBaseline);

  py::class_<gsalloc::Allocation>(m, "Allocation")
      .def_readonly("owner", &gsalloc::Allocation::owner)
      .def_readonly("phase", &gsalloc::Allocation::phase)
      .def_readonly("user_rate", &gsalloc::Allocation::user_rate)
      .def_readonly("user_groups", &gsalloc::Allocation::user_groups)
      .def_readonly("group_size", &gsalloc::Allocation::group_size)
      .def("users", &gsalloc::Allocation::users)
      .def("num_groups", &gsalloc::Allocation::num_groups)
      .def("assigned_groups", &gsalloc::Allocation::assigned_groups)
      .def("sum_rate", &gsalloc::Allocation::sum_rate);

  m.def(
      "allocate_variance",
      [](const gsalloc::ReportSet& reports, const std::vector<double>& alpha,
         int l_param, int max_it, int group_size) {
        return gsalloc::allocate_variance(reports, weights_of(alpha), l_param,
                                          max_it, group_size);
      },
      py::arg("reports"), py::arg("alpha"), py::arg("l_param"),
      py::arg("max_it") = -1, py::arg("group_size") = 1,
      "Two-step allocation: quotas, pre-assignment, variance-ordered greedy, "
      "then the fairness step.");
  m.def("allocate_best_gain", &gsalloc::allocate_best_gain, py::arg("reports"),
        py::arg("max_per_user") = -1, py::arg("group_size") = 1);
  m.def(
      "allocate_decentralized",
      [](const gsalloc::ReportSet& reports, const std::vector<double>& alpha,
         int group_size) {
        return gsalloc::allocate_decentralized(reports, weights_of(alpha),
                                               group_size);
      },
      py::arg("reports"), py::arg("alpha"), py::arg("group_size") = 1);
  m.def(
      "allocate_superiority",
      [](const gsalloc::ReportSet& reports, const std::vector<double>& alpha,
         int group_size) {
        return gsalloc::allocate_superiority(reports, weights_of(alpha),
                                             group_size);
      },
      py::arg("reports"), py::arg("alpha"), py::arg("group_size") = 1);

  py::class_<gsalloc::PowerMap>(m, "PowerMap")
      .def_readonly("total_budget", &gsalloc::PowerMap::total_budget)
      .def_readonly("per_user", &gsalloc::PowerMap::per_user)
      .def_readonly("per_subcarrier", &gsalloc::PowerMap::per_subcarrier);
  m.def("power_allocate", &gsalloc::power_allocate, py::arg("allocation"),
        py::arg("total_power"), py::arg("map"),
        "Equal split: every assigned subcarrier carries total_power / M.");

  m.def(
      "oracle_exhaustive",
      [](const gsalloc::Matrix& rates, const std::vector<int>& caps) {
        const gsalloc::OracleResult result =
            gsalloc::oracle_exhaustive(rates, caps);
        return py::make_tuple(result.best_rate, result.owner);
      },
      py::arg("rates"), py::arg("caps"),
      "Exhaustive capped assignment search (max 4 users, 8 groups); returns "
      "(best_rate, owner).");

  m.def(
      "jain_index",
      [](const std::vector<double>& rates, const std::vector<double>& alpha) {
        return gsalloc::jain_index(rates, alpha);
      },
      py::arg("rates"), py::arg("alpha"),
      "Modified fairness index in [1/K, 1]; None for an all-zero window.");
  m.def("default_l_param", &gsalloc::default_l_param, py::arg("users"));

  py::enum_<gsalloc::Algorithm>(m, "Algorithm")
      .value("VARIANCE", gsalloc::Algorithm::kVariance)
      .value("BEST_GAIN", gsalloc::Algorithm::kBestGain)
      .value("DECENTRALIZED", gsalloc::Algorithm::kDecentralized)
      .value("SUPERIORITY", gsalloc::Algorithm::kSuperiority);

  py::class_<gsalloc::SimConfig>(m, "SimConfig")
      .def(py::init<>())
      .def_readwrite("users", &gsalloc::SimConfig::users)
      .def_readwrite("subcarriers", &gsalloc::SimConfig::subcarriers)
      .def_readwrite("group_size", &gsalloc::SimConfig::group_size)
      .def_readwrite("epsilon", &gsalloc::SimConfig::epsilon)
      .def_readwrite("gap", &gsalloc::SimConfig::gap)
      .def_readwrite("l_param", &gsalloc::SimConfig::l_param)
      .def_readwrite("alpha", &gsalloc::SimConfig::alpha)
      .def_readwrite("slots", &gsalloc::SimConfig::slots)
      .def_readwrite("snr_db", &gsalloc::SimConfig::snr_db)
      .def_readwrite("algo", &gsalloc::SimConfig::algo)
      .def_readwrite("seed", &gsalloc::SimConfig::seed)
      .def_readwrite("total_power", &gsalloc::SimConfig::total_power)
      .def("validate", &gsalloc::SimConfig::validate);

  py::class_<gsalloc::SlotMetrics>(m, "SlotMetrics")
      .def_readonly("user_rate", &gsalloc::SlotMetrics::user_rate)
      .def_readonly("user_groups", &gsalloc::SlotMetrics::user_groups)
      .def_readonly("assigned_fraction",
                    &gsalloc::SlotMetrics::assigned_fraction)
      .def_readonly("slot_rate", &gsalloc::SlotMetrics::slot_rate);
  py::class_<gsalloc::AggregateMetrics>(m, "AggregateMetrics")
      .def_readonly("snr_db", &gsalloc::AggregateMetrics::snr_db)
      .def_readonly("throughput_per_subcarrier",
                    &gsalloc::AggregateMetrics::throughput_per_subcarrier)
      .def_readonly("user_share", &gsalloc::AggregateMetrics::user_share)
      .def_readonly("user_rate_total",
                    &gsalloc::AggregateMetrics::user_rate_total)
      .def_readonly("jain", &gsalloc::AggregateMetrics::jain)
      .def_readonly("assigned_fraction",
                    &gsalloc::AggregateMetrics::assigned_fraction);

  m.def("run_slot", &gsalloc::run_slot, py::arg("config"),
        py::arg("mean_snr_linear"), py::arg("slot_index"));
  m.def("run_experiment", &gsalloc::run_experiment, py::arg("config"),
        py::arg("threads") = 1,
        py::call_guard<py::gil_scoped_release>(),
        "One AggregateMetrics per SNR point; byte-identical for any thread "
        "count.");

  m.def(
      "run_validation",
      [](std::uint64_t seed, int instances, int cases) {
        gsalloc::ValidationOptions options;
        options.seed = seed;
        options.oracle_instances = instances;
        options.property_cases = cases;
        py::list out;
        for (const gsalloc::CheckResult& r : gsalloc::run_validation(options)) {
          out.append(py::make_tuple(r.name, r.passed, r.detail));
        }
        return out;
      },
      py::arg("seed") = 7, py::arg("instances") = 500, py::arg("cases") = 1000,
      "Oracle-equivalence and invariant suites as (name, passed, detail).");
}
