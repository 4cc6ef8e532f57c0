"""Grouped-subcarrier OFDMA scheduling simulator.

Thin re-export of the compiled core: channel draws, per-group link
statistics, the variance-ordered two-step allocator with its baselines,
power split, fairness metrics and the deterministic simulation driver.
"""

from ._core import (
    AggregateMetrics,
    Algorithm,
    Allocation,
    GroupMap,
    GroupStats,
    Phase,
    PowerMap,
    ReportEntry,
    ReportSet,
    SimConfig,
    SlotMetrics,
    SnrMatrix,
    Tap,
    TapSet,
    __version__,
    allocate_best_gain,
    allocate_decentralized,
    allocate_superiority,
    allocate_variance,
    default_l_param,
    freq_response,
    gen_iid_exp_snr,
    group_stats,
    jain_index,
    make_group_map,
    oracle_exhaustive,
    power_allocate,
    quotas,
    rate,
    report_all,
    report_set,
    run_experiment,
    run_slot,
    run_validation,
    sample_variance,
    snr_from_response,
    snr_gap_from_ber,
)

__all__ = [
    "AggregateMetrics",
    "Algorithm",
    "Allocation",
    "GroupMap",
    "GroupStats",
    "Phase",
    "PowerMap",
    "ReportEntry",
    "ReportSet",
    "SimConfig",
    "SlotMetrics",
    "SnrMatrix",
    "Tap",
    "TapSet",
    "__version__",
    "allocate_best_gain",
    "allocate_decentralized",
    "allocate_superiority",
    "allocate_variance",
    "default_l_param",
    "freq_response",
    "gen_iid_exp_snr",
    "group_stats",
    "jain_index",
    "make_group_map",
    "oracle_exhaustive",
    "power_allocate",
    "quotas",
    "rate",
    "report_all",
    "report_set",
    "run_experiment",
    "run_slot",
    "run_validation",
    "sample_variance",
    "snr_from_response",
    "snr_gap_from_ber",
]
