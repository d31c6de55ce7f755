"""Secure downlink multi-cell massive MIMO: simulation and closed-form analytics.

The package models a TDD multi-cell system where each base station serves K
single-antenna users with N_T antennas, injects artificial noise against a
multi-antenna eavesdropper, and estimates channels from contaminated uplink
pilots.  It provides matched data/AN precoder constructions, their
large-system SINR and secrecy closed forms, Monte Carlo validation of both,
and a scenario runner with a stable CSV interface.
"""

from .an_precoders import (
    ANPrecoder,
    apply_an_precoder,
    cns_precoder,
    poly_an_precoder,
    random_an_precoder,
    sns_precoder,
)
from .analytics import (
    AN_KINDS,
    DATA_KINDS,
    AnalyticSINR,
    CrossoverThresholds,
    EveBound,
    SecrecyAnalytics,
    alpha_s,
    an_dimension,
    an_leakage_Q,
    crossover_thresholds,
    eve_capacity_bound,
    flops_an,
    flops_data,
    p_an,
    secrecy_lower_bound,
    sinr_analytic,
    sinr_relations,
)
from .asymptotics import (
    MomentTable,
    PolyCoefficients,
    g_derivative,
    g_function,
    mp_moment,
    poly_an_coefficients,
    poly_data_coefficients,
)
from .channel import (
    ChannelEstimate,
    ChannelRealization,
    EstimationStats,
    estimate_channels,
    estimation_stats,
    sample_small_scale,
)
from .config import (
    ConfigError,
    Diagnostic,
    GeneralPathLoss,
    InfeasibleError,
    NumericalError,
    SimplifiedPathLoss,
    SystemConfig,
    derived_powers,
    interference_factors,
    load_config,
    validate_config_text,
)
from .data_precoders import (
    DataPrecoder,
    apply_data_precoder,
    crci_precoder,
    czf_precoder,
    mf_precoder,
    poly_data_precoder,
    srci_precoder,
    szf_precoder,
)
from .montecarlo import (
    PhiOptimum,
    SecrecyReport,
    ergodic_secrecy_rate,
    estimate_eve_capacity,
    estimate_mt_sinr,
    optimize_phi,
)
from .scenarios import (
    CSV_COLUMNS,
    SCENARIO_NAMES,
    Scenario,
    build_scenario,
    list_scenarios,
    run_scenario,
    write_csv,
)

__version__ = "0.1.0"

__all__ = [
    "ANPrecoder",
    "AN_KINDS",
    "AnalyticSINR",
    "CSV_COLUMNS",
    "ChannelEstimate",
    "ChannelRealization",
    "ConfigError",
    "CrossoverThresholds",
    "DATA_KINDS",
    "DataPrecoder",
    "Diagnostic",
    "EstimationStats",
    "EveBound",
    "GeneralPathLoss",
    "InfeasibleError",
    "MomentTable",
    "NumericalError",
    "PhiOptimum",
    "PolyCoefficients",
    "SCENARIO_NAMES",
    "Scenario",
    "SecrecyAnalytics",
    "SecrecyReport",
    "SimplifiedPathLoss",
    "SystemConfig",
    "alpha_s",
    "an_dimension",
    "an_leakage_Q",
    "apply_an_precoder",
    "apply_data_precoder",
    "build_scenario",
    "cns_precoder",
    "crci_precoder",
    "crossover_thresholds",
    "czf_precoder",
    "derived_powers",
    "ergodic_secrecy_rate",
    "estimate_channels",
    "estimate_eve_capacity",
    "estimate_mt_sinr",
    "estimation_stats",
    "eve_capacity_bound",
    "flops_an",
    "flops_data",
    "g_derivative",
    "g_function",
    "interference_factors",
    "list_scenarios",
    "load_config",
    "mf_precoder",
    "mp_moment",
    "optimize_phi",
    "p_an",
    "poly_an_coefficients",
    "poly_an_precoder",
    "poly_data_coefficients",
    "poly_data_precoder",
    "random_an_precoder",
    "run_scenario",
    "sample_small_scale",
    "secrecy_lower_bound",
    "sinr_analytic",
    "sinr_relations",
    "sns_precoder",
    "srci_precoder",
    "szf_precoder",
    "validate_config_text",
    "write_csv",
]
