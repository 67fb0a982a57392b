"""Delivery-time analysis for fog networks with a multicast fronthaul.

The library computes normalized delivery times for cache-aided edge
networks served over a shared wireless fronthaul: closed-form
achievable schemes and lower bounds for static and churning popular
sets, gap certificates between them, a slot-level simulator, and the
standard figure sweeps. All analytical values are exact rationals.
"""

from .baselines import (
    cran_ndt,
    en_cooperation_ndt,
    en_coordination_ndt,
    pipelined,
    time_share,
)
from .model import (
    CertificateViolation,
    ConfigError,
    NdtPair,
    NetworkConfig,
    Regime,
    RegimeBreakpoints,
    as_fraction,
    classify_regime,
    read_config_file,
    validate_config,
    write_config_file,
)
from .montecarlo import (
    ConvergenceReport,
    SimulationResult,
    SlotOutcome,
    convergence_report,
    run_simulation,
    simulation_summary,
    slot_ndt,
)
from .offline import (
    breakpoints,
    offline_achievable,
    offline_achievable_via_timeshare,
    offline_gap_certificate,
    offline_lower_bound,
    offline_regime,
)
from .online import (
    multiplicative_gap_certificate,
    online_achievable,
    online_lower_bound,
    online_offline_gap,
    online_regime,
)
from .popsim import (
    PopularSet,
    RequestVector,
    advance,
    init_popular_set,
    make_rng,
    sample_requests,
)
from .verify import GridSpec, VerificationReport, default_grid, run_verification

__version__ = "0.1.0"

__all__ = [
    "CertificateViolation",
    "ConfigError",
    "ConvergenceReport",
    "GridSpec",
    "NdtPair",
    "NetworkConfig",
    "PopularSet",
    "Regime",
    "RegimeBreakpoints",
    "RequestVector",
    "SimulationResult",
    "SlotOutcome",
    "VerificationReport",
    "advance",
    "as_fraction",
    "breakpoints",
    "classify_regime",
    "convergence_report",
    "cran_ndt",
    "default_grid",
    "en_cooperation_ndt",
    "en_coordination_ndt",
    "init_popular_set",
    "make_rng",
    "multiplicative_gap_certificate",
    "offline_achievable",
    "offline_achievable_via_timeshare",
    "offline_gap_certificate",
    "offline_lower_bound",
    "offline_regime",
    "online_achievable",
    "online_lower_bound",
    "online_offline_gap",
    "online_regime",
    "pipelined",
    "read_config_file",
    "run_simulation",
    "run_verification",
    "sample_requests",
    "simulation_summary",
    "slot_ndt",
    "time_share",
    "validate_config",
    "write_config_file",
]
