"""Outage probability of a fluid-antenna receiver served by an active
reconfigurable surface plus a direct link.

Three estimators share one configuration: a block-correlation analytical
approximation, its independent-blocks simplification, and a Monte Carlo
channel simulator used as ground truth.
"""

from .analytic import (
    METHOD_BC,
    METHOD_IID,
    METHOD_MC,
    OutageResult,
    QuadratureSpec,
    cdf_gamma_star_bc,
    cdf_gamma_star_iid,
    cdf_snr,
    chebyshev_nodes,
    direct_link_outage,
    outage_probability,
)
from .correlation import (
    BlockPartition,
    CorrelationMatrix,
    clarke_coefficient,
    correlation_matrix,
    correlation_root,
    fit_block_partition,
)
from .errors import ConfigurationError, CsvFormatError, NumericalError
from .moments import (
    GaussianSurrogate,
    build_surrogate,
    cascade_moments,
    envelope_cross_moment,
    gain_correlation,
)
from .params import (
    LinkBudget,
    SystemConfig,
    db_to_amplitude,
    dbm_to_watt,
    derive_distances,
    link_budget,
    reference_config,
)
from .simulate import (
    SCENARIOS,
    MonteCarloEstimate,
    MonteCarloSpec,
    sample_port_gains,
    sample_surrogate_max_bc,
    sample_surrogate_max_iid,
    scenario_terms,
    simulate_baselines,
    simulate_op,
)
from .sweep import SweepRow, SweepSpec, run_scenario_sweep, run_sweep

__version__ = "0.1.0"

__all__ = [
    "BlockPartition",
    "ConfigurationError",
    "CorrelationMatrix",
    "CsvFormatError",
    "GaussianSurrogate",
    "LinkBudget",
    "METHOD_BC",
    "METHOD_IID",
    "METHOD_MC",
    "MonteCarloEstimate",
    "MonteCarloSpec",
    "NumericalError",
    "OutageResult",
    "QuadratureSpec",
    "SCENARIOS",
    "SweepRow",
    "SweepSpec",
    "SystemConfig",
    "build_surrogate",
    "cascade_moments",
    "cdf_gamma_star_bc",
    "cdf_gamma_star_iid",
    "cdf_snr",
    "chebyshev_nodes",
    "clarke_coefficient",
    "correlation_matrix",
    "correlation_root",
    "db_to_amplitude",
    "dbm_to_watt",
    "derive_distances",
    "direct_link_outage",
    "envelope_cross_moment",
    "fit_block_partition",
    "gain_correlation",
    "link_budget",
    "outage_probability",
    "reference_config",
    "run_scenario_sweep",
    "run_sweep",
    "sample_port_gains",
    "sample_surrogate_max_bc",
    "sample_surrogate_max_iid",
    "scenario_terms",
    "simulate_baselines",
    "simulate_op",
]
