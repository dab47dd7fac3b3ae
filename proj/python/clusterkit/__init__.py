"""Cluster expansions for abstract polymer systems.

Thin python surface over the C++ core: Ursell weights, convergence-criterion
checks, log-partition series, correlation ratios, and the bundled classical
gas / lattice polymer / quantum gas models.
"""

from ._core import (
    __version__,
    auto_tune_a,
    connected_graph_count,
    correlation_ratio,
    decay_check,
    gamma_estimate,
    gas_condconv,
    gas_pressure_series,
    is_cluster,
    kp_check,
    lattice_polymers,
    log_partition_series,
    min_connectivity_cost,
    origin_polymer_counts,
    partition_direct,
    quantum_criterion,
    set_partition_count,
    ursell,
)

__all__ = [
    "__version__",
    "auto_tune_a",
    "connected_graph_count",
    "correlation_ratio",
    "decay_check",
    "gamma_estimate",
    "gas_condconv",
    "gas_pressure_series",
    "is_cluster",
    "kp_check",
    "lattice_polymers",
    "log_partition_series",
    "min_connectivity_cost",
    "origin_polymer_counts",
    "partition_direct",
    "quantum_criterion",
    "set_partition_count",
    "ursell",
]
