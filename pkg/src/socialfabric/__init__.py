"""Agent-based model of time allocation, social networks and public goods.

Agents split time between their community and the outside market; the inside
time share shapes their friendship degrees, whose connectivity decides whether
contributions to a local public good are rewarded.
"""

from ._validation import DomainError, InfeasibleError, ValidationError
from ._version import __version__
from .agents import (
    EquilibriumReport,
    PreferenceSpec,
    gini,
    gini_between,
    optimize_time,
    second_stage_values,
    simulate_population,
    solve_equilibrium,
)
from .config import ScenarioConfig, default_config, load_config, parse_config
from .degree_model import DegreeModelSpec, DegreePmf, connectivity_z, critical_t, pmf_at
from .graph import GAMMA, DegreeSequence, Graph, components, sample_configuration, sample_degrees
from .households import HouseholdGameSpec, classify_equilibrium, p_sc, t_crit, t_uncrit
from .percolation import PercolationParams, Regime, active_subgraph, chi, predicted_regime, thin_pmf
from .plotting import emit_plot
from .rng import stream
from .runner import run_scenario, sweep_f, sweep_percolation, sweep_pi_h
from .spread import AudienceSpec, reward_probability_mc

__all__ = [
    "__version__",
    "AudienceSpec",
    "DegreeModelSpec",
    "DegreePmf",
    "DegreeSequence",
    "DomainError",
    "EquilibriumReport",
    "GAMMA",
    "Graph",
    "HouseholdGameSpec",
    "InfeasibleError",
    "PercolationParams",
    "PreferenceSpec",
    "Regime",
    "ScenarioConfig",
    "ValidationError",
    "active_subgraph",
    "chi",
    "classify_equilibrium",
    "components",
    "connectivity_z",
    "critical_t",
    "default_config",
    "emit_plot",
    "gini",
    "gini_between",
    "load_config",
    "optimize_time",
    "p_sc",
    "parse_config",
    "pmf_at",
    "predicted_regime",
    "reward_probability_mc",
    "run_scenario",
    "sample_configuration",
    "sample_degrees",
    "second_stage_values",
    "simulate_population",
    "solve_equilibrium",
    "stream",
    "sweep_f",
    "sweep_percolation",
    "sweep_pi_h",
    "t_crit",
    "t_uncrit",
    "thin_pmf",
]
