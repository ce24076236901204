"""Seeded sweeps and scenario runs with CSV/JSON output.

Replication ``r`` of scenario (row) ``s`` always draws from
``stream(master_seed, s, r)``, and results are written in row order, so the
output bytes do not depend on the worker count.
"""

import csv
import io
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np
from scipy.stats import binom

from ._version import __version__
from .agents import simulate_population, solve_equilibrium
from .degree_model import DegreePmf, pmf_at
from .extensions import (
    CrossCommunitySpec,
    classify_spreading_equilibria,
    cross_membership_reward,
    max_deviation_gain,
    sample_strategic_costs,
)
from .graph import components, sample_configuration, sample_degrees
from .households import (
    HouseholdGameSpec,
    Infeasible,
    best_response,
    classify_equilibrium,
    p_sc,
    t_crit,
    t_uncrit,
)
from .percolation import PercolationParams, Regime, active_subgraph, chi
from .rng import stream
from .spread import audience_sizes, reward_probability_mc

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
MODULE_VERSIONS = {
    name: __version__
    for name in (
        "degree_model",
        "graph",
        "percolation",
        "spread",
        "agents",
        "households",
        "extensions",
        "runner",
    )
}

SWEEP_COLUMNS = [
    "value",
    "t_hat_H",
    "t_out_hat_H",
    "t_hat_L",
    "t_out_hat_L",
    "connectivity",
    "regime",
    "gc_fraction_mean",
    "gc_fraction_se",
    "reward_p_hat",
    "u_H",
    "u_L",
    "v",
    "gini",
]


class Table:
    """Named columns plus rows of plain values; knows how to write itself as CSV."""

    def __init__(self, columns, rows=()):
        self.columns = list(columns)
        self.rows = [dict(r) for r in rows]

    def __len__(self):
        return len(self.rows)

    def column(self, name):
        return [r[name] for r in self.rows]

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([_fmt(row[c]) for c in self.columns])
        return buf.getvalue()


def _fmt(value):
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".12g")
    if isinstance(value, Infeasible):
        return f"infeasible-{value.side}"
    return str(value)


def parallel_map(fn, tasks, threads=1):
    """Ordered map; thread count changes speed only, never results."""
    tasks = list(tasks)
    if threads <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, tasks))


def _mean_se(values):
    arr = np.asarray(values, dtype=float)
    if arr.size < 2:
        return float(arr.mean()), 0.0
    return float(arr.mean()), float(arr.std(ddof=1) / np.sqrt(arr.size))


# -- equilibrium sweeps ----------------------------------------------------------------


def _population_replication(config, report, scenario, rep):
    """Realise the equilibrium network once: giant share and a reward estimate."""
    rng = stream(config["master_seed"], scenario, rep)
    n = config["n"]
    spec = config.degree_spec()
    n_high = int(round(report.f * n))
    labels = (np.arange(n) < n_high).astype(np.int64)
    pmfs = [pmf_at(spec, report.t_hat_L), pmf_at(spec, report.t_hat_H)]
    g = sample_configuration(sample_degrees(pmfs, rng, labels=labels), rng)
    gc = components(g).gc_fraction
    m_obs, m_rew = audience_sizes(n, config.audience())
    i = int(rng.integers(n))
    est = reward_probability_mc(g, i, m_obs, m_rew, config["reward_draws"], rng)
    return gc, est.p_hat


def _sweep(config, param):
    prefs = config.preferences()
    spec = config.degree_spec()
    values = config.sweep_values()
    reports = []
    for x in values:
        if param == "pi_H":
            reports.append(solve_equilibrium(prefs.replace(pi_H=float(x)), spec, config["population.f"]))
        else:
            reports.append(solve_equilibrium(prefs, spec, float(x)))
    mc = {}
    if config["sweep.monte_carlo"]:
        tasks = [(s, r) for s in range(len(values)) for r in range(config["replications"])]
        results = parallel_map(
            lambda task: _population_replication(config, reports[task[0]], *task), tasks, config["threads"]
        )
        for (s, _), res in zip(tasks, results):
            mc.setdefault(s, []).append(res)
    rows = []
    for s, (x, rep) in enumerate(zip(values, reports)):
        draws = mc.get(s, [])
        gc_mean, gc_se = _mean_se([d[0] for d in draws]) if draws else (float("nan"), float("nan"))
        p_hat = float(np.mean([d[1] for d in draws])) if draws else float("nan")
        row = {c: v for c, v in rep.as_row().items() if c in SWEEP_COLUMNS}
        row.update(value=float(x), gc_fraction_mean=gc_mean, gc_fraction_se=gc_se, reward_p_hat=p_hat)
        rows.append(row)
    rows.sort(key=lambda r: r["value"])
    return Table(SWEEP_COLUMNS, rows)


def sweep_pi_h(config):
    """Equilibrium outcomes as the high-skill productivity rises."""
    return _sweep(config, "pi_H")


def sweep_f(config):
    """Equilibrium outcomes as the high-skill share rises."""
    return _sweep(config, "f")


# -- percolation grid -------------------------------------------------------------------

PERCOLATION_COLUMNS = [
    "q",
    "Q",
    "psi",
    "chi",
    "regime",
    "gc_fraction_mean",
    "gc_fraction_se",
    "giant_share",
    "reward_p_hat",
]


def percolation_base_pmf(config):
    """Binomial(D, percolation.theta), or the equilibrium mixture when theta is 0."""
    theta = config["percolation.theta"]
    D = config["degree.max_degree"]
    if theta > 0:
        return DegreePmf(binom.pmf(np.arange(D + 1), D, theta))
    prefs = config.preferences()
    return solve_equilibrium(prefs, config.degree_spec(), config["population.f"]).mixture


def _percolation_replication(config, pmf, params, scenario, rep):
    rng = stream(config["master_seed"], scenario, rep)
    n = config["n"]
    g = sample_configuration(sample_degrees([pmf], rng, labels=np.zeros(n, dtype=np.int64)), rng)
    act = active_subgraph(g, params, rng)
    gc = components(act).gc_fraction
    m_obs, m_rew = audience_sizes(n, config.audience())
    est = reward_probability_mc(act, int(rng.integers(n)), m_obs, m_rew, config["reward_draws"], rng)
    return gc, est.p_hat


def sweep_percolation(config):
    """chi, its predicted regime and the empirical giant share over a (q, Q) grid."""
    pmf = percolation_base_pmf(config)
    cells = [PercolationParams(q, Q) for q in config["percolation.q"] for Q in config["percolation.Q"]]
    tasks = [(s, r) for s in range(len(cells)) for r in range(config["replications"])]
    results = parallel_map(
        lambda task: _percolation_replication(config, pmf, cells[task[0]], *task), tasks, config["threads"]
    )
    grouped = {}
    for (s, _), res in zip(tasks, results):
        grouped.setdefault(s, []).append(res)
    gamma = config["gamma"]
    rows = []
    for s, params in enumerate(cells):
        gcs = [d[0] for d in grouped[s]]
        gc_mean, gc_se = _mean_se(gcs)
        value = chi(pmf, params)
        rows.append(
            dict(
                q=params.q,
                Q=params.Q,
                psi=params.psi,
                chi=value,
                regime=str(Regime.from_sign(value)),
                gc_fraction_mean=gc_mean,
                gc_fraction_se=gc_se,
                giant_share=float(np.mean([g >= gamma for g in gcs])),
                reward_p_hat=float(np.mean([d[1] for d in grouped[s]])),
            )
        )
    rows.sort(key=lambda r: (r["q"], r["Q"]))
    return Table(PERCOLATION_COLUMNS, rows)


# -- other scenarios ---------------------------------------------------------------------


def simulate(config):
    """Finite-n realisations of the configured equilibrium."""
    prefs = config.preferences()
    spec = config.degree_spec()
    f = config["population.f"]
    report = solve_equilibrium(prefs, spec, f)

    def one(rep):
        pop = simulate_population(prefs, spec, f, config["n"], stream(config["master_seed"], 0, rep), report)
        return dict(
            replication=rep,
            connectivity=pop.connectivity,
            gc_fraction=pop.gc_fraction,
            mean_second_stage=pop.mean_second_stage,
            second_stage_se=pop.second_stage_se,
            contribution_rate=float(pop.contributions.mean()),
        )

    rows = parallel_map(one, range(config["replications"]), config["threads"])
    table = Table(
        ["replication", "connectivity", "gc_fraction", "mean_second_stage", "second_stage_se", "contribution_rate"],
        rows,
    )
    return table, report


def household_game(config):
    prefs = config.preferences()
    delta_v = config["household.delta_v"] or None
    return HouseholdGameSpec.from_model(
        prefs, config["household.pi"], config["household.xi_bar"], config.degree_spec(), delta_v
    )


def household(config):
    """Thresholds, best responses and the equilibrium case of the household game."""
    game = household_game(config)
    case = classify_equilibrium(game)
    rows = []
    for h in range(game.H):
        rows.append(
            dict(
                household=h,
                pi=float(game.pi[h]),
                t_hat=float(game.t_hat[h]),
                t_max=float(game.t_max[h]),
                t_crit=t_crit(game, h, game.t_hat),
                t_uncrit=t_uncrit(game, h, game.t_hat),
                best_response=best_response(game, h, game.t_hat),
                witness=float(case.witness[h]),
            )
        )
    table = Table(list(rows[0]), rows)
    extra = dict(
        case=str(case.tag),
        multiple_equilibria=case.multiple,
        p_sc_at_witness=p_sc(game, case.witness),
        p_sc_at_t_hat=p_sc(game, game.t_hat),
        k_plus=game.k_plus,
        k_minus=game.k_minus,
        delta_v=game.delta_v,
    )
    return table, extra


def _binomial_or_empty(D, theta):
    if theta <= 0:
        return DegreePmf.point_mass(0, D)
    return DegreePmf(binom.pmf(np.arange(D + 1), D, theta))


def cross_community(config):
    """Reward probability of an A-agent whose information can route through community B."""
    D = config["degree.max_degree"]
    n = config["n"]
    spec = CrossCommunitySpec(
        pmf_a=_binomial_or_empty(D, config["cross.theta_a"]),
        pmf_b=_binomial_or_empty(D, config["cross.theta_b"]),
        out_pmf=DegreePmf.point_mass(config["cross.out_degree"], max(D, config["cross.out_degree"])),
        n_a=config["cross.n_a"] or n,
        n_b=config["cross.n_b"] or n,
    )
    m_obs, m_rew = audience_sizes(spec.n_a, config.audience())

    def one(rep):
        est = cross_membership_reward(
            spec, m_obs, m_rew, config["reward_draws"], stream(config["master_seed"], 0, rep)
        )
        return dict(replication=rep, p_hat=est.p_hat, std_err=est.std_err)

    rows = parallel_map(one, range(config["replications"]), config["threads"])
    return Table(["replication", "p_hat", "std_err"], rows)


def classify_spreading(config, check_deviations=None):
    """Classify strategic-spreading equilibria on sampled networks with realised costs."""
    D = config["degree.max_degree"]
    n = config["n"]
    strat = config.strategic()
    pmf = _binomial_or_empty(D, config["strategic.theta"])
    if check_deviations is None:
        check_deviations = n <= 500

    def one(k):
        rng = stream(config["master_seed"], k, 0)
        g = sample_configuration(sample_degrees([pmf], rng, labels=np.zeros(n, dtype=np.int64)), rng)
        costs = sample_strategic_costs(g, strat, rng)
        result = classify_spreading_equilibria(g, costs, strat.R_tilde, config["gamma"])
        row = dict(
            instance=k,
            equilibria="|".join(sorted(result.equilibria)),
            gc_cheap=result.gc_cheap,
            gc_free=result.gc_free,
            gain_a="",
            gain_b="",
        )
        if check_deviations:
            for prof in result.profiles(costs, strat.R_tilde):
                row[f"gain_{prof.name}"] = max_deviation_gain(g, costs, strat.R_tilde, prof, config["gamma"])
        return row

    rows = parallel_map(one, range(config["strategic.instances"]), config["threads"])
    return Table(["instance", "equilibria", "gc_cheap", "gc_free", "gain_a", "gain_b"], rows)


# -- persistence ------------------------------------------------------------------------


def write_outputs(out_dir, name, table, config, extra=None):
    """Write ``<name>.csv`` and ``<name>.json``; returns the CSV path."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / f"{name}.csv"
    csv_path.write_text(table.to_csv())
    summary = {
        "schema_version": SCHEMA_VERSION,
        "command": name,
        "master_seed": config["master_seed"],
        "streams": "Philox(SeedSequence(master_seed, spawn_key=(scenario, replication)))",
        "module_versions": MODULE_VERSIONS,
        "config": {k: v for k, v in config.as_dict().items() if k not in ("threads", "output_dir")},
        "csv": csv_path.name,
        "columns": table.columns,
        "rows": len(table),
    }
    if extra:
        summary["result"] = {k: _jsonable(v) for k, v in extra.items()}
    (out / f"{name}.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    log.info("wrote %s (%d rows)", csv_path, len(table))
    return csv_path


def _jsonable(value):
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, Regime):
        return str(value)
    return value



def run_scenario(config, command="sweep", out_dir=None):
    """Run one command and persist its outputs; returns the CSV path."""
    out_dir = out_dir or config["output_dir"]
    extra = None
    if command == "sweep":
        table = sweep_pi_h(config) if config["sweep.param"] == "pi_H" else sweep_f(config)
        name = f"sweep_{config['sweep.param']}"
    elif command == "percolation":
        table, name = sweep_percolation(config), "percolation"
    elif command == "simulate":
        table, report = simulate(config)
        name = "simulate"
        extra = {k: v for k, v in report.as_row().items()}
        extra.update(v1=report.v1, v2=report.v2)
    elif command == "household":
        table, extra = household(config)
        name = "household"
    elif command == "cross-community":
        table, name = cross_community(config), "cross_community"
    elif command == "classify-spreading":
        table, name = classify_spreading(config), "classify_spreading"
    else:
        raise ValueError(f"unknown command {command!r}")
    return write_outputs(out_dir, name, table, config, extra)
