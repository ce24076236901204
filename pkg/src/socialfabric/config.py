"""Scenario configuration files.

A config is a flat ``key = value`` text file. Keys carry dotted section
prefixes (``degree.theta_min``, ``preferences.pi_H`` ...); ``#`` starts a
comment. Lists are comma-separated, cost PMFs are ``value:prob`` pairs.
See ``docs/config.md`` for the full schema.
"""

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ._validation import ValidationError
from .agents import DEFAULT_COSTS, PreferenceSpec
from .degree_model import DegreeModelSpec, load_table
from .extensions import StrategicSpec
from .spread import AudienceSpec


def _bool(text):
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _floats(text):
    return tuple(float(x) for x in text.split(",") if x.strip())


def _pmf(text):
    pairs = []
    for item in text.split(","):
        if not item.strip():
            continue
        value, prob = item.split(":")
        pairs.append((float(value), float(prob)))
    return tuple(pairs)


def _costs_text(pairs):
    return ", ".join(f"{c:g}:{p:g}" for c, p in pairs)


# key -> (parser, default); a default of ``...`` marks a required key
SCHEMA = {
    "n": (int, ...),
    "replications": (int, 1),
    "master_seed": (int, 0),
    "threads": (int, 1),
    "gamma": (float, 0.05),
    "output_dir": (str, "results"),
    "reward_draws": (int, 50),
    "degree.max_degree": (int, 6),
    "degree.theta_min": (float, 0.13),
    "degree.theta_max": (float, 0.35),
    "degree.table": (str, ""),
    "preferences.A_in": (float, 1.0),
    "preferences.A_out": (float, 1.0),
    "preferences.kappa": (float, 0.3),
    "preferences.pi_L": (float, 0.8),
    "preferences.pi_H": (float, 1.5),
    "preferences.R": (float, 1.0),
    "preferences.beta": (float, 2.0),
    "preferences.costs": (_pmf, DEFAULT_COSTS),
    "population.f": (float, 0.5),
    "audience.k_obs": (float, 3.0),
    "audience.k_rew": (float, 3.0),
    "audience.alpha": (float, 0.1),
    "sweep.param": (str, "pi_H"),
    "sweep.from": (float, 0.8),
    "sweep.to": (float, 3.0),
    "sweep.steps": (int, 45),
    "sweep.monte_carlo": (_bool, True),
    "percolation.q": (_floats, (0.0, 0.1, 0.2, 0.3, 0.4)),
    "percolation.Q": (_floats, (0.0, 0.1, 0.2, 0.3, 0.4)),
    "percolation.theta": (float, 0.35),
    "household.pi": (_floats, (0.8, 1.5, 3.0)),
    "household.xi_bar": (float, 0.01),
    "household.delta_v": (float, 0.0),
    "cross.n_a": (int, 0),
    "cross.n_b": (int, 0),
    "cross.theta_a": (float, 0.0),
    "cross.theta_b": (float, 0.5),
    "cross.out_degree": (int, 1),
    "strategic.R_tilde": (float, 1.0),
    "strategic.gossip_costs": (_pmf, ((0.0, 0.3), (0.5, 0.5), (2.0, 0.2))),
    "strategic.reward_costs": (_pmf, ((0.0, 0.4), (0.5, 0.4), (2.0, 0.2))),
    "strategic.theta": (float, 0.5),
    "strategic.instances": (int, 10),
}


@dataclass(frozen=True)
class ScenarioConfig:
    values: dict = field(default_factory=dict)

    def __post_init__(self):
        if self["n"] < 100:
            raise ValidationError("n must be at least 100")
        if self["replications"] < 1:
            raise ValidationError("replications must be at least 1")
        if self["sweep.steps"] < 2:
            raise ValidationError("sweep.steps must be at least 2")
        if self["sweep.param"] not in ("pi_H", "f"):
            raise ValidationError("sweep.param must be 'pi_H' or 'f'")
        if self["sweep.param"] == "f" and not 0 <= self["sweep.from"] <= self["sweep.to"] <= 1:
            raise ValidationError("an f sweep needs 0 <= sweep.from <= sweep.to <= 1")
        # build every spec once so bad values fail before any work starts
        self.degree_spec()
        self.preferences()
        self.audience()
        self.strategic()

    def __getitem__(self, key):
        return self.values[key]

    def replace(self, **changes):
        """Copy with some keys changed; dotted keys use ``__`` in place of ``.``."""
        values = dict(self.values)
        for key, value in changes.items():
            key = key.replace("__", ".")
            if key not in SCHEMA:
                raise ValidationError(f"unknown config key {key!r}")
            values[key] = value
        return ScenarioConfig(values)

    def degree_spec(self):
        if self["degree.table"]:
            return load_table(self["degree.table"])
        return DegreeModelSpec(
            max_degree=self["degree.max_degree"],
            theta_min=self["degree.theta_min"],
            theta_max=self["degree.theta_max"],
        )

    def preferences(self):
        return PreferenceSpec(
            A_in=self["preferences.A_in"],
            A_out=self["preferences.A_out"],
            kappa=self["preferences.kappa"],
            pi_L=self["preferences.pi_L"],
            pi_H=self["preferences.pi_H"],
            R=self["preferences.R"],
            beta=self["preferences.beta"],
            cost_pmf=self["preferences.costs"],
        )

    def audience(self):
        return AudienceSpec(self["audience.k_obs"], self["audience.k_rew"], self["audience.alpha"])

    def strategic(self):
        return StrategicSpec(
            self["strategic.R_tilde"], self["strategic.gossip_costs"], self["strategic.reward_costs"]
        )

    def sweep_values(self):
        return np.linspace(self["sweep.from"], self["sweep.to"], self["sweep.steps"])

    def as_dict(self):
        out = {}
        for key, value in sorted(self.values.items()):
            if key.endswith("costs"):
                value = _costs_text(value)
            elif isinstance(value, tuple):
                value = list(value)
            out[key] = value
        return out


def parse_config(text, source="<config>", overrides=None):
    """Parse config text; unknown keys and missing required keys raise ValidationError."""
    raw = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValidationError(f"{source}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in SCHEMA:
            raise ValidationError(f"{source}:{lineno}: unknown config key {key!r}")
        raw[key] = value
    values = {}
    for key, (parse, default) in SCHEMA.items():
        if key in raw:
            try:
                values[key] = parse(raw[key])
            except ValueError as exc:
                raise ValidationError(f"{source}: bad value for {key!r}: {exc}") from None
        elif default is ...:
            raise ValidationError(f"{source}: missing required key {key!r}")
        else:
            values[key] = default
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = value
    return ScenarioConfig(values)


def load_config(path, overrides=None):
    text = Path(path).read_text()
    return parse_config(text, str(path), overrides)


def default_config(**changes):
    """Config with every default and ``n = 20000``; keyword changes as in ``replace``."""
    return parse_config("n = 20000").replace(**changes)

