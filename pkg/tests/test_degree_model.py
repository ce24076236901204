import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from socialfabric._validation import InfeasibleError, ValidationError
from socialfabric.degree_model import (
    DegreeModelSpec,
    DegreePmf,
    connectivity_z,
    critical_t,
    load_table,
    mix_population,
    moments,
    pmf_at,
)

from conftest import binomial_probs


def test_binomial_pmf_zero_mass():
    # theta(t) runs 0.1 -> 0.5 on this spec
    spec = DegreeModelSpec(6, 0.1, 0.5)
    assert pmf_at(spec, 1.0).probs[0] == pytest.approx(0.015625, abs=1e-15)
    assert pmf_at(spec, 0.0).probs[0] == pytest.approx(0.531441, abs=1e-15)


@given(st.floats(0.0, 1.0))
def test_pmf_normalised_with_degree_one(t):
    p = pmf_at(DegreeModelSpec(), t)
    assert abs(p.probs.sum() - 1.0) <= 1e-12
    assert p.probs[1] > 0


def test_moments():
    assert moments(DegreePmf.point_mass(2)) == (2.0, 4.0)
    mean, second = moments(DegreePmf(binomial_probs(6, 0.2)))
    assert mean == pytest.approx(1.2, abs=1e-12)
    assert second == pytest.approx(2.4, abs=1e-12)


def test_connectivity_z_examples():
    assert connectivity_z(DegreePmf.point_mass(2)) == 0
    assert connectivity_z(DegreePmf(binomial_probs(6, 0.2))) == pytest.approx(0.0, abs=1e-12)
    assert connectivity_z(DegreePmf(binomial_probs(6, 0.3))) == pytest.approx(0.9, abs=1e-12)


def test_mixture():
    mix = mix_population([(0.5, DegreePmf.point_mass(1)), (0.5, DegreePmf.point_mass(3))])
    assert mix.probs[1] == 0.5 and mix.probs[3] == 0.5
    assert connectivity_z(mix) == pytest.approx(1.0)
    p = DegreePmf(binomial_probs(6, 0.3))
    assert np.allclose(mix_population([(1.0, p)]).probs, p.probs, atol=1e-15)
    assert connectivity_z(mix_population([(1.0, DegreePmf.point_mass(2))])) == 0


def test_mixture_rejects_bad_weights():
    with pytest.raises(ValidationError):
        mix_population([(0.7, DegreePmf.point_mass(1)), (0.7, DegreePmf.point_mass(3))])
    with pytest.raises(ValidationError):
        mix_population([])


def test_critical_t_default():
    # theta* = 1/(D-1) = 0.2 and t* = (0.2 - 0.13) / 0.22
    t_star = critical_t(DegreeModelSpec())
    assert t_star == pytest.approx(0.07 / 0.22, abs=1e-9)
    assert DegreeModelSpec().z(t_star) == pytest.approx(0.0, abs=1e-9)


def test_critical_t_boundary_is_infeasible():
    with pytest.raises(InfeasibleError):
        critical_t(DegreeModelSpec(6, 0.1, 0.2))


def test_z_endpoints():
    spec = DegreeModelSpec()
    assert spec.z(1.0) == pytest.approx(6 * (5 * 0.1225 - 0.35), abs=1e-12)
    assert spec.z(0.0) == pytest.approx(6 * (5 * 0.0169 - 0.13), abs=1e-12)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(max_degree=3, theta_min=0.3, theta_max=0.6),
        dict(theta_min=0.05, theta_max=0.35),
        dict(theta_min=0.35, theta_max=0.13),
        dict(family="poisson"),
    ],
)
def test_spec_validation(kwargs):
    with pytest.raises(ValidationError):
        DegreeModelSpec(**kwargs)


@settings(max_examples=50)
@given(st.floats(0.0, 1.0), st.floats(0.0, 1.0))
def test_z_increasing(a, b):
    spec = DegreeModelSpec()
    lo, hi = sorted((a, b))
    if hi - lo > 1e-9:
        assert spec.z(lo) < spec.z(hi)


def test_pmf_rejects_small_support_and_bad_sums():
    with pytest.raises(ValidationError):
        DegreePmf(np.array([0.5, 0.5, 0, 0]))
    with pytest.raises(ValidationError):
        DegreePmf(np.array([0.5, 0.6, 0, 0, 0]))


def test_tabulated_table_roundtrip(tmp_path):
    rows = [(t, binomial_probs(6, 0.13 + 0.22 * t)) for t in np.linspace(0, 1, 11)]
    path = tmp_path / "table.txt"
    path.write_text("# t p0..p6\n" + "\n".join(f"{t} " + " ".join(repr(float(x)) for x in p) for t, p in rows))
    spec = load_table(path)
    assert spec.max_degree == 6
    # grid rows are exact and Z is piecewise linear between them
    assert spec.z(0.5) == pytest.approx(DegreeModelSpec().z(0.5), abs=1e-12)
    z_mid = 0.5 * (DegreeModelSpec().z(0.3) + DegreeModelSpec().z(0.4))
    assert spec.z(0.35) == pytest.approx(z_mid, abs=1e-12)
    assert critical_t(spec) == pytest.approx(0.318, abs=2e-3)


def test_tabulated_needs_zero_crossing():
    rows = [(0.0, binomial_probs(6, 0.25)), (1.0, binomial_probs(6, 0.3))]
    with pytest.raises(InfeasibleError):
        DegreeModelSpec.from_table(rows)


def test_theta_link():
    spec = DegreeModelSpec()
    assert spec.theta(0.0) == 0.13
    assert math.isclose(spec.theta(1.0), 0.35)
