import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from socialfabric._validation import ValidationError
from socialfabric.degree_model import DegreePmf, connectivity_z
from socialfabric.graph import DegreeSequence, Graph, sample_configuration
from socialfabric.percolation import (
    PercolationParams,
    Regime,
    active_subgraph,
    chi,
    predicted_regime,
    thin_pmf,
)
from socialfabric.rng import stream

from conftest import binomial_probs


def test_thin_identity_and_zero():
    p = DegreePmf(binomial_probs(6, 0.3))
    assert np.allclose(thin_pmf(p, 1.0).probs, p.probs, atol=1e-15)
    assert thin_pmf(p, 0.0) == DegreePmf.point_mass(0)


def test_thin_point_mass_two():
    out = thin_pmf(DegreePmf.point_mass(2), 0.5).probs
    assert np.allclose(out[:3], [0.25, 0.5, 0.25], atol=1e-15)


def test_thin_binomial_is_binomial():
    # Bi(D, theta) thinned by psi is Bi(D, theta * psi)
    out = thin_pmf(DegreePmf(binomial_probs(6, 0.4)), 0.5).probs
    assert np.allclose(out, binomial_probs(6, 0.2), atol=1e-14)


def test_chi_examples():
    assert chi(DegreePmf.point_mass(2), PercolationParams()) == 0
    assert chi(DegreePmf.point_mass(3), PercolationParams()) == 3
    assert chi(DegreePmf.point_mass(2), PercolationParams(0, 0.5)) == -1


def test_regime_examples():
    assert predicted_regime(DegreePmf.point_mass(3), PercolationParams()) is Regime.SUPERCRITICAL
    assert predicted_regime(DegreePmf.point_mass(2), PercolationParams(0, 0.5)) is Regime.SUBCRITICAL
    # the boundary chi = 0 counts as subcritical
    assert predicted_regime(DegreePmf.point_mass(2), PercolationParams()) is Regime.SUBCRITICAL


@settings(max_examples=50)
@given(st.lists(st.floats(0.0, 1.0), min_size=7, max_size=7).filter(lambda v: sum(v) > 0.1))
def test_chi_equals_z_without_loss(raw):
    p = DegreePmf(np.array(raw) / sum(raw))
    assert abs(chi(p, PercolationParams()) - connectivity_z(p)) <= 1e-12


@settings(max_examples=30)
@given(st.floats(0, 0.99), st.floats(0, 0.98), st.floats(0, 0.01))
def test_chi_nonincreasing_in_Q(q, Q, dQ):
    p = DegreePmf(binomial_probs(6, 0.35))
    assert chi(p, PercolationParams(q, Q + dQ)) <= chi(p, PercolationParams(q, Q)) + 1e-12


def test_params_validation():
    with pytest.raises(ValidationError):
        PercolationParams(q=1.0)
    with pytest.raises(ValidationError):
        PercolationParams(Q=-0.1)
    assert PercolationParams(q=0.3).psi == pytest.approx(0.49)


def test_active_subgraph_identity(rng):
    g = sample_configuration(DegreeSequence([3] * 100), rng)
    assert np.array_equal(active_subgraph(g, PercolationParams(), rng).edges, g.edges)


def test_active_subgraph_all_silent_is_empty(rng):
    g = sample_configuration(DegreeSequence([3] * 100), rng)
    # Q must stay below one, so push it as close as the contract allows
    out = active_subgraph(g, PercolationParams(0, 1 - 1e-15), rng)
    assert out.m == 0


def test_active_subgraph_edge_count():
    n = 20000
    g = sample_configuration(DegreeSequence([3] * n), stream(2))
    kept = active_subgraph(g, PercolationParams(q=0.3), stream(3)).m
    mean = 0.49 * 30000
    sd = np.sqrt(30000 * 0.49 * 0.51)
    assert abs(kept - mean) <= 3 * sd


def test_active_subgraph_drops_silent_nodes():
    g = Graph(3, [(0, 1), (1, 2)])
    out = active_subgraph(g, PercolationParams(0, 0.5), stream(4))
    assert set(map(tuple, out.edges)) <= {(0, 1), (1, 2)}
