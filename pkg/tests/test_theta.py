import math
import random

import numpy as np
import pytest

from exclusivity.errors import ConvergenceError, InputError
from exclusivity.events import london_events, paris_events
from exclusivity.graphs import (
    ExclusivityGraph,
    circulant,
    complement,
    complete,
    cycle,
    empty,
    from_events,
    independence_number,
)
from exclusivity.theta import SdpSettings, ThetaResult, lovasz_theta, theta_cycle_closed_form, verify_witness

SQRT2 = math.sqrt(2)


@pytest.fixture(scope="module")
def g_l():
    return from_events(london_events())


@pytest.fixture(scope="module")
def g_p():
    return from_events(paris_events())


def test_chsh_and_nc_graphs(g_l, g_p):
    assert lovasz_theta(g_l).value == pytest.approx(2 + SQRT2, abs=1e-5)
    assert lovasz_theta(g_p).value == pytest.approx(8 - 4 * SQRT2, abs=1e-5)


def test_extremes():
    assert lovasz_theta(complete(8)).value == pytest.approx(1, abs=1e-6)
    assert lovasz_theta(empty(8)).value == pytest.approx(8, abs=1e-6)
    assert lovasz_theta(empty(1)).value == pytest.approx(1, abs=1e-12)


def test_closed_form_values():
    assert theta_cycle_closed_form(5) == pytest.approx(math.sqrt(5), abs=1e-14)
    assert theta_cycle_closed_form(7) == pytest.approx(3.3176672073940963, abs=1e-12)
    assert theta_cycle_closed_form(5, complement=True) == pytest.approx(math.sqrt(5), abs=1e-14)
    assert theta_cycle_closed_form(10001) / 10001 == pytest.approx(0.5, abs=1e-6)
    for bad in (3, 4, 8):
        with pytest.raises(InputError):
            theta_cycle_closed_form(bad)


@pytest.mark.parametrize("n", [5, 7, 9, 11])
def test_cycles_match_closed_form(n):
    assert lovasz_theta(cycle(n)).value == pytest.approx(theta_cycle_closed_form(n), abs=1e-5)
    assert lovasz_theta(complement(cycle(n))).value == pytest.approx(
        theta_cycle_closed_form(n, complement=True), abs=1e-5
    )


@pytest.mark.parametrize(
    "g",
    [circulant(8, [1, 2]), circulant(8, [1]), circulant(9, [1, 3]), circulant(10, [2, 5]), cycle(7)],
    ids=repr,
)
def test_product_relation_vertex_transitive(g):
    assert lovasz_theta(g).value * lovasz_theta(complement(g)).value == pytest.approx(g.n, abs=1e-4)


def test_product_relation_chsh_and_nc_graphs(g_l, g_p):
    assert lovasz_theta(g_l).value * lovasz_theta(g_p).value == pytest.approx(8, abs=1e-4)


def random_graph(n, p, rng):
    return ExclusivityGraph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


@pytest.mark.parametrize("seed", range(8))
def test_sandwich_and_monotonicity(seed):
    rng = random.Random(seed)
    g = random_graph(rng.randint(3, 9), 0.5, rng)
    th = lovasz_theta(g).value
    assert independence_number(g)[0] <= th + 1e-6
    if g.edges():
        i, j = rng.choice(g.edges())
        smaller = ExclusivityGraph.from_edges(g.n, [e for e in g.edges() if e != (i, j)])
        assert lovasz_theta(smaller).value >= th - 1e-6


def test_witness_invariants(g_l):
    r = lovasz_theta(g_l)
    w = r.witness
    assert np.linalg.eigvalsh(w).min() >= -1e-7
    assert np.trace(w) == pytest.approx(1, abs=1e-8)
    assert np.abs(w[g_l.adjacency_matrix()]).max() <= 1e-7
    assert r.value == pytest.approx(w.sum(), abs=1e-7)
    assert max(r.primal_residual, r.dual_residual) < 1e-8
    report = verify_witness(g_l, r)
    assert report.passed


def test_verify_witness_detects_failures(g_p):
    r = lovasz_theta(g_p)
    w = np.array(r.witness)
    i, j = g_p.edges()[0]
    w[i, j] = w[j, i] = 0.1
    bad = verify_witness(g_p, ThetaResult(r.value, w, 0, 0, 0))
    assert bad.edge_violation == pytest.approx(0.1)
    assert not bad.passed
    scaled = np.array(r.witness) * 2
    bad = verify_witness(g_p, ThetaResult(scaled.sum(), scaled, 0, 0, 0))
    assert bad.trace_violation == pytest.approx(1.0, abs=1e-12)
    assert not bad.passed
    neg = np.array(r.witness) - 0.5 * np.eye(8)
    assert verify_witness(g_p, ThetaResult(neg.sum(), neg, 0, 0, 0)).psd_violation > 0.1


def test_deterministic(g_l):
    a, b = lovasz_theta(g_l), lovasz_theta(g_l)
    assert a.value == b.value and a.iterations == b.iterations
    assert np.array_equal(a.witness, b.witness)


def test_non_convergence_raises(g_l):
    with pytest.raises(ConvergenceError) as info:
        lovasz_theta(g_l, SdpSettings(max_iterations=3))
    assert set(info.value.residuals) == {"primal_residual", "dual_residual"}


def test_settings_validation():
    with pytest.raises(InputError):
        SdpSettings(tolerance=0)
    with pytest.raises(InputError):
        SdpSettings(max_iterations=0)
    with pytest.raises(InputError):
        SdpSettings(step_parameter=-1)


@pytest.mark.parametrize("rho", [0.3, 3.0])
def test_step_parameter_does_not_change_optimum(g_p, rho):
    r = lovasz_theta(g_p, SdpSettings(step_parameter=rho))
    assert r.value == pytest.approx(8 - 4 * SQRT2, abs=1e-5)


def test_python_backend(kernels, g_p):
    assert lovasz_theta(g_p).value == pytest.approx(8 - 4 * SQRT2, abs=1e-5)
