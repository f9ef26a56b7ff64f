import itertools
import math

import networkx as nx
import pytest

from exclusivity.audit import (
    JointModel,
    e_principle_audit,
    joint_probability,
    product_exclusivity_graph,
    product_vertices,
    quantum_model,
    s_lp,
    slp_vertices,
    uniform_model,
    with_london_override,
)
from exclusivity.errors import InputError
from exclusivity.events import exclusive, london_events, paris_events, slp_events

SQRT2 = math.sqrt(2)
P_L = (2 + SQRT2) / 8
P_P = 1 - 1 / SQRT2


@pytest.fixture(scope="module")
def qmodel():
    return quantum_model()


@pytest.fixture(scope="module")
def product():
    return product_exclusivity_graph()


@pytest.fixture(scope="module")
def quantum_audit(qmodel, product):
    return e_principle_audit(qmodel, product)


def test_joint_probability(qmodel):
    assert P_L * P_P == pytest.approx(0.125, abs=1e-15)
    lon, par = london_events(), paris_events()
    assert joint_probability(qmodel, lon[0], par[6]) == pytest.approx(0.125, abs=1e-12)
    zero = uniform_model(0.0, P_P)
    assert joint_probability(zero, lon[0], par[6]) == 0
    with pytest.raises(InputError):
        joint_probability(qmodel, par[0], lon[0])


def test_s_lp(qmodel):
    assert s_lp(qmodel) == pytest.approx(1.0, abs=1e-9)
    assert s_lp(uniform_model(0.0, 0.0)) == 0
    hypo = uniform_model(0.45, P_P)
    assert s_lp(hypo) == pytest.approx(8 * 0.45 * P_P, abs=1e-12)
    assert s_lp(hypo) == pytest.approx(1.0544155877284288, abs=1e-12)


def test_product_graph_decomposes(product):
    lon, par = london_events(), paris_events()
    verts = product_vertices()
    assert product.n == 64
    for u, v in itertools.combinations(range(64), 2):
        (i, k), (j, m) = verts[u], verts[v]
        expected = exclusive(lon[i], lon[j]) or exclusive(par[k], par[m])
        assert product.has_edge(u, v) == expected
    assert all(product.has_edge(a, b) for a, b in itertools.combinations(slp_vertices(), 2))
    labels = {product.labels[v] for v in slp_vertices()}
    assert labels == {str(e) for e in slp_events()}


def test_disjoint_settings_not_adjacent(product):
    # (1,1|0,0) with context {0,1,2} and (1,-1|1,1) with context {4,5,6}: nothing shared
    u, v = 0 * 8 + 0, 6 * 8 + 4
    assert not product.has_edge(u, v)


def test_quantum_audit(quantum_audit, product):
    r = quantum_audit
    assert r.passed and not r.violations
    assert r.slp_pairwise_exclusive
    assert r.max_clique_probability == pytest.approx(1.0, abs=1e-9)
    assert r.slp_clique_is_maximizer
    assert len(r.max_clique_witness) == 8
    # networkx gives the same number of maximal cliques
    h = nx.Graph()
    h.add_nodes_from(range(64))
    h.add_edges_from(product.edges())
    assert r.clique_count == sum(1 for _ in nx.find_cliques(h)) == 74928


def test_counterfactual_trips(product):
    r = e_principle_audit(with_london_override(quantum_model(), 0.45), product)
    assert not r.passed
    assert r.uniform_override
    clique, total = r.violations[0]
    assert len(clique) == 8
    assert total == pytest.approx(8 * 0.45 * P_P, abs=1e-12)


@pytest.mark.parametrize("lam", [1.001, 1.01, 1.1])
def test_scaling_london_trips_flag(product, lam):
    model = with_london_override(quantum_model(), lam * P_L)
    assert s_lp(model) == pytest.approx(lam, abs=1e-9)
    assert not e_principle_audit(model, product).passed


def test_zero_model(product):
    r = e_principle_audit(uniform_model(0.0, 0.0), product)
    assert r.max_clique_probability == 0 and r.passed


def test_model_validation():
    with pytest.raises(InputError):
        uniform_model(1.5, 0.1)
    with pytest.raises(InputError):
        JointModel({}, {})


def test_report_dict_round_trip(quantum_audit):
    from exclusivity.audit import AuditReport

    assert AuditReport.from_dict(quantum_audit.to_dict()) == quantum_audit
