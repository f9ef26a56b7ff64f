import itertools
import math

import numpy as np
import pytest

from exclusivity.errors import InputError
from exclusivity.events import paris_events
from exclusivity.graphs import empty, from_events
from exclusivity.numerics import inner
from exclusivity.quantum import (
    Context,
    Ket,
    Projector,
    context_probabilities_all_orderings,
    london_distribution,
    london_model,
    overlap_sum,
    paris_context,
    paris_model,
    paris_projectors,
    paris_s_value,
    paris_state,
    paris_vectors,
    sequential_probability,
    verify_orthogonal_representation,
)

SQRT2 = math.sqrt(2)
P_P = 1 - 1 / SQRT2
P_L = (2 + SQRT2) / 8


@pytest.fixture(scope="module")
def psi():
    return paris_state()


@pytest.fixture(scope="module")
def proj():
    return paris_projectors()


def test_state(psi):
    assert psi[0].real == pytest.approx(0.5411961001461969, abs=1e-15)
    assert psi[4] == 0
    assert np.vdot(psi.amplitudes, psi.amplitudes).real == pytest.approx(1, abs=1e-12)


def test_vectors():
    v = paris_vectors()
    assert np.array_equal(v[0].amplitudes, [1, 0, 0, 0, 0])
    assert v[3][0].real == pytest.approx(2 - SQRT2, abs=1e-15)
    for k in v:
        assert abs(np.linalg.norm(k.amplitudes) - 1) <= 1e-10
    assert abs(inner(v[3].amplitudes, v[4].amplitudes)) <= 1e-10


def test_representation(psi):
    rep = verify_orthogonal_representation(paris_vectors(), from_events(paris_events()))
    assert len(rep.edge_inner_products) == 16
    assert rep.worst_edge <= 1e-9 and rep.orthogonal
    assert rep.gram_rank == 5
    basis = [Ket(np.eye(3)[i]) for i in range(3)]
    assert verify_orthogonal_representation(basis, empty(3)).orthogonal
    with pytest.raises(InputError):
        verify_orthogonal_representation(basis, empty(4))


def test_projectors_idempotent_hermitian(proj):
    for p in proj:
        assert np.abs(p.matrix @ p.matrix - p.matrix).max() <= 1e-10
        assert np.abs(p.matrix - p.matrix.conj().T).max() <= 1e-12
    for i in range(8):
        trio = [proj[(i + d) % 8].matrix for d in range(3)]
        for a, b in itertools.combinations(trio, 2):
            assert np.abs(a @ b).max() <= 1e-12
        s = sum(trio)
        assert np.abs(s @ s - s).max() <= 1e-12
        assert np.linalg.matrix_rank(s, tol=1e-8) == 3
    with pytest.raises(InputError):
        Projector(2 * np.eye(2))


def test_sequential_examples(psi, proj):
    assert sequential_probability(psi, Context((0, 1, 2), (0, 0, 1)), proj) == pytest.approx(P_P, abs=1e-12)
    direct = abs(inner(paris_vectors()[0].amplitudes, psi.amplitudes)) ** 2
    assert sequential_probability(psi, Context((0,), (1,)), proj) == pytest.approx(direct, abs=1e-15)
    assert direct == pytest.approx(P_P, abs=1e-12)
    assert sequential_probability(psi, Context((0, 1), (1, 1)), proj) == pytest.approx(0, abs=1e-15)
    with pytest.raises(InputError):
        sequential_probability(psi, Context((0, 9), (0, 1)), proj)


def test_all_orderings(psi, proj):
    vals = context_probabilities_all_orderings(psi, Context((0, 1, 2), (0, 0, 1)), proj)
    assert len(vals) == 6
    assert max(abs(v - P_P) for v in vals) <= 1e-12
    vals = context_probabilities_all_orderings(psi, Context((3, 4, 5), (0, 0, 1)), proj)
    target = abs(inner(paris_vectors()[5].amplitudes, psi.amplitudes)) ** 2
    assert max(abs(v - target) for v in vals) <= 1e-12
    with pytest.raises(InputError):
        Context((1, 1, 2), (0, 0, 1))


def test_ordering_invariance_every_context_and_outcome(psi, proj):
    for i in range(8):
        for outs in itertools.product((0, 1), repeat=3):
            vals = context_probabilities_all_orderings(psi, paris_context(i, outs), proj)
            assert max(vals) - min(vals) <= 1e-12


def test_marginal_consistency(psi, proj):
    for i in range(8):
        ctx = paris_context(i).observables
        for pos, k in enumerate(ctx):
            alone = sequential_probability(psi, Context((k,), (1,)), proj)
            summed = math.fsum(
                sequential_probability(psi, Context(ctx, outs), proj)
                for outs in itertools.product((0, 1), repeat=3)
                if outs[pos] == 1
            )
            assert alone == pytest.approx(summed, abs=1e-12)


def test_paris_s_value(psi):
    table = paris_model()
    s = paris_s_value()
    assert s == pytest.approx(8 - 4 * SQRT2, abs=1e-9)
    assert s == pytest.approx(8 * table.values[0], abs=1e-12)
    collapsed = math.fsum(abs(inner(paris_vectors()[(i + 2) % 8].amplitudes, psi.amplitudes)) ** 2 for i in range(8))
    assert s == pytest.approx(collapsed, abs=1e-12)
    assert overlap_sum(psi, paris_vectors()) == pytest.approx(s, abs=1e-12)


def test_london_model():
    table = london_model()
    assert len(table.probabilities) == 8
    for p in table.probabilities.values():
        assert p == pytest.approx(P_L, abs=1e-12)
    assert table.s_value == pytest.approx(2 + SQRT2, abs=1e-11)
    full = london_distribution()
    for i, j in itertools.product((0, 1), repeat=2):
        assert math.fsum(p for (a, b, x, y), p in full.items() if (x, y) == (i, j)) == pytest.approx(1, abs=1e-12)


def test_ket_validation():
    with pytest.raises(InputError):
        Ket([1, 1])
