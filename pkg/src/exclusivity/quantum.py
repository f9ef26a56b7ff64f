"""Pure-state quantum realizations of both event families.

The 8-observable model lives in C^5: observable ``k`` is the rank-one
projector onto ``|v_k>``, outcome 1 meaning the projector fires and outcome 0
its complement.  Triples ``{k, k+1, k+2} mod 8`` are mutually orthogonal and
thus jointly measurable; sequential measurement follows the Lüders rule on an
unnormalized state.

The CHSH events are realized on the maximally entangled two-qubit state with
observables ``cos(t) Z + sin(t) X`` at angles ``{0, pi/2}`` for the first
party and ``{pi/4, -pi/4}`` for the second.
"""
from dataclasses import dataclass
import itertools
import math

import numpy as np

from .errors import InputError
from .events import PARIS_SIZE, london_events, paris_event
from .numerics import complex_vector, inner

NORM_TOL = 1e-10
RANK_TOL = 1e-8
ORTHO_TOL = 1e-9


class Ket:
    __slots__ = ("amplitudes",)

    def __init__(self, amplitudes, check_norm=True):
        amps = complex_vector(amplitudes)
        if check_norm and abs(np.linalg.norm(amps) - 1.0) > NORM_TOL:
            raise InputError(f"ket is not unit norm (norm {np.linalg.norm(amps):.12g})")
        self.amplitudes = amps

    @property
    def dim(self):
        return self.amplitudes.size

    def __getitem__(self, i):
        return self.amplitudes[i]

    def __repr__(self):
        return f"Ket({np.array2string(self.amplitudes, precision=6)})"


class Projector:
    __slots__ = ("matrix",)

    def __init__(self, matrix):
        m = np.array(matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InputError("projector matrix must be square")
        if np.max(np.abs(m - m.conj().T)) > 1e-12:
            raise InputError("projector is not Hermitian")
        if np.max(np.abs(m @ m - m)) > 1e-10:
            raise InputError("projector is not idempotent")
        m.setflags(write=False)
        self.matrix = m

    @classmethod
    def from_ket(cls, ket):
        v = ket.amplitudes
        return cls(np.outer(v, v.conj()))

    @property
    def dim(self):
        return self.matrix.shape[0]

    def complement(self):
        return Projector(np.eye(self.dim) - self.matrix)


@dataclass(frozen=True)
class Context:
    """Observables measured in sequence, with the target outcome of each."""

    observables: tuple
    outcomes: tuple

    def __post_init__(self):
        object.__setattr__(self, "observables", tuple(self.observables))
        object.__setattr__(self, "outcomes", tuple(self.outcomes))
        if not self.observables or len(self.observables) != len(self.outcomes):
            raise InputError("context needs one outcome per observable")
        if len(set(self.observables)) != len(self.observables):
            raise InputError(f"repeated observable in context {self.observables}")
        if any(o not in (0, 1) for o in self.outcomes):
            raise InputError(f"outcomes must be 0 or 1, got {self.outcomes}")

    def reordered(self, order):
        return Context(
            tuple(self.observables[k] for k in order),
            tuple(self.outcomes[k] for k in order),
        )


def sequential_probability(state, context, projectors):
    """Probability of ``context.outcomes`` when measuring in the listed order.

    Each step applies the effect for the target outcome (the projector for 1,
    its complement for 0) to the unnormalized state; the result is the squared
    norm of what is left.
    """
    psi = state.amplitudes
    for k, outcome in zip(context.observables, context.outcomes):
        try:
            p = projectors[k]
        except (KeyError, IndexError):
            raise InputError(f"unknown observable {k!r}") from None
        fired = p.matrix @ psi
        psi = fired if outcome == 1 else psi - fired
    return float(np.vdot(psi, psi).real)


def context_probabilities_all_orderings(state, context, projectors):
    """Sequential probability for every ordering of the context, in
    ``itertools.permutations`` order of positions."""
    return [
        sequential_probability(state, context.reordered(order), projectors)
        for order in itertools.permutations(range(len(context.observables)))
    ]


# five-dimensional model

def paris_state():
    a = math.sqrt(1.0 - 1.0 / math.sqrt(2.0))
    return Ket([a, a, a, math.sqrt(3.0 / math.sqrt(2.0) - 2.0), 0.0])


def paris_vectors():
    r2 = math.sqrt(2.0)
    s1 = math.sqrt(r2 - 1.0)
    s2 = math.sqrt(3.0 * r2 - 4.0)
    s3 = math.sqrt(2.0 * (5.0 * r2 - 7.0))
    s4 = math.sqrt(6.0 * r2 - 8.0)
    s5 = math.sqrt(5.0 * r2 - 7.0)
    rows = [
        (1, 0, 0, 0, 0),
        (0, 1, 0, 0, 0),
        (0, 0, 1, 0, 0),
        (2 - r2, 0, 0, s1, -s2),
        (3 - 2 * r2, 2 - r2, 0, s3, s4),
        (2 - r2, 3 - 2 * r2, 2 - r2, -2 * s5, 0),
        (0, r2 - 2, 2 * r2 - 3, -s3, s4),
        (0, 0, r2 - 2, -s1, -s2),
    ]
    # unit norm as written; Ket checks it rather than renormalizing
    return [Ket(r) for r in rows]


def paris_projectors():
    return [Projector.from_ket(v) for v in paris_vectors()]


def paris_context(i, outcomes=(0, 0, 1)):
    return Context(tuple((i + k) % PARIS_SIZE for k in range(3)), outcomes)


def paris_contexts():
    return [paris_context(i) for i in range(PARIS_SIZE)]


@dataclass(frozen=True)
class ParisTable:
    """Per-context probabilities for every ordering.

    ``orderings[i]`` holds ``(observable order, probability)`` pairs for
    context ``i``; ``values[i]`` is their mean.
    """

    orderings: tuple
    values: tuple

    @property
    def s_value(self):
        return math.fsum(self.values)

    def event_probabilities(self):
        return {paris_event(i): p for i, p in enumerate(self.values)}


def paris_model(state=None, projectors=None):
    state = state or paris_state()
    projectors = projectors or paris_projectors()
    orderings, values = [], []
    for ctx in paris_contexts():
        rows = []
        for order in itertools.permutations(range(3)):
            c = ctx.reordered(order)
            rows.append((c.observables, sequential_probability(state, c, projectors)))
        orderings.append(tuple(rows))
        values.append(math.fsum(p for _, p in rows) / len(rows))
    return ParisTable(tuple(orderings), tuple(values))


def paris_s_value():
    return paris_model().s_value


@dataclass(frozen=True)
class RepresentationReport:
    edge_inner_products: dict
    worst_edge: float
    gram_rank: int
    singular_values: tuple
    norm_errors: tuple

    @property
    def orthogonal(self):
        return self.worst_edge <= ORTHO_TOL


def verify_orthogonal_representation(vectors, graph):
    if len(vectors) != graph.n:
        raise InputError(f"{len(vectors)} vectors for a graph on {graph.n} vertices")
    products = {(i, j): abs(inner(vectors[i].amplitudes, vectors[j].amplitudes)) for i, j in graph.edges()}
    stack = np.array([v.amplitudes for v in vectors])
    sv = np.linalg.svd(stack, compute_uv=False)
    return RepresentationReport(
        edge_inner_products=products,
        worst_edge=max(products.values(), default=0.0),
        gram_rank=int(np.sum(sv > RANK_TOL)),
        singular_values=tuple(float(s) for s in sv),
        norm_errors=tuple(abs(float(np.linalg.norm(v.amplitudes)) - 1.0) for v in vectors),
    )


def overlap_sum(state, vectors):
    """``sum_k |<psi|v_k>|^2``."""
    return math.fsum(abs(inner(state.amplitudes, v.amplitudes)) ** 2 for v in vectors)


# two-qubit CHSH model

_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)

LONDON_ANGLES_A = (0.0, math.pi / 2)
LONDON_ANGLES_B = (math.pi / 4, -math.pi / 4)


def bell_state():
    return Ket(np.array([1, 0, 0, 1]) / math.sqrt(2.0))


def qubit_effect(angle, outcome):
    """Projector for result ``outcome`` (+-1) of ``cos(angle) Z + sin(angle) X``."""
    sigma = math.cos(angle) * _Z + math.sin(angle) * _X
    return (np.eye(2) + outcome * sigma) / 2.0


def london_probability(a, b, i, j, state=None):
    state = state or bell_state()
    effect = np.kron(qubit_effect(LONDON_ANGLES_A[i], a), qubit_effect(LONDON_ANGLES_B[j], b))
    psi = state.amplitudes
    return float(np.vdot(psi, effect @ psi).real)


def london_distribution(state=None):
    """Full table ``{(a, b, i, j): p}`` over all 16 outcome/setting combinations."""
    return {
        (a, b, i, j): london_probability(a, b, i, j, state)
        for i, j in itertools.product((0, 1), repeat=2)
        for a, b in itertools.product((1, -1), repeat=2)
    }


@dataclass(frozen=True)
class LondonTable:
    probabilities: dict  # Event -> probability, in family order

    @property
    def s_value(self):
        return math.fsum(self.probabilities.values())


def london_model(state=None):
    full = london_distribution(state)
    probs = {}
    for ev in london_events():
        (a, i), (b, j) = [(o, int(s.token)) for s, o in ev.items]
        probs[ev] = full[(a, b, i, j)]
    return LondonTable(probs)
