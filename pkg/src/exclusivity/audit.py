"""Exclusivity-principle audit over joint CHSH x noncontextuality events.

The two experiments are independent, so a joint event's probability is the
product of its parts.  Two joint events are exclusive iff their CHSH parts or
their noncontextuality parts are.  The audit enumerates every maximal clique
of the resulting 64-vertex graph and checks that no clique's probabilities
sum above 1.
"""
from dataclasses import dataclass, field
import itertools
import math

from .errors import InputError
from .events import SLP_PAIRS, exclusive, joint_event, london_events, paris_events, slp_events
from .graphs import ExclusivityGraph, max_cliques
from .quantum import london_model, paris_model

E_TOL = 1e-9


@dataclass(frozen=True)
class JointModel:
    london_probs: dict
    paris_probs: dict
    uniform_override: bool = False

    def __post_init__(self):
        for name, table, family in (
            ("london", self.london_probs, london_events()),
            ("paris", self.paris_probs, paris_events()),
        ):
            if set(table) != set(family):
                raise InputError(f"{name} table must be keyed by exactly the 8 family events")
            for ev, p in table.items():
                if not 0.0 <= p <= 1.0 + 1e-12:
                    raise InputError(f"{name} probability {p!r} for {ev} outside [0, 1]")


def quantum_model():
    """Quantum-maximal tables (CHSH events from the two-qubit model, NC events
    averaged over the six measurement orderings)."""
    return JointModel(london_model().probabilities, paris_model().event_probabilities())


def uniform_model(p_l, p_p):
    return JointModel(
        {ev: p_l for ev in london_events()},
        {ev: p_p for ev in paris_events()},
        uniform_override=True,
    )


def with_london_override(model, p_l):
    """Counterfactual: every CHSH event probability replaced by ``p_l``.

    Only meaningful under the assumption that the extremal CHSH table is
    uniform; the returned model is flagged accordingly.
    """
    return JointModel({ev: p_l for ev in london_events()}, dict(model.paris_probs), True)


def joint_probability(model, l, p):
    try:
        return model.london_probs[l] * model.paris_probs[p]
    except KeyError as exc:
        raise InputError(f"event {exc.args[0]} not in the model") from None


def s_lp(model):
    """Total probability of the eight pairwise-exclusive joint events."""
    lon, par = london_events(), paris_events()
    return math.fsum(joint_probability(model, lon[i], par[k]) for i, k in SLP_PAIRS)


def product_vertices():
    """``(london_index, paris_index)`` for each product-graph vertex (London-major)."""
    return list(itertools.product(range(8), range(8)))


def slp_vertices():
    return tuple(sorted(8 * i + k for i, k in SLP_PAIRS))


def product_exclusivity_graph(model=None):
    lon, par = london_events(), paris_events()
    joint = [joint_event(lon[i], par[k]) for i, k in product_vertices()]
    n = len(joint)
    adj = [0] * n
    for u in range(n):
        for v in range(u + 1, n):
            if exclusive(joint[u], joint[v]):
                adj[u] |= 1 << v
                adj[v] |= 1 << u
    return ExclusivityGraph(n, adj, [str(e) for e in joint])


@dataclass(frozen=True)
class AuditReport:
    s_l: float
    s_p: float
    s_lp: float
    slp_pairwise_exclusive: bool
    clique_count: int
    max_clique_probability: float
    max_clique_witness: tuple
    maximizer_count: int
    slp_clique_is_maximizer: bool
    uniform_override: bool
    violations: tuple = field(default=())

    @property
    def passed(self):
        return not self.violations

    def to_dict(self):
        return {
            "s_l": self.s_l,
            "s_p": self.s_p,
            "s_lp": self.s_lp,
            "slp_pairwise_exclusive": self.slp_pairwise_exclusive,
            "clique_count": self.clique_count,
            "max_clique_probability": self.max_clique_probability,
            "max_clique_witness": list(self.max_clique_witness),
            "maximizer_count": self.maximizer_count,
            "slp_clique_is_maximizer": self.slp_clique_is_maximizer,
            "uniform_override": self.uniform_override,
            "violations": [{"clique": list(c), "sum": s} for c, s in self.violations],
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            s_l=d["s_l"],
            s_p=d["s_p"],
            s_lp=d["s_lp"],
            slp_pairwise_exclusive=d["slp_pairwise_exclusive"],
            clique_count=d["clique_count"],
            max_clique_probability=d["max_clique_probability"],
            max_clique_witness=tuple(d["max_clique_witness"]),
            maximizer_count=d["maximizer_count"],
            slp_clique_is_maximizer=d["slp_clique_is_maximizer"],
            uniform_override=d["uniform_override"],
            violations=tuple((tuple(v["clique"]), v["sum"]) for v in d["violations"]),
        )


def e_principle_audit(model, graph=None):
    graph = graph or product_exclusivity_graph(model)
    lon, par = london_events(), paris_events()
    weights = [joint_probability(model, lon[i], par[k]) for i, k in product_vertices()]

    slp = list(slp_events())
    pairwise = all(exclusive(a, b) for a, b in itertools.combinations(slp, 2))

    cliques = max_cliques(graph)
    sums = [math.fsum(weights[v] for v in c) for c in cliques]
    best = max(sums, default=0.0)
    # ties within rounding noise count as maximizers
    maximizers = [c for c, s in zip(cliques, sums) if s >= best - E_TOL]
    violations = sorted(
        ((c, s) for c, s in zip(cliques, sums) if s > 1.0 + E_TOL),
        key=lambda cs: (-cs[1], cs[0]),
    )
    return AuditReport(
        s_l=math.fsum(model.london_probs.values()),
        s_p=math.fsum(model.paris_probs.values()),
        s_lp=s_lp(model),
        slp_pairwise_exclusive=pairwise,
        clique_count=len(cliques),
        max_clique_probability=best,
        max_clique_witness=maximizers[0] if maximizers else (),
        maximizer_count=len(maximizers),
        slp_clique_is_maximizer=slp_vertices() in maximizers,
        uniform_override=model.uniform_override,
        violations=tuple(violations),
    )
