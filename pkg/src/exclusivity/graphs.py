"""Exclusivity graphs and exact combinatorics on them.

Graphs are immutable, with adjacency stored as one integer bitset per vertex.
Clique and independence searches run on the ``_backend`` kernels and are
exact up to ``MAX_EXACT_VERTICES``.
"""
import json

import numpy as np

from . import _backend
from .errors import InputError
from .events import exclusive

FORMAT_VERSION = 1
MAX_EXACT_VERTICES = 64
MAX_AUTOMORPHISM_VERTICES = 10


class ExclusivityGraph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``labels`` (optional) are distinct vertex names, usually event strings.
    ``circulant`` records the offset set when the graph was generated as a
    circulant, which certifies vertex-transitivity without a search.
    """

    __slots__ = ("n", "adj", "labels", "circulant")

    def __init__(self, n, adj, labels=None, circulant=None):
        if n < 1:
            raise InputError("a graph needs at least one vertex")
        adj = tuple(int(a) for a in adj)
        if len(adj) != n:
            raise InputError(f"expected {n} adjacency rows, got {len(adj)}")
        full = (1 << n) - 1
        for v, a in enumerate(adj):
            if a & ~full:
                raise InputError(f"vertex {v} has neighbours out of range")
            if a >> v & 1:
                raise InputError(f"self-loop at vertex {v}")
            for u in _bits(a):
                if not adj[u] >> v & 1:
                    raise InputError(f"adjacency not symmetric at ({v}, {u})")
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != n or len(set(labels)) != n:
                raise InputError("labels must cover every vertex and be distinct")
        self.n = n
        self.adj = adj
        self.labels = labels
        self.circulant = None if circulant is None else tuple(sorted(circulant))

    @classmethod
    def from_edges(cls, n, edges, labels=None, circulant=None):
        adj = [0] * n
        for i, j in edges:
            if not (0 <= i < n and 0 <= j < n) or i == j:
                raise InputError(f"bad edge ({i}, {j}) for n={n}")
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return cls(n, adj, labels, circulant)

    def has_edge(self, i, j):
        return bool(self.adj[i] >> j & 1)

    def neighbours(self, v):
        return list(_bits(self.adj[v]))

    def degree(self, v):
        return self.adj[v].bit_count()

    def degrees(self):
        return [a.bit_count() for a in self.adj]

    def edges(self):
        """Edges as ``(i, j)`` with ``i < j``, lexicographically sorted."""
        return [(i, j) for i in range(self.n) for j in _bits(self.adj[i]) if j > i]

    @property
    def edge_count(self):
        return sum(self.degrees()) // 2

    def adjacency_matrix(self):
        m = np.zeros((self.n, self.n), dtype=bool)
        for i, j in self.edges():
            m[i, j] = m[j, i] = True
        return m

    def relabel(self, labels):
        return ExclusivityGraph(self.n, self.adj, labels, self.circulant)

    def __eq__(self, other):
        if not isinstance(other, ExclusivityGraph):
            return NotImplemented
        return (self.n, self.adj, self.labels) == (other.n, other.adj, other.labels)

    def __hash__(self):
        return hash((self.n, self.adj, self.labels))

    def __repr__(self):
        return f"ExclusivityGraph(n={self.n}, edges={self.edge_count})"

    # serialization

    def to_dict(self):
        doc = {
            "version": FORMAT_VERSION,
            "n": self.n,
            "edges": [list(e) for e in self.edges()],
            "labels": None if self.labels is None else list(self.labels),
        }
        if self.circulant is not None:
            doc["circulant"] = list(self.circulant)
        return doc

    @classmethod
    def from_dict(cls, doc):
        if not isinstance(doc, dict) or doc.get("version") != FORMAT_VERSION:
            raise InputError(f"unsupported graph document (need version {FORMAT_VERSION})")
        try:
            n = int(doc["n"])
            edges = [tuple(int(x) for x in e) for e in doc["edges"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed graph document: {exc}") from None
        if any(len(e) != 2 for e in edges):
            raise InputError("edges must be pairs")
        if len(set(tuple(sorted(e)) for e in edges)) != len(edges):
            raise InputError("duplicate edges")
        g = cls.from_edges(n, edges, doc.get("labels"))
        offsets = doc.get("circulant")
        if offsets is not None:
            ref = circulant(n, offsets)
            if ref.adj != g.adj:
                raise InputError("circulant tag does not match the edge set")
            g = cls(n, g.adj, g.labels, ref.circulant)
        return g

    def dumps(self):
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def loads(cls, text):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"graph file is not valid JSON: {exc}") from None
        return cls.from_dict(doc)


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _mask_to_tuple(mask):
    return tuple(_bits(mask))


# constructors

def from_events(family):
    events = list(family)
    if not events:
        raise InputError("empty event family")
    n = len(events)
    adj = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if exclusive(events[i], events[j]):
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return ExclusivityGraph(n, adj, [str(e) for e in events])


def circulant(n, offsets):
    """Vertex ``i`` adjacent to ``i +- d mod n`` for every offset ``d``."""
    offsets = sorted(set(int(d) for d in offsets))
    if n < 1 or not offsets:
        raise InputError("circulant needs n >= 1 and at least one offset")
    for d in offsets:
        if not 1 <= d <= n // 2:
            raise InputError(f"offset {d} outside 1..{n // 2}")
    adj = [0] * n
    for i in range(n):
        for d in offsets:
            adj[i] |= 1 << ((i + d) % n) | 1 << ((i - d) % n)
    return ExclusivityGraph(n, adj, circulant=offsets)


def cycle(n):
    return circulant(n, [1])


def complete(n):
    full = (1 << n) - 1
    return ExclusivityGraph(n, [full & ~(1 << v) for v in range(n)])


def empty(n):
    return ExclusivityGraph(n, [0] * n)


def path(n):
    return ExclusivityGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complement(g):
    full = (1 << g.n) - 1
    adj = [full & ~a & ~(1 << v) for v, a in enumerate(g.adj)]
    tag = None
    if g.circulant is not None:
        tag = [d for d in range(1, g.n // 2 + 1) if d not in g.circulant] or None
    return ExclusivityGraph(g.n, adj, g.labels, tag)


# isomorphism

def _extend(g, h, prefix=()):
    """First vertex map extending ``prefix`` under lowest-index-first backtracking."""
    n = g.n
    gdeg, hdeg = g.degrees(), h.degrees()
    perm = list(prefix) + [-1] * (n - len(prefix))
    used = 0
    for v, w in enumerate(prefix):
        if gdeg[v] != hdeg[w] or used >> w & 1:
            return None
        used |= 1 << w
    for v in range(len(prefix)):
        for u in range(v):
            if g.has_edge(v, u) != h.has_edge(perm[v], perm[u]):
                return None

    def assign(v, used):
        if v == n:
            return True
        gv = g.adj[v]
        for w in range(n):
            if used >> w & 1 or hdeg[w] != gdeg[v]:
                continue
            hw = h.adj[w]
            if all((gv >> u & 1) == (hw >> perm[u] & 1) for u in range(v)):
                perm[v] = w
                if assign(v + 1, used | 1 << w):
                    return True
        perm[v] = -1
        return False

    return tuple(perm) if assign(len(prefix), used) else None


def is_isomorphic(g, h):
    """Permutation ``pi`` with ``h.adj[pi(i)][pi(j)] == g.adj[i][j]``, or None.

    The lexicographically smallest such ``pi`` is returned.
    """
    if g.n != h.n or g.edge_count != h.edge_count:
        return None
    if sorted(g.degrees()) != sorted(h.degrees()):
        return None
    return _extend(g, h)


def apply_permutation(g, perm):
    """The graph whose vertex ``perm[i]`` plays the role of ``g``'s vertex ``i``."""
    return ExclusivityGraph.from_edges(g.n, [(perm[i], perm[j]) for i, j in g.edges()])


def is_vertex_transitive(g):
    if g.circulant is not None:
        return True
    if g.n > MAX_AUTOMORPHISM_VERTICES:
        raise InputError(
            f"automorphism search limited to {MAX_AUTOMORPHISM_VERTICES} vertices "
            f"for untagged graphs (got {g.n})"
        )
    # transitive iff vertex 0 can be sent everywhere
    return all(_extend(g, g, (t,)) is not None for t in range(1, g.n))


def is_self_complementary(g):
    return is_isomorphic(g, complement(g)) is not None


# cliques and independent sets

def _check_size(g):
    if g.n > MAX_EXACT_VERTICES:
        raise InputError(f"exact search limited to {MAX_EXACT_VERTICES} vertices (got {g.n})")


def _is_clique(adj, mask):
    return all((mask & ~(1 << v)) & ~adj[v] == 0 for v in _bits(mask))


def _unpack(masks, n):
    """Bitmasks -> boolean membership matrix of shape (len(masks), n)."""
    arr = np.array([int(m) for m in masks], dtype="<u8")
    bits = np.unpackbits(arr.view(np.uint8).reshape(-1, 8), axis=1, bitorder="little")
    return bits[:, :n].astype(bool)


def max_cliques(g):
    """Every maximal clique, each sorted, in lexicographic order."""
    _check_size(g)
    masks = _backend.kernels.max_cliques(list(g.adj))
    if not masks:
        return []
    member = _unpack(masks, g.n)
    # each member must be adjacent to every other member
    non_nbr = (~(g.adjacency_matrix() | np.eye(g.n, dtype=bool))).astype(np.float32)
    conflicts = (member.astype(np.float32) @ non_nbr) * member
    if conflicts.any():
        bad = int(np.flatnonzero(conflicts.any(axis=1))[0])
        raise AssertionError(f"kernel returned a non-clique {tuple(np.flatnonzero(member[bad]))}")
    flat = np.nonzero(member)[1].tolist()
    cliques, start = [], 0
    for size in member.sum(axis=1).tolist():
        cliques.append(tuple(flat[start:start + size]))
        start += size
    cliques.sort()
    return cliques


def clique_number(g):
    _check_size(g)
    mask = int(_backend.kernels.maximum_clique(list(g.adj)))
    if not _is_clique(g.adj, mask):
        raise AssertionError("kernel returned a non-clique")
    return mask.bit_count(), _mask_to_tuple(mask)


def independence_number(g):
    """Exact independence number and one maximum independent set."""
    _check_size(g)
    comp = complement(g)
    mask = int(_backend.kernels.maximum_clique(list(comp.adj)))
    if not _is_clique(comp.adj, mask):
        raise AssertionError("kernel returned a dependent set")
    return mask.bit_count(), _mask_to_tuple(mask)
