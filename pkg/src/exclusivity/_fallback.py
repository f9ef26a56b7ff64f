"""Pure-Python implementations of the hot kernels.

Bitsets are Python ints (bit ``i`` set means vertex ``i`` is present).  Every
function here has a twin with the same signature in the compiled ``_kernels``
extension; ``_backend`` picks one at import time.
"""
import math

import numpy as np


def jacobi_eigh(a, rel_tol=1e-12, max_sweeps=100):
    """Cyclic Jacobi eigendecomposition of a real symmetric matrix.

    Returns ``(w, v, sweeps, off)`` with unsorted eigenvalues ``w``, the
    eigenvector columns ``v``, the number of sweeps performed and the final
    off-diagonal Frobenius mass.  ``sweeps == -1`` signals that ``max_sweeps``
    was exhausted.
    """
    a = np.array(a, dtype=np.float64, copy=True)
    n = a.shape[0]
    v = np.eye(n)
    scale = math.sqrt(float(np.sum(a * a)))
    target = rel_tol * scale

    offdiag = ~np.eye(n, dtype=bool)
    for sweep in range(max_sweeps + 1):
        off = math.sqrt(float(np.sum(a[offdiag] ** 2)))
        if off <= target:
            return np.diag(a).copy(), v, sweep, off
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                ap = a[:, p].copy()
                aq = a[:, q]
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap = a[p, :].copy()
                aq = a[q, :]
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    return np.diag(a).copy(), v, -1, off


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def max_cliques(adj):
    """All maximal cliques as bitmasks (Bron-Kerbosch, Tomita pivoting)."""
    adj = [int(x) for x in adj]
    n = len(adj)
    out = []

    def expand(r, p, x):
        if not p and not x:
            out.append(r)
            return
        # pivot maximizing |P & N(u)| over u in P | X
        best = -1
        pivot_nbrs = 0
        for u in _bits(p | x):
            c = (p & adj[u]).bit_count()
            if c > best:
                best = c
                pivot_nbrs = adj[u]
        for v in _bits(p & ~pivot_nbrs):
            bit = 1 << v
            expand(r | bit, p & adj[v], x & adj[v])
            p &= ~bit
            x |= bit

    if n:
        expand(0, (1 << n) - 1, 0)
    return out


def maximum_clique(adj):
    """Bitmask of one maximum clique (branch and bound, greedy-colouring bound).

    Among maximum cliques the one found first in the search order is returned,
    which is deterministic for a given adjacency.
    """
    adj = [int(x) for x in adj]
    n = len(adj)
    if n == 0:
        return 0
    best = [0, 0]  # size, mask

    def colour_order(p):
        # greedy sequential colouring; returns vertices with their colour bound
        order = []
        colour = 0
        uncoloured = p
        while uncoloured:
            colour += 1
            avail = uncoloured
            while avail:
                low = avail & -avail
                v = low.bit_length() - 1
                avail &= ~low & ~adj[v]
                uncoloured &= ~low
                order.append((v, colour))
        return order

    def search(r, size, p):
        order = colour_order(p)
        for v, bound in reversed(order):
            if size + bound <= best[0]:
                return
            bit = 1 << v
            newp = p & adj[v]
            if newp:
                search(r | bit, size + 1, newp)
            elif size + 1 > best[0]:
                best[0] = size + 1
                best[1] = r | bit
            p &= ~bit

    search(0, 0, (1 << n) - 1)
    return best[1]
