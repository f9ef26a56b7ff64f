"""Lovász number by ADMM on the unit-trace formulation.

    maximize   sum(B)
    subject to B PSD, trace(B) == 1, B[i, j] == 0 for every edge (i, j)

Iteration (scaled ADMM, penalty ``rho``)::

    X = affine_projection(Z - U + J / rho)
    Z = psd_project(X + U)
    U = U + X - Z

The affine projection is exact and cheap: edge entries are zeroed and the
diagonal is shifted uniformly to restore unit trace.
"""
from dataclasses import dataclass
import math

import numpy as np

from .errors import ConvergenceError, InputError
from .graphs import MAX_EXACT_VERTICES
from .numerics import eig_sym, psd_project


@dataclass(frozen=True)
class SdpSettings:
    tolerance: float = 1e-8
    max_iterations: int = 200_000
    step_parameter: float = 1.0

    def __post_init__(self):
        if not self.tolerance > 0:
            raise InputError("tolerance must be positive")
        if self.max_iterations < 1:
            raise InputError("max_iterations must be at least 1")
        if not self.step_parameter > 0:
            raise InputError("step_parameter must be positive")


@dataclass(frozen=True)
class ThetaResult:
    value: float
    witness: np.ndarray
    primal_residual: float
    dual_residual: float
    iterations: int


@dataclass(frozen=True)
class WitnessReport:
    psd_violation: float
    trace_violation: float
    edge_violation: float
    value_mismatch: float
    psd_tol: float = 1e-7
    trace_tol: float = 1e-8
    edge_tol: float = 1e-7
    value_tol: float = 1e-7

    @property
    def passed(self):
        return (
            self.psd_violation <= self.psd_tol
            and self.trace_violation <= self.trace_tol
            and self.edge_violation <= self.edge_tol
            and self.value_mismatch <= self.value_tol
        )


def _affine_project(x, edge_mask):
    n = x.shape[0]
    x = x.copy()
    x[edge_mask] = 0.0
    x[np.diag_indices(n)] += (1.0 - np.trace(x)) / n
    return x


def lovasz_theta(g, settings=None):
    settings = settings or SdpSettings()
    if g.n > MAX_EXACT_VERTICES:
        raise InputError(f"theta solver limited to {MAX_EXACT_VERTICES} vertices (got {g.n})")
    n = g.n
    rho = settings.step_parameter
    edge_mask = g.adjacency_matrix()
    ones_over_rho = np.full((n, n), 1.0 / rho)

    z = np.eye(n) / n
    u = np.zeros((n, n))
    primal = dual = math.inf
    for it in range(1, settings.max_iterations + 1):
        x = _affine_project(z - u + ones_over_rho, edge_mask)
        z_prev = z
        z = np.array(psd_project(x + u))
        u += x - z
        primal = float(np.max(np.abs(x - z)))
        dual = rho * float(np.max(np.abs(z - z_prev)))
        if max(primal, dual) < settings.tolerance:
            break
    else:
        raise ConvergenceError(
            f"theta ADMM did not converge in {settings.max_iterations} iterations",
            primal_residual=primal,
            dual_residual=dual,
        )

    # z is PSD by construction; rescaling restores the trace exactly
    witness = z / np.trace(z)
    witness.setflags(write=False)
    return ThetaResult(float(witness.sum()), witness, primal, dual, it)


def theta_cycle_closed_form(n, complement=False):
    """``theta(C_n) = n cos(pi/n) / (1 + cos(pi/n))`` for odd ``n >= 5``.

    With ``complement=True`` returns ``n / theta(C_n)``, the value for the
    complement (the product rule holds since cycles are vertex-transitive).
    """
    if n < 5 or n % 2 == 0:
        raise InputError(f"closed form needs odd n >= 5 (got {n})")
    c = math.cos(math.pi / n)
    value = n * c / (1.0 + c)
    return n / value if complement else value


def verify_witness(g, result, **tolerances):
    b = np.asarray(result.witness, dtype=np.float64)
    if b.shape != (g.n, g.n):
        raise InputError(f"witness shape {b.shape} does not match n={g.n}")
    sym = (b + b.T) / 2.0
    lam_min = float(eig_sym(sym)[0][0])
    edge_mask = g.adjacency_matrix()
    return WitnessReport(
        psd_violation=max(0.0, -lam_min) + float(np.max(np.abs(b - b.T))),
        trace_violation=abs(float(np.trace(b)) - 1.0),
        edge_violation=float(np.max(np.abs(b[edge_mask]))) if edge_mask.any() else 0.0,
        value_mismatch=abs(float(b.sum()) - result.value),
        **tolerances,
    )
