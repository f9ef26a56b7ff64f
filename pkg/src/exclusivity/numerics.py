"""Dense symmetric and complex linear algebra used by the SDP and the simulator.

Matrices and vectors are numpy arrays validated at the boundary and marked
read-only.  Eigendecomposition goes through the cyclic Jacobi kernel in
``_backend`` (compiled when available).
"""
import numpy as np

from . import _backend
from .errors import ConvergenceError, InputError

SYMMETRY_TOL = 1e-12
JACOBI_REL_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


def _frozen(a):
    a.setflags(write=False)
    return a


def sym_matrix(entries):
    """Validate ``entries`` as a finite real symmetric matrix.

    Asymmetry above ``SYMMETRY_TOL`` is rejected; smaller asymmetry is
    averaged away so downstream kernels see an exactly symmetric array.
    """
    m = np.array(entries, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise InputError(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InputError("matrix has non-finite entries")
    asym = float(np.max(np.abs(m - m.T)))
    if asym > SYMMETRY_TOL:
        raise InputError(f"matrix is not symmetric (max asymmetry {asym:.3g})")
    return _frozen((m + m.T) / 2.0)


def complex_vector(components):
    v = np.array(components, dtype=np.complex128)
    if v.ndim != 1 or v.size < 1:
        raise InputError(f"expected a non-empty 1-d vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise InputError("vector has non-finite components")
    return _frozen(v)


def eig_sym(m):
    """Eigendecomposition of a real symmetric matrix.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvalues ascending and
    the matching orthonormal eigenvectors as columns.
    """
    m = sym_matrix(m)
    w, v, sweeps, off = _backend.kernels.jacobi_eigh(m, JACOBI_REL_TOL, JACOBI_MAX_SWEEPS)
    if sweeps < 0:
        raise ConvergenceError(
            f"Jacobi iteration did not converge in {JACOBI_MAX_SWEEPS} sweeps",
            off_diagonal=off,
        )
    order = np.argsort(w, kind="stable")
    return _frozen(np.asarray(w)[order]), _frozen(np.asarray(v)[:, order])


def psd_project(m):
    """Frobenius-nearest positive semidefinite matrix (negative eigenvalues clipped)."""
    w, v = eig_sym(m)
    out = (v * np.maximum(w, 0.0)) @ v.T
    return _frozen((out + out.T) / 2.0)


def inner(u, v):
    """``<u|v>``, conjugate-linear in ``u``."""
    u = complex_vector(u)
    v = complex_vector(v)
    if u.shape != v.shape:
        raise InputError(f"dimension mismatch: {u.size} vs {v.size}")
    return complex(np.vdot(u, v))
