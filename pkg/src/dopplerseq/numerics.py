"""Dense numerical kernels shared by the optimizers.

Everything here operates on plain numpy arrays, is deterministic, and is
safe to call concurrently (no shared mutable state).
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .errors import BracketError, InvalidInputError

HERMITIAN_ATOL = 1e-12


def require_hermitian(H: np.ndarray, atol: float = HERMITIAN_ATOL) -> np.ndarray:
    """Validate that ``H`` is a square Hermitian matrix.

    Returns the array as complex128. Raises :class:`InvalidInputError` if the
    matrix is not square, contains non-finite entries, or deviates from
    ``H == H.conj().T`` by more than ``atol`` in absolute value.
    """
    H = np.asarray(H, dtype=np.complex128)
    if H.ndim != 2 or H.shape[0] != H.shape[1] or H.shape[0] < 1:
        raise InvalidInputError(f"expected a square matrix, got shape {H.shape}")
    if not np.all(np.isfinite(H)):
        raise InvalidInputError("matrix contains non-finite entries")
    dev = np.max(np.abs(H - H.conj().T))
    if dev > atol:
        raise InvalidInputError(
            f"matrix is not Hermitian: max |H - H^dag| = {dev:.3e} exceeds {atol:.1e}"
        )
    return H


def eig_hermitian(H: np.ndarray, atol: float = HERMITIAN_ATOL):
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending.

    Returns ``(eigenvalues, eigenvectors)`` with real eigenvalues sorted in
    descending order and ``eigenvectors[:, i]`` the unit eigenvector paired
    with ``eigenvalues[i]``.
    """
    H = require_hermitian(H, atol)
    vals, vecs = np.linalg.eigh(H)
    order = np.arange(vals.size - 1, -1, -1)  # eigh returns ascending
    return vals[order], vecs[:, order]


def svd(M: np.ndarray):
    """Full SVD ``M = U @ diag(s) @ Vh`` with singular values descending.

    Returns ``(s, U, Vh)``.
    """
    M = np.asarray(M, dtype=np.complex128)
    if not np.all(np.isfinite(M)):
        raise InvalidInputError("matrix contains non-finite entries")
    U, s, Vh = np.linalg.svd(M, full_matrices=True)
    return s, U, Vh


def bisect_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float,
    max_iter: int = 200,
) -> float:
    """Find a root of ``f`` on ``[lo, hi]`` by bisection.

    Requires ``f(lo)`` and ``f(hi)`` to have opposite signs (or one of them
    to be zero). Stops when ``|f(mid)| <= tol`` or the bracket width falls
    below ``tol``.
    """
    if not (np.isfinite(lo) and np.isfinite(hi)) or hi < lo:
        raise InvalidInputError(f"invalid bracket [{lo}, {hi}]")
    flo = f(lo)
    fhi = f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if np.sign(flo) == np.sign(fhi):
        raise BracketError(
            f"no sign change on [{lo}, {hi}]: f(lo)={flo:.3e}, f(hi)={fhi:.3e}"
        )
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        if abs(fmid) <= tol or (hi - lo) <= tol:
            return mid
        if np.sign(fmid) == np.sign(flo):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)
