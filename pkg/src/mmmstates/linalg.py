"""Dense linear-algebra helpers shared by the state builder and the invariant engines.

Everything operates on plain ``numpy`` arrays.  Eigen-, singular-value and QR
decompositions delegate to LAPACK through ``numpy.linalg``; this module adds
the shape/Hermiticity policing, the bipartite reshuffles and the
sorted-multiset conventions the rest of the package relies on.

Spectra and singular values are always returned sorted ascending, so that two
results can be compared as multisets by elementwise subtraction.
"""

from __future__ import annotations

import numpy as np

#: Largest tolerated deviation from Hermiticity before ``eig_hermitian`` refuses.
HERMITICITY_TOL = 1e-10

#: Default tolerance for declaring two real multisets equal.
MULTISET_TOL = 1e-8

__all__ = [
    "HERMITICITY_TOL",
    "MULTISET_TOL",
    "hermiticity_defect",
    "eig_hermitian",
    "singular_values",
    "partial_trace",
    "partial_transpose",
    "random_special_unitary",
    "multiset_distance",
    "multisets_close",
]


def _square(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def _bipartite(rho, d: int) -> np.ndarray:
    rho = _square(rho)
    if d < 2:
        raise ValueError("local dimension must be at least 2")
    if rho.shape[0] != d * d:
        raise ValueError(f"expected a {d * d}x{d * d} matrix for local dimension {d}, got {rho.shape}")
    return rho


def hermiticity_defect(m) -> float:
    """Largest absolute entry of ``m - m†``."""
    m = _square(m)
    return float(np.max(np.abs(m - m.conj().T)))


def eig_hermitian(m, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, sorted ascending.

    The input is symmetrised to ``(m + m†)/2`` before the solve, but only
    if its Hermiticity defect is at most ``tol``; a larger defect means the
    caller handed over the wrong matrix and raises ``ValueError``.
    """
    m = _square(m)
    defect = float(np.max(np.abs(m - m.conj().T)))
    if defect > tol:
        raise ValueError(f"matrix is not Hermitian (defect {defect:.3e} > {tol:.1e})")
    return np.linalg.eigvalsh((m + m.conj().T) / 2.0)


def singular_values(m) -> np.ndarray:
    """Singular values of an arbitrary (possibly rectangular) matrix, sorted ascending."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim {m.ndim}")
    return np.sort(np.linalg.svd(m, compute_uv=False))


def partial_trace(rho, d: int, subsystem: str) -> np.ndarray:
    """Trace out one register of a bipartite ``d*d x d*d`` matrix.

    Parameters
    ----------
    rho : array_like
        Operator on the composite space, row index ``a*d + b`` with ``a`` the
        first register and ``b`` the second.
    d : int
        Local dimension of both registers.
    subsystem : str
        Which register to trace *out*: ``"A"`` (first) or ``"B"`` (second).

    Returns
    -------
    numpy.ndarray
        The ``d x d`` reduced operator on the remaining register.
    """
    rho = _bipartite(rho, d)
    r = rho.reshape(d, d, d, d)
    if subsystem == "A":
        return np.einsum("abae->be", r)
    if subsystem == "B":
        return np.einsum("abcb->ac", r)
    raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")


def partial_transpose(rho, d: int) -> np.ndarray:
    """Transpose the second register of a bipartite ``d*d x d*d`` matrix.

    Applying the map twice returns the input.  The spectrum of the result is
    basis-independent and equals the spectrum obtained by transposing the
    first register instead.
    """
    rho = _bipartite(rho, d)
    return rho.reshape(d, d, d, d).transpose(0, 3, 2, 1).reshape(d * d, d * d)


def random_special_unitary(d: int, seed) -> np.ndarray:
    """Draw a Haar-distributed element of SU(d), deterministically from ``seed``.

    A complex Ginibre matrix is orthonormalised by QR; rescaling the columns by
    the phases of the R diagonal makes the distribution Haar on U(d), and a
    global phase fixes the determinant to one.  ``seed`` may be an integer or
    a ``numpy.random.Generator``.
    """
    if d < 1:
        raise ValueError("dimension must be positive")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(g)
    q = q * (np.diag(r) / np.abs(np.diag(r)))
    det = np.linalg.det(q)
    return q * np.exp(-1j * np.angle(det) / d)


def multiset_distance(a, b) -> float:
    """Largest elementwise gap between two real multisets after sorting.

    Raises ``ValueError`` when the multisets have different cardinality;
    comparing spectra of different-sized problems is always a caller bug.
    """
    a = np.sort(np.asarray(a, dtype=float).ravel())
    b = np.sort(np.asarray(b, dtype=float).ravel())
    if a.shape != b.shape:
        raise ValueError(f"multiset size mismatch: {a.size} vs {b.size}")
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b)))


def multisets_close(a, b, tol: float = MULTISET_TOL) -> bool:
    """True when two real multisets agree elementwise within ``tol`` after sorting."""
    return multiset_distance(a, b) <= tol
