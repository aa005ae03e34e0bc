"""Building bipartite density matrices from parameter matrices.

Each accepted ``d x d`` parameter matrix yields a ``d^2 x d^2`` density
matrix with both reduced states maximally mixed.  The construction runs
through the row-wise Fourier coefficients

    c[i, k] = (1/sqrt(d)) * sum_j alpha[i, j] * w^{j k},    w = exp(2*pi*1j/d)

and assembles ``rho = sum_i |p_i><p_i|`` from the mutually orthogonal
vectors ``|p_i> = sum_k c[i, k] |k+i, k>`` (first-register index ``k+i`` is
taken mod d).  The composite row index is ``a*d + b`` with ``a`` the first
register.  The ``1/sqrt(d)`` scaling is what makes ``trace(rho) = 1``; see
the ``discrepancies`` module for the numerical case against the ``1/d``
variant that sometimes appears in this context.

Conjugating by the "minus" shear permutation ``|a,b> -> |a-b, b>`` brings
``rho`` to block-diagonal form with ``d`` rank-one ``d x d`` blocks; the
"plus" shear does the same for the partial transpose of ``rho``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .alphas import AlphaMatrix
from .linalg import eig_hermitian, hermiticity_defect, partial_trace

#: Eigenvalues above this threshold count towards the numerical rank.
RANK_TOL = 1e-9

#: Certification floor for the smallest eigenvalue of a built state.
PSD_FLOOR = -1e-10

__all__ = [
    "RANK_TOL",
    "PSD_FLOOR",
    "BipartiteState",
    "StateReport",
    "fourier_coeffs",
    "build_state",
    "shear_unitary",
    "certify",
    "state_to_json_dict",
]


@dataclass(frozen=True, eq=False)
class BipartiteState:
    """A density matrix on two ``d``-dimensional registers."""

    d: int
    rho: np.ndarray

    def __post_init__(self):
        rho = np.asarray(self.rho, dtype=complex)
        n = self.d * self.d
        if rho.shape != (n, n):
            raise ValueError(f"state for d={self.d} must be {n}x{n}, got {rho.shape}")
        object.__setattr__(self, "rho", rho)


def fourier_coeffs(a) -> np.ndarray:
    """Row-wise Fourier coefficients ``c[i, k]`` of a parameter matrix.

    Accepts an :class:`AlphaMatrix` or a plain square array.  Rows of the
    result carry the same total weight as rows of the input (Parseval), so
    ``sum |c|^2 = sum |alpha|^2``.
    """
    matrix = a.matrix if isinstance(a, AlphaMatrix) else np.asarray(a, dtype=complex)
    d = matrix.shape[0]
    omega = np.exp(2j * np.pi / d)
    transform = omega ** np.outer(np.arange(d), np.arange(d)) / np.sqrt(d)
    return matrix @ transform


def build_state(a: AlphaMatrix) -> BipartiteState:
    """Assemble the density matrix of a validated parameter matrix.

    Only :class:`AlphaMatrix` input is accepted: raw arrays have not been
    through validation and would silently produce states with the wrong
    marginals.  (Use ``AlphaMatrix(arr, check=False)`` to bypass validation
    deliberately.)
    """
    if not isinstance(a, AlphaMatrix):
        raise TypeError("build_state requires a validated AlphaMatrix")
    d = a.d
    c = fourier_coeffs(a)
    ks = np.arange(d)
    rho = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        vec = np.zeros(d * d, dtype=complex)
        vec[((ks + i) % d) * d + ks] = c[i]
        rho += np.outer(vec, vec.conj())
    return BipartiteState(d, rho)


def shear_unitary(d: int, sign: str) -> np.ndarray:
    """Permutation matrix ``|a, b> -> |a -+ b mod d, b>``.

    ``sign="minus"`` block-diagonalises states built by :func:`build_state`;
    ``sign="plus"`` block-diagonalises their partial transposes.  For
    ``d = 2`` the two coincide and equal the controlled-NOT permutation
    (control on the second register).
    """
    if sign == "minus":
        step = -1
    elif sign == "plus":
        step = +1
    else:
        raise ValueError(f"sign must be 'plus' or 'minus', got {sign!r}")
    if d < 2:
        raise ValueError("local dimension must be at least 2")
    a, b = np.divmod(np.arange(d * d), d)
    u = np.zeros((d * d, d * d))
    u[((a + step * b) % d) * d + b, np.arange(d * d)] = 1.0
    return u


@dataclass(frozen=True)
class StateReport:
    """Numerical certificate of a built state."""

    hermiticity_defect: float
    trace_defect: float
    min_eigenvalue: float
    marginal_defect_a: float
    marginal_defect_b: float
    rank: int

    def to_dict(self) -> dict:
        return {
            "hermiticity_defect": self.hermiticity_defect,
            "trace_defect": self.trace_defect,
            "min_eigenvalue": self.min_eigenvalue,
            "marginal_defect_a": self.marginal_defect_a,
            "marginal_defect_b": self.marginal_defect_b,
            "rank": self.rank,
        }


def certify(state: BipartiteState) -> StateReport:
    """Measure the defining properties of a state.

    Reports the Hermiticity defect, ``|trace - 1|``, the smallest eigenvalue,
    the largest deviation of each marginal from ``I/d`` and the numerical
    rank at threshold :data:`RANK_TOL`.  A state built from an accepted
    parameter matrix shows defects at roundoff level, a minimum eigenvalue
    above :data:`PSD_FLOOR` and rank at most ``d``.
    """
    d, rho = state.d, state.rho
    eye = np.eye(d) / d
    spectrum = eig_hermitian(rho)
    return StateReport(
        hermiticity_defect=hermiticity_defect(rho),
        trace_defect=float(abs(np.trace(rho) - 1.0)),
        min_eigenvalue=float(spectrum[0]),
        marginal_defect_a=float(np.max(np.abs(partial_trace(rho, d, "B") - eye))),
        marginal_defect_b=float(np.max(np.abs(partial_trace(rho, d, "A") - eye))),
        rank=int(np.sum(spectrum > RANK_TOL)),
    )


def state_to_json_dict(state: BipartiteState) -> dict:
    """JSON form: ``{"d": d, "rho": [[[re, im], ...], ...]}``."""
    rho = [[[float(z.real), float(z.imag)] for z in row] for row in state.rho]
    return {"d": state.d, "rho": rho}
