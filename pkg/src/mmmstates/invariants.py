"""Local-unitary invariants of the constructed states.

Three multisets classify a state of the family up to local unitaries:

``kappa1``
    The ``d`` row weights ``sum_j |alpha[i,j]|^2`` -- equal to the nonzero
    spectrum of the state (the remaining ``d^2 - d`` eigenvalues vanish).
``kappa2``
    The ``d^2`` eigenvalues of the partial transpose, computed blockwise
    from the Fourier coefficients.
``kappa3``
    The ``d^2 - 1`` singular values of the correlation matrix of the state
    in a traceless clock-and-shift operator basis, again computed blockwise.

Every blockwise shortcut has a full-matrix oracle counterpart
(:func:`oracle_invariants`) that touches only the density matrix, so the two
routes can be cross-checked on every input.

Basis normalisation comes in two modes.  ``"hs-orthonormal"`` rescales the
clock elements by ``1/sqrt(d)`` so the basis is orthonormal under the
Hilbert-Schmidt inner product; only in this mode is ``kappa3`` a
local-unitary invariant.  ``"raw"`` keeps clock elements at norm
``sqrt(d)``, matching the normalisation in which the d=3 closed forms of
the ``qutrit`` module are stated; :func:`lu_probe` measures how far raw-mode
``kappa3`` drifts under local rotations instead of asserting invariance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .alphas import AlphaMatrix
from .linalg import (
    MULTISET_TOL,
    eig_hermitian,
    multiset_distance,
    partial_transpose,
    random_special_unitary,
    singular_values,
)
from .states import BipartiteState, build_state, fourier_coeffs

#: Largest tolerated imaginary part of a blockwise partial-transpose eigenvalue.
IMAG_TOL = 1e-9

MODE_RAW = "raw"
MODE_HS = "hs-orthonormal"
MODES = (MODE_RAW, MODE_HS)
_MODE_ALIASES = {"paper-raw": MODE_RAW}

VERDICT_INEQUIVALENT = "LU-inequivalent"
VERDICT_INDISTINGUISHABLE = "indistinguishable by these invariants"

__all__ = [
    "IMAG_TOL",
    "MODE_RAW",
    "MODE_HS",
    "MODES",
    "VERDICT_INEQUIVALENT",
    "VERDICT_INDISTINGUISHABLE",
    "canonical_mode",
    "traceless_basis",
    "state_spectrum",
    "pt_blocks",
    "pt_spectrum",
    "correlation_blocks",
    "correlation_singular_values",
    "purity",
    "negativity",
    "InvariantSet",
    "block_invariants",
    "correlation_matrix",
    "oracle_invariants",
    "invariant_deviations",
    "ProbeReport",
    "lu_probe",
    "Discrimination",
    "lu_discriminate",
]


def canonical_mode(mode: str) -> str:
    """Normalise a basis-mode name, accepting the legacy alias ``paper-raw``."""
    mode = _MODE_ALIASES.get(mode, mode)
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; choose from {MODES}")
    return mode


def traceless_basis(d: int, mode: str = MODE_HS) -> list[np.ndarray]:
    """The ``d^2 - 1`` traceless clock-and-shift basis elements, in block order.

    First the ``d - 1`` diagonal clock elements ``diag(w^{i m})_m`` for
    ``i = 1 .. d-1``, then for each shift ``k = 1 .. d-1`` the ``d`` matrix
    units ``|i+k><i|`` for ``i = 0 .. d-1``.  In ``"hs-orthonormal"`` mode
    the clock elements are divided by ``sqrt(d)``, which makes the whole
    list orthonormal under ``<x, y> = trace(x† y)``.
    """
    mode = canonical_mode(mode)
    if d < 2:
        raise ValueError("local dimension must be at least 2")
    omega = np.exp(2j * np.pi / d)
    scale = 1.0 / np.sqrt(d) if mode == MODE_HS else 1.0
    basis: list[np.ndarray] = []
    for i in range(1, d):
        basis.append(np.diag(omega ** (i * np.arange(d))) * scale)
    for k in range(1, d):
        for i in range(d):
            unit = np.zeros((d, d), dtype=complex)
            unit[(i + k) % d, i] = 1.0
            basis.append(unit)
    return basis


def state_spectrum(a: AlphaMatrix) -> np.ndarray:
    """``kappa1``: the ``d`` row weights of the parameter matrix, sorted ascending.

    These are exactly the nonzero eigenvalues of the built state (the state
    has rank at most ``d``), so the full-spectrum oracle is the ``d`` largest
    eigenvalues of the density matrix.
    """
    return np.sort(np.sum(np.abs(a.matrix) ** 2, axis=1))


def pt_blocks(a: AlphaMatrix) -> list[np.ndarray]:
    """The ``d`` blocks of the sheared partial transpose, from coefficients alone.

    Block ``m`` has entry ``(l, k)`` equal to ``c[m-l-k, k] * conj(c[m-l-k, l])``
    (first index mod d), which is what conjugating the partial transpose by
    the "plus" shear permutation leaves on the diagonal.  Block traces sum
    to one.
    """
    c = fourier_coeffs(a)
    d = a.d
    ll, kk = np.indices((d, d))
    blocks = []
    for m in range(d):
        idx = (m - ll - kk) % d
        blocks.append(c[idx, kk] * np.conj(c[idx, ll]))
    return blocks


def pt_spectrum(a: AlphaMatrix, imag_tol: float = IMAG_TOL) -> np.ndarray:
    """``kappa2``: eigenvalues of the partial transpose via its shear blocks.

    The blocks are diagonalised with a general (non-symmetric) eigensolver;
    their spectra must come out real because the blocks are similar to
    diagonal blocks of a Hermitian matrix.  An imaginary residue above
    ``imag_tol`` is a fault, not a value.
    """
    values = np.concatenate([np.linalg.eigvals(q) for q in pt_blocks(a)])
    worst = float(np.max(np.abs(values.imag)))
    if worst > imag_tol:
        raise ValueError(f"block eigenvalues have imaginary residue {worst:.3e} > {imag_tol:.1e}")
    return np.sort(values.real)


def correlation_blocks(a: AlphaMatrix, mode: str = MODE_HS) -> list[np.ndarray]:
    """Blocks of the correlation matrix, from coefficients alone.

    The correlation matrix pairs the state against ``x (x) y`` for basis
    elements ``x, y`` through ``r = trace(rho * (x (x) y)†)``.  For states of
    this family it is block diagonal over the basis sectors: one
    ``(d-1) x (d-1)`` clock-sector block followed by ``d-1`` shift-sector
    ``d x d`` blocks.  Entries reduce to quadratic expressions in the
    Fourier coefficients:

    * clock block: ``sum_{m,p} w^{-(m i + p j)} |c[m-p, p]|^2`` for
      ``i, j = 1 .. d-1`` (divided by ``d`` in ``"hs-orthonormal"`` mode),
    * shift block ``k``: ``c[i-j, j+k] * conj(c[i-j, j])``.
    """
    mode = canonical_mode(mode)
    c = fourier_coeffs(a)
    d = a.d
    omega = np.exp(2j * np.pi / d)
    mm, pp = np.indices((d, d))
    weights = np.abs(c[(mm - pp) % d, pp]) ** 2  # diagonal of rho at |m,p>
    phases = omega ** (-np.arange(1, d)[:, None] * np.arange(d)[None, :])
    clock = phases @ weights @ phases.T
    if mode == MODE_HS:
        clock = clock / d
    ii, jj = np.indices((d, d))
    rows = (ii - jj) % d
    blocks = [clock]
    for k in range(1, d):
        blocks.append(c[rows, (jj + k) % d] * np.conj(c[rows, jj]))
    return blocks


def correlation_singular_values(a: AlphaMatrix, mode: str = MODE_HS) -> np.ndarray:
    """``kappa3``: the ``d^2 - 1`` singular values of the correlation matrix."""
    return np.sort(np.concatenate([singular_values(b) for b in correlation_blocks(a, mode)]))


def purity(kappa1) -> float:
    """``trace(rho^2)`` from the nonzero spectrum: the sum of squared weights."""
    return float(np.sum(np.square(np.asarray(kappa1, dtype=float))))


def negativity(kappa2) -> float:
    """Entanglement negativity ``(sum_i |kappa2_i| - 1) / 2``.

    The subtraction happens once, outside the sum -- applying it per
    eigenvalue is a misreading that yields negative "negativities" (see the
    ``discrepancies`` module).  Roundoff can leave a PPT spectrum summing to
    a hair under one, so the result is clamped at zero.
    """
    values = np.asarray(kappa2, dtype=float)
    return max(0.0, float((np.sum(np.abs(values)) - 1.0) / 2.0))


@dataclass(frozen=True, eq=False)
class InvariantSet:
    """The three invariant multisets plus the two derived scalar measures."""

    kappa1: np.ndarray
    kappa2: np.ndarray
    kappa3: np.ndarray
    purity: float
    negativity: float
    mode: str

    def to_json_dict(self) -> dict:
        return {
            "kappa1": [float(x) for x in self.kappa1],
            "kappa2": [float(x) for x in self.kappa2],
            "kappa3": [float(x) for x in self.kappa3],
            "purity": self.purity,
            "negativity": self.negativity,
            "mode": self.mode,
        }


def block_invariants(a: AlphaMatrix, mode: str = MODE_HS) -> InvariantSet:
    """All invariants of a parameter matrix via the blockwise shortcuts."""
    mode = canonical_mode(mode)
    k1 = state_spectrum(a)
    k2 = pt_spectrum(a)
    return InvariantSet(
        kappa1=k1,
        kappa2=k2,
        kappa3=correlation_singular_values(a, mode),
        purity=purity(k1),
        negativity=negativity(k2),
        mode=mode,
    )


def correlation_matrix(rho: np.ndarray, d: int, mode: str = MODE_HS) -> np.ndarray:
    """Full ``(d^2-1) x (d^2-1)`` correlation matrix of an arbitrary state.

    Assembled entry by entry as ``trace(rho * (x (x) y)†)`` over the ordered
    basis of :func:`traceless_basis` -- no blockwise knowledge involved, so
    this is the oracle against which :func:`correlation_blocks` is checked.
    For states outside the family (or locally rotated ones) the matrix is
    generally not block diagonal; its singular values are still well defined.
    """
    basis = traceless_basis(d, mode)
    paired = np.stack([np.kron(x, y).conj().ravel() for x in basis for y in basis])
    values = paired @ np.asarray(rho, dtype=complex).ravel()
    n = len(basis)
    return values.reshape(n, n)


def oracle_invariants(state: BipartiteState, mode: str = MODE_HS) -> InvariantSet:
    """All invariants straight from the density matrix, no block shortcuts.

    ``kappa1`` is the ``d`` largest eigenvalues of the state, ``kappa2`` the
    full spectrum of the partial transpose, ``kappa3`` the singular values
    of the fully assembled correlation matrix, purity is ``trace(rho^2)``.
    """
    mode = canonical_mode(mode)
    d, rho = state.d, state.rho
    k2 = eig_hermitian(partial_transpose(rho, d))
    return InvariantSet(
        kappa1=eig_hermitian(rho)[-d:],
        kappa2=k2,
        kappa3=singular_values(correlation_matrix(rho, d, mode)),
        purity=float(np.trace(rho @ rho).real),
        negativity=negativity(k2),
        mode=mode,
    )


def invariant_deviations(x: InvariantSet, y: InvariantSet) -> dict[str, float]:
    """Per-invariant multiset distances between two invariant sets."""
    return {
        "kappa1": multiset_distance(x.kappa1, y.kappa1),
        "kappa2": multiset_distance(x.kappa2, y.kappa2),
        "kappa3": multiset_distance(x.kappa3, y.kappa3),
        "purity": abs(x.purity - y.purity),
        "negativity": abs(x.negativity - y.negativity),
    }


@dataclass(frozen=True)
class ProbeReport:
    """Worst-case invariant drift under random local rotations."""

    d: int
    trials: int
    seed: int
    tol: float
    deviations: dict
    within_tolerance: bool

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "trials": self.trials,
            "seed": self.seed,
            "tol": self.tol,
            "deviations": dict(self.deviations),
            "within_tolerance": self.within_tolerance,
        }


def lu_probe(a: AlphaMatrix, trials: int, seed: int, tol: float = MULTISET_TOL) -> ProbeReport:
    """Conjugate the state by random ``U (x) V`` and measure invariant drift.

    Each trial draws ``U, V`` from SU(d) with a per-trial generator seeded
    ``seed + trial`` (so any single trial can be reproduced in isolation) and
    recomputes all invariants of the rotated state through the full-matrix
    oracle.  ``kappa1``, ``kappa2`` and orthonormal-mode ``kappa3`` must sit
    still within ``tol``; the raw-mode ``kappa3`` drift is recorded under
    ``"kappa3_raw"`` but not judged, since nothing guarantees its invariance.
    With ``trials = 0`` the report is empty and trivially within tolerance.
    """
    if trials < 0:
        raise ValueError("trials must be non-negative")
    d = a.d
    state = build_state(a)
    base = oracle_invariants(state, MODE_HS)
    base_raw = singular_values(correlation_matrix(state.rho, d, MODE_RAW))
    deviations: dict[str, float] = {}
    if trials > 0:
        deviations = {"kappa1": 0.0, "kappa2": 0.0, "kappa3": 0.0, "kappa3_raw": 0.0}
    for trial in range(trials):
        rng = np.random.default_rng(seed + trial)
        u = random_special_unitary(d, rng)
        v = random_special_unitary(d, rng)
        w = np.kron(u, v)
        rotated = BipartiteState(d, w @ state.rho @ w.conj().T)
        probe = oracle_invariants(rotated, MODE_HS)
        drift = invariant_deviations(base, probe)
        for key in ("kappa1", "kappa2", "kappa3"):
            deviations[key] = max(deviations[key], drift[key])
        raw = singular_values(correlation_matrix(rotated.rho, d, MODE_RAW))
        deviations["kappa3_raw"] = max(deviations["kappa3_raw"], multiset_distance(base_raw, raw))
    within = all(deviations[k] <= tol for k in ("kappa1", "kappa2", "kappa3")) if trials else True
    return ProbeReport(d, trials, seed, tol, deviations, within)


@dataclass(frozen=True)
class Discrimination:
    """Outcome of comparing the invariant multisets of two parameter matrices."""

    verdict: str
    tol: float
    deviations: dict

    def to_json_dict(self) -> dict:
        return {"verdict": self.verdict, "tol": self.tol, "deviations": dict(self.deviations)}


def lu_discriminate(a: AlphaMatrix, b: AlphaMatrix, tol: float = MULTISET_TOL) -> Discrimination:
    """Compare two parameter matrices through their invariant multisets.

    If any of ``kappa1``, ``kappa2`` or orthonormal-mode ``kappa3`` differ
    beyond ``tol`` the states are certainly not related by local unitaries
    and the verdict is ``"LU-inequivalent"``.  Otherwise the verdict is
    ``"indistinguishable by these invariants"`` -- deliberately *not* a claim
    of equivalence, which these invariants alone cannot establish.
    """
    if a.d != b.d:
        raise ValueError(f"dimension mismatch: {a.d} vs {b.d}")
    deviations = invariant_deviations(block_invariants(a, MODE_HS), block_invariants(b, MODE_HS))
    distinct = any(deviations[k] > tol for k in ("kappa1", "kappa2", "kappa3"))
    verdict = VERDICT_INEQUIVALENT if distinct else VERDICT_INDISTINGUISHABLE
    return Discrimination(verdict, tol, deviations)
