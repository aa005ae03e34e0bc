"""Closed forms and explicit objects for the two-parameter qutrit family.

For ``qutrit_family(theta, phi)`` the invariants admit closed forms in the
angles.  The partial-transpose spectrum is three cosine triples::

    (4 + 2 cos(phi       + 2 pi i / 3)) / 18
    (1 + 4 cos(theta     + 2 pi i / 3)) / 18      i = 0, 1, 2
    (1 + 4 cos(theta+phi + 4 pi i / 3)) / 18

which the generic block engine reproduces to machine precision, so the
negativity of the whole family can be scanned without ever assembling a
9x9 matrix.

The raw-mode correlation singular values also come with a tabulated closed
form: a constant pair ``1/6`` plus three radical expressions, each listed
twice.  The constant pair checks out against the SVD engine everywhere, but
the radical expressions do not: their shared radicand goes negative on part
of the parameter square (at the origin it is ``9 - 4 - 8 - 4 = -7``), and
where it is positive the values still disagree with the SVD.  They are kept
verbatim here, evaluated as written, with a domain-error marker wherever a
radicand is negative -- the SVD engine is authoritative and the mismatch is
documented (see the ``discrepancies`` module) rather than patched.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .alphas import qutrit_family
from .invariants import MODE_RAW, correlation_singular_values

TWO_PI = 2.0 * np.pi

#: Tolerance used when comparing closed forms against the generic engine.
CLOSED_FORM_TOL = 1e-9

__all__ = [
    "CLOSED_FORM_TOL",
    "family_pt_spectrum_closed",
    "family_negativity_closed",
    "ClosedFormValue",
    "family_correlation_closed",
    "compare_correlation_closed",
    "negativity_grid",
    "write_negativity_csv",
    "explicit_pt_blocks",
    "explicit_correlation_blocks",
]


def family_pt_spectrum_closed(theta, phi) -> np.ndarray:
    """The nine partial-transpose eigenvalues of the family, sorted ascending.

    Accepts scalars or broadcastable arrays; the spectrum sits in the last
    axis of the result.  The three cosine triples each sum to zero, so the
    total is identically one.
    """
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    thirds = TWO_PI / 3.0 * np.arange(3)
    values = np.concatenate(
        [
            (4.0 + 2.0 * np.cos(phi[..., None] + thirds)) / 18.0 + 0.0 * theta[..., None],
            (1.0 + 4.0 * np.cos(theta[..., None] + thirds)) / 18.0 + 0.0 * phi[..., None],
            (1.0 + 4.0 * np.cos(theta[..., None] + phi[..., None] + 2.0 * thirds)) / 18.0,
        ],
        axis=-1,
    )
    return np.sort(values, axis=-1)


def family_negativity_closed(theta, phi):
    """Negativity of the family from the closed-form spectrum (clamped at zero)."""
    spectrum = family_pt_spectrum_closed(theta, phi)
    value = (np.sum(np.abs(spectrum), axis=-1) - 1.0) / 2.0
    return np.maximum(value, 0.0)


@dataclass(frozen=True)
class ClosedFormValue:
    """One tabulated correlation singular value.

    ``value`` is ``None`` exactly when the expression is undefined because
    its radicand is negative; ``radicand`` is ``None`` for the constant
    entries that involve no square root.
    """

    value: float | None
    radicand: float | None

    @property
    def defined(self) -> bool:
        return self.value is not None


def _radical(theta: float, phi: float, shift: float) -> ClosedFormValue:
    radicand = (
        9.0
        - 4.0 * np.cos(theta - phi + shift)
        - 8.0 * np.cos(-2.0 * theta - phi + shift)
        - 4.0 * np.cos(theta + 2.0 * phi + shift)
    )
    value = float(np.sqrt(radicand)) / 18.0 if radicand >= 0.0 else None
    return ClosedFormValue(value, float(radicand))


def family_correlation_closed(theta: float, phi: float) -> list[ClosedFormValue]:
    """The eight tabulated raw-mode correlation singular values, as written.

    Order: the constant pair ``1/6``, then the unshifted radical expression
    twice, then the ``+pi/3``- and ``-pi/3``-shifted variants twice each.
    No reconciliation with the SVD engine happens here; use
    :func:`compare_correlation_closed` for that.
    """
    constant = ClosedFormValue(1.0 / 6.0, None)
    out = [constant, constant]
    for shift in (0.0, np.pi / 3.0, -np.pi / 3.0):
        entry = _radical(float(theta), float(phi), shift)
        out.extend([entry, entry])
    return out


def compare_correlation_closed(theta: float, phi: float, tol: float = CLOSED_FORM_TOL) -> dict:
    """Cross-examine the tabulated correlation values against the SVD engine.

    Returns a report with the negative radicands (if any), how well the
    constant ``1/6`` pair is matched by the engine's two nearest singular
    values, the multiset distance of the defined tabulated values to the
    engine output when all eight are defined, and an overall ``agrees`` flag.
    """
    closed = family_correlation_closed(theta, phi)
    engine = correlation_singular_values(qutrit_family(theta, phi), MODE_RAW)
    negative = [e.radicand for e in closed if e.radicand is not None and e.radicand < 0.0]
    constant_dev = float(np.sort(np.abs(engine - 1.0 / 6.0))[1])
    full_dev = None
    if not negative:
        values = np.sort(np.array([e.value for e in closed]))
        full_dev = float(np.max(np.abs(values - engine)))
    agrees = not negative and full_dev is not None and full_dev <= tol
    return {
        "theta": float(theta),
        "phi": float(phi),
        "negative_radicands": negative,
        "constant_pair_deviation": constant_dev,
        "defined_values_deviation": full_dev,
        "agrees": bool(agrees),
    }


def negativity_grid(resolution: int):
    """Closed-form negativity on the half-open square ``[0, 2 pi)^2``.

    Returns ``(thetas, phis, grid)`` where ``grid[i, j]`` is the negativity
    at ``(thetas[i], phis[j])``.  Grid points are ``2 pi k / resolution``;
    the endpoint ``2 pi`` is excluded since it repeats the origin.
    """
    if resolution < 1:
        raise ValueError("resolution must be positive")
    thetas = TWO_PI * np.arange(resolution) / resolution
    phis = TWO_PI * np.arange(resolution) / resolution
    grid = family_negativity_closed(thetas[:, None], phis[None, :])
    return thetas, phis, grid


def write_negativity_csv(path, resolution: int) -> dict:
    """Scan the family's negativity onto a CSV file, row-major in theta.

    Every number is formatted with 12 significant digits, so repeated runs
    with the same resolution produce byte-identical files.  Returns a
    summary with the maximum and its first-encountered argmax.
    """
    thetas, phis, grid = negativity_grid(resolution)
    with open(path, "w", newline="") as fh:
        fh.write("theta,phi,negativity\n")
        for i, theta in enumerate(thetas):
            for j, phi in enumerate(phis):
                fh.write(f"{theta:.12g},{phi:.12g},{grid[i, j]:.12g}\n")
    imax, jmax = np.unravel_index(int(np.argmax(grid)), grid.shape)
    return {
        "resolution": int(resolution),
        "rows": int(grid.size),
        "max_negativity": float(grid[imax, jmax]),
        "argmax": {"theta": float(thetas[imax]), "phi": float(phis[jmax])},
        "path": str(path),
    }


def explicit_pt_blocks(c: np.ndarray) -> list[np.ndarray]:
    """The three tabulated d=3 partial-transpose blocks, entry by entry.

    ``c`` is the 3x3 Fourier-coefficient matrix.  This layout is the
    transpose of the one the generic block engine uses (entry ``(l, k)``
    holds ``c[i-l-k, l] * conj(c[i-l-k, k])``); transposition leaves the
    spectra untouched, which is exactly what the cross-check tests assert.
    """
    c = np.asarray(c, dtype=complex)
    blocks = []
    for i in range(3):
        block = np.zeros((3, 3), dtype=complex)
        for l in range(3):
            for k in range(3):
                block[l, k] = c[(i - l - k) % 3, l] * np.conj(c[(i - l - k) % 3, k])
        blocks.append(block)
    return blocks


def explicit_correlation_blocks(c: np.ndarray) -> list[np.ndarray]:
    """The three tabulated d=3 correlation blocks, entry by entry.

    Clock block: ``sum_{m,p} w^{m i + p j} |c[m-p, p]|^2`` for ``i, j`` in
    ``{1, 2}``; shift block ``k``: ``c[i-j, j] * conj(c[i-j, j+k])``.  These
    are the entrywise conjugates of the generic engine's raw-mode blocks
    (the pairing there conjugates the basis element instead of the state),
    so their singular values coincide -- again assert-checked, not assumed.
    """
    c = np.asarray(c, dtype=complex)
    omega = np.exp(2j * np.pi / 3.0)
    clock = np.zeros((2, 2), dtype=complex)
    for i in (1, 2):
        for j in (1, 2):
            clock[i - 1, j - 1] = sum(
                omega ** (m * i + p * j) * abs(c[(m - p) % 3, p]) ** 2
                for m in range(3)
                for p in range(3)
            )
    blocks = [clock]
    for k in (1, 2):
        block = np.zeros((3, 3), dtype=complex)
        for i in range(3):
            for j in range(3):
                block[i, j] = c[(i - j) % 3, j] * np.conj(c[(i - j) % 3, (j + k) % 3])
        blocks.append(block)
    return blocks
