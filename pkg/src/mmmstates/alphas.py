"""Parameter matrices for the state construction.

A state of the family is specified by a complex ``d x d`` matrix ``alpha``
subject to one normalisation constraint and ``2(d-1)`` vanishing-overlap
constraints between the matrix and its column-rotated copies:

* ``sum_{ij} |alpha_{ij}|^2 = 1``
* for every offset ``l = 1 .. d-1`` (columns taken mod d)::

      sum_{ij} alpha_{i,j+l} * conj(alpha_{ij})              = 0
      sum_{ij} alpha_{i,j+l} * conj(alpha_{ij}) * w^{-i*l}   = 0,   w = exp(2*pi*1j/d)

The two constraint families are exactly what make the two reduced states of
the constructed density matrix maximally mixed (the plain sums control one
marginal, the phase-twisted sums the other).

Validation is a measurement, not an assertion: :func:`constraint_report`
returns all residuals, and :func:`validate` packages acceptance as an
:class:`AlphaMatrix` or rejection as a :class:`ConstraintViolation` carrying
the full report.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

#: Default acceptance tolerance for constraint residuals.
DEFAULT_TOL = 1e-10

TWO_PI = 2.0 * np.pi

#: Names accepted by :func:`named_example`.
NAMED_EXAMPLES = ("bell-seed", "uniform-diagonal", "gauss-phase")

__all__ = [
    "DEFAULT_TOL",
    "NAMED_EXAMPLES",
    "ShiftResidual",
    "ConstraintReport",
    "ConstraintViolation",
    "AlphaMatrix",
    "constraint_report",
    "validate",
    "qutrit_family",
    "canonical_angles",
    "named_example",
    "parse_alpha_json",
    "alpha_from_json",
]


@dataclass(frozen=True)
class ShiftResidual:
    """Absolute values of the two overlap sums at one column offset."""

    offset: int
    plain: float
    twisted: float

    def to_dict(self) -> dict:
        return {"offset": self.offset, "plain": self.plain, "twisted": self.twisted}


@dataclass(frozen=True)
class ConstraintReport:
    """All constraint residuals of one candidate matrix."""

    d: int
    norm_residual: float
    shifts: tuple[ShiftResidual, ...]

    @property
    def max_residual(self) -> float:
        worst = self.norm_residual
        for s in self.shifts:
            worst = max(worst, s.plain, s.twisted)
        return worst

    def within(self, tol: float) -> bool:
        return self.max_residual <= tol

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "norm": self.norm_residual,
            "shifts": [s.to_dict() for s in self.shifts],
            "max_residual": self.max_residual,
        }


class ConstraintViolation(ValueError):
    """Rejection of a candidate matrix; carries the residual report."""

    def __init__(self, report: ConstraintReport, tol: float):
        self.report = report
        self.tol = tol
        super().__init__(
            f"constraint residuals exceed tolerance {tol:.1e} "
            f"(max residual {report.max_residual:.3e})"
        )


def _as_complex_square(matrix) -> np.ndarray:
    arr = np.asarray(matrix, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"parameter matrix must be square, got shape {arr.shape}")
    if arr.shape[0] < 2:
        raise ValueError("parameter matrix must be at least 2x2")
    return arr


def constraint_report(matrix) -> ConstraintReport:
    """Compute all constraint residuals of a candidate matrix.

    Never raises on constraint violations -- a violated constraint is data.
    Only malformed (non-square, too small) input is a fault.
    """
    arr = _as_complex_square(matrix)
    d = arr.shape[0]
    norm_residual = float(abs(np.sum(np.abs(arr) ** 2) - 1.0))
    omega = np.exp(2j * np.pi / d)
    twist = omega ** (-np.arange(d))  # twist[i] = w^{-i}
    shifts = []
    for offset in range(1, d):
        prod = np.roll(arr, -offset, axis=1) * arr.conj()  # prod[i,j] = a[i,j+l]*conj(a[i,j])
        plain = np.sum(prod)
        twisted = np.sum(prod.sum(axis=1) * twist**offset)
        shifts.append(ShiftResidual(offset, float(abs(plain)), float(abs(twisted))))
    return ConstraintReport(d, norm_residual, tuple(shifts))


class AlphaMatrix:
    """A parameter matrix that has passed (or explicitly skipped) validation.

    Instances are the only currency accepted by the state factory.  The
    stored array is a read-only copy.
    """

    __slots__ = ("d", "matrix")

    def __init__(self, matrix, tol: float = DEFAULT_TOL, check: bool = True):
        arr = _as_complex_square(matrix).copy()
        if check:
            report = constraint_report(arr)
            if not report.within(tol):
                raise ConstraintViolation(report, tol)
        arr.flags.writeable = False
        object.__setattr__(self, "d", arr.shape[0])
        object.__setattr__(self, "matrix", arr)

    def __setattr__(self, name, value):  # keep instances effectively frozen
        raise AttributeError("AlphaMatrix is immutable")

    def __repr__(self) -> str:
        return f"AlphaMatrix(d={self.d})"

    def report(self) -> ConstraintReport:
        return constraint_report(self.matrix)

    def to_json_dict(self) -> dict:
        """JSON form: ``{"d": d, "alpha": [[[re, im], ...], ...]}``."""
        alpha = [
            [[float(z.real), float(z.imag)] for z in row] for row in self.matrix
        ]
        return {"d": self.d, "alpha": alpha}


def validate(matrix, tol: float = DEFAULT_TOL) -> AlphaMatrix:
    """Accept a candidate matrix, or raise :class:`ConstraintViolation`.

    Acceptance means every residual of :func:`constraint_report` is at most
    ``tol``.  The exception carries the report, so callers that treat
    rejection as an ordinary outcome can inspect every residual.
    """
    return AlphaMatrix(matrix, tol=tol, check=True)


def canonical_angles(theta: float, phi: float) -> tuple[float, float]:
    """Reduce a pair of angles to the canonical range ``[0, 2*pi)``."""
    return float(theta) % TWO_PI, float(phi) % TWO_PI


def qutrit_family(
    theta: float, phi: float, tol: float = DEFAULT_TOL, check: bool = True
) -> AlphaMatrix:
    """The two-parameter d=3 family, valid at every ``(theta, phi)``.

    Row ``i`` is ``sqrt(2)/6 * (2, e^{1j(theta - 2pi i/3)}, e^{1j(theta + phi - 4pi i/3)})``.
    The third column's phase steps by twice the second column's step per row;
    that doubling is what makes every shifted overlap sum vanish identically,
    so the constraints hold for all angles.  Angles are reduced mod ``2*pi``
    on ingestion so equal parameters serialise identically.
    """
    theta, phi = canonical_angles(theta, phi)
    rows = np.arange(3)
    col0 = np.full(3, 2.0, dtype=complex)
    col1 = np.exp(1j * (theta - rows * (2.0 * np.pi / 3.0)))
    col2 = np.exp(1j * (theta + phi - rows * (4.0 * np.pi / 3.0)))
    matrix = (np.sqrt(2.0) / 6.0) * np.stack([col0, col1, col2], axis=1)
    return AlphaMatrix(matrix, tol=tol, check=check)


def named_example(name: str, d: int) -> AlphaMatrix:
    """Construct one of the bundled example matrices.

    ``bell-seed``
        All weight on the ``(0, 0)`` entry; builds a rank-one maximally
        entangled state.
    ``uniform-diagonal``
        ``I/sqrt(d)``; builds a rank-``d`` mixture that stays PPT.
    ``gauss-phase``
        Single row of quadratic phases ``w^{j^2}/sqrt(d)``; requires odd
        ``d`` (for even ``d`` the shifted overlap sums do not vanish).
    """
    if not isinstance(d, (int, np.integer)) or d < 2:
        raise ValueError(f"local dimension must be an integer >= 2, got {d!r}")
    d = int(d)
    if name == "bell-seed":
        arr = np.zeros((d, d), dtype=complex)
        arr[0, 0] = 1.0
    elif name == "uniform-diagonal":
        arr = np.eye(d, dtype=complex) / np.sqrt(d)
    elif name == "gauss-phase":
        if d % 2 == 0:
            raise ValueError("gauss-phase requires odd d")
        arr = np.zeros((d, d), dtype=complex)
        omega = np.exp(2j * np.pi / d)
        arr[0, :] = omega ** (np.arange(d) ** 2) / np.sqrt(d)
    else:
        raise ValueError(f"unknown example {name!r}; choose from {NAMED_EXAMPLES}")
    return AlphaMatrix(arr)


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


def parse_alpha_json(obj) -> np.ndarray:
    """Parse the JSON form of a parameter matrix into a complex array.

    Strict by design: the shape must be ``d x d x 2`` with numeric entries
    and ``d`` matching the declared dimension.  Ragged rows are rejected
    rather than coerced.  No constraint checking happens here.
    """
    _require(isinstance(obj, dict), "top level must be an object")
    _require("d" in obj and "alpha" in obj, "object must contain 'd' and 'alpha'")
    d = obj["d"]
    _require(isinstance(d, int) and not isinstance(d, bool) and d >= 2, "'d' must be an integer >= 2")
    rows = obj["alpha"]
    _require(isinstance(rows, list) and len(rows) == d, f"'alpha' must be a list of {d} rows")
    out = np.zeros((d, d), dtype=complex)
    for i, row in enumerate(rows):
        _require(isinstance(row, list) and len(row) == d, f"row {i} must be a list of {d} entries")
        for j, entry in enumerate(row):
            _require(
                isinstance(entry, list) and len(entry) == 2,
                f"entry ({i},{j}) must be a [re, im] pair",
            )
            re, im = entry
            for part in (re, im):
                _require(
                    isinstance(part, (int, float)) and not isinstance(part, bool),
                    f"entry ({i},{j}) must contain numbers",
                )
            out[i, j] = complex(re, im)
    return out


def alpha_from_json(obj, tol: float = DEFAULT_TOL, check: bool = True) -> AlphaMatrix:
    """Parse and (by default) validate the JSON form of a parameter matrix."""
    return AlphaMatrix(parse_alpha_json(obj), tol=tol, check=check)
