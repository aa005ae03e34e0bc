"""Documented inconsistencies between tabulated shortcut forms and this engine.

Several closed-form expressions and explicit matrices that circulate for this
family of states do not survive numerical cross-examination.  Rather than
silently "fixing" them, this module reproduces each conflict with concrete
numbers, states which convention the package implements, and why.  The
findings below are computed fresh on every call -- they are measurements,
not quotations.

Run ``python -m mmmstates.discrepancies`` for the report as JSON.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .alphas import constraint_report, named_example, qutrit_family
from .invariants import (
    MODE_RAW,
    correlation_blocks,
    correlation_singular_values,
    pt_blocks,
    pt_spectrum,
)
from .qutrit import explicit_correlation_blocks, explicit_pt_blocks, family_correlation_closed
from .states import fourier_coeffs

__all__ = ["Finding", "collect_findings", "render_text"]


@dataclass(frozen=True)
class Finding:
    """One documented inconsistency with its numerical evidence."""

    key: str
    statement: str
    evidence: dict

    def to_json_dict(self) -> dict:
        return {"key": self.key, "statement": self.statement, "evidence": dict(self.evidence)}


def _trace_with_prefactor(alpha: np.ndarray, prefactor: float) -> float:
    """Trace of the assembled state when the row transform is scaled by ``prefactor``."""
    d = alpha.shape[0]
    omega = np.exp(2j * np.pi / d)
    c = alpha @ (omega ** np.outer(np.arange(d), np.arange(d)) * prefactor)
    ks = np.arange(d)
    total = 0.0
    for i in range(d):
        vec = np.zeros(d * d, dtype=complex)
        vec[((ks + i) % d) * d + ks] = c[i]
        total += float(np.vdot(vec, vec).real)
    return total


def _prefactor_finding() -> Finding:
    alpha = qutrit_family(0.0, 0.0).matrix
    d = 3
    with_inverse_d = _trace_with_prefactor(alpha, 1.0 / d)
    with_inverse_sqrt_d = _trace_with_prefactor(alpha, 1.0 / np.sqrt(d))
    return Finding(
        key="fourier-prefactor",
        statement=(
            "The row Fourier transform must carry a 1/sqrt(d) prefactor.  The 1/d "
            "variant that sometimes appears alongside the explicit coefficient tables "
            "scales the whole state by 1/d: its trace lands at 1/d instead of 1."
        ),
        evidence={
            "d": d,
            "trace_with_1_over_d": with_inverse_d,
            "trace_with_1_over_sqrt_d": with_inverse_sqrt_d,
            "required_trace": 1.0,
        },
    )


def _negativity_summation_finding() -> Finding:
    npt_spectrum = pt_spectrum(named_example("bell-seed", 2))
    ppt_spectrum = pt_spectrum(named_example("uniform-diagonal", 2))

    def per_eigenvalue(values):
        return float(np.sum((np.abs(values) - 1.0) / 2.0))

    def trace_norm_form(values):
        return float((np.sum(np.abs(values)) - 1.0) / 2.0)

    return Finding(
        key="negativity-summation",
        statement=(
            "In the negativity (sum_i |kappa2_i| - 1)/2 the subtraction of one happens "
            "once, outside the sum.  Moving it inside, as one widespread variant does, "
            "subtracts (d^2 - 1)/2 too much: every PPT state then gets a negative "
            "'negativity', and the maximally entangled d=2 state gets -1 instead of 1/2."
        ),
        evidence={
            "bell_seed_d2_per_eigenvalue": per_eigenvalue(npt_spectrum),
            "bell_seed_d2_trace_norm_form": trace_norm_form(npt_spectrum),
            "uniform_diagonal_d2_per_eigenvalue": per_eigenvalue(ppt_spectrum),
            "uniform_diagonal_d2_trace_norm_form": trace_norm_form(ppt_spectrum),
        },
    )


def _radicand_finding() -> Finding:
    closed = family_correlation_closed(0.0, 0.0)
    radicands = sorted({e.radicand for e in closed if e.radicand is not None})
    engine = correlation_singular_values(qutrit_family(0.0, 0.0), MODE_RAW)
    grid = 20
    negative_points = 0
    defined_mismatches = 0
    worst_defined_deviation = 0.0
    for i in range(grid):
        for j in range(grid):
            theta = 2.0 * np.pi * i / grid
            phi = 2.0 * np.pi * j / grid
            entries = family_correlation_closed(theta, phi)
            if any(e.radicand is not None and e.radicand < 0.0 for e in entries):
                negative_points += 1
                continue
            values = np.sort(np.array([e.value for e in entries]))
            reference = correlation_singular_values(qutrit_family(theta, phi), MODE_RAW)
            deviation = float(np.max(np.abs(values - reference)))
            worst_defined_deviation = max(worst_defined_deviation, deviation)
            if deviation > 1e-9:
                defined_mismatches += 1
    return Finding(
        key="correlation-radicand",
        statement=(
            "The tabulated radical expressions for the raw-mode correlation singular "
            "values are undefined at the origin -- the radicand evaluates to "
            "9 - 4 - 8 - 4 = -7 -- and wherever they are defined they still disagree "
            "with the singular-value engine.  Only their constant 1/6 pair is correct. "
            "The package evaluates them verbatim with domain-error markers and treats "
            "the SVD as authoritative."
        ),
        evidence={
            "radicand_at_origin": min(radicands),
            "all_radicands_at_origin": radicands,
            "engine_values_at_origin": [float(x) for x in engine],
            "grid_resolution": grid,
            "points_with_negative_radicand": negative_points,
            "defined_points_disagreeing": defined_mismatches,
            "worst_defined_deviation": worst_defined_deviation,
        },
    )


def _family_conjugation_finding() -> Finding:
    theta, phi = 0.7, 1.3
    conjugated = qutrit_family(theta, phi).matrix.copy()
    conjugated[1:, 2] = np.conj(conjugated[1:, 2])  # the variant with conjugated phases
    report = constraint_report(conjugated)
    implemented = qutrit_family(theta, phi).report()
    return Finding(
        key="family-third-column-conjugation",
        statement=(
            "A variant of the two-parameter qutrit family conjugates the third-column "
            "phases of rows 1 and 2.  That variant violates the shifted-overlap "
            "constraints by order one, so it cannot have maximally mixed marginals; "
            "the un-conjugated form implemented here satisfies them identically."
        ),
        evidence={
            "theta": theta,
            "phi": phi,
            "conjugated_variant_max_residual": report.max_residual,
            "implemented_max_residual": implemented.max_residual,
        },
    )


def _block_orientation_finding() -> Finding:
    a = qutrit_family(0.7, 1.3)
    c = fourier_coeffs(a)
    explicit_q = explicit_pt_blocks(c)
    generic_q = pt_blocks(a)
    transpose_gap = max(
        float(np.max(np.abs(explicit_q[i] - generic_q[i].T))) for i in range(3)
    )
    spectrum_gap = max(
        float(
            np.max(
                np.abs(
                    np.sort(np.linalg.eigvals(explicit_q[i]).real)
                    - np.sort(np.linalg.eigvals(generic_q[i]).real)
                )
            )
        )
        for i in range(3)
    )
    explicit_r = explicit_correlation_blocks(c)
    generic_r = correlation_blocks(a, MODE_RAW)
    conjugation_gap = max(
        float(np.max(np.abs(explicit_r[i] - np.conj(generic_r[i])))) for i in range(3)
    )
    sv_gap = max(
        float(
            np.max(
                np.abs(
                    np.sort(np.linalg.svd(explicit_r[i], compute_uv=False))
                    - np.sort(np.linalg.svd(generic_r[i], compute_uv=False))
                )
            )
        )
        for i in range(3)
    )
    return Finding(
        key="block-orientation",
        statement=(
            "The tabulated explicit d=3 blocks differ from the construction-ordered "
            "ones by harmless reshuffles: partial-transpose blocks by transposition, "
            "correlation blocks by entrywise conjugation.  Spectra and singular values "
            "are unaffected, which is verified numerically rather than assumed."
        ),
        evidence={
            "pt_block_transpose_gap": transpose_gap,
            "pt_block_spectrum_gap": spectrum_gap,
            "correlation_block_conjugation_gap": conjugation_gap,
            "correlation_block_singular_value_gap": sv_gap,
        },
    )


def collect_findings() -> list[Finding]:
    """Compute every documented inconsistency with fresh numerical evidence."""
    return [
        _prefactor_finding(),
        _negativity_summation_finding(),
        _radicand_finding(),
        _family_conjugation_finding(),
        _block_orientation_finding(),
    ]


def render_text(findings: list[Finding] | None = None) -> str:
    """Human-readable rendering of the findings."""
    findings = collect_findings() if findings is None else findings
    lines = []
    for n, finding in enumerate(findings, start=1):
        lines.append(f"[{n}] {finding.key}")
        lines.append(f"    {finding.statement}")
        for name, value in finding.evidence.items():
            lines.append(f"    {name} = {value}")
    return "\n".join(lines)


if __name__ == "__main__":
    print(json.dumps([f.to_json_dict() for f in collect_findings()], indent=2, default=float))
