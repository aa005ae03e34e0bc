"""Constraint checking, the qutrit family, named examples, and JSON parsing."""

import json

import numpy as np
import pytest

from mmmstates.alphas import (
    DEFAULT_TOL,
    AlphaMatrix,
    ConstraintViolation,
    alpha_from_json,
    canonical_angles,
    constraint_report,
    named_example,
    parse_alpha_json,
    qutrit_family,
    validate,
)

TOL = 1e-12


def _loop_residuals(arr):
    """Brute-force reference implementation of the constraint sums."""
    d = arr.shape[0]
    omega = np.exp(2j * np.pi / d)
    norm = abs(np.sum(np.abs(arr) ** 2) - 1.0)
    out = [norm]
    for l in range(1, d):
        plain = 0.0
        twisted = 0.0
        for i in range(d):
            for j in range(d):
                term = arr[i, (j + l) % d] * np.conj(arr[i, j])
                plain += term
                twisted += term * omega ** (-i * l)
        out.append(abs(plain))
        out.append(abs(twisted))
    return np.array(out)


def test_constraint_report_matches_loop_reference():
    rng = np.random.default_rng(2)
    for d in (2, 3, 4):
        arr = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        report = constraint_report(arr)
        flat = [report.norm_residual]
        for s in report.shifts:
            flat.extend([s.plain, s.twisted])
        np.testing.assert_allclose(flat, _loop_residuals(arr), atol=TOL)


def test_named_examples_satisfy_constraints():
    for name, dims in [("bell-seed", (2, 3, 4)), ("uniform-diagonal", (2, 3, 4)),
                       ("gauss-phase", (3, 5))]:
        for d in dims:
            a = named_example(name, d)
            assert a.report().max_residual < 1e-14


def test_gauss_phase_rejects_even_dimension():
    with pytest.raises(ValueError):
        named_example("gauss-phase", 4)


def test_named_example_rejects_unknown_name_and_bad_dimension():
    with pytest.raises(ValueError):
        named_example("nonsense", 3)
    with pytest.raises(ValueError):
        named_example("bell-seed", 1)


def test_flat_row_matrix_violates_plain_constraint_by_one():
    # Equal weight on one row: the l=1 overlap sum equals the full weight, 1.
    arr = np.array([[1.0, 1.0], [0.0, 0.0]]) / np.sqrt(2.0)
    report = constraint_report(arr)
    assert report.norm_residual < TOL
    assert report.shifts[0].plain == pytest.approx(1.0, abs=TOL)
    with pytest.raises(ConstraintViolation):
        validate(arr)


def test_hadamard_matrix_passes_plain_but_fails_twisted():
    # Column-orthogonal rows kill every plain sum, yet the twisted l=1 sum
    # is 1; this matrix must be rejected (one marginal would not be mixed).
    arr = np.array([[1.0, 1.0], [1.0, -1.0]]) / 2.0
    report = constraint_report(arr)
    assert report.norm_residual < TOL
    assert report.shifts[0].plain < TOL
    assert report.shifts[0].twisted == pytest.approx(1.0, abs=TOL)
    with pytest.raises(ConstraintViolation):
        validate(arr)


def test_constraint_violation_carries_report():
    arr = np.array([[1.0, 1.0], [0.0, 0.0]]) / np.sqrt(2.0)
    with pytest.raises(ConstraintViolation) as info:
        validate(arr, tol=1e-6)
    assert info.value.tol == 1e-6
    assert info.value.report.max_residual == pytest.approx(1.0, abs=TOL)


def test_qutrit_family_valid_everywhere():
    rng = np.random.default_rng(5)
    for _ in range(1000):
        theta, phi = rng.uniform(0.0, 2.0 * np.pi, size=2)
        a = qutrit_family(theta, phi)
        assert a.report().max_residual < 1e-14


def test_qutrit_family_entry_structure():
    a = qutrit_family(0.3, 1.1)
    m = a.matrix
    s = np.sqrt(2.0) / 6.0
    np.testing.assert_allclose(m[:, 0], 2.0 * s * np.ones(3), atol=TOL)
    np.testing.assert_allclose(np.abs(m[:, 1]), s * np.ones(3), atol=TOL)
    np.testing.assert_allclose(np.abs(m[:, 2]), s * np.ones(3), atol=TOL)
    # phases step by -2pi/3 per row in column 1 and twice that in column 2
    np.testing.assert_allclose(
        np.angle(m[1, 1] / m[0, 1]), -2.0 * np.pi / 3.0, atol=TOL
    )
    np.testing.assert_allclose(
        np.angle(m[1, 2] / m[0, 2]) % (2.0 * np.pi), 2.0 * np.pi / 3.0, atol=TOL
    )


def test_qutrit_family_angles_reduce_mod_two_pi():
    a = qutrit_family(0.4, 1.7)
    b = qutrit_family(0.4 + 2.0 * np.pi, 1.7 - 2.0 * np.pi)
    np.testing.assert_allclose(a.matrix, b.matrix, atol=1e-12)
    assert canonical_angles(2.0 * np.pi, -2.0 * np.pi) == (0.0, 0.0)


def test_global_phase_preserves_constraints():
    rng = np.random.default_rng(8)
    a = qutrit_family(1.2, 0.5)
    phased = np.exp(1j * rng.uniform(0, 2 * np.pi)) * a.matrix
    assert constraint_report(phased).max_residual < 1e-14


def test_alpha_matrix_is_immutable():
    a = qutrit_family(0.0, 0.0)
    with pytest.raises(AttributeError):
        a.d = 5
    with pytest.raises(ValueError):
        a.matrix[0, 0] = 1.0


def test_alpha_matrix_copies_input():
    arr = np.zeros((2, 2), dtype=complex)
    arr[0, 0] = 1.0
    a = AlphaMatrix(arr)
    arr[0, 0] = 0.0
    assert a.matrix[0, 0] == 1.0


def test_alpha_matrix_rejects_malformed_shapes():
    with pytest.raises(ValueError):
        AlphaMatrix(np.zeros((2, 3)), check=False)
    with pytest.raises(ValueError):
        AlphaMatrix(np.array([[1.0]]), check=False)


def test_check_false_skips_validation():
    arr = np.array([[1.0, 1.0], [0.0, 0.0]]) / np.sqrt(2.0)
    a = AlphaMatrix(arr, check=False)
    assert a.report().max_residual == pytest.approx(1.0, abs=TOL)


def test_json_round_trip():
    a = qutrit_family(0.9, 2.3)
    obj = json.loads(json.dumps(a.to_json_dict()))
    b = alpha_from_json(obj)
    assert b.d == 3
    np.testing.assert_allclose(a.matrix, b.matrix, atol=1e-15)


@pytest.mark.parametrize(
    "obj",
    [
        [],
        {"alpha": [[[1.0, 0.0]]]},
        {"d": 2},
        {"d": 1, "alpha": [[[1.0, 0.0]]]},
        {"d": True, "alpha": [[[1.0, 0.0]], [[0.0, 0.0]]]},
        {"d": 2, "alpha": [[[1.0, 0.0], [0.0, 0.0]]]},
        {"d": 2, "alpha": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0]]]},
        {"d": 2, "alpha": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.0]]]},
        {"d": 2, "alpha": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], ["x", 0.0]]]},
        {"d": 2, "alpha": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], 0.0]]},
    ],
)
def test_parse_alpha_json_rejects_malformed_payloads(obj):
    with pytest.raises(ValueError):
        parse_alpha_json(obj)


def test_parse_alpha_json_accepts_well_formed_payload():
    obj = {"d": 2, "alpha": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]]]}
    arr = parse_alpha_json(obj)
    assert arr.dtype == complex
    assert arr[0, 0] == 1.0 + 0.0j


def test_alpha_from_json_honours_check_flag():
    bad = {"d": 2, "alpha": [[[2.0**-0.5, 0.0], [2.0**-0.5, 0.0]], [[0.0, 0.0], [0.0, 0.0]]]}
    with pytest.raises(ConstraintViolation):
        alpha_from_json(bad)
    a = alpha_from_json(bad, check=False)
    assert a.d == 2


def test_default_tolerance_is_strict():
    assert DEFAULT_TOL == 1e-10
    # a 1e-8 normalisation error must be rejected at the default tolerance
    arr = named_example("bell-seed", 2).matrix * (1.0 + 1e-8)
    with pytest.raises(ConstraintViolation):
        validate(arr)
