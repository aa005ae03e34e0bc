"""State assembly, marginals, shear permutations, and certification."""

import numpy as np
import pytest

from mmmstates.alphas import AlphaMatrix, named_example, qutrit_family
from mmmstates.linalg import eig_hermitian, partial_trace, partial_transpose
from mmmstates.invariants import pt_blocks
from mmmstates.states import (
    BipartiteState,
    build_state,
    certify,
    fourier_coeffs,
    shear_unitary,
    state_to_json_dict,
)

TOL = 1e-12


def _family_points(n, seed):
    rng = np.random.default_rng(seed)
    return rng.uniform(0.0, 2.0 * np.pi, size=(n, 2))


def test_fourier_coeffs_of_bell_seed():
    for d in (2, 3, 4):
        c = fourier_coeffs(named_example("bell-seed", d))
        expected = np.zeros((d, d), dtype=complex)
        expected[0, :] = 1.0 / np.sqrt(d)
        np.testing.assert_allclose(c, expected, atol=TOL)


def test_fourier_coeffs_row_transform_matches_loops():
    rng = np.random.default_rng(4)
    d = 3
    arr = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    c = fourier_coeffs(arr)
    omega = np.exp(2j * np.pi / d)
    for i in range(d):
        for k in range(d):
            ref = sum(arr[i, j] * omega ** (j * k) for j in range(d)) / np.sqrt(d)
            assert abs(c[i, k] - ref) < TOL


def test_bell_seed_builds_the_maximally_entangled_state():
    state = build_state(named_example("bell-seed", 2))
    psi = np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2.0)
    np.testing.assert_allclose(state.rho, np.outer(psi, psi), atol=TOL)


def test_uniform_diagonal_builds_a_ppt_mixture():
    state = build_state(named_example("uniform-diagonal", 2))
    vals = eig_hermitian(state.rho)
    np.testing.assert_allclose(vals, [0.0, 0.0, 0.5, 0.5], atol=TOL)
    pt_vals = eig_hermitian(partial_transpose(state.rho, 2))
    assert pt_vals.min() > -TOL  # stays PPT


def test_build_state_requires_validated_matrix():
    with pytest.raises(TypeError):
        build_state(np.eye(2) / np.sqrt(2.0))


def test_marginals_maximally_mixed_across_family_and_examples():
    worst = 0.0
    states = [build_state(qutrit_family(t, p)) for t, p in _family_points(30, seed=12)]
    for name, d in [("bell-seed", 2), ("bell-seed", 3), ("uniform-diagonal", 2),
                    ("uniform-diagonal", 3), ("gauss-phase", 3), ("gauss-phase", 5)]:
        states.append(build_state(named_example(name, d)))
    for state in states:
        eye = np.eye(state.d) / state.d
        for sub in ("A", "B"):
            worst = max(worst, np.abs(partial_trace(state.rho, state.d, sub) - eye).max())
    assert worst < TOL


def test_trace_equals_total_weight_even_unnormalised():
    # the state trace is the squared Frobenius norm of the parameter matrix
    arr = named_example("bell-seed", 2).matrix * 0.5
    state = build_state(AlphaMatrix(arr, check=False))
    assert np.trace(state.rho).real == pytest.approx(0.25, abs=TOL)


def test_plain_and_twisted_constraints_control_opposite_marginals():
    # This matrix satisfies every plain overlap sum but not the twisted one,
    # so exactly one marginal comes out maximally mixed.  Pinning which one
    # guards the tensor-index convention of the assembly.
    arr = np.array([[1.0, 1.0], [1.0, -1.0]]) / 2.0
    state = build_state(AlphaMatrix(arr, check=False))
    eye = np.eye(2) / 2.0
    defect_b_side = np.abs(partial_trace(state.rho, 2, "A") - eye).max()
    defect_a_side = np.abs(partial_trace(state.rho, 2, "B") - eye).max()
    assert defect_b_side < TOL
    assert defect_a_side == pytest.approx(0.5, abs=TOL)


def test_shear_unitaries_are_permutations():
    for d in (2, 3, 4):
        for sign in ("minus", "plus"):
            s = shear_unitary(d, sign)
            assert np.array_equal(np.sort(np.abs(s).sum(axis=0)), np.ones(d * d))
            np.testing.assert_allclose(s @ s.conj().T, np.eye(d * d), atol=0)


def test_shear_signs_coincide_with_cnot_for_qubits():
    cnot = np.zeros((4, 4))
    for a in (0, 1):
        for b in (0, 1):
            cnot[((a + b) % 2) * 2 + b, a * 2 + b] = 1.0
    np.testing.assert_array_equal(shear_unitary(2, "minus"), cnot)
    np.testing.assert_array_equal(shear_unitary(2, "plus"), cnot)


def test_shear_unitary_rejects_unknown_sign():
    with pytest.raises(ValueError):
        shear_unitary(3, "sideways")


def test_minus_shear_block_diagonalises_the_state():
    for theta, phi in _family_points(5, seed=21):
        a = qutrit_family(theta, phi)
        d = a.d
        rho = build_state(a).rho
        s = shear_unitary(d, "minus")
        sheared = s @ rho @ s.conj().T
        c = fourier_coeffs(a)
        blocks = sheared.reshape(d, d, d, d)
        for i in range(d):
            for ip in range(d):
                if i == ip:
                    np.testing.assert_allclose(
                        blocks[i, :, i, :], np.outer(c[i], c[i].conj()), atol=TOL
                    )
                else:
                    assert np.abs(blocks[i, :, ip, :]).max() < TOL


def test_plus_shear_block_diagonalises_the_partial_transpose():
    for theta, phi in _family_points(5, seed=22):
        a = qutrit_family(theta, phi)
        d = a.d
        rho = build_state(a).rho
        s = shear_unitary(d, "plus")
        sheared = s @ partial_transpose(rho, d) @ s.conj().T
        blocks = sheared.reshape(d, d, d, d)
        expected = pt_blocks(a)
        for m in range(d):
            for mp in range(d):
                if m == mp:
                    np.testing.assert_allclose(blocks[m, :, m, :], expected[m], atol=TOL)
                else:
                    assert np.abs(blocks[m, :, mp, :]).max() < TOL


def test_certify_on_named_examples():
    report = certify(build_state(named_example("bell-seed", 3)))
    assert report.rank == 1
    assert report.trace_defect < TOL
    assert report.min_eigenvalue > -TOL
    assert report.hermiticity_defect < TOL
    assert max(report.marginal_defect_a, report.marginal_defect_b) < TOL

    report = certify(build_state(named_example("uniform-diagonal", 2)))
    assert report.rank == 2

    report = certify(build_state(qutrit_family(0.0, 0.0)))
    assert report.rank == 3


def test_state_json_dict_round_trips_entries():
    state = build_state(named_example("bell-seed", 2))
    obj = state_to_json_dict(state)
    assert obj["d"] == 2
    rebuilt = np.array([[complex(re, im) for re, im in row] for row in obj["rho"]])
    np.testing.assert_allclose(rebuilt, state.rho, atol=0)


def test_bipartite_state_shape_guard():
    with pytest.raises(ValueError):
        BipartiteState(2, np.eye(3))
