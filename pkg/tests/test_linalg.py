"""Matrix kernel tests against closed-form 2x2 and diagonal oracles."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from foguel import (
    SeededGenerator,
    SingularMatrixError,
    Tolerance,
    ValidationError,
    haar_unitary,
    hermitian_eigs,
    multiset_match,
    operator_norm,
    psd_sqrt,
    solve_inverse,
)
from foguel.errors import NotPositiveSemidefiniteError
from foguel.linalg import adjoint


def test_hermitian_eigs_identity():
    w, u = hermitian_eigs(np.eye(2))
    np.testing.assert_allclose(w, [1.0, 1.0])


def test_hermitian_eigs_2x2_closed_form():
    # characteristic polynomial of [[2, 1], [1, 1]] is x^2 - 3x + 1
    expected = np.sort(np.roots([1.0, -3.0, 1.0]).real)
    w, u = hermitian_eigs(np.array([[2.0, 1.0], [1.0, 1.0]]))
    np.testing.assert_allclose(w, expected, atol=1e-12)


def test_hermitian_eigs_conjugation_invariance():
    gen = SeededGenerator(11)
    u = haar_unitary(3, gen)
    m = u @ np.diag([4.0, 2.0, 0.0]).astype(complex) @ adjoint(u)
    w, _ = hermitian_eigs(m)
    np.testing.assert_allclose(w, [0.0, 2.0, 4.0], atol=1e-12)


def test_hermitian_eigs_reconstruction_and_trace():
    gen = SeededGenerator(5)
    for trial in range(20):
        z = gen.complex_gaussian(6)
        m = z + adjoint(z)
        w, u = hermitian_eigs(m)
        scale = 1.0 + operator_norm(m)
        assert operator_norm(m - (u * w) @ adjoint(u)) <= 1e-10 * scale
        assert abs(np.trace(m).real - w.sum()) <= 1e-9 * scale
        assert np.all(np.diff(w) >= 0)


def test_hermitian_eigs_rejects_asymmetric():
    with pytest.raises(ValidationError, match="asymmetry"):
        hermitian_eigs(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_operator_norm_zero():
    assert operator_norm(np.zeros((3, 3))) == 0.0


def test_operator_norm_jordan_block_golden_ratio():
    # sqrt of the largest root of x^2 - 3x + 1, the char. poly of [[2,1],[1,1]]
    expected = np.sqrt(np.max(np.roots([1.0, -3.0, 1.0]).real))
    assert abs(operator_norm([[1, 1], [0, 1]]) - expected) <= 1e-12
    assert abs(expected - (1 + np.sqrt(5)) / 2) <= 1e-12


def test_operator_norm_of_unitary_is_one():
    gen = SeededGenerator(2)
    for n in (1, 4, 16):
        assert abs(operator_norm(haar_unitary(n, gen)) - 1.0) <= 1e-12


def test_operator_norm_unitary_invariance_and_adjoint():
    gen = SeededGenerator(3)
    for trial in range(10):
        m = gen.complex_gaussian(5)
        u = haar_unitary(5, gen)
        w = haar_unitary(5, gen)
        assert abs(operator_norm(u @ m @ w) - operator_norm(m)) <= 1e-10
        assert abs(operator_norm(m) - operator_norm(adjoint(m))) <= 1e-12


def test_psd_sqrt_identity_and_diagonal():
    np.testing.assert_allclose(psd_sqrt(np.eye(3)), np.eye(3), atol=1e-14)
    np.testing.assert_allclose(
        psd_sqrt(np.diag([4.0, 9.0]).astype(complex)),
        np.diag([2.0, 3.0]),
        atol=1e-14,
    )


def test_psd_sqrt_scalar_defect():
    defect = 1.0 - 0.5 * 0.5
    np.testing.assert_allclose(
        psd_sqrt([[defect]]), [[np.sqrt(0.75)]], atol=1e-15
    )


def test_psd_sqrt_squares_back_and_conjugates():
    gen = SeededGenerator(7)
    for trial in range(10):
        z = gen.complex_gaussian(4)
        p = z @ adjoint(z)
        s = psd_sqrt(p)
        scale = 1.0 + operator_norm(p)
        assert operator_norm(s @ s - p) <= 1e-9 * scale
        u = haar_unitary(4, gen)
        conjugated = psd_sqrt(u @ p @ adjoint(u))
        assert operator_norm(conjugated - u @ s @ adjoint(u)) <= 1e-9 * scale


def test_psd_sqrt_rejects_negative_eigenvalue():
    with pytest.raises(NotPositiveSemidefiniteError) as err:
        psd_sqrt(np.diag([1.0, -1e-6]).astype(complex))
    assert err.value.min_eigenvalue == pytest.approx(-1e-6)


def test_solve_inverse_2x2_adjugate_oracle():
    # adjugate over determinant: det = 5, adj = [[-3, -1], [-1, -2]]
    m = np.array([[-2.0, 1.0], [1.0, -3.0]])
    expected = np.array([[-3.0, -1.0], [-1.0, -2.0]]) / 5.0
    np.testing.assert_allclose(solve_inverse(m), expected, atol=1e-14)


def test_solve_inverse_identity_and_diagonal():
    np.testing.assert_allclose(solve_inverse(np.eye(3)), np.eye(3), atol=1e-15)
    np.testing.assert_allclose(
        solve_inverse(np.diag([2.0, 4.0]).astype(complex)),
        np.diag([0.5, 0.25]),
        atol=1e-15,
    )


def test_solve_inverse_two_sided_residual():
    gen = SeededGenerator(13)
    for trial in range(10):
        m = gen.complex_gaussian(6) + 2 * np.eye(6)
        inv = solve_inverse(m)
        eye = np.eye(6)
        assert operator_norm(m @ inv - eye) <= 1e-10
        assert operator_norm(inv @ m - eye) <= 1e-10


def test_solve_inverse_rejects_singular():
    with pytest.raises(SingularMatrixError) as err:
        solve_inverse(np.ones((2, 2)))
    assert err.value.rcond is not None and err.value.rcond < 1e-12


def test_multiset_match_permutation():
    result = multiset_match([1.0, 2.0, 3.0], [3.0, 1.0, 2.0], Tolerance(atol=1e-12))
    assert result.matched and result.max_deviation == 0.0


def test_multiset_match_quadratic_roots():
    # rounded decimals against the exact roots of x^2 - 3x + 1
    roots = np.sort(np.roots([1.0, -3.0, 1.0]).real)
    result = multiset_match([0.381966, 2.618034], roots, Tolerance(atol=1e-6))
    assert result.matched
    assert result.max_deviation <= 1e-6


def test_multiset_match_length_mismatch():
    with pytest.raises(ValidationError, match="length mismatch"):
        multiset_match([1.0, 2.0], [1.0, 2.0, 3.0], Tolerance(atol=1e-6))


@given(st.permutations(list(range(8))))
@settings(deadline=None, max_examples=50)
def test_multiset_match_any_permutation(perm):
    values = np.linspace(-3.0, 5.0, 8)
    result = multiset_match(values, values[perm], Tolerance(atol=1e-15))
    assert result.matched


def test_tolerance_validation():
    with pytest.raises(ValidationError):
        Tolerance(atol=-1.0)
    with pytest.raises(ValidationError):
        Tolerance(atol=0.0, rtol=0.0)
    with pytest.raises(ValidationError):
        Tolerance(atol=float("nan"))
    assert Tolerance(atol=1e-8, rtol=1e-6).bound(10.0) == pytest.approx(1e-8 + 1e-5)
