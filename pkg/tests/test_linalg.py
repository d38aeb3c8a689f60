import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import cgauss, rand_herm, rand_psd, rand_unitary
from oracles import quadratic_eigs
from oplaw import linalg as la
from oplaw.linalg import InvalidInput

I = 1j


def test_adjoint_trace_identity():
    assert np.array_equal(la.adjoint(np.array([[0, I], [0, 0]])), [[0, 0], [-I, 0]])
    assert la.trace(np.diag([1, 2])) == 3
    a = la.as_cmatrix(cgauss(np.random.default_rng(1), 3, 3))
    assert np.array_equal(la.mul(la.identity(3), a), a)
    assert np.array_equal(la.adjoint(la.adjoint(a)), a)


def test_arithmetic_rejects_mismatch():
    with pytest.raises(InvalidInput):
        la.add(la.identity(2), la.identity(3))
    with pytest.raises(InvalidInput):
        la.mul(la.identity(2), la.zero(3))
    with pytest.raises(InvalidInput):
        la.as_cmatrix(np.ones((2, 3)))
    with pytest.raises(InvalidInput):
        la.as_cmatrix([[np.nan]])


def test_results_are_read_only():
    a = la.as_cmatrix(np.eye(2))
    with pytest.raises(ValueError):
        a[0, 0] = 5


@pytest.mark.parametrize("h, expected", [
    ([[2, 1], [1, 2]], (3, 1)),
    ([[5, 0], [0, -1]], (5, -1)),
    ([[0, -I], [I, 0]], (1, -1)),
])
def test_hermitian_eig_examples(h, expected):
    e = la.hermitian_eig(np.array(h, dtype=complex))
    np.testing.assert_allclose(e.eigenvalues, expected, atol=1e-14)


def test_diagonal_vectors_are_identity_up_to_phase():
    e = la.hermitian_eig(np.diag([5.0, -1.0]).astype(complex))
    np.testing.assert_allclose(np.abs(e.vectors), np.eye(2), atol=1e-15)


def test_eig_rejects_non_hermitian():
    with pytest.raises(InvalidInput):
        la.hermitian_eig(np.array([[0, 1], [0, 0]], dtype=complex))


def test_convergence_error_carries_residual(monkeypatch):
    monkeypatch.setattr(la, "JACOBI_MAX_SWEEPS", 0)
    with pytest.raises(la.ConvergenceError) as info:
        la.hermitian_eig(np.array([[1, 2], [2, 1]], dtype=complex))
    assert info.value.residual > 1


def test_eig_reconstruction_and_orthonormality(rng):
    for _ in range(500):
        n = int(rng.integers(1, 17))
        h = rand_herm(rng, n) * 10 ** rng.uniform(-3, 3)
        e = la.hermitian_eig(h)
        v = e.vectors
        assert np.linalg.norm(e.reconstruct() - h) <= 1e-12 * max(1, np.linalg.norm(h))
        assert np.linalg.norm(v.conj().T @ v - np.eye(n)) <= 1e-12 * np.sqrt(n)
        assert np.all(np.diff(e.eigenvalues) <= 0)


def test_eig_matches_quadratic_formula(rng):
    for _ in range(200):
        h = rand_herm(rng, 2)
        np.testing.assert_allclose(la.hermitian_eig(h).eigenvalues, quadratic_eigs(h),
                                   rtol=0, atol=1e-12)


def test_eig_degenerate_spectrum(rng):
    u = rand_unitary(rng, 6)
    h = u @ np.diag([3, 3, 3, 1, 1, -2.0]) @ u.conj().T
    h = (h + h.conj().T) / 2
    np.testing.assert_allclose(la.hermitian_eig(h).eigenvalues, [3, 3, 3, 1, 1, -2], atol=1e-13)


@pytest.mark.parametrize("a, expected", [
    ([[0, -2], [2, 0]], 2 * np.eye(2)),
    (np.diag([-3, 4]), np.diag([3, 4])),
    ([[0, 1], [0, 0]], np.diag([0, 1])),
])
def test_abs_op_examples(a, expected):
    np.testing.assert_allclose(la.abs_op(np.array(a, dtype=complex)), expected, atol=1e-14)


def test_abs_op_squares_to_gram(rng):
    for n in (1, 3, 8):
        a = cgauss(rng, n, n)
        m = la.abs_op(a)
        assert la.is_psd(m, 1e-12)[0]
        g = a.conj().T @ a
        assert np.linalg.norm(m @ m - g) <= 1e-11 * np.linalg.norm(g)


def test_abs_op_idempotent_on_psd(rng):
    for n in (1, 2, 5, 9):
        h = rand_psd(rng, n)
        assert np.linalg.norm(la.abs_op(h) - h) <= 1e-11 * np.linalg.norm(h)


def test_abs_op_unitary_covariance(rng):
    for n in (2, 4, 7):
        a = cgauss(rng, n, n)
        u = la.hermitian_eig(rand_herm(rng, n)).vectors
        v = la.hermitian_eig(rand_herm(rng, n)).vectors
        lam = la.hermitian_eig(la.abs_op(a)).eigenvalues
        lam_uav = la.hermitian_eig(la.abs_op(u @ a @ v)).eigenvalues
        np.testing.assert_allclose(lam_uav, lam, rtol=0, atol=1e-10)


def test_apply_scalar_fn_examples(rng):
    np.testing.assert_allclose(la.apply_scalar_fn(np.diag([1.0, 2.0]), lambda t: t ** 2),
                               np.diag([1, 4]), atol=1e-14)
    np.testing.assert_allclose(la.apply_scalar_fn(4 * np.eye(2), np.sqrt), 2 * np.eye(2),
                               atol=1e-14)
    h = rand_psd(rng, 5)
    assert np.linalg.norm(la.apply_scalar_fn(h, lambda t: t) - h) <= 1e-12 * np.linalg.norm(h)


def test_apply_scalar_fn_composition(rng):
    h = rand_psd(rng, 6)
    g = lambda t: t ** 1.5
    f = lambda t: np.log1p(t)
    lhs = la.apply_scalar_fn(h, lambda t: f(g(t)))
    rhs = la.apply_scalar_fn(la.apply_scalar_fn(h, g), f)
    assert np.linalg.norm(lhs - rhs) <= 1e-10 * np.linalg.norm(lhs)


def test_apply_scalar_fn_clamps_tiny_negatives():
    h = np.diag([1.0, -1e-13]).astype(complex)
    np.testing.assert_allclose(la.apply_scalar_fn(h, np.sqrt), np.diag([1, 0]), atol=0)


def test_apply_scalar_fn_rejects():
    with pytest.raises(InvalidInput):
        la.apply_scalar_fn(np.diag([1.0, -0.5]), np.sqrt)
    with pytest.raises(InvalidInput):
        la.apply_scalar_fn(np.diag([1.0, 0.0]), np.log)


@pytest.mark.parametrize("h, flag, lam_min", [
    (np.eye(2), True, 1.0),
    ([[1, 2], [2, 1]], False, -1.0),
    (np.zeros((2, 2)), True, 0.0),
])
def test_is_psd(h, flag, lam_min):
    ok, lam = la.is_psd(np.array(h, dtype=complex), 1e-10)
    assert ok is flag
    assert lam == pytest.approx(lam_min, abs=1e-14)


def test_is_psd_rejects_non_hermitian():
    with pytest.raises(InvalidInput):
        la.is_psd(np.array([[1, 1], [0, 1]], dtype=complex))


def test_rank_one():
    e1, e2 = np.array([1, 0], complex), np.array([0, 1], complex)
    assert np.array_equal(la.rank_one(e1, e2), [[0, 1], [0, 0]])
    assert np.array_equal(la.rank_one(e1, e1), np.diag([1, 0]))
    with pytest.raises(InvalidInput):
        la.rank_one(e1, np.ones(3, complex))


def test_rank_one_square_is_scaled_projector(rng):
    x = cgauss(rng, 5)
    e = cgauss(rng, 5)
    e /= np.linalg.norm(e)
    t = la.rank_one(x, e)
    np.testing.assert_allclose(la.gram(t), np.linalg.norm(x) ** 2 * la.rank_one(e, e),
                               atol=1e-13)
    assert np.linalg.matrix_rank(t) == 1


def test_real_part():
    assert np.array_equal(la.real_part(1j * np.eye(2)), np.zeros((2, 2)))
    h = np.array([[1, 2 - I], [2 + I, 3]])
    assert np.array_equal(la.real_part(h), h)
    assert np.array_equal(la.real_part(np.array([[0, 2], [0, 0]])), [[0, 1], [1, 0]])


def test_matrix_literal_round_trip(rng):
    a = cgauss(rng, 3, 3)
    lit = json.loads(json.dumps(la.matrix_to_literal(a)))
    assert lit["dim"] == 3 and len(lit["entries"]) == 9
    assert np.array_equal(la.matrix_from_literal(lit), a)


def test_matrix_literal_rejects_bad_input():
    with pytest.raises(InvalidInput):
        la.matrix_from_literal({"dim": 2, "entries": [[1, 0]]})
    with pytest.raises(InvalidInput):
        la.matrix_from_literal({"entries": []})


finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6).flatmap(
    lambda n: st.lists(finite, min_size=2 * n * n, max_size=2 * n * n)))
def test_eig_reconstruction_property(vals):
    n = int(round((len(vals) / 2) ** 0.5))
    g = np.array(vals[: n * n]) + 1j * np.array(vals[n * n:])
    h = (g.reshape(n, n) + g.reshape(n, n).conj().T) / 2
    e = la.hermitian_eig(h)
    assert np.linalg.norm(e.reconstruct() - h) <= 1e-12 * max(1, np.linalg.norm(h))
