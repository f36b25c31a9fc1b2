import numpy as np
import pytest
from scipy.linalg import sqrtm

from jordanblocks import (BlaschkeProduct as B, IllConditioned, TailTooShort,
                          backward_shift_theta, build_model_space,
                          compressed_shift, defect_identities, minimal_tail,
                          parseval_frame_residual, project_one,
                          star_cyclicity_check)
from jordanblocks.model import (project_constant_one, taylor_at, tm_basis)

from conftest import random_blaschke


def test_monomial_space_basis_and_shift():
    ms = build_model_space(B.monomial(3))
    assert ms.dim == 3
    np.testing.assert_allclose(ms.basis, ms.grid[:, None] ** np.arange(3),
                               atol=1e-15)
    np.testing.assert_allclose(compressed_shift(ms).matrix,
                               np.eye(3, k=-1), atol=1e-15)


def test_single_zero_values():
    ms = build_model_space(B(1, [0.5]))
    np.testing.assert_allclose(compressed_shift(ms).matrix, [[0.5]], atol=1e-15)
    w = backward_shift_theta(ms, 1)
    assert abs(w.norm() ** 2 - 0.75) < 1e-15


def test_tm_basis_orthonormal_with_repeated_zeros():
    ms = build_model_space(B(1, [0.6, 0.6, -0.2j, 0.6]))
    assert ms.gram_residual() < 1e-12


def test_shift_eigenvalues_are_zeros(rng):
    theta = random_blaschke(rng, 5, 0.8)
    s = compressed_shift(build_model_space(theta)).matrix
    ev = np.linalg.eigvals(s)
    from jordanblocks import zeros_match
    assert zeros_match(ev, theta.zeros, 1e-8)


def test_adjoint_shift_against_kernel_oracle(rng):
    # S^* k_a = conj(a) k_a on the span of the Szego kernels k_a
    zeros = np.array([0.5, -0.3 + 0.2j, 0.1j, 0.7])
    theta = B(1, zeros)
    # gram[i, j] = <k_j, k_i> = 1 / (1 - conj(a_j) a_i)
    gram = 1.0 / (1.0 - np.conj(zeros)[None, :] * zeros[:, None])
    half = sqrtm(gram)
    oracle = half @ np.diag(np.conj(zeros)) @ np.linalg.inv(half)
    s = compressed_shift(build_model_space(theta)).matrix
    np.testing.assert_allclose(np.linalg.svd(s.conj().T, compute_uv=False),
                               np.linalg.svd(oracle, compute_uv=False),
                               atol=1e-10)
    # singular values: ones and |theta(0)|
    sv = np.linalg.svd(s, compute_uv=False)
    np.testing.assert_allclose(sv[:-1], 1.0, atol=1e-12)
    assert abs(sv[-1] - abs(theta(0.0))) < 1e-12


def test_defect_identities(rng):
    for _ in range(5):
        ms = build_model_space(random_blaschke(rng, 6, 0.9))
        r1, r2 = defect_identities(ms)
        assert r1 < 1e-11 and r2 < 1e-11


def test_project_one_closed_form_matches_direct(rng):
    ms = build_model_space(random_blaschke(rng, 4))
    a = project_one(ms)
    b = project_constant_one(ms)
    np.testing.assert_allclose(a.coeffs, b.coeffs, atol=1e-12)
    assert a.residual < 1e-12


def test_backward_shifts_of_monomial():
    ms = build_model_space(B.monomial(3))
    np.testing.assert_allclose(backward_shift_theta(ms, 2).coeffs, [0, 1, 0],
                               atol=1e-14)
    s_adj = compressed_shift(ms).matrix.conj().T
    np.testing.assert_allclose(s_adj @ backward_shift_theta(ms, 1).coeffs,
                               backward_shift_theta(ms, 2).coeffs, atol=1e-14)


def test_backward_shift_power_relation(rng):
    ms = build_model_space(random_blaschke(rng, 4, 0.8))
    s_adj = compressed_shift(ms).matrix.conj().T
    w = backward_shift_theta(ms, 1).coeffs
    for m in (2, 5, 300):
        np.testing.assert_allclose(np.linalg.matrix_power(s_adj, m - 1) @ w,
                                   backward_shift_theta(ms, m).coeffs,
                                   atol=1e-13)


def test_parseval_frame():
    ms = build_model_space(B.monomial(4))
    assert parseval_frame_residual(ms, 4) < 1e-14
    ms = build_model_space(B(1, [0.5, -0.3, 0.2j]))
    assert parseval_frame_residual(ms, minimal_tail(ms)) < 1e-12
    with pytest.raises(TailTooShort):
        parseval_frame_residual(ms, 10)
    with pytest.raises(TailTooShort):
        parseval_frame_residual(build_model_space(B.monomial(4)), 3)


def test_star_cyclicity(rng):
    for _ in range(3):
        assert star_cyclicity_check(build_model_space(random_blaschke(rng, 5)))


def test_grid_refinement_and_failure():
    theta = B(1, [0.99, -0.99j], guard=0.999)
    ms = build_model_space(theta)
    assert ms.gram_residual() < 1e-10
    with pytest.raises(IllConditioned):
        build_model_space(theta, n_points=64, max_points=128)


def test_basis_change_rotates_coordinates(rng):
    ms = build_model_space(B(1, [0.5, -0.3, 0.1j]))
    q, _ = np.linalg.qr(rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
    rot = ms.with_basis_change(q)
    s0 = compressed_shift(ms).matrix
    s1 = compressed_shift(rot).matrix
    np.testing.assert_allclose(s1, q.conj().T @ s0 @ q, atol=1e-13)


def test_taylor_at_zero_vanishing():
    theta = B(1, [0.4, 0.4, -0.2])
    ms = build_model_space(theta)
    # theta * TM functions of phi vanish at zeros of eta; check raw derivatives
    coeffs = np.eye(3)
    t, fmax = taylor_at(ms, coeffs, 0.4, 2)
    direct = tm_basis(theta.zeros, np.array([0.4]))[0]
    np.testing.assert_allclose(t[0], direct, atol=1e-12)
    assert fmax > 0
