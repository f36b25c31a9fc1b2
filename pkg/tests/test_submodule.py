import numpy as np
import pytest

from jordanblocks import (BlaschkeProduct as B, Factorization, NotAFactor,
                          NotInvariant, Subspace, build_model_space,
                          build_submodule, classify_submodule, distance,
                          equal_up_to_unimodular, factorizations,
                          orthocomplement_factor, orthogonality_impossibility,
                          projected_cyclic_checks, star_closure_full)
from jordanblocks.submodule import match_submodule, shift_invariance_residual
from jordanblocks.subspace import contains

from conftest import random_blaschke

THETAS = [B.monomial(2), B.monomial(3), B(1, [0.5, 0.5, -0.3]),
          B(-1j, [0.2j, 0.6, 0.6, 0.6, -0.4])]


def test_shifted_submodule_of_z2():
    ms = build_model_space(B.monomial(2))
    w = build_submodule(ms, Factorization(B.monomial(1), B.monomial(1)))
    assert w.dim == 1
    assert distance(w, Subspace.span(np.array([0, 1.0]), 2)) < 1e-14
    f = classify_submodule(ms, w)
    assert f.eta.zeros == (0j,) and f.phi.zeros == (0j,)


def test_zero_and_full_submodules():
    ms = build_model_space(B(1, [0.5, -0.3]))
    full = build_submodule(ms, Factorization(B(), ms.theta))
    assert full.dim == 2
    zero = build_submodule(ms, Factorization(ms.theta, B()))
    assert zero.dim == 0


@pytest.mark.parametrize("theta", THETAS)
def test_round_trip_primary_path(theta, monkeypatch):
    ms = build_model_space(theta)

    def forbid(*args, **kwargs):
        raise AssertionError("fallback matching used")

    monkeypatch.setattr("jordanblocks.submodule.match_submodule", forbid)
    for f in factorizations(theta):
        w = build_submodule(ms, f)
        assert w.dim == f.phi.degree
        assert shift_invariance_residual(ms, w) < 1e-12
        if w.dim == 0:
            continue
        back = classify_submodule(ms, w)
        assert equal_up_to_unimodular(back.eta, f.eta)
        assert equal_up_to_unimodular(back.phi, f.phi)


def test_fallback_matcher_agrees():
    theta = B(1, [0.5, 0.5, -0.3])
    ms = build_model_space(theta)
    for f in factorizations(theta)[:-1]:
        w = build_submodule(ms, f)
        got = match_submodule(ms, w)
        assert equal_up_to_unimodular(got.eta, f.eta)


def test_lattice_order_follows_divisibility():
    theta = B(1, [0.5, 0.5, -0.3])
    ms = build_model_space(theta)
    fs = factorizations(theta)
    subs = [build_submodule(ms, f) for f in fs]
    from jordanblocks import divides
    for f1, w1 in zip(fs, subs):
        for f2, w2 in zip(fs, subs):
            # eta_1 | eta_2  <=>  W_2 inside W_1
            assert divides(f1.eta, f2.eta) == contains(w1, w2)


@pytest.mark.parametrize("theta", THETAS)
def test_orthocomplement_is_model_space_of_eta(theta):
    ms = build_model_space(theta)
    for f in factorizations(theta):
        w = build_submodule(ms, f)
        if w.dim == 0:
            continue
        comp, q_eta = orthocomplement_factor(ms, w)
        assert distance(comp, q_eta) < 1e-8


def test_not_a_factor_and_not_invariant():
    ms = build_model_space(B(1, [0.5, -0.3]))
    with pytest.raises(NotAFactor):
        build_submodule(ms, Factorization(B(1, [0.4]), B(1, [-0.3])))
    with pytest.raises(NotInvariant):
        classify_submodule(ms, Subspace.span(np.array([1.0, 0.3]), 2))


def test_projected_cyclic_checks(rng):
    for theta in THETAS + [random_blaschke(rng, 5)]:
        ms = build_model_space(theta)
        for f in factorizations(theta):
            w = build_submodule(ms, f)
            if w.dim:
                rep = projected_cyclic_checks(ms, w)
                assert rep.passed, rep.checks


def test_no_two_nonzero_submodules_are_orthogonal():
    theta = B(1, [0.5, 0.5, -0.3])
    ms = build_model_space(theta)
    subs = [w for w in (build_submodule(ms, f) for f in factorizations(theta))
            if w.dim]
    for a in subs:
        for b in subs:
            assert orthogonality_impossibility(ms, a, b) > 1e-6
        assert star_closure_full(ms, a).dim == ms.dim
