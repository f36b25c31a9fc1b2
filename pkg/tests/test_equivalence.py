import itertools

import numpy as np
import pytest

from jordanblocks import (AmbientMismatch, BlaschkeProduct as B, Subspace,
                          TruncatedHardy, are_unitarily_equivalent,
                          build_mixed_space, build_model_space, build_product,
                          decompose_doubly_commuting, decompose_mixed,
                          factorizations, fingerprint, intertwiner_oracle,
                          mixed_submodule, tensor_submodule)
from jordanblocks.equivalence import zero_fingerprint

Z = B.monomial(1)
Z2 = B.monomial(2)


def all_tensor_submodules(jb):
    out = []
    for facts in itertools.product(*(factorizations(t) for t in jb.thetas)):
        m = tensor_submodule(jb, facts)
        d = decompose_doubly_commuting(jb, m) if m.dim else None
        out.append((m, d))
    return out


def test_fingerprint_encoding():
    jb = build_product([build_model_space(Z2)] * 2)
    f = factorizations(Z2)
    d = decompose_doubly_commuting(jb, tensor_submodule(jb, [f[1], f[0]]))
    fp = fingerprint(d)
    zero = (0.0, 0.0)
    assert fp.factors == (((zero,), (zero,)), ((), (zero, zero)))
    full = decompose_doubly_commuting(jb, tensor_submodule(jb, [f[0], f[0]]))
    assert all(eta == () for eta, _ in fingerprint(full).factors)
    assert fingerprint(None) == zero_fingerprint()
    assert fp.describe() == "(z,z) (x) (1,z^2)"


def test_fingerprint_ignores_zero_order():
    t1 = B(1, [0.5, -0.3, 0.2j])
    t2 = B(1, [0.2j, 0.5, -0.3])
    fps = []
    for t in (t1, t2):
        jb = build_product([build_model_space(t)])
        f = [g for g in factorizations(t) if g.eta.degree == 1][0]
        fps.append(fingerprint(decompose_doubly_commuting(
            jb, tensor_submodule(jb, [f]))))
    assert fps[0] == fps[1]


@pytest.mark.parametrize("thetas", [
    (Z2, Z2), (B(1, [0.5, -1 / 3]), Z2), (B(1, [0.5]), B(1, [0.5, 0.5])),
    (Z, B(1j, [0.3, -0.3j])),
])
def test_oracle_agrees_with_fingerprint(thetas):
    jb = build_product([build_model_space(t) for t in thetas])
    subs = all_tensor_submodules(jb)
    for (m1, d1), (m2, d2) in itertools.combinations_with_replacement(subs, 2):
        assert intertwiner_oracle(jb, m1, m2) == (fingerprint(d1) == fingerprint(d2))


def test_swapped_roles_are_not_equivalent():
    jb = build_product([build_model_space(Z2)] * 2)
    f = factorizations(Z2)
    m1 = tensor_submodule(jb, [f[1], f[0]])
    m2 = tensor_submodule(jb, [f[0], f[1]])
    assert not intertwiner_oracle(jb, m1, m2)
    d1 = decompose_doubly_commuting(jb, m1)
    d2 = decompose_doubly_commuting(jb, m2)
    assert not are_unitarily_equivalent(d1, d2)
    assert are_unitarily_equivalent(d1, d1)


def test_equivalence_relation_over_scenario_set():
    jb = build_product([build_model_space(B(1, [0.5, 0.5])),
                        build_model_space(B(1, [-0.2, 0.4j]))])
    ds = [d for _, d in all_tensor_submodules(jb) if d is not None]
    rel = np.array([[are_unitarily_equivalent(a, b) for b in ds] for a in ds])
    assert rel.diagonal().all()
    assert (rel == rel.T).all()
    assert ((rel.astype(int) @ rel.astype(int) > 0) <= rel).all()


def test_fingerprint_invariant_under_basis_change(rng):
    thetas = [B(1, [0.5, -0.3, 0.2j]), B(1, [0.4, 0.4])]
    spaces = [build_model_space(t) for t in thetas]
    jb = build_product(spaces)
    us = []
    for s in spaces:
        q, _ = np.linalg.qr(rng.standard_normal((s.dim, s.dim))
                            + 1j * rng.standard_normal((s.dim, s.dim)))
        us.append(q)
    rotated = build_product([s.with_basis_change(u) for s, u in zip(spaces, us)])
    big = np.kron(us[0], us[1])
    for m, d in all_tensor_submodules(jb):
        if d is None:
            continue
        m_rot = Subspace.span(big.conj().T @ m.frame, m.ambient_dim)
        assert fingerprint(decompose_doubly_commuting(rotated, m_rot)) == fingerprint(d)


def test_mixed_equivalence_ignores_hardy_generator():
    msp = build_mixed_space(TruncatedHardy(1, 8), [build_model_space(Z2)])
    f = factorizations(Z2)
    a = decompose_mixed(msp, mixed_submodule(msp, Z, [f[1]]))
    b = decompose_mixed(msp, mixed_submodule(msp, B(1, [0.5]), [f[1]]))
    c = decompose_mixed(msp, mixed_submodule(msp, Z, [f[0]]))
    assert are_unitarily_equivalent(a, b)
    assert not are_unitarily_equivalent(c, a)
    plain = build_product([build_model_space(Z2)])
    p = decompose_doubly_commuting(plain, tensor_submodule(plain, [f[1]]))
    with pytest.raises(AmbientMismatch):
        are_unitarily_equivalent(a, p)


def test_ambient_mismatch_between_products():
    j1 = build_product([build_model_space(Z2)])
    j2 = build_product([build_model_space(B(1, [0.5, 0.1]))])
    d1 = decompose_doubly_commuting(j1, tensor_submodule(j1, [factorizations(Z2)[0]]))
    d2 = decompose_doubly_commuting(j2, tensor_submodule(j2, [factorizations(j2.thetas[0])[0]]))
    with pytest.raises(AmbientMismatch):
        are_unitarily_equivalent(d1, d2)
