import numpy as np
from hypothesis import given, settings, strategies as st

from jordanblocks import (BlaschkeProduct as B, Subspace, build_model_space,
                          build_product, build_submodule, classify_submodule,
                          compressed_shift, decompose_doubly_commuting,
                          defect_identities, distance, equal_up_to_unimodular,
                          factorizations, fingerprint, tensor_submodule)
from jordanblocks.subspace import krylov_closure

zero = st.builds(lambda r, t: r * np.exp(2j * np.pi * t),
                 st.floats(0, 0.85), st.floats(0, 1))
# coarse grid so that repeated zeros occur often
grid_zero = st.sampled_from([0j, 0.5, -0.3, 0.4j, 0.2 - 0.2j])
blaschke = st.lists(zero, min_size=1, max_size=5).map(lambda zs: B(1, zs))
grid_blaschke = st.lists(grid_zero, min_size=1, max_size=4).map(lambda zs: B(-1, zs))


@settings(max_examples=40, deadline=None)
@given(blaschke)
def test_shift_is_contraction_with_rank_one_defects(theta):
    ms = build_model_space(theta)
    s = compressed_shift(ms).matrix
    assert np.linalg.norm(s, 2) <= 1 + 1e-12
    r1, r2 = defect_identities(ms)
    assert max(r1, r2) < 1e-10
    defect = np.eye(ms.dim) - s.conj().T @ s
    assert np.linalg.matrix_rank(defect, tol=1e-9) == 1


@settings(max_examples=30, deadline=None)
@given(grid_blaschke, st.data())
def test_round_trip_with_repeated_zeros(theta, data):
    ms = build_model_space(theta)
    f = data.draw(st.sampled_from(factorizations(theta)))
    w = build_submodule(ms, f)
    if w.dim:
        back = classify_submodule(ms, w)
        assert equal_up_to_unimodular(back.eta, f.eta)


@settings(max_examples=25, deadline=None)
@given(grid_blaschke, grid_blaschke, st.data())
def test_tensor_submodules_decompose(t1, t2, data):
    jb = build_product([build_model_space(t1), build_model_space(t2)])
    facts = [data.draw(st.sampled_from(factorizations(t))) for t in (t1, t2)]
    m = tensor_submodule(jb, facts)
    if m.dim == 0:
        return
    d = decompose_doubly_commuting(jb, m)
    for f, g in zip(facts, d.factorizations):
        assert equal_up_to_unimodular(f.eta, g.eta)
    assert fingerprint(d) == fingerprint(decompose_doubly_commuting(jb, m, order=[1, 0]))


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 6), st.integers(0, 6), st.integers(0, 2 ** 32 - 1))
def test_distance_is_a_metric_on_equal_dimensions(n, k, seed):
    rng = np.random.default_rng(seed)
    k = min(k, n)
    subs = [Subspace.span(rng.standard_normal((n, k)), n) for _ in range(3)]
    a, b, c = subs
    assert distance(a, a) < 1e-12
    assert abs(distance(a, b) - distance(b, a)) < 1e-12
    assert distance(a, c) <= distance(a, b) + distance(b, c) + 1e-12
    assert 0 <= distance(a, b) <= 1 + 1e-12


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_krylov_closure_contains_and_is_idempotent(seed):
    rng = np.random.default_rng(seed)
    a = np.triu(rng.standard_normal((5, 5)), 1)
    s = Subspace.span(rng.standard_normal((5, 1)), 5)
    c = krylov_closure(s, [a])
    assert distance(krylov_closure(c, [a]), c) < 1e-10
    assert np.linalg.norm(s.frame - c.project(s.frame)) < 1e-10
