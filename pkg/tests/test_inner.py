import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from jordanblocks import (BlaschkeProduct as B, DegreeTooLarge, PoleProximity,
                          divides, equal_up_to_unimodular, evaluate,
                          factorizations, multiply, quotient, zeros_match)

from conftest import random_blaschke


def test_factor_convention():
    z = np.array([0.3, -0.2j, 0.1 + 0.4j])
    np.testing.assert_allclose(B(1, [0]).__call__(z), z)
    a = 0.5 - 0.25j
    np.testing.assert_allclose(evaluate(B(1, [a]), z),
                               (z - a) / (1 - np.conj(a) * z))
    assert abs(evaluate(B(1, [a]), a)) == 0


def test_unimodular_on_circle(rng):
    b = random_blaschke(rng, 5)
    t = np.exp(2j * np.pi * rng.uniform(size=50))
    np.testing.assert_allclose(np.abs(b(t)), 1.0, atol=1e-13)


def test_validation():
    with pytest.raises(ValueError):
        B(2.0, [])
    with pytest.raises(ValueError):
        B(1, [1.2])
    with pytest.raises(ValueError):
        B(1, [0.97])
    B(1, [0.97], guard=0.99)


def test_pole_proximity():
    b = B(1, [0.5], guard=0.99)
    with pytest.raises(PoleProximity):
        evaluate(b, 2.0)


@pytest.mark.parametrize("theta, expected", [
    (B.monomial(2), [((), (0, 0)), ((0,), (0,)), ((0, 0), ())]),
    (B(1, [0.5]), [((), (0.5,)), ((0.5,), ())]),
])
def test_factorizations_small(theta, expected):
    got = [(f.eta.zeros, f.phi.zeros) for f in factorizations(theta)]
    assert len(got) == len(expected)
    for (e, p), (ee, pp) in zip(got, expected):
        assert zeros_match(e, ee) and zeros_match(p, pp)


def test_factorization_count_and_products(rng):
    theta = B(1j, [0.5, 0.5, -0.3, 0.2j, 0.2j, 0.2j])
    fs = factorizations(theta)
    assert len(fs) == 3 * 2 * 4
    for f in fs:
        assert f.eta.constant == 1
        prod = f.product()
        assert equal_up_to_unimodular(prod, theta)
        assert abs(prod.constant - theta.constant) < 1e-15
    keys = [f.eta.sorted_zeros() for f in fs]
    assert len({tuple(k) for k in keys}) == len(fs)


def test_factorization_degree_limit():
    with pytest.raises(DegreeTooLarge):
        factorizations(B.monomial(13))


def test_quotient_and_divides():
    theta = B(-1, [0.5, -0.3, 0])
    q = quotient(theta, B(1, [-0.3]))
    assert zeros_match(q.zeros, [0.5, 0])
    assert quotient(theta, B(1, [0.4])) is None
    assert divides(B(1, [0, 0.5]), theta)
    assert not divides(B(1, [0, 0]), theta)


def test_zero_matching_is_order_free():
    assert zeros_match([0.1, 0.2j, -0.3], [-0.3, 0.1, 0.2j])
    assert not zeros_match([0.1, 0.1], [0.1, 0.2])
    assert not zeros_match([0.1], [0.1, 0.1])


def test_taylor_matches_fft_oracle(rng):
    b = random_blaschke(rng, 4, 0.7)
    n = 512
    w = np.exp(2j * np.pi * np.arange(n) / n)
    fft = np.fft.fft(b(w)) / n
    np.testing.assert_allclose(b.taylor(20), fft[:20], atol=1e-14)


zero_st = st.builds(lambda r, t: r * np.exp(2j * np.pi * t),
                    st.floats(0, 0.9), st.floats(0, 1))


@settings(max_examples=60, deadline=None)
@given(st.lists(zero_st, max_size=4), st.lists(zero_st, max_size=4))
def test_multiply_then_divide(z1, z2):
    b1, b2 = B(1, z1), B(1j, z2)
    prod = multiply(b1, b2)
    assert prod.degree == b1.degree + b2.degree
    q = quotient(prod, b1)
    assert q is not None and equal_up_to_unimodular(q, b2)
    x = 0.3 - 0.1j
    assert abs(prod(x) - b1(x) * b2(x)) < 1e-13
