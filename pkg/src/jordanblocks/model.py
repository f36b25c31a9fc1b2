"""The model space ``Q_theta = H^2 (-) theta H^2`` of a finite Blaschke product.

Vectors of ``Q_theta`` are coefficient vectors in the Takenaka-Malmquist
(TM) basis

    e_k(z) = sqrt(1 - |a_k|^2) / (1 - conj(a_k) z) * prod_{j<k} b_{a_j}(z),

which is orthonormal in ``H^2`` for any zero sequence, repeated zeros
included.  Ambient ``H^2`` functions are handled through their samples on a
uniform grid of the unit circle; inner products are trapezoid sums, which
converge geometrically for rational functions with poles off the closed
disc.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import IllConditioned, TailTooShort
from .inner import BlaschkeProduct, evaluate
from .subspace import numerical_rank

GRAM_TOL = 1e-10
MIN_POINTS = 256
MAX_POINTS = 2 ** 16
CAUCHY_RADIUS = 0.05
CAUCHY_POINTS = 64


def tm_basis(zeros, z):
    """Evaluate the TM basis of the zero sequence ``zeros`` at points ``z``.

    Returns an array of shape ``z.shape + (len(zeros),)``.
    """
    z = np.asarray(z, dtype=complex)
    out = np.empty(z.shape + (len(zeros),), dtype=complex)
    prefix = np.ones(z.shape, dtype=complex)
    for k, a in enumerate(zeros):
        ac = np.conj(a)
        out[..., k] = math.sqrt(1.0 - abs(a) ** 2) / (1.0 - ac * z) * prefix
        prefix = prefix * (z - a) / (1.0 - ac * z)
    return out


def _next_pow2(n):
    return 1 << max(0, int(math.ceil(math.log2(max(n, 1)))))


def _decay_length(r, eps=1e-16):
    """Smallest ``K`` with ``r**K < eps`` (0 for ``r == 0``)."""
    if r == 0.0:
        return 0
    return int(math.floor(math.log(eps) / math.log(r))) + 1


def default_points(theta):
    return max(MIN_POINTS, _next_pow2(_decay_length(theta.max_modulus)))


def circle(n):
    return np.exp(2j * np.pi * np.arange(n) / n)


@dataclass(frozen=True)
class DenseOperator:
    """Matrix of an operator between coefficient spaces, with tags."""

    matrix: np.ndarray
    domain: str = ""
    codomain: str = ""

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)

    def __matmul__(self, other):
        other = other.matrix if isinstance(other, DenseOperator) else other
        return self.matrix @ np.asarray(other)

    def __rmatmul__(self, other):
        return np.asarray(other) @ self.matrix

    @property
    def shape(self):
        return self.matrix.shape

    @property
    def H(self):
        return DenseOperator(self.matrix.conj().T, self.codomain, self.domain)

    def norm(self):
        return float(np.linalg.norm(self.matrix, 2))


@dataclass(frozen=True)
class ModelVector:
    """Element of a model space in TM coordinates.

    ``residual`` records how far the sampled ambient function was from its
    projection onto the model space (RMS over the grid); it is zero for
    vectors built directly from coordinates.
    """

    coeffs: np.ndarray
    space: "ModelSpace" = field(repr=False)
    residual: float = 0.0

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.coeffs, dtype=dtype)

    def norm(self):
        return float(np.linalg.norm(self.coeffs))

    def samples(self):
        return self.space.basis @ self.coeffs


@dataclass(frozen=True, eq=False)
class ModelSpace:
    """``Q_theta`` with its TM basis realized on ``n_points`` boundary nodes.

    ``transform`` is an optional unitary change of basis: the working basis
    is ``tm_basis(...) @ transform``.
    """

    theta: BlaschkeProduct
    n_points: int
    transform: np.ndarray | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def dim(self):
        return self.theta.degree

    @property
    def grid(self):
        return self.grid_at(self.n_points)[0]

    @property
    def basis(self):
        return self.grid_at(self.n_points)[1]

    def basis_at(self, z):
        e = tm_basis(self.theta.zeros, z)
        return e if self.transform is None else e @ self.transform

    def grid_at(self, n):
        """Nodes and basis samples on an ``n``-point grid (cached)."""
        if n not in self._cache:
            w = circle(n)
            self._cache[n] = (w, self.basis_at(w))
        return self._cache[n]

    def coords(self, samples, n=None):
        """TM coordinates of the projection of an ambient function."""
        n = self.n_points if n is None else n
        _, e = self.grid_at(n)
        return e.conj().T @ samples / n

    def vector(self, samples, n=None):
        """Project ambient samples to a :class:`ModelVector`."""
        n = self.n_points if n is None else n
        _, e = self.grid_at(n)
        c = self.coords(samples, n)
        res = float(np.sqrt(np.mean(np.abs(samples - e @ c) ** 2)))
        return ModelVector(c, self, res)

    def gram_residual(self, n=None):
        n = self.n_points if n is None else n
        _, e = self.grid_at(n)
        return float(np.abs(e.conj().T @ e / n - np.eye(self.dim)).max())

    def with_basis_change(self, unitary):
        """Same space, basis rotated by ``unitary`` (coordinates follow)."""
        u = np.asarray(unitary, dtype=complex)
        t = u if self.transform is None else self.transform @ u
        return ModelSpace(self.theta, self.n_points, t)


def build_model_space(theta, n_points=None, max_points=MAX_POINTS):
    """Model space of ``theta`` with a verified orthonormal TM basis.

    The grid starts at ``max(256, 2**ceil(log2 K))`` with ``r**K < 1e-16``
    (``r`` the largest zero modulus) and is doubled until the Gram matrix is
    the identity within 1e-10.
    """
    if theta.degree < 1:
        raise ValueError("model space of a constant inner function is {0}")
    n = default_points(theta) if n_points is None else n_points
    while True:
        ms = ModelSpace(theta, n)
        if ms.gram_residual() < GRAM_TOL:
            return ms
        if 2 * n > max_points:
            raise IllConditioned(
                f"Gram residual {ms.gram_residual():.2e} at {n} points")
        n *= 2


# ambient H^2 operations on grid samples

def shift_samples(f, w):
    """``T_z f``."""
    return w * f


def backward_shift_samples(f, w):
    """``T_z^* f = (f - f(0)) / z`` with ``f(0)`` the quadrature mean."""
    return (f - np.mean(f)) / w


def compressed_shift(ms):
    """Matrix of ``S_theta = P T_z|Q_theta``: entries ``<z e_j, e_k>``."""
    w, e = ms.grid_at(ms.n_points)
    s = e.conj().T @ (w[:, None] * e) / ms.n_points
    return DenseOperator(s, "Q_theta", "Q_theta")


def _points_for_shift(ms, m):
    need = max(_decay_length(ms.theta.max_modulus), ms.dim + 1) + 8
    if ms.n_points - m >= need:
        return ms.n_points
    return _next_pow2(m + need)


def backward_shift_theta(ms, m=1):
    """Coordinates of ``T_z^{*m} theta``.

    The ambient function ``(theta - Taylor head) / z**m`` is sampled on the
    grid and projected; ``residual`` measures its distance from ``Q_theta``.
    """
    if m < 1:
        raise ValueError("m must be positive")
    n = _points_for_shift(ms, m)
    w, _ = ms.grid_at(n)
    th = evaluate(ms.theta, w)
    head = np.fft.fft(th)[:m] / n
    g = (th - np.polynomial.polynomial.polyval(w, head)) * w ** (-m)
    return ms.vector(g, n)


def project_one(ms):
    """Coordinates of ``P_Q 1 = 1 - conj(theta(0)) theta``."""
    w, _ = ms.grid_at(ms.n_points)
    t0 = complex(evaluate(ms.theta, 0.0))
    return ms.vector(1.0 - np.conj(t0) * evaluate(ms.theta, w))


def project_constant_one(ms):
    """Direct projection of the constant function 1 (no closed form used)."""
    return ms.vector(np.ones(ms.n_points, dtype=complex))


def defect_identities(ms):
    """Frobenius residuals of both rank-one defect formulas.

    Returns ``(||I - S S^* - v v^*||_F, ||I - S^* S - w w^*||_F)`` with
    ``v = P_Q 1`` and ``w = T_z^* theta``.
    """
    s = compressed_shift(ms).matrix
    eye = np.eye(ms.dim)
    v = project_one(ms).coeffs
    w = backward_shift_theta(ms, 1).coeffs
    r1 = np.linalg.norm(eye - s @ s.conj().T - np.outer(v, v.conj()))
    r2 = np.linalg.norm(eye - s.conj().T @ s - np.outer(w, w.conj()))
    return float(r1), float(r2)


def parseval_frame_residual(ms, tail):
    """``||I - sum_{p<=tail} w_p w_p^*||_F`` for ``w_p = T_z^{*p} theta``.

    Requires ``tail >= dim`` and ``r**(2 tail) < 1e-12``.
    """
    r = ms.theta.max_modulus
    if tail < ms.dim or r ** (2 * tail) >= 1e-12:
        raise TailTooShort(f"tail {tail} too short for zero modulus {r:.3g}")
    acc = np.zeros((ms.dim, ms.dim), dtype=complex)
    for p in range(1, tail + 1):
        w = backward_shift_theta(ms, p).coeffs
        acc += np.outer(w, w.conj())
    return float(np.linalg.norm(np.eye(ms.dim) - acc))


def minimal_tail(ms, eps=1e-16):
    """A tail length for :func:`parseval_frame_residual` with margin."""
    r = ms.theta.max_modulus
    base = 0 if r == 0.0 else int(math.ceil(math.log(eps) / (2 * math.log(r))))
    return max(ms.dim, base + 4 * ms.dim)


def star_cyclicity_check(ms):
    """True iff ``T_z^* theta`` is cyclic for ``S_theta^*``."""
    s_adj = compressed_shift(ms).matrix.conj().T
    v = backward_shift_theta(ms, 1).coeffs
    cols = [v]
    for _ in range(ms.dim - 1):
        cols.append(s_adj @ cols[-1])
    return numerical_rank(np.column_stack(cols)) == ms.dim


def taylor_at(ms, coeffs, a, order, radius=CAUCHY_RADIUS,
              points=CAUCHY_POINTS):
    """Taylor coefficients ``f^(k)(a)/k!``, ``k < order``, by Cauchy integrals.

    ``coeffs`` is a ``dim x m`` matrix of TM coordinates (one function per
    column).  Returns an ``order x m`` array and the maximum modulus of the
    functions on the integration circle.
    """
    t = np.exp(2j * np.pi * np.arange(points) / points)
    vals = ms.basis_at(a + radius * t) @ coeffs
    fk = np.fft.fft(vals, axis=0)[:order] / points
    scale = radius ** -np.arange(order, dtype=float)
    return fk * scale[:, None], float(np.abs(vals).max(initial=0.0))
