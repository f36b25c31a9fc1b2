"""Finite Blaschke products: evaluation, products, divisibility.

A finite Blaschke product is stored as a unimodular constant together with
its zero multiset.  The factor convention is

    b_a(z) = (z - a) / (1 - conj(a) z),

so that ``b_0(z) = z``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import DegreeTooLarge, PoleProximity

UNIMODULAR_TOL = 1e-12
ZERO_MATCH_TOL = 1e-9
DEFAULT_GUARD = 0.95
MAX_FACTORIZATION_DEGREE = 12
LABEL_FLOOR = 1e-12


def _fmt_complex(a):
    re = a.real if abs(a.real) >= LABEL_FLOOR else 0.0
    im = a.imag if abs(a.imag) >= LABEL_FLOOR else 0.0
    if im == 0.0:
        return f"{re + 0.0:.12g}"
    if re == 0.0:
        return f"{im:.12g}j"
    return f"{re:.12g}{im:+.12g}j"


def _zero_key(a):
    return (round(a.real, 9) + 0.0, round(a.imag, 9) + 0.0)


@dataclass(frozen=True)
class BlaschkeProduct:
    """Inner function ``constant * prod_j b_{a_j}``.

    Parameters
    ----------
    constant : complex
        Unimodular scalar.
    zeros : sequence of complex
        Zero multiset inside the open disc.
    guard : float
        Largest admitted zero modulus.  Zeros close to the circle make the
        boundary quadrature in :mod:`jordanblocks.model` expensive.
    """

    constant: complex = 1.0 + 0.0j
    zeros: tuple = ()
    guard: float = field(default=DEFAULT_GUARD, compare=False, repr=False)

    def __post_init__(self):
        c = complex(self.constant)
        if abs(abs(c) - 1.0) > UNIMODULAR_TOL:
            raise ValueError(f"constant {c!r} is not unimodular")
        zs = tuple(complex(a) for a in self.zeros)
        for a in zs:
            if not abs(a) < 1.0:
                raise ValueError(f"zero {a!r} is not inside the unit disc")
            if abs(a) > self.guard + 1e-15:
                raise ValueError(
                    f"zero {a!r} exceeds the modulus guard {self.guard}")
        object.__setattr__(self, "constant", c)
        object.__setattr__(self, "zeros", zs)

    @classmethod
    def monomial(cls, degree, constant=1.0):
        """``constant * z**degree``."""
        return cls(constant, (0j,) * degree)

    @property
    def degree(self):
        return len(self.zeros)

    @property
    def max_modulus(self):
        return max((abs(a) for a in self.zeros), default=0.0)

    def __call__(self, z):
        return evaluate(self, z)

    def __mul__(self, other):
        return multiply(self, other)

    def label(self):
        """Readable name such as ``1``, ``z^2``, ``z*b(0.5)`` or ``-1*b(0.5j)``.

        Parts below 1e-12 are dropped and the rest printed with 12
        significant digits, so that numerically recovered zeros print like
        the exact ones.
        """
        k = sum(1 for a in self.zeros if abs(a) < LABEL_FLOOR)
        parts = ["z" if k == 1 else f"z^{k}"] if k else []
        rest = sorted((a for a in self.zeros if abs(a) >= LABEL_FLOOR), key=_zero_key)
        parts.extend(f"b({_fmt_complex(a)})" for a in rest)
        if abs(self.constant - 1.0) > LABEL_FLOOR:
            parts.insert(0, _fmt_complex(self.constant))
        return "*".join(parts) if parts else "1"

    def sorted_zeros(self):
        """Zeros in the canonical (real, imag) order."""
        return tuple(sorted(self.zeros, key=_zero_key))

    def distinct_zeros(self, tol=ZERO_MATCH_TOL):
        """List of ``(zero, multiplicity)`` pairs, clustered within ``tol``."""
        groups = []
        for a in self.sorted_zeros():
            for g in groups:
                if abs(g[0] - a) <= tol:
                    g[1] += 1
                    break
            else:
                groups.append([a, 1])
        return [(a, m) for a, m in groups]

    def with_constant(self, constant):
        return BlaschkeProduct(constant, self.zeros, guard=self.guard)

    def taylor(self, n):
        """First ``n`` Taylor coefficients at the origin."""
        coeffs = np.zeros(n, dtype=complex)
        coeffs[0] = self.constant
        for a in self.zeros:
            # multiply by (z - a) * sum_k (conj(a) z)^k
            geo = np.conj(a) ** np.arange(n)
            num = np.convolve(coeffs, [-a, 1.0])[:n]
            coeffs = np.convolve(num, geo)[:n]
        return coeffs


@dataclass(frozen=True)
class Factorization:
    """Ordered inner factorization ``theta = left * right``.

    ``left`` plays the role of the multiplier eta, ``right`` the role of phi
    in the submodule ``eta * Q_phi``.
    """

    left: BlaschkeProduct
    right: BlaschkeProduct

    @property
    def eta(self):
        return self.left

    @property
    def phi(self):
        return self.right

    def product(self):
        return multiply(self.left, self.right)

    def label(self):
        """``(eta,phi)`` with both factors written by :meth:`BlaschkeProduct.label`."""
        return f"({self.left.label()},{self.right.label()})"


def evaluate(b, z):
    """Evaluate ``b`` at ``z`` (scalar or array).

    Raises
    ------
    PoleProximity
        If ``|1 - conj(a) z| < 1e-13`` for some zero ``a``.
    """
    z = np.asarray(z, dtype=complex)
    out = np.full(z.shape, b.constant, dtype=complex)
    for a in b.zeros:
        den = 1.0 - np.conj(a) * z
        if np.any(np.abs(den) < 1e-13):
            raise PoleProximity(f"evaluation point near the pole 1/conj({a})")
        out = out * (z - a) / den
    return out[()] if out.ndim == 0 else out


def multiply(b1, b2):
    guard = max(b1.guard, b2.guard)
    return BlaschkeProduct(b1.constant * b2.constant, b1.zeros + b2.zeros,
                           guard=guard)


def factorizations(b):
    """All inner factorizations ``b = eta * phi`` up to unimodular constants.

    ``eta`` is normalized to constant 1 and ``phi`` carries ``b.constant``.
    The list is ordered lexicographically by the sorted zero multiset of
    ``eta``; its length is ``prod(m_k + 1)`` over distinct zeros.
    """
    if b.degree > MAX_FACTORIZATION_DEGREE:
        raise DegreeTooLarge(
            f"degree {b.degree} exceeds {MAX_FACTORIZATION_DEGREE}")
    groups = b.distinct_zeros()
    # keep the caller's representatives of each cluster
    reps = []
    for a, m in groups:
        members = [z for z in b.zeros if abs(z - a) <= ZERO_MATCH_TOL]
        reps.append(members[:m])
    out = []
    for counts in itertools.product(*(range(m + 1) for _, m in groups)):
        left = tuple(z for members, k in zip(reps, counts) for z in members[:k])
        right = tuple(z for members, k in zip(reps, counts) for z in members[k:])
        out.append(Factorization(
            BlaschkeProduct(1.0, left, guard=b.guard),
            BlaschkeProduct(b.constant, right, guard=b.guard)))
    out.sort(key=lambda f: tuple(_zero_key(a) for a in f.left.sorted_zeros()))
    return out


def zeros_match(z1, z2, tol=ZERO_MATCH_TOL):
    """True iff the multisets ``z1`` and ``z2`` agree under optimal pairing."""
    z1 = np.asarray(z1, dtype=complex)
    z2 = np.asarray(z2, dtype=complex)
    if z1.size != z2.size:
        return False
    if z1.size == 0:
        return True
    cost = np.abs(z1[:, None] - z2[None, :])
    rows, cols = linear_sum_assignment(cost)
    return bool(cost[rows, cols].max() <= tol)


def equal_up_to_unimodular(b1, b2, tol=ZERO_MATCH_TOL):
    return zeros_match(b1.zeros, b2.zeros, tol)


def quotient(theta, eta, tol=ZERO_MATCH_TOL):
    """The inner function ``theta / eta``; ``None`` when ``eta`` does not divide."""
    remaining = list(theta.zeros)
    for a in eta.zeros:
        dist = [abs(a - z) for z in remaining]
        if not dist or min(dist) > tol:
            return None
        remaining.pop(int(np.argmin(dist)))
    return BlaschkeProduct(theta.constant / eta.constant, tuple(remaining),
                           guard=theta.guard)


def divides(eta, theta, tol=ZERO_MATCH_TOL):
    """True iff the zero multiset of ``eta`` is contained in that of ``theta``."""
    return quotient(theta, eta, tol) is not None
