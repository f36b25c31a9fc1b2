"""Unitary equivalence of doubly commuting submodules.

Two doubly commuting submodules of the same Jordan block are unitarily
equivalent exactly when their tensor factors coincide; the Hardy generator
of a mixed submodule plays no role because ``phi H^2`` and ``psi H^2`` are
always unitarily equivalent.  :func:`fingerprint` encodes that invariant and
:func:`intertwiner_oracle` checks it independently by solving for
intertwining maps.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import polar

from .errors import AmbientMismatch
from .inner import BlaschkeProduct, _zero_key, equal_up_to_unimodular
from .mixed import MixedDecomposition
from .subspace import compress, null_space

INTERTWINE_TOL = 1e-8
ORACLE_SEEDS = 3


def _zero_multiset(b):
    return tuple(sorted(_zero_key(a) for a in b.zeros))


@dataclass(frozen=True)
class Fingerprint:
    """Canonical form: sorted ``(eta, phi)`` zero multisets per coordinate.

    ``zero`` marks the zero submodule, which has no factors; ``hardy``
    records whether a Hardy factor is present.
    """

    factors: tuple
    hardy: bool = False
    zero: bool = False

    def describe(self):
        if self.zero:
            return "0"
        def name(keys):
            return BlaschkeProduct(1.0, [complex(*k) for k in keys],
                                   guard=1.0 - 1e-15).label()

        parts = [f"({name(e)},{name(p)})" for e, p in self.factors]
        return " (x) ".join((["H"] if self.hardy else []) + parts)


def zero_fingerprint(hardy=False):
    return Fingerprint((), hardy, True)


def fingerprint(decomposition):
    """Fingerprint of a tensor or mixed decomposition (``None`` means zero)."""
    if decomposition is None:
        return zero_fingerprint()
    hardy = isinstance(decomposition, MixedDecomposition)
    facts = decomposition.tensor.factorizations if hardy \
        else decomposition.factorizations
    return Fingerprint(
        tuple((_zero_multiset(f.eta), _zero_multiset(f.phi)) for f in facts),
        hardy)


def _ambient(decomposition):
    if isinstance(decomposition, MixedDecomposition):
        return (decomposition.tensor.thetas, decomposition.generator.num_vars)
    return (decomposition.thetas, 0)


def are_unitarily_equivalent(d1, d2):
    """True iff the two decompositions share their tensor factors.

    Raises :class:`AmbientMismatch` if the Jordan blocks or the number of
    Hardy variables differ.
    """
    (t1, h1), (t2, h2) = _ambient(d1), _ambient(d2)
    if h1 != h2 or len(t1) != len(t2) or not all(
            equal_up_to_unimodular(a, b) for a, b in zip(t1, t2)):
        raise AmbientMismatch("decompositions live over different ambients")
    return fingerprint(d1) == fingerprint(d2)


def _intertwiner_system(r1, r2):
    """Rows of ``X A - B X = 0`` for all pairs, on row-major ``vec(X)``."""
    d2, d1 = r2[0].shape[0], r1[0].shape[0]
    rows = []
    for a, b in zip(r1, r2):
        for x, y in ((a, b), (a.conj().T, b.conj().T)):
            rows.append(np.kron(np.eye(d2), x.T) - np.kron(y, np.eye(d1)))
    return np.vstack(rows)


def intertwiner_oracle(jb, m1, m2, seed=0, tol=INTERTWINE_TOL):
    """Whether a unitary intertwines the compressed tuples on ``m1`` and ``m2``.

    Solves the linear system for all ``X`` with ``X R_i = R'_i X`` and
    ``X R_i^* = R'_i^* X``, takes a seeded random element of the solution
    space and tests whether its polar unitary still intertwines; up to
    ``ORACLE_SEEDS`` random elements are tried before answering False.
    A True answer is certified by an explicit unitary; False is heuristic
    and could miss a unitary in a degenerate solution space.
    """
    if m1.dim != m2.dim:
        return False
    d = m1.dim
    if d == 0:
        return True
    r1 = [compress(a, m1) for a in jb.ops]
    r2 = [compress(a, m2) for a in jb.ops]
    basis = null_space(_intertwiner_system(r1, r2))
    if basis.shape[1] == 0:
        return False
    for k in range(ORACLE_SEEDS):
        rng = np.random.default_rng(seed + k)
        coef = rng.standard_normal(basis.shape[1]) \
            + 1j * rng.standard_normal(basis.shape[1])
        x = (basis @ coef).reshape(d, d)
        u, _ = polar(x)
        if np.linalg.norm(u.conj().T @ u - np.eye(d), 2) > tol:
            continue
        worst = max(max(np.linalg.norm(u @ a - b @ u, 2),
                        np.linalg.norm(u @ a.conj().T - b.conj().T @ u, 2))
                    for a, b in zip(r1, r2))
        if worst < tol:
            return True
    return False
