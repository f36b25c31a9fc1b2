"""Closed subspaces of finite-dimensional spaces as orthonormal frames.

Rank decisions use one rule throughout the package: a singular value
``s`` counts iff ``s > RANK_RTOL * max(s_max, 1)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

RANK_RTOL = 1e-9
SUBSPACE_TOL = 1e-7


def rank_threshold(s, rtol=RANK_RTOL):
    smax = float(s[0]) if len(s) else 0.0
    return rtol * max(smax, 1.0)


def numerical_rank(a, rtol=RANK_RTOL):
    a = np.atleast_2d(a)
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    return int(np.sum(s > rank_threshold(s, rtol)))


def orth(a, rtol=RANK_RTOL):
    """Orthonormal basis of the column space of ``a``."""
    a = np.asarray(a, dtype=complex)
    if a.ndim == 1:
        a = a[:, None]
    if a.shape[1] == 0:
        return np.zeros((a.shape[0], 0), dtype=complex)
    u, s, _ = np.linalg.svd(a, full_matrices=False)
    r = int(np.sum(s > rank_threshold(s, rtol)))
    return u[:, :r]


def null_space(a, rtol=RANK_RTOL):
    """Orthonormal basis of the kernel of ``a``."""
    a = np.atleast_2d(np.asarray(a, dtype=complex))
    n = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(n, dtype=complex)
    _, s, vh = np.linalg.svd(a, full_matrices=True)
    r = int(np.sum(s > rank_threshold(s, rtol)))
    return vh[r:].conj().T


@dataclass(frozen=True, eq=False)
class Subspace:
    """Subspace of ``C^ambient_dim`` given by an orthonormal column frame.

    A frame with zero columns encodes the zero subspace.
    """

    ambient_dim: int
    frame: np.ndarray
    rank_tol: float = RANK_RTOL

    def __post_init__(self):
        f = np.array(self.frame, dtype=complex)
        if f.ndim != 2 or f.shape[0] != self.ambient_dim:
            raise ValueError(
                f"frame shape {f.shape} incompatible with ambient dimension "
                f"{self.ambient_dim}")
        if f.shape[1]:
            err = np.abs(f.conj().T @ f - np.eye(f.shape[1])).max()
            if err > 1e-10:
                raise ValueError(f"frame is not orthonormal (error {err:.2e})")
        f.setflags(write=False)
        object.__setattr__(self, "frame", f)

    @classmethod
    def span(cls, vectors, ambient_dim=None, rank_tol=RANK_RTOL):
        """Subspace spanned by the columns of ``vectors``."""
        v = np.asarray(vectors, dtype=complex)
        if v.ndim == 1:
            v = v[:, None]
        n = v.shape[0] if ambient_dim is None else ambient_dim
        if v.size == 0:
            return cls.zero(n, rank_tol)
        return cls(n, orth(v, rank_tol), rank_tol)

    @classmethod
    def zero(cls, ambient_dim, rank_tol=RANK_RTOL):
        return cls(ambient_dim, np.zeros((ambient_dim, 0), dtype=complex),
                   rank_tol)

    @classmethod
    def full(cls, ambient_dim, rank_tol=RANK_RTOL):
        return cls(ambient_dim, np.eye(ambient_dim, dtype=complex), rank_tol)

    @property
    def dim(self):
        return self.frame.shape[1]

    def is_zero(self):
        return self.dim == 0

    def projector(self):
        return self.frame @ self.frame.conj().T

    def project(self, x):
        return self.frame @ (self.frame.conj().T @ x)

    def complement(self):
        """Orthogonal complement in the ambient space."""
        if self.dim == 0:
            return Subspace.full(self.ambient_dim, self.rank_tol)
        return Subspace(self.ambient_dim, null_space(self.frame.conj().T),
                        self.rank_tol)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient_dim={self.ambient_dim})"


def distance(s1, s2):
    """Gap ``||P1 - P2||_2`` between two subspaces (1 if dimensions differ)."""
    if s1.ambient_dim != s2.ambient_dim:
        raise ValueError("subspaces live in different ambient spaces")
    if s1.dim != s2.dim:
        return 1.0
    if s1.dim == 0:
        return 0.0
    return float(np.linalg.norm(s1.projector() - s2.projector(), 2))


def principal_cosines(s1, s2):
    """Cosines of the principal angles, in decreasing order."""
    if s1.dim == 0 or s2.dim == 0:
        return np.zeros(0)
    return np.linalg.svd(s1.frame.conj().T @ s2.frame, compute_uv=False)


def containment_residual(inner, outer):
    """``||(I - P_outer) P_inner||``; zero iff ``inner`` lies inside ``outer``."""
    if inner.dim == 0:
        return 0.0
    r = inner.frame - outer.project(inner.frame)
    return float(np.linalg.norm(r, 2))


def contains(outer, inner, tol=1e-9):
    return containment_residual(inner, outer) < tol


def invariance_residual(op, sub):
    """``||(I - P) A P||_2`` for the subspace ``sub``."""
    if sub.dim == 0:
        return 0.0
    img = op @ sub.frame
    return float(np.linalg.norm(img - sub.project(img), 2))


def compress(op, sub):
    """Matrix of ``P A|_sub`` in the frame coordinates of ``sub``."""
    return sub.frame.conj().T @ op @ sub.frame


def sum_of(*subs, rank_tol=RANK_RTOL):
    n = subs[0].ambient_dim
    return Subspace.span(np.hstack([s.frame for s in subs]), n, rank_tol)


def krylov_closure(sub, ops, max_rounds=None):
    """Smallest subspace containing ``sub`` and invariant under every op.

    Rounds of applying all ``ops`` are repeated until the dimension stops
    growing; the dimension can grow at most ``ambient_dim`` times.
    """
    if sub.dim == 0 or not ops:
        return sub
    frame = sub.frame
    rounds = max_rounds if max_rounds is not None else sub.ambient_dim
    for _ in range(rounds):
        grown = np.hstack([frame] + [op @ frame for op in ops])
        new = orth(grown, sub.rank_tol)
        if new.shape[1] == frame.shape[1]:
            break
        frame = new
    return Subspace(sub.ambient_dim, frame, sub.rank_tol)


def kron(*subs):
    """Tensor product of subspaces (Kronecker order, first factor slowest)."""
    n = int(np.prod([s.ambient_dim for s in subs]))
    if any(s.dim == 0 for s in subs):
        return Subspace.zero(n)
    frame = reduce(np.kron, [s.frame for s in subs])
    return Subspace(n, frame)


def permute_factors(vectors, dims, perm):
    """Reorder tensor factors of the columns of ``vectors``.

    ``dims`` lists the factor dimensions (Kronecker order) and ``perm`` the
    new order, as in :func:`numpy.transpose`.  This is the coordinate
    transposition unitary; it only reshuffles entries.
    """
    v = np.asarray(vectors)
    k = v.shape[1]
    t = v.reshape(tuple(dims) + (k,))
    t = np.transpose(t, tuple(perm) + (len(dims),))
    return t.reshape(-1, k)

