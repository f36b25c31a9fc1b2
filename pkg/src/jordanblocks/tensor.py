"""Jordan blocks ``Q_theta1 (x) ... (x) Q_thetan`` of the polydisc.

Coordinates are Kronecker products of the TM coordinates of the factors,
first factor slowest.  An optional leading auxiliary space ``C^aux_dim``
models the coefficient space of ``H (x) Q_Theta``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import (NotASubmodule, NotDoublyCommuting, NotReducing,
                     ReconstructionMismatch, SizeBudgetExceeded)
from .model import backward_shift_theta, compressed_shift
from .submodule import build_submodule, classify_submodule
from .subspace import (SUBSPACE_TOL, Subspace, compress, distance,
                       invariance_residual, krylov_closure, kron, orth,
                       permute_factors)

MAX_FACTORS = 4
SIZE_BUDGET = 4096
COMMUTE_TOL = 1e-10
CHECK_TOL = 1e-8


def _embed(mats, j):
    """Kronecker product with ``mats[j]`` in slot ``j`` and identities elsewhere."""
    return reduce(np.kron, mats[:j] + [mats[j]] + mats[j + 1:])


@dataclass(frozen=True, eq=False)
class JordanBlockProduct:
    factors: tuple
    aux_dim: int
    ops: tuple

    @property
    def n(self):
        return len(self.factors)

    @property
    def dims(self):
        return [f.dim for f in self.factors]

    @property
    def total_dim(self):
        return int(np.prod(self.dims))

    @property
    def ambient_dim(self):
        return self.total_dim * max(self.aux_dim, 1)

    @property
    def axis_dims(self):
        """Tensor-factor dimensions of the ambient space, auxiliary first."""
        return ([self.aux_dim] if self.aux_dim else []) + self.dims

    @property
    def thetas(self):
        return tuple(f.theta for f in self.factors)

    def adjoints(self, coords=None):
        coords = range(self.n) if coords is None else coords
        return [self.ops[j].conj().T for j in coords]

    def defect_unit_vector(self, coords=None):
        """Kronecker product of the unit vectors ``T_z^* theta_j / ||.||``."""
        coords = range(self.n) if coords is None else coords
        vecs = []
        for j in coords:
            t = backward_shift_theta(self.factors[j], 1).coeffs
            vecs.append(t / np.linalg.norm(t))
        return reduce(np.kron, vecs, np.ones(1, dtype=complex))


def commutator_norms(ops):
    """Largest ``||[A_i, A_j]||`` and ``||[A_i^*, A_j]||`` over ``i != j``."""
    c1 = c2 = 0.0
    for i, a in enumerate(ops):
        for j, b in enumerate(ops):
            if i == j:
                continue
            c1 = max(c1, np.linalg.norm(a @ b - b @ a, 2))
            ah = a.conj().T
            c2 = max(c2, np.linalg.norm(ah @ b - b @ ah, 2))
    return float(c1), float(c2)


def build_product(spaces, aux_dim=0):
    """Assemble the tuple ``S_Theta`` on ``C^aux (x) Q_theta1 (x) ...``."""
    spaces = tuple(spaces)
    if not 1 <= len(spaces) <= MAX_FACTORS:
        raise ValueError(f"need between 1 and {MAX_FACTORS} factors")
    dims = [s.dim for s in spaces]
    total = int(np.prod(dims)) * max(aux_dim, 1)
    if total > SIZE_BUDGET:
        raise SizeBudgetExceeded(f"ambient dimension {total} > {SIZE_BUDGET}")
    eyes = [np.eye(d, dtype=complex) for d in dims]
    lead = [np.eye(aux_dim, dtype=complex)] if aux_dim else []
    ops = []
    for j, s in enumerate(spaces):
        mats = lead + eyes[:j] + [compressed_shift(s).matrix] + eyes[j + 1:]
        ops.append(_embed(mats, len(lead) + j))
    for a in ops:
        a.setflags(write=False)
    c1, c2 = commutator_norms(ops)
    if max(c1, c2) > COMMUTE_TOL:
        raise ArithmeticError(f"factor operators fail to doubly commute "
                              f"({c1:.2e}, {c2:.2e})")
    return JordanBlockProduct(spaces, aux_dim, tuple(ops))


@dataclass
class ResidualReport:
    residual: float
    tol: float
    per_index: list

    @property
    def passed(self):
        return self.residual < self.tol


def is_submodule(jb, m, tol=CHECK_TOL):
    """``max_j ||(I - P_M) S_j P_M||``."""
    per = [invariance_residual(a, m) for a in jb.ops]
    return ResidualReport(max(per), tol, per)


def is_reducing(jb, m, tol=CHECK_TOL):
    per = [max(invariance_residual(a, m), invariance_residual(a.conj().T, m))
           for a in jb.ops]
    return ResidualReport(max(per), tol, per)


def compressions(jb, m):
    """The compressed tuple ``R_j = P_M S_j|_M`` in frame coordinates."""
    return [compress(a, m) for a in jb.ops]


def is_doubly_commuting(jb, m, tol=CHECK_TOL):
    """``max_{i != j} ||R_i R_j^* - R_j^* R_i||`` on the submodule ``m``."""
    sub = is_submodule(jb, m)
    if not sub.passed:
        raise NotASubmodule(f"invariance residual {sub.residual:.2e}")
    rs = compressions(jb, m)
    per = []
    for i, ri in enumerate(rs):
        for j, rj in enumerate(rs):
            if i != j:
                rjh = rj.conj().T
                per.append(float(np.linalg.norm(ri @ rjh - rjh @ ri, 2)))
    return ResidualReport(max(per, default=0.0), tol, per)


def star_krylov_closure(jb, m, coords):
    """Closure of ``m`` under ``S_j^*`` for the (0-based) coordinates given."""
    return krylov_closure(m, jb.adjoints(coords))


def _split_leading(m, lead_dim, unit):
    """Recover ``L`` from ``m = L (x) C^r`` using the unit vector ``unit``.

    ``P_L = (I (x) unit)^* P_M (I (x) unit)``; the reconstruction distance
    between ``L (x) C^r`` and ``m`` is returned with ``L``.
    """
    r = unit.shape[0]
    x = np.kron(np.eye(lead_dim), unit[:, None])
    y = m.frame.conj().T @ x
    pl = y.conj().T @ y
    lsub = Subspace.span(orth(pl), lead_dim) if m.dim else Subspace.zero(lead_dim)
    recon = kron(lsub, Subspace.full(r))
    return lsub, distance(recon, m)


def reducing_split(jb, m, tol=SUBSPACE_TOL):
    """The subspace ``L`` of the auxiliary space with ``m = L (x) Q_Theta``."""
    if jb.aux_dim < 1:
        raise ValueError("reducing_split needs an auxiliary space")
    red = is_reducing(jb, m)
    if not red.passed:
        raise NotReducing(f"reducing residual {red.residual:.2e}")
    lsub, dist = _split_leading(m, jb.aux_dim, jb.defect_unit_vector())
    if dist >= tol:
        raise ReconstructionMismatch(f"L (x) Q_Theta differs by {dist:.2e}")
    return lsub


@dataclass
class TensorDecomposition:
    """``m = W_1 (x) ... (x) W_n`` with the factorization of each ``W_i``."""

    thetas: tuple
    parts: list
    residual: float = 0.0

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    @property
    def subspaces(self):
        return [w for w, _ in self.parts]

    @property
    def factorizations(self):
        return [f for _, f in self.parts]


def tensor_submodule(jb, facts):
    """``eta_1 Q_phi_1 (x) ... (x) eta_n Q_phi_n`` in the product coordinates."""
    if jb.aux_dim:
        raise ValueError("tensor submodules live in products without aux space")
    return kron(*(build_submodule(ms, f) for ms, f in zip(jb.factors, facts)))


def _peel(factors, ops, m):
    """Split off the first tensor factor of a doubly commuting submodule."""
    dims = [f.dim for f in factors]
    d1, rest = dims[0], int(np.prod(dims[1:]))
    m1 = krylov_closure(m, [a.conj().T for a in ops[1:]])
    vecs = []
    for f in factors[1:]:
        t = backward_shift_theta(f, 1).coeffs
        vecs.append(t / np.linalg.norm(t))
    w1, dist1 = _split_leading(m1, d1, reduce(np.kron, vecs))
    if dist1 >= SUBSPACE_TOL or w1.dim == 0:
        raise ReconstructionMismatch(
            f"star closure is not of the form W (x) Q ({dist1:.2e})")
    # coordinates of m in W1 (x) Q_rest, then swap to Q_rest (x) W1
    proj = np.kron(w1.frame.conj().T, np.eye(rest))
    inner = proj @ m.frame
    swapped = permute_factors(inner, [w1.dim, rest], [1, 0])
    t1 = backward_shift_theta(factors[0], 1).coeffs
    v = w1.frame.conj().T @ t1
    v = v / np.linalg.norm(v)
    e1, dist2 = _split_leading(Subspace.span(swapped, rest * w1.dim), rest, v)
    if dist2 >= SUBSPACE_TOL:
        raise ReconstructionMismatch(f"m is not W1 (x) E1 ({dist2:.2e})")
    return w1, e1


def decompose_doubly_commuting(jb, m, order=None, tol=SUBSPACE_TOL):
    """Write a doubly commuting submodule as ``W_1 (x) ... (x) W_n``.

    Follows the constructive proof: close ``m`` under the adjoints of the
    coordinates ``2..n``, read off ``W_1`` by a reducing split, split ``m``
    as ``W_1 (x) E_1`` in the transposed arrangement and recurse on
    ``E_1``.  ``order`` processes the coordinates in a different sequence;
    the result is reported in the original coordinate order either way.
    """
    if jb.aux_dim:
        raise ValueError("decomposition works on products without aux space")
    if m.dim == 0:
        raise ValueError("the zero submodule has no meaningful decomposition")
    dc = is_doubly_commuting(jb, m)
    if not dc.passed:
        raise NotDoublyCommuting(f"commutator residual {dc.residual:.2e}")
    order = list(range(jb.n)) if order is None else list(order)
    factors = [jb.factors[j] for j in order]
    frame = permute_factors(m.frame, jb.dims, order)
    sub = Subspace(m.ambient_dim, frame)
    sub_jb = build_product(factors) if order != list(range(jb.n)) else jb
    pieces = []
    fs, ops = list(factors), list(sub_jb.ops)
    while len(fs) > 1:
        w, sub = _peel(fs, ops, sub)
        pieces.append(w)
        fs = fs[1:]
        ops = list(build_product(fs).ops)
    pieces.append(sub)
    ws = [None] * jb.n
    for j, w in zip(order, pieces):
        ws[j] = w
    parts = [(w, classify_submodule(ms, w)) for w, ms in zip(ws, jb.factors)]
    dist = distance(kron(*ws), m)
    if dist >= tol:
        raise ReconstructionMismatch(f"tensor reconstruction off by {dist:.2e}")
    return TensorDecomposition(jb.thetas, parts, dist)
