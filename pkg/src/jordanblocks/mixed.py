"""Mixed spaces ``H^2(D^p) (x) Q_Theta`` on degree-truncated Hardy spaces.

The Hardy factor is realized on monomials ``z^k`` with ``k_i <= L`` where
``L = degree_cap + pad``.  Submodules ``phi H^2`` are represented by
``phi * z^k`` for ``k_i <= degree_cap - deg_i(phi)``; the guard band of
``pad`` extra degrees holds the Taylor tails of the rational generators, so
those functions are exact to rounding.  Statements that involve the shifts
are certified on the interior window ``k_i <= degree_cap - deg_i(phi) - 1``
where truncation does not interfere.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from .errors import (DegreeBudget, NotDoublyCommuting, NotInvariant,
                     NotRankOne, ReconstructionMismatch,
                     TruncationInconclusive)
from .inner import BlaschkeProduct
from .subspace import (Subspace, compress, distance, invariance_residual,
                       krylov_closure, kron, null_space, orth)
from .tensor import (build_product, decompose_doubly_commuting, reducing_split,
                     TensorDecomposition)

WINDOW_TOL = 1e-6
CHECK_TOL = 1e-8
SEPARABLE_TOL = 1e-8
FIT_TOL = 1e-9


def _lower_shift(n):
    return np.eye(n, k=-1, dtype=complex)


@dataclass(frozen=True, eq=False)
class TruncatedHardy:
    """Polynomials in ``num_vars`` variables of degree ``<= length - 1`` each.

    ``zero_radius`` bounds the zero moduli of generators this space can
    represent exactly; it fixes the guard band.
    """

    num_vars: int
    degree_cap: int
    zero_radius: float = 0.5
    pad: int = field(init=False)

    def __post_init__(self):
        if self.num_vars < 1 or self.degree_cap < 1:
            raise ValueError("num_vars and degree_cap must be positive")
        r = self.zero_radius
        if r <= 0.0:
            pad = 1
        else:
            pad = int(math.ceil(math.log(1e-18) / math.log(r))) + 2 * self.degree_cap
        object.__setattr__(self, "pad", pad)

    @property
    def length(self):
        """Coefficients per variable."""
        return self.degree_cap + self.pad + 1

    @property
    def dim(self):
        return self.length ** self.num_vars

    @property
    def shape(self):
        return (self.length,) * self.num_vars

    def shifts(self):
        """Truncated ``T_{z_i}`` (isometric below the top degree ``L``)."""
        eye = np.eye(self.length, dtype=complex)
        out = []
        for i in range(self.num_vars):
            mats = [eye] * self.num_vars
            mats[i] = _lower_shift(self.length)
            out.append(reduce(np.kron, mats))
        return out

    def monomial(self, k):
        v = np.zeros(self.shape, dtype=complex)
        v[tuple(k)] = 1.0
        return v.reshape(-1)


@dataclass(frozen=True)
class InnerGenerator:
    """Separable inner function ``prod_i b_i(z_i)``."""

    per_var: tuple

    def __post_init__(self):
        object.__setattr__(self, "per_var", tuple(self.per_var))

    @classmethod
    def one(cls, num_vars):
        return cls((BlaschkeProduct(),) * num_vars)

    @property
    def num_vars(self):
        return len(self.per_var)

    @property
    def degrees(self):
        return tuple(b.degree for b in self.per_var)

    @property
    def constant(self):
        return reduce(lambda x, y: x * y, (b.constant for b in self.per_var))

    def __call__(self, points):
        """Evaluate at points of shape ``(..., num_vars)``."""
        pts = np.asarray(points, dtype=complex)
        out = np.ones(pts.shape[:-1], dtype=complex)
        for i, b in enumerate(self.per_var):
            out = out * b(pts[..., i])
        return out

    def taylor(self, length):
        """Coefficient tensor truncated to ``length`` terms per variable."""
        return reduce(np.multiply.outer, [b.taylor(length) for b in self.per_var])


def as_generator(th, phi):
    if isinstance(phi, InnerGenerator):
        gen = phi
    elif isinstance(phi, BlaschkeProduct):
        gen = InnerGenerator((phi,) + (BlaschkeProduct(),) * (th.num_vars - 1))
    else:
        gen = InnerGenerator(tuple(phi))
    if gen.num_vars != th.num_vars:
        raise ValueError(f"generator has {gen.num_vars} variables, "
                         f"space has {th.num_vars}")
    return gen


def _shifted_columns(coeffs, count, length):
    """Columns ``z^k * f`` for ``k < count`` (1-D coefficients)."""
    out = np.zeros((length, count), dtype=complex)
    for k in range(count):
        out[k:, k] = coeffs[:length - k]
    return out


def inner_submodule_frame(th, gen, cap=None):
    """Raw (non-orthonormalized) columns ``phi z^k`` for ``k_i <= cap_i - deg_i``."""
    cap = th.degree_cap if cap is None else cap
    mats = []
    for b in gen.per_var:
        count = cap - b.degree + 1
        mats.append(_shifted_columns(b.taylor(th.length), max(count, 0),
                                     th.length))
    return reduce(np.kron, mats)


def build_inner_submodule(th, phi):
    """Frame of ``phi * span{z^k : k_i <= N - deg_i(phi)}``."""
    gen = as_generator(th, phi)
    for b in gen.per_var:
        if 2 * b.degree > th.degree_cap:
            raise DegreeBudget(
                f"degree {b.degree} exceeds half the cap {th.degree_cap}")
        if b.max_modulus > th.zero_radius + 1e-12:
            raise DegreeBudget(
                f"zero modulus {b.max_modulus:.3g} beyond the resolved radius "
                f"{th.zero_radius}")
    return Subspace.span(inner_submodule_frame(th, gen), th.dim)


@dataclass
class BeurlingResult:
    generator: InnerGenerator
    vector: np.ndarray
    rank_residual: float
    match_residual: float

    @property
    def residual(self):
        return max(self.rank_residual, self.match_residual)


def _cluster_mean(roots, tol=1e-6):
    """Replace clusters of nearby roots by their mean (split multiple roots)."""
    roots = list(roots)
    out = []
    while roots:
        r = roots.pop(0)
        group = [r] + [s for s in roots if abs(s - r) < tol]
        roots = [s for s in roots if abs(s - r) >= tol]
        m = complex(np.mean(group))
        out.extend([m] * len(group))
    return out


def fit_blaschke_zeros(coeffs, max_degree, tol=FIT_TOL):
    """Zeros of a finite Blaschke product from its Taylor coefficients.

    The coefficients of a rational function of degree ``d`` obey a linear
    recurrence of order ``d`` (Kronecker's theorem); the smallest such ``d``
    is found from the singular values of the recurrence matrix of the
    coefficients scaled to unit maximum, and the zeros are the roots of the
    numerator.
    """
    c = np.asarray(coeffs, dtype=complex)
    scale = np.abs(c).max()
    lead = 0
    while lead < len(c) and abs(c[lead]) < 1e-10 * scale and lead < max_degree:
        lead += 1
    c = c[lead:] / scale
    n = len(c)
    for d in range(0, max_degree - lead + 1):
        rows = np.array([c[k - d:k + 1][::-1] for k in range(d + 1, n)])
        _, s, vh = np.linalg.svd(rows, full_matrices=False)
        if s[-1] <= tol:
            q = vh[-1].conj()
            p = np.convolve(q, c)[:d + 1]
            roots = np.roots(p[::-1]) if d else np.zeros(0)
            return [0j] * lead + _cluster_mean(roots)
    raise NotRankOne("generator is not a rational inner function of "
                     f"degree <= {max_degree}")


def _torus_points(num_vars, count=16):
    # fixed irrational angles; deterministic
    k = np.arange(count)[:, None]
    alphas = np.sqrt(np.array([2.0, 3.0, 5.0, 7.0][:num_vars]))
    return np.exp(2j * np.pi * ((k * alphas + 0.1) % 1.0))


def _eval_tensor(coeffs, points):
    """Evaluate a coefficient tensor (one axis per variable) at points."""
    n = coeffs.shape[0]
    out = []
    for x in points:
        t = coeffs
        for xi in x:
            t = np.tensordot(xi ** np.arange(n), t, axes=(0, 0))
        out.append(complex(t))
    return np.array(out)


def _window_cut(s, op):
    """``{f in s : op f in s}`` as a frame."""
    img = op @ s.frame
    resid = img - s.project(img)
    ker = null_space(resid)
    return s.frame @ ker


def beurling_extract(th, s):
    """Inner generator of ``s = phi H^2`` (truncated).

    Forms the product of ``P_s - P_{z_i s_i}`` on ``s``, where ``s_i`` is the
    part of ``s`` kept inside ``s`` by ``T_{z_i}``; on the interior window
    this is the rank-one projection onto ``C phi``.  The unit generator is
    then factored per variable and fitted by finite Blaschke products.
    """
    if s.dim == 0:
        raise NotRankOne("zero subspace has no generator")
    k = s.dim
    prod = np.eye(k, dtype=complex)
    for op in th.shifts():
        cut = _window_cut(s, op)
        z = Subspace.span(op @ cut, th.dim) if cut.shape[1] else Subspace.zero(th.dim)
        pz = s.frame.conj().T @ z.frame
        prod = prod @ (np.eye(k) - pz @ pz.conj().T)
    herm = 0.5 * (prod + prod.conj().T)
    vals, vecs = np.linalg.eigh(herm)
    rank_residual = float(max(abs(vals[-2]) if k > 1 else 0.0,
                              abs(1.0 - vals[-1]),
                              np.linalg.norm(prod - herm, 2)))
    if rank_residual > CHECK_TOL:
        raise NotRankOne(f"defect product is not a rank-one projection "
                         f"({rank_residual:.2e})")
    g = s.frame @ vecs[:, -1]
    tensor = g.reshape(th.shape)
    per_var = []
    for i in range(th.num_vars):
        unfold = np.moveaxis(tensor, i, 0).reshape(th.length, -1)
        u, sv, _ = np.linalg.svd(unfold, full_matrices=False)
        if len(sv) > 1 and sv[1] > SEPARABLE_TOL * sv[0]:
            raise NotRankOne("generator is not separable across variables")
        zeros = fit_blaschke_zeros(u[:, 0], th.degree_cap)
        per_var.append(BlaschkeProduct(1.0, zeros, guard=0.999999))
    gen = InnerGenerator(tuple(per_var))
    pts = _torus_points(th.num_vars)
    gv = _eval_tensor(tensor, pts)
    bv = gen(pts)
    lam = np.mean(gv / bv)
    match = float(np.abs(gv - lam / abs(lam) * bv).max())
    # generators are unique up to a unimodular constant; fix it so that the
    # first nonzero Taylor coefficient of each factor is positive
    canon = []
    for b in per_var:
        c = b.taylor(b.degree + 1)
        lead = c[np.flatnonzero(np.abs(c) > 1e-12)[0]]
        canon.append(b.with_constant(abs(lead) / lead))
    gen = InnerGenerator(tuple(canon))
    return BeurlingResult(gen, g, rank_residual, match)


@dataclass(frozen=True, eq=False)
class MixedSpace:
    """``H^2(D^p) (x) Q_Theta`` with ``T_i = T_{z_i} (x) I`` and ``S_j = I (x) S_j``."""

    hardy: TruncatedHardy
    jordan: object  # JordanBlockProduct without auxiliary space
    lifted: object  # same factors with the Hardy space as auxiliary
    t_ops: tuple
    s_ops: tuple

    @property
    def dim(self):
        return self.hardy.dim * self.jordan.total_dim

    @property
    def ops(self):
        return self.t_ops + self.s_ops


def build_mixed_space(hardy, spaces):
    jordan = build_product(spaces)
    lifted = build_product(spaces, aux_dim=hardy.dim)
    eye_q = np.eye(jordan.total_dim, dtype=complex)
    t_ops = tuple(np.kron(t, eye_q) for t in hardy.shifts())
    return MixedSpace(hardy, jordan, lifted, t_ops, tuple(lifted.ops))


def mixed_submodule(msp, phi, facts):
    """``phi H^2 (x) eta_1 Q_phi_1 (x) ...`` (truncated)."""
    from .tensor import tensor_submodule
    return kron(build_inner_submodule(msp.hardy, phi),
                tensor_submodule(msp.jordan, facts))


@dataclass
class MixedDecomposition:
    generator: InnerGenerator
    tensor: TensorDecomposition
    hardy_part: Subspace
    residuals: dict = field(default_factory=dict)

    @property
    def parts(self):
        return self.tensor.parts

    def __iter__(self):
        return iter((self.generator, self.tensor.parts))


def _doubly_commuting_residual(ops, m):
    rs = [compress(a, m) for a in ops]
    worst = 0.0
    for i, ri in enumerate(rs):
        for j, rj in enumerate(rs):
            if i != j:
                rjh = rj.conj().T
                worst = max(worst, float(np.linalg.norm(ri @ rjh - rjh @ ri, 2)))
    return worst


def decompose_mixed(msp, m, tol=WINDOW_TOL):
    """``m = phi H^2 (x) W_1 (x) ... (x) W_r`` for a doubly commuting submodule.

    Closes ``m`` under the adjoints of the model operators, splits off the
    Hardy part ``W``, extracts the Beurling generator of ``W``, reads off
    ``E`` with ``m = W (x) E`` and decomposes ``E`` in the Jordan block.
    Shift invariance is certified on the interior window afterwards.
    """
    if m.dim == 0:
        raise ValueError("the zero submodule has no meaningful decomposition")
    s_res = max(invariance_residual(a, m) for a in msp.s_ops)
    if s_res > CHECK_TOL:
        raise NotInvariant(f"S-invariance residual {s_res:.2e}")
    dc = _doubly_commuting_residual(msp.ops, m)
    if dc > CHECK_TOL:
        raise NotDoublyCommuting(f"commutator residual {dc:.2e}")

    m1 = krylov_closure(m, [a.conj().T for a in msp.s_ops])
    hardy_part = reducing_split(msp.lifted, m1)
    beur = beurling_extract(msp.hardy, hardy_part)
    gen = beur.generator
    if msp.hardy.degree_cap < 2 * max(gen.degrees) + 2:
        raise TruncationInconclusive(
            f"degree cap {msp.hardy.degree_cap} too small for generator "
            f"degrees {gen.degrees}")

    q = msp.jordan.total_dim
    x = np.kron(beur.vector[:, None], np.eye(q))
    y = m.frame.conj().T @ x
    e = Subspace.span(orth(y.conj().T @ y), q)
    tensor = decompose_doubly_commuting(msp.jordan, e)

    recon = distance(kron(hardy_part, e), m)
    if recon >= tol:
        raise ReconstructionMismatch(f"W (x) E differs from m by {recon:.2e}")
    beurling_gap = distance(build_inner_submodule(msp.hardy, gen), hardy_part)
    if beurling_gap >= tol or beur.match_residual >= tol:
        raise TruncationInconclusive(
            f"Hardy part is not phi H^2 on the window ({beurling_gap:.2e})")
    window = _window_residual(msp, gen, e, m)
    if window > CHECK_TOL:
        raise TruncationInconclusive(f"shift residual on window {window:.2e}")
    residuals = {
        "s_invariance": s_res,
        "doubly_commuting": dc,
        "beurling_rank": beur.rank_residual,
        "generator_match": beur.match_residual,
        "hardy_gap": beurling_gap,
        "window_invariance": window,
        "reconstruction": recon,
    }
    return MixedDecomposition(gen, tensor, hardy_part, residuals)


def _window_residual(msp, gen, e, m):
    """``max_i ||(I - P_m) T_i P||`` on ``phi z^k (x) E``, ``k_i <= N - deg_i - 1``."""
    inner = Subspace.span(
        inner_submodule_frame(msp.hardy, gen, msp.hardy.degree_cap - 1),
        msp.hardy.dim)
    win = kron(inner, e)
    from .subspace import containment_residual
    inside = containment_residual(win, m)
    return max([inside] + [invariance_residual_into(t, win, m) for t in msp.t_ops])


def invariance_residual_into(op, src, dst):
    """``||(I - P_dst) A P_src||``."""
    if src.dim == 0:
        return 0.0
    img = op @ src.frame
    return float(np.linalg.norm(img - dst.project(img), 2))
