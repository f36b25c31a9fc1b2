"""Submodules ``eta * Q_phi`` of a one-variable Jordan block ``Q_theta``."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NoMatch, NotAFactor, NotInvariant
from .inner import (MAX_FACTORIZATION_DEGREE, BlaschkeProduct, Factorization,
                    equal_up_to_unimodular, evaluate, factorizations, quotient)
from .model import (backward_shift_samples, backward_shift_theta,
                    compressed_shift, taylor_at, tm_basis)
from .subspace import (SUBSPACE_TOL, Subspace, distance, invariance_residual,
                       krylov_closure, numerical_rank)

INVARIANCE_TOL = 1e-8


def build_submodule(ms, f):
    """Frame of ``eta * Q_phi`` inside ``Q_theta`` for ``f = (eta, phi)``.

    The functions ``eta * u_k`` (``u_k`` the TM basis of ``Q_phi``) are the
    range of ``T_eta P_{Q_phi} T_eta^*``; they are sampled on the grid,
    projected onto ``Q_theta`` and orthonormalized.
    """
    q = quotient(ms.theta, f.left)
    if q is None or not equal_up_to_unimodular(q, f.right):
        raise NotAFactor("eta * phi does not reproduce theta")
    if f.right.degree == 0:
        return Subspace.zero(ms.dim)
    w, e = ms.grid_at(ms.n_points)
    funcs = evaluate(f.left, w)[:, None] * tm_basis(f.right.zeros, w)
    coords = e.conj().T @ funcs / ms.n_points
    return Subspace.span(coords, ms.dim)


def shift_invariance_residual(ms, w):
    return invariance_residual(compressed_shift(ms).matrix, w)


def _vanishing_orders(ms, w):
    """For each distinct zero ``a`` of theta, the common vanishing order of W."""
    orders = []
    for a, mult in ms.theta.distinct_zeros():
        t, fmax = taylor_at(ms, w.frame, a, mult)
        k = 0
        while k < mult:
            # rounding in the Cauchy sum is amplified by radius**-k
            noise = 1e3 * np.finfo(float).eps * max(fmax, 1.0) * 0.05 ** -k
            if np.abs(t[k]).max() > max(1e-8, noise):
                break
            k += 1
        orders.append((a, k))
    return orders


def classify_submodule(ms, w, tol=SUBSPACE_TOL):
    """The factorization ``(eta, phi)`` with ``w = eta * Q_phi``.

    ``eta`` collects the zeros of theta at which every element of ``w``
    vanishes, with multiplicities from Cauchy-integral derivatives.  If the
    candidate does not reproduce ``w`` within ``tol``, all factorizations
    of theta are matched by subspace distance instead.
    """
    res = shift_invariance_residual(ms, w)
    if res > INVARIANCE_TOL:
        raise NotInvariant(f"invariance residual {res:.2e}")
    if w.dim == 0 or w.dim > ms.dim:
        raise ValueError("classification needs 0 < dim W <= dim Q_theta")
    eta_zeros = []
    for a, k in _vanishing_orders(ms, w):
        eta_zeros.extend([a] * k)
    eta = BlaschkeProduct(1.0, eta_zeros, guard=ms.theta.guard)
    phi = quotient(ms.theta, eta)
    if phi.degree == w.dim:
        cand = Factorization(eta, phi)
        if distance(build_submodule(ms, cand), w) < tol:
            return cand
    return match_submodule(ms, w, tol)


def match_submodule(ms, w, tol=SUBSPACE_TOL):
    """Brute-force classification over every factorization of theta."""
    if ms.theta.degree > MAX_FACTORIZATION_DEGREE:
        raise NoMatch("degree too large for exhaustive matching")
    best = None
    for f in factorizations(ms.theta):
        if f.right.degree != w.dim:
            continue
        d = distance(build_submodule(ms, f), w)
        if best is None or d < best[0]:
            best = (d, f)
    if best is None or best[0] >= tol:
        raise NoMatch("no factorization reproduces the subspace")
    return best[1]


@dataclass
class CyclicReport:
    """Outcome of :func:`projected_cyclic_checks`."""

    factorization: Factorization
    projected_norm: float
    identity_residual: float
    alpha: float
    alpha_expected: float
    eigen_residual: float
    krylov_rank: int
    dim: int

    @property
    def checks(self):
        return {
            "projection_nonzero": self.projected_norm > 1e-8,
            "projection_identity": self.identity_residual < 1e-9,
            "eigen_relation": (self.eigen_residual < 1e-9
                               and abs(self.alpha - self.alpha_expected) < 1e-9),
            "projected_cyclic": self.krylov_rank == self.dim,
        }

    @property
    def passed(self):
        return all(self.checks.values())


def projected_cyclic_checks(ms, w):
    """Check the behaviour of ``P_W T_z^* theta`` on a nonzero submodule W.

    (i) ``P_W T_z^* theta != 0``; (ii) it equals ``eta T_z^* phi``;
    (iii) it is an eigenvector of ``P_W P_{C T_z^* theta} P_W`` with
    eigenvalue ``(||T_z^* phi|| / ||T_z^* theta||)**2``; (iv) its compressed
    backward-shift orbit spans W.
    """
    if w.dim == 0:
        raise ValueError("W must be nonzero")
    f = classify_submodule(ms, w)
    eta, phi = f.left, f.right
    t = backward_shift_theta(ms, 1).coeffs
    g = w.project(t)

    pts, e = ms.grid_at(ms.n_points)
    phi_s = evaluate(phi, pts)
    target = ms.coords(evaluate(eta, pts) * backward_shift_samples(phi_s, pts))
    identity_residual = float(np.linalg.norm(g - target))

    tn2 = float(np.vdot(t, t).real)
    a_op = w.projector() @ np.outer(t, t.conj()) @ w.projector() / tn2
    ag = a_op @ g
    alpha = float(np.vdot(g, ag).real / np.vdot(g, g).real)
    alpha_expected = (1.0 - abs(complex(evaluate(phi, 0.0))) ** 2) / tn2
    eigen_residual = float(np.linalg.norm(ag - alpha * g))

    s_adj = compressed_shift(ms).matrix.conj().T
    vecs = [g]
    for _ in range(ms.dim - 1):
        vecs.append(w.project(s_adj @ vecs[-1]))
    krylov_rank = numerical_rank(np.column_stack(vecs))

    return CyclicReport(f, float(np.linalg.norm(g)), identity_residual, alpha,
                        alpha_expected, eigen_residual, krylov_rank, w.dim)


def orthogonality_impossibility(ms, w1, w2):
    """Largest principal cosine between two nonzero submodules."""
    if w1.dim == 0 or w2.dim == 0:
        raise ValueError("both submodules must be nonzero")
    return float(np.linalg.norm(w1.frame.conj().T @ w2.frame, 2))


def star_closure_full(ms, w):
    """Closure of W under ``S_theta^*``; equals ``Q_theta`` for nonzero W."""
    if w.dim == 0:
        raise ValueError("W must be nonzero")
    s_adj = compressed_shift(ms).matrix.conj().T
    return krylov_closure(w, [s_adj], max_rounds=ms.dim)


def orthocomplement_factor(ms, w):
    """``Q_theta (-) W`` together with ``Q_eta`` realized inside ``Q_theta``."""
    f = classify_submodule(ms, w)
    pts, e = ms.grid_at(ms.n_points)
    if f.left.degree == 0:
        q_eta = Subspace.zero(ms.dim)
    else:
        q_eta = Subspace.span(ms.coords(tm_basis(f.left.zeros, pts)), ms.dim)
    return w.complement(), q_eta
