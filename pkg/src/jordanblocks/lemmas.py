"""One-variable verification batch for a single model space."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .inner import equal_up_to_unimodular, evaluate, factorizations
from .model import (backward_shift_theta, build_model_space, defect_identities,
                    minimal_tail, parseval_frame_residual, project_constant_one,
                    project_one, star_cyclicity_check)
from .submodule import (build_submodule, classify_submodule,
                        orthogonality_impossibility, projected_cyclic_checks,
                        star_closure_full)

MAX_DEGREE = 8


@dataclass
class Check:
    """``value`` compared against ``threshold``; ``above`` flips the sense."""

    value: float
    threshold: float
    above: bool = False
    detail: dict = field(default_factory=dict)

    @property
    def passed(self):
        if self.above:
            return self.value > self.threshold
        return self.value < self.threshold


def _parseval_vectors(ms, tail, rng, trials):
    """``max |sum_p |<x, w_p>|^2 - ||x||^2|`` over random unit vectors ``x``."""
    ws = np.column_stack([backward_shift_theta(ms, p).coeffs
                          for p in range(1, tail + 1)])
    worst = 0.0
    for _ in range(trials):
        x = rng.standard_normal(ms.dim) + 1j * rng.standard_normal(ms.dim)
        x /= np.linalg.norm(x)
        worst = max(worst, abs(float(np.sum(np.abs(ws.conj().T @ x) ** 2)) - 1.0))
    return worst


def verify_lemmas(theta, seed=0, trials=4):
    """Run the eight one-variable checks on ``Q_theta``.

    Returns a dict of :class:`Check` keyed by check name, in a fixed order.
    """
    if not 1 <= theta.degree <= MAX_DEGREE:
        raise ValueError(f"degree must be between 1 and {MAX_DEGREE}")
    rng = np.random.default_rng(seed)
    ms = build_model_space(theta)
    out = {}

    r1, r2 = defect_identities(ms)
    out["defect_identities"] = Check(max(r1, r2), 1e-9,
                                     detail={"ss_star": r1, "s_star_s": r2})

    w = backward_shift_theta(ms, 1)
    t0 = complex(evaluate(theta, 0.0))
    out["norm_identity"] = Check(abs(w.norm() ** 2 - (1.0 - abs(t0) ** 2)), 1e-10)

    gap = np.linalg.norm(project_one(ms).coeffs - project_constant_one(ms).coeffs)
    out["project_one"] = Check(float(gap), 1e-10)

    tail = minimal_tail(ms)
    frame = parseval_frame_residual(ms, tail)
    vec = _parseval_vectors(ms, tail, rng, trials)
    out["parseval_frame"] = Check(max(frame, vec), 1e-9,
                                  detail={"tail": tail, "operator": frame,
                                          "vectors": vec})

    cyclic = star_cyclicity_check(ms)
    out["star_cyclicity"] = Check(0.0 if cyclic else 1.0, 0.5)

    subs = []
    worst_trip = 0.0
    cyclic_fail = 0
    for f in factorizations(theta):
        wsub = build_submodule(ms, f)
        if wsub.dim == 0:
            continue
        back = classify_submodule(ms, wsub)
        same = (equal_up_to_unimodular(back.eta, f.eta)
                and equal_up_to_unimodular(back.phi, f.phi))
        worst_trip = max(worst_trip, 0.0 if same else 1.0)
        if not projected_cyclic_checks(ms, wsub).passed:
            cyclic_fail += 1
        subs.append(wsub)
    out["submodules"] = Check(max(worst_trip, float(cyclic_fail)), 0.5,
                              detail={"count": len(subs),
                                      "projected_cyclic_failures": cyclic_fail})

    cosine = min((orthogonality_impossibility(ms, a, b)
                  for i, a in enumerate(subs) for b in subs[i + 1:]), default=1.0)
    out["orthogonality"] = Check(cosine, 1e-6, above=True)

    short = sum(star_closure_full(ms, s).dim != ms.dim for s in subs)
    out["star_closure_full"] = Check(float(short), 0.5)
    return out
