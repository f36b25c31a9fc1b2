"""Execute scenario actions and assemble deterministic JSON reports."""
from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .equivalence import (are_unitarily_equivalent, fingerprint,
                          intertwiner_oracle)
from .errors import JordanBlocksError, ParseError
from .inner import _zero_key
from .lemmas import verify_lemmas
from .mixed import _doubly_commuting_residual, decompose_mixed
from .scenario import SCHEMA_VERSION, build_ambient, realize_subspace
from .subspace import invariance_residual
from .tensor import (decompose_doubly_commuting, is_doubly_commuting,
                     is_reducing, is_submodule, reducing_split)

NOISE_FLOOR = 1e-12
SIGNIFICANT = 12


def _zeros(b):
    return [[a.real, a.imag] for a in sorted(b.zeros, key=_zero_key)]


def clean(obj):
    """Round floats to 12 significant digits and clear values below the noise floor."""
    if isinstance(obj, dict):
        return {k: clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [clean(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if abs(x) < NOISE_FLOOR:
            return 0.0
        return float(f"{x:.{SIGNIFICANT}g}")
    if isinstance(obj, complex):
        return clean([obj.real, obj.imag])
    return obj


def dumps(report):
    return json.dumps(clean(report), indent=2, ensure_ascii=False) + "\n"


class _Context:
    """Ambient, realized subspaces and cached decompositions of a scenario."""

    def __init__(self, scn):
        self.scn = scn
        self.amb = build_ambient(scn)
        self.subs = {}
        for name, spec in scn.subspaces.items():
            try:
                self.subs[name] = realize_subspace(self.amb, spec, f"subspaces.{name}")
            except ParseError:
                raise
            except JordanBlocksError as exc:
                self.subs[name] = exc

    def subspace(self, name):
        m = self.subs[name]
        if isinstance(m, Exception):
            raise m
        return m

    def decompose(self, name, order=None):
        m = self.subspace(name)
        tol = self.scn.tolerances
        if m.dim == 0:
            return None
        if self.amb.mixed is not None:
            return decompose_mixed(self.amb.mixed, m, tol=tol["window"])
        return decompose_doubly_commuting(self.amb.jb, m, order=order,
                                          tol=tol["subspace"])


def _expect(record, expect):
    """Compare ``expect`` entries with the record output; returns failures."""
    out = record.get("output", {})
    bad = []
    for key, want in expect.items():
        if key == "error":
            continue
        if out.get(key) != want:
            bad.append(key)
    return bad


def _check(ctx, p):
    m = ctx.subspace(p["subspace"])
    tol = ctx.scn.tolerances
    amb = ctx.amb
    res, out = {}, {"dim": m.dim}
    if amb.mixed is not None:
        inv = max(invariance_residual(a, m) for a in amb.mixed.s_ops)
        res["invariance"] = inv
        out["submodule"] = inv < tol["invariance"]
        dc = _doubly_commuting_residual(amb.mixed.ops, m)
        res["doubly_commuting"] = dc
        out["doubly_commuting"] = dc < tol["commute"]
        return res, out, {"submodule": True}
    sub = is_submodule(amb.jb, m, tol["invariance"])
    res["invariance"] = sub.residual
    out["submodule"] = sub.passed
    if amb.jb.aux_dim:
        red = is_reducing(amb.jb, m, tol["invariance"])
        res["reducing"] = red.residual
        out["reducing"] = red.passed
    elif sub.passed:
        dc = is_doubly_commuting(amb.jb, m, tol["commute"])
        res["doubly_commuting"] = dc.residual
        out["doubly_commuting"] = dc.passed
    return res, out, {"submodule": True}


def _parts(tensor):
    return [{"dim": w.dim, "label": f.label(),
             "eta": _zeros(f.eta), "phi": _zeros(f.phi)} for w, f in tensor.parts]


def _decompose(ctx, p):
    d = ctx.decompose(p["subspace"], p.get("order"))
    if d is None:
        return {}, {"zero": True, "labels": [], "parts": []}, {}
    if ctx.amb.mixed is not None:
        gen = d.generator
        out = {"generator": "(x)".join(b.label() for b in gen.per_var),
               "generator_zeros": [_zeros(b) for b in gen.per_var],
               "labels": [f.label() for f in d.tensor.factorizations],
               "parts": _parts(d.tensor)}
        return dict(d.residuals), out, {}
    out = {"labels": [f.label() for f in d.factorizations],
           "parts": _parts(d)}
    return {"reconstruction": d.residual}, out, {}


def _split(ctx, p):
    m = ctx.subspace(p["subspace"])
    low = reducing_split(ctx.amb.jb, m, ctx.scn.tolerances["subspace"])
    return {}, {"dim": low.dim, "aux_dim": ctx.amb.jb.aux_dim}, {}


def _equiv(ctx, p):
    d1 = ctx.decompose(p["left"])
    d2 = ctx.decompose(p["right"])
    f1, f2 = fingerprint(d1), fingerprint(d2)
    if d1 is None or d2 is None:
        equiv = f1 == f2
    else:
        equiv = are_unitarily_equivalent(d1, d2)
    out = {"equivalent": equiv,
           "left": f1.describe(), "right": f2.describe()}
    implied = {}
    if ctx.amb.mixed is None and not ctx.amb.jb.aux_dim:
        # the intertwiner oracle must agree with the fingerprint verdict
        out["oracle"] = intertwiner_oracle(
            ctx.amb.jb, ctx.subspace(p["left"]), ctx.subspace(p["right"]),
            seed=ctx.scn.seed, tol=ctx.scn.tolerances["intertwine"])
        implied["oracle"] = equiv
    return {}, out, implied


def _verify(ctx, p):
    theta = p.get("theta", ctx.scn.factors[0])
    checks = verify_lemmas(theta, seed=ctx.scn.seed, trials=p.get("trials", 4))
    out = {"theta": theta.label(), "checks": {
        name: {"value": c.value, "threshold": c.threshold, "passed": c.passed,
               **({"detail": c.detail} if c.detail else {})}
        for name, c in checks.items()}}
    out["all_passed"] = all(c.passed for c in checks.values())
    return {name: c.value for name, c in checks.items()}, out, {"all_passed": True}


_HANDLERS = {"check": _check, "decompose": _decompose, "split": _split,
             "equiv": _equiv, "verify-lemmas": _verify}


def _run_action(ctx, index, action):
    start = time.perf_counter()
    p = action.params
    record = {"index": index, "action": action.action}
    for key in ("subspace", "left", "right"):
        if key in p:
            record[key] = p[key]
    expect = dict(p.get("expect", {}))
    try:
        res, out, implied = _HANDLERS[action.action](ctx, p)
        record["status"] = "ok"
        record["residuals"] = res
        record["output"] = out
        bad = _expect(record, {**implied, **expect})
        ok = not bad and "error" not in expect
        if bad:
            record["unmet"] = bad
    except ParseError:
        raise
    except JordanBlocksError as exc:
        record["status"] = "error"
        record["error"] = type(exc).__name__
        record["message"] = str(exc)
        ok = expect.get("error") == type(exc).__name__
    record["verdict"] = "pass" if ok else "fail"
    return record, time.perf_counter() - start


def run_scenario(scn, jobs=1):
    """Execute every action; returns ``(report, timings)``.

    Actions run on up to ``jobs`` threads; records are assembled in
    declaration order, so the report does not depend on scheduling.
    """
    ctx = _Context(scn)
    items = list(enumerate(scn.actions))
    if jobs > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda it: _run_action(ctx, *it), items))
    else:
        results = [_run_action(ctx, i, a) for i, a in items]
    records = [r for r, _ in results]
    report = {
        "schema_version": SCHEMA_VERSION,
        "seed": scn.seed,
        "tolerances": dict(scn.tolerances),
        "actions": records,
        "verdict": "pass" if all(r["verdict"] == "pass" for r in records) else "fail",
    }
    return report, [t for _, t in results]
