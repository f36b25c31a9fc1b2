"""Scenario files: JSON descriptions of an ambient space, subspaces and actions.

A scenario looks like::

    {
      "factors": [{"constant": [1, 0], "zeros": [[0, 0], [0, 0]]}],
      "aux_dim": 0,
      "hardy": {"num_vars": 1, "degree_cap": 8},
      "subspaces": {"m": {"tensor": [{"eta": ..., "phi": ...}],
                          "inner_generator": {"per_var": [...]}}},
      "actions": [{"action": "decompose", "subspace": "m"}],
      "tolerances": {"subspace": 1e-7},
      "seed": 0
    }

``subspace``/``action`` may replace ``subspaces``/``actions`` for a single
subspace (named ``"m"``) and a single action on it.  Every field is checked
and unknown fields are rejected with the path of the offending entry.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import JordanBlocksError, ParseError
from .inner import BlaschkeProduct, Factorization
from .mixed import (TruncatedHardy, as_generator, build_inner_submodule,
                    build_mixed_space)
from .model import build_model_space
from .submodule import build_submodule
from .subspace import SUBSPACE_TOL, Subspace, kron
from .tensor import CHECK_TOL, build_product, tensor_submodule

SCHEMA_VERSION = 1
MIN_TOL = 1e-12
MAX_LEMMA_DEGREE = 8

DEFAULT_TOLERANCES = {
    "subspace": SUBSPACE_TOL,
    "invariance": CHECK_TOL,
    "commute": CHECK_TOL,
    "window": 1e-6,
    "intertwine": 1e-8,
}

ACTIONS = ("check", "decompose", "split", "equiv", "verify-lemmas")


def _require(obj, kind, path):
    if not isinstance(obj, kind):
        name = kind.__name__ if isinstance(kind, type) else "/".join(
            k.__name__ for k in kind)
        raise ParseError(f"expected {name}, got {type(obj).__name__}", path)
    return obj


def _check_keys(obj, allowed, path, required=()):
    _require(obj, dict, path)
    for key in obj:
        if key not in allowed:
            raise ParseError("unknown field", f"{path}.{key}" if path else key)
    for key in required:
        if key not in obj:
            raise ParseError("missing field", f"{path}.{key}" if path else key)


def _number(x, path):
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ParseError("expected a number", path)
    if not np.isfinite(x):
        raise ParseError("expected a finite number", path)
    return float(x)


def parse_complex(obj, path):
    if not isinstance(obj, list) or len(obj) != 2:
        raise ParseError("expected [re, im]", path)
    return complex(_number(obj[0], f"{path}[0]"), _number(obj[1], f"{path}[1]"))


def parse_blaschke(obj, path):
    _check_keys(obj, ("constant", "zeros"), path)
    const = parse_complex(obj["constant"], f"{path}.constant") \
        if "constant" in obj else 1.0 + 0j
    zeros = _require(obj.get("zeros", []), list, f"{path}.zeros")
    zs = [parse_complex(z, f"{path}.zeros[{i}]") for i, z in enumerate(zeros)]
    try:
        return BlaschkeProduct(const, zs)
    except ValueError as exc:
        raise ParseError(str(exc), path) from None


def _int(obj, path, low=0):
    if isinstance(obj, bool) or not isinstance(obj, int) or obj < low:
        raise ParseError(f"expected an integer >= {low}", path)
    return obj


@dataclass
class SubspaceSpec:
    kind: str          # "factorization", "tensor", "vectors" or "aux_span"
    data: object
    generator: object = None


@dataclass
class Action:
    action: str
    params: dict


@dataclass
class Scenario:
    factors: list
    aux_dim: int = 0
    hardy: dict | None = None
    subspaces: dict = field(default_factory=dict)
    actions: list = field(default_factory=list)
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    seed: int = 0


def _parse_factorization(obj, path):
    _check_keys(obj, ("eta", "phi"), path, ("eta", "phi"))
    return Factorization(parse_blaschke(obj["eta"], f"{path}.eta"),
                         parse_blaschke(obj["phi"], f"{path}.phi"))


def _parse_vectors(obj, path):
    rows = _require(obj, list, path)
    if not rows:
        return np.zeros((0, 0), dtype=complex)
    vecs = []
    for i, v in enumerate(rows):
        _require(v, list, f"{path}[{i}]")
        vecs.append([parse_complex(c, f"{path}[{i}][{j}]") for j, c in enumerate(v)])
    if len({len(v) for v in vecs}) != 1:
        raise ParseError("vectors have different lengths", path)
    return np.array(vecs, dtype=complex).T


def parse_subspace(obj, path):
    keys = ("factorization", "tensor", "vectors", "aux_span", "inner_generator")
    _check_keys(obj, keys, path)
    kinds = [k for k in keys[:4] if k in obj]
    if len(kinds) != 1:
        raise ParseError("exactly one of factorization, tensor, vectors, "
                         "aux_span is required", path)
    kind = kinds[0]
    sub = f"{path}.{kind}"
    if kind == "factorization":
        data = _parse_factorization(obj[kind], sub)
    elif kind == "tensor":
        items = _require(obj[kind], list, sub)
        data = [_parse_factorization(f, f"{sub}[{i}]") for i, f in enumerate(items)]
    else:
        data = _parse_vectors(obj[kind], sub)
    gen = None
    if "inner_generator" in obj:
        gpath = f"{path}.inner_generator"
        _check_keys(obj["inner_generator"], ("per_var",), gpath, ("per_var",))
        per = _require(obj["inner_generator"]["per_var"], list, f"{gpath}.per_var")
        gen = [parse_blaschke(b, f"{gpath}.per_var[{i}]") for i, b in enumerate(per)]
    return SubspaceSpec(kind, data, gen)


_ACTION_FIELDS = {
    "check": ("subspace", "expect"),
    "decompose": ("subspace", "order", "expect"),
    "split": ("subspace", "expect"),
    "equiv": ("left", "right", "expect"),
    "verify-lemmas": ("theta", "trials"),
}


def parse_action(obj, path, names):
    if isinstance(obj, str):
        obj = {"action": obj}
    _check_keys(obj, ("action",) + tuple(
        {f for fs in _ACTION_FIELDS.values() for f in fs}), path, ("action",))
    name = obj["action"]
    if name not in ACTIONS:
        raise ParseError(f"unknown action {name!r}", f"{path}.action")
    params = {}
    for key, value in obj.items():
        if key == "action":
            continue
        if key not in _ACTION_FIELDS[name]:
            raise ParseError(f"field not valid for action {name!r}", f"{path}.{key}")
        kpath = f"{path}.{key}"
        if key in ("subspace", "left", "right"):
            if value not in names:
                raise ParseError(f"unknown subspace {value!r}", kpath)
            params[key] = value
        elif key == "theta":
            params[key] = parse_blaschke(value, kpath)
        elif key == "trials":
            params[key] = _int(value, kpath, 1)
        elif key == "order":
            items = _require(value, list, kpath)
            params[key] = [_int(v, f"{kpath}[{i}]") for i, v in enumerate(items)]
        elif key == "expect":
            params[key] = _require(value, dict, kpath)
    if name in ("check", "decompose", "split") and "subspace" not in params:
        if len(names) != 1:
            raise ParseError("action needs a subspace name", path)
        params["subspace"] = next(iter(names))
    if name == "equiv" and not {"left", "right"} <= params.keys():
        raise ParseError("equiv needs left and right", path)
    return Action(name, params)


def parse_tolerances(obj, path="tolerances", base=None):
    tols = dict(DEFAULT_TOLERANCES if base is None else base)
    _require(obj, dict, path)
    for key, value in obj.items():
        if key not in DEFAULT_TOLERANCES:
            raise ParseError("unknown tolerance", f"{path}.{key}")
        tols[key] = check_tolerance(_number(value, f"{path}.{key}"),
                                    f"{path}.{key}")
    return tols


def check_tolerance(value, path):
    if not value >= MIN_TOL:
        raise ParseError(f"tolerance must be at least {MIN_TOL:g}", path)
    return value


def parse_scenario(obj):
    """Validate a decoded JSON object into a :class:`Scenario`."""
    top = ("schema_version", "factors", "aux_dim", "hardy", "subspaces",
           "subspace", "actions", "action", "tolerances", "seed")
    _check_keys(obj, top, "", ("factors",))
    if obj.get("schema_version", SCHEMA_VERSION) != SCHEMA_VERSION:
        raise ParseError("unsupported schema version", "schema_version")
    factors = _require(obj["factors"], list, "factors")
    if not factors:
        raise ParseError("at least one factor is required", "factors")
    thetas = [parse_blaschke(f, f"factors[{i}]") for i, f in enumerate(factors)]
    for i, t in enumerate(thetas):
        if t.degree < 1:
            raise ParseError("factors must have degree >= 1", f"factors[{i}]")
    aux = _int(obj.get("aux_dim", 0), "aux_dim")
    hardy = None
    if "hardy" in obj:
        _check_keys(obj["hardy"], ("num_vars", "degree_cap", "zero_radius"),
                    "hardy", ("num_vars", "degree_cap"))
        h = obj["hardy"]
        hardy = {"num_vars": _int(h["num_vars"], "hardy.num_vars", 1),
                 "degree_cap": _int(h["degree_cap"], "hardy.degree_cap", 1)}
        if "zero_radius" in h:
            hardy["zero_radius"] = _number(h["zero_radius"], "hardy.zero_radius")
        if aux:
            raise ParseError("hardy and aux_dim are exclusive", "hardy")

    if "subspaces" in obj and "subspace" in obj:
        raise ParseError("give either subspaces or subspace", "subspace")
    if "subspace" in obj:
        subspaces = {"m": parse_subspace(obj["subspace"], "subspace")}
    else:
        raw = _require(obj.get("subspaces", {}), dict, "subspaces")
        subspaces = {k: parse_subspace(v, f"subspaces.{k}") for k, v in raw.items()}

    if "actions" in obj and "action" in obj:
        raise ParseError("give either actions or action", "action")
    raw_actions = [obj["action"]] if "action" in obj else \
        _require(obj.get("actions", []), list, "actions")
    actions = []
    for i, a in enumerate(raw_actions):
        path = "action" if "action" in obj else f"actions[{i}]"
        actions.append(parse_action(a, path, subspaces))
    if not actions:
        raise ParseError("no actions given", "actions")
    for i, a in enumerate(actions):
        path = "action" if "action" in obj else f"actions[{i}]"
        if a.action == "verify-lemmas":
            theta = a.params.get("theta", thetas[0])
            if not 1 <= theta.degree <= MAX_LEMMA_DEGREE:
                raise ParseError(f"verify-lemmas needs degree 1..{MAX_LEMMA_DEGREE}",
                                 f"{path}.theta")
        if "order" in a.params and sorted(a.params["order"]) != list(range(len(thetas))):
            raise ParseError("order must be a permutation of the factor indices",
                             f"{path}.order")

    tols = parse_tolerances(obj.get("tolerances", {}))
    seed = _int(obj.get("seed", 0), "seed")
    return Scenario(thetas, aux, hardy, subspaces, actions, tols, seed)


def load_scenario(path):
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read scenario: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno} column {exc.colno}: "
                         f"{exc.msg}") from None
    return parse_scenario(obj)


@dataclass
class Ambient:
    """Spaces built from a scenario; ``mixed`` is set when a Hardy part exists."""

    spaces: list
    jb: object
    mixed: object = None

    @property
    def dim(self):
        return self.mixed.dim if self.mixed is not None else self.jb.ambient_dim


def build_ambient(scn):
    spaces = [build_model_space(t) for t in scn.factors]
    if scn.hardy is not None:
        th = TruncatedHardy(**scn.hardy)
        mixed = build_mixed_space(th, spaces)
        return Ambient(spaces, mixed.jordan, mixed)
    return Ambient(spaces, build_product(spaces, aux_dim=scn.aux_dim))


def realize_subspace(amb, spec, path):
    """Build the :class:`Subspace` described by ``spec`` in ``amb``.

    Shape mismatches are input errors; failures inside the library (for
    example a factorization that does not divide theta) propagate.
    """
    jb = amb.jb
    if spec.generator is not None and amb.mixed is None:
        raise ParseError("inner_generator needs a hardy part", path)
    if spec.kind == "factorization":
        if jb.n != 1 or jb.aux_dim or amb.mixed is not None:
            raise ParseError("factorization form needs a single factor without "
                             "aux or hardy part; use tensor", path)
        return build_submodule(amb.spaces[0], spec.data)
    if spec.kind == "tensor":
        if len(spec.data) != jb.n:
            raise ParseError(f"expected {jb.n} factorizations", f"{path}.tensor")
        if jb.aux_dim:
            raise ParseError("tensor form is not available with aux_dim", path)
        if amb.mixed is None:
            return tensor_submodule(jb, spec.data)
        gen_list = spec.generator or [BlaschkeProduct()] * amb.mixed.hardy.num_vars
        try:
            gen = as_generator(amb.mixed.hardy, gen_list)
        except ValueError as exc:
            raise ParseError(str(exc), f"{path}.inner_generator") from None
        return kron(build_inner_submodule(amb.mixed.hardy, gen),
                    tensor_submodule(jb, spec.data))
    if spec.kind == "aux_span":
        if not jb.aux_dim:
            raise ParseError("aux_span needs aux_dim >= 1", path)
        vecs = spec.data
        if vecs.size and vecs.shape[0] != jb.aux_dim:
            raise ParseError(f"vectors must have length {jb.aux_dim}", f"{path}.aux_span")
        low = Subspace.span(vecs, jb.aux_dim)
        return kron(low, Subspace.full(jb.total_dim))
    vecs = spec.data
    if vecs.size and vecs.shape[0] != amb.dim:
        raise ParseError(f"vectors must have length {amb.dim}", f"{path}.vectors")
    return Subspace.span(vecs, amb.dim)


__all__ = ["Scenario", "SubspaceSpec", "Action", "Ambient", "ParseError",
           "JordanBlocksError", "parse_scenario", "load_scenario",
           "build_ambient", "realize_subspace", "SCHEMA_VERSION",
           "DEFAULT_TOLERANCES"]
