"""JSON forms of problems and solutions.

problem.json::

    {"scalar": "rational" | "complex256",
     "family": "rational-hg" | "vwp",
     "bracket": {"kind": "rational" | "trigonometric" | "elliptic", ...},
     "params": {"a", "b", "c", "d", "u", "delta"},
     "degrees": {"m", "n"},
     "weights": {"family": ..., "params": {"s", "t", "e", "z", "w"}}
                | {"explicit": [[lambda, mu], ...]}}

Rationals are written "p/q"; complex values as [re, im] or [re, im, bits].
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from ..errors import InputError, SpecError
from ..numerics import RATIONAL, complex_field
from ..series import BracketKind
from .problem import RATIONAL_HG, VWP, InterpolationProblem, WeightSpec, build_rational_hg_problem, build_vwp_problem
from .universal import PadeSolution, Route

_SCALAR = re.compile(r"^(rational|complex(\d+))$")


def field_for(scalar: str):
    m = _SCALAR.match(str(scalar))
    if not m:
        raise SpecError(f"unknown scalar kind {scalar!r}")
    if m.group(1) == "rational":
        return RATIONAL
    bits = int(m.group(2))
    if bits < 53:
        raise SpecError(f"precision must be at least 53 bits, got {bits}")
    return complex_field(bits)


def scalar_name(field) -> str:
    return "rational" if field.exact else f"complex{field.precision}"


def parse_scalar(field, obj):
    try:
        if isinstance(obj, bool):
            raise TypeError("boolean")
        if field.exact:
            if isinstance(obj, (int, str)):
                return field.from_json(obj) if isinstance(obj, str) else Fraction(obj)
            raise TypeError(type(obj).__name__)
        if isinstance(obj, list) and len(obj) == 2:
            return field((_part(obj[0]), _part(obj[1])))
        return field.from_json(obj)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise SpecError(f"bad scalar {obj!r}: {exc}") from None


def _part(x):
    if isinstance(x, str) and "/" in x:
        return Fraction(x)
    if isinstance(x, (int, str)):
        return x
    raise TypeError(f"bad component {x!r}")


def _require(obj, key, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise SpecError(f"missing key {key!r}")
    value = obj[key]
    if kind is not None and not isinstance(value, kind):
        raise SpecError(f"key {key!r} has the wrong type")
    return value


def _weights(obj, field) -> WeightSpec:
    if "explicit" in obj:
        pairs = obj["explicit"]
        if not isinstance(pairs, list) or any(not isinstance(p, list) or len(p) != 2 for p in pairs):
            raise SpecError("explicit weights must be a list of [lambda, mu] pairs")
        return WeightSpec.from_pairs([(parse_scalar(field, l), parse_scalar(field, m)) for l, m in pairs])
    family = _require(obj, "family", str)
    params = obj.get("params", {})
    if not isinstance(params, dict):
        raise SpecError("weight params must be an object")
    vec = lambda k: [parse_scalar(field, x) for x in params.get(k, [])]  # noqa: E731
    try:
        return WeightSpec(
            family,
            s=vec("s"),
            t=vec("t"),
            e=vec("e"),
            z=parse_scalar(field, params.get("z", 1)),
            w=parse_scalar(field, params.get("w", 1)),
        )
    except ValueError as exc:
        if isinstance(exc, InputError):
            raise
        raise SpecError(str(exc)) from None


def problem_from_json(obj) -> InterpolationProblem:
    """Build a problem; malformed input raises ``SpecError``, degenerate input ``InputError``."""
    if not isinstance(obj, dict):
        raise SpecError("problem spec must be a JSON object")
    field = field_for(_require(obj, "scalar", str))
    family = _require(obj, "family", str)
    params = _require(obj, "params", dict)
    degrees = _require(obj, "degrees", dict)
    m, n = _require(degrees, "m"), _require(degrees, "n")
    if not (isinstance(m, int) and isinstance(n, int)) or isinstance(m, bool) or m < 0 or n < 0:
        raise SpecError("degrees must be nonnegative integers")
    ws = _weights(_require(obj, "weights", dict), field)
    p = {k: parse_scalar(field, _require(params, k)) for k in ("a", "b", "c", "d", "u")}
    if family == RATIONAL_HG:
        return build_rational_hg_problem(p["a"], p["b"], p["c"], p["d"], p["u"], m, n, ws, field)
    if family == VWP:
        try:
            kind = BracketKind.from_json(_require(obj, "bracket", dict))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InputError):
                raise
            raise SpecError(f"bad bracket: {exc}") from None
        delta = parse_scalar(field, params.get("delta", 1))
        return build_vwp_problem(kind, p["a"], p["b"], p["c"], p["d"], p["u"], delta, m, n, ws, field)
    raise SpecError(f"unknown family {family!r}")


def problem_to_json(prob: InterpolationProblem) -> dict:
    field = prob.field
    if prob.family not in (RATIONAL_HG, VWP):
        raise SpecError("only the two standard families have a JSON form")
    keys = ("a", "b", "c", "d", "u") + (("delta",) if prob.family == VWP else ())
    out = {
        "scalar": scalar_name(field),
        "family": prob.family,
        "params": {k: field.to_json(prob.params[k]) for k in keys},
        "degrees": {"m": prob.m, "n": prob.n},
    }
    if prob.family == VWP:
        out["bracket"] = prob.kind.to_json()
    ws = prob.wspec
    if ws.family == "explicit":
        out["weights"] = {"explicit": [[field.to_json(l), field.to_json(m)] for l, m in ws.explicit]}
    else:
        params = {"z": field.to_json(ws.z), "w": field.to_json(ws.w)}
        for key in ("s", "t", "e"):
            if getattr(ws, key):
                params[key] = [field.to_json(x) for x in getattr(ws, key)]
        out["weights"] = {"family": ws.family, "params": params}
    return out


def solution_to_json(sol: PadeSolution, field) -> dict:
    out = {
        "route": sol.route.value,
        "scalar": scalar_name(field),
        "p": [field.to_json(x) for x in sol.p],
        "q": [field.to_json(x) for x in sol.q],
        "normalization": None if sol.normalization is None else [field.to_json(x) for x in sol.normalization],
    }
    if "largest_det" in sol.details:
        out["largest_det"] = sol.details["largest_det"]
    return out


def solution_from_json(obj, field) -> PadeSolution:
    if not isinstance(obj, dict):
        raise SpecError("solution must be a JSON object")
    if obj.get("scalar", scalar_name(field)) != scalar_name(field):
        raise SpecError(f"solution scalar {obj.get('scalar')!r} does not match the problem")
    p = [parse_scalar(field, x) for x in _require(obj, "p", list)]
    q = [parse_scalar(field, x) for x in _require(obj, "q", list)]
    try:
        route = Route(obj.get("route", "brute"))
    except ValueError:
        raise SpecError(f"unknown route {obj.get('route')!r}") from None
    norm = obj.get("normalization")
    if norm is not None:
        norm = tuple(parse_scalar(field, x) for x in norm)
    return PadeSolution(p, q, route, norm)


def load_json(path: str):
    """Read a JSON file; unreadable or malformed files raise ``SpecError``."""
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path} is not valid JSON: {exc.msg} at line {exc.lineno}") from None


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
