"""Interpolation problems: bases, nodes and prescribed value pairs.

A problem asks for ``P = sum p_j f_j`` and ``Q = sum q_j g_j`` with
``P(u_k) : Q(u_k) = lambda_k : mu_k`` at ``N + 1 = m + n + 1`` nodes.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Any, Callable, Optional, Sequence

from ..errors import (
    DegeneratePoints,
    LengthMismatch,
    PoleAtNode,
    SingularCoreMinor,
    ZeroWeight,
)
from ..linalg import Matrix, minor_det, minor_scale
from ..numerics import common_field
from ..series import BracketKind, bracket_fn

RATIONAL_HG = "rational-hg"
VWP = "vwp"
CUSTOM = "custom"

WEIGHT_FAMILIES = ("explicit", "plain", "simplified", "vwp-e", "vwp-e-simplified")
_FAMILY_ALIASES = {
    "Plain_ST": "plain",
    "Simplified_ST": "simplified",
    "VWP_E": "vwp-e",
    "VWP_E_simplified": "vwp-e-simplified",
}


@dataclass(frozen=True)
class WeightSpec:
    """How the value pairs ``(lambda_k, mu_k)`` are generated.

    ``plain``/``simplified`` belong to shifted-factorial problems and
    ``vwp-e``/``vwp-e-simplified`` to bracket problems; the simplified
    families also use the problem's ``a, b, c, d, u``.  ``explicit`` takes the
    pairs verbatim.
    """

    family: str = "plain"
    s: tuple = ()
    t: tuple = ()
    e: tuple = ()
    z: Any = 1
    w: Any = 1
    explicit: Optional[tuple] = None

    def __post_init__(self):
        family = _FAMILY_ALIASES.get(self.family, self.family)
        if family not in WEIGHT_FAMILIES:
            raise ValueError(f"unknown weight family {self.family!r}")
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "s", tuple(self.s))
        object.__setattr__(self, "t", tuple(self.t))
        object.__setattr__(self, "e", tuple(self.e))
        if family in ("plain", "simplified") and len(self.s) != len(self.t):
            raise LengthMismatch(f"{len(self.s)} numerator vs {len(self.t)} denominator parameters")
        if family == "explicit":
            if self.explicit is None:
                raise ValueError("explicit weights need the list of pairs")
            object.__setattr__(self, "explicit", tuple(tuple(pair) for pair in self.explicit))

    @classmethod
    def from_pairs(cls, pairs) -> "WeightSpec":
        return cls("explicit", explicit=tuple(tuple(p) for p in pairs))


def _rising(x, k):
    acc = 1
    for l in range(k):
        acc = acc * (x + l)
    return acc


def _bracket_rising(br, x, delta, k):
    acc = 1
    for l in range(k):
        if br.vanishes(x + l * delta):
            raise ZeroWeight(f"weight factor [{x} + {l} delta] vanishes")
        acc = acc * br(x + l * delta)
    return acc


@dataclass(frozen=True, eq=False)
class InterpolationProblem:
    """One Pade interpolation problem over a fixed scalar field.

    ``basis_f(x, count)`` returns ``[f_0(x), ..., f_{count-1}(x)]`` and
    likewise ``basis_g``; bases are evaluated as lists because every family
    used here builds ``f_{j+1}`` from ``f_j``.
    """

    m: int
    n: int
    points: tuple
    weights: tuple
    field: Any
    basis_f: Callable
    basis_g: Callable
    family: str = CUSTOM
    params: dict = dc_field(default_factory=dict)
    kind: Optional[BracketKind] = None
    wspec: Optional[WeightSpec] = None

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise ValueError("degrees must be nonnegative")
        N = self.m + self.n
        points = tuple(self.field(x) for x in self.points)
        if len(points) != N + 1:
            raise LengthMismatch(f"need {N + 1} points, got {len(points)}")
        if len(self.weights) != N + 1:
            raise LengthMismatch(f"need {N + 1} weight pairs, got {len(self.weights)}")
        weights = tuple((self.field(l), self.field(u)) for l, u in self.weights)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "weights", weights)
        for i in range(N + 1):
            for j in range(i):
                if _is_zero(self.field, points[i] - points[j], points[i]):
                    raise DegeneratePoints(f"points u_{j} and u_{i} coincide")
        for k, (lam, mu) in enumerate(weights):
            if _is_zero(self.field, lam) or _is_zero(self.field, mu):
                raise ZeroWeight(f"lambda_{k} or mu_{k} vanishes")

    @property
    def N(self) -> int:
        return self.m + self.n

    @property
    def lambdas(self) -> tuple:
        return tuple(p[0] for p in self.weights)

    @property
    def mus(self) -> tuple:
        return tuple(p[1] for p in self.weights)

    def f_values(self, x) -> list:
        return self.basis_f(self.field(x), self.m + 1)

    def g_values(self, x) -> list:
        return self.basis_g(self.field(x), self.n + 1)

    @cached_property
    def F(self) -> Matrix:
        return Matrix([self.f_values(u) for u in self.points], self.field, self.m + 1)

    @cached_property
    def G(self) -> Matrix:
        return Matrix([self.g_values(u) for u in self.points], self.field, self.n + 1)

    def with_weights(self, weights) -> "InterpolationProblem":
        return InterpolationProblem(
            self.m, self.n, self.points, tuple(weights), self.field, self.basis_f, self.basis_g,
            self.family, dict(self.params), self.kind, WeightSpec.from_pairs(weights),
        )


def _is_zero(field, x, scale=None):
    """Exact test over the rationals, ``|x| <= eps * scale`` otherwise.

    ``scale`` should bound the size ``x`` would have without cancellation;
    it defaults to 1.
    """
    if field.exact:
        return x == 0
    if scale is None or scale == 0:
        scale = 1
    return field.is_zero(x, abs(scale))


def window_minor(M: Matrix, start: int, size: int):
    """``det M^{start..start+size-1}_{0..size-1}``."""
    return minor_det(M, list(range(start, start + size)), list(range(size)))


def window_scale(M: Matrix, start: int, size: int):
    return minor_scale(M, list(range(start, start + size)), list(range(size)))


def check_genericity(prob: InterpolationProblem) -> None:
    """Raise ``SingularCoreMinor`` unless every consecutive maximal minor is nonzero.

    The minors are those of ``F`` with ``m + 1`` consecutive rows (``n + 1``
    windows) and of ``G`` with ``n + 1`` consecutive rows (``m + 1`` windows).
    """
    for name, M, size, count in (("F", prob.F, prob.m + 1, prob.n + 1), ("G", prob.G, prob.n + 1, prob.m + 1)):
        for i in range(count):
            d = window_minor(M, i, size)
            if _is_zero(prob.field, d, window_scale(M, i, size)):
                raise SingularCoreMinor(f"{name} minor on rows {i}..{i + size - 1} vanishes", window=(name, i))


# weight generation


def generate_weights(wspec: WeightSpec, N: int, field, params: dict, kind: Optional[BracketKind] = None) -> tuple:
    if wspec.family == "explicit":
        pairs = wspec.explicit
        if len(pairs) != N + 1:
            raise LengthMismatch(f"need {N + 1} weight pairs, got {len(pairs)}")
        return tuple((field(l), field(u)) for l, u in pairs)
    z, w = field(wspec.z), field(wspec.w)
    out = []
    if wspec.family in ("plain", "simplified"):
        s = [field(x) for x in wspec.s]
        t = [field(x) for x in wspec.t]
        extra_num, extra_den = [], []
        if wspec.family == "simplified":
            a, b, c, d, u = (params[k] for k in "abcdu")
            extra_num, extra_den = [b + u, c + u], [a + u, d + u]
        for k in range(N + 1):
            lam = z**k
            mu = w**k
            for x in extra_num + s:
                lam = lam * _rising(x, k)
            for x in extra_den + t:
                mu = mu * _rising(x, k)
            out.append((field(lam), field(mu)))
        return tuple(out)
    if kind is None:
        raise ValueError(f"{wspec.family} weights need a bracket")
    br = bracket_fn(kind, field)
    delta, u = params["delta"], params["u"]
    e = [field(x) for x in wspec.e]
    num = [u - x + delta for x in e]
    den = [u + x for x in e]
    if wspec.family == "vwp-e-simplified":
        a, b, c, d = (params[k] for k in "abcd")
        num = [u - a + delta, u + b, u + c, u - d + delta] + num
        den = [u + a, u - b + delta, u - c + delta, u + d] + den
    for k in range(N + 1):
        lam = z**k
        mu = w**k
        for x in num:
            lam = lam * _bracket_rising(br, x, delta, k)
        for x in den:
            mu = mu * _bracket_rising(br, x, delta, k)
        out.append((field(lam), field(mu)))
    return tuple(out)


# builders


def _hg_basis(p, q, field):
    def basis(x, count):
        vals = [field.one]
        for j in range(count - 1):
            den = q + x + j
            if den == 0:
                raise PoleAtNode(f"(q + x)_{j + 1} vanishes at x = {x}")
            vals.append(vals[-1] * (p + x + j) / den)
        return vals

    return basis


def build_rational_hg_problem(a, b, c, d, u, m: int, n: int, wspec: WeightSpec, field=None) -> InterpolationProblem:
    """Bases ``(a+x)_j/(b+x)_j`` and ``(c+x)_j/(d+x)_j`` at nodes ``u, u+1, ..., u+N``."""
    field = field or common_field([a, b, c, d, u])
    a, b, c, d, u = (field(v) for v in (a, b, c, d, u))
    N = m + n
    points = tuple(u + k for k in range(N + 1))
    for k, x in enumerate(points):
        for j in range(m):
            if _is_zero(field, b + x + j):
                raise PoleAtNode(f"f_{j + 1} has a pole at node u_{k}")
        for j in range(n):
            if _is_zero(field, d + x + j):
                raise PoleAtNode(f"g_{j + 1} has a pole at node u_{k}")
    params = {"a": a, "b": b, "c": c, "d": d, "u": u}
    weights = generate_weights(wspec, N, field, params)
    return InterpolationProblem(
        m, n, points, weights, field, _hg_basis(a, b, field), _hg_basis(c, d, field), RATIONAL_HG, params, None, wspec
    )


def _vwp_basis(br, p, q, delta, field):
    def basis(x, count):
        vals = [field.one]
        for j in range(count - 1):
            den = br(q + x + j * delta) * br(q - x + j * delta)
            if _is_zero(field, den):
                raise PoleAtNode(f"[q +- x]_{j + 1} vanishes at x = {x}")
            vals.append(vals[-1] * br(p + x + j * delta) * br(p - x + j * delta) / den)
        return vals

    return basis


def build_vwp_problem(kind: BracketKind, a, b, c, d, u, delta, m: int, n: int, wspec: WeightSpec,
                      field=None) -> InterpolationProblem:
    """Bases ``[a+-x]_j/[b+-x]_j`` and ``[c+-x]_j/[d+-x]_j`` at nodes ``u + k delta``."""
    field = field or common_field([a, b, c, d, u, delta])
    a, b, c, d, u, delta = (field(v) for v in (a, b, c, d, u, delta))
    if _is_zero(field, delta):
        raise DegeneratePoints("delta = 0 makes every node coincide")
    br = bracket_fn(kind, field)
    N = m + n
    points = tuple(u + k * delta for k in range(N + 1))
    # [p +- x] is even in x and (quasi-)periodic on the lattice, so nodes with
    # u_i +- u_j on the zero set of the bracket give identical basis rows
    for i in range(N + 1):
        for j in range(i):
            if br.vanishes(points[i] - points[j]) or br.vanishes(points[i] + points[j]):
                raise DegeneratePoints(f"nodes u_{j} and u_{i} are equivalent under x -> -x and the periods")
    for k, x in enumerate(points):
        for j in range(m):
            if br.vanishes(b + x + j * delta) or br.vanishes(b - x + j * delta):
                raise PoleAtNode(f"f_{j + 1} has a pole at node u_{k}")
        for j in range(n):
            if br.vanishes(d + x + j * delta) or br.vanishes(d - x + j * delta):
                raise PoleAtNode(f"g_{j + 1} has a pole at node u_{k}")
    params = {"a": a, "b": b, "c": c, "d": d, "u": u, "delta": delta}
    weights = generate_weights(wspec, N, field, params, kind)
    return InterpolationProblem(
        m, n, points, weights, field,
        _vwp_basis(br, a, b, delta, field), _vwp_basis(br, c, d, delta, field),
        VWP, params, kind, wspec,
    )


def build_custom_problem(f_funcs: Sequence[Callable], g_funcs: Sequence[Callable], points, weights,
                         field=None) -> InterpolationProblem:
    """Problem from explicit per-index basis callables."""
    m, n = len(f_funcs) - 1, len(g_funcs) - 1
    flat = list(points) + [v for pair in weights for v in pair]
    field = field or common_field(flat)

    def basis(funcs):
        return lambda x, count: [field(fn(x)) for fn in funcs[:count]]

    return InterpolationProblem(m, n, tuple(points), tuple(weights), field, basis(f_funcs), basis(g_funcs))
