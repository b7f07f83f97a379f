"""Bracket functions, shifted factorials and terminating hypergeometric sums.

A bracket ``[x]`` is one of

* rational:       ``exp(c0*x**2 + c1) * x``
* trigonometric:  ``exp(c0*x**2 + c1) * sin(pi*x/omega)``
* elliptic:       ``exp(c0*x**2 + c1) * sigma(x)``, Weierstrass sigma of the
  lattice ``Z*omega1 + Z*omega2``

Every choice satisfies the three-term relation checked by
:func:`riemann_residual`, which is all the determinant and summation formulas
built on top of brackets rely on.

Over exact rationals only the rational bracket with ``c0 == c1 == 0`` can be
evaluated; everything else needs a complex field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Sequence

from .errors import (
    A0Zero,
    BalancingViolated,
    ExactUnsupported,
    InvalidLattice,
    LengthMismatch,
    NonTerminating,
    PoleBeforeTermination,
)
from .numerics import RATIONAL, EqPolicy, common_field, complex_field
from .reports import IdentityReport, make_report

RATIONAL_KIND = "rational"
TRIG_KIND = "trigonometric"
ELLIPTIC_KIND = "elliptic"


@dataclass(frozen=True)
class BracketKind:
    """Which fundamental function ``[x]`` is in force."""

    variant: str = RATIONAL_KIND
    omega: Any = None
    omega1: Any = None
    omega2: Any = None
    c0: Any = 0
    c1: Any = 0

    def __post_init__(self):
        if self.variant == TRIG_KIND:
            if self.omega is None or as_complex(self.omega) == 0:
                raise InvalidLattice("trigonometric bracket needs a nonzero period")
        elif self.variant == ELLIPTIC_KIND:
            if self.omega1 is None or self.omega2 is None or as_complex(self.omega1) == 0:
                raise InvalidLattice("elliptic bracket needs two periods")
            tau = as_complex(self.omega2) / as_complex(self.omega1)
            if not tau.imag > 0:
                raise InvalidLattice(f"Im(omega2/omega1) must be positive, got {tau}")
        elif self.variant != RATIONAL_KIND:
            raise ValueError(f"unknown bracket variant {self.variant!r}")

    @classmethod
    def rational(cls, c0=0, c1=0) -> "BracketKind":
        return cls(RATIONAL_KIND, c0=c0, c1=c1)

    @classmethod
    def trigonometric(cls, omega, c0=0, c1=0) -> "BracketKind":
        return cls(TRIG_KIND, omega=omega, c0=c0, c1=c1)

    @classmethod
    def elliptic(cls, omega1, omega2, c0=0, c1=0) -> "BracketKind":
        return cls(ELLIPTIC_KIND, omega1=omega1, omega2=omega2, c0=c0, c1=c1)

    @property
    def has_prefactor(self) -> bool:
        return self.c0 != 0 or self.c1 != 0

    @property
    def exact_capable(self) -> bool:
        return self.variant == RATIONAL_KIND and not self.has_prefactor

    def with_prefactor(self, c0, c1) -> "BracketKind":
        return BracketKind(self.variant, self.omega, self.omega1, self.omega2, c0, c1)

    def to_json(self) -> dict:
        out = {"kind": self.variant}
        for key in ("omega", "omega1", "omega2"):
            v = getattr(self, key)
            if v is not None:
                out[key] = _param_json(v)
        if self.c0 != 0:
            out["c0"] = _param_json(self.c0)
        if self.c1 != 0:
            out["c1"] = _param_json(self.c1)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "BracketKind":
        variant = {"trig": TRIG_KIND}.get(obj.get("kind", RATIONAL_KIND), obj.get("kind", RATIONAL_KIND))
        get = lambda k: _param_value(obj[k]) if k in obj else None  # noqa: E731
        return cls(
            variant,
            omega=get("omega"),
            omega1=get("omega1"),
            omega2=get("omega2"),
            c0=get("c0") or 0,
            c1=get("c1") or 0,
        )


def _param_json(v):
    if isinstance(v, (int, Fraction)):
        return RATIONAL.to_json(v)
    if isinstance(v, tuple):
        return [_param_json(x) for x in v]
    if isinstance(v, complex):
        return [repr(v.real), repr(v.imag)]
    if hasattr(v, "context"):
        return [str(v.real), str(v.imag)]
    return v


def _param_value(v):
    """JSON parameter -> hashable value accepted by ``field(...)``."""
    if isinstance(v, list):
        if len(v) != 2:
            raise ValueError(f"complex parameter must be [re, im], got {v!r}")
        return tuple(_param_value(x) for x in v)
    if isinstance(v, str) and ("/" in v or v.lstrip("-").isdigit()):
        return RATIONAL.from_json(v)
    if isinstance(v, float):
        return str(v)
    return v


def as_complex(v) -> complex:
    """Low-precision view of a parameter, for validation only."""
    if isinstance(v, tuple):
        return complex(float(Fraction(v[0]) if not isinstance(v[0], str) else float(v[0])),
                       float(Fraction(v[1]) if not isinstance(v[1], str) else float(v[1])))
    if isinstance(v, str):
        return complex(float(v))
    return complex(v)


# bracket evaluation


class _Evaluator:
    """Precomputed constants of one bracket kind at one precision."""

    def __init__(self, kind: BracketKind, field):
        self.kind = kind
        self.field = field
        self.exact = field.exact
        if field.exact:
            if not kind.exact_capable:
                raise ExactUnsupported(f"{kind.variant} bracket with prefactor needs a complex field")
            return
        ctx = field.ctx
        self.ctx = ctx
        self.c0 = field(kind.c0)
        self.c1 = field(kind.c1)
        self.prefactor = kind.has_prefactor
        if kind.variant == TRIG_KIND:
            self.scale = ctx.pi / field(kind.omega)
        elif kind.variant == ELLIPTIC_KIND:
            self._init_sigma(field(kind.omega1), field(kind.omega2))
        self.cached = lru_cache(maxsize=1 << 16)(self._eval)

    def _init_sigma(self, w1, w2):
        ctx = self.ctx
        # half periods h1 = w1/2, h3 = w2/2; nome q = exp(i*pi*w2/w1)
        self.w1 = w1
        self.log_q = ctx.mpc(0, 1) * ctx.pi * (w2 / w1)
        self.cutoff = ctx.ldexp(ctx.mpf(1), -(self.field.precision + 8))
        d1 = d3 = ctx.mpc(0)
        n = 0
        while True:
            qn = ctx.exp(self.log_q * (n + Fraction(1, 2)) ** 2)
            sign = -1 if n % 2 else 1
            t1 = sign * qn * (2 * n + 1)
            t3 = -sign * qn * (2 * n + 1) ** 3
            d1 += t1
            d3 += t3
            if abs(t3) < self.cutoff * abs(d3) and abs(t1) < self.cutoff * abs(d1):
                break
            n += 1
        self.theta1_prime0 = 2 * d1
        theta1_triple0 = 2 * d3
        h1 = w1 / 2
        self.eta1 = -(ctx.pi ** 2 / (12 * h1)) * theta1_triple0 / self.theta1_prime0

    def _theta1(self, v):
        ctx = self.ctx
        total = ctx.mpc(0)
        growth = abs(ctx.mpc(v).imag)
        n = 0
        while True:
            qn = ctx.exp(self.log_q * (n + Fraction(1, 2)) ** 2)
            term = qn * ctx.sin((2 * n + 1) * v)
            total = total - term if n % 2 else total + term
            # stop on a bound for the term, not its value: sin((2n+1)v) can
            # vanish by accident while later terms do not
            bound = abs(qn) * ctx.exp((2 * n + 1) * growth)
            if n > 0 and (bound < self.cutoff * abs(total) or bound < self.cutoff**2):
                break
            n += 1
        return 2 * total

    def _sigma(self, x):
        ctx = self.ctx
        w1 = self.w1
        return (w1 / ctx.pi) * ctx.exp(self.eta1 * x * x / w1) * self._theta1(ctx.pi * x / w1) / self.theta1_prime0

    def _eval(self, x):
        variant = self.kind.variant
        if variant == RATIONAL_KIND:
            base = x
        elif variant == TRIG_KIND:
            base = self.ctx.sin(self.scale * x)
        else:
            base = self._sigma(x)
        if self.prefactor:
            base = self.ctx.exp(self.c0 * x * x + self.c1) * base
        return base

    def vanishes(self, x) -> bool:
        """True iff ``x`` sits on the zero set of the bracket.

        Decided from the position of ``x`` relative to the period lattice,
        which stays meaningful where the bracket itself is huge or tiny.
        """
        if self.exact:
            return x == 0
        ctx = self.ctx
        x = self.field(x)
        tol = ctx.ldexp(ctx.mpf(1), -(self.field.precision // 2))
        variant = self.kind.variant
        if variant == RATIONAL_KIND:
            return abs(x) <= tol
        if variant == TRIG_KIND:
            coords = [x / self.field(self.kind.omega)]
            if abs(coords[0].imag) > tol * max(1, abs(coords[0])):
                return False
            coords = [coords[0].real]
        else:
            w1 = self.w1
            w2 = self.field(self.kind.omega2)
            # x = s*w1 + t*w2 with real s, t
            det = w1.real * w2.imag - w1.imag * w2.real
            s_ = (x.real * w2.imag - x.imag * w2.real) / det
            t_ = (w1.real * x.imag - w1.imag * x.real) / det
            coords = [s_, t_]
        return all(abs(c - ctx.nint(c)) <= tol * max(1, abs(c)) for c in coords)

    def __call__(self, x):
        if self.exact:
            return x
        x = self.field(x)
        if x == 0:
            return self.field.zero
        return self.cached(x)


@lru_cache(maxsize=None)
def _evaluator(kind: BracketKind, field) -> _Evaluator:
    return _Evaluator(kind, field)


def bracket_fn(kind: BracketKind, field):
    """The callable ``x -> [x]`` for ``kind`` over ``field``."""
    return _evaluator(kind, field)


def bracket_vanishes(kind: BracketKind, x, field) -> bool:
    """Whether ``[x] = 0``, judged by lattice position rather than by value."""
    return _evaluator(kind, field).vanishes(x)


def bracket(kind: BracketKind, x, field=None):
    field = field or common_field([x])
    return _evaluator(kind, field)(x)


def shifted_factorial(a, n: int):
    """Rising factorial ``a (a+1) ... (a+n-1)``; empty product is 1."""
    if n < 0:
        raise ValueError("negative length")
    acc = 1 if isinstance(a, (int, Fraction)) else a.context.mpc(1)
    for k in range(n):
        acc = acc * (a + k)
    return acc if not isinstance(acc, int) else Fraction(acc)


def delta_shifted_factorial(kind: BracketKind, x, delta, k: int, field=None):
    """``[x][x+delta]...[x+(k-1)delta]``."""
    if k < 0:
        raise ValueError("negative length")
    field = field or common_field([x, delta])
    br = _evaluator(kind, field)
    acc = field.one
    for l in range(k):
        acc = acc * br(x + l * delta)
    return acc


def dsf_pm(kind: BracketKind, a, x, delta, k: int, field=None):
    """``[a +- x]_k = [a+x]_k [a-x]_k``."""
    return delta_shifted_factorial(kind, a + x, delta, k, field) * delta_shifted_factorial(kind, a - x, delta, k, field)


# termination


def _termination_index(a, delta, field):
    """``n`` if ``a == -n*delta`` for an integer ``n >= 0``, else ``None``."""
    if field.exact:
        t = Fraction(a) / Fraction(delta)
        if t.denominator == 1 and t <= 0:
            return int(-t)
        return None
    t = field(a) / field(delta)
    n = int(field.ctx.nint(-t.real))
    if n < 0:
        return None
    tol = field.ctx.ldexp(field.ctx.mpf(1), -(field.precision // 2))
    if abs(t + n) <= tol * max(1, n):
        return n
    return None


@dataclass(frozen=True)
class GeneralizedF:
    """Terminating ``_{r+1}F_r[upper; lower; z]``."""

    upper: tuple
    lower: tuple
    z: Any = 1

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(self.upper))
        object.__setattr__(self, "lower", tuple(self.lower))
        if len(self.upper) != len(self.lower) + 1:
            raise LengthMismatch(f"{len(self.upper)} upper vs {len(self.lower)} lower parameters")


@dataclass(frozen=True)
class VeryWellPoisedV:
    """Terminating very-well-poised ``V[a0; a_1..a_r | z]`` for one bracket."""

    bracket: BracketKind
    delta: Any
    a0: Any
    a: tuple
    z: Any = 1

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))


SeriesSpec = (GeneralizedF, VeryWellPoisedV)


def eval_F(spec: GeneralizedF):
    field = common_field([*spec.upper, *spec.lower, spec.z])
    upper = [field(x) for x in spec.upper]
    lower = [field(x) for x in spec.lower]
    z = field(spec.z)
    stops = [n for n in (_termination_index(a, 1, field) for a in upper) if n is not None]
    if not stops:
        raise NonTerminating("no upper parameter is a nonpositive integer")
    K = min(stops)
    term = field.one
    total = field.one
    for k in range(1, K + 1):
        num = field.one
        for a in upper:
            num = num * (a + (k - 1))
        den = field(k)
        for b in lower:
            f = b + (k - 1)
            if field.is_zero(f, max(1, abs(b))):
                raise PoleBeforeTermination(f"lower parameter {b} gives a zero factor at k={k}", k=k, factor=b)
            den = den * f
        term = term * num * z / den
        total = total + term
    return total


def hyper(upper: Sequence, lower: Sequence, z=1):
    """Shorthand for ``eval_F(GeneralizedF(upper, lower, z))``."""
    return eval_F(GeneralizedF(tuple(upper), tuple(lower), z))


def _vwp_setup(kind, delta, a0, a, extra=()):
    field = common_field([delta, a0, *a, *extra])
    br = _evaluator(kind, field)
    delta, a0 = field(delta), field(a0)
    a = [field(x) for x in a]
    b0 = br(a0)
    if br.vanishes(a0):
        raise A0Zero(f"[a0] vanishes for a0={a0}")
    return field, br, delta, a0, a, b0


def _vwp_ratio_factor(field, br, delta, a0, a, l):
    """Factor taking the k=l product part to k=l+1."""
    num = br(a0 + l * delta)
    den = br(delta + l * delta)
    for ai in a:
        num = num * br(ai + l * delta)
        d = br(delta + a0 - ai + l * delta)
        if br.vanishes(delta + a0 - ai + l * delta):
            raise PoleBeforeTermination(
                f"[delta+a0-a_i] factor vanishes at k={l + 1} for a_i={ai}", k=l + 1, factor=ai
            )
        den = den * d
    if br.vanishes(delta + l * delta):
        raise PoleBeforeTermination(f"[delta]_k factor vanishes at k={l + 1}", k=l + 1, factor=delta)
    return num / den


def vwp_term(kind: BracketKind, delta, k: int, a0, a: Sequence):
    """The ``k``-th term of the very-well-poised series at ``z = 1``."""
    field, br, delta, a0, a, b0 = _vwp_setup(kind, delta, a0, a)
    acc = br(a0 + 2 * k * delta) / b0
    for l in range(k):
        acc = acc * _vwp_ratio_factor(field, br, delta, a0, a, l)
    return acc


def eval_V(spec: VeryWellPoisedV):
    field, br, delta, a0, a, b0 = _vwp_setup(spec.bracket, spec.delta, spec.a0, spec.a, (spec.z,))
    z = field(spec.z)
    stops = [n for n in (_termination_index(x, delta, field) for x in a) if n is not None]
    if not stops:
        raise NonTerminating("no parameter a_i equals -n*delta")
    K = min(stops)
    part = field.one
    zk = field.one
    total = field.one
    for k in range(1, K + 1):
        part = part * _vwp_ratio_factor(field, br, delta, a0, a, k - 1)
        zk = zk * z
        total = total + br(a0 + 2 * k * delta) / b0 * part * zk
    return total


def vwp(kind: BracketKind, delta, a0, a: Sequence, z=1):
    """Shorthand for ``eval_V(VeryWellPoisedV(kind, delta, a0, a, z))``."""
    return eval_V(VeryWellPoisedV(kind, delta, a0, tuple(a), z))


# summation identities


def saalschutz_sides(N: int, c, d, u, i, j):
    field = common_field([c, d, u, i, j])
    c, d, u, i, j = (field(x) for x in (c, d, u, i, j))
    lhs = hyper([-N, d + u + N - 1 - i, c + u + j], [c + u - i, d + u + j], field.one)
    num = shifted_factorial(d - c, N) * shifted_factorial(-i - j, N)
    den = shifted_factorial(c + u - i, N) * shifted_factorial(d + u + j, N)
    if field.is_zero(den):
        raise PoleBeforeTermination("closed form has a vanishing denominator")
    return lhs, num / den


def saalschutz_check(N: int, c, d, u, i, j, policy: EqPolicy | None = None) -> IdentityReport:
    lhs, rhs = saalschutz_sides(N, c, d, u, i, j)
    return make_report("saalschutz", lhs, rhs, policy, N=N)


def frenkel_turaev_sides(kind: BracketKind, delta, a0, a1, a2, a3, N: int, a4=None, field=None):
    field = field or common_field([delta, a0, a1, a2, a3] + ([a4] if a4 is not None else []))
    delta, a0, a1, a2, a3 = (field(x) for x in (delta, a0, a1, a2, a3))
    a5 = -N * delta
    balanced = 2 * a0 + delta - a1 - a2 - a3 - a5
    if a4 is None:
        a4 = balanced
    else:
        a4 = field(a4)
        if not field.is_zero(a4 - balanced, max(1, abs(a4))):
            raise BalancingViolated("a1+...+a5 != 2*a0 + delta")
    lhs = vwp(kind, delta, a0, [a1, a2, a3, a4, a5])

    def f(x):
        return delta_shifted_factorial(kind, x, delta, N, field)

    base = delta + a0
    num = f(base) * f(base - a1 - a2) * f(base - a1 - a3) * f(base - a2 - a3)
    den = f(base - a1) * f(base - a2) * f(base - a3) * f(base - a1 - a2 - a3)
    if field.is_zero(den):
        raise PoleBeforeTermination("closed form has a vanishing denominator")
    return lhs, num / den


def frenkel_turaev_check(kind: BracketKind, delta, a0, a1, a2, a3, N: int, a4=None,
                         policy: EqPolicy | None = None, field=None) -> IdentityReport:
    lhs, rhs = frenkel_turaev_sides(kind, delta, a0, a1, a2, a3, N, a4, field)
    return make_report("frenkel-turaev", lhs, rhs, policy, N=N, bracket=kind.variant)


def riemann_terms(kind: BracketKind, x, alpha, beta, gamma, field=None):
    """The three products of the three-term relation, in a fixed order."""
    field = field or common_field([x, alpha, beta, gamma])
    br = _evaluator(kind, field)

    def pm(p, q):
        return br(p + q) * br(p - q)

    return (
        pm(x, alpha) * pm(beta, gamma),
        pm(x, beta) * pm(gamma, alpha),
        pm(x, gamma) * pm(alpha, beta),
    )


def riemann_residual(kind: BracketKind, x, alpha, beta, gamma, field=None):
    t1, t2, t3 = riemann_terms(kind, x, alpha, beta, gamma, field)
    return t1 + t2 + t3


def riemann_check(kind: BracketKind, x, alpha, beta, gamma, rel_bound=None, field=None) -> IdentityReport:
    """Residual of the three-term relation against ``rel_bound * max|term|``.

    With ``rel_bound=None`` the residual must vanish exactly.
    """
    terms = riemann_terms(kind, x, alpha, beta, gamma, field)
    residual = terms[0] + terms[1] + terms[2]
    scale = max(abs(t) for t in terms)
    if rel_bound is None:
        holds = residual == 0
    else:
        holds = abs(residual) <= scale * rel_bound
    zero = residual - residual
    return IdentityReport(
        "riemann", residual, zero, holds,
        {"bracket": kind.variant, "max_term": float(scale), "residual": float(abs(residual))},
    )
