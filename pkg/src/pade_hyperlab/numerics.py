"""Scalar backends and equality policies.

Two kinds of scalar are used throughout the package:

* exact rationals, represented by :class:`fractions.Fraction` (Python ints are
  accepted wherever a rational is expected);
* complex numbers at a fixed binary precision, represented by ``mpc`` values
  of a dedicated :class:`mpmath.MPContext`.  Each precision gets exactly one
  context (see :func:`complex_field`), so the precision of a value can always
  be recovered from ``value.context.prec``.

Field objects (:data:`RATIONAL` and the instances returned by
:func:`complex_field`) convert raw inputs into scalars and serialize them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Integral, Rational
from typing import Any, Sequence, Union

import mpmath
from mpmath.libmp import to_str

from .errors import AllZeroVectors, LengthMismatch, MixedScalarKinds, ZeroDenominator

DEFAULT_PRECISION = 256

Scalar = Union[Fraction, Any]


def rational(num: int, den: int = 1) -> Fraction:
    """Return ``num/den`` reduced, with a positive denominator."""
    if den == 0:
        raise ZeroDenominator(f"zero denominator in {num}/{den}")
    return Fraction(num, den)


def parse_rational(text: Union[str, int, Fraction]) -> Fraction:
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise TypeError(f"cannot read a rational from {text!r}")
    num, sep, den = text.strip().partition("/")
    if not sep:
        return Fraction(num)
    return rational(int(num), int(den))


class RationalField:
    """Exact rational arithmetic."""

    name = "rational"
    exact = True
    precision = None

    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, (Integral, Rational)) and not isinstance(x, bool):
            return Fraction(x)
        if isinstance(x, str):
            return parse_rational(x)
        raise MixedScalarKinds(f"cannot use {type(x).__name__} value {x!r} as an exact rational")

    def is_zero(self, x, scale=None) -> bool:
        return x == 0

    def to_json(self, x) -> str:
        x = self(x)
        return f"{x.numerator}/{x.denominator}"

    def from_json(self, obj) -> Fraction:
        return parse_rational(obj)

    def __repr__(self):
        return "RATIONAL"


RATIONAL = RationalField()


class ComplexField:
    """Complex arithmetic at ``precision`` bits, backed by an mpmath context."""

    exact = False

    def __init__(self, precision: int = DEFAULT_PRECISION):
        if precision < 53:
            raise ValueError("precision must be at least 53 bits")
        self.precision = precision
        self.ctx = mpmath.MPContext()
        self.ctx.prec = precision
        self.name = f"complex{precision}"
        self.zero = self.ctx.mpc(0)
        self.one = self.ctx.mpc(1)
        # scale used by the zero test: a few guard bits above unit roundoff
        self.eps = self.ctx.ldexp(self.ctx.mpf(1), -(precision - 16))
        self._digits = int(math.ceil(precision * math.log10(2))) + 3

    def __call__(self, x):
        ctx = self.ctx
        if isinstance(x, Fraction):
            return ctx.mpc(ctx.mpf(x.numerator) / x.denominator)
        if isinstance(x, bool):
            raise TypeError("booleans are not scalars")
        if isinstance(x, (int, float, complex, str)):
            return ctx.mpc(x)
        if isinstance(x, tuple) and len(x) == 2:
            re, im = (self(v).real for v in x)
            return ctx.mpc(re, im)
        context = getattr(x, "context", None)
        if context is not None:
            if context.prec != self.precision:
                raise MixedScalarKinds(
                    f"value at {context.prec} bits used in a {self.precision}-bit computation"
                )
            return x if context is ctx else ctx.mpc(x)
        raise MixedScalarKinds(f"cannot convert {type(x).__name__} to {self.name}")

    def is_zero(self, x, scale=None) -> bool:
        scale = 1 if scale is None else scale
        return abs(x) <= self.eps * scale

    def to_json(self, x) -> list:
        x = self(x)
        return [
            to_str(x.real._mpf_, self._digits),
            to_str(x.imag._mpf_, self._digits),
            self.precision,
        ]

    def from_json(self, obj):
        if isinstance(obj, list):
            if len(obj) != 3:
                raise ValueError(f"complex scalar must be [re, im, bits], got {obj!r}")
            re, im, bits = obj
            if int(bits) != self.precision:
                raise MixedScalarKinds(f"scalar stored at {bits} bits, expected {self.precision}")
            return self.ctx.mpc(self.ctx.mpf(re), self.ctx.mpf(im))
        if isinstance(obj, str) and "/" in obj:
            return self(parse_rational(obj))
        return self(obj)

    def __repr__(self):
        return f"complex_field({self.precision})"


@lru_cache(maxsize=None)
def complex_field(precision: int = DEFAULT_PRECISION) -> ComplexField:
    return ComplexField(precision)


def field_of(x):
    """Return the field a scalar belongs to."""
    if isinstance(x, (Fraction, int)) and not isinstance(x, bool):
        return RATIONAL
    context = getattr(x, "context", None)
    if context is not None:
        return complex_field(context.prec)
    raise MixedScalarKinds(f"{type(x).__name__} is not a supported scalar")


def common_field(values: Sequence):
    """The single field shared by ``values``; mixing kinds or precisions is an error.

    Exact values may be mixed into a complex computation (they are exactly
    representable inputs), so a list holding rationals and one complex field
    resolves to that complex field.
    """
    found = None
    for v in values:
        f = field_of(v)
        if f is RATIONAL:
            continue
        if found is None:
            found = f
        elif found is not f:
            raise MixedScalarKinds(
                f"mixed precisions: {found.precision} and {f.precision} bits"
            )
    return found if found is not None else RATIONAL


def magnitude(x):
    """|x| as a Fraction (exact) or an mpf (complex)."""
    return abs(x)


@dataclass(frozen=True)
class EqPolicy:
    """How two scalars are compared.

    ``mode == "exact"`` demands equality; ``mode == "relative"`` accepts
    ``|a-b| <= max(abs_floor, rel_tol*max(|a|, |b|))``.
    """

    mode: str = "exact"
    rel_tol: float = 0.0
    abs_floor: float = 0.0

    def __post_init__(self):
        if self.mode not in ("exact", "relative"):
            raise ValueError(f"unknown policy mode {self.mode!r}")
        if self.rel_tol < 0 or self.abs_floor < 0:
            raise ValueError("tolerances must be nonnegative")

    @classmethod
    def relative(cls, rel_tol: float, abs_floor: float = 0.0) -> "EqPolicy":
        return cls("relative", rel_tol, abs_floor)

    @property
    def is_exact(self) -> bool:
        return self.mode == "exact"


EXACT = EqPolicy()


def default_policy(field) -> EqPolicy:
    if field.exact:
        return EXACT
    # the unit roundoff is 2**-precision; leave half of the digits as headroom
    return EqPolicy.relative(float(2.0 ** (-(field.precision // 2))), 0.0)


def _pair_field(a, b):
    fa, fb = field_of(a), field_of(b)
    if fa is not fb:
        raise MixedScalarKinds(f"cannot compare {fa.name} with {fb.name}")
    return fa


def scalar_eq(a, b, policy: EqPolicy = EXACT) -> bool:
    field = _pair_field(a, b)
    if policy.is_exact:
        if not field.exact:
            raise MixedScalarKinds("exact comparison requires exact rational scalars")
        return a == b
    return _close(a, b, policy)


def _close(a, b, policy: EqPolicy) -> bool:
    diff = abs(a - b)
    bound = max(abs(a), abs(b)) * _as_num(policy.rel_tol, a)
    return diff <= bound or diff <= _as_num(policy.abs_floor, a)


def _as_num(t: float, like):
    if isinstance(like, (Fraction, int)):
        return Fraction(t)
    return like.context.mpf(t)


def proj_eq(v: Sequence, w: Sequence, policy: EqPolicy = EXACT) -> bool:
    """True iff ``w = c*v`` for one nonzero scalar ``c``, componentwise under ``policy``.

    ``c`` is taken from the first index where both components are above the
    policy floor.  Under a relative policy both vectors are first scaled to unit
    max-modulus, which leaves projective equality unchanged but makes the
    absolute floor meaningful for vectors of any magnitude.
    """
    if len(v) != len(w):
        raise LengthMismatch(f"vectors of length {len(v)} and {len(w)}")
    if len(v) == 0:
        raise LengthMismatch("empty vectors")
    for x, y in zip(v, w):
        _pair_field(x, y)
    v_zero = all(x == 0 for x in v)
    w_zero = all(y == 0 for y in w)
    if v_zero and w_zero:
        raise AllZeroVectors("both vectors are zero")
    if v_zero or w_zero:
        return False

    if not policy.is_exact:
        v = _normalized(v)
        w = _normalized(w)
        floor = _as_num(policy.abs_floor, v[0])
        pivot = next((i for i, (x, y) in enumerate(zip(v, w)) if abs(x) > floor and abs(y) > floor), None)
    else:
        field = field_of(v[0])
        if not field.exact:
            raise MixedScalarKinds("exact comparison requires exact rational scalars")
        pivot = next((i for i, (x, y) in enumerate(zip(v, w)) if x != 0 and y != 0), None)
    if pivot is None:
        return False
    c = Fraction(w[pivot], v[pivot]) if policy.is_exact else w[pivot] / v[pivot]
    return all(scalar_eq(c * x, y, policy) for x, y in zip(v, w))


def _normalized(v):
    scale = max(abs(x) for x in v)
    return [x / scale for x in v]


def proj_ratio(v: Sequence, w: Sequence):
    """The scalar ``c`` with ``w ~ c*v``, taken at the largest component of ``v``."""
    i = max(range(len(v)), key=lambda k: abs(v[k]))
    return w[i] / v[i]


def prod(values, start=None):
    """Product in a fixed left-to-right order."""
    it = iter(values)
    acc = start
    for v in it:
        acc = v if acc is None else acc * v
    return Fraction(1) if acc is None else acc
