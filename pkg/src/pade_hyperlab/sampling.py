"""Seeded random inputs.

Every draw goes through one ``numpy.random.Generator`` on a Philox
bit generator, so a seed fixes the whole stream.  Rationals have
numerators in [-99, 99] and denominators in [1, 20].
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from .errors import InputError
from .linalg import Matrix
from .numerics import RATIONAL, complex_field
from .series import BracketKind

NUM_RANGE = 99
DEN_RANGE = 20
MAX_TRIES = 200


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(int(seed) % 2**64))


def trial_rng(seed: int, index: int) -> np.random.Generator:
    """Independent stream for trial ``index``, so trials can run in any order."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed) % 2**64, index])))


def random_rational(rng: np.random.Generator, nonzero: bool = False) -> Fraction:
    while True:
        num = int(rng.integers(-NUM_RANGE, NUM_RANGE + 1))
        if num or not nonzero:
            return Fraction(num, int(rng.integers(1, DEN_RANGE + 1)))


def random_rationals(rng, count: int, nonzero: bool = False) -> list:
    return [random_rational(rng, nonzero) for _ in range(count)]


# Brackets other than the rational one are periodic or quasi-periodic with
# periods of order 1, so arguments are kept within a few periods.  Larger
# ones add nothing but e^{x^2} growth and cancellation.
BRACKET_ARG_DIVISOR = 20


def random_bracket_args(rng, count: int, nonzero: bool = False) -> list:
    return [x / BRACKET_ARG_DIVISOR for x in random_rationals(rng, count, nonzero)]


def random_complex(rng, field, nonzero: bool = False):
    """A complex value with independent random rational parts."""
    while True:
        re, im = random_rational(rng), random_rational(rng)
        if re or im or not nonzero:
            return field((re, im))


def random_matrix(rng, rows: int, cols: Optional[int] = None, field=RATIONAL) -> Matrix:
    cols = rows if cols is None else cols
    if field.exact:
        data = [[random_rational(rng) for _ in range(cols)] for _ in range(rows)]
    else:
        data = [[random_complex(rng, field) for _ in range(cols)] for _ in range(rows)]
    return Matrix(data, field, cols)


def retry(draw: Callable, tries: int = MAX_TRIES):
    """Call ``draw()`` until it stops raising ``InputError``.

    Random parameters occasionally land on a pole or a degenerate
    configuration; such draws are discarded rather than patched.
    """
    last = None
    for _ in range(tries):
        try:
            return draw()
        except InputError as exc:
            last = exc
    raise last


# standard brackets used by the random suites


def standard_bracket(name: str) -> BracketKind:
    if name == "rational":
        return BracketKind.rational()
    if name in ("trig", "trigonometric"):
        return BracketKind.trigonometric(Fraction(37, 10))
    if name == "elliptic":
        return BracketKind.elliptic(Fraction(1), (Fraction(1, 5), Fraction(6, 5)))
    raise ValueError(f"unknown bracket {name!r}")


BRACKETS = ("rational", "trig", "elliptic")


def bracket_field(name: str, precision: int = 256, exact_rational: bool = True):
    if name == "rational" and exact_rational:
        return RATIONAL
    return complex_field(precision)


def random_weight_spec(rng, family: str, N: int, r: int = 1, args=random_rationals):
    """``args`` draws the bracket arguments ``s``, ``t``, ``e``."""
    from .pade.problem import WeightSpec

    if family == "explicit":
        return WeightSpec.from_pairs(
            [(random_rational(rng, True), random_rational(rng, True)) for _ in range(N + 1)]
        )
    z, w = random_rational(rng, True), random_rational(rng, True)
    if family in ("plain", "simplified"):
        return WeightSpec(family, s=args(rng, r), t=args(rng, r), z=z, w=w)
    return WeightSpec(family, e=args(rng, r), z=z, w=w)


def random_rational_hg_problem(rng, m: int, n: int, family: str = "explicit", r: int = 1,
                               generic: bool = True):
    from .pade.problem import build_rational_hg_problem, check_genericity

    def draw():
        ws = random_weight_spec(rng, family, m + n, r)
        a, b, c, d, u = random_rationals(rng, 5)
        prob = build_rational_hg_problem(a, b, c, d, u, m, n, ws)
        if generic:
            check_genericity(prob)
        return prob

    return retry(draw)


def random_vwp_problem(rng, bracket: str, m: int, n: int, family: str = "explicit", r: int = 1,
                       field=None, generic: bool = True, delta=None, kind: Optional[BracketKind] = None):
    from .pade.problem import build_vwp_problem, check_genericity

    kind = kind or standard_bracket(bracket)
    field = field or bracket_field(bracket)
    args = random_rationals if kind.variant == "rational" else random_bracket_args

    def draw():
        ws = random_weight_spec(rng, family, m + n, r, args)
        a, b, c, d, u = args(rng, 5)
        dl = delta if delta is not None else args(rng, 1, True)[0]
        prob = build_vwp_problem(kind, a, b, c, d, u, dl, m, n, ws, field)
        if generic:
            check_genericity(prob)
        return prob

    return retry(draw)
