from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import laplace_det
from pade_hyperlab.detformulas import (
    FactorizedDetInput,
    abstract_factorized_all,
    abstract_factorized_det,
    factorized_from_brackets,
    factorized_from_linear,
    factorized_rhs,
    krattenthaler_check,
    krattenthaler_lhs,
    krattenthaler_rhs,
    q_ratio_det_check,
    qpoch,
    shifted_ratio_check,
    shifted_ratio_det_rhs,
    tau_bilinear_check,
    warnaar_check,
    warnaar_shifted_check,
    warnaar_sides,
)
from pade_hyperlab.errors import (
    FactorizationViolated,
    InsufficientData,
    PoleInDenominator,
    ZeroDenominatorEntry,
)
from pade_hyperlab.numerics import EqPolicy, complex_field
from pade_hyperlab.sampling import make_rng, random_bracket_args, random_rationals
from pade_hyperlab.series import BracketKind

C = complex_field(256)
REL = EqPolicy.relative(1e-20, 1e-40)
RATIONAL_BR = BracketKind.rational()
TRIG = BracketKind.trigonometric(Fraction(37, 10))
ELLIPTIC = BracketKind.elliptic(1, (Fraction(1, 5), Fraction(6, 5)))

nz = st.fractions(min_value=-5, max_value=5, max_denominator=9)


def rats(seed, *sizes):
    rng = make_rng(seed)
    return [random_rationals(rng, k) for k in sizes]


def cplx(seed, *sizes):
    rng = make_rng(seed)
    return [[C(v) for v in random_bracket_args(rng, k)] for k in sizes]


def rising(a, k):
    out = Fraction(1)
    for i in range(k):
        out *= a + i
    return out


# the general linear form


def test_krattenthaler_m0():
    assert krattenthaler_lhs([Fraction(3)], [], [], [], []) == 1
    assert krattenthaler_rhs([Fraction(3)], [], [], [], []) == 1


def test_krattenthaler_m1_by_hand():
    x0, x1, al, be, ga, de = (Fraction(p, 7) for p in (2, -3, 5, 1, 4, 6))
    expect = (al * de - be * ga) * (x1 - x0) / ((ga * x0 + de) * (ga * x1 + de))
    assert krattenthaler_lhs([x0, x1], [al], [be], [ga], [de]) == expect
    assert krattenthaler_rhs([x0, x1], [al], [be], [ga], [de]) == expect


def test_krattenthaler_m4():
    x, *params = rats(1, 5, 4, 4, 4, 4)
    assert krattenthaler_lhs(x, *params) == krattenthaler_rhs(x, *params)
    assert krattenthaler_check(x, *params).holds


def test_krattenthaler_pole():
    with pytest.raises(ZeroDenominatorEntry):
        krattenthaler_rhs([Fraction(1), Fraction(2)], [1], [1], [Fraction(1)], [Fraction(-2)])
    with pytest.raises(ZeroDenominatorEntry):
        krattenthaler_lhs([Fraction(1), Fraction(2)], [1], [1], [Fraction(1)], [Fraction(-2)])


def test_krattenthaler_lengths():
    with pytest.raises(InsufficientData):
        krattenthaler_lhs([Fraction(1), Fraction(2)], [1], [1, 2], [1], [1])


@given(st.integers(0, 4).flatmap(lambda m: st.tuples(
    st.lists(nz, min_size=m + 1, max_size=m + 1),
    *[st.lists(nz, min_size=m, max_size=m) for _ in range(4)])))
def test_krattenthaler_random(data):
    x, *params = data
    try:
        rep = krattenthaler_check(x, *params)
    except ZeroDenominatorEntry:
        return
    assert rep.holds and rep.lhs == rep.rhs


# (a) shifted factorial ratios


def test_shifted_ratio_examples():
    a, b = Fraction(2, 3), Fraction(5, 7)
    assert shifted_ratio_det_rhs(a, b, [Fraction(4)]) == 1
    direct = 1 * (a + 1) / (b + 1) - a / b
    assert shifted_ratio_det_rhs(a, b, [Fraction(0), Fraction(1)]) == (b - a) / (b * (b + 1)) == direct
    x = random_rationals(make_rng(2), 4)
    rows = [[rising(a + xi, j) / rising(b + xi, j) for j in range(4)] for xi in x]
    assert shifted_ratio_det_rhs(a, b, x) == laplace_det(rows)
    assert shifted_ratio_check(a, b, x).holds


def test_shifted_ratio_pole():
    with pytest.raises(PoleInDenominator):
        shifted_ratio_det_rhs(Fraction(1, 2), Fraction(-1), [Fraction(0), Fraction(1)])


# (b), (c) q-analogues


def test_qpoch():
    assert qpoch(Fraction(1, 2), Fraction(1, 3), 0) == 1
    assert qpoch(Fraction(1, 2), Fraction(1, 3), 2) == Fraction(1, 2) * Fraction(5, 6)


def test_q_ratio_m0():
    for case, extra in (("b", {}), ("c", {"c": C(Fraction(2, 3))})):
        rep = q_ratio_det_check(case, [C(Fraction(1, 3))], C(2), C(3), C(Fraction(1, 2)), **extra)
        assert rep.lhs == 1 and rep.rhs == 1 and rep.holds


def _unit(rng):
    t = float(rng.uniform(0, 6.283))
    r = float(rng.uniform(0.3, 0.95))
    return C(r * complex(__import__("cmath").exp(1j * t)))


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_q_ratio_case_b(seed):
    rng = make_rng(seed)
    nodes = [_unit(rng) for _ in range(4)]
    a, b, q, p = (_unit(rng) for _ in range(4))
    rep = q_ratio_det_check("b", nodes, a, b, q, policy=REL)
    assert rep.holds and rep.details["equal_bases"]
    assert q_ratio_det_check("b", nodes, a, b, q, p=p, policy=REL).holds


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_q_ratio_case_c(seed):
    rng = make_rng(seed)
    z = [_unit(rng) for _ in range(4)]
    a, b, c, q, p = (_unit(rng) for _ in range(5))
    rep = q_ratio_det_check("c", z, a, b, q, c=c, policy=REL)
    assert rep.holds and rep.details["equal_bases"]
    assert q_ratio_det_check("c", z, a, b, q, p=p, c=c, policy=REL).holds


def test_q_ratio_errors():
    with pytest.raises(InsufficientData):
        q_ratio_det_check("c", [C(1), C(2)], C(2), C(3), C(Fraction(1, 2)))
    with pytest.raises(PoleInDenominator):
        q_ratio_det_check("b", [C(1), C(2)], C(2), C(1), C(Fraction(1, 2)))


# bracket forms


def test_warnaar_m0():
    for kind in (RATIONAL_BR, ELLIPTIC):
        lhs, rhs = warnaar_sides(kind, [C(Fraction(1, 3))], [], [])
        assert lhs == 1 and rhs == 1


def test_warnaar_rational_m3_is_krattenthaler():
    x, a, b = rats(3, 4, 3, 3)
    rep = warnaar_check(RATIONAL_BR, x, a, b)
    assert rep.holds and rep.lhs == rep.rhs
    # [a +- x] = a^2 - x^2 is linear in y = x^2
    y = [v * v for v in x]
    lin = krattenthaler_lhs(y, [-1] * 3, [v * v for v in a], [-1] * 3, [v * v for v in b])
    assert lin == rep.lhs


@pytest.mark.parametrize("kind", [TRIG, ELLIPTIC])
def test_warnaar_m3(kind):
    x, a, b = cplx(4, 4, 3, 3)
    assert warnaar_check(kind, x, a, b, REL, C).holds


def test_warnaar_pole():
    x = [C(Fraction(1, 3)), C(Fraction(1, 2))]
    with pytest.raises(PoleInDenominator):
        warnaar_check(ELLIPTIC, x, [C(Fraction(1, 7))], [C(Fraction(1, 2))], REL, C)


def test_warnaar_shifted_examples():
    d = C(Fraction(3, 20))
    a, b = C(Fraction(1, 9)), C(Fraction(-2, 7))
    rep = warnaar_shifted_check(ELLIPTIC, a, b, d, [C(Fraction(1, 5))], REL, C)
    assert rep.lhs == 1 and rep.rhs == 1
    (x,) = cplx(5, 3)
    assert warnaar_shifted_check(ELLIPTIC, a, b, d, x, REL, C).holds
    (x,) = cplx(6, 4)
    assert warnaar_shifted_check(TRIG, a, b, d, x, REL, C).holds
    x = random_rationals(make_rng(7), 4)
    assert warnaar_shifted_check(RATIONAL_BR, Fraction(1, 9), Fraction(-2, 7), Fraction(1), x).holds


# abstract factorized form


def test_abstract_m0():
    inp = factorized_from_linear(*rats(8, 3, 2, 2, 2, 2))
    assert abstract_factorized_det(inp, 0).lhs == 1


def test_abstract_from_linear_matches_krattenthaler():
    x, *params = rats(9, 5, 4, 4, 4, 4)
    inp = factorized_from_linear(x, *params)
    for rep in abstract_factorized_all(inp):
        assert rep.holds and rep.lhs == rep.rhs
    assert factorized_rhs(inp, 4) == krattenthaler_rhs(x, *params)


def test_abstract_from_brackets():
    x, a, b = cplx(10, 4, 3, 3)
    inp = factorized_from_brackets(ELLIPTIC, x, a, b, REL, C)
    assert all(r.holds for r in abstract_factorized_all(inp, REL))


def test_factorized_validation():
    inp = factorized_from_linear(*rats(11, 3, 2, 2, 2, 2))
    p = [list(r) for r in inp.p]
    p[0][1] += 1
    with pytest.raises(FactorizationViolated) as err:
        FactorizedDetInput(inp.a, inp.b, p, inp.q)
    assert err.value.indices == (0, 1)
    q = [list(r) for r in inp.q]
    q[0][1] += 1
    with pytest.raises(FactorizationViolated):
        FactorizedDetInput(inp.a, inp.b, inp.p, q)
    b = [list(r) for r in inp.b]
    b[1][0] = Fraction(0)
    with pytest.raises(FactorizationViolated):
        FactorizedDetInput(inp.a, b, inp.p, inp.q)
    with pytest.raises(InsufficientData):
        FactorizedDetInput(inp.a, inp.b[:2], inp.p, inp.q)


def test_tau_bilinear_examples():
    inp = factorized_from_linear(*rats(12, 3, 2, 2, 2, 2))
    rep = tau_bilinear_check(inp, 1)
    assert rep.holds and rep.lhs == rep.rhs
    inp = factorized_from_linear(*rats(13, 4, 3, 3, 3, 3))
    assert tau_bilinear_check(inp, 2).holds
    x, a, b = cplx(14, 4, 3, 3)
    inp = factorized_from_brackets(ELLIPTIC, x, a, b, REL, C)
    assert tau_bilinear_check(inp, 2, REL).holds


def test_tau_bilinear_needs_data():
    inp = factorized_from_linear(*rats(15, 3, 2, 2, 2, 2))
    with pytest.raises(InsufficientData):
        tau_bilinear_check(inp, 0)
    with pytest.raises(InsufficientData):
        tau_bilinear_check(inp, 2)


@given(st.integers(1, 4).flatmap(lambda N: st.tuples(
    st.lists(nz, min_size=N + 1, max_size=N + 1),
    *[st.lists(nz, min_size=N, max_size=N) for _ in range(4)])))
def test_abstract_and_tau_random(data):
    try:
        inp = factorized_from_linear(*data)
    except FactorizationViolated:
        return
    for rep in abstract_factorized_all(inp):
        assert rep.holds
    for m in range(1, inp.N):
        assert tau_bilinear_check(inp, m).holds
