from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import pade_by_linear_solve
from pade_hyperlab.errors import DegeneratePoints, DegenerateSolution, SingularCoreMinor, ZeroWeight
from pade_hyperlab.linalg import det, minor_det
from pade_hyperlab.numerics import EXACT, EqPolicy, complex_field, proj_eq
from pade_hyperlab.pade import (
    WeightSpec,
    build_custom_problem,
    build_rational_hg_problem,
    check_genericity,
    condensed_U,
    condensed_V,
    solve_bruteforce,
    solve_condensed,
)
from pade_hyperlab.pade.universal import (
    PadeSolution,
    Route,
    condensed_prefactors,
    evaluate_P,
    evaluate_Q,
    residual_R,
)
from pade_hyperlab.sampling import make_rng, random_rational_hg_problem, random_vwp_problem

REL = EqPolicy.relative(1e-20, 1e-40)


def hg(seed, m, n, family="explicit"):
    return random_rational_hg_problem(make_rng(seed), m, n, family)


def residuals(prob, sol):
    return [residual_R(prob, sol, u, lam, mu) for u, (lam, mu) in zip(prob.points, prob.weights)]


def poly_problem(m, n, points, weights):
    f = [lambda x, j=j: x**j for j in range(m + 1)]
    g = [lambda x, j=j: (x + 1) ** j for j in range(n + 1)]
    return build_custom_problem(f, g, points, weights)


# problem construction


def test_m0_n0():
    lam, mu = Fraction(3, 4), Fraction(-2, 5)
    prob = build_rational_hg_problem(1, 5, 2, 7, 0, 0, 0, WeightSpec.from_pairs([(lam, mu)]))
    sol = solve_bruteforce(prob)
    assert proj_eq(sol.p + sol.q, (lam, mu))


def test_well_posed_small_instance():
    prob = build_rational_hg_problem(1, 5, 2, 7, 0, 1, 1, WeightSpec("plain"))
    check_genericity(prob)

    def f(x):
        return Fraction(1 + x, 5 + x)

    def g(x):
        return Fraction(2 + x, 7 + x)

    # the four consecutive 2x2 minors of F and G, by hand
    minors = [f(1) - f(0), f(2) - f(1), g(1) - g(0), g(2) - g(1)]
    assert all(v != 0 for v in minors)
    assert minor_det(prob.F, [0, 1], [0, 1]) == minors[0]
    assert minor_det(prob.G, [1, 2], [0, 1]) == minors[3]


def test_duplicate_points_rejected():
    with pytest.raises(DegeneratePoints):
        poly_problem(1, 0, [Fraction(1), Fraction(1)], [(1, 1), (1, 1)])


def test_zero_weight_rejected():
    with pytest.raises(ZeroWeight):
        poly_problem(1, 0, [Fraction(1), Fraction(2)], [(1, 1), (0, 1)])


# brute force


def test_lagrange_reduction():
    rng = make_rng(4)
    pts = [Fraction(k, 3) for k in range(5)]
    vals = [Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 5))) or Fraction(1) for _ in pts]
    prob = poly_problem(4, 0, pts, [(v, 1) for v in vals])
    sol = solve_bruteforce(prob)
    assert len(sol.q) == 1 and sol.q[0] != 0
    for u, v in zip(pts, vals):
        assert evaluate_P(prob, sol, u) / sol.q[0] == v


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (1, 2), (0, 3), (3, 0)])
def test_brute_residuals_vanish(m, n):
    prob = hg(10 * m + n, m, n)
    sol = solve_bruteforce(prob)
    assert all(r == 0 for r in residuals(prob, sol))
    assert sol.details["largest_det"] == m + n + 2


def test_brute_matches_linear_solve_oracle():
    for seed in range(5):
        prob = hg(seed, 2, 2)
        p, q = pade_by_linear_solve(prob.F.tolist(), prob.G.tolist(), prob.weights)
        sol = solve_bruteforce(prob)
        # the oracle solves mu P = lambda Q directly
        assert proj_eq(sol.p + sol.q, p + q)


def test_residual_R_cases():
    prob = hg(20, 1, 1)
    sol = solve_bruteforce(prob)
    x = Fraction(3, 17)
    assert residual_R(prob, sol, x, 0, 1) == evaluate_P(prob, sol, x)
    assert residual_R(prob, sol, x, 1, 0) == -evaluate_Q(prob, sol, x)


def test_degenerate_solution_raised():
    with pytest.raises(DegenerateSolution):
        PadeSolution((0, 0), (0,), Route.BRUTE_FORCE)


def test_brute_float_residuals():
    prob = random_vwp_problem(make_rng(5), "elliptic", 1, 1)
    sol = solve_bruteforce(prob)
    for r, (lam, mu), u in zip(residuals(prob, sol), prob.weights, prob.points):
        scale = abs(mu * evaluate_P(prob, sol, u)) + abs(lam * evaluate_Q(prob, sol, u))
        assert abs(r) <= 1e-60 * scale


# condensed route


@pytest.mark.parametrize("m,n", [(1, 1), (2, 2), (0, 2), (2, 0), (3, 1)])
def test_condensed_equals_brute_exactly(m, n):
    prob = hg(30 + 10 * m + n, m, n)
    b, c = solve_bruteforce(prob), solve_condensed(prob)
    assert b.p == c.p and b.q == c.q
    assert c.details["largest_det"] == max(m, n) + 1


def test_condensed_m0_is_prefactor_times_f0():
    prob = hg(40, 0, 2)
    sol = solve_condensed(prob)
    pf, _ = condensed_prefactors(prob)
    assert sol.p == (pf,)
    bare = solve_condensed(prob, with_prefactors=False)
    assert bare.p == (1,) and bare.normalization is None


def test_condensed_float_matches_brute():
    prob = random_vwp_problem(make_rng(6), "elliptic", 2, 1)
    b, c = solve_bruteforce(prob), solve_condensed(prob)
    assert all(abs(x - y) <= 1e-30 * max(abs(x), abs(y)) + 1e-60 for x, y in zip(b.coefficients, c.coefficients))


def test_U_V_series_equal_determinant_form():
    prob = hg(50, 2, 2, "plain")
    for i in range(2):
        for j in range(3):
            assert condensed_U(prob, i, j) == condensed_U(prob, i, j, form="det")
            assert condensed_V(prob, i, j) == condensed_V(prob, i, j, form="det")


def test_U_V_series_equal_determinant_form_elliptic():
    prob = random_vwp_problem(make_rng(7), "elliptic", 2, 2, "vwp-e")
    for i in range(2):
        for j in range(3):
            a, b = condensed_U(prob, i, j), condensed_U(prob, i, j, form="det")
            assert abs(a - b) <= 1e-30 * abs(a) + 1e-60
            a, b = condensed_V(prob, i, j), condensed_V(prob, i, j, form="det")
            assert abs(a - b) <= 1e-30 * abs(a) + 1e-60


def test_U_vanishes_when_f_column_repeats_a_g_column():
    # f_1 = g_1 and lambda_k = mu_k, so the bordered determinant for U_{i,1}
    # has two equal columns
    f = [lambda x: 1, lambda x: x * x]
    g = [lambda x: 1, lambda x: x * x, lambda x: x**3]
    pts = [Fraction(k + 1, 2) for k in range(4)]
    prob = build_custom_problem(f, g, pts, [(Fraction(k + 2), Fraction(k + 2)) for k in range(4)])
    assert condensed_U(prob, 0, 1) == 0
    assert condensed_U(prob, 0, 1, form="det") == 0


def test_condensed_index_checks():
    prob = hg(51, 1, 1)
    with pytest.raises(IndexError):
        condensed_U(prob, 1, 0)
    with pytest.raises(IndexError):
        condensed_V(prob, 0, 2)


def test_singular_window_raises():
    # x^2 takes equal values at -1 and 1, so the F minor on rows 1..2 vanishes
    f = [lambda x: 1, lambda x: x * x]
    g = [lambda x: 1, lambda x: x]
    prob = build_custom_problem(f, g, [Fraction(2), Fraction(-1), Fraction(1)], [(1, 2), (3, 1), (5, 7)])
    with pytest.raises(SingularCoreMinor):
        check_genericity(prob)
    with pytest.raises(SingularCoreMinor):
        solve_condensed(prob)
    # brute force has no genericity hypothesis
    sol = solve_bruteforce(prob, check=False)
    assert all(r == 0 for r in residuals(prob, sol))


# invariances


@given(st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=9).filter(bool), min_size=4, max_size=4))
def test_weight_scaling_invariance(factors):
    prob = hg(60, 2, 1)
    scaled = prob.with_weights([(c * l, c * u) for c, (l, u) in zip(factors, prob.weights)])
    base = solve_bruteforce(prob)
    for solver in (solve_bruteforce, solve_condensed):
        sol = solver(scaled)
        assert proj_eq(sol.p, base.p) and proj_eq(sol.q, base.q)
        assert proj_eq(sol.coefficients, base.coefficients)


@given(st.integers(0, 2), st.integers(0, 2), st.integers(0, 10**6))
def test_routes_agree_random(m, n, seed):
    prob = random_rational_hg_problem(make_rng(seed), m, n, "explicit")
    b = solve_bruteforce(prob)
    c = solve_condensed(prob)
    assert b.coefficients == c.coefficients
    p, q = pade_by_linear_solve(prob.F.tolist(), prob.G.tolist(), prob.weights)
    assert proj_eq(b.coefficients, p + q)
