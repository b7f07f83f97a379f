import json
from fractions import Fraction

import pytest

from pade_hyperlab.errors import InputError, SpecError
from pade_hyperlab.numerics import EqPolicy, complex_field, proj_eq
from pade_hyperlab.pade import PadeSolution, Route, crosscheck, solve, solve_bruteforce, verify_solution
from pade_hyperlab.pade import specio
from pade_hyperlab.pade.bench import bench
from pade_hyperlab.sampling import make_rng, random_rational_hg_problem, random_vwp_problem

REL = EqPolicy.relative(1e-15, 1e-30)

HG_SPEC = {
    "scalar": "rational",
    "family": "rational-hg",
    "params": {"a": "1/3", "b": "5/2", "c": "-2/7", "d": "3", "u": "1/5"},
    "degrees": {"m": 1, "n": 1},
    "weights": {"explicit": [["1", "2"], ["3/4", "5"], ["-7", "1/9"]]},
}

ELL_SPEC = {
    "scalar": "complex256",
    "family": "vwp",
    "bracket": {"kind": "elliptic", "omega1": "1", "omega2": ["1/5", "6/5"]},
    "params": {"a": "1/9", "b": "-2/7", "c": "3/11", "d": "5/13", "u": "1/17", "delta": "3/20"},
    "degrees": {"m": 1, "n": 1},
    "weights": {"family": "vwp-e", "params": {"e": ["3/7"], "z": "2/3", "w": "-5/4"}},
}


def test_problem_round_trip_exact():
    prob = specio.problem_from_json(HG_SPEC)
    again = specio.problem_from_json(json.loads(specio.dumps(specio.problem_to_json(prob))))
    assert again.points == prob.points and again.weights == prob.weights
    assert solve_bruteforce(again).coefficients == solve_bruteforce(prob).coefficients


def test_problem_round_trip_elliptic():
    prob = specio.problem_from_json(ELL_SPEC)
    again = specio.problem_from_json(json.loads(specio.dumps(specio.problem_to_json(prob))))
    assert proj_eq(solve_bruteforce(again).coefficients, solve_bruteforce(prob).coefficients, REL)


@pytest.mark.parametrize("seed", range(4))
def test_random_problem_round_trip(seed):
    rng = make_rng(seed)
    for prob in (random_rational_hg_problem(rng, 2, 1, "plain"),
                 random_vwp_problem(rng, "rational", 1, 2, "vwp-e")):
        data = specio.problem_to_json(prob)
        assert specio.problem_to_json(specio.problem_from_json(data)) == data


def test_solution_round_trip():
    C = complex_field(256)
    prob = specio.problem_from_json(ELL_SPEC)
    sol = solve(prob, "vwp-ft")
    back = specio.solution_from_json(json.loads(specio.dumps(specio.solution_to_json(sol, C))), C)
    assert back.route == Route.VWP_FRENKEL_TURAEV
    assert proj_eq(back.coefficients, sol.coefficients, EqPolicy.relative(1e-70, 1e-140))


@pytest.mark.parametrize("broken, message", [
    ([], "JSON object"),
    ({**HG_SPEC, "scalar": "complex12"}, "53"),
    ({**HG_SPEC, "scalar": "quaternion"}, "scalar"),
    ({k: v for k, v in HG_SPEC.items() if k != "params"}, "params"),
    ({**HG_SPEC, "degrees": {"m": -1, "n": 1}}, "degrees"),
    ({**HG_SPEC, "family": "other"}, "family"),
    ({**HG_SPEC, "params": {**HG_SPEC["params"], "a": 0.5}}, "scalar"),
])
def test_malformed_specs(broken, message):
    with pytest.raises(SpecError, match=message):
        specio.problem_from_json(broken)


def test_degenerate_spec_is_input_error():
    # a step equal to a period makes neighbouring nodes indistinguishable
    bad = {**ELL_SPEC, "params": {**ELL_SPEC["params"], "delta": "1"}}
    with pytest.raises(InputError):
        specio.problem_from_json(bad)


def test_load_json_errors(tmp_path):
    with pytest.raises(SpecError, match="cannot read"):
        specio.load_json(str(tmp_path / "missing.json"))
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(SpecError, match="not valid JSON"):
        specio.load_json(str(bad))


def test_verify_exact_zero_residuals():
    prob = specio.problem_from_json(HG_SPEC)
    rep = verify_solution(prob, solve_bruteforce(prob))
    assert rep.passed and all(r == 0 for r in rep.residuals) and rep.max_residual == 0
    assert len(rep.off_node) == 3


def test_verify_catches_perturbation():
    prob = specio.problem_from_json(HG_SPEC)
    sol = solve_bruteforce(prob)
    p = list(sol.p)
    p[0] += Fraction(1, 1000)
    rep = verify_solution(prob, PadeSolution(p, sol.q, sol.route))
    assert not rep.passed and rep.max_residual != 0


def test_verify_float_elliptic():
    prob = specio.problem_from_json(ELL_SPEC)
    rep = verify_solution(prob, solve_bruteforce(prob), REL)
    assert rep.passed and rep.max_residual < 1e-60


def test_verify_off_node_points_are_deterministic():
    prob = specio.problem_from_json(HG_SPEC)
    sol = solve_bruteforce(prob)
    assert verify_solution(prob, sol, seed=5).off_node == verify_solution(prob, sol, seed=5).off_node


def test_crosscheck_all_routes_exact():
    rep = crosscheck(specio.problem_from_json(HG_SPEC))
    assert rep.passed and set(rep.routes) == {"brute", "condensed", "hg-k", "hg-s"}
    assert all(v["p"] and v["q"] and v["exact"] for v in rep.pairs.values())
    json.dumps(rep.to_json(specio.field_for("rational")))


def test_crosscheck_elliptic():
    rep = crosscheck(specio.problem_from_json(ELL_SPEC), policy=REL)
    assert rep.passed and set(rep.routes) == {"brute", "condensed", "vwp-k", "vwp-ft"}


def test_crosscheck_skips_rejecting_route():
    # this instance puts a zero in a denominator of the Saalschutz L matrix
    spec = {**HG_SPEC, "params": {"a": "1", "b": "2", "c": "-2/7", "d": "3", "u": "0"}}
    prob = specio.problem_from_json(spec)
    rep = crosscheck(prob)
    assert rep.passed and "PoleInL" in rep.skipped["hg-s"]
    assert set(rep.routes) == {"brute", "condensed", "hg-k"}
    with pytest.raises(InputError):
        crosscheck(prob, ["brute", "hg-s"])


def test_bench_report():
    rep = bench(2, 2, trials=2, seed=0, repeats=1)
    assert rep["largest_det"] == {"brute": 6, "condensed": 3}
    assert rep["passed"] and len(rep["records"]) == 2
    assert all(r["brute_s"] > 0 and r["condensed_s"] > 0 for r in rep["records"])
