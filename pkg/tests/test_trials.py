from fractions import Fraction

import pytest

from pade_hyperlab import trials as T
from pade_hyperlab.errors import InputError
from pade_hyperlab.numerics import RATIONAL, complex_field
from pade_hyperlab.sampling import (
    BRACKET_ARG_DIVISOR,
    make_rng,
    random_bracket_args,
    random_rational,
    random_vwp_problem,
    retry,
    standard_bracket,
    trial_rng,
)


def test_rationals_in_range():
    rng = make_rng(3)
    for _ in range(500):
        x = random_rational(rng)
        assert abs(x.numerator) <= 99 and 1 <= x.denominator <= 20
    assert all(x != 0 for x in (random_rational(rng, True) for _ in range(200)))


def test_bracket_args_are_scaled():
    a = random_bracket_args(make_rng(1), 50)
    assert a[0] == random_rational(make_rng(1)) / BRACKET_ARG_DIVISOR
    assert all(abs(x) <= Fraction(99, BRACKET_ARG_DIVISOR) for x in a)


def test_same_seed_same_draws():
    assert random_bracket_args(make_rng(7), 10) == random_bracket_args(make_rng(7), 10)
    assert random_bracket_args(trial_rng(7, 2), 5) == random_bracket_args(trial_rng(7, 2), 5)
    assert random_bracket_args(trial_rng(7, 2), 5) != random_bracket_args(trial_rng(7, 3), 5)


def test_retry_redraws_then_gives_up():
    calls = []

    def draw():
        calls.append(1)
        if len(calls) < 3:
            raise InputError("bad draw")
        return "ok"

    assert retry(draw) == "ok" and len(calls) == 3

    def never():
        raise InputError("always")

    with pytest.raises(InputError, match="always"):
        retry(never, tries=4)


def _summary(results):
    return [[r.to_json() for r in reps] for reps in results]


@pytest.mark.parametrize("threads", [2, 4])
def test_threads_match_serial(threads):
    C = complex_field(128)
    kind = standard_bracket("elliptic")
    trial = lambda rng: T.riemann_trial(rng, kind, C)  # noqa: E731
    serial = T.run_trials(trial, 11, 8, threads=1)
    assert _summary(T.run_trials(trial, 11, 8, threads=threads)) == _summary(serial)


def test_thread_count_env(monkeypatch):
    monkeypatch.setenv(T.THREADS_ENV, "3")
    assert T.thread_count() == 3
    monkeypatch.setenv(T.THREADS_ENV, "zero")
    assert T.thread_count() == 1
    monkeypatch.delenv(T.THREADS_ENV)
    assert T.thread_count() == 1


def test_degenerate_draw_rejected():
    C = complex_field(128)
    kind = standard_bracket("trig")
    with pytest.raises(T.DegenerateDraw):
        T._reject_lattice_pairs(kind, C, [C(Fraction(1, 4)), C(Fraction(1, 4) + Fraction(37, 10))])
    with pytest.raises(T.DegenerateDraw):
        T._reject_lattice_pairs(kind, C, [C(Fraction(1, 4)), C(Fraction(-1, 4))])
    T._reject_lattice_pairs(kind, C, [C(Fraction(1, 4)), C(Fraction(1, 3))])


@pytest.mark.parametrize("trial", [
    lambda rng: T.condense_trial(rng, 5, None, RATIONAL),
    lambda rng: T.condense_trial(rng, 5, 2, RATIONAL),
    lambda rng: T.saalschutz_trial(rng, RATIONAL),
    lambda rng: T.frenkel_turaev_trial(rng, standard_bracket("rational"), RATIONAL),
    lambda rng: T.riemann_trial(rng, standard_bracket("rational"), RATIONAL),
    lambda rng: T.krattenthaler_trial(rng, 3, RATIONAL),
    lambda rng: T.warnaar_trial(rng, standard_bracket("rational"), 3, RATIONAL),
    lambda rng: T.abstract_trial(rng, None, 3, RATIONAL),
])
def test_exact_trials_hold(trial):
    for reps in T.run_trials(trial, 0, 3):
        assert reps and all(r.holds for r in reps)


@pytest.mark.parametrize("bracket", ["trig", "elliptic"])
def test_float_trials_hold(bracket):
    C = complex_field(256)
    kind = standard_bracket(bracket)
    pol = T.policy_for(C, 1e-20)
    for trial in (lambda rng: T.frenkel_turaev_trial(rng, kind, C, pol, 3),
                  lambda rng: T.warnaar_trial(rng, kind, 2, C, pol),
                  lambda rng: T.abstract_trial(rng, kind, 2, C, pol)):
        for reps in T.run_trials(trial, 4, 2):
            assert all(r.holds for r in reps)


def test_random_vwp_problem_deterministic():
    a = random_vwp_problem(make_rng(9), "elliptic", 1, 1, "vwp-e")
    b = random_vwp_problem(make_rng(9), "elliptic", 1, 1, "vwp-e")
    assert a.points == b.points and a.weights == b.weights
