"""Random trials of the identity checks, one report list per trial.

Each trial draws from its own generator, ``trial_rng(seed, index)``, so a
run gives the same reports whether trials execute serially or on threads.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable

from . import condensation, detformulas, series
from .series import bracket_vanishes
from .errors import InputError, SingularCoreMinor
from .numerics import EqPolicy, default_policy
from .sampling import random_bracket_args, random_matrix, random_rationals, retry, trial_rng

THREADS_ENV = "PADE_HYPERLAB_THREADS"
RIEMANN_REL_BOUND = 1e-70


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def run_trials(trial: Callable, seed: int, trials: int, threads: int | None = None) -> list:
    """``[trial(rng_0), trial(rng_1), ...]`` in trial order."""
    threads = thread_count() if threads is None else threads
    rngs = [trial_rng(seed, i) for i in range(trials)]
    if threads <= 1 or trials <= 1:
        return [trial(r) for r in rngs]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(trial, rngs))


def _in(field, values):
    return [field(v) for v in values]


class DegenerateDraw(InputError):
    """Two drawn arguments differ or sum to a lattice point."""


def _reject_lattice_pairs(kind, field, values):
    # such a draw makes a closed-form factor vanish; both sides are then 0
    # up to rounding and a relative comparison says nothing
    for i, s in enumerate(values):
        for t in values[i + 1:]:
            if bracket_vanishes(kind, s + t, field) or bracket_vanishes(kind, s - t, field):
                raise DegenerateDraw(f"{s} and {t} are congruent up to sign")


def _int(rng, lo: int, hi: int) -> int:
    return int(rng.integers(lo, hi + 1))


def condense_trial(rng, n: int, r: int | None, field, policy: EqPolicy | None = None) -> list:
    X = random_matrix(rng, n, n, field)
    if r is None:
        return condensation.all_condensation_checks(X, policy)
    out = [condensation.dodgson_check(X, r, policy), condensation.moving_core_check(X, r, policy)]
    try:
        out.append(condensation.renormalized_check(X, r, policy))
    except SingularCoreMinor:
        pass
    if n >= 3:
        out.append(condensation.jacobi_check(X, policy))
        out.append(condensation.jacobi_check(X, policy, form="jacobi"))
    return out


def saalschutz_trial(rng, field, policy=None, max_N: int = 8) -> list:
    def draw():
        N = _int(rng, 0, max_N)
        c, d, u, i, j = _in(field, random_rationals(rng, 5))
        return [series.saalschutz_check(N, c, d, u, i, j, policy)]

    return retry(draw)


def frenkel_turaev_trial(rng, kind, field, policy=None, max_N: int = 5) -> list:
    def draw():
        N = _int(rng, 0, max_N)
        delta = field(random_bracket_args(rng, 1, True)[0])
        a0, a1, a2, a3 = _in(field, random_bracket_args(rng, 4))
        return [series.frenkel_turaev_check(kind, delta, a0, a1, a2, a3, N, policy=policy, field=field)]

    return retry(draw)


def riemann_trial(rng, kind, field, rel_bound=None) -> list:
    if rel_bound is None and not field.exact:
        rel_bound = RIEMANN_REL_BOUND
    x, alpha, beta, gamma = _in(field, random_bracket_args(rng, 4))
    return [series.riemann_check(kind, x, alpha, beta, gamma, rel_bound, field)]


def krattenthaler_trial(rng, m: int, field, policy=None) -> list:
    def draw():
        x = _in(field, random_rationals(rng, m + 1))
        params = [_in(field, random_rationals(rng, m)) for _ in range(4)]
        return [detformulas.krattenthaler_check(x, *params, policy=policy)]

    return retry(draw)


def warnaar_trial(rng, kind, m: int, field, policy=None) -> list:
    def draw():
        x = _in(field, random_bracket_args(rng, m + 1))
        a, b = _in(field, random_bracket_args(rng, m)), _in(field, random_bracket_args(rng, m))
        _reject_lattice_pairs(kind, field, x + a + b)
        return [detformulas.warnaar_check(kind, x, a, b, policy, field)]

    return retry(draw)


def abstract_trial(rng, kind, m: int, field, policy=None) -> list:
    """The factorized determinant for every size up to ``m`` and the tau relation.

    ``kind=None`` uses linear entries ``alpha_k x_i + beta_k``; otherwise
    ``[a_k +- x_i]`` in the given bracket.
    """

    def draw():
        if kind is None:
            x = _in(field, random_rationals(rng, m + 1))
            params = [_in(field, random_rationals(rng, m)) for _ in range(4)]
            inp = detformulas.factorized_from_linear(x, *params, policy=policy)
        else:
            x = _in(field, random_bracket_args(rng, m + 1))
            a, b = _in(field, random_bracket_args(rng, m)), _in(field, random_bracket_args(rng, m))
            _reject_lattice_pairs(kind, field, x + a + b)
            inp = detformulas.factorized_from_brackets(kind, x, a, b, policy, field)
        out = detformulas.abstract_factorized_all(inp, policy)
        out += [detformulas.tau_bilinear_check(inp, k, policy) for k in range(1, inp.N)]
        return out

    return retry(draw)


def policy_for(field, rel_tol: float | None = None) -> EqPolicy:
    if field.exact or rel_tol is None:
        return default_policy(field)
    return EqPolicy.relative(rel_tol)

