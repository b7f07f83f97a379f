"""Wall-clock comparison of the bordered and condensed determinant routes."""

from __future__ import annotations

import statistics
import time

from ..sampling import make_rng, random_rational_hg_problem
from .universal import solve_bruteforce, solve_condensed

REPEATS = 3


def _best_time(fn, repeats: int):
    best, out = None, None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        elapsed = time.perf_counter() - t0
        best = elapsed if best is None else min(best, elapsed)
    return best, out


def bench(m: int, n: int, trials: int = 5, seed: int = 0, repeats: int = REPEATS) -> dict:
    """Time both routes on ``trials`` random exact instances.

    Basis matrices are built before the clock starts, so only the
    determinant work is measured.  Each timing is the best of ``repeats``
    runs.  Trials run one after another; parallel runs would distort the
    clock.
    """
    rng = make_rng(seed)
    records = []
    for t in range(trials):
        prob = random_rational_hg_problem(rng, m, n, "explicit")
        prob.F, prob.G
        tb, brute = _best_time(lambda: solve_bruteforce(prob, check=False), repeats)
        tc, cond = _best_time(lambda: solve_condensed(prob), repeats)
        records.append({
            "trial": t,
            "brute_s": tb,
            "condensed_s": tc,
            "agree": brute.p == cond.p and brute.q == cond.q,
        })
    med_b = statistics.median(r["brute_s"] for r in records) if records else 0.0
    med_c = statistics.median(r["condensed_s"] for r in records) if records else 0.0
    return {
        "m": m,
        "n": n,
        "trials": trials,
        "seed": seed,
        "largest_det": {"brute": m + n + 2, "condensed": max(m, n) + 1},
        "records": records,
        "median_brute_s": med_b,
        "median_condensed_s": med_c,
        "condensed_not_slower": med_c <= med_b,
        "passed": all(r["agree"] for r in records),
    }
