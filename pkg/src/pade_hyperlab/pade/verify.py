"""Residual checks for one solution and comparisons across routes."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

from ..errors import InputError
from ..numerics import EqPolicy, default_policy, proj_eq, scalar_eq
from ..sampling import make_rng, random_rational
from .problem import RATIONAL_HG, VWP, InterpolationProblem
from .universal import PadeSolution, Route, evaluate_P, evaluate_Q, residual_R, solve_bruteforce, solve_condensed

OFF_NODE_POINTS = 3


@dataclass(frozen=True)
class VerificationReport:
    residuals: tuple
    max_residual: object
    passed: bool
    off_node: tuple = ()
    route: Optional[str] = None
    details: dict = dc_field(default_factory=dict)

    def to_json(self, field) -> dict:
        def num(x):
            return field.to_json(x) if field.exact else float(abs(x))

        return {
            "route": self.route,
            "passed": self.passed,
            "max_residual": num(self.max_residual),
            "residuals": [num(r) for r in self.residuals],
            "off_node": [
                {"x": field.to_json(x), "P": field.to_json(P), "Q": field.to_json(Q)} for x, P, Q in self.off_node
            ],
        }


def _node_ok(field, policy: EqPolicy, r, scale) -> bool:
    if policy.is_exact:
        return r == 0
    bound = policy.rel_tol * scale
    return abs(r) <= max(bound, policy.abs_floor)


def off_node_points(prob: InterpolationProblem, seed: int = 0, count: int = OFF_NODE_POINTS) -> list:
    """``count`` random arguments where every basis function is finite, away from the nodes."""
    rng = make_rng(seed)
    out = []
    tries = 0
    while len(out) < count and tries < 200:
        tries += 1
        x = prob.field(random_rational(rng))
        if any(x == u for u in prob.points) or any(x == y for y in out):
            continue
        try:
            prob.f_values(x)
            prob.g_values(x)
        except (InputError, ZeroDivisionError):
            continue
        out.append(x)
    return out


def verify_solution(prob: InterpolationProblem, sol: PadeSolution, policy: Optional[EqPolicy] = None,
                    seed: int = 0) -> VerificationReport:
    """Residuals ``mu_k P(u_k) - lambda_k Q(u_k)`` at every node.

    Under a relative policy each residual is compared with the size of its
    two terms.  P and Q are also evaluated at a few random off-node points
    so that routes can be compared by value.
    """
    field = prob.field
    policy = policy or default_policy(field)
    residuals = []
    passed = True
    for u, (lam, mu) in zip(prob.points, prob.weights):
        P, Q = evaluate_P(prob, sol, u), evaluate_Q(prob, sol, u)
        r = mu * P - lam * Q
        residuals.append(r)
        passed = passed and _node_ok(field, policy, r, max(abs(mu * P), abs(lam * Q)))
    off = tuple((x, evaluate_P(prob, sol, x), evaluate_Q(prob, sol, x)) for x in off_node_points(prob, seed))
    max_r = max((abs(r) for r in residuals), default=field.zero)
    route = getattr(sol.route, "value", sol.route)
    return VerificationReport(tuple(residuals), max_r, passed, off, route)


def applicable_routes(prob: InterpolationProblem) -> list:
    routes = [Route.BRUTE_FORCE, Route.CONDENSED]
    if prob.family == RATIONAL_HG:
        routes += [Route.HG_KRATTENTHALER, Route.HG_SAALSCHUTZ]
    elif prob.family == VWP:
        routes += [Route.VWP_KRATTENTHALER, Route.VWP_FRENKEL_TURAEV]
    return routes


def solve(prob: InterpolationProblem, route, with_prefactors: bool = True) -> PadeSolution:
    from .hypergeometric import solve_hg_krattenthaler, solve_hg_saalschutz
    from .vwp import solve_vwp_ft, solve_vwp_krattenthaler

    route = Route(route)
    if route == Route.BRUTE_FORCE:
        return solve_bruteforce(prob)
    solver = {
        Route.CONDENSED: solve_condensed,
        Route.HG_KRATTENTHALER: solve_hg_krattenthaler,
        Route.HG_SAALSCHUTZ: solve_hg_saalschutz,
        Route.VWP_KRATTENTHALER: solve_vwp_krattenthaler,
        Route.VWP_FRENKEL_TURAEV: solve_vwp_ft,
    }[route]
    return solver(prob, with_prefactors)


def solutions_agree(a: PadeSolution, b: PadeSolution, policy: EqPolicy) -> dict:
    """Projective agreement of P and of Q, and value agreement of the pair.

    P and Q are compared separately because routes scale them by different
    constants; ``exact`` compares the normalized coefficient vectors.
    """
    out = {"p": _proj(a.p, b.p, policy), "q": _proj(a.q, b.q, policy)}
    out["exact"] = all(scalar_eq(x, y, policy) for x, y in zip(a.coefficients, b.coefficients))
    return out


def _proj(v, w, policy):
    if all(x == 0 for x in v) and all(y == 0 for y in w):
        return True
    return proj_eq(v, w, policy)


@dataclass(frozen=True)
class CrosscheckReport:
    routes: tuple
    pairs: dict
    verifications: dict
    passed: bool
    skipped: dict = dc_field(default_factory=dict)

    def to_json(self, field) -> dict:
        return {
            "routes": list(self.routes),
            "passed": self.passed,
            "skipped": dict(self.skipped),
            "pairs": {f"{a}|{b}": v for (a, b), v in self.pairs.items()},
            "verifications": {r: v.to_json(field) for r, v in self.verifications.items()},
        }


def crosscheck(prob: InterpolationProblem, routes=None, policy: Optional[EqPolicy] = None,
               seed: int = 0) -> CrosscheckReport:
    """Solve by several routes, verify each and compare every pair.

    With ``routes=None`` every applicable route is tried and one that
    rejects the instance (a pole in its constants, say) is listed under
    ``skipped``.  Routes named explicitly must all succeed.
    """
    policy = policy or default_policy(prob.field)
    explicit = bool(routes)
    routes = [Route(r) for r in routes] if routes else applicable_routes(prob)
    sols, skipped = {}, {}
    for r in routes:
        try:
            sols[r.value] = solve(prob, r)
        except InputError as exc:
            if explicit or r == Route.BRUTE_FORCE:
                raise
            skipped[r.value] = f"{type(exc).__name__}: {exc}"
    verifications = {name: verify_solution(prob, s, policy, seed) for name, s in sols.items()}
    names = list(sols)
    pairs = {}
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            pairs[(a, b)] = solutions_agree(sols[a], sols[b], policy)
    passed = all(v.passed for v in verifications.values()) and all(
        p["p"] and p["q"] and p["exact"] for p in pairs.values()
    )
    return CrosscheckReport(tuple(names), pairs, verifications, passed, skipped)
