"""Closed forms for the bracket family ``[a+-x]_j/[b+-x]_j`` on ``u + k delta``.

Same two routes as the shifted-factorial family, with very-well-poised terms
in place of ordinary hypergeometric terms and Frenkel-Turaev in place of
Saalschutz.  Works for any bracket kind; over exact rationals only the plain
rational bracket is available.
"""

from __future__ import annotations

from ..errors import FamilyMismatch, PoleInConstant, PoleInL
from ..linalg import Matrix
from ..numerics import prod
from ..series import bracket_fn
from .hypergeometric import saalschutz_constant
from .problem import VWP, InterpolationProblem, _is_zero
from .universal import PadeSolution, Route, coefficients_from_rows, sign_mn


class _Ctx:
    def __init__(self, prob: InterpolationProblem):
        if prob.family != VWP:
            raise FamilyMismatch(f"route needs a bracket problem, got {prob.family!r}")
        self.prob = prob
        self.field = prob.field
        self.br = bracket_fn(prob.kind, prob.field)
        p = prob.params
        self.a, self.b, self.c, self.d, self.u, self.delta = (p[k] for k in ("a", "b", "c", "d", "u", "delta"))

    def rising(self, x, k):
        acc = self.field.one
        for l in range(k):
            acc = acc * self.br(x + l * self.delta)
        return acc

    def pm(self, s, t, k):
        """``[s +- t]_k``."""
        return self.rising(s + t, k) * self.rising(s - t, k)

    def nonzero(self, what, exc, *starts, k=1):
        """Raise unless every factor of ``[x]_k`` is nonzero for each ``x`` in ``starts``."""
        for x in starts:
            for l in range(k):
                if self.br.vanishes(x + l * self.delta):
                    raise exc(f"{what} vanishes")

    def div(self, num, den, what, exc=PoleInConstant):
        if _is_zero(self.field, den):
            raise exc(f"{what} vanishes")
        return num / den

    def ratio_pm(self, lo, hi, x, j, what):
        """``[lo +- x]_j / [hi +- x]_j``."""
        self.nonzero(what, PoleInConstant, hi + x, hi - x, k=j)
        return self.pm(lo, x, j) / self.pm(hi, x, j)

    def terms(self, a0, params, K, exc=PoleInConstant):
        """``V^{(k)}[a0; params]`` for ``k = 0..K`` by a running product."""
        br, delta = self.br, self.delta
        b0 = br(a0)
        self.nonzero("[a0]", exc, a0)
        out = []
        part = self.field.one
        for k in range(K + 1):
            if k:
                l = k - 1
                num = br(a0 + l * delta)
                den = br(delta + l * delta)
                self.nonzero(f"very-well-poised denominator at k={k}", exc,
                             delta + l * delta, *(delta + a0 - x + l * delta for x in params))
                for x in params:
                    num = num * br(x + l * delta)
                    den = den * br(delta + a0 - x + l * delta)
                part = part * num / den
            out.append(br(a0 + 2 * k * delta) / b0 * part)
        return out


def _sign_binom2(n):
    return -1 if (n * (n + 1) // 2) % 2 else 1


def C_const(ctx: _Ctx, lo, hi, n: int):
    """``(-1)^{binom(n+1,2)} prod_{k=1}^n [hi-lo]_k [lo+hi+(k-1)delta]_k``."""
    acc = ctx.field.one * _sign_binom2(n)
    for k in range(1, n + 1):
        acc = acc * ctx.rising(hi - lo, k) * ctx.rising(lo + hi + (k - 1) * ctx.delta, k)
    return acc


def window_constant(ctx: _Ctx, lo, hi, M: int, start: int):
    """Product value of the ``(M+1)``-row window minor from node ``start``."""
    delta = ctx.delta
    us = ctx.u + start * delta
    num = C_const(ctx, lo, hi, M)
    for l in range(1, M + 1):
        num = num * ctx.rising(2 * us + l * delta, l) * ctx.rising(delta, l)
    den = ctx.field.one
    for l in range(M + 1):
        x = us + l * delta
        ctx.nonzero("window constant denominator", PoleInConstant, hi + x, hi - x, k=M)
        den = den * ctx.pm(hi, x, M)
    return num / den


def _entry(ctx: _Ctx, lo, hi, other_lo, other_hi, i, j, size, ratio):
    delta = ctx.delta
    ui = ctx.u + i * delta
    params = [
        -(size + 1) * delta,
        ui - other_hi + delta,
        ui + other_hi + size * delta,
        ui - lo + delta,
        ui + lo + j * delta,
        ui + hi,
        ui - hi + (1 - j) * delta,
    ]
    terms = ctx.terms(2 * ui, params, size + 1)
    total = ctx.field.zero
    for k, t in enumerate(terms):
        total = total + t * ratio(k)
    pre = ctx.ratio_pm(lo, hi, ui, j, "entry prefactor")
    return pre * total


def vwp_krattenthaler_U(prob, i, j, ctx=None):
    ctx = ctx or _Ctx(prob)
    lam, mu = prob.lambdas, prob.mus
    return _entry(ctx, ctx.a, ctx.b, ctx.c, ctx.d, i, j, prob.n, lambda k: mu[i + k] * lam[i] / (lam[i + k] * mu[i]))


def vwp_krattenthaler_V(prob, i, j, ctx=None):
    ctx = ctx or _Ctx(prob)
    lam, mu = prob.lambdas, prob.mus
    return _entry(ctx, ctx.c, ctx.d, ctx.a, ctx.b, i, j, prob.m, lambda k: lam[i + k] * mu[i] / (mu[i + k] * lam[i]))


def solve_vwp_krattenthaler(prob: InterpolationProblem, with_prefactors: bool = True) -> PadeSolution:
    ctx = _Ctx(prob)
    m, n, field = prob.m, prob.n, prob.field
    lam, mu = prob.lambdas, prob.mus
    U = [[vwp_krattenthaler_U(prob, i, j, ctx) for j in range(m + 1)] for i in range(m)]
    V = [[vwp_krattenthaler_V(prob, i, j, ctx) for j in range(n + 1)] for i in range(n)]
    p = coefficients_from_rows(U, field)
    q = coefficients_from_rows(V, field)
    norm = None
    if with_prefactors:
        pf = window_constant(ctx, ctx.c, ctx.d, n, m) * prod(mu[:m], field.one) * prod(lam[m:], field.one)
        qf = sign_mn(m, n) * window_constant(ctx, ctx.a, ctx.b, m, n)
        qf = qf * prod(lam[:n], field.one) * prod(mu[n:], field.one)
        p = [pf * x for x in p]
        q = [qf * x for x in q]
        norm = (pf, qf)
    return PadeSolution(p, q, Route.VWP_KRATTENTHALER, norm, {"largest_det": max(m, n) + 1})


# Frenkel-Turaev route


def ft_L(ctx: _Ctx, lo, hi, N: int) -> Matrix:
    """``L_ij = V^{(j)}[2u; -N delta, u-lo+(1+i)delta, u+hi+(N-1-i)delta, u+lo, u-hi+delta]``."""
    u, delta = ctx.u, ctx.delta
    rows = []
    for i in range(N + 1):
        params = [-N * delta, u - lo + (1 + i) * delta, u + hi + (N - 1 - i) * delta, u + lo, u - hi + delta]
        rows.append(ctx.terms(2 * u, params, N, PoleInL))
    return Matrix(rows, ctx.field, N + 1)


def _phi_entry(ctx: _Ctx, lo, hi, other_lo, other_hi, N, i, j, inv_ratio):
    u, delta = ctx.u, ctx.delta
    params = [
        -N * delta,
        u - other_lo + delta + i * delta,
        u + other_hi + (N - 1) * delta - i * delta,
        u + other_lo,
        u - other_hi + delta,
        u + lo + j * delta,
        u - hi + delta - j * delta,
        u - lo + delta,
        u + hi,
    ]
    terms = ctx.terms(2 * u, params, N, PoleInL)
    total = ctx.field.zero
    for k, t in enumerate(terms):
        total = total + t * inv_ratio(k)
    return ctx.ratio_pm(lo, hi, u, j, "entry prefactor") * total


def vwp_ft_Phi(prob, i, j, ctx=None):
    ctx = ctx or _Ctx(prob)
    lam, mu = prob.lambdas, prob.mus
    return _phi_entry(ctx, ctx.a, ctx.b, ctx.c, ctx.d, prob.N, i, j, lambda k: mu[k] / lam[k])


def vwp_ft_Psi(prob, i, j, ctx=None):
    ctx = ctx or _Ctx(prob)
    lam, mu = prob.lambdas, prob.mus
    return _phi_entry(ctx, ctx.c, ctx.d, ctx.a, ctx.b, prob.N, i, j, lambda k: lam[k] / mu[k])


def ft_constants(prob: InterpolationProblem, ctx=None) -> dict:
    """``det M``, ``det L`` and their ratio for both sides, computed directly."""
    ctx = ctx or _Ctx(prob)
    N = prob.N
    Lp = ft_L(ctx, ctx.c, ctx.d, N)
    Lq = ft_L(ctx, ctx.a, ctx.b, N)
    Kp, dMp, dLp = saalschutz_constant(Lp, prob.G, prob.m, prob.field)
    Kq, dMq, dLq = saalschutz_constant(Lq, prob.F, prob.n, prob.field)
    return {"P": (Kp, dMp, dLp, Lp), "Q": (Kq, dMq, dLq, Lq)}


def solve_vwp_ft(prob: InterpolationProblem, with_prefactors: bool = True) -> PadeSolution:
    ctx = _Ctx(prob)
    m, n, N, field = prob.m, prob.n, prob.N, prob.field
    lam, mu = prob.lambdas, prob.mus
    Phi = [[vwp_ft_Phi(prob, i, j, ctx) for j in range(m + 1)] for i in range(m)]
    Psi = [[vwp_ft_Psi(prob, i, j, ctx) for j in range(n + 1)] for i in range(n)]
    p = coefficients_from_rows(Phi, field)
    q = coefficients_from_rows(Psi, field)
    details = {"largest_det": max(m, n) + 1}
    norm = None
    if with_prefactors:
        consts = ft_constants(prob, ctx)
        pf = consts["P"][0] * prod(lam, field.one)
        qf = sign_mn(m, n) * consts["Q"][0] * prod(mu, field.one)
        p = [pf * x for x in p]
        q = [qf * x for x in q]
        norm = (pf, qf)
        details["largest_det"] = N + 1
    return PadeSolution(p, q, Route.VWP_FRENKEL_TURAEV, norm, details)


# product forms of the constants, compared against the direct values in tests


def LG_closed(prob: InterpolationProblem, i: int, j: int, side: str = "P"):
    ctx = _Ctx(prob)
    lo, hi = (ctx.c, ctx.d) if side == "P" else (ctx.a, ctx.b)
    N, u, delta, R = prob.N, ctx.u, ctx.delta, ctx.rising
    num = R(lo + hi + (j - i - 1) * delta, N) * R(-(i + j) * delta, N) * R(2 * u + delta, N) * R(hi - lo, N)
    den = R(u + hi + j * delta, N) * R(u - lo + (1 - j) * delta, N) * R(u + lo - i * delta, N)
    den = den * R(-u + hi - (1 + i) * delta, N)
    return ctx.div(num, den, "LG closed form") * ctx.div(ctx.pm(lo, u, j), ctx.pm(hi, u, j), "LG prefactor")


def det_M_closed(prob: InterpolationProblem, side: str = "P"):
    ctx = _Ctx(prob)
    lo, hi = (ctx.c, ctx.d) if side == "P" else (ctx.a, ctx.b)
    size = prob.n if side == "P" else prob.m
    N, u, delta, R = prob.N, ctx.u, ctx.delta, ctx.rising
    acc = ctx.field.one * _sign_binom2(size)
    for j in range(size + 1):
        acc = acc * ctx.div(ctx.pm(lo, u, j), ctx.pm(hi, u, j), "det M prefactor")
        num = R(lo + hi - (N + 1 - 2 * j) * delta, N) * R(-N * delta, N) * R(2 * u + delta, N) * R(hi - lo, N)
        den = R(u + hi + j * delta, N) * R(u - lo + (1 - j) * delta, N) * R(u + lo - (N - j) * delta, N)
        den = den * R(-u + hi - (N + 1 - j) * delta, N)
        acc = acc * ctx.div(num, den, "det M closed form")
    return acc


def det_L_closed(prob: InterpolationProblem, side: str = "P"):
    ctx = _Ctx(prob)
    lo, hi = (ctx.c, ctx.d) if side == "P" else (ctx.a, ctx.b)
    N, u, delta, R, br = prob.N, ctx.u, ctx.delta, ctx.rising, ctx.br
    num = ctx.field.one
    for j in range(1, N + 1):
        num = num * R(delta, j) * R(lo + hi + (N - 1 - 2 * j) * delta, j) * R(lo - hi - (N - 1) * delta, j)
        num = num * R(2 * u + j * delta, j)
    den = ctx.field.one
    for i in range(N + 1):
        den = den * R(u + lo - i * delta, N) * R(u - hi - (N - 2 - i) * delta, N)
    acc = ctx.div(num, den, "det L closed form")
    for j in range(N + 1):
        t = br(2 * u + 2 * j * delta) / br(2 * u)
        t = t * R(2 * u, j) * R(-N * delta, j) * R(u + lo, j) * R(u - hi + delta, j)
        t = ctx.div(t, R(delta, j) * R(2 * u + (N + 1) * delta, j) * R(u - lo + delta, j) * R(u + hi, j), "det L factor")
        acc = acc * t
    return acc
