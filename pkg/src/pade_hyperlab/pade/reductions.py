"""Route entries rewritten as single generalized series.

When the weights come from one of the product families, the weight ratios
inside the condensed entries (``U``, ``V``) and the Saalschutz/Frenkel-Turaev
entries (``Phi``, ``Psi``) merge with the summand into one hypergeometric or
very-well-poised term.  Each function here returns ``(prefactor, spec)`` so
that ``prefactor * eval(spec)`` reproduces the route's entry.
"""

from __future__ import annotations

from ..series import GeneralizedF, VeryWellPoisedV, eval_F, eval_V
from .hypergeometric import rising
from .problem import RATIONAL_HG, VWP, InterpolationProblem


def _family(prob: InterpolationProblem, allowed: tuple) -> str:
    spec = prob.wspec
    if spec is None or spec.family not in allowed:
        got = None if spec is None else spec.family
        raise ValueError(f"no series form for weights {got!r}; need one of {allowed}")
    return spec.family


def _hg(prob):
    if prob.family != RATIONAL_HG:
        raise ValueError("needs a shifted-factorial problem")
    p = prob.params
    w = prob.wspec
    field = prob.field
    s = [field(x) for x in w.s]
    t = [field(x) for x in w.t]
    return p["a"], p["b"], p["c"], p["d"], p["u"], s, t, field(w.z), field(w.w)


def hg_U_series(prob: InterpolationProblem, i: int, j: int):
    fam = _family(prob, ("plain", "simplified"))
    a, b, c, d, u, s, t, z, w = _hg(prob)
    n = prob.n
    ui = u + i
    pre = prob.field(rising(a + ui, j)) / rising(b + ui, j)
    if fam == "plain":
        upper = [-n - 1, d + ui + n, a + ui + j, b + ui] + [x + i for x in t]
        lower = [d + ui, a + ui, b + ui + j] + [x + i for x in s]
    else:
        upper = [-n - 1, d + ui + n, a + ui + j] + [x + i for x in t]
        lower = [c + ui, b + ui + j] + [x + i for x in s]
    return pre, GeneralizedF(upper, lower, w / z)


def hg_V_series(prob: InterpolationProblem, i: int, j: int):
    fam = _family(prob, ("plain", "simplified"))
    a, b, c, d, u, s, t, z, w = _hg(prob)
    m = prob.m
    ui = u + i
    pre = prob.field(rising(c + ui, j)) / rising(d + ui, j)
    if fam == "plain":
        upper = [-m - 1, b + ui + m, c + ui + j, d + ui] + [x + i for x in s]
        lower = [b + ui, c + ui, d + ui + j] + [x + i for x in t]
    else:
        upper = [-m - 1, b + ui + m, c + ui + j] + [x + i for x in s]
        lower = [a + ui, d + ui + j] + [x + i for x in t]
    return pre, GeneralizedF(upper, lower, z / w)


def hg_Phi_series(prob: InterpolationProblem, i: int, j: int):
    fam = _family(prob, ("plain", "simplified"))
    a, b, c, d, u, s, t, z, w = _hg(prob)
    N = prob.N
    pre = prob.field(rising(a + u, j)) / rising(b + u, j)
    if fam == "plain":
        upper = [-N, d + u + N - 1 - i, c + u, a + u + j, b + u] + t
        lower = [c + u - i, d + u, b + u + j, a + u] + s
    else:
        upper = [-N, d + u + N - 1 - i, a + u + j] + t
        lower = [c + u - i, b + u + j] + s
    return pre, GeneralizedF(upper, lower, w / z)


def hg_Psi_series(prob: InterpolationProblem, i: int, j: int):
    fam = _family(prob, ("plain", "simplified"))
    a, b, c, d, u, s, t, z, w = _hg(prob)
    N = prob.N
    pre = prob.field(rising(c + u, j)) / rising(d + u, j)
    if fam == "plain":
        upper = [-N, b + u + N - 1 - i, a + u, c + u + j, d + u] + s
        lower = [a + u - i, b + u, d + u + j, c + u] + t
    else:
        upper = [-N, b + u + N - 1 - i, c + u + j] + s
        lower = [a + u - i, d + u + j] + t
    return pre, GeneralizedF(upper, lower, z / w)


def _vw(prob):
    if prob.family != VWP:
        raise ValueError("needs a bracket problem")
    from .vwp import _Ctx

    ctx = _Ctx(prob)
    w = prob.wspec
    e = [prob.field(x) for x in w.e]
    return ctx, e, prob.field(w.z), prob.field(w.w)


def vwp_U_series(prob: InterpolationProblem, i: int, j: int):
    fam = _family(prob, ("vwp-e", "vwp-e-simplified"))
    ctx, e, z, w = _vw(prob)
    a, b, c, d, D = ctx.a, ctx.b, ctx.c, ctx.d, ctx.delta
    n = prob.n
    ui = ctx.u + i * D
    pre = ctx.ratio_pm(a, b, ui, j, "entry prefactor")
    if fam == "vwp-e":
        params = [-(n + 1) * D, ui - d + D, ui + d + n * D, ui - a + D, ui + a + j * D, ui + b, ui - b + (1 - j) * D]
    else:
        params = [-(n + 1) * D, ui - c + D, ui + d + n * D, ui + a + j * D, ui - b + (1 - j) * D]
    params += [ui + x for x in e]
    return pre, VeryWellPoisedV(prob.kind, D, 2 * ui, params, w / z)


def vwp_V_series(prob: InterpolationProblem, i: int, j: int):
    fam = _family(prob, ("vwp-e", "vwp-e-simplified"))
    ctx, e, z, w = _vw(prob)
    a, b, c, d, D = ctx.a, ctx.b, ctx.c, ctx.d, ctx.delta
    m = prob.m
    ui = ctx.u + i * D
    pre = ctx.ratio_pm(c, d, ui, j, "entry prefactor")
    if fam == "vwp-e":
        params = [-(m + 1) * D, ui - b + D, ui + b + m * D, ui - c + D, ui + c + j * D, ui + d, ui - d + (1 - j) * D]
    else:
        params = [-(m + 1) * D, ui - a + D, ui + b + m * D, ui + c + j * D, ui - d + (1 - j) * D]
    params += [ui - x + D for x in e]
    return pre, VeryWellPoisedV(prob.kind, D, 2 * ui, params, z / w)


def vwp_Phi_series(prob: InterpolationProblem, i: int, j: int):
    fam = _family(prob, ("vwp-e", "vwp-e-simplified"))
    ctx, e, z, w = _vw(prob)
    a, b, c, d, u, D = ctx.a, ctx.b, ctx.c, ctx.d, ctx.u, ctx.delta
    N = prob.N
    pre = ctx.ratio_pm(a, b, u, j, "entry prefactor")
    params = [-N * D, u - c + (1 + i) * D, u + d + (N - 1 - i) * D]
    if fam == "vwp-e":
        params += [u + c, u - d + D, u + a + j * D, u - b + (1 - j) * D, u - a + D, u + b]
    else:
        params += [u + a + j * D, u - b + (1 - j) * D]
    params += [u + x for x in e]
    return pre, VeryWellPoisedV(prob.kind, D, 2 * u, params, w / z)


def vwp_Psi_series(prob: InterpolationProblem, i: int, j: int):
    fam = _family(prob, ("vwp-e", "vwp-e-simplified"))
    ctx, e, z, w = _vw(prob)
    a, b, c, d, u, D = ctx.a, ctx.b, ctx.c, ctx.d, ctx.u, ctx.delta
    N = prob.N
    pre = ctx.ratio_pm(c, d, u, j, "entry prefactor")
    params = [-N * D, u - a + (1 + i) * D, u + b + (N - 1 - i) * D]
    if fam == "vwp-e":
        params += [u + a, u - b + D, u + c + j * D, u - d + (1 - j) * D, u - c + D, u + d]
    else:
        params += [u + c + j * D, u - d + (1 - j) * D]
    params += [u - x + D for x in e]
    return pre, VeryWellPoisedV(prob.kind, D, 2 * u, params, z / w)


def evaluate(pre_spec) -> object:
    pre, spec = pre_spec
    return pre * (eval_F(spec) if isinstance(spec, GeneralizedF) else eval_V(spec))
