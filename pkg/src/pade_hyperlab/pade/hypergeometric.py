"""Closed forms for the shifted-factorial family ``(a+x)_j/(b+x)_j``.

Two routes:

* ``solve_hg_krattenthaler``: the condensed entries become single terminating
  sums because every window minor of ``G`` (resp. ``F``) has a product
  formula; the constant in front is the window minor ``det G^{m..m+n}``
  written as a product.
* ``solve_hg_saalschutz``: a matrix ``L`` built from Saalschutz kernels makes
  ``L G`` vanish above its anti-diagonal, which splits the bordered
  determinant into ``det[f; Phi] * det M / det L``.
"""

from __future__ import annotations

from ..errors import AntiTriangularityViolated, FamilyMismatch, PoleInConstant, PoleInL
from ..linalg import Matrix, det, det_scale
from ..numerics import default_policy, prod
from .problem import RATIONAL_HG, InterpolationProblem, _is_zero
from .universal import PadeSolution, Route, coefficients_from_rows, sign_mn


def _require(prob: InterpolationProblem):
    if prob.family != RATIONAL_HG:
        raise FamilyMismatch(f"route needs a shifted-factorial problem, got {prob.family!r}")
    p = prob.params
    return p["a"], p["b"], p["c"], p["d"], p["u"]


def rising(x, k: int):
    acc = 1
    for l in range(k):
        acc = acc * (x + l)
    return acc


def _factorial(k):
    acc = 1
    for l in range(2, k + 1):
        acc *= l
    return acc


def _div(num, den, field, what, exc=PoleInConstant):
    if _is_zero(field, den):
        raise exc(f"{what} vanishes")
    return field(num) / field(den)


# Krattenthaler-type route


def window_constant(lo, hi, u, M: int, N_shift: int, field):
    """``prod_{i=1}^{M} i! (hi-lo)_i / prod_{i=0}^{M} (hi + u + N_shift + i)_M``.

    This is the product value of the ``(M+1)``-row window minor starting at
    node ``N_shift`` of the basis ``(lo+x)_j/(hi+x)_j``.
    """
    num = field.one
    for i in range(1, M + 1):
        num = num * _factorial(i) * rising(hi - lo, i)
    den = field.one
    for i in range(M + 1):
        den = den * rising(hi + u + N_shift + i, M)
    return _div(num, den, field, "window constant denominator")


def hg_entry(lo, hi, other_lo, other_hi, u, i, j, size, ratio, field):
    """Condensed entry as a single terminating sum.

    ``lo, hi`` are the row basis parameters (``a, b`` for ``U``), ``other_*``
    those of the eliminated basis, ``size`` its degree (``n`` for ``U``) and
    ``ratio(k)`` the weight ratio ``w_{i+k}/w_i``.
    """
    ui = u + i
    uij = u + i + j
    total = field.zero
    for k in range(size + 2):
        num = rising(-size - 1, k) * rising(other_hi + ui + size, k) * rising(lo + uij, k) * rising(hi + ui, k)
        den = _factorial(k) * rising(other_hi + ui, k) * rising(lo + ui, k) * rising(hi + uij, k)
        total = total + _div(num, den, field, f"series denominator at k={k}") * ratio(k)
    pre = _div(rising(lo + ui, j), rising(hi + ui, j), field, "entry prefactor denominator")
    return pre * total


def hg_krattenthaler_U(prob, i, j):
    a, b, c, d, u = _require(prob)
    lam, mu = prob.lambdas, prob.mus
    return hg_entry(a, b, c, d, u, i, j, prob.n, lambda k: mu[i + k] * lam[i] / (lam[i + k] * mu[i]), prob.field)


def hg_krattenthaler_V(prob, i, j):
    a, b, c, d, u = _require(prob)
    lam, mu = prob.lambdas, prob.mus
    return hg_entry(c, d, a, b, u, i, j, prob.m, lambda k: lam[i + k] * mu[i] / (mu[i + k] * lam[i]), prob.field)


def solve_hg_krattenthaler(prob: InterpolationProblem, with_prefactors: bool = True) -> PadeSolution:
    a, b, c, d, u = _require(prob)
    m, n, field = prob.m, prob.n, prob.field
    lam, mu = prob.lambdas, prob.mus
    U = [[hg_krattenthaler_U(prob, i, j) for j in range(m + 1)] for i in range(m)]
    V = [[hg_krattenthaler_V(prob, i, j) for j in range(n + 1)] for i in range(n)]
    p = coefficients_from_rows(U, field)
    q = coefficients_from_rows(V, field)
    norm = None
    if with_prefactors:
        pf = window_constant(c, d, u, n, m, field) * prod(mu[:m], field.one) * prod(lam[m:], field.one)
        qf = sign_mn(m, n) * window_constant(a, b, u, m, n, field) * prod(lam[:n], field.one) * prod(mu[n:], field.one)
        p = [pf * x for x in p]
        q = [qf * x for x in q]
        norm = (pf, qf)
    return PadeSolution(p, q, Route.HG_KRATTENTHALER, norm, {"largest_det": max(m, n) + 1})


# Saalschutz route


def saalschutz_L(lo, hi, u, N: int, field) -> Matrix:
    """``L_ij = (-N)_j (hi+u+N-1-i)_j / (j! (lo+u-i)_j) * (lo+u)_j/(hi+u)_j``."""
    rows = []
    for i in range(N + 1):
        row = []
        for j in range(N + 1):
            num = rising(-N, j) * rising(hi + u + N - 1 - i, j) * rising(lo + u, j)
            den = _factorial(j) * rising(lo + u - i, j) * rising(hi + u, j)
            row.append(_div(num, den, field, f"L[{i}][{j}] denominator", PoleInL))
        rows.append(row)
    return Matrix(rows, field, N + 1)


def check_anti_triangular(LG: Matrix, field, L: Matrix = None, G: Matrix = None) -> None:
    """Raise unless ``(LG)_ij = 0`` whenever ``i + j < N``."""
    N = LG.rows - 1
    for i in range(LG.rows):
        for j in range(LG.cols):
            if i + j >= N:
                continue
            v = LG[i, j]
            if field.exact:
                bad = v != 0
            else:
                # the entries carry the accumulated error of many bracket
                # products, so test against the default comparison tolerance
                scale = max(abs(L[i, k] * G[k, j]) for k in range(L.cols)) if L is not None else 1
                bad = abs(v) > default_policy(field).rel_tol * max(scale, field.eps)
            if bad:
                raise AntiTriangularityViolated(f"(LG)[{i}][{j}] = {v} is not zero")


def _product(L: Matrix, B: Matrix) -> Matrix:
    return L @ B


def saalschutz_constant(L: Matrix, B: Matrix, first_row: int, field) -> tuple:
    """``det M / det L`` with ``M`` the lower block of ``L B`` from ``first_row``."""
    LB = _product(L, B)
    check_anti_triangular(LB, field, L, B)
    size = B.cols
    M = Matrix([[LB[first_row + i, j] for j in range(size)] for i in range(size)], field, size)
    dM, dL = det(M), det(L)
    if _is_zero(field, dL, det_scale(L)):
        raise PoleInL("det L vanishes")
    return dM / dL, dM, dL


def phi_entry(lo, hi, other_lo, other_hi, u, N, i, j, inv_ratio, field):
    """``(lo+u)_j/(hi+u)_j * sum_k Lkernel_ik * (lo+u_j)_k (hi+u)_k / ((hi+u_j)_k (lo+u)_k) * inv_ratio(k)``."""
    total = field.zero
    for k in range(N + 1):
        num = rising(-N, k) * rising(other_hi + u + N - 1 - i, k) * rising(other_lo + u, k)
        num = num * rising(lo + u + j, k) * rising(hi + u, k)
        den = _factorial(k) * rising(other_lo + u - i, k) * rising(other_hi + u, k)
        den = den * rising(hi + u + j, k) * rising(lo + u, k)
        total = total + _div(num, den, field, f"series denominator at k={k}", PoleInL) * inv_ratio(k)
    return _div(rising(lo + u, j), rising(hi + u, j), field, "entry prefactor") * total


def solve_hg_saalschutz(prob: InterpolationProblem, with_prefactors: bool = True) -> PadeSolution:
    a, b, c, d, u = _require(prob)
    m, n, N, field = prob.m, prob.n, prob.N, prob.field
    lam, mu = prob.lambdas, prob.mus
    Phi = [
        [phi_entry(a, b, c, d, u, N, i, j, lambda k: mu[k] / lam[k], field) for j in range(m + 1)]
        for i in range(m)
    ]
    Psi = [
        [phi_entry(c, d, a, b, u, N, i, j, lambda k: lam[k] / mu[k], field) for j in range(n + 1)]
        for i in range(n)
    ]
    p = coefficients_from_rows(Phi, field)
    q = coefficients_from_rows(Psi, field)
    details = {"largest_det": max(m, n) + 1}
    norm = None
    if with_prefactors:
        Kp, _, _ = saalschutz_constant(saalschutz_L(c, d, u, N, field), prob.G, m, field)
        Kq, _, _ = saalschutz_constant(saalschutz_L(a, b, u, N, field), prob.F, n, field)
        pf = Kp * prod(lam, field.one)
        qf = sign_mn(m, n) * Kq * prod(mu, field.one)
        p = [pf * x for x in p]
        q = [qf * x for x in q]
        norm = (pf, qf)
        details["largest_det"] = N + 1
    return PadeSolution(p, q, Route.HG_SAALSCHUTZ, norm, details)


# closed forms of the constant, compared against the direct ratio in tests


def det_M_closed(lo, hi, u, m: int, n: int, field):
    """Product value of ``det M`` for the ``G``-side (``lo, hi = c, d``)."""
    N = m + n
    sign = -1 if (n * (n + 1) // 2) % 2 else 1
    acc = field.one * sign
    for j in range(n + 1):
        num = rising(hi - lo, N) * rising(-N, N) * rising(lo + u, j)
        den = rising(lo + u - N + j, N) * rising(hi + u + j, N) * rising(hi + u, j)
        acc = acc * _div(num, den, field, "det M closed form denominator")
    return acc


def det_L_closed(lo, hi, u, N: int, field):
    sign = -1 if (N * (N + 1) // 2) % 2 else 1
    acc = field.one * sign
    for j in range(N + 1):
        num = rising(lo - hi - N + 1, j) * rising(-N, j) * rising(lo + u, j)
        den = rising(lo + u - j, N) * rising(hi + u, j)
        acc = acc * _div(num, den, field, "det L closed form denominator")
    return acc


def LG_closed(lo, hi, u, N: int, i: int, j: int, field):
    """Saalschutz value of ``(L G)_ij``."""
    num = rising(hi - lo, N) * rising(-i - j, N) * rising(lo + u, j)
    den = rising(lo + u - i, N) * rising(hi + u + j, N) * rising(hi + u, j)
    return _div(num, den, field, "LG closed form denominator")
