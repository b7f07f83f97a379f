"""Solutions valid for any choice of bases.

``solve_bruteforce`` reads the coefficients off the top row of one
``(N+2) x (N+2)`` bordered determinant.  ``solve_condensed`` gets the same
coefficients from ``(m+1) x (m+1)`` and ``(n+1) x (n+1)`` determinants whose
entries are short sums over minors of ``F`` and ``G``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from enum import Enum
from fractions import Fraction
from math import lcm
from typing import Any, Optional

from ..errors import DegenerateSolution, SingularCoreMinor
from ..linalg import Matrix, det, integer_kernel, integer_rows, minor_det, top_row_cofactors
from ..numerics import prod
from .problem import InterpolationProblem, _is_zero, window_minor, window_scale


class Route(str, Enum):
    BRUTE_FORCE = "brute"
    CONDENSED = "condensed"
    HG_KRATTENTHALER = "hg-k"
    HG_SAALSCHUTZ = "hg-s"
    VWP_KRATTENTHALER = "vwp-k"
    VWP_FRENKEL_TURAEV = "vwp-ft"


@dataclass(frozen=True)
class PadeSolution:
    """Coefficients of ``P`` and ``Q`` as produced by one route.

    ``normalization`` is the pair of factors the route multiplied into its
    bare determinant expansions of ``P`` and ``Q`` to reproduce the bordered
    determinant normalization, or ``None`` when the bare expansion is
    returned as is.
    """

    p: tuple
    q: tuple
    route: Route
    normalization: Optional[tuple] = None
    details: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(self.p))
        object.__setattr__(self, "q", tuple(self.q))
        if all(x == 0 for x in self.p) and all(x == 0 for x in self.q):
            raise DegenerateSolution("both coefficient vectors vanish")

    @property
    def coefficients(self) -> tuple:
        return self.p + self.q


def evaluate_P(prob: InterpolationProblem, sol: PadeSolution, x):
    vals = prob.f_values(x)
    return sum((c * v for c, v in zip(sol.p, vals)), prob.field.zero)


def evaluate_Q(prob: InterpolationProblem, sol: PadeSolution, x):
    vals = prob.g_values(x)
    return sum((c * v for c, v in zip(sol.q, vals)), prob.field.zero)


def residual_R(prob: InterpolationProblem, sol: PadeSolution, x, lam, mu):
    """``mu P(x) - lam Q(x)``; vanishes at every node with its own pair."""
    return mu * evaluate_P(prob, sol, x) - lam * evaluate_Q(prob, sol, x)


def _check_proviso(prob, sol):
    for k, u in enumerate(prob.points):
        P, Q = evaluate_P(prob, sol, u), evaluate_Q(prob, sol, u)
        if _is_zero(prob.field, P) and _is_zero(prob.field, Q):
            raise DegenerateSolution(f"P and Q both vanish at node u_{k}")


def bordered_rows(prob: InterpolationProblem) -> list:
    """Rows ``[mu_k f_j(u_k) | lambda_k g_j(u_k)]`` below the bordered top row."""
    F, G = prob.F, prob.G
    rows = []
    for k, (lam, mu) in enumerate(prob.weights):
        rows.append([mu * F[k, j] for j in range(prob.m + 1)] + [lam * G[k, j] for j in range(prob.n + 1)])
    return rows


def solve_bruteforce(prob: InterpolationProblem, check: bool = True) -> PadeSolution:
    cof = top_row_cofactors(bordered_rows(prob), prob.field)
    m = prob.m
    p = cof[: m + 1]
    # Q carries an extra minus sign relative to the cofactors of the g-block
    q = [-c for c in cof[m + 1:]]
    sol = PadeSolution(p, q, Route.BRUTE_FORCE, None, {"largest_det": prob.N + 2})
    if check:
        _check_proviso(prob, sol)
    return sol


# condensation


class _Condenser:
    """Minor ratios of the G (resp. F) windows, computed once per problem."""

    def __init__(self, prob: InterpolationProblem, side: str):
        self.prob = prob
        self.side = side
        if side == "P":
            self.basis, self.other = prob.F, prob.G
            self.rows, self.size = prob.m, prob.n + 1
            self.num_w, self.den_w = prob.mus, prob.lambdas
        else:
            self.basis, self.other = prob.G, prob.F
            self.rows, self.size = prob.n, prob.m + 1
            self.num_w, self.den_w = prob.lambdas, prob.mus
        self._cof = {}
        self._w = {}

    def _cofactors(self, i: int) -> list:
        """``cof[k] = (-1)^k det(window i..i+size without row i+k)``; ``cof[0]`` is the divisor."""
        if i in self._cof:
            return self._cof[i]
        size = self.size
        field = self.prob.field
        window_cols = [[self.other[i + l, c] for l in range(size + 1)] for c in range(size)]
        cof = top_row_cofactors(window_cols, field)
        if _is_zero(field, cof[0], None if field.exact else window_scale(self.other, i + 1, size)):
            raise SingularCoreMinor(
                f"minor on rows {i + 1}..{i + size} vanishes", window=(self.side, i + 1)
            )
        self._cof[i] = cof
        return cof

    def weights(self, i: int) -> list:
        """``(-1)^k (w_{i+k}/w_i) det(window without i+k)/det(window i+1..)``."""
        if i in self._w:
            return self._w[i]
        cof = self._cofactors(i)
        ratio0 = self.num_w[i] / self.den_w[i]
        self._w[i] = [(self.num_w[i + k] / self.den_w[i + k]) / ratio0 * c / cof[0] for k, c in enumerate(cof)]
        return self._w[i]

    def entry_series(self, i: int, j: int):
        return sum(
            (w * self.basis[i + k, j] for k, w in enumerate(self.weights(i))),
            self.prob.field.zero,
        )

    def entry_det(self, i: int, j: int):
        """The same entry as a bordered determinant divided by the window minor."""
        size = self.size
        ratio0 = self.num_w[i] / self.den_w[i]
        rows = []
        for l in range(size + 1):
            r = i + l
            first = self.num_w[r] / self.den_w[r] * self.basis[r, j]
            rows.append([first] + [self.other[r, c] for c in range(size)])
        denom = window_minor(self.other, i + 1, size)
        if _is_zero(self.prob.field, denom, window_scale(self.other, i + 1, size)):
            raise SingularCoreMinor(f"minor on rows {i + 1}..{i + size} vanishes", window=(self.side, i + 1))
        return det(Matrix(rows, self.prob.field, size + 1)) / ratio0 / denom

    def exact_coefficients(self) -> Optional[list]:
        """Cofactors of the top row over the U (or V) rows, fraction-free.

        Row ``i`` is rebuilt as an integer vector divided by a rational
        scale, from the integer forms of the basis and window rows, so the
        final elimination never touches a Fraction.  ``None`` sends the
        caller back to the generic path.
        """
        basis = integer_rows(self.basis.tolist())
        other = integer_rows(self.other.tolist())
        size, ncols = self.size, self.basis.cols
        rows, scale = [], Fraction(1)
        for i in range(self.rows):
            window = [[other[i + l][0][c] for l in range(size + 1)] for c in range(size)]
            cof = integer_kernel(window)
            if cof is None:
                return None
            if cof[0] == 0:
                raise SingularCoreMinor(f"minor on rows {i + 1}..{i + size} vanishes", window=(self.side, i + 1))
            # undo the row scaling of the window and of the basis rows
            coef = [
                self.num_w[i + k] / self.den_w[i + k] * c * other[i + k][1] / basis[i + k][1]
                for k, c in enumerate(cof)
            ]
            L = lcm(*(x.denominator for x in coef))
            ints = [x.numerator * (L // x.denominator) for x in coef]
            row = [0] * ncols
            for k, t in enumerate(ints):
                if t:
                    b = basis[i + k][0]
                    for j in range(ncols):
                        row[j] += t * b[j]
            rows.append(row)
            scale *= L * (self.num_w[i] / self.den_w[i]) * cof[0] * other[i][1]
        v = integer_kernel(rows) if rows else [1]
        if v is None:
            return None
        return [Fraction(x) / scale for x in v]

    def matrix(self) -> list:
        ncols = self.basis.cols
        return [[self.entry_series(i, j) for j in range(ncols)] for i in range(self.rows)]


def _range_check(i, j, rows, cols, name):
    if not (0 <= i < rows and 0 <= j < cols):
        raise IndexError(f"{name}[{i}][{j}] outside 0..{rows - 1} x 0..{cols - 1}")


def condensed_U(prob: InterpolationProblem, i: int, j: int, form: str = "series"):
    _range_check(i, j, prob.m, prob.m + 1, "U")
    c = _Condenser(prob, "P")
    return c.entry_series(i, j) if form == "series" else c.entry_det(i, j)


def condensed_V(prob: InterpolationProblem, i: int, j: int, form: str = "series"):
    _range_check(i, j, prob.n, prob.n + 1, "V")
    c = _Condenser(prob, "Q")
    return c.entry_series(i, j) if form == "series" else c.entry_det(i, j)


def sign_mn(m: int, n: int) -> int:
    return -1 if (m * n + m + n) % 2 else 1


def condensed_prefactors(prob: InterpolationProblem) -> tuple:
    m, n = prob.m, prob.n
    lam, mu = prob.lambdas, prob.mus
    one = prob.field.one
    pf = prod(mu[:m], one) * prod(lam[m: m + n + 1], one) * window_minor(prob.G, m, n + 1)
    qf = sign_mn(m, n) * prod(lam[:n], one) * prod(mu[n: n + m + 1], one) * window_minor(prob.F, n, m + 1)
    return pf, qf


def coefficients_from_rows(rows: list, field) -> list:
    """Coefficients of the top row ``(h_0(x), ..., h_r(x))`` over ``rows``."""
    return top_row_cofactors(rows, field)


def _condensed_coefficients(c: _Condenser, field) -> list:
    if field.exact:
        fast = c.exact_coefficients()
        if fast is not None:
            return fast
    return coefficients_from_rows(c.matrix(), field)


def solve_condensed(prob: InterpolationProblem, with_prefactors: bool = True) -> PadeSolution:
    field = prob.field
    p = _condensed_coefficients(_Condenser(prob, "P"), field)
    q = _condensed_coefficients(_Condenser(prob, "Q"), field)
    norm = None
    if with_prefactors:
        pf, qf = condensed_prefactors(prob)
        p = [pf * x for x in p]
        q = [qf * x for x in q]
        norm = (pf, qf)
    return PadeSolution(p, q, Route.CONDENSED, norm, {"largest_det": max(prob.m, prob.n) + 1})
