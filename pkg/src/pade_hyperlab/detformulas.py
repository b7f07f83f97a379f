"""Closed-form evaluations of determinants of products of ratios.

The common shape is ``X = (prod_{k<j} a_{ik}/b_{ik})_{i,j=0..m}``: row ``i``
is built from one node ``x_i`` and column ``j`` multiplies in one more ratio.
Every function here builds the matrix directly, evaluates its determinant and
compares against the product formula; nothing is assumed about the closed
form beyond what the report shows.

All right-hand sides are accumulated in a fixed index order so complex
comparisons are reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import FactorizationViolated, InsufficientData, PoleInDenominator, ZeroDenominatorEntry
from .linalg import Matrix, det
from .numerics import EqPolicy, common_field, default_policy, scalar_eq
from .reports import IdentityReport, make_report
from .series import BracketKind, bracket_fn, bracket_vanishes


def qpoch(a, q, k: int):
    """``(a;q)_k = (1-a)(1-aq)...(1-aq^{k-1})``."""
    acc = 1
    t = a
    for _ in range(k):
        acc = acc * (1 - t)
        t = t * q
    return acc


def _binom2(n):
    return n * (n - 1) // 2


def _binom3(n):
    return n * (n - 1) * (n - 2) // 6


def _ratio_matrix(num, den, m, field, error=ZeroDenominatorEntry):
    """``(prod_{k<j} num(i,k)/den(i,k))_{i,j=0..m}``."""
    rows = []
    for i in range(m + 1):
        row = [field.one]
        acc = field.one
        for k in range(m):
            d = den(i, k)
            if d == 0:
                raise error(f"denominator vanishes at row {i}, factor {k}")
            acc = acc * num(i, k) / d
            row.append(acc)
        rows.append(row)
    return Matrix(rows, field, m + 1)


def _vandermonde(x, diff):
    acc = 1
    for j in range(len(x)):
        for i in range(j):
            acc = acc * diff(x[i], x[j])
    return acc


# the general rational form


def _check_lengths(x, *params):
    m = len(x) - 1
    if m < 0:
        raise InsufficientData("need at least one node")
    for p in params:
        if len(p) != m:
            raise InsufficientData(f"expected {m} parameters per family, got {len(p)}")
    return m


def krattenthaler_matrix(x, alpha, beta, gamma, delta) -> Matrix:
    m = _check_lengths(x, alpha, beta, gamma, delta)
    field = common_field([*x, *alpha, *beta, *gamma, *delta])
    return _ratio_matrix(
        lambda i, k: alpha[k] * x[i] + beta[k],
        lambda i, k: gamma[k] * x[i] + delta[k],
        m,
        field,
    )


def krattenthaler_lhs(x, alpha, beta, gamma, delta):
    return det(krattenthaler_matrix(x, alpha, beta, gamma, delta))


def krattenthaler_rhs(x, alpha, beta, gamma, delta):
    m = _check_lengths(x, alpha, beta, gamma, delta)
    num = _vandermonde(x, lambda xi, xj: xj - xi)
    for l in range(m):
        for k in range(l + 1):
            num = num * (alpha[k] * delta[l] - beta[k] * gamma[l])
    den = 1
    for i in range(m + 1):
        for k in range(m):
            d = gamma[k] * x[i] + delta[k]
            if d == 0:
                raise ZeroDenominatorEntry(f"denominator vanishes at node {i}, factor {k}")
            den = den * d
    return num / den if m else num


def krattenthaler_check(x, alpha, beta, gamma, delta, policy: EqPolicy | None = None) -> IdentityReport:
    lhs = krattenthaler_lhs(x, alpha, beta, gamma, delta)
    rhs = krattenthaler_rhs(x, alpha, beta, gamma, delta)
    return make_report("krattenthaler", lhs, _like(rhs, lhs), policy, m=len(x) - 1)


def _like(value, reference):
    """Coerce a plain int result into the reference's field."""
    if isinstance(value, int):
        return common_field([reference])(value)
    return value


# (a): shifted factorial ratios


def _shifted(a, n):
    acc = 1
    for k in range(n):
        acc = acc * (a + k)
    return acc


def shifted_ratio_matrix(a, b, x) -> Matrix:
    m = len(x) - 1
    field = common_field([a, b, *x])
    return _ratio_matrix(lambda i, k: a + x[i] + k, lambda i, k: b + x[i] + k, m, field)


def shifted_ratio_det_rhs(a, b, x):
    """``det((a+x_i)_j/(b+x_i)_j)`` in closed form."""
    m = len(x) - 1
    field = common_field([a, b, *x])
    num = field(_vandermonde(x, lambda xi, xj: xj - xi))
    for k in range(1, m + 1):
        num = num * _shifted(b - a, k)
    den = field.one
    for i in range(m + 1):
        d = _shifted(b + x[i], m)
        if d == 0:
            raise PoleInDenominator(f"(b + x_{i})_{m} vanishes")
        den = den * d
    return num / den


def shifted_ratio_check(a, b, x, policy: EqPolicy | None = None) -> IdentityReport:
    lhs = det(shifted_ratio_matrix(a, b, x))
    return make_report("shifted-ratio", lhs, shifted_ratio_det_rhs(a, b, x), policy, m=len(x) - 1)


# (b), (c): q-analogues


def _case_b(x, a, b, p, q, field):
    m = len(x) - 1
    X = _ratio_matrix(lambda i, k: 1 - a * p**k * x[i], lambda i, k: 1 - b * q**k * x[i], m, field,
                      PoleInDenominator)
    num = field(_vandermonde(x, lambda xi, xj: xj - xi))
    for l in range(m):
        for k in range(l + 1):
            num = num * (q**l * b - p**k * a)
    den = field.one
    for i in range(m + 1):
        d = qpoch(b * x[i], q, m)
        if field.is_zero(d):
            raise PoleInDenominator(f"(b x_{i}; q)_{m} vanishes")
        den = den * d
    return X, num / den


def _case_b_equal_bases(x, a, b, q, field):
    m = len(x) - 1
    num = a ** _binom2(m + 1) * q ** _binom3(m + 1) * field(_vandermonde(x, lambda xi, xj: xi - xj))
    for k in range(1, m + 1):
        num = num * qpoch(b / a, q, k)
    den = field.one
    for i in range(m + 1):
        den = den * qpoch(b * x[i], q, m)
    return num / den


def _case_c(z, a, b, c, p, q, field):
    m = len(z) - 1
    X = _ratio_matrix(
        lambda i, k: (1 - a * p**k * z[i]) * (1 - a * c * p**k / z[i]),
        lambda i, k: (1 - b * q**k * z[i]) * (1 - b * c * q**k / z[i]),
        m,
        field,
        PoleInDenominator,
    )
    num = field(_vandermonde(z, lambda zi, zj: (zj - zi) * (1 - c / (zi * zj))))
    for l in range(m):
        for k in range(l + 1):
            num = num * (b * q**l - a * p**k) * (1 - p**k * q**l * a * b * c)
    den = field.one
    for i in range(m + 1):
        d = qpoch(b * z[i], q, m) * qpoch(b * c / z[i], q, m)
        if field.is_zero(d):
            raise PoleInDenominator(f"denominator product at node {i} vanishes")
        den = den * d
    return X, num / den


def _case_c_equal_bases(z, a, b, c, q, field):
    # grouping the pair product by its first index gives (abc q^{2(m-k)}; q)_k
    m = len(z) - 1
    num = a ** _binom2(m + 1) * q ** _binom3(m + 1)
    num = num * field(_vandermonde(z, lambda zi, zj: (zi - zj) * (1 - c / (zi * zj))))
    for k in range(1, m + 1):
        num = num * qpoch(b / a, q, k) * qpoch(a * b * c * q ** (2 * (m - k)), q, k)
    den = field.one
    for i in range(m + 1):
        den = den * qpoch(b * z[i], q, m) * qpoch(b * c / z[i], q, m)
    return num / den


def q_ratio_det_check(case: str, nodes: Sequence, a, b, q, p=None, c=None,
                      policy: EqPolicy | None = None) -> IdentityReport:
    """Direct determinant against the q-product closed form.

    ``case="b"`` uses rows ``(a x_i; p)_j/(b x_i; q)_j``; ``case="c"`` uses
    ``(a z_i;p)_j (ac/z_i;p)_j / ((b z_i;q)_j (bc/z_i;q)_j)``.  With ``p``
    omitted (``p == q``) the simplified product form is also compared and
    reported under ``details["equal_bases"]``.
    """
    equal = p is None
    p = q if equal else p
    extra = [c] if c is not None else []
    field = common_field([*nodes, a, b, q, p, *extra])
    nodes = [field(v) for v in nodes]
    a, b, q, p = field(a), field(b), field(q), field(p)
    policy = policy or default_policy(field)
    if case == "b":
        X, rhs = _case_b(nodes, a, b, p, q, field)
        alt = _case_b_equal_bases(nodes, a, b, q, field) if equal else None
    elif case == "c":
        if c is None:
            raise InsufficientData("case c needs the parameter c")
        c = field(c)
        X, rhs = _case_c(nodes, a, b, c, p, q, field)
        alt = _case_c_equal_bases(nodes, a, b, c, q, field) if equal else None
    else:
        raise ValueError(f"unknown case {case!r}")
    lhs = det(X)
    details = {"case": case, "m": len(nodes) - 1}
    if alt is not None:
        details["equal_bases"] = scalar_eq(lhs, alt, policy)
    report = make_report(f"q-ratio-{case}", lhs, rhs, policy, **details)
    if alt is not None and not details["equal_bases"]:
        return IdentityReport(report.name, report.lhs, report.rhs, False, report.details)
    return report


# bracket version


def _pm(br, s, t):
    return br(s + t) * br(s - t)


def _check_poles(kind, field, pairs):
    """Raise if ``[s + t][s - t]`` vanishes for some ``(s, t, label)``."""
    for s, t, label in pairs:
        if bracket_vanishes(kind, s + t, field) or bracket_vanishes(kind, s - t, field):
            raise PoleInDenominator(f"{label} vanishes")


def warnaar_sides(kind: BracketKind, x, a, b, field=None):
    m = _check_lengths(x, a, b)
    field = field or common_field([*x, *a, *b])
    br = bracket_fn(kind, field)
    x, a, b = [field(v) for v in x], [field(v) for v in a], [field(v) for v in b]
    _check_poles(kind, field, [(b[k], x[i], f"[b_{k} +- x_{i}]") for i in range(m + 1) for k in range(m)])
    X = _ratio_matrix(lambda i, k: _pm(br, a[k], x[i]), lambda i, k: _pm(br, b[k], x[i]), m, field)
    num = field(_vandermonde(x, lambda xi, xj: _pm(br, xj, xi)))
    for l in range(m):
        for k in range(l + 1):
            num = num * _pm(br, a[k], b[l])
    den = field.one
    for i in range(m + 1):
        for k in range(m):
            den = den * _pm(br, b[k], x[i])
    return det(X), num / den


def warnaar_check(kind: BracketKind, x, a, b, policy: EqPolicy | None = None, field=None) -> IdentityReport:
    lhs, rhs = warnaar_sides(kind, x, a, b, field)
    return make_report("warnaar", lhs, rhs, policy, m=len(x) - 1, bracket=kind.variant)


def _dsf(br, s, delta, k):
    acc = 1
    for l in range(k):
        acc = acc * br(s + l * delta)
    return acc


def warnaar_shifted_sides(kind: BracketKind, a, b, delta, x, field=None):
    m = len(x) - 1
    field = field or common_field([a, b, delta, *x])
    br = bracket_fn(kind, field)
    a, b, delta = field(a), field(b), field(delta)
    x = [field(v) for v in x]
    _check_poles(kind, field, [(b + l * delta, x[i], f"[b +- x_{i}]_{m}") for i in range(m + 1) for l in range(m)])
    X = _ratio_matrix(
        lambda i, k: _pm(br, a + k * delta, x[i]),
        lambda i, k: _pm(br, b + k * delta, x[i]),
        m,
        field,
    )
    num = field(_vandermonde(x, lambda xi, xj: _pm(br, xi, xj)))
    for k in range(1, m + 1):
        num = num * _dsf(br, b - a, delta, k) * _dsf(br, a + b + (k - 1) * delta, delta, k)
    den = field.one
    for i in range(m + 1):
        den = den * _dsf(br, b + x[i], delta, m) * _dsf(br, b - x[i], delta, m)
    return det(X), num / den


def warnaar_shifted_check(kind: BracketKind, a, b, delta, x, policy: EqPolicy | None = None,
                          field=None) -> IdentityReport:
    lhs, rhs = warnaar_shifted_sides(kind, a, b, delta, x, field)
    return make_report("warnaar-shifted", lhs, rhs, policy, m=len(x) - 1, bracket=kind.variant)


# abstract factorized form


@dataclass(frozen=True)
class FactorizedDetInput:
    """Arrays ``a, b`` of shape (N+1) x N with ``a_ik b_jl - a_jk b_il = p_ij q_kl``.

    ``q`` is given as an N x N array of which only the entries ``k <= l`` are
    read.  Construction validates antisymmetry of ``p``, nonvanishing of
    ``b`` and the factorization condition, using ``policy`` (exact for
    rationals, relative at the working precision otherwise).
    """

    a: tuple
    b: tuple
    p: tuple
    q: tuple
    policy: EqPolicy | None = None

    def __post_init__(self):
        a = tuple(tuple(r) for r in self.a)
        b = tuple(tuple(r) for r in self.b)
        p = tuple(tuple(r) for r in self.p)
        q = tuple(tuple(r) for r in self.q)
        for name, val in (("a", a), ("b", b), ("p", p), ("q", q)):
            object.__setattr__(self, name, val)
        N = len(a) - 1
        if N < 0:
            raise InsufficientData("empty input")
        if len(b) != N + 1 or any(len(r) != N for r in a + b):
            raise InsufficientData("a and b must both be (N+1) x N")
        if len(p) != N + 1 or any(len(r) != N + 1 for r in p):
            raise InsufficientData("p must be (N+1) x (N+1)")
        if len(q) != N or any(len(r) != N for r in q):
            raise InsufficientData("q must be N x N")
        field = common_field([v for r in a + b + p for v in r] + [q[k][l] for k in range(N) for l in range(k, N)])
        object.__setattr__(self, "field", field)
        policy = self.policy or default_policy(field)
        object.__setattr__(self, "policy", policy)
        for i in range(N + 1):
            for j in range(i, N + 1):
                if not _close_to(p[i][j], -p[j][i], field, policy):
                    raise FactorizationViolated(f"p[{i}][{j}] + p[{j}][{i}] != 0", indices=(i, j))
        for i in range(N + 1):
            for k in range(N):
                if b[i][k] == 0:
                    raise FactorizationViolated(f"b[{i}][{k}] vanishes", indices=(i, k))
        for i in range(N + 1):
            for j in range(i + 1, N + 1):
                for k in range(N):
                    for l in range(k, N):
                        lhs = a[i][k] * b[j][l] - a[j][k] * b[i][l]
                        rhs = p[i][j] * q[k][l]
                        if not _close_to(lhs, rhs, field, policy):
                            raise FactorizationViolated(
                                f"factorization fails at i={i}, j={j}, k={k}, l={l}", indices=(i, j, k, l)
                            )

    @property
    def N(self) -> int:
        return len(self.a) - 1


def _close_to(u, v, field, policy):
    if field.exact:
        return u == v
    u, v = field(u), field(v)
    if u == v:
        return True
    return scalar_eq(u, v, policy)


def _tau(inp: FactorizedDetInput, m: int, rs: int = 0, cs: int = 0):
    """``det X_m`` with row indices shifted by ``rs`` and factor indices by ``cs``."""
    if m < 0:
        return inp.field.one
    a, b = inp.a, inp.b
    return det(_ratio_matrix(lambda i, k: a[i + rs][k + cs], lambda i, k: b[i + rs][k + cs], m, inp.field))


def factorized_rhs(inp: FactorizedDetInput, m: int):
    field = inp.field
    num = field.one
    for j in range(m + 1):
        for i in range(j):
            num = num * inp.p[j][i]
    for l in range(m):
        for k in range(l + 1):
            num = num * inp.q[k][l]
    den = field.one
    for i in range(m + 1):
        for k in range(m):
            den = den * inp.b[i][k]
    return num / den


def abstract_factorized_det(inp: FactorizedDetInput, m: int, policy: EqPolicy | None = None) -> IdentityReport:
    if not 0 <= m <= inp.N:
        raise InsufficientData(f"m must lie in 0..{inp.N}, got {m}")
    lhs = _tau(inp, m)
    return make_report("abstract-factorized", lhs, inp.field(factorized_rhs(inp, m)), policy or inp.policy, m=m)


def abstract_factorized_all(inp: FactorizedDetInput, policy: EqPolicy | None = None) -> list:
    return [abstract_factorized_det(inp, m, policy) for m in range(inp.N + 1)]


def tau_bilinear_check(inp: FactorizedDetInput, m: int, policy: EqPolicy | None = None) -> IdentityReport:
    """The three-term relation between shifted ``tau`` functions.

    With ``r_i = a_{i0}/b_{i0}`` (0-based, first factor) it reads::

        r_{m+1} tau_m TcTr(tau_m) - r_0 Tc(tau_m) Tr(tau_m) = tau_{m+1} TcTr(tau_{m-1})

    where ``Tr`` shifts row indices and ``Tc`` factor indices by one.  Needs
    ``m >= 1`` and ``N >= m + 1``.
    """
    if m < 1:
        raise InsufficientData("the relation needs m >= 1")
    if inp.N < m + 1:
        raise InsufficientData(f"need N >= {m + 1} rows of data, have N = {inp.N}")
    r_top = inp.a[m + 1][0] / inp.b[m + 1][0]
    r_0 = inp.a[0][0] / inp.b[0][0]
    lhs = r_top * _tau(inp, m) * _tau(inp, m, 1, 1) - r_0 * _tau(inp, m, 0, 1) * _tau(inp, m, 1, 0)
    rhs = _tau(inp, m + 1) * _tau(inp, m - 1, 1, 1)
    return make_report("tau-bilinear", lhs, rhs, policy or inp.policy, m=m)


def factorized_from_linear(x, alpha, beta, gamma, delta, policy=None) -> FactorizedDetInput:
    """``a_ik = alpha_k x_i + beta_k``, ``b_ik = gamma_k x_i + delta_k``."""
    N = _check_lengths(x, alpha, beta, gamma, delta)
    a = [[alpha[k] * x[i] + beta[k] for k in range(N)] for i in range(N + 1)]
    b = [[gamma[k] * x[i] + delta[k] for k in range(N)] for i in range(N + 1)]
    p = [[x[i] - x[j] for j in range(N + 1)] for i in range(N + 1)]
    q = [[alpha[k] * delta[l] - beta[k] * gamma[l] for l in range(N)] for k in range(N)]
    return FactorizedDetInput(a, b, p, q, policy)


def factorized_from_brackets(kind: BracketKind, x, a, b, policy=None, field=None) -> FactorizedDetInput:
    """``a_ik = [a_k +- x_i]``, ``b_ik = [b_k +- x_i]``."""
    N = _check_lengths(x, a, b)
    field = field or common_field([*x, *a, *b])
    br = bracket_fn(kind, field)
    x, a, b = [field(v) for v in x], [field(v) for v in a], [field(v) for v in b]
    _check_poles(kind, field, [(b[k], x[i], f"[b_{k} +- x_{i}]") for i in range(N + 1) for k in range(N)])
    A = [[_pm(br, a[k], x[i]) for k in range(N)] for i in range(N + 1)]
    B = [[_pm(br, b[k], x[i]) for k in range(N)] for i in range(N + 1)]
    P = [[_pm(br, x[i], x[j]) for j in range(N + 1)] for i in range(N + 1)]
    Q = [[_pm(br, a[k], b[l]) for l in range(N)] for k in range(N)]
    return FactorizedDetInput(A, B, P, Q, policy)
