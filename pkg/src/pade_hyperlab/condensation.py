"""Determinant condensation identities.

All indices are 0-based.  For an ``n x n`` matrix split as ``n = r + s``
the "core" columns are ``r..n-1``.  The mapping to the usual 1-based
statements is::

    fixed core   y[i][j] = det X[{i} + core_rows][{j} + core]     core_rows = r..n-1
    moving core  y[i][j] = det X[i..i+s][{j} + core]
    divisor      D_i     = det X[i+1..i+s][core]                  i = 0..r-1

so ``D_{r-1}`` is the core minor itself.  The identities checked here are

    det Y  = det X * core**(r-1)                          (fixed core)
    det Y  = det X * prod(D_i, i = 0..r-2)                 (moving core)
    det X  = det Ytilde * core,  Ytilde[i][j] = y[i][j]/D_i (renormalized)
"""

from __future__ import annotations

from enum import Enum

from .errors import BadSplit, NotSquare, SingularCoreMinor, TooSmall
from .linalg import Matrix, det, minor_det
from .numerics import EqPolicy, prod
from .reports import IdentityReport, make_report


class CondensationIdentity(str, Enum):
    DODGSON = "DodgsonA1"
    MOVING_CORE = "MovingCoreA2"
    RENORMALIZED = "RenormalizedA18"
    JACOBI = "Jacobi"
    LEWIS_CARROLL = "LewisCarroll"


CondensationReport = IdentityReport


def _split(X: Matrix, r: int) -> int:
    if not X.is_square:
        raise NotSquare(f"condensation of a {X.rows}x{X.cols} matrix")
    n = X.rows
    if r < 1 or r >= n:
        raise BadSplit(f"need 1 <= r < n, got r={r}, n={n}")
    return n - r


def condense_fixed_core(X: Matrix, r: int) -> Matrix:
    s = _split(X, r)
    n = X.rows
    core = list(range(r, n))
    y = [[minor_det(X, [i] + core, [j] + core) for j in range(r)] for i in range(r)]
    return Matrix(y, X.field, r)


def condense_moving_core(X: Matrix, r: int) -> Matrix:
    s = _split(X, r)
    core = list(range(r, X.rows))
    y = [
        [minor_det(X, list(range(i, i + s + 1)), [j] + core) for j in range(r)]
        for i in range(r)
    ]
    return Matrix(y, X.field, r)


def moving_core_divisors(X: Matrix, r: int) -> list:
    """``D_i = det X[i+1..i+s][core]`` for ``i = 0..r-1``."""
    s = _split(X, r)
    core = list(range(r, X.rows))
    return [minor_det(X, list(range(i + 1, i + s + 1)), core) for i in range(r)]


def condense_moving_core_renormalized(X: Matrix, r: int) -> Matrix:
    y = condense_moving_core(X, r)
    divisors = moving_core_divisors(X, r)
    for i, d in enumerate(divisors):
        if X.field.is_zero(d):
            raise SingularCoreMinor(f"window minor for row {i} vanishes", window=i)
    return Matrix([[y[i, j] / divisors[i] for j in range(r)] for i in range(r)], X.field, r)


def dodgson_check(X: Matrix, r: int, policy: EqPolicy | None = None) -> IdentityReport:
    y = condense_fixed_core(X, r)
    core = list(range(r, X.rows))
    rhs = det(X) * minor_det(X, core, core) ** (r - 1)
    return make_report(CondensationIdentity.DODGSON, det(y), rhs, policy, r=r)


def moving_core_check(X: Matrix, r: int, policy: EqPolicy | None = None) -> IdentityReport:
    y = condense_moving_core(X, r)
    divisors = moving_core_divisors(X, r)
    rhs = det(X) * prod(divisors[: r - 1], start=X.field.one)
    return make_report(CondensationIdentity.MOVING_CORE, det(y), rhs, policy, r=r)


def renormalized_check(X: Matrix, r: int, policy: EqPolicy | None = None) -> IdentityReport:
    yt = condense_moving_core_renormalized(X, r)
    core = list(range(r, X.rows))
    rhs = det(yt) * minor_det(X, core, core)
    return make_report(CondensationIdentity.RENORMALIZED, det(X), rhs, policy, r=r)


def jacobi_check(X: Matrix, policy: EqPolicy | None = None, form: str = "lewis-carroll") -> IdentityReport:
    """Bilinear minor identity for ``X`` (n >= 3).

    ``form="lewis-carroll"`` compares the leading/trailing principal minors
    form; ``form="jacobi"`` the form that isolates the first two rows and
    columns against the trailing block ``2..n-1``.
    """
    if not X.is_square:
        raise NotSquare(f"{X.rows}x{X.cols} matrix")
    n = X.rows
    if n < 3:
        raise TooSmall(f"need n >= 3, got {n}")
    if form == "lewis-carroll":
        head, tail, mid = list(range(n - 1)), list(range(1, n)), list(range(1, n - 1))
        lhs = minor_det(X, head, head) * minor_det(X, tail, tail) - minor_det(X, head, tail) * minor_det(X, tail, head)
        rhs = det(X) * minor_det(X, mid, mid)
        return make_report(CondensationIdentity.LEWIS_CARROLL, lhs, rhs, policy)
    if form == "jacobi":
        rest = list(range(2, n))
        r0, r1 = [0] + rest, [1] + rest
        lhs = minor_det(X, r0, r0) * minor_det(X, r1, r1) - minor_det(X, r0, r1) * minor_det(X, r1, r0)
        rhs = det(X) * minor_det(X, rest, rest)
        return make_report(CondensationIdentity.JACOBI, lhs, rhs, policy)
    raise ValueError(f"unknown form {form!r}")


def all_condensation_checks(X: Matrix, policy: EqPolicy | None = None) -> list:
    """Every identity for every valid split of one matrix."""
    reports = []
    n = X.rows
    for r in range(1, n):
        reports.append(dodgson_check(X, r, policy))
        reports.append(moving_core_check(X, r, policy))
        try:
            reports.append(renormalized_check(X, r, policy))
        except SingularCoreMinor:
            pass
    if n >= 3:
        reports.append(jacobi_check(X, policy))
        reports.append(jacobi_check(X, policy, form="jacobi"))
    return reports
