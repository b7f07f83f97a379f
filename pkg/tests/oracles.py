"""Independent reference computations used by the tests.

None of these call into the package under test except to read plain
inputs; each one takes a different route to the same number.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath


def laplace_det(rows):
    """Determinant by cofactor expansion along the first row (fine for n <= 7)."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * laplace_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def nullspace_vector(rows):
    """A nonzero kernel vector of a k x (k+1) rational matrix of rank k, by Gauss-Jordan."""
    a = [[Fraction(x) for x in r] for r in rows]
    k = len(a)
    ncols = len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, k) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(k):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == k:
            break
    free = [c for c in range(ncols) if c not in pivots]
    assert len(free) == 1, "expected a one-dimensional kernel"
    f = free[0]
    v = [Fraction(0)] * ncols
    v[f] = Fraction(1)
    for i, c in enumerate(pivots):
        v[c] = -a[i][f]
    return v


def pade_by_linear_solve(f_rows, g_rows, weights):
    """(p, q) with mu_k sum p_j f_j(u_k) = lambda_k sum q_j g_j(u_k), up to scale."""
    rows = []
    for fr, gr, (lam, mu) in zip(f_rows, g_rows, weights):
        rows.append([mu * x for x in fr] + [-lam * y for y in gr])
    v = nullspace_vector(rows)
    m1 = len(f_rows[0])
    return v[:m1], v[m1:]


def rising(a, k):
    out = 1
    for i in range(k):
        out *= a + i
    return out


def hg_basis_rows(p, q, points, count):
    return [[rising(p + x, j) / rising(q + x, j) for j in range(count)] for x in points]


# brackets at high precision, built on mpmath directly


def _mp(x):
    if isinstance(x, Fraction):
        return mpmath.mpc(mpmath.mpf(x.numerator) / x.denominator)
    if isinstance(x, tuple):
        return _mp(x[0]) + 1j * _mp(x[1])
    return mpmath.mpc(x)


def sigma_lattice(x, w1, w2, M, prec=200):
    """Weierstrass sigma from its product over the truncated lattice |m|, |n| <= M."""
    with mpmath.workprec(prec):
        x, w1, w2 = _mp(x), _mp(w1), _mp(w2)
        acc = x
        for m in range(-M, M + 1):
            for n in range(-M, M + 1):
                if m == 0 and n == 0:
                    continue
                w = m * w1 + n * w2
                acc *= (1 - x / w) * mpmath.exp(x / w + x * x / (2 * w * w))
        return acc


def sigma_theta(x, w1, w2, prec=400):
    """Sigma with full periods w1, w2 through mpmath's jtheta."""
    with mpmath.workprec(prec):
        x, w1, w2 = _mp(x), _mp(w1), _mp(w2)
        q = mpmath.exp(1j * mpmath.pi * w2 / w1)
        d1 = mpmath.jtheta(1, 0, q, 1)
        d3 = mpmath.jtheta(1, 0, q, 3)
        h1 = w1 / 2
        eta1 = -(mpmath.pi ** 2 / (12 * h1)) * d3 / d1
        v = mpmath.pi * x / w1
        return (w1 / mpmath.pi) * mpmath.exp(eta1 * x * x / w1) * mpmath.jtheta(1, v, q) / d1


def trig_bracket(x, omega, prec=400):
    with mpmath.workprec(prec):
        return mpmath.sin(mpmath.pi * _mp(x) / _mp(omega))


def vwp_direct(br, delta, a0, a, z, K):
    """Very-well-poised sum with every term assembled from scratch."""

    def dsf(x, k):
        out = 1
        for l in range(k):
            out = out * br(x + l * delta)
        return out

    total = 0
    for k in range(K + 1):
        num = br(a0 + 2 * k * delta) * dsf(a0, k)
        den = br(a0) * dsf(delta, k)
        for ai in a:
            num = num * dsf(ai, k)
            den = den * dsf(delta + a0 - ai, k)
        total = total + num / den * z ** k
    return total


def to_mpc(x):
    return _mp(x)


def rel_err(a, b, prec=400):
    with mpmath.workprec(prec):
        a, b = to_mpc(a), to_mpc(b)
        scale = max(abs(a), abs(b))
        return 0 if scale == 0 else abs(a - b) / scale
