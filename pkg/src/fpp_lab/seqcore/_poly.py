"""Dense univariate polynomials over the rationals, coefficients low to high."""

from fractions import Fraction
from math import comb

Poly = tuple  # tuple[Fraction, ...]


def trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def const(c):
    return trim((Fraction(c),))


def add(p, q):
    n = max(len(p), len(q))
    return trim(
        (p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)
    )


def scale(p, c):
    if c == 0:
        return ()
    return tuple(a * c for a in p)


def mul(p, q):
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def evaluate(p, x):
    acc = Fraction(0)
    for a in reversed(p):
        acc = acc * x + a
    return acc


def compose_affine(p, a, b):
    """Return the polynomial k -> p(a*k + b)."""
    out = ()
    lin = trim((Fraction(b), Fraction(a)))
    for c in reversed(p):
        out = add(mul(out, lin), (c,))
    return out


def degree(p):
    return len(p) - 1


def forward_differences(p):
    """Coefficients b_j with p(k) = sum_j b_j * C(k, j)."""
    n = len(p)
    vals = [evaluate(p, k) for k in range(n)]
    out = []
    for _ in range(n):
        out.append(vals[0])
        vals = [vals[i + 1] - vals[i] for i in range(len(vals) - 1)]
    return out


def solve_twisted_difference(p, u):
    """Find q with u*q(m+1) - q(m) = p(m); requires u != 1."""
    d = len(p) - 1
    q = [Fraction(0)] * (d + 1)
    for i in range(d, -1, -1):
        acc = p[i] - u * sum(comb(j, i) * q[j] for j in range(i + 1, d + 1))
        q[i] = acc / (u - 1)
    return trim(q)


def antidifference(p):
    """Find r with r(m+1) - r(m) = p(m) and r(0) = 0."""
    d = len(p) - 1
    r = [Fraction(0)] * (d + 2)
    for i in range(d, -1, -1):
        acc = p[i] - sum(comb(j, i) * r[j] for j in range(i + 2, d + 2))
        r[i + 1] = acc / (i + 1)
    return trim(r)


def abs_coeff_sum(p):
    return sum((abs(a) for a in p), Fraction(0))
