"""Eventually closed-form tails of sequences.

A :class:`Tail` lives on the arithmetic progression ``start + k*step``
(k = 0, 1, ...) and takes the value ``sum_t P_t(k) * r_t**k`` there, where
each ``P_t`` is a rational polynomial and ``0 < |r_t| < 1``.  Plain geometric
tails are the single-term, constant-polynomial case.  The wider class is
closed under the operations the toolkit needs (sums with overlapping
supports, re-indexing, convolution with a geometric kernel), which the
geometric class alone is not.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import _poly as P

ZERO = Fraction(0)


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _merge_terms(pairs):
    acc: dict[Fraction, tuple] = {}
    for ratio, poly in pairs:
        ratio = Fraction(ratio)
        poly = P.trim(Fraction(c) for c in poly)
        if not poly:
            continue
        if not 0 < abs(ratio) < 1:
            raise ValueError(f"tail ratio must satisfy 0 < |r| < 1, got {ratio}")
        acc[ratio] = P.add(acc.get(ratio, ()), poly)
    return tuple(sorted((r, p) for r, p in acc.items() if p))


@dataclass(frozen=True)
class Tail:
    start: int
    step: int
    terms: tuple = ()

    def __post_init__(self):
        if self.start < 1 or self.step < 1:
            raise ValueError("tail start and step must be positive indices")
        object.__setattr__(self, "terms", _merge_terms(self.terms))

    # -- construction -----------------------------------------------------
    @classmethod
    def geometric(cls, start, step, coef, ratio) -> "Tail":
        coef = Fraction(coef)
        if coef == 0:
            raise ValueError("geometric tail needs a nonzero coefficient")
        return cls(start, step, ((Fraction(ratio), (coef,)),))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_geometric(self) -> bool:
        return len(self.terms) == 1 and len(self.terms[0][1]) == 1

    @property
    def coef(self) -> Fraction:
        if not self.is_geometric:
            raise AttributeError("coef is only defined for geometric tails")
        return self.terms[0][1][0]

    @property
    def ratio(self) -> Fraction:
        if not self.is_geometric:
            raise AttributeError("ratio is only defined for geometric tails")
        return self.terms[0][0]

    # -- indexing ---------------------------------------------------------
    def index(self, k: int) -> int:
        return self.start + k * self.step

    def offset(self, i: int):
        """Offset k with index(k) == i, or None when i is off the support."""
        if i < self.start or (i - self.start) % self.step:
            return None
        return (i - self.start) // self.step

    def contains(self, i: int) -> bool:
        return self.offset(i) is not None

    def value(self, k: int) -> Fraction:
        return sum((P.evaluate(p, k) * r**k for r, p in self.terms), ZERO)

    def at(self, i: int) -> Fraction:
        k = self.offset(i)
        return ZERO if k is None else self.value(k)

    def overlaps(self, other: "Tail") -> bool:
        return (self.start - other.start) % gcd(self.step, other.step) == 0

    # -- transformations --------------------------------------------------
    def scale(self, c) -> "Tail":
        c = Fraction(c)
        return Tail(self.start, self.step, tuple((r, P.scale(p, c)) for r, p in self.terms))

    def with_terms(self, pairs) -> "Tail":
        return Tail(self.start, self.step, tuple(pairs))

    def advance(self, n: int):
        """Split off the first n entries; returns (entries, remaining tail)."""
        if n <= 0:
            return [], self
        head = [(self.index(k), self.value(k)) for k in range(n)]
        terms = tuple((r, P.scale(P.compose_affine(p, 1, n), r**n)) for r, p in self.terms)
        return head, Tail(self.index(n), self.step, terms)

    def advance_to(self, i: int):
        """Materialize entries with index < i; the rest starts at or after i."""
        if i <= self.start:
            return [], self
        n = -(-(i - self.start) // self.step)
        return self.advance(n)

    def split(self, q: int) -> list["Tail"]:
        """Re-express on q sub-progressions of step q*step."""
        if q == 1:
            return [self]
        out = []
        for e in range(q):
            terms = tuple(
                (r**q, P.scale(P.compose_affine(p, q, e), r**e)) for r, p in self.terms
            )
            out.append(Tail(self.start + e * self.step, self.step * q, terms))
        return out

    def positive_parts(self) -> list["Tail"]:
        """Equivalent tails whose ratios are all positive."""
        if all(r > 0 for r, _ in self.terms):
            return [self]
        return self.split(2)

    # -- sums -------------------------------------------------------------
    def total(self) -> Fraction:
        """Exact sum of all entries."""
        out = ZERO
        for r, p in self.terms:
            for j, b in enumerate(P.forward_differences(p)):
                if b:
                    out += b * r**j / (1 - r) ** (j + 1)
        return out

    def abs_total(self) -> Fraction:
        """Exact sum of absolute values of all entries."""
        if self.is_zero:
            return ZERO
        if self.is_geometric:
            return abs(self.coef) / (1 - abs(self.ratio))
        if any(r < 0 for r, _ in self.terms):
            return sum((t.abs_total() for t in self.split(2)), ZERO)
        n, sign = self.sign_threshold()
        head, rest = self.advance(n)
        return sum((abs(v) for _, v in head), ZERO) + sign * rest.total()

    def sign_threshold(self):
        """(N, s): for every offset k >= N the entry is nonzero with sign s.

        Requires all ratios positive (see :meth:`positive_parts`).
        """
        if self.is_zero:
            raise ValueError("zero tail has no eventual sign")
        if any(r < 0 for r, _ in self.terms):
            raise ValueError("sign_threshold needs positive ratios")
        rho, lead = self.terms[-1]
        d = P.degree(lead)
        a_d = lead[-1]
        sign = 1 if a_d > 0 else -1
        k1 = max(1, -(-2 * P.abs_coeff_sum(lead[:-1]) // abs(a_d)))
        others = [(r / rho, P.abs_coeff_sum(p), P.degree(p) - d) for r, p in self.terms[:-1]]
        half = abs(a_d) / 2

        def ok(k):
            if k < k1:
                return False
            total = ZERO
            for q, a, e in others:
                if e > 0 and Fraction(k + 1, k) ** e * q > 1:
                    return False
                total += a * Fraction(k) ** e * q**k
            return total < half

        return _least_upset(ok, k1), sign

    def bound_offset(self, eps) -> int:
        """Smallest-found N with |entry at offset k| < eps for all k >= N."""
        eps = Fraction(eps)
        if eps <= 0:
            raise ValueError("eps must be positive")
        if self.is_zero:
            return 0
        data = [(abs(r), P.abs_coeff_sum(p), P.degree(p)) for r, p in self.terms]

        def ok(k):
            total = ZERO
            for q, a, e in data:
                if e > 0 and Fraction(k + 1, k) ** e * q > 1:
                    return False
                total += a * Fraction(k) ** e * q**k
            return total < eps

        return _least_upset(ok, 1)

    def max_abs(self) -> Fraction:
        if self.is_zero:
            return ZERO
        best = ZERO
        k = 0
        while best == 0:
            best = max(best, abs(self.value(k)))
            k += 1
        n = self.bound_offset(best)
        return max([best] + [abs(self.value(j)) for j in range(max(n, k))])


def _least_upset(pred, lo: int) -> int:
    """Least k >= lo in an upward-closed predicate (found by doubling)."""
    hi = max(lo, 1)
    while not pred(hi):
        hi *= 2
    low = max(lo, hi // 2)
    if pred(low):
        return low
    while hi - low > 1:
        mid = (low + hi) // 2
        if pred(mid):
            hi = mid
        else:
            low = mid
    return hi
