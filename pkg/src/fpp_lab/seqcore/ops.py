"""Norms, the c/l1 pairing, and sign-set decisions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .indexseq import IndexSeq
from .sequences import CSeq, L1Seq
from .tails import ZERO

PREDICATES = ("positive", "negative", "zero", "agree", "disagree_or_zero")


def sup_norm(x: CSeq) -> Fraction:
    return x.sup_norm()


def l1_norm(f: L1Seq) -> Fraction:
    return f.l1_norm()


def entry(seq, i: int) -> Fraction:
    return seq.entry(i)


def coordinate_pairing(g: L1Seq, x: CSeq) -> Fraction:
    """sum_{n>=1} g(n) x(n), without any limit term."""
    lim = x.limit
    out = lim * g.total() if lim else ZERO
    for n, v in x.prefix.items():
        out += g.entry(n) * (v - lim)
    return out


def pair_c(f: L1Seq, x: CSeq) -> Fraction:
    """The functional f in l1 = c* evaluated at x:

    f(1)*lim x + sum_{n>=1} f(n+1) x(n).
    """
    lim = x.limit
    out = lim * f.total() if lim else ZERO
    for n, v in x.prefix.items():
        out += f.entry(n + 1) * (v - lim)
    return out


@dataclass(frozen=True)
class SignSet:
    """An eventually periodic set of indices n >= 1.

    Membership is explicit below ``start``; from ``start`` on, n belongs to
    the set iff ``start + ((n - start) % period)`` is in ``residues``.
    """

    head: frozenset
    start: int
    period: int
    residues: frozenset

    @property
    def is_finite(self) -> bool:
        return not self.residues

    @property
    def elements(self) -> frozenset:
        if not self.is_finite:
            raise ValueError("set is infinite")
        return self.head

    def __contains__(self, n: int) -> bool:
        if n < self.start:
            return n in self.head
        return self.start + (n - self.start) % self.period in self.residues

    def __iter__(self) -> Iterator[int]:
        yield from sorted(self.head)
        if self.residues:
            base = self.start
            order = sorted(self.residues)
            while True:
                for r in order:
                    yield r + (base - self.start)
                base += self.period

    def take(self, count: int) -> list[int]:
        out = []
        for n in self:
            if len(out) >= count:
                break
            out.append(n)
        return out

    def nth(self, k: int) -> int:
        """k-th element, 1-based."""
        head = sorted(self.head)
        if k <= len(head):
            return head[k - 1]
        if not self.residues:
            raise IndexError(k)
        k -= len(head) + 1
        order = sorted(self.residues)
        q, r = divmod(k, len(order))
        return order[r] + q * self.period

    def index_of(self, n: int):
        """1-based position of n in the set, or None."""
        if n not in self:
            return None
        head = sorted(self.head)
        if n < self.start:
            return head.index(n) + 1
        order = sorted(self.residues)
        q, r = divmod(n - self.start, self.period)
        return len(head) + q * len(order) + order.index(self.start + r) + 1

    def as_index_seq(self):
        """The same set as an IndexSeq, or None if the periodic part is no progression."""
        head = sorted(self.head)
        if self.is_finite:
            return IndexSeq.finite(head)
        order = sorted(self.residues)
        step, rem = divmod(self.period, len(order))
        if rem or any(r != order[0] + i * step for i, r in enumerate(order)):
            return None
        first = order[0]
        # fold head entries that continue the progression backwards
        while head and head[-1] == first - step:
            first = head.pop()
        return IndexSeq.progression(first, step, head)

    def max_before_periodic(self) -> int:
        return max(self.head, default=0)


def _test(pred: str, v: Fraction, first: Fraction) -> bool:
    if pred == "positive":
        return v > 0
    if pred == "negative":
        return v < 0
    if pred == "zero":
        return v == 0
    if pred == "agree":
        return first * v > 0
    if pred == "disagree_or_zero":
        return first * v <= 0
    raise ValueError(f"unknown predicate {pred!r}; expected one of {PREDICATES}")


def sign_set(f: L1Seq, predicate: str) -> SignSet:
    """The set {n >= 1 : predicate holds for f(n+1)}, decided exactly."""
    first = f.entry(1)
    threshold, period = f.sign_pattern()
    # coordinates n refer to f(n+1), so shift the pattern down by one
    start = max(threshold - 1, 1)
    head = frozenset(n for n in range(1, start) if _test(predicate, f.entry(n + 1), first))
    residues = frozenset(
        n for n in range(start, start + period) if _test(predicate, f.entry(n + 1), first)
    )
    return SignSet(head, start, period, residues)


def sign_set_finiteness(f: L1Seq, predicate: str):
    """("finite", elements) or ("infinite", None)."""
    s = sign_set(f, predicate)
    if s.is_finite:
        return "finite", s.elements
    return "infinite", None
