"""Exact elements of c (eventually constant) and of l1 (finite part plus tails)."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping

from .tails import ZERO, Tail, lcm


def _q(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


def _normalize(finite: dict, tails: list):
    finite = dict(finite)
    tails = [t for t in tails if not t.is_zero]

    def put(i, v):
        finite[i] = finite.get(i, ZERO) + v

    # group tails into overlap components
    parent = list(range(len(tails)))

    def root(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a in range(len(tails)):
        for b in range(a + 1, len(tails)):
            if tails[a].overlaps(tails[b]):
                parent[root(a)] = root(b)
    comps: dict[int, list[Tail]] = {}
    for a, t in enumerate(tails):
        comps.setdefault(root(a), []).append(t)

    merged: list[Tail] = []
    for group in comps.values():
        if len(group) == 1:
            merged.append(group[0])
            continue
        step = reduce(lcm, (t.step for t in group))
        by_class: dict[int, list[Tail]] = {}
        for t in group:
            for sub in t.split(step // t.step):
                by_class.setdefault(sub.start % step, []).append(sub)
        for subs in by_class.values():
            top = max(s.start for s in subs)
            terms = []
            for s in subs:
                head, rest = s.advance_to(top)
                for i, v in head:
                    put(i, v)
                terms.extend(rest.terms)
            merged.append(Tail(top, step, tuple(terms)))

    # finite keys may not sit on a tail's support
    out_tails = []
    for t in merged:
        if t.is_zero:
            continue
        inside = [i for i in finite if t.contains(i)]
        if inside:
            head, t = t.advance_to(max(inside) + 1)
            for i, v in head:
                put(i, v)
        if not t.is_zero:
            out_tails.append(t)
    finite = {i: v for i, v in finite.items() if v != 0}
    out_tails.sort(key=lambda t: (t.start, t.step))
    return finite, tuple(out_tails)


class L1Seq:
    """An element of l1: finitely many explicit entries plus disjoint tails.

    Indices start at 1.  Values are immutable; arithmetic returns new
    objects.  Equality is equality of the represented sequences.
    """

    __slots__ = ("_finite", "_tails")

    def __init__(self, finite: Mapping[int, object] | None = None, tails: Iterable[Tail] = ()):
        items = {}
        for i, v in (finite or {}).items():
            i = int(i)
            if i < 1:
                raise ValueError(f"indices start at 1, got {i}")
            items[i] = _q(v)
        self._finite, self._tails = _normalize(items, list(tails))

    @classmethod
    def unit(cls, n: int) -> "L1Seq":
        return cls({n: 1})

    @classmethod
    def zero(cls) -> "L1Seq":
        return cls()

    # -- access -----------------------------------------------------------
    @property
    def finite(self) -> dict:
        return dict(sorted(self._finite.items()))

    @property
    def tails(self) -> tuple:
        return self._tails

    def entry(self, i: int) -> Fraction:
        if i < 1:
            raise ValueError("indices start at 1")
        if i in self._finite:
            return self._finite[i]
        for t in self._tails:
            k = t.offset(i)
            if k is not None:
                return t.value(k)
        return ZERO

    __getitem__ = entry

    def horizon(self) -> int:
        """Largest index not governed by a tail's closed form (0 if none)."""
        keys = list(self._finite) + [t.start - 1 for t in self._tails]
        return max(keys, default=0)

    @property
    def is_finite(self) -> bool:
        return not self._tails

    def support(self) -> list[int]:
        if self._tails:
            raise ValueError("support of a sequence with tails is infinite")
        return sorted(self._finite)

    def entries(self, upto: int) -> list[tuple[int, Fraction]]:
        """Nonzero entries with index <= upto, in order."""
        out = [(i, v) for i, v in self._finite.items() if i <= upto]
        for t in self._tails:
            k = 0
            while t.index(k) <= upto:
                v = t.value(k)
                if v:
                    out.append((t.index(k), v))
                k += 1
        return sorted(out)

    def is_zero(self) -> bool:
        return not self._finite and not self._tails

    # -- norms and sums ---------------------------------------------------
    def l1_norm(self) -> Fraction:
        return sum((abs(v) for v in self._finite.values()), ZERO) + sum(
            (t.abs_total() for t in self._tails), ZERO
        )

    def total(self) -> Fraction:
        """Sum of all entries."""
        return sum(self._finite.values(), ZERO) + sum((t.total() for t in self._tails), ZERO)

    def max_abs(self, start: int = 1) -> Fraction:
        """sup over i >= start of |entry(i)|."""
        best = max((abs(v) for i, v in self._finite.items() if i >= start), default=ZERO)
        for t in self._tails:
            _, rest = t.advance_to(start)
            best = max(best, rest.max_abs())
        return best

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: "L1Seq") -> "L1Seq":
        if not isinstance(other, L1Seq):
            return NotImplemented
        finite = dict(self._finite)
        for i, v in other._finite.items():
            finite[i] = finite.get(i, ZERO) + v
        return L1Seq._raw(finite, list(self._tails) + list(other._tails))

    def __neg__(self) -> "L1Seq":
        return self.scale(-1)

    def __sub__(self, other: "L1Seq") -> "L1Seq":
        if not isinstance(other, L1Seq):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "L1Seq":
        c = _q(c)
        if c == 0:
            return L1Seq()
        return L1Seq._raw(
            {i: v * c for i, v in self._finite.items()}, [t.scale(c) for t in self._tails]
        )

    def __mul__(self, c):
        if isinstance(c, L1Seq):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self.scale(1 / _q(c))

    def __eq__(self, other):
        if not isinstance(other, L1Seq):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def shift_left(self, n: int = 1) -> "L1Seq":
        """g(i) = f(i + n)."""
        finite = {i - n: v for i, v in self._finite.items() if i > n}
        tails = []
        for t in self._tails:
            head, t = t.advance_to(n + 1)
            for i, v in head:
                if i > n:
                    finite[i - n] = v
            tails.append(Tail(t.start - n, t.step, t.terms))
        return L1Seq._raw(finite, tails)

    def shift_right(self, n: int = 1) -> "L1Seq":
        """g(i + n) = f(i), g(1..n) = 0."""
        return L1Seq._raw(
            {i + n: v for i, v in self._finite.items()},
            [Tail(t.start + n, t.step, t.terms) for t in self._tails],
        )

    def truncate(self, n: int) -> "L1Seq":
        """Keep entries with index <= n."""
        return L1Seq(dict(self.entries(n)))

    def restrict_range(self, lo: int, hi: int) -> "L1Seq":
        return L1Seq({i: v for i, v in self.entries(hi) if i >= lo})

    def positive_part(self) -> "L1Seq":
        return L1Seq({i: v for i, v in self._finite_only().items() if v > 0})

    def negative_part(self) -> "L1Seq":
        return L1Seq({i: v for i, v in self._finite_only().items() if v < 0})

    def _finite_only(self) -> dict:
        if self._tails:
            from ..errors import RepresentabilityError

            raise RepresentabilityError("operation needs a finitely supported sequence")
        return self._finite

    # -- sign structure ---------------------------------------------------
    def sign_pattern(self):
        """(T, P): for i >= T the sign of entry(i) depends only on i mod P."""
        threshold = self.horizon() + 1
        period = 1
        for t in self._tails:
            for part in t.positive_parts():
                n, _ = part.sign_threshold()
                threshold = max(threshold, part.index(n))
                period = lcm(period, part.step)
        return threshold, period

    def is_nonnegative(self) -> bool:
        threshold, period = self.sign_pattern()
        return all(self.entry(i) >= 0 for i in range(1, threshold + period))

    # -- misc ---------------------------------------------------------------
    @classmethod
    def _raw(cls, finite, tails) -> "L1Seq":
        obj = cls.__new__(cls)
        obj._finite, obj._tails = _normalize(finite, list(tails))
        return obj

    def __repr__(self):
        parts = [f"finite={self.finite!r}"]
        if self._tails:
            parts.append(f"tails={list(self._tails)!r}")
        return f"L1Seq({', '.join(parts)})"


class CSeq:
    """An eventually constant element of c.

    ``prefix`` only stores entries that differ from ``limit``; every other
    index (and the 0th coordinate) reads as the limit.
    """

    __slots__ = ("_prefix", "_limit")

    def __init__(self, prefix: Mapping[int, object] | None = None, limit=0):
        self._limit = _q(limit)
        items = {}
        for i, v in (prefix or {}).items():
            i = int(i)
            if i < 1:
                raise ValueError(f"indices start at 1, got {i}")
            v = _q(v)
            if v != self._limit:
                items[i] = v
        self._prefix = dict(sorted(items.items()))

    @classmethod
    def constant(cls, value) -> "CSeq":
        return cls({}, value)

    @classmethod
    def from_values(cls, values: Iterable, limit) -> "CSeq":
        return cls({i + 1: v for i, v in enumerate(values)}, limit)

    @property
    def prefix(self) -> dict:
        return dict(self._prefix)

    @property
    def limit(self) -> Fraction:
        return self._limit

    def entry(self, i: int) -> Fraction:
        if i == 0:
            return self._limit
        if i < 0:
            raise ValueError("indices start at 1")
        return self._prefix.get(i, self._limit)

    __getitem__ = entry

    def horizon(self) -> int:
        return max(self._prefix, default=0)

    def sup_norm(self) -> Fraction:
        return max([abs(self._limit)] + [abs(v) for v in self._prefix.values()])

    def _combine(self, other: "CSeq", a, b) -> "CSeq":
        keys = set(self._prefix) | set(other._prefix)
        return CSeq(
            {i: a * self.entry(i) + b * other.entry(i) for i in keys},
            a * self._limit + b * other._limit,
        )

    def __add__(self, other):
        if not isinstance(other, CSeq):
            return NotImplemented
        return self._combine(other, 1, 1)

    def __sub__(self, other):
        if not isinstance(other, CSeq):
            return NotImplemented
        return self._combine(other, 1, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "CSeq":
        c = _q(c)
        return CSeq({i: v * c for i, v in self._prefix.items()}, self._limit * c)

    def __mul__(self, c):
        if isinstance(c, CSeq):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def truncate(self, n: int) -> "CSeq":
        """Entries beyond n replaced by the limit."""
        return CSeq({i: v for i, v in self._prefix.items() if i <= n}, self._limit)

    def shift_left(self, n: int = 1) -> "CSeq":
        return CSeq({i - n: v for i, v in self._prefix.items() if i > n}, self._limit)

    def __eq__(self, other):
        if not isinstance(other, CSeq):
            return NotImplemented
        return self._limit == other._limit and self._prefix == other._prefix

    def __hash__(self):
        return hash((self._limit, tuple(self._prefix.items())))

    def __repr__(self):
        return f"CSeq(prefix={self._prefix!r}, limit={self._limit!r})"
