"""Increasing index sequences (n_k) and the maps they induce on l1."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterator

from .sequences import L1Seq
from .tails import Tail


@dataclass(frozen=True)
class IndexSeq:
    """n_1 < n_2 < ...: an explicit head, optionally continued by an
    arithmetic progression ``prog_start, prog_start + prog_step, ...``.

    A finite IndexSeq (no progression) stands for a finite selection.
    """

    head: tuple = ()
    prog_start: int | None = None
    prog_step: int | None = None

    def __post_init__(self):
        head = tuple(int(n) for n in self.head)
        object.__setattr__(self, "head", head)
        if any(n < 1 for n in head) or any(a >= b for a, b in zip(head, head[1:])):
            raise ValueError("index sequence must be positive and strictly increasing")
        if (self.prog_start is None) != (self.prog_step is None):
            raise ValueError("progression needs both start and step")
        if self.prog_start is not None:
            if self.prog_step < 1 or self.prog_start < 1:
                raise ValueError("progression start and step must be positive")
            if head and self.prog_start <= head[-1]:
                raise ValueError("progression must start after the head")

    @classmethod
    def finite(cls, indices) -> "IndexSeq":
        return cls(tuple(indices))

    @classmethod
    def progression(cls, start: int, step: int, head=()) -> "IndexSeq":
        return cls(tuple(head), start, step)

    @property
    def is_finite(self) -> bool:
        return self.prog_start is None

    def __len__(self):
        if not self.is_finite:
            raise TypeError("infinite index sequence has no length")
        return len(self.head)

    def __iter__(self) -> Iterator[int]:
        yield from self.head
        if not self.is_finite:
            n = self.prog_start
            while True:
                yield n
                n += self.prog_step

    def take(self, count: int) -> list[int]:
        out = []
        for n in self:
            if len(out) >= count:
                break
            out.append(n)
        return out

    def __getitem__(self, k: int) -> int:
        """1-based: seq[1] is n_1."""
        if k < 1:
            raise IndexError("index sequences are 1-based")
        if k <= len(self.head):
            return self.head[k - 1]
        if self.is_finite:
            raise IndexError(k)
        return self.prog_start + (k - len(self.head) - 1) * self.prog_step

    def position(self, n: int):
        """k with n_k == n, or None."""
        if n in self.head:
            return self.head.index(n) + 1
        if self.is_finite or n < self.prog_start or (n - self.prog_start) % self.prog_step:
            return None
        return len(self.head) + 1 + (n - self.prog_start) // self.prog_step

    def __contains__(self, n) -> bool:
        return self.position(n) is not None

    # -- induced maps -----------------------------------------------------
    def gather(self, f: L1Seq) -> L1Seq:
        """g with g(k) = f(n_k)."""
        finite = {k + 1: f.entry(n) for k, n in enumerate(self.head)}
        tails = []
        if not self.is_finite:
            a, q, k0 = self.prog_start, self.prog_step, len(self.head) + 1
            for i, v in f.finite.items():
                k = self.position(i)
                if k is not None and k >= k0:
                    finite[k] = v
            for t in f.tails:
                step = t.step * q // gcd(t.step, q)
                for sub in t.split(step // t.step):
                    if (sub.start - a) % q:
                        continue
                    head, sub = sub.advance_to(a)
                    for i, v in head:
                        k = self.position(i)
                        if k is not None and k >= k0:
                            finite[k] = v
                    tails.append(Tail(k0 + (sub.start - a) // q, step // q, sub.terms))
        return L1Seq._raw(finite, tails)

    def scatter(self, g: L1Seq) -> L1Seq:
        """f with f(n_k) = g(k) and zeros off the sequence."""
        finite = {}
        tails = []
        k0 = len(self.head) + 1
        if self.is_finite and (g.tails or g.horizon() > len(self.head)):
            raise ValueError("coefficients beyond a finite index sequence")
        for k, v in g.finite.items():
            finite[self[k]] = v
        for t in g.tails:
            head, t = t.advance_to(k0)
            for k, v in head:
                finite[self[k]] = v
            if not t.is_zero:
                a, q = self.prog_start, self.prog_step
                tails.append(Tail(a + (t.start - k0) * q, t.step * q, t.terms))
        return L1Seq._raw(finite, tails)

    def restrict(self, f: L1Seq) -> L1Seq:
        """f restricted to {n_k}: the sequence sum_k f(n_k) e_{n_k}."""
        return self.scatter(self.gather(f))

    def to_json(self):
        out = {"head": list(self.head)}
        if not self.is_finite:
            out["progression"] = {"start": self.prog_start, "step": self.prog_step}
        return out

    @classmethod
    def from_json(cls, data) -> "IndexSeq":
        if isinstance(data, list):
            return cls.finite(data)
        prog = data.get("progression")
        if prog:
            return cls(tuple(data.get("head", ())), int(prog["start"]), int(prog["step"]))
        return cls(tuple(data.get("head", ())))

