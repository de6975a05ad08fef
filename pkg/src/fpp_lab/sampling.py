"""Seeded generators of exact test data."""

from __future__ import annotations

import os
import random
from fractions import Fraction

from .seqcore import CSeq, L1Seq, Tail, pair_c

DEFAULT_SEED = 20150304


def default_seed() -> int:
    env = os.environ.get("FPP_LAB_SEED")
    return int(env) if env else DEFAULT_SEED


def rng(seed=None) -> random.Random:
    return random.Random(default_seed() if seed is None else seed)


def rational(r: random.Random, span: int = 5, den: int = 6) -> Fraction:
    return Fraction(r.randint(-span * den, span * den), r.randint(1, den))


def cseq(r: random.Random, length: int = 6, span: int = 3) -> CSeq:
    n = r.randint(0, length)
    prefix = {i: rational(r, span) for i in range(1, n + 1) if r.random() < 0.8}
    return CSeq(prefix, rational(r, span))


def member_of(r: random.Random, f: L1Seq, length: int = 6) -> CSeq:
    """A random element of W_f: a random CSeq corrected on one coordinate."""
    y = cseq(r, length)
    value = pair_c(f, y)
    if value == 0:
        return y
    candidates = [n for n in range(1, length + 8) if f.entry(n + 1) != 0]
    if candidates:
        n = r.choice(candidates)
        return y + CSeq({n: -value / f.entry(n + 1)}, 0)
    # no usable coordinate nearby: shift the whole vector by a constant
    return y - CSeq.constant(value / f.total())


def weights(r: random.Random, count: int) -> list[Fraction]:
    raw = [Fraction(r.randint(0, 9), 1) for _ in range(count)]
    if not any(raw):
        raw[r.randrange(count)] = Fraction(1)
    s = sum(raw)
    return [w / s for w in raw]


def simplex_coeffs(r: random.Random, max_len: int = 6, tail_prob: float = 0.0) -> L1Seq:
    """Nonnegative coefficients summing to one, optionally with a geometric tail."""
    n = r.randint(1, max_len)
    w = weights(r, n)
    if r.random() < tail_prob:
        ratio = Fraction(r.randint(1, 3), 4)
        share = Fraction(r.randint(1, 3), 4)
        head = {i + 1: v * (1 - share) for i, v in enumerate(w)}
        coef = share * (1 - ratio)
        return L1Seq(head, [Tail.geometric(n + 1, 1, coef, ratio)])
    return L1Seq({i + 1: v for i, v in enumerate(w)})


def signed_vector(r: random.Random, max_len: int = 6) -> list[Fraction]:
    return [rational(r, 2, 4) for _ in range(r.randint(1, max_len))]
