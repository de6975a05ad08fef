"""Named functionals f used throughout the toolkit."""

from __future__ import annotations

from fractions import Fraction

from .seqcore import L1Seq, Tail
from .witness import f_epsilon


def example22() -> L1Seq:
    """(1/2, -1/4, 1/8, -1/16, ...)."""
    return L1Seq({1: Fraction(1, 2)}, [Tail.geometric(2, 1, Fraction(-1, 4), Fraction(-1, 2))])


def example31() -> L1Seq:
    """(-1/2, 1/4, 0, -1/8, 0, 1/16, 0, ...)."""
    return L1Seq({1: Fraction(-1, 2)}, [Tail.geometric(2, 2, Fraction(1, 4), Fraction(-1, 2))])


def c_special() -> L1Seq:
    """(1/2, 1/2, 0, ...): W_f is c itself, re-indexed."""
    return L1Seq({1: Fraction(1, 2), 2: Fraction(1, 2)})


def f_eps_half() -> L1Seq:
    return f_epsilon(Fraction(1, 2))


NAMED = {
    "example22": example22,
    "example31": example31,
    "c_special": c_special,
    "f_eps": f_eps_half,
}
