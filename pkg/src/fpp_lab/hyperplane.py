"""Hyperplanes W_f = {x in c : f(x) = 0} of the convergent-sequence space.

Membership, the isometric classification of W_f and of its dual, the
coordinate duality on W_f, the weak-star limit of its coordinate basis,
the embedding of c when one exists, and exact norming vectors.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import HypothesisError, NormingError, RepresentabilityError
from .seqcore import CSeq, L1Seq, coordinate_pairing, pair_c, sign_set

HALF = Fraction(1, 2)

CITATIONS = {
    "dual_iso_ell1": "Section 2, item (I)",
    "iso_c": "Section 2, item (II)",
    "contains_c": "Proposition 2.1",
    "has_wstar_fpp": "Proposition 2.2",
    "is_bad": "Definition 2.1",
}


class BoundaryAdvisory(UserWarning):
    """Some |f(j)| = 1/2 with j >= 2: the boundary case of the e* formula."""


class WfSpace:
    """The hyperplane W_f for a norm-one f in l1 = c*."""

    __slots__ = ("f",)

    def __init__(self, f: L1Seq, normalize: bool = False):
        norm = f.l1_norm()
        if normalize and norm != 1:
            if norm == 0:
                raise HypothesisError("norm-one hypothesis violated: f = 0")
            f = f / norm
        elif norm != 1:
            raise HypothesisError(f"norm-one hypothesis violated: ||f|| = {norm}")
        self.f = f

    @property
    def f1(self) -> Fraction:
        return self.f.entry(1)

    def max_rest(self) -> Fraction:
        """sup_{j >= 2} |f(j)|."""
        return self.f.max_abs(2)

    def has_coordinate_duality(self) -> bool:
        return abs(self.f1) >= HALF

    def require_coordinate_duality(self):
        """l1 acts on W_f by sum_n g(n) x(n) whenever |f(1)| >= 1/2.

        The strict case |f(j)| < 1/2 (j >= 2) is the standard one; the
        only other possibility under ||f|| = 1 is f = (+-1/2, ..., +-1/2 at
        j0, 0, ...), where W_f is c re-indexed with x(j0 - 1) = -+ lim x and
        the same pairing is again isometric.
        """
        if abs(self.f1) < HALF:
            raise HypothesisError(f"coordinate duality needs |f(1)| >= 1/2, got |f(1)| = {abs(self.f1)}")

    def __repr__(self):
        return f"WfSpace({self.f!r})"


def member(W: WfSpace, x: CSeq) -> bool:
    return pair_c(W.f, x) == 0


@dataclass(frozen=True)
class Classification:
    dual_iso_ell1: bool
    iso_c: bool
    contains_c: Optional[bool]
    has_wstar_fpp: Optional[bool]
    is_bad: bool

    def to_json(self) -> dict:
        def tri(v):
            return "not-applicable" if v is None else v

        return {
            "dual_iso_ell1": self.dual_iso_ell1,
            "iso_c": self.iso_c,
            "contains_c": tri(self.contains_c),
            "has_wstar_fpp": tri(self.has_wstar_fpp),
            "is_bad": self.is_bad,
            "witnesses": dict(CITATIONS),
        }


def n_plus(W: WfSpace):
    """N+ = {n : f(1) f(n+1) <= 0}."""
    return sign_set(W.f, "disagree_or_zero")


def classify(W: WfSpace) -> Classification:
    a1 = abs(W.f1)
    rest = W.max_rest()
    dual_iso = a1 >= HALF or rest >= HALF
    iso_c = rest >= HALF

    contains_c = None
    if a1 >= HALF:
        contains_c = (
            a1 == HALF
            and sign_set(W.f, "agree").is_finite
            and not sign_set(W.f, "zero").is_finite
        )

    bad = a1 == HALF and not n_plus(W).is_finite
    fpp = None
    if HALF <= a1 < 1 and rest < HALF:
        fpp = a1 > HALF or (a1 == HALF and n_plus(W).is_finite)
    return Classification(dual_iso, iso_c, contains_c, fpp, bad)


def dual_action(W: WfSpace, g: L1Seq, x: CSeq) -> Fraction:
    """The functional g in l1 = W_f* at x in W_f: sum_{n>=1} g(n) x(n)."""
    W.require_coordinate_duality()
    if not member(W, x):
        raise HypothesisError("x is not in W_f")
    return coordinate_pairing(g, x)


def wstar_limit_functional(W: WfSpace) -> L1Seq:
    """e* with e*(n) = -f(n+1)/f(1)."""
    if abs(W.f1) < HALF:
        raise HypothesisError(f"limit functional needs |f(1)| >= 1/2, got {abs(W.f1)}")
    if W.max_rest() >= HALF:
        warnings.warn(
            "some |f(j)| = 1/2 with j >= 2; e* is taken from the boundary case of its formula",
            BoundaryAdvisory,
            stacklevel=2,
        )
    return W.f.shift_left(1).scale(-1 / W.f1)


def _sgn(v) -> int:
    return (v > 0) - (v < 0)


class Embedding:
    """x -> T(x), a linear isometry of c into W_f.

    T(x)(n_k) = x(k) on the zero set {n_k} of (f(n+1))_n, and
    T(x)(i) = -sgn(f(1) f(i+1)) * lim x elsewhere.
    """

    def __init__(self, W: WfSpace):
        cls = classify(W)
        if cls.contains_c is not True:
            raise HypothesisError("W_f contains no isometric copy of c (contains_c is false)")
        self.W = W
        self.zeros = sign_set(W.f, "zero")
        if self.zeros.is_finite:
            raise RepresentabilityError("zero set is finite")
        agree = sign_set(W.f, "agree")
        self._agree_max = max(agree.elements, default=0)
        self._f1 = W.f1

    def __call__(self, x: CSeq) -> CSeq:
        lim = x.limit
        last = self.zeros.nth(max(x.horizon(), 1))
        top = max(last, self._agree_max, self.zeros.start + self.zeros.period)
        prefix = {}
        for i in range(1, top + 1):
            k = self.zeros.index_of(i)
            if k is not None:
                prefix[i] = x.entry(k)
            else:
                prefix[i] = -_sgn(self._f1 * self.W.f.entry(i + 1)) * lim
        return CSeq(prefix, lim)

    def check(self, x: CSeq) -> dict:
        y = self(x)
        return {
            "member": member(self.W, y),
            "isometric": y.sup_norm() == x.sup_norm(),
        }


def embed_c(W: WfSpace) -> Embedding:
    return Embedding(W)


def norming_vector(W: WfSpace, g: L1Seq, eps, limit=None, scan: int = 256) -> CSeq:
    """x in the unit ball of W_f with g(x) > ||g|| - eps.

    x = sgn g on supp g.  With ``limit=None`` the limit value alone solves
    the membership equation (always possible under the coordinate duality).
    With a prescribed limit, coordinates off supp g are adjusted in
    increasing order; if that budget falls short, the supp g entries are
    shrunk uniformly, which spends part of eps.
    """
    W.require_coordinate_duality()
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if not g.is_finite:
        raise HypothesisError("norming_vector needs a finitely supported functional")
    norm = g.l1_norm()
    if norm == 0:
        raise HypothesisError("cannot norm the zero functional")
    f = W.f
    supp = g.support()
    signs = {i: Fraction(_sgn(g.entry(i))) for i in supp}
    fixed = sum((f.entry(i + 1) * s for i, s in signs.items()), Fraction(0))

    if limit is None:
        coef = f.total() - sum((f.entry(i + 1) for i in supp), Fraction(0))
        if coef == 0:
            if fixed != 0:
                raise NormingError("membership equation has no solution through the limit")
            lim = Fraction(0)
        else:
            lim = -fixed / coef
        if abs(lim) > 1:
            raise NormingError(f"limit {lim} leaves the unit ball")
        return CSeq(signs, lim)

    lim = Fraction(limit)
    if abs(lim) > 1:
        raise ValueError("limit must lie in [-1, 1]")
    # f(x) = lim*total(f) + sum_{supp} f(i+1)(x_i - lim) + sum_{free} f(j+1) d_j
    base = lim * f.total() + sum((f.entry(i + 1) * (s - lim) for i, s in signs.items()), Fraction(0))
    residual = base
    free = {}
    top = max(supp[-1], f.horizon()) + scan
    for j in range(1, top + 1):
        if residual == 0:
            break
        if j in signs:
            continue
        a = f.entry(j + 1)
        if a == 0:
            continue
        d = min(max(-residual / a, -1 - lim), 1 - lim)
        if d:
            free[j] = lim + d
            residual += a * d
    t = Fraction(1)
    if residual != 0:
        # shrinking supp-g entries by t changes f(x) by (t - 1) * fixed
        if fixed == 0:
            raise NormingError("free coordinates cannot absorb the membership equation")
        t = 1 - residual / fixed
        if not 0 <= t <= 1:
            raise NormingError("correction budget insufficient even after shrinking")
    x = CSeq({**free, **{i: t * s for i, s in signs.items()}}, lim)
    value = coordinate_pairing(g, x)
    if not value > norm - eps:
        raise NormingError(f"g(x) = {value} does not exceed ||g|| - eps = {norm - eps}")
    return x
