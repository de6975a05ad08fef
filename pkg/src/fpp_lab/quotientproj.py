"""Quotients of W_f by coordinate-vanishing subspaces, and norm-one projections.

For Y = {y in W_f : y(i) = 0 for i in S} with S an infinite progression,
every y in Y has limit 0, so v - y ranges over the z in c with z = v on S,
lim z = lim v and sum_{n free} f(n+1) z(n) = R := sum_{n free} f(n+1) v(n).
Hence

    ||v + Y|| = max(B, D),  B = max(sup_S |v|, |lim v|),  D = |R| / ||a||_1,

with a = (f(n+1)) over the free n.  An exact LP over the first free
coordinates (the rest aggregated into one variable) cross-checks it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import lp, sampling
from .errors import HypothesisError, RepresentabilityError
from .fixtures import example31
from .hyperplane import WfSpace, classify, dual_action, member
from .seqcore import CSeq, IndexSeq, L1Seq, pair_c, q_to_json

ZERO = Fraction(0)


@dataclass(frozen=True)
class VanishingSubspace:
    """Y = {y in W_f : y(start + k*step) = 0 for all k >= 0}; lim y = 0 on Y."""

    ambient: WfSpace
    start: int
    step: int

    def __post_init__(self):
        if self.start < 1 or self.step < 1:
            raise ValueError("progression start and step must be positive")

    def fixed(self, n: int) -> bool:
        return n >= self.start and (n - self.start) % self.step == 0

    def contains(self, y: CSeq) -> bool:
        if y.limit != 0 or not member(self.ambient, y):
            return False
        return all(y.entry(i) == 0 for i in range(self.start, y.horizon() + 1, self.step))

    @property
    def weights(self) -> L1Seq:
        """a(n) = f(n+1)."""
        return self.ambient.f.shift_left(1)

    def fixed_weights(self) -> L1Seq:
        """a restricted to S, re-indexed by position in S."""
        return IndexSeq.progression(self.start, self.step).gather(self.weights)


@dataclass
class QuotientNorm:
    value: Fraction
    B: Fraction
    D: Fraction
    R: Fraction
    free_mass: Fraction

    def to_json(self) -> dict:
        return {
            "value": q_to_json(self.value),
            "B": q_to_json(self.B),
            "D": q_to_json(self.D),
            "R": q_to_json(self.R),
            "free_weight_norm": q_to_json(self.free_mass),
        }


def _free_sums(Y: VanishingSubspace, v: CSeq):
    """(R, ||a||_1, sum a) over the free coordinates."""
    a = Y.weights
    on_s = Y.fixed_weights()
    mass = a.l1_norm() - on_s.l1_norm()
    total = a.total() - on_s.total()
    L = v.limit
    R = L * total
    for n, x in v.prefix.items():
        if not Y.fixed(n):
            R += a.entry(n) * (x - L)
    return R, mass, total


def quotient_norm_details(Y: VanishingSubspace, v: CSeq) -> QuotientNorm:
    if not member(Y.ambient, v):
        raise HypothesisError("v is not in W_f")
    B = max([abs(v.limit)] + [abs(x) for n, x in v.prefix.items() if Y.fixed(n)])
    R, mass, _ = _free_sums(Y, v)
    if mass == 0:
        if R != 0:
            raise HypothesisError("no free coordinate can carry the membership equation")
        D = ZERO
    else:
        D = abs(R) / mass
    return QuotientNorm(max(B, D), B, D, R, mass)


def quotient_norm(Y: VanishingSubspace, v: CSeq) -> Fraction:
    """inf_{y in Y} ||v - y||_inf."""
    return quotient_norm_details(Y, v).value


def quotient_norm_lp(Y: VanishingSubspace, v: CSeq, depth: int) -> Fraction:
    """The same infimum as an exact LP in the free coordinates n <= depth.

    Free coordinates beyond ``depth`` enter through one variable tau with
    |tau| <= t * (their weight mass), which is exactly the range of their
    contribution under |z(n)| <= t.
    """
    if not member(Y.ambient, v):
        raise HypothesisError("v is not in W_f")
    a = Y.weights
    free = [n for n in range(1, depth + 1) if not Y.fixed(n)]
    coeffs = [a.entry(n) for n in free]
    head_mass = sum((abs(c) for c in coeffs), ZERO)
    target, mass, _ = _free_sums(Y, v)
    rest_mass = mass - head_mass
    fixed_bound = max([abs(v.limit)] + [abs(x) for n, x in v.prefix.items() if Y.fixed(n)])

    # variables: t, then (p_n, q_n) per free n, then (p_tau, q_tau); z_n = p_n - q_n
    k = len(free)
    size = 1 + 2 * k + 2
    c = [Fraction(1)] + [ZERO] * (size - 1)
    eq_row = [ZERO] * size
    for j, w in enumerate(coeffs):
        eq_row[1 + 2 * j] = w
        eq_row[2 + 2 * j] = -w
    eq_row[-2], eq_row[-1] = Fraction(1), Fraction(-1)
    A_ub, b_ub = [], []
    for j in range(k):
        row = [ZERO] * size
        row[0] = Fraction(-1)
        row[1 + 2 * j] = row[2 + 2 * j] = Fraction(1)
        A_ub.append(row)
        b_ub.append(ZERO)
    row = [ZERO] * size
    row[0] = -rest_mass
    row[-2] = row[-1] = Fraction(1)
    A_ub.append(row)
    b_ub.append(ZERO)
    row = [ZERO] * size
    row[0] = Fraction(-1)
    A_ub.append(row)
    b_ub.append(-fixed_bound)
    res = lp.minimize(c, [eq_row], [target], A_ub, b_ub)
    if res.status != "optimal":
        raise HypothesisError(f"quotient LP is {res.status}")
    return res.value


def quotient_witness(Y: VanishingSubspace, v: CSeq, margin) -> CSeq:
    """y in Y with ||v - y|| <= ||v + Y|| + margin.

    v - y is v on S, c * sgn a(n) on the free n <= N, and lim v beyond N,
    with N grown until |c| fits.
    """
    margin = Fraction(margin)
    if margin <= 0:
        raise ValueError("margin must be positive")
    q = quotient_norm_details(Y, v)
    bound = q.value + margin
    a = Y.weights
    L = v.limit
    _, _, free_total = _free_sums(Y, v)
    top = max(v.horizon(), Y.start, 1)
    while True:
        free = [n for n in range(1, top + 1) if not Y.fixed(n) and a.entry(n) != 0]
        head_mass = sum((abs(a.entry(n)) for n in free), ZERO)
        head_total = sum((a.entry(n) for n in free), ZERO)
        need = q.R - L * (free_total - head_total)
        if head_mass:
            c = need / head_mass
            if abs(c) <= bound:
                break
        elif need == 0:
            c = ZERO
            break
        top *= 2
        if top > 1 << 20:
            raise RepresentabilityError("no representable witness within the margin")
    z = {}
    for n in range(1, max(top, v.horizon()) + 1):
        if Y.fixed(n):
            z[n] = v.entry(n)
        elif n in free:
            z[n] = c if a.entry(n) > 0 else -c
        else:
            z[n] = L
    y = v - CSeq(z, L)
    if not Y.contains(y):
        raise RepresentabilityError("witness construction left Y")
    return y


# -- the isometry onto c --------------------------------------------------
def example31_space() -> VanishingSubspace:
    """W_f for (-1/2, 1/4, 0, -1/8, ...) with Y vanishing on the even coordinates."""
    return VanishingSubspace(WfSpace(example31()), 2, 2)


def example31_isometry(x: CSeq) -> CSeq:
    """(7/3 x(0), x(1), x(0), x(2), x(0), ...) with x(0) = lim x."""
    x0 = x.limit
    prefix = {1: Fraction(7, 3) * x0}
    for k, val in x.prefix.items():
        prefix[2 * k] = val
    return CSeq(prefix, x0)


def example31_check(x: CSeq, Y: Optional[VanishingSubspace] = None) -> dict:
    Y = Y or example31_space()
    rep = example31_isometry(x)
    return {
        "member": member(Y.ambient, rep),
        "isometric": quotient_norm(Y, rep) == x.sup_norm(),
    }


def separation_certificate(samples: int = 64, seed=None) -> dict:
    """A quotient of this W_f is isometric to c while W_f contains no copy of c."""
    Y = example31_space()
    r = sampling.rng(seed)
    checks = [example31_check(sampling.cseq(r), Y) for _ in range(samples)]
    quotient_is_c = all(c["member"] and c["isometric"] for c in checks)
    contains_c = classify(Y.ambient).contains_c
    return {
        "quotient_isometric_to_c": quotient_is_c,
        "contains_c": contains_c,
        "samples": samples,
        "separated": quotient_is_c and contains_c is False,
    }


# -- projection ---------------------------------------------------------------
@dataclass
class ProjectionData:
    """P(x) = xbar(x) e0 + sum_j (xnj[j] - xbar)(x) e_{n_j - 1}.

    ``xnj`` lists the functionals for j = 1..J; for j > J they equal xbar,
    so the sum stops at J.  ``ambient`` is None for c itself (pairing
    sum f(n+1) x(n) + f(1) lim x) or a WfSpace (coordinate pairing).
    """

    nj: IndexSeq
    xbar: L1Seq
    xnj: list
    ambient: Optional[WfSpace] = None

    def __post_init__(self):
        self.xnj = list(self.xnj)
        if self.nj[1] <= 1:
            raise HypothesisError("n_1 must exceed 1")
        if self.nj.is_finite and len(self.nj) < len(self.xnj):
            raise RepresentabilityError("fewer indices n_j than functionals")

    def pair(self, g: L1Seq, x: CSeq) -> Fraction:
        if self.ambient is None:
            return pair_c(g, x)
        return dual_action(self.ambient, g, x)

    def invariant_failures(self) -> list:
        out = []
        if self.xbar.l1_norm() > 1:
            out.append("||xbar|| > 1")
        for j, g in enumerate(self.xnj, 1):
            if g.l1_norm() != 1:
                out.append(f"||xnj[{j}]|| = {g.l1_norm()}")
        return out


def projection(P: ProjectionData, x: CSeq) -> CSeq:
    lim = P.pair(P.xbar, x)
    prefix = {P.nj[j] - 1: P.pair(g, x) for j, g in enumerate(P.xnj, 1)}
    return CSeq(prefix, lim)


def range_element(P: ProjectionData, values: Sequence, limit) -> CSeq:
    """y with y(n_j - 1) = values[j-1] and y = limit elsewhere."""
    return CSeq({P.nj[j] - 1: v for j, v in enumerate(values, 1)}, limit)


@dataclass
class ProjectionReport:
    idempotent: bool
    norm_nonincreasing: bool
    identity_on_range: bool
    invariant_failures: list = field(default_factory=list)
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.idempotent and self.norm_nonincreasing and self.identity_on_range and not self.invariant_failures

    def to_json(self) -> dict:
        return {
            "idempotent": self.idempotent,
            "norm_nonincreasing": self.norm_nonincreasing,
            "identity_on_range": self.identity_on_range,
            "invariant_failures": self.invariant_failures,
            "violations": self.violations,
            "ok": self.ok,
        }


def projection_checks(P: ProjectionData, samples: Sequence[CSeq], range_samples: Sequence[CSeq] = ()) -> ProjectionReport:
    idem = norm = ident = True
    violations = []
    for i, x in enumerate(samples):
        px = projection(P, x)
        if projection(P, px) != px:
            idem = False
            violations.append({"sample": i, "check": "idempotent"})
        if px.sup_norm() > x.sup_norm():
            norm = False
            violations.append({"sample": i, "check": "norm"})
        # P(x) lies in the range, so P must fix it
        if projection(P, px) != px:
            ident = False
    for i, y in enumerate(range_samples):
        if projection(P, y) != y:
            ident = False
            violations.append({"sample": i, "check": "range identity"})
    return ProjectionReport(idem, norm, ident, P.invariant_failures(), violations)


def c_ambient_fixture(J: int = 8) -> ProjectionData:
    """xbar = the limit functional, xnj[j] reads coordinate n_j - 1 = 2j."""
    nj = IndexSeq.progression(3, 2)
    return ProjectionData(nj, L1Seq.unit(1), [L1Seq.unit(nj[j]) for j in range(1, J + 1)])
