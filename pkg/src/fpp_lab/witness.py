"""Fixed-point-free maps on weak-star compact convex sets of l1.

Points of the set C are coefficient sequences lambda (lambda_k >= 0,
sum = 1) over a generator dictionary (w~, x*_{n_1}, x*_{n_2}, ...).  The
shift T moves every coefficient one generator to the right and is an
isometry without fixed points; S = sum_j T^j / 2^(j+1) is a contraction
without fixed points.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import sampling
from .errors import HypothesisError, RepresentabilityError, VerificationError
from .hyperplane import BoundaryAdvisory, WfSpace, classify, n_plus, wstar_limit_functional
from .seqcore import IndexSeq, L1Seq, Tail
from .seqcore import _poly as P

HALF = Fraction(1, 2)


class SimplexPoint:
    """lambda = (lambda_1, lambda_2, ...) with lambda_k >= 0 and sum 1."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: L1Seq):
        if coeffs.total() != 1:
            raise HypothesisError(f"simplex coefficients must sum to 1, got {coeffs.total()}")
        if not coeffs.is_nonnegative():
            raise HypothesisError("simplex coefficients must be nonnegative")
        self.coeffs = coeffs

    @classmethod
    def vertex(cls, k: int) -> "SimplexPoint":
        return cls(L1Seq.unit(k))

    @classmethod
    def from_weights(cls, weights: Sequence) -> "SimplexPoint":
        return cls(L1Seq({i + 1: w for i, w in enumerate(weights)}))

    def __eq__(self, other):
        if not isinstance(other, SimplexPoint):
            return NotImplemented
        return self.coeffs == other.coeffs

    __hash__ = None

    def __repr__(self):
        return f"SimplexPoint({self.coeffs!r})"


@dataclass
class GeneratorDict:
    """w~ followed by basis functionals.

    Either ``nodes`` is set (basis[j] = e*_{n_j}, a closed-form family that
    accepts coefficient tails) or ``basis`` lists finitely many functionals.
    """

    w_tilde: L1Seq
    nodes: Optional[IndexSeq] = None
    basis: Optional[tuple] = None
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        if (self.nodes is None) == (self.basis is None):
            raise ValueError("give exactly one of nodes or basis")
        if self.w_tilde.l1_norm() != 1:
            raise HypothesisError("w~ must have norm one")
        if self.basis is not None:
            self.basis = tuple(self.basis)
            for j, b in enumerate(self.basis, 1):
                if b.l1_norm() != 1:
                    raise HypothesisError(f"basis functional {j} must have norm one")

    @property
    def size(self) -> Optional[int]:
        """Number of basis functionals, None when infinite."""
        if self.basis is not None:
            return len(self.basis)
        return len(self.nodes) if self.nodes.is_finite else None

    def generator(self, j: int) -> L1Seq:
        """j = 0 is w~, j >= 1 the j-th basis functional."""
        if j == 0:
            return self.w_tilde
        if self.basis is not None:
            return self.basis[j - 1]
        return L1Seq.unit(self.nodes[j])

    def combination(self, alpha: L1Seq) -> L1Seq:
        """alpha_1 w~ + sum_j alpha_{j+1} basis[j], for any real coefficients."""
        rest = alpha.shift_left(1)
        if self.nodes is not None:
            try:
                part = self.nodes.scatter(rest)
            except ValueError as exc:
                raise RepresentabilityError(str(exc)) from None
        else:
            if not rest.is_finite or rest.horizon() > len(self.basis):
                raise RepresentabilityError("coefficients beyond the explicit basis")
            part = L1Seq()
            for j, v in rest.finite.items():
                part = part + self.basis[j - 1].scale(v)
        return self.w_tilde.scale(alpha.entry(1)) + part

    def certify(self, samples: int = 64, seed=None) -> Fraction:
        """Check ||alpha_1 w~ + sum alpha_{j+1} basis[j]|| >= sum |alpha_j|.

        Returns the smallest margin seen; raises on a violation.
        """
        r = sampling.rng(seed)
        limit = self.size
        worst = None
        for _ in range(samples):
            vec = sampling.signed_vector(r, 6 if limit is None else min(6, limit + 1))
            alpha = L1Seq({i + 1: v for i, v in enumerate(vec)})
            margin = self.combination(alpha).l1_norm() - alpha.l1_norm()
            if margin < 0:
                raise VerificationError(f"lower l1 estimate fails for alpha = {vec}")
            worst = margin if worst is None else min(worst, margin)
        return worst


def _limit_functional(W: WfSpace) -> L1Seq:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", BoundaryAdvisory)
        return wstar_limit_functional(W)


def _check_inside(subseq: IndexSeq, allowed) -> None:
    if subseq.is_finite:
        bad = [n for n in subseq.head if n not in allowed]
    else:
        span = subseq.prog_step * allowed.period
        top = max(subseq.prog_start, allowed.start) + span
        bad = [n for n in subseq.head if n not in allowed]
        bad += [n for n in range(subseq.prog_start, top + 1, subseq.prog_step) if n not in allowed]
    if bad:
        raise HypothesisError(f"subsequence leaves N+ at {bad[:5]}")


def build_witness(W: WfSpace, subseq: Optional[IndexSeq] = None, cutoff: int = 32,
                  samples: int = 64, seed=None) -> GeneratorDict:
    """The dictionary (w~, e*_{n_1}, e*_{n_2}, ...) for a bad W_f.

    w~ = w_0/||w_0|| with w_0 = e* - sum_j e*(n_j) e*_{n_j}.  Without an
    explicit subsequence all of N+ is used when it is a progression and
    leaves w_0 != 0; otherwise the first ``cutoff`` elements of N+, dropped
    from the end until w_0 != 0.
    """
    if not classify(W).is_bad:
        raise HypothesisError("W_f is not bad: need |f(1)| = 1/2 and N+ infinite")
    e_star = _limit_functional(W)
    allowed = n_plus(W)
    if subseq is None:
        whole = allowed.as_index_seq()
        if whole is not None and e_star != whole.restrict(e_star):
            subseq = whole
    if subseq is None:
        chosen = allowed.take(cutoff)
        while chosen:
            candidate = IndexSeq.finite(chosen)
            if e_star != candidate.restrict(e_star):
                subseq = candidate
                break
            chosen.pop()
        if subseq is None:
            raise HypothesisError("no prefix of N+ leaves w0 = e* - u0 nonzero")
    _check_inside(subseq, allowed)
    u0 = subseq.restrict(e_star)
    w0 = e_star - u0
    if w0.is_zero():
        raise HypothesisError("w0 = e* - u0 vanishes; choose a different subsequence")
    d = GeneratorDict(
        w_tilde=w0 / w0.l1_norm(),
        nodes=subseq,
        provenance={"e_star": e_star, "u0": u0, "w0": w0, "subseq": subseq},
    )
    d.certify(samples, seed)
    return d


def realize(d: GeneratorDict, p: SimplexPoint) -> L1Seq:
    """lambda_1 w~ + sum_j lambda_{j+1} basis[j] as an exact element of l1."""
    return d.combination(p.coeffs)


def shift_map(p: SimplexPoint) -> SimplexPoint:
    """(lambda_1, lambda_2, ...) -> (0, lambda_1, lambda_2, ...)."""
    return SimplexPoint(p.coeffs.shift_right(1))


def _convolve_tail(t: Tail) -> list[Tail]:
    """Tails of k -> sum_{i <= k} 2^-(k-i+1) a_i for the part of a on t."""
    d = t.step
    sigma = Fraction(1, 2**d)
    out = []
    for e in range(d):
        terms = []
        for rho, poly in t.terms:
            if rho == sigma:
                r = P.antidifference(poly)
                terms.append((sigma, P.compose_affine(r, 1, 1)))
            else:
                u = rho / sigma
                q = P.solve_twisted_difference(poly, u)
                terms.append((rho, P.scale(P.compose_affine(q, 1, 1), u)))
                terms.append((sigma, P.scale(q[:1], -1)))
        out.append(Tail(t.start + e, d, tuple(terms)).scale(Fraction(1, 2 ** (e + 1))))
    return out


def geometric_convolution(a: L1Seq) -> L1Seq:
    """S(a)_k = sum_{j=0}^{k-1} 2^-(j+1) a_{k-j}, in closed form."""
    tails = [Tail.geometric(i, 1, v / 2, HALF) for i, v in a.finite.items()]
    for t in a.tails:
        tails.extend(_convolve_tail(t))
    return L1Seq._raw({}, tails)


def contraction_map(p: SimplexPoint) -> SimplexPoint:
    """S = sum_{j>=0} T^j / 2^(j+1)."""
    return SimplexPoint(geometric_convolution(p.coeffs))


MAPS = {"shift": shift_map, "contraction": contraction_map}


@dataclass
class NonexpansiveReport:
    margins: list
    generator_norms_ok: bool

    @property
    def min_margin(self):
        return min(self.margins, default=None)

    @property
    def ok(self) -> bool:
        return self.generator_norms_ok and all(m >= 0 for m in self.margins)


def _used_generators_norm_one(d: GeneratorDict, points) -> bool:
    if d.w_tilde.l1_norm() != 1:
        return False
    if d.nodes is not None:
        return True  # coordinate functionals
    for p in points:
        c = p.coeffs.shift_left(1)
        if not c.is_finite:
            return False
        if any(d.basis[j - 1].l1_norm() != 1 for j in c.finite):
            return False
    return True


def verify_nonexpansive(d: GeneratorDict, pairs, map_name: str = "shift") -> NonexpansiveReport:
    """||map p - map q|| <= ||p - q|| on realized functionals, exactly."""
    fn = MAPS[map_name]
    margins = []
    for p, q in pairs:
        before = (realize(d, p) - realize(d, q)).l1_norm()
        after = (realize(d, fn(p)) - realize(d, fn(q))).l1_norm()
        margin = before - after
        if margin < 0:
            raise VerificationError(f"{map_name} expands the pair {p!r}, {q!r}: {after} > {before}")
        margins.append(margin)
    ok_norms = _used_generators_norm_one(d, [x for pair in pairs for x in pair])
    if not ok_norms:
        raise VerificationError("a generator used in the chain is not norm one")
    return NonexpansiveReport(margins, ok_norms)


def verify_contraction(d: GeneratorDict, pairs) -> NonexpansiveReport:
    """Strict inequality ||S p - S q|| < ||p - q|| whenever p != q."""
    report = verify_nonexpansive(d, pairs, "contraction")
    for (p, q), m in zip(pairs, report.margins):
        if m == 0 and p != q:
            raise VerificationError(f"contraction is not strict on {p!r}, {q!r}")
    return report


@dataclass
class FixedPointReport:
    map_name: str
    displacements: list  # one list per sample: ||map^k p - map^(k+1) p||, k = 0..iterations-1

    @property
    def fixed_point_found(self) -> bool:
        return any(ds and ds[0] == 0 for ds in self.displacements)


def fixed_point_free_check(map_name: str, samples, iterations: int, d: GeneratorDict) -> FixedPointReport:
    fn = MAPS[map_name]
    table = []
    for p in samples:
        row = []
        cur = p
        cur_f = realize(d, cur)
        for k in range(iterations):
            nxt = fn(cur)
            if k == 0 and nxt == cur:
                raise VerificationError(f"{map_name} fixes {p!r}")
            nxt_f = realize(d, nxt)
            row.append((cur_f - nxt_f).l1_norm())
            cur, cur_f = nxt, nxt_f
        table.append(row)
    return FixedPointReport(map_name, table)


@dataclass(frozen=True)
class CEpsilonSet:
    """{a_1 (1 - eps) e*_1 + sum_{i>=2} a_i e*_i : a_i >= 0, sum a_i = 1}."""

    epsilon: Fraction

    def point(self, alpha: SimplexPoint) -> L1Seq:
        c = alpha.coeffs
        return c + L1Seq.unit(1).scale(-self.epsilon * c.entry(1))

    def contains(self, g: L1Seq) -> bool:
        if not g.is_nonnegative():
            return False
        first = g.entry(1)
        return first / (1 - self.epsilon) + (g.total() - first) == 1


def f_epsilon(epsilon) -> L1Seq:
    epsilon = Fraction(epsilon)
    return L1Seq({1: 1 / (2 - epsilon), 2: -(1 - epsilon) / (2 - epsilon)})


def c_epsilon_fixture(epsilon):
    """C_eps together with the W_f whose weak-star topology makes it compact."""
    epsilon = Fraction(epsilon)
    if not 0 < epsilon < 1:
        raise HypothesisError("epsilon must lie in the open interval (0, 1)")
    W = WfSpace(f_epsilon(epsilon))
    cls = classify(W)
    e_star = wstar_limit_functional(W)
    check = {
        "has_wstar_fpp": cls.has_wstar_fpp is True,
        "limit_is_scaled_first_unit": e_star == L1Seq.unit(1).scale(1 - epsilon),
    }
    if not all(check.values()):
        raise VerificationError(f"C_eps fixture failed: {check}")
    return CEpsilonSet(epsilon), W, check


def random_pairs(r: random.Random, count: int, tail_prob: float = 0.0):
    return [
        (
            SimplexPoint(sampling.simplex_coeffs(r, tail_prob=tail_prob)),
            SimplexPoint(sampling.simplex_coeffs(r, tail_prob=tail_prob)),
        )
        for _ in range(count)
    ]
