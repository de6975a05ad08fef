"""From a failing weak-star FPP witness to a bad hyperplane, on finite data.

The pipeline takes a finite family of norm-one functionals (x*_n), cuts
them into disjointly supported blocks, grinds the blocks to a common
positive/negative mass (s+, s-), builds norming vectors x_m in W_f,
extracts coordinates where every x_m is nearly 1, and checks that the
weak-star limit e* of those coordinates has norm one.  The converse
direction turns such an e* into a bad W_f.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import sampling
from .errors import CaseMismatchError, ExhaustionError, HypothesisError, VerificationError
from .hyperplane import BoundaryAdvisory, WfSpace, classify, norming_vector, wstar_limit_functional
from .seqcore import CSeq, IndexSeq, L1Seq, c_to_json, coordinate_pairing, l1_to_json, q_to_json

ONE = Fraction(1)


@dataclass(frozen=True)
class FunctionalFamily:
    members: tuple
    limit_hint: Optional[L1Seq] = None

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))

    def __len__(self):
        return len(self.members)

    def member(self, n: int) -> L1Seq:
        """1-based access, x*_n."""
        return self.members[n - 1]

    def all_with_hint(self):
        out = [(n, x) for n, x in enumerate(self.members, 1)]
        if self.limit_hint is not None:
            out.insert(0, (0, self.limit_hint))
        return out


def unit_family(count: int, start: int = 2) -> FunctionalFamily:
    """(e*_n) for n = start, ..., start + count - 1."""
    return FunctionalFamily(tuple(L1Seq.unit(n) for n in range(start, start + count)))


def mixed_family(count: int) -> FunctionalFamily:
    """((3/4) e*_{2n} - (1/4) e*_{2n+1}) for n = 1..count."""
    return FunctionalFamily(
        tuple(L1Seq({2 * n: Fraction(3, 4), 2 * n + 1: Fraction(-1, 4)}) for n in range(1, count + 1))
    )


FAMILIES = {"unit": unit_family, "mixed": mixed_family}


# -- Step 1 ---------------------------------------------------------------
@dataclass
class FamilyReport:
    norm_failures: list
    sum_failures: list
    sign_failures: list
    early_mass: list
    distance_profiles: dict

    @property
    def ok(self) -> bool:
        return not (self.norm_failures or self.sum_failures or self.sign_failures)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "norm_failures": self.norm_failures,
            "sum_failures": [list(p) for p in self.sum_failures],
            "sign_failures": [list(p) for p in self.sign_failures],
            "early_mass": [q_to_json(v) for v in self.early_mass],
            "distance_profiles": {
                k: [q_to_json(v) for v in vs] for k, vs in self.distance_profiles.items()
            },
            "distance_check": "partial: finite-n profiles only",
        }


def validate_family(fam: FunctionalFamily, profile_sources: int = 2) -> FamilyReport:
    """Norms one, ||x_n + x_m|| = 2, coordinatewise sign agreement.

    Sign agreement is decided exactly through ||x + y|| = ||x|| + ||y||,
    which in l1 holds iff x(i) y(i) >= 0 for every i.
    """
    items = fam.all_with_hint()
    norms = {n: x.l1_norm() for n, x in items}
    norm_failures = [n for n, v in norms.items() if v != 1]
    sum_failures, sign_failures = [], []
    for a in range(len(items)):
        for b in range(a + 1, len(items)):
            (n, x), (m, y) = items[a], items[b]
            s = (x + y).l1_norm()
            if s != 2:
                sum_failures.append((n, m))
            if s != norms[n] + norms[m]:
                sign_failures.append((n, m))

    # late members should carry little mass on the first member's coordinates
    early_mass = []
    if fam.members:
        h = max(fam.members[0].horizon(), 1)
        early_mass = [x.restrict_range(1, h).l1_norm() for x in fam.members]

    profiles = {}
    for j in range(1, min(profile_sources, len(fam)) + 1):
        u = fam.member(j)
        profiles[f"x{j}"] = [(u - fam.member(n)).l1_norm() for n in range(j + 1, len(fam) + 1)]
    if len(fam) >= 2:
        u = (fam.member(1) + fam.member(2)) / 2
        profiles["mid12"] = [(u - fam.member(n)).l1_norm() for n in range(3, len(fam) + 1)]
    return FamilyReport(norm_failures, sum_failures, sign_failures, early_mass, profiles)


# -- block selection --------------------------------------------------------
@dataclass(frozen=True)
class Block:
    k: int
    member: int  # n_k, 1-based
    lo: int
    hi: int
    mass: Fraction

    def to_json(self) -> dict:
        return {"k": self.k, "member": self.member, "range": [self.lo, self.hi], "mass": q_to_json(self.mass)}


def _block_end(x: L1Seq, lo: int, threshold: Fraction) -> Optional[int]:
    """End of the block of x starting at lo, or None if the mass beyond lo is too small.

    A finitely supported x keeps its whole remaining support; otherwise
    the least hi with sum_{lo <= i <= hi} |x(i)| > threshold.
    """
    available = x.l1_norm() - x.restrict_range(1, lo - 1).l1_norm() if lo > 1 else x.l1_norm()
    if not available > threshold:
        return None
    if x.is_finite:
        # keep the whole remaining support so no sign class is cut away
        return max(i for i in x.support() if i >= lo)
    acc = Fraction(0)
    hi = lo - 1
    step = max(x.horizon() - lo + 1, 8)
    while True:
        chunk = [(i, v) for i, v in x.entries(hi + step) if i > hi]
        for i, v in chunk:
            acc += abs(v)
            if acc > threshold:
                return i
        hi += step


def select_blocks(fam: FunctionalFamily, count: Optional[int] = None) -> list[Block]:
    """Greedy (n_k, m_k) with sum_{m_{k-1} < i <= m_k} |x_{n_k}(i)| > 1 - 2^-k.

    Members are scanned in order and the first admissible one is taken.  Without ``count`` selection runs until the
    members are used up.
    """
    blocks: list[Block] = []
    prev_end, next_member = 0, 1
    while next_member <= len(fam) and (count is None or len(blocks) < count):
        k = len(blocks) + 1
        threshold = 1 - Fraction(1, 2**k)
        for n in range(next_member, len(fam) + 1):
            hi = _block_end(fam.member(n), prev_end + 1, threshold)
            if hi is not None:
                x = fam.member(n)
                blocks.append(Block(k, n, prev_end + 1, hi, x.restrict_range(prev_end + 1, hi).l1_norm()))
                prev_end, next_member = hi, n + 1
                break
        else:
            raise ExhaustionError(
                f"no member from {next_member} on has mass > {threshold} beyond coordinate {prev_end}"
            )
    if count is not None and len(blocks) < count:
        raise ExhaustionError(f"only {len(blocks)} of {count} blocks available")
    if not blocks:
        raise ExhaustionError("empty family")
    return blocks


# -- grinding ---------------------------------------------------------------
def _mass(x: L1Seq):
    pos = x.positive_part()
    neg = x.negative_part()
    return pos, neg, pos.total(), neg.total()


@dataclass
class GrindResult:
    blocks: list
    y: list
    s_plus: Fraction
    s_minus: Fraction
    case: str
    y0: Optional[L1Seq] = None

    def check_invariants(self) -> dict:
        norms = all(v.l1_norm() == 1 for v in self.y)
        finite = all(v.is_finite and not v.is_zero() for v in self.y)
        ordered = finite and all(
            max(a.support()) < min(b.support()) for a, b in zip(self.y, self.y[1:])
        )
        items = list(self.y) + ([self.y0] if self.y0 is not None else [])
        signs = all(
            (a + b).l1_norm() == a.l1_norm() + b.l1_norm()
            for i, a in enumerate(items)
            for b in items[i + 1:]
        )
        masses = finite and all(
            _mass(v)[2] == self.s_plus and _mass(v)[3] == self.s_minus for v in self.y
        )
        return {
            "norm_one": norms,
            "finite_increasing_supports": ordered,
            "sign_agreement": signs,
            "common_masses": masses,
            "mass_gap_one": self.s_plus - self.s_minus == 1,
        }

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "s_plus": q_to_json(self.s_plus),
            "s_minus": q_to_json(self.s_minus),
            "blocks": [b.to_json() for b in self.blocks],
            "y": [l1_to_json(v) for v in self.y],
            "invariants": self.check_invariants(),
        }


def grind(fam: FunctionalFamily, targets: Optional[Sequence] = None, blocks=None) -> GrindResult:
    """Rescale block pieces so every y*_k has the same s+ and s-.

    Default targets are (s+, s-) of the last normalized block piece.
    """
    if blocks is None:
        blocks = select_blocks(fam)
    hats = []
    for b in blocks:
        piece = fam.member(b.member).restrict_range(b.lo, b.hi)
        hats.append(piece / piece.l1_norm())
    parts = [_mass(h) for h in hats]
    if targets is None:
        s0p, s0m = parts[-1][2], parts[-1][3]
    else:
        s0p, s0m = (Fraction(v) for v in targets)
    if not (0 <= s0p <= 1 and -1 <= s0m <= 0 and s0p - s0m == 1):
        raise HypothesisError(f"targets must satisfy s+ in [0,1], s- in [-1,0], s+ - s- = 1; got ({s0p}, {s0m})")

    y = []
    for b, (pos, neg, sp, sm) in zip(blocks, parts):
        if s0p > 0 and s0m < 0:
            case = "mixed"
            if sp == 0 or sm == 0:
                raise CaseMismatchError(f"block {b.k} has s+ = {sp}, s- = {sm}; both targets are nonzero")
            y.append(pos.scale(s0p / sp) + neg.scale(s0m / sm))
        elif s0m == 0:
            case = "positive"
            if sp == 0:
                raise CaseMismatchError(f"block {b.k} has no positive part while s+ = 1 is targeted")
            y.append(pos / sp)
        else:
            case = "negative"
            if sm == 0:
                raise CaseMismatchError(f"block {b.k} has no negative part while s- = -1 is targeted")
            y.append(neg.scale(-s0m / sm))

    y0 = fam.limit_hint
    if case == "negative":
        s_plus, s_minus = ONE, Fraction(0)
        if y0 is not None:
            y0 = -y0
    else:
        s_plus, s_minus = s0p, s0m
    return GrindResult(list(blocks), y, s_plus, s_minus, case, y0)


# -- norming vectors --------------------------------------------------------
@dataclass
class NormingResult:
    xs: list
    thresholds: list
    retained: list  # k indices kept at every stage
    values: list  # values[m-1][j] = y*_{retained[j]}(x_m)

    def to_json(self) -> dict:
        return {
            "x": [c_to_json(x) for x in self.xs],
            "thresholds": [q_to_json(t) for t in self.thresholds],
            "retained": self.retained,
            "values": [[q_to_json(v) for v in row] for row in self.values],
        }


def greedy_norming(W: WfSpace, g: GrindResult, depth: int) -> NormingResult:
    """x_m in the unit ball of W_f with y*_k(x_m) > 1 - s+/8^m for every block.

    Disjoint supports let one sign pattern norm all blocks at once.  The
    limit of every x_m is pinned to 1.
    """
    xs, thresholds, values = [], [], []
    total = L1Seq()
    for v in g.y:
        total = total + v
    retained = list(range(1, len(g.y) + 1))
    for m in range(1, depth + 1):
        eps = g.s_plus / Fraction(8**m)
        x = norming_vector(W, total, eps, limit=1)
        row = [coordinate_pairing(v, x) for v in g.y]
        bound = 1 - eps
        bad = [k for k, val in zip(retained, row) if not val > bound]
        if bad:
            raise VerificationError(f"x_{m} fails y*_k(x_m) > {bound} for k in {bad}")
        xs.append(x)
        thresholds.append(bound)
        values.append(row)
    return NormingResult(xs, thresholds, retained, values)


# -- support sets -----------------------------------------------------------
@dataclass
class SupportSets:
    depth: int
    E: dict  # E[m][n]
    F: dict
    G: dict  # G[n], intersection up to depth
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def basis_indices(self) -> list[int]:
        return sorted(i for s in self.G.values() for i in s)

    def to_json(self) -> dict:
        def sets(d):
            return {str(n): sorted(s) for n, s in d.items()}

        return {
            "depth": self.depth,
            "G_note": f"G up to depth {self.depth}",
            "E": {str(m): sets(row) for m, row in self.E.items()},
            "F": {str(m): sets(row) for m, row in self.F.items()},
            "G": sets(self.G),
            "basis_indices": self.basis_indices(),
            "failures": self.failures,
            "ok": self.ok,
        }


def support_sets(g: GrindResult, xs: Sequence[CSeq], M: int = 16) -> SupportSets:
    """E_m^(n) = {i in supp+ z_n : x_m(i) > 1 - 2^-m}, F = running intersections."""
    depth = min(M, len(xs))
    s = g.s_plus
    E, F, G, failures = {}, {}, {}, []
    for n, z in enumerate(g.y, 1):
        pos = {i: v for i, v in z.finite.items() if v > 0}
        running = set(pos)
        for m in range(1, depth + 1):
            cut = 1 - Fraction(1, 2**m)
            e = {i for i in pos if xs[m - 1].entry(i) > cut}
            running &= e
            E.setdefault(m, {})[n] = e
            F.setdefault(m, {})[n] = set(running)
            inside = sum((pos[i] for i in e), Fraction(0))
            outside = sum((v for i, v in pos.items() if i not in e), Fraction(0))
            q = Fraction(1, 4**m)
            if not inside >= (1 - q) * s:
                failures.append({"m": m, "n": n, "check": "mass inside E", "value": q_to_json(inside)})
            if not outside <= q * s:
                failures.append({"m": m, "n": n, "check": "mass outside E", "value": q_to_json(outside)})
            if not running:
                failures.append({"m": m, "n": n, "check": "F nonempty"})
            # an empty F_m would need sum_{j<=m} 4^-j s+ >= s+
            if not sum((Fraction(1, 4**j) for j in range(1, m + 1)), Fraction(0)) * s < s / 2:
                failures.append({"m": m, "n": n, "check": "geometric bound"})
        G[n] = running
        if not running:
            failures.append({"m": depth, "n": n, "check": "G nonempty"})
    return SupportSets(depth, E, F, G, failures)


# -- final step -------------------------------------------------------------
def _limit_functional(W: WfSpace) -> L1Seq:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", BoundaryAdvisory)
        return wstar_limit_functional(W)


def final_step_check(W: WfSpace, basis_indices: Sequence[int], xs: Sequence[CSeq], eps=None):
    """Condition-(4) certificate: ||e*|| = 1 and e*(n_k) >= 0.

    Also checks x_m(n_k) > 1 - eps_m and e*(x_m) >= 1 - eps_m with
    eps_m = 2^-m unless given.
    """
    e_star = _limit_functional(W)
    if eps is None:
        eps = [Fraction(1, 2**m) for m in range(1, len(xs) + 1)]
    failures = []
    for m, (x, e) in enumerate(zip(xs, eps), 1):
        for n in basis_indices:
            if not x.entry(n) > 1 - e:
                failures.append({"m": m, "n": n, "check": "coordinate"})
        if not coordinate_pairing(e_star, x) >= 1 - e:
            failures.append({"m": m, "check": "limit functional"})
    negative = [n for n in basis_indices if e_star.entry(n) < 0]
    norm = e_star.l1_norm()
    cert = {
        "e_star": l1_to_json(e_star),
        "e_star_norm": q_to_json(norm),
        "norm_one": norm == 1,
        "nonnegative_at_basis": not negative,
        "basis_indices": list(basis_indices),
        "epsilons": [q_to_json(e) for e in eps],
        "failures": failures,
        "regime": "bad" if norm == 1 else "not bad: ||e*|| != 1",
    }
    cert["condition_4"] = norm == 1 and not negative and not failures
    return e_star, cert


def run_pipeline(fam: FunctionalFamily, W: Optional[WfSpace] = None, targets=None,
                 depth: int = 16, norming_depth: Optional[int] = None) -> dict:
    """Every stage in order, as a JSON-ready certificate chain."""
    if W is None:
        W = WfSpace(L1Seq({1: Fraction(1, 2), 2: Fraction(1, 2)}))
    report = validate_family(fam)
    if not report.ok:
        raise HypothesisError(f"family fails validation: {report.to_json()}")
    blocks = select_blocks(fam)
    g = grind(fam, targets, blocks)
    norming = greedy_norming(W, g, depth if norming_depth is None else norming_depth)
    sets = support_sets(g, norming.xs, depth)
    e_star, cert = final_step_check(W, sets.basis_indices(), norming.xs)
    return {
        "family": report.to_json(),
        "blocks": [b.to_json() for b in blocks],
        "grind": g.to_json(),
        "norming": norming.to_json(),
        "support_sets": sets.to_json(),
        "final": cert,
    }


# -- the converse construction ---------------------------------------------
def _basis_sum(e_star: L1Seq, subseq: IndexSeq) -> tuple[L1Seq, Fraction]:
    g = subseq.gather(e_star)
    if not g.is_nonnegative():
        raise HypothesisError("e* is negative at a selected index")
    return g, g.total() - g.entry(1)


def bad_wf_from_basis_limit(e_star: L1Seq, subseq: IndexSeq) -> WfSpace:
    """f = (-1/2, (1 - s)/2, e*(n_2)/2, e*(n_3)/2, ...), s = sum_{k>=2} e*(n_k)."""
    if e_star.l1_norm() != 1:
        raise HypothesisError(f"e* must have norm one, got {e_star.l1_norm()}")
    g, s = _basis_sum(e_star, subseq)
    f = L1Seq({1: Fraction(-1, 2), 2: (1 - s) / 2}) + g.shift_left(1).scale(Fraction(1, 2)).shift_right(2)
    W = WfSpace(f)
    cls = classify(W)
    if s > 0 and not cls.is_bad:
        raise VerificationError("constructed W_f is not bad")
    if s == 0 and not cls.iso_c:
        raise VerificationError("constructed W_f is not isometric to c")
    return W


@dataclass
class PhiReport:
    u_star: L1Seq
    x1: L1Seq
    image: L1Seq
    limit_match: bool
    isometric_samples: int

    def to_json(self) -> dict:
        return {
            "u_star": l1_to_json(self.u_star),
            "x1": l1_to_json(self.x1),
            "phi_e_star": l1_to_json(self.image),
            "matches_limit_functional": self.limit_match,
            "isometric_samples": self.isometric_samples,
        }


def phi_basis_map_check(e_star: L1Seq, subseq: IndexSeq, u_star: Optional[L1Seq] = None,
                        samples: int = 32, seed=None) -> PhiReport:
    """x*_1 = u*/||u*||, x*_k = e*_{n_k}; phi sends x*_k to the k-th unit vector.

    phi(e*) must equal (1 - s, e*(n_2), e*(n_3), ...), the weak-star limit
    functional of the bad W_f built from e*.
    """
    g, s = _basis_sum(e_star, subseq)
    tail_part = subseq.scatter(g.shift_left(1).shift_right(1))
    computed = e_star - tail_part
    if u_star is not None and u_star != computed:
        raise VerificationError("given u* differs from e* - sum_{k>=2} e*(n_k) e*_{n_k}")
    if computed.is_zero():
        raise HypothesisError("u* = 0; choose a different subsequence")
    u_norm = computed.l1_norm()
    x1 = computed / u_norm
    image = L1Seq({1: u_norm}) + g.shift_left(1).shift_right(1)
    expected = L1Seq({1: 1 - s}) + g.shift_left(1).shift_right(1)
    if image != expected:
        raise VerificationError(f"phi(e*) = {image!r}, expected {expected!r}")
    W = bad_wf_from_basis_limit(e_star, subseq)
    limit_match = _limit_functional(W) == image

    r = sampling.rng(seed)
    size = None if not subseq.is_finite else len(subseq)
    for _ in range(samples):
        vec = sampling.signed_vector(r, 6 if size is None else min(6, size))
        combo = x1.scale(vec[0])
        for k, a in enumerate(vec[1:], 2):
            combo = combo + L1Seq.unit(subseq[k]).scale(a)
        if combo.l1_norm() != sum(abs(a) for a in vec):
            raise VerificationError(f"basis is not isometrically l1 on a = {vec}")
    return PhiReport(computed, x1, image, limit_match, samples)
