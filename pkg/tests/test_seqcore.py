import json
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from fpp_lab.errors import RepresentabilityError
from fpp_lab.seqcore import (
    CSeq,
    IndexSeq,
    L1Seq,
    Tail,
    c_from_json,
    c_to_json,
    coordinate_pairing,
    dumps,
    geom_tail,
    l1_from_json,
    l1_norm,
    l1_to_json,
    pair_c,
    sign_set,
    sign_set_finiteness,
    sup_norm,
)
from fpp_lab.seqcore import _poly as P

from oracles import Geo, entry as brute_entry, partial, tail_bound

F22 = L1Seq({1: F(1, 2)}, [geom_tail(2, 1, F(-1, 4), F(-1, 2))])
F31 = L1Seq({1: F(-1, 2)}, [geom_tail(2, 2, F(1, 4), F(-1, 2))])
HALVES = L1Seq({1: F(1, 2), 2: F(1, 2)})


# -- fixed values -----------------------------------------------------------
def test_sup_norm_examples():
    assert sup_norm(CSeq.constant(1)) == 1
    assert sup_norm(CSeq({1: F(7, 3)}, 1)) == F(7, 3)
    assert sup_norm(CSeq()) == 0


def test_l1_norm_examples():
    assert l1_norm(F22) == 1
    assert l1_norm(HALVES) == 1
    assert l1_norm(L1Seq()) == 0
    assert l1_norm(F31) == 1


def test_entries_of_the_alternating_fixtures():
    assert F22.entry(4) == F(-1, 16)
    assert [F31.entry(i) for i in range(1, 8)] == [F(-1, 2), F(1, 4), 0, F(-1, 8), 0, F(1, 16), 0]
    assert CSeq({1: 5}, 2).entry(9) == 2
    assert CSeq({1: 5}, 2).entry(0) == 2


def test_pairing_examples():
    x = CSeq({1: 3, 4: -2}, F(5, 7))
    assert pair_c(L1Seq.unit(1), x) == F(5, 7)
    assert pair_c(F31, CSeq({1: F(7, 3)}, 1)) == 0
    assert pair_c(HALVES, CSeq({1: -1}, 1)) == 0


def test_pairing_against_truncated_sum():
    # f(x) = f(1) lim x + sum f(n+1) x(n), summed by hand far enough out
    x = CSeq({1: F(7, 3), 2: -1}, 1)
    geo = Geo(2, 2, F(1, 4), F(-1, 2))
    head = F(-1, 2) * x.limit + sum(
        (brute_entry({}, [geo], n + 1) * x.entry(n) for n in range(1, 200)), F(0)
    )
    assert abs(head - pair_c(F31, x)) <= tail_bound([geo], 200) * x.sup_norm()


def test_sign_set_examples():
    kind, _ = sign_set_finiteness(F22, "disagree_or_zero")
    assert kind == "infinite"
    assert sign_set_finiteness(HALVES, "zero")[0] == "infinite"
    pos = L1Seq({1: F(1, 2)}, [geom_tail(2, 1, F(1, 4), F(1, 2))])
    assert sign_set_finiteness(pos, "disagree_or_zero") == ("finite", frozenset())


def test_sign_set_of_alternating_tail_is_the_odd_numbers():
    s = sign_set(F22, "disagree_or_zero")
    assert s.take(5) == [1, 3, 5, 7, 9]
    assert s.as_index_seq() == IndexSeq.progression(1, 2)


def test_positive_part_needs_finite_support():
    with pytest.raises(RepresentabilityError):
        F22.positive_part()
    assert HALVES.positive_part() == HALVES


def test_cseq_is_canonical():
    assert CSeq({1: 1, 2: 3}, 1) == CSeq({2: 3}, 1)
    assert hash(CSeq({1: 1}, 1)) == hash(CSeq.constant(1))


def test_overlapping_tails_merge():
    a = L1Seq({}, [geom_tail(1, 1, 1, F(1, 2)), geom_tail(2, 2, -1, F(1, 4))])
    for i in range(1, 30):
        expected = Geo(1, 1, 1, F(1, 2)).at(i) + Geo(2, 2, -1, F(1, 4)).at(i)
        assert a.entry(i) == expected


def test_twisted_difference_and_antidifference():
    p = (F(1), F(-2), F(3))
    q = P.solve_twisted_difference(p, F(3))
    r = P.antidifference(p)
    for m in range(8):
        assert 3 * P.evaluate(q, m + 1) - P.evaluate(q, m) == P.evaluate(p, m)
        assert P.evaluate(r, m + 1) - P.evaluate(r, m) == P.evaluate(p, m)


def test_polynomial_tail_sum_matches_partial_sums():
    t = Tail(3, 1, ((F(1, 3), (F(1), F(-4), F(1))),))
    got = t.total()
    brute = sum((t.value(k) for k in range(400)), F(0))
    assert abs(got - brute) < F(1, 10**100)
    abs_brute = sum((abs(t.value(k)) for k in range(400)), F(0))
    assert abs(t.abs_total() - abs_brute) < F(1, 10**100)


# -- properties ---------------------------------------------------------------
ratios = st.fractions(min_value=F(-9, 10), max_value=F(9, 10), max_denominator=12).filter(lambda r: r != 0)
coefs = st.fractions(min_value=-3, max_value=3, max_denominator=8)
nonzero = coefs.filter(lambda c: c != 0)


@st.composite
def sequences(draw, max_tails=2):
    finite = draw(st.dictionaries(st.integers(1, 12), coefs, max_size=5))
    geos = [
        Geo(draw(st.integers(1, 10)), draw(st.integers(1, 3)), draw(nonzero), draw(ratios))
        for _ in range(draw(st.integers(0, max_tails)))
    ]
    seq = L1Seq(finite, [geom_tail(g.start, g.step, g.coef, g.ratio) for g in geos])
    return seq, finite, geos


@given(sequences())
def test_entries_agree_with_componentwise_sum(data):
    seq, finite, geos = data
    for i in range(1, 40):
        assert seq.entry(i) == brute_entry(finite, geos, i)


@given(sequences())
def test_norm_and_total_sit_within_the_truncation_error(data):
    seq, finite, geos = data
    cut = 120
    bound = tail_bound(geos, cut)
    assert abs(seq.total() - partial(finite, geos, cut)) <= bound
    assert abs(seq.l1_norm() - partial(finite, geos, cut, abs)) <= bound


@given(sequences(), sequences())
def test_vector_space_operations(a, b):
    x, y = a[0], b[0]
    assert (x + y) - y == x
    assert x.scale(3) == x + x + x
    assert (x + y).total() == x.total() + y.total()
    assert (x + y).l1_norm() <= x.l1_norm() + y.l1_norm()


@given(sequences(), st.integers(0, 6))
def test_shifts_are_inverse(data, n):
    seq = data[0]
    assert seq.shift_right(n).shift_left(n) == seq
    for i in range(1, 25):
        assert seq.shift_left(n).entry(i) == seq.entry(i + n)


@given(sequences())
def test_sign_sets_match_a_scan(data):
    seq = data[0]
    first = seq.entry(1)
    s = sign_set(seq, "disagree_or_zero")
    for n in range(1, 80):
        assert (n in s) == (first * seq.entry(n + 1) <= 0)


@given(sequences())
def test_max_abs_matches_a_scan(data):
    seq, finite, geos = data
    scan = max(abs(brute_entry(finite, geos, i)) for i in range(2, 200))
    assert seq.max_abs(2) == scan


@given(sequences(), st.integers(1, 4), st.integers(1, 3), st.lists(st.integers(1, 3), max_size=3))
def test_gather_scatter(data, start, step, gaps):
    seq = data[0]
    head, pos = [], 0
    for g in gaps:
        pos += g
        head.append(pos)
    idx = IndexSeq.progression(max(pos, 0) + start, step, head)
    g = idx.gather(seq)
    for k in range(1, 30):
        assert g.entry(k) == seq.entry(idx[k])
    back = idx.scatter(g)
    for i in range(1, 60):
        assert back.entry(i) == (seq.entry(i) if i in idx else 0)


@given(sequences())
def test_json_round_trip(data):
    seq = data[0]
    text = dumps(l1_to_json(seq))
    assert l1_from_json(json.loads(text)) == seq
    assert dumps(l1_to_json(l1_from_json(json.loads(text)))) == text


@given(st.dictionaries(st.integers(1, 9), coefs, max_size=4), coefs)
def test_c_json_round_trip(prefix, lim):
    x = CSeq(prefix, lim)
    assert c_from_json(c_to_json(x)) == x


@given(sequences(max_tails=1), st.dictionaries(st.integers(1, 9), coefs, max_size=4), coefs)
def test_pairing_is_the_limit_plus_coordinate_part(data, prefix, lim):
    f = data[0]
    x = CSeq(prefix, lim)
    assert pair_c(f, x) == f.entry(1) * lim + coordinate_pairing(f.shift_left(1), x)
