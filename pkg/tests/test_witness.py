from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from fpp_lab import sampling
from fpp_lab.errors import HypothesisError, VerificationError
from fpp_lab.fixtures import c_special, example22
from fpp_lab.hyperplane import WfSpace
from fpp_lab.seqcore import IndexSeq, L1Seq, geom_tail
from fpp_lab.witness import (
    CEpsilonSet,
    GeneratorDict,
    SimplexPoint,
    build_witness,
    c_epsilon_fixture,
    contraction_map,
    fixed_point_free_check,
    geometric_convolution,
    random_pairs,
    realize,
    shift_map,
    verify_contraction,
    verify_nonexpansive,
)

from oracles import convolve

HALF_TAIL = SimplexPoint(L1Seq({}, [geom_tail(1, 1, F(1, 2), F(1, 2))]))


@pytest.fixture(scope="module")
def c_dict():
    return build_witness(WfSpace(c_special()), IndexSeq.progression(2, 1))


@pytest.fixture(scope="module")
def ex22_dict():
    return build_witness(WfSpace(example22()), IndexSeq.progression(1, 4))


def test_c_special_dictionary(c_dict):
    assert c_dict.w_tilde == L1Seq({1: -1})
    assert c_dict.provenance["u0"].is_zero()
    five = build_witness(WfSpace(c_special()), IndexSeq.finite([2, 3, 4, 5, 6]))
    assert five.w_tilde == L1Seq({1: -1})


def test_default_dictionary_for_c_special_uses_all_of_n_plus():
    d = build_witness(WfSpace(c_special()))
    assert d.nodes == IndexSeq.progression(2, 1)


def test_alternating_dictionary(ex22_dict):
    prov = ex22_dict.provenance
    e = prov["e_star"]
    for i in range(1, 30):
        expected = e.entry(i) if i % 4 == 1 else 0
        assert prov["u0"].entry(i) == expected
    assert not prov["w0"].is_zero()
    # ||w0|| = 1 - sum_{k>=0} 2^-(4k+1) = 1 - (1/2)/(1 - 1/16)
    assert prov["w0"].l1_norm() == F(7, 15)
    assert ex22_dict.w_tilde.l1_norm() == 1


def test_w0_zero_is_rejected():
    # here e* = e*_1 and N+ is everything, so the full subsequence swallows e*
    f = L1Seq({1: F(-1, 2), 2: F(1, 2)})
    with pytest.raises(HypothesisError, match="different subsequence"):
        build_witness(WfSpace(f), IndexSeq.progression(1, 1))


def test_not_bad_is_rejected():
    with pytest.raises(HypothesisError):
        build_witness(WfSpace(L1Seq({1: F(2, 3), 2: F(-1, 3)})))


def test_subsequence_must_stay_in_n_plus():
    with pytest.raises(HypothesisError, match="leaves N\\+"):
        build_witness(WfSpace(example22()), IndexSeq.progression(2, 2))


def test_shift_examples():
    assert shift_map(SimplexPoint.vertex(1)) == SimplexPoint.vertex(2)
    half = SimplexPoint.from_weights([F(1, 2), F(1, 2)])
    assert shift_map(half) == SimplexPoint(L1Seq({2: F(1, 2), 3: F(1, 2)}))
    moved = shift_map(HALF_TAIL)
    assert moved.coeffs.entry(1) == 0 and moved.coeffs.entry(2) == F(1, 2)
    assert moved.coeffs.total() == 1


def test_realize_examples(c_dict):
    assert realize(c_dict, SimplexPoint.vertex(1)) == L1Seq({1: -1})
    assert realize(c_dict, SimplexPoint.vertex(2)) == L1Seq.unit(2)
    mix = realize(c_dict, SimplexPoint.from_weights([F(1, 2), F(1, 2)]))
    assert mix == L1Seq({1: F(-1, 2), 2: F(1, 2)})
    assert mix.l1_norm() == 1


def test_contraction_examples():
    s = contraction_map(SimplexPoint.vertex(1))
    assert s == SimplexPoint(L1Seq({}, [geom_tail(1, 1, F(1, 2), F(1, 2))]))
    s2 = contraction_map(SimplexPoint.vertex(2))
    assert s2 == SimplexPoint(L1Seq({}, [geom_tail(2, 1, F(1, 2), F(1, 2))]))


def test_vertex_displacements(c_dict):
    rep = fixed_point_free_check("shift", [SimplexPoint.vertex(1)], 6, c_dict)
    assert rep.displacements == [[2] * 6]
    rep = fixed_point_free_check("contraction", [SimplexPoint.vertex(1)], 1, c_dict)
    assert rep.displacements[0][0] == 1
    rep = fixed_point_free_check("shift", [HALF_TAIL], 1, c_dict)
    assert not rep.fixed_point_found


def test_strict_contraction_on_vertices(c_dict):
    pair = (SimplexPoint.vertex(1), SimplexPoint.vertex(2))
    report = verify_contraction(c_dict, [pair])
    assert report.margins == [1]
    assert verify_nonexpansive(c_dict, [pair]).margins == [0]
    same = (SimplexPoint.vertex(3), SimplexPoint.vertex(3))
    assert verify_nonexpansive(c_dict, [same]).margins == [0]


def test_user_dictionary_must_be_norm_one():
    with pytest.raises(HypothesisError):
        GeneratorDict(L1Seq({1: 2}), basis=(L1Seq.unit(2),))


def test_bad_certificate_is_caught():
    d = GeneratorDict(L1Seq.unit(1), basis=(L1Seq.unit(1),))
    with pytest.raises(VerificationError):
        d.certify(samples=64, seed=1)


def test_c_epsilon_fixture():
    C, W, check = c_epsilon_fixture(F(1, 2))
    assert W.f == L1Seq({1: F(2, 3), 2: F(-1, 3)})
    assert all(check.values())
    assert C.contains(C.point(SimplexPoint.vertex(1)))
    assert C.point(SimplexPoint.vertex(1)) == L1Seq({1: F(1, 2)})
    with pytest.raises(HypothesisError):
        c_epsilon_fixture(0)
    assert not CEpsilonSet(F(1, 2)).contains(L1Seq.unit(1))


# -- properties ---------------------------------------------------------------
@given(st.integers(0, 2**32))
def test_convolution_matches_term_by_term(seed):
    r = sampling.rng(seed)
    p = SimplexPoint(sampling.simplex_coeffs(r, tail_prob=0.6))
    out = geometric_convolution(p.coeffs)
    brute = convolve(p.coeffs.entry, 30)
    assert [out.entry(k) for k in range(1, 31)] == brute
    assert out.total() == 1


@given(st.integers(0, 2**32), st.integers(1, 3))
def test_iterated_contraction_stays_in_the_simplex(seed, times):
    r = sampling.rng(seed)
    p = SimplexPoint(sampling.simplex_coeffs(r, tail_prob=0.5))
    for _ in range(times):
        q = contraction_map(p)
        assert [q.coeffs.entry(k) for k in range(1, 21)] == convolve(p.coeffs.entry, 20)
        p = q
    assert p.coeffs.total() == 1 and p.coeffs.is_nonnegative()


@given(st.integers(0, 2**32))
def test_maps_are_nonexpansive_on_both_dictionaries(seed):
    c_d = build_witness(WfSpace(c_special()), IndexSeq.progression(2, 1), samples=4)
    e_d = build_witness(WfSpace(example22()), IndexSeq.progression(1, 4), samples=4)
    pairs = random_pairs(sampling.rng(seed), 3, tail_prob=0.4)
    for d in (c_d, e_d):
        assert verify_nonexpansive(d, pairs).ok
        verify_contraction(d, pairs)


@given(st.integers(0, 2**32))
def test_no_sampled_point_is_fixed(seed):
    r = sampling.rng(seed)
    p = SimplexPoint(sampling.simplex_coeffs(r, tail_prob=0.4))
    assert shift_map(p) != p
    assert contraction_map(p) != p
