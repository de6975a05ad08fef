from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from fpp_lab.errors import CaseMismatchError, ExhaustionError, HypothesisError
from fpp_lab.extraction import (
    FunctionalFamily,
    bad_wf_from_basis_limit,
    final_step_check,
    greedy_norming,
    grind,
    mixed_family,
    phi_basis_map_check,
    run_pipeline,
    select_blocks,
    support_sets,
    unit_family,
    validate_family,
)
from fpp_lab.fixtures import c_special, example22, example31
from fpp_lab.hyperplane import WfSpace, classify, wstar_limit_functional
from fpp_lab.seqcore import CSeq, IndexSeq, L1Seq, geom_tail

W_C = WfSpace(c_special())


def test_validate_examples():
    assert validate_family(unit_family(10, start=1)).ok
    clash = validate_family(FunctionalFamily((L1Seq.unit(1), L1Seq({1: -1}))))
    assert clash.sum_failures == [(1, 2)] and clash.sign_failures == [(1, 2)]
    assert validate_family(mixed_family(6)).ok


def test_validate_reports_norms_and_profiles():
    rep = validate_family(FunctionalFamily((L1Seq({2: 2}), L1Seq.unit(3), L1Seq.unit(4))))
    assert rep.norm_failures == [1]
    assert rep.distance_profiles["x2"] == [2]


def test_blocks_of_unit_family():
    blocks = select_blocks(unit_family(5, start=1))
    assert [(b.lo, b.hi) for b in blocks] == [(1, 1), (2, 2), (3, 3), (4, 4), (5, 5)]
    assert all(b.mass == 1 for b in blocks)


def test_blocks_of_mixed_family_cover_each_support():
    blocks = select_blocks(mixed_family(4))
    assert [(b.member, b.lo, b.hi) for b in blocks] == [(1, 1, 3), (2, 4, 5), (3, 6, 7), (4, 8, 9)]
    assert all(b.mass == 1 for b in blocks)


def test_blocks_of_a_tail_member_end_at_the_first_crossing():
    tail = L1Seq({}, [geom_tail(1, 1, F(1, 2), F(1, 2))])
    (block,) = select_blocks(FunctionalFamily((tail,)))
    assert (block.lo, block.hi) == (1, 2)  # 1/2 + 1/4 > 1/2


def test_exhaustion():
    fam = FunctionalFamily((L1Seq.unit(2), L1Seq({1: F(1, 2), 3: F(1, 2)})))
    with pytest.raises(ExhaustionError):
        select_blocks(fam)
    with pytest.raises(ExhaustionError):
        select_blocks(unit_family(2), count=3)


def test_grind_cases():
    g = grind(unit_family(4))
    assert g.case == "positive" and (g.s_plus, g.s_minus) == (1, 0)
    assert g.y == list(unit_family(4).members)

    m = mixed_family(5)
    g = grind(m)
    assert (g.s_plus, g.s_minus) == (F(3, 4), F(-1, 4))
    assert g.y == list(m.members)

    neg = FunctionalFamily(tuple(L1Seq({n: -1}) for n in range(2, 6)))
    g = grind(neg, targets=(0, -1))
    assert g.case == "negative"
    assert g.y == [L1Seq.unit(n) for n in range(2, 6)]
    assert (g.s_plus, g.s_minus) == (1, 0)
    assert all(g.check_invariants().values())


def test_grind_rescales_uneven_blocks():
    fam = FunctionalFamily((L1Seq({1: F(1, 2), 2: F(-1, 2)}), L1Seq({3: F(3, 4), 4: F(-1, 4)})))
    g = grind(fam)
    assert g.y[0] == L1Seq({1: F(3, 4), 2: F(-1, 4)})
    assert all(g.check_invariants().values())


def test_grind_case_mismatch():
    with pytest.raises(CaseMismatchError):
        grind(unit_family(3), targets=(F(3, 4), F(-1, 4)))
    with pytest.raises(HypothesisError):
        grind(unit_family(3), targets=(F(1, 2), F(-1, 4)))


def test_greedy_norming_examples():
    g = grind(unit_family(4))
    res = greedy_norming(W_C, g, 3)
    assert all(v == 1 for row in res.values for v in row)
    assert res.xs[0] == CSeq({1: -1}, 1)
    assert greedy_norming(W_C, g, 0).xs == []

    gm = grind(mixed_family(3))
    res = greedy_norming(W_C, gm, 2)
    x = res.xs[0]
    assert (x.entry(2), x.entry(3)) == (1, -1)
    assert all(v == 1 for row in res.values for v in row)


def test_support_sets_maximal_case():
    g = grind(unit_family(4))
    xs = greedy_norming(W_C, g, 5).xs
    sets = support_sets(g, xs, 16)
    assert sets.ok and sets.depth == 5
    assert sets.G == {n: {n + 1} for n in range(1, 5)}


def test_support_sets_mixed_case():
    g = grind(mixed_family(3))
    sets = support_sets(g, greedy_norming(W_C, g, 4).xs)
    assert sets.G == {1: {2}, 2: {4}, 3: {6}}
    assert sets.ok


def test_support_sets_boundary_is_excluded():
    g = grind(unit_family(1))
    xs = [CSeq({1: -1, 2: F(1, 2)}, 1)]  # x_1(2) = 1 - 1/2 exactly
    sets = support_sets(g, xs)
    assert sets.E[1][1] == set()
    assert not sets.ok


def test_final_step_examples():
    e, cert = final_step_check(W_C, [2, 3, 4], [])
    assert e == L1Seq({1: -1}) and cert["condition_4"]
    _, cert = final_step_check(WfSpace(example22()), [], [])
    assert cert["norm_one"]
    _, cert = final_step_check(WfSpace(L1Seq({1: F(2, 3), 2: F(1, 3)})), [], [])
    assert cert["e_star_norm"] == "1/2" and not cert["condition_4"]


def test_bad_wf_examples():
    W = bad_wf_from_basis_limit(L1Seq.unit(1), IndexSeq.progression(2, 1))
    assert W.f == L1Seq({1: F(-1, 2), 2: F(1, 2)}) and classify(W).iso_c
    W = bad_wf_from_basis_limit(L1Seq({1: F(1, 2), 2: F(1, 2)}), IndexSeq.finite([1, 2]))
    assert W.f == L1Seq({1: F(-1, 2), 2: F(1, 4), 3: F(1, 4)})
    assert classify(W).is_bad
    with pytest.raises(HypothesisError):
        bad_wf_from_basis_limit(L1Seq({1: F(1, 2), 2: F(-1, 2)}), IndexSeq.finite([1, 2]))
    with pytest.raises(HypothesisError):
        bad_wf_from_basis_limit(L1Seq({1: F(1, 2)}), IndexSeq.finite([1]))


def test_phi_examples():
    rep = phi_basis_map_check(L1Seq({1: F(1, 2), 2: F(1, 2)}), IndexSeq.finite([1, 2]))
    assert rep.u_star == L1Seq({1: F(1, 2)})
    assert rep.x1 == L1Seq.unit(1)
    assert rep.image == L1Seq({1: F(1, 2), 2: F(1, 2)})
    assert rep.limit_match
    rep = phi_basis_map_check(L1Seq.unit(1), IndexSeq.progression(2, 1))
    assert rep.x1 == L1Seq.unit(1)
    assert (rep.x1 - L1Seq.unit(3)).l1_norm() == 2


def test_phi_rejects_vanishing_u():
    with pytest.raises(HypothesisError):
        phi_basis_map_check(L1Seq.unit(2), IndexSeq.finite([1, 2]))


@pytest.mark.parametrize("fam", [unit_family(8), mixed_family(8)], ids=["unit", "mixed"])
def test_pipeline(fam):
    chain = run_pipeline(fam, depth=8)
    assert all(chain["grind"]["invariants"].values())
    assert chain["support_sets"]["ok"]
    assert chain["final"]["condition_4"]


# -- properties ---------------------------------------------------------------
@given(st.sampled_from([example22, example31, c_special]), st.integers(1, 4), st.integers(1, 3))
def test_round_trip_from_limit_functional(fixture, start, step):
    W = WfSpace(fixture())
    e = wstar_limit_functional(W) if fixture is not c_special else L1Seq({1: -1})
    plus = [n for n in range(start, 60, step) if e.entry(n) >= 0]
    if not plus:
        return
    sub = IndexSeq.finite(plus)
    s = sum((e.entry(n) for n in plus[1:]), F(0))
    W2 = bad_wf_from_basis_limit(e, sub)
    cls = classify(W2)
    assert cls.is_bad if s > 0 else cls.iso_c


@given(
    st.lists(
        st.tuples(st.integers(1, 3), st.fractions(min_value=F(1, 6), max_value=1, max_denominator=6)),
        min_size=2,
        max_size=5,
    )
)
def test_grind_invariants_on_random_blocks(shapes):
    members, pos = [], 1
    for width, share in shapes:
        body = {pos: share}
        if share < 1:
            body[pos + width] = share - 1
        members.append(L1Seq(body))
        pos += width + 1
    fam = FunctionalFamily(tuple(members))
    try:
        g = grind(fam)
    except CaseMismatchError:
        return
    inv = g.check_invariants()
    assert all(inv.values()), inv
