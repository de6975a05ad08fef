from fractions import Fraction as F

from hypothesis import given, strategies as st

from fpp_lab.lp import minimize

from oracles import minimax_vertices


def test_textbook_program():
    # max 3x + 2y  s.t. x + y <= 4, x + 3y <= 6, x <= 3
    res = minimize([-3, -2], A_ub=[[1, 1], [1, 3], [1, 0]], b_ub=[4, 6, 3])
    assert res.status == "optimal"
    assert res.value == -11 and res.x == [3, 1]


def test_equalities_and_fractions():
    res = minimize([1, 1], A_eq=[[2, 3]], b_eq=[F(1, 2)])
    assert res.value == F(1, 6) and res.x == [0, F(1, 6)]


def test_infeasible_and_unbounded():
    assert minimize([1], A_eq=[[1]], b_eq=[-1]).status == "infeasible"
    res = minimize([-1, 0], A_ub=[[0, 1]], b_ub=[1])
    assert res.status == "unbounded" and res.value is None


def test_negative_right_hand_side():
    # x >= 2 written as -x <= -2
    res = minimize([1], A_ub=[[-1]], b_ub=[-2])
    assert res.value == 2


def test_degenerate_program_terminates():
    res = minimize(
        [-10, 57, 9, 24],
        A_ub=[[F(1, 2), F(-11, 2), F(-5, 2), 9], [F(1, 2), F(-3, 2), F(-1, 2), 1], [1, 0, 0, 0]],
        b_ub=[0, 0, 1],
    )
    assert res.status == "optimal" and res.value == -1


def _minimax_lp(coeffs, rhs, bound):
    # variables t, z+_j, z-_j; min t with |z_j| <= t, sum a_j z_j = rhs, t >= bound
    n = len(coeffs)
    c = [1] + [0] * (2 * n)
    eq = [[0] + list(coeffs) + [-a for a in coeffs]]
    ub = [[-1] + [0] * (2 * n)]
    rhs_ub = [-bound]
    for j in range(n):
        row = [-1] + [0] * (2 * n)
        row[1 + j] = 1
        row[1 + n + j] = 1
        ub.append(row)
        rhs_ub.append(0)
    return minimize(c, A_eq=eq, b_eq=[rhs], A_ub=ub, b_ub=rhs_ub)


small = st.fractions(min_value=-2, max_value=2, max_denominator=7)


@given(st.lists(small.filter(bool), min_size=1, max_size=4), small, st.fractions(0, 2, max_denominator=5))
def test_minimax_against_vertex_scan(coeffs, rhs, bound):
    res = _minimax_lp(coeffs, rhs, bound)
    assert res.status == "optimal"
    assert res.value == minimax_vertices(coeffs, rhs, bound)
