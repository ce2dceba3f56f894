import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadtangles import mult1
from quadtangles.graphs import partition_level4_traces
from quadtangles.scalars import RootOfUnity, q_from_delta2


def qi(r, q):
    return (q ** r - q ** -r) / (q - 1 / q)


@given(st.sampled_from([2, 4, 6, 8, 10, 12]), st.floats(1.05, 2.0), st.integers(0, 11))
@settings(max_examples=60, deadline=None)
def test_solution_satisfies_everything(n, q, a):
    omega = RootOfUnity(a % n, n)
    inst = mult1.solve(n, q, omega, strict=False)
    res = mult1.verify_equations(inst)
    assert max(res.values()) < 1e-9
    assert inst.rcheck == pytest.approx(qi(n + 2, q) / qi(n, q), rel=1e-10)
    assert inst.flags["r_equation"]
    assert inst.tr_e + inst.tr_f == pytest.approx(qi(n + 1, q))


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_equations_exact(n):
    for a in range(n):
        first, second = mult1.equation_residuals_exact(n, Fraction(3, 2), RootOfUnity(a, n))
        assert first.is_zero() and second.is_zero()


def test_odd_n_is_infeasible():
    for n in (3, 5, 7):
        with pytest.raises(mult1.InfeasibleError):
            mult1.solve(n, 1.3, RootOfUnity(0, 1))
        assert mult1.odd_n_gap(n, 1.3) > 0


def test_omega_minus_one_needs_four_divides_n():
    with pytest.raises(mult1.InfeasibleError):
        mult1.solve(2, 1.3, RootOfUnity(1, 2))
    inst = mult1.solve(2, 1.3, RootOfUnity(1, 2), strict=False)
    assert not inst.flags["omega_minus_one_divisibility"]
    assert mult1.solve(4, 1.3, RootOfUnity(1, 2)).flags["omega_minus_one_divisibility"]


def test_bad_parameters():
    with pytest.raises(ValueError):
        mult1.solve(4, 0.9, RootOfUnity(0, 1))
    with pytest.raises(ValueError):
        mult1.solve(4, 1.3, RootOfUnity(1, 3))


def test_fuss_catalan_fixture():
    b = 1.5
    inst = mult1.solve(2, q_from_delta2(2 * b * b), RootOfUnity(0, 1))
    assert abs(inst.rcheck - 2 * (b * b - 1)) < 1e-9
    assert abs(inst.r - b * b / (b * b - 1)) < 1e-9
    assert mult1.chirality_from_r(2, q_from_delta2(2 * b * b), inst.r) == [RootOfUnity(0, 1)]


def test_haagerup_fixture():
    q = q_from_delta2((5 + math.sqrt(13)) / 2)
    inst = mult1.solve(4, q, RootOfUnity(1, 2))
    assert abs(inst.r - 1) < 1e-9
    assert mult1.chirality_from_r(4, q, inst.r) == [RootOfUnity(1, 2)]


def test_partition_fixture():
    inst = mult1.solve(4, q_from_delta2(6), RootOfUnity(0, 1))
    a_plus, b_plus = partition_level4_traces(6, "+")
    a_minus, b_minus = partition_level4_traces(6, "-")
    assert abs(inst.r - float(b_plus / a_plus)) < 1e-9
    assert abs(inst.rcheck - float(b_minus / a_minus)) < 1e-9


def test_ratio_from_trace_inverts():
    for t, w in ((0.3, 2.0), (1.7, 5.5), (0.0, 3.0)):
        x = mult1.ratio_from_trace(t, w)
        assert x >= 1
        assert math.sqrt(x) - 1 / math.sqrt(x) == pytest.approx(abs(t) * math.sqrt(w))


def test_chirality_from_r_rejects_small_r():
    with pytest.raises(ValueError):
        mult1.chirality_from_r(4, 1.3, 0.5)
