import itertools

import pytest

from cyhodge.hodge_calc import (
    HodgeDegrees,
    HodgeError,
    HodgeNumbers,
    PointProfile,
    dim_h1_euler,
    dim_h1_profile,
    hodge_numbers,
    l2_degree_table,
    propagate_ab_pullback,
    solve_ab_corollary,
    symmetry_forced_hodge_numbers,
    yukawa_zero_count,
)


def _grid():
    for A, B, C, g, a, b in itertools.product(range(13), range(13), range(13), range(3), range(1, 7), range(-12, 13)):
        h40 = a - 1 + g
        h31 = B + C + b - a - 2 + 2 * g
        h22 = A + C - 2 * b - 2 + 2 * g
        if min(h40, h31, h22) >= 0:
            yield A, B, C, g, a, b


@pytest.mark.criterion(6)
def test_grid_sum_identity_and_route_agreement():
    count = 0
    for A, B, C, g, a, b in _grid():
        p, d = PointProfile(A, B, C, g), HodgeDegrees(a, b)
        h = hodge_numbers(d, p)
        assert 2 * h.h40 + 2 * h.h31 + h.h22 == A + 2 * B + 3 * C + 8 * (g - 1)
        t = l2_degree_table(d, p, check=False)
        assert t.cokernel_differences == (h.h31, h.h22, h.h13)
        assert t.h40 == h.h40
        count += 1
    assert count > 10000


@pytest.mark.criterion(6)
def test_euler_agrees_with_profile():
    for A, B, C, g in itertools.product(range(8), range(8), range(8), range(3)):
        p = PointProfile(A, B, C, g)
        if A + 2 * B + 3 * C + 8 * (g - 1) < 0:
            continue
        assert dim_h1_euler(p) == dim_h1_profile(p)


def test_quintic_examples():
    p = PointProfile(5, 0, 1)
    d = solve_ab_corollary(0, p)
    assert (d.a, d.b) == (1, 2)
    assert hodge_numbers(d, p).as_tuple() == (0, 0, 0, 0, 0)
    assert yukawa_zero_count(6, 0, 1) == 10
    d2 = propagate_ab_pullback(d, 2, True)
    assert (d2.a, d2.b) == (2, 4)
    assert hodge_numbers(d2, PointProfile(10, 0, 1)).as_tuple() == (1, 1, 1, 1, 1)
    assert yukawa_zero_count(11, 0, 2) == 23


def test_l2_table_quintic_entries():
    t = l2_degree_table(HodgeDegrees(1, 2), PointProfile(5, 0, 1))
    assert t.e30_minus_II_III == 0 and t.e21_omega == 0
    assert t.cokernel_differences == (0, 0, 0)
    t2 = l2_degree_table(HodgeDegrees(1, 0), PointProfile(5, 0, 0), check=False)
    assert t2.e30_omega == -1 and t2.h40 == 0


def test_hadamard_example_corollary():
    p = PointProfile(0, 0, 3)
    d = solve_ab_corollary(1, p)
    assert (d.a, d.b) == (1, 0)
    assert hodge_numbers(d, p).h22 == 1
    assert yukawa_zero_count(3, 0, 1) == 1


def test_corollary_consistency():
    for A, B, C in itertools.product(range(10), range(10), range(10)):
        p = PointProfile(A, B, C)
        h = A + 2 * B + 3 * C - 8
        if h not in (0, 1):
            continue
        try:
            d = solve_ab_corollary(h, p)
        except HodgeError:
            continue
        try:
            hn = hodge_numbers(d, p)
        except HodgeError:
            continue
        assert hn.h22 == h and hn.h40 == hn.h31 == 0


def test_errors():
    with pytest.raises(HodgeError):
        hodge_numbers(HodgeDegrees(0, 0), PointProfile(5, 0, 1))
    with pytest.raises(HodgeError):
        solve_ab_corollary(2, PointProfile(5, 0, 1))
    with pytest.raises(HodgeError):
        solve_ab_corollary(0, PointProfile(4, 0, 1))  # odd numerator
    with pytest.raises(HodgeError):
        propagate_ab_pullback(HodgeDegrees(1, 2), 2, False)
    with pytest.raises(HodgeError):
        yukawa_zero_count(2, 0, 3)
    with pytest.raises(HodgeError):
        HodgeNumbers(1, 0, 0, 0, 2, 3)
    with pytest.raises(HodgeError):
        hodge_numbers(HodgeDegrees(1, 2), PointProfile(5, 0, 1, residual=(("oo", 4),)))


def test_euler_with_residual():
    p = PointProfile(4, 0, 1, residual=(("oo", 4),))
    assert dim_h1_euler(p) == 4 + 3 + 4 - 8


def test_symmetry_forced():
    assert symmetry_forced_hodge_numbers(1).as_tuple() == (0, 0, 1, 0, 0)
    assert symmetry_forced_hodge_numbers(0).dim == 0
    assert symmetry_forced_hodge_numbers(2) is None
