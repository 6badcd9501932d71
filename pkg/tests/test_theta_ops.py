from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyhodge.cy_workbench_cli.catalog import closed_form_terms
from cyhodge.theta_ops import (
    IndicialError,
    NoHolomorphicSolutionError,
    OperatorSyntaxError,
    PointLocation,
    RationalPoly,
    ResonanceError,
    ThetaOperator,
    annihilates,
    hadamard_annihilator,
    hadamard_series,
    indicial_polynomial,
    invert,
    is_singular,
    local_exponents,
    parse_operator,
    pullback,
    rescale,
    series_solution,
    singular_points,
    stirling2,
)

F = Fraction
QUINTIC = "T^4 - 5*z*(5*T+1)*(5*T+2)*(5*T+3)*(5*T+4)"
AESZ25 = "T^4 - 4*z*(11*T^2+11*T+3)*(2*T+1)^2 - 16*z^2*(2*T+1)^2*(2*T+3)^2"
ELLIPTIC = "T^2 - z*(32*T^2+32*T+12) + 256*z^2*(T+1)^2"


def P(*c):
    return RationalPoly(tuple(F(x) for x in c))


# -- polynomials ---------------------------------------------------------------------


small = st.lists(st.integers(-6, 6), min_size=0, max_size=5).map(lambda c: RationalPoly(tuple(c)))


@given(small, small, small)
def test_poly_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a - a).is_zero()


@given(small, small.filter(lambda p: not p.is_zero()))
def test_poly_divmod(a, b):
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


def test_poly_shift_and_compose():
    p = P(1, 2, 3)
    assert p.shift(1) == P(6, 8, 3)
    assert P(0, 1).compose_power(3) == P(0, 0, 0, 1)
    assert p.derivative() == P(2, 6)


# -- parser -----------------------------------------------------------------------------


def test_parse_quintic_shape():
    op = parse_operator(QUINTIC)
    assert op.order == 4 and op.degree == 1
    assert op.Q(0) == P(0, 0, 0, 0, 1)
    assert op.Q(1) == P(-120, -1250, -4375, -6250, -3125)


def test_ore_rule():
    assert parse_operator("T*z") == parse_operator("z*(T+1)")
    assert parse_operator("T^2*z^3") == parse_operator("z^3*(T+3)^2")


def test_parser_accepts_leading_sign_and_fractions():
    assert parse_operator("-T^2 + 1/2*z") == parse_operator("T^2 - 1/2*z")


@pytest.mark.parametrize("bad", ["", "T^", "T + * z", "(T", "T^-1", "2/0", "x*T", "0*T"])
def test_parser_errors(bad):
    with pytest.raises((OperatorSyntaxError, ZeroDivisionError, ValueError)):
        parse_operator(bad)


def test_parser_error_position():
    with pytest.raises(OperatorSyntaxError) as exc:
        parse_operator("T^4 - z*(")
    assert exc.value.position == 9


poly_theta = st.lists(st.integers(-5, 5), min_size=1, max_size=4).map(lambda c: RationalPoly(tuple(c)))
operators = st.lists(poly_theta, min_size=1, max_size=4).filter(lambda qs: not qs[0].is_zero()).map(
    lambda qs: ThetaOperator.from_terms(qs)
).filter(lambda op: not op.is_zero() and op.order >= 1)


@settings(max_examples=60, deadline=None)
@given(operators)
def test_parser_round_trip(op):
    assert parse_operator(str(op)) == op


def test_catalog_operators_round_trip(catalog):
    for e in catalog:
        assert parse_operator(str(e.operator)) == e.operator


# -- operator algebra ---------------------------------------------------------------------


def test_stirling():
    assert [stirling2(4, k) for k in range(5)] == [0, 1, 7, 6, 1]


def test_dform_of_theta_squared():
    # theta^2 = z^2 D^2 + z D
    d = parse_operator("T^2").dform()
    assert d[1] == RationalPoly((0, 1), "z") and d[2] == RationalPoly((0, 0, 1), "z")


@settings(max_examples=30, deadline=None)
@given(operators, st.integers(1, 4), st.integers(1, 4))
def test_pullback_functorial(op, a, b):
    assert pullback(pullback(op, a), b) == pullback(op, a * b)
    assert pullback(op, 1) == op


def test_invert_is_involution(catalog):
    for e in catalog:
        op = e.operator
        assert invert(invert(op)) == op


def test_rescale_moves_conifold():
    op = rescale(parse_operator(QUINTIC), F(1, 3125))
    assert [p.label for p in singular_points(op)] == ["0", "1", "oo"]


# -- singular points and exponents --------------------------------------------------------


def test_quintic_exponents():
    op = parse_operator(QUINTIC)
    pts = singular_points(op)
    assert [p.label for p in pts] == ["0", "1/3125", "oo"]
    assert local_exponents(op, pts[0]) == (0, 0, 0, 0)
    assert local_exponents(op, pts[1]) == (0, 1, 1, 2)
    assert local_exponents(op, pts[2]) == tuple(F(k, 5) for k in range(1, 5))


def test_quintic_indicial_at_zero():
    op = parse_operator(QUINTIC)
    assert indicial_polynomial(op, PointLocation.zero()).coeffs == (0, 0, 0, 0, 1)


def test_aesz25_roots_in_quadratic_field():
    op = parse_operator(AESZ25)
    finite = [p for p in singular_points(op) if p.kind == "finite"]
    assert len(finite) == 2
    with mpmath.workdps(40):
        s5 = mpmath.sqrt(5)
        want = sorted([(5 * s5 - 11) / 32, (-5 * s5 - 11) / 32])
        got = sorted(mpmath.re(p.approx) for p in finite)
        for g, w in zip(got, want):
            assert abs(g - w) < mpmath.mpf("1e-25")
    for p in finite:
        assert local_exponents(op, p) == (0, 1, 1, 2)
    inf = singular_points(op)[-1]
    assert local_exponents(op, inf) == (F(1, 2), F(1, 2), F(3, 2), F(3, 2))


def test_regular_point_has_trivial_exponents():
    op = parse_operator(QUINTIC)
    p = PointLocation("finite", RationalPoly((-1, 2), "z"), 0)
    assert not is_singular(op, p)
    assert local_exponents(op, p) == (0, 1, 2, 3)


def test_theta_power_singular_only_at_ends():
    assert [p.label for p in singular_points(parse_operator("T^4"))] == ["0", "oo"]


def test_indicial_error_for_irregular_point():
    # theta - z^2 has an irregular singularity at infinity
    op = parse_operator("T - z^2")
    with pytest.raises(IndicialError):
        local_exponents(op, PointLocation.infinity())


@pytest.mark.parametrize("e", [2, 3, 5])
def test_exponent_scaling_over_catalog(catalog, e):
    for entry in catalog:
        op = entry.operator
        if op.order != 4:
            continue
        up = pullback(op, e)
        for kind in ("zero", "infinity"):
            base = PointLocation(kind, None, 0)
            assert local_exponents(up, base) == tuple(sorted(e * x for x in local_exponents(op, base)))


def test_finite_exponents_preserved_by_pullback():
    op = parse_operator(AESZ25)
    up = pullback(op, 2)
    for q in singular_points(up):
        if q.kind == "finite":
            assert local_exponents(up, q) == (0, 1, 1, 2)


# -- series -------------------------------------------------------------------------------


def test_series_values():
    assert list(series_solution(parse_operator(AESZ25), 3).coefficients) == [1, 12, 684, 58800]
    assert list(series_solution(parse_operator(ELLIPTIC), 4).coefficients) == [1, 12, 164, 2352, 34596]
    assert list(series_solution(parse_operator("T^4"), 3).coefficients) == [1, 0, 0, 0]
    assert list(series_solution(parse_operator(QUINTIC), 2).coefficients) == [1, 120, 113400]


def test_series_closed_forms():
    assert list(series_solution(parse_operator(AESZ25), 15).coefficients) == closed_form_terms("aesz25", 15)
    assert list(series_solution(parse_operator(ELLIPTIC), 15).coefficients) == closed_form_terms("elliptic", 15)


@pytest.mark.parametrize("e", [2, 3])
def test_series_under_pullback(e):
    op = parse_operator(QUINTIC)
    a = series_solution(op, 4).coefficients
    b = series_solution(pullback(op, e), 4 * e).coefficients
    assert [b[k] for k in range(0, 4 * e + 1, e)] == list(a)
    assert all(b[k] == 0 for k in range(4 * e + 1) if k % e)


def test_series_annihilated():
    op = parse_operator(AESZ25)
    assert annihilates(op, series_solution(op, 30).coefficients)


def test_series_errors():
    with pytest.raises(NoHolomorphicSolutionError):
        series_solution(parse_operator("(T-1)*(T-2)"), 3)
    with pytest.raises(ResonanceError):
        series_solution(parse_operator("T*(T-2) - z"), 3)


def test_hadamard_identity_factor():
    ell = parse_operator(ELLIPTIC)
    ones = [F(1)] * 41
    got = hadamard_annihilator(ell, parse_operator("T - z*(T+1)"), 2, 3)
    assert got == ell
    assert hadamard_series([1, 2], [3, 4]) == [3, 8]
    assert annihilates(got, hadamard_series(series_solution(ell, 40).coefficients, ones))
