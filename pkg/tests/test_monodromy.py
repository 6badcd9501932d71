from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyhodge import linalg
from cyhodge.monodromy_engine import (
    INCONSISTENT,
    REGULAR,
    TYPE_I,
    TYPE_II,
    TYPE_III,
    JordanBlock,
    LocalMonodromyDatum,
    NilpotentEndo,
    NotUnipotentError,
    RankAmbiguityError,
    classify_point,
    companion_system,
    datum_from_matrix,
    exp_nilpotent,
    expected_residue_trace,
    hypergeometric_data,
    monodromy_matrices,
    nilpotent_log,
    numeric_rank,
    power_local_datum,
    type_from_datum,
)
from cyhodge.theta_ops import local_exponents, parse_operator, singular_points

F = Fraction
QUINTIC = "T^4 - 5*z*(5*T+1)*(5*T+2)*(5*T+3)*(5*T+4)"
AESZ25 = "T^4 - 4*z*(11*T^2+11*T+3)*(2*T+1)^2 - 16*z^2*(2*T+1)^2*(2*T+3)^2"

# Nilpotent logarithms of the three unipotent boundary types
N_I = [[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]
N_II = [[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0]]
N_III = [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0]]
N_BAD = [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 0]]


# -- companion system ---------------------------------------------------------------------


def test_companion_residue_traces():
    for text in (QUINTIC, AESZ25):
        op = parse_operator(text)
        cs = companion_system(op)
        for p in singular_points(op):
            if p.kind == "infinity":
                continue
            assert cs.residue_trace(p) == expected_residue_trace(op, p)


def test_quintic_conifold_residue():
    op = parse_operator(QUINTIC)
    p = singular_points(op)[1]
    assert expected_residue_trace(op, p) == -2


# -- exact classification -------------------------------------------------------------------


@pytest.mark.parametrize("N,want", [(N_I, TYPE_I), (N_II, TYPE_II), (N_III, TYPE_III), (N_BAD, INCONSISTENT),
                                    ([[0] * 4] * 4, REGULAR)])
def test_classify_exact(N, want):
    assert classify_point(NilpotentEndo.from_rows(N)) == want


def test_classify_conjugated():
    S = [[1, 2, 0, 1], [0, 1, 3, 0], [1, 0, 1, 0], [0, 0, 1, 1]]
    Sinv = _inverse(S)
    for N, want in ((N_I, TYPE_I), (N_II, TYPE_II), (N_III, TYPE_III)):
        M = linalg.matmul(linalg.matmul(linalg.to_fractions(S), linalg.to_fractions(N)), Sinv)
        assert classify_point(NilpotentEndo.from_rows(M)) == want


def _inverse(S):
    n = len(S)
    aug = [list(map(F, row)) + [F(int(i == j)) for j in range(n)] for i, row in enumerate(S)]
    red, _ = linalg.rref(aug)
    return [row[n:] for row in red]


@pytest.mark.parametrize("N,want", [(N_I, TYPE_I), (N_II, TYPE_II), (N_III, TYPE_III)])
def test_log_exp_numeric(N, want):
    with mpmath.workdps(50):
        T = exp_nilpotent(NilpotentEndo(mpmath.matrix(N), False))
        L = nilpotent_log(T)
        assert mpmath.mnorm(L.entries - mpmath.matrix(N), 1) < mpmath.mpf("1e-40")
        assert classify_point(L) == want
        assert mpmath.mnorm(exp_nilpotent(L) - T, 1) < mpmath.mpf("1e-40")


def test_log_rejects_non_unipotent():
    with mpmath.workdps(50):
        with pytest.raises(NotUnipotentError):
            nilpotent_log(mpmath.diag([1, 1, 1, -1]))


def test_numeric_rank_gap():
    with mpmath.workdps(50):
        assert numeric_rank(mpmath.diag([1, mpmath.mpf("1e-40"), 0, 0])) == 1
        with pytest.raises(RankAmbiguityError):
            numeric_rank(mpmath.diag([1, mpmath.mpf("1e-14"), mpmath.mpf("1e-17"), 0]))


# -- local data ----------------------------------------------------------------------------------


def test_jordan_block_normalization():
    assert JordanBlock(4, 2, 1) == JordanBlock(2, 1, 1)
    assert JordanBlock.from_class(F(3, 2), 2) == JordanBlock(2, 1, 2)
    assert JordanBlock(1, 0, 3).unipotent


def test_type_from_datum():
    d = LocalMonodromyDatum.of([JordanBlock(5, k, 1) for k in range(1, 5)])
    t = type_from_datum(d)
    assert t.kind == "FiniteOrder" and t.order == 5
    q = type_from_datum(LocalMonodromyDatum.of([JordanBlock(2, 1, 2), JordanBlock(4, 1, 1), JordanBlock(4, 3, 1)]))
    assert q.kind == "QuasiUnipotent" and q.order == 4
    assert type_from_datum(LocalMonodromyDatum.of([JordanBlock(1, 0, 3), JordanBlock(1, 0, 1)])) == INCONSISTENT


blocks = st.builds(lambda k, r, s: JordanBlock(k, r % k, s), st.integers(1, 6), st.integers(0, 11), st.integers(1, 4))


@settings(max_examples=100, deadline=None)
@given(st.lists(blocks, min_size=1, max_size=4), st.integers(1, 6), st.integers(1, 6))
def test_power_local_datum_composes(bs, a, b):
    d = LocalMonodromyDatum.of(bs)
    assert power_local_datum(power_local_datum(d, a), b) == power_local_datum(d, a * b)
    assert power_local_datum(d, d.unipotency_order).is_unipotent
    assert power_local_datum(d, 1) == d


def test_hypergeometric_data_quintic():
    at0, atc, atinf = hypergeometric_data([F(k, 5) for k in range(1, 5)], [0, 1, 1, 2])
    assert type_from_datum(at0) == TYPE_III
    assert type_from_datum(atc) == TYPE_I
    assert atinf.is_semisimple and atinf.unipotency_order == 5
    assert type_from_datum(power_local_datum(atinf, 5)) == REGULAR


# -- numeric monodromy -------------------------------------------------------------------------


@pytest.fixture(scope="module")
def quintic_monodromy():
    op = parse_operator(QUINTIC)
    return op, monodromy_matrices(op)


@pytest.mark.slow
def test_quintic_matrices(quintic_monodromy):
    op, res = quintic_monodromy
    assert res.relation_residual < mpmath.mpf("1e-20")
    with mpmath.workdps(50):
        for p, m in res.matrices.items():
            d = datum_from_matrix(m, local_exponents(op, p))
            assert m.error_bound < mpmath.mpf("1e-20")
            if p.kind == "zero":
                assert type_from_datum(d) == TYPE_III
            elif p.kind == "finite":
                assert type_from_datum(d) == TYPE_I
                assert abs(mpmath.det(m.entries) - 1) < mpmath.mpf("1e-25")
            else:
                assert d.is_semisimple and d.unipotency_order == 5


@pytest.mark.slow
def test_perturbed_loops_give_same_data(quintic_monodromy):
    op, res = quintic_monodromy
    jit = monodromy_matrices(op, jitter=mpmath.mpf("0.05"))
    with mpmath.workdps(50):
        for p in res.matrices:
            diff = jit.matrices[p].entries - res.matrices[p].entries
            assert mpmath.mnorm(diff, 1) < mpmath.mpf("1e-20")


@pytest.mark.slow
def test_second_basepoint_conjugate_data(quintic_monodromy):
    op, res = quintic_monodromy
    other = monodromy_matrices(op, basepoint=mpmath.mpc("-0.0001", "0.00007"))
    with mpmath.workdps(50):
        for p in res.matrices:
            a = datum_from_matrix(res.matrices[p], local_exponents(op, p))
            b = datum_from_matrix(other.matrices[p], local_exponents(op, p))
            assert a == b
            tr = sum(res.matrices[p].entries[i, i] for i in range(4))
            tr2 = sum(other.matrices[p].entries[i, i] for i in range(4))
            assert abs(tr - tr2) < mpmath.mpf("1e-20")


def test_singular_basepoint_rejected():
    op = parse_operator(QUINTIC)
    with pytest.raises(ValueError):
        monodromy_matrices(op, basepoint=mpmath.mpf(1) / 3125)
