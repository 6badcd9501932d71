import random
from fractions import Fraction

import pytest

from cyhodge import linalg
from cyhodge.monodromy_engine import NotNilpotentError, check_axioms, weight_filtration

N_I = [[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]
N_II = [[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0]]
N_III = [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0]]

PARTITIONS = [(1, 1, 1, 1), (2, 1, 1), (2, 2), (3, 1), (4,)]


def jordan_nilpotent(partition):
    n = sum(partition)
    J = [[Fraction(0)] * n for _ in range(n)]
    i = 0
    for s in partition:
        for k in range(s - 1):
            J[i + k][i + k + 1] = Fraction(1)
        i += s
    return J


def random_invertible(rng, n):
    while True:
        S = [[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)]
        if linalg.rank(S) == n:
            return S


def inverse(S):
    n = len(S)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(S)]
    red, _ = linalg.rref(aug)
    return [row[n:] for row in red]


def random_nilpotent(rng):
    if rng.random() < 0.25:
        # strictly upper triangular, arbitrary rational entries
        return [[Fraction(rng.randint(-4, 4), rng.randint(1, 4)) if j > i else Fraction(0) for j in range(4)]
                for i in range(4)]
    S = random_invertible(rng, 4)
    J = jordan_nilpotent(rng.choice(PARTITIONS))
    return linalg.matmul(linalg.matmul(S, J), inverse(S))


@pytest.mark.criterion(6)
def test_axioms_on_200_random_nilpotents():
    rng = random.Random(20240611)
    for _ in range(200):
        N = random_nilpotent(rng)
        W = weight_filtration(N)
        assert check_axioms(N, W) == []


@pytest.mark.parametrize(
    "N,dims",
    [
        (N_I, (1, 3, 4)),
        (N_II, (2, 2, 4)),
        (N_III, (1, 1, 2, 2, 3, 3, 4)),
    ],
)
def test_type_dims(N, dims):
    W = weight_filtration(N)
    assert W.dim_list() == dims
    assert check_axioms(N, W) == []


def test_type_iii_middle_steps_are_ker_n2():
    W = weight_filtration(N_III)
    ker = linalg.kernel(linalg.matpow(linalg.to_fractions(N_III), 2))
    assert linalg.span(W.W(-1), 4) == linalg.span(ker, 4) == linalg.span(W.W(0), 4)


def test_zero_matrix_gives_whole_space():
    W = weight_filtration([[0] * 3] * 3)
    assert W.m == 0 and W.dim_list() == (3,)


def test_non_nilpotent_rejected():
    with pytest.raises(NotNilpotentError):
        weight_filtration([[1, 0], [0, 0]])


def test_check_axioms_detects_wrong_filtration():
    W = weight_filtration(N_II)
    wrong = type(W)(W.n, W.m, {**W.spaces, -1: []})
    assert check_axioms(N_II, wrong)
