"""Numeric matrix helpers on top of mpmath."""

from __future__ import annotations

import mpmath

RANK_RELATIVE_THRESHOLD = mpmath.mpf("1e-15")
RANK_MIN_GAP = mpmath.mpf("1e10")


class RankAmbiguityError(ArithmeticError):
    """Singular values do not separate cleanly into zero and nonzero."""

    def __init__(self, message: str, singular_values=()):
        super().__init__(message)
        self.singular_values = tuple(singular_values)


def identity(n: int) -> mpmath.matrix:
    return mpmath.eye(n)


def frob_norm(m) -> mpmath.mpf:
    return mpmath.mnorm(m, "f")


def matpow(m, k: int):
    out = mpmath.eye(m.rows)
    for _ in range(k):
        out = out * m
    return out


def singular_values(m) -> list:
    s = mpmath.svd_c(mpmath.matrix(m), compute_uv=False)
    return sorted((abs(x) for x in s), reverse=True)


def numeric_rank(m, reference=None, threshold=RANK_RELATIVE_THRESHOLD, min_gap=RANK_MIN_GAP) -> int:
    """Rank of ``m``; singular values below ``threshold * scale`` count as zero.

    ``scale`` is the larger of the top singular value and ``reference`` (the
    norm of the matrix the input was derived from), so a matrix that is
    numerically zero as a whole gets rank 0.  The ratio between the smallest
    accepted and the largest rejected singular value must reach ``min_gap``.
    """
    sv = singular_values(m)
    if not sv:
        return 0
    scale = max(sv[0], abs(reference) if reference is not None else 0)
    if scale == 0:
        return 0
    cut = threshold * scale
    kept = [s for s in sv if s >= cut]
    dropped = [s for s in sv if s < cut]
    if kept and dropped and dropped[0] > 0 and kept[-1] / dropped[0] < min_gap:
        raise RankAmbiguityError(
            f"ambiguous numeric rank: gap {mpmath.nstr(kept[-1] / dropped[0], 5)} below {mpmath.nstr(min_gap, 3)}",
            sv,
        )
    return len(kept)


def nilpotent_log_series(t):
    """``log t`` for unipotent ``t`` via the terminating series in ``t - I``."""
    n = t.rows
    x = t - mpmath.eye(n)
    out = mpmath.zeros(n, n)
    p = mpmath.eye(n)
    for k in range(1, n + 1):
        p = p * x
        out += p * (mpmath.mpf((-1) ** (k + 1)) / k)
    return out


def nilpotent_exp_series(nmat):
    n = nmat.rows
    out = mpmath.eye(n)
    p = mpmath.eye(n)
    for k in range(1, n + 1):
        p = p * nmat / k
        out += p
    return out


def to_complex_rows(m) -> list[list[complex]]:
    return [[complex(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]
