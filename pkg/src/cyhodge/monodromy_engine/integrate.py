"""Analytic continuation by Taylor stepping.

Solutions are transported in the basis ``(y, theta y, ..., theta^{n-1} y)``.
A single step from ``c`` to ``c + h`` expands the local basis in ``u`` with
``z = c + h u`` and evaluates at ``u = 1``; the step is kept within half the
distance to the nearest singular point so the series converges like ``2^-m``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import mpmath

from ..theta_ops import ThetaOperator
from ..theta_ops.operator import stirling2

STEP_FRACTION = mpmath.mpf("0.5")
TERM_FACTOR = mpmath.mpf("1e-12")  # Taylor truncation relative to tol
MAX_TERMS = 4000
MAX_STEPS = 20000


class IntegrationError(RuntimeError):
    def __init__(self, message: str, segment=None):
        super().__init__(message if segment is None else f"{message} on segment {segment}")
        self.segment = segment


@dataclass
class Transport:
    matrix: mpmath.matrix
    error: mpmath.mpf
    steps: int


def _falling(x: int, k: int) -> int:
    r = 1
    for t in range(k):
        r *= x - t
    return r


class TaylorIntegrator:
    """Transition matrices of a theta-operator between nonsingular points."""

    def __init__(self, op: ThetaOperator, singular, dps: int = 50, tol=None):
        self.op = op
        self.n = op.order
        self.dps = dps
        with mpmath.workdps(dps):
            self.tol = mpmath.mpf(tol) if tol is not None else mpmath.mpf(10) ** (-(dps - 20))
            self.singular = [mpmath.mpc(s) for s in singular]
            self.dform = [
                [mpmath.mpf(c.numerator) / c.denominator for c in p.coeffs] for p in op.dform()
            ]

    # -- local pieces --------------------------------------------------------

    def distance_to_singular(self, c) -> mpmath.mpf:
        return min(abs(c - s) for s in self.singular) if self.singular else mpmath.inf

    def theta_matrix(self, c) -> mpmath.matrix:
        """``S[k][j]`` with ``theta^k y = sum_j S[k][j] y^{(j)} / j!``, at ``z = c``."""
        n = self.n
        s = mpmath.zeros(n, n)
        for k in range(n):
            for j in range(k + 1):
                s[k, j] = stirling2(k, j) * mpmath.factorial(j) * c**j
        return s

    def _shifted(self, coeffs, c, h):
        """Coefficients in ``u`` of ``p(c + h u)``."""
        a = [mpmath.mpc(x) for x in coeffs]
        m = len(a)
        for i in range(m - 1):
            for j in range(m - 2, i - 1, -1):
                a[j] += c * a[j + 1]
        hp = mpmath.mpc(1)
        for j in range(m):
            a[j] *= hp
            hp *= h
        return a

    def step(self, c, h) -> tuple[mpmath.matrix, mpmath.mpf]:
        """Transition matrix from ``c`` to ``c + h`` in normalized derivatives.

        Column ``s`` holds ``y^{(j)}(c+h) / j!`` for the solution with
        ``y^{(j)}(c) / j! = delta_{js}``.
        """
        n = self.n
        q = []
        for k, p in enumerate(self.dform):
            w = self._shifted(p, c, h)
            sc = h ** (n - k)
            q.append([x * sc for x in w])
        lead = q[n][0]
        if lead == 0:
            raise IntegrationError("step starts at a singular point", (c, c + h))
        terms = [(k, i, q[k][i]) for k in range(n + 1) for i in range(len(q[k]))
                 if (k, i) != (n, 0) and q[k][i] != 0]
        # a[m][s]: coefficient of u^m of basis solution s (scaled variable)
        a = [[mpmath.mpc(1 if s == m else 0) for s in range(n)] for m in range(n)]
        eps = self.tol * TERM_FACTOR
        small = 0
        M = 0
        while True:
            acc = [mpmath.mpc(0)] * n
            for k, i, w in terms:
                idx = M - i + k
                if idx < k:
                    continue
                wf = w * _falling(idx, k)
                row = a[idx]
                for s in range(n):
                    acc[s] += wf * row[s]
            d = -1 / (lead * _falling(M + n, n))
            new = [x * d for x in acc]
            a.append(new)
            M += 1
            mx = max(abs(x) for x in new)
            small = small + 1 if mx < eps else 0
            if small >= n:
                break
            if M > MAX_TERMS:
                raise IntegrationError("Taylor series did not converge", (c, c + h))
        # value and derivatives at u = 1 in the u-variable, then back to z
        out = mpmath.zeros(n, n)
        for j in range(n):
            for s in range(n):
                tot = mpmath.mpc(0)
                for m in range(j, len(a)):
                    if a[m][s] != 0:
                        tot += comb(m, j) * a[m][s]
                out[j, s] = tot
        hpow = [h**j for j in range(n)]
        for j in range(n):
            for s in range(n):
                out[j, s] = out[j, s] * hpow[s] / hpow[j]
        err = mx * (2 ** n)
        return out, err

    def transport(self, path) -> Transport:
        """Transition matrix along a polyline, in the theta basis."""
        with mpmath.workdps(self.dps):
            pts = [mpmath.mpc(p) for p in path]
            n = self.n
            total = mpmath.eye(n)
            err = mpmath.mpf(0)
            steps = 0
            for a, b in zip(pts, pts[1:]):
                c = a
                while True:
                    rem = b - c
                    if abs(rem) == 0:
                        break
                    dist = self.distance_to_singular(c)
                    if dist == 0:
                        raise IntegrationError("path hits a singular point", (a, b))
                    hmax = STEP_FRACTION * dist
                    h = rem if abs(rem) <= hmax else rem * (hmax / abs(rem))
                    phi, e = self.step(c, h)
                    # convert normalized-derivative basis to theta basis
                    conv = self.theta_matrix(c + h) * phi * mpmath.inverse(self.theta_matrix(c))
                    total = conv * total
                    err += e * mpmath.mnorm(total, 1)
                    steps += 1
                    if steps > MAX_STEPS:
                        raise IntegrationError("too many steps", (a, b))
                    c = c + h
                    if abs(b - c) < mpmath.mpf(10) ** (-self.dps + 5) * max(1, abs(b)):
                        break
            return Transport(total, err, steps)
