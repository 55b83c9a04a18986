"""Second-order volume corrections for the twisted family K(n, N).

Filling the two auxiliary cusps with slopes ``1/(n+1)`` and ``1/(2N-n+2)``
shrinks the volume by ``pi^2`` times the sum of reciprocal squared slope
lengths, where a ``(1, l)`` curve on a unit-area square torus has squared
length ``1 + l^2``.  The higher-order error term is not modelled, and
hyperbolicity of the fillings is assumed rather than checked.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .errors import DomainError

__all__ = [
    "FillingSlope",
    "CorrectionRow",
    "CorrectionTable",
    "MonotonicityResult",
    "nz_correction",
    "vol_estimate",
    "monotonicity_check",
    "distinct_corrections",
    "DEFAULT_VOL_M",
]

# Volume of the three-cusped complement, an external input.
DEFAULT_VOL_M = 23.449


@dataclass(frozen=True)
class FillingSlope:
    p: int
    q: int

    def __post_init__(self):
        if (self.p, self.q) == (0, 0):
            raise DomainError("slope 0/0 is not a slope")
        if gcd(abs(self.p), abs(self.q)) != 1:
            raise DomainError(f"slope {self.p}/{self.q} is not in lowest terms")

    @property
    def squared_length(self) -> int:
        return self.p ** 2 + self.q ** 2

    def __str__(self):
        return f"{self.p}/{self.q}"


def _check(n, N):
    if not (isinstance(n, int) and isinstance(N, int)) or N < 1 or not 1 <= n <= 2 * N:
        raise DomainError(f"need 1 <= n <= 2N with N >= 1, got (n, N) = ({n}, {N})")


def slopes(n: int, N: int):
    """Slopes ``(B, R) = (1/(n+1), 1/(2N-n+2))``."""
    _check(n, N)
    return FillingSlope(1, n + 1), FillingSlope(1, 2 * N - n + 2)


def nz_correction(n: int, N: int) -> Fraction:
    """Exact ``1/(1+(n+1)^2) + 1/(1+(2N-n+2)^2)``."""
    b, r = slopes(n, N)
    return Fraction(1, b.squared_length) + Fraction(1, r.squared_length)


def vol_estimate(vol_m: float, n: int, N: int) -> float:
    if not vol_m > 0:
        raise DomainError(f"Vol(M) must be positive, got {vol_m}")
    return vol_m - math.pi ** 2 * float(nz_correction(n, N))


@dataclass(frozen=True)
class CorrectionRow:
    n: int
    slope_b: FillingSlope
    slope_r: FillingSlope
    correction: Fraction


@dataclass(frozen=True)
class CorrectionTable:
    N: int
    rows: tuple
    distinct: bool

    def to_csv(self, vol_m: float = DEFAULT_VOL_M) -> str:
        out = io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["n", "qB", "qR", "correction_num", "correction_den", "vol_estimate"])
        for row in self.rows:
            est = vol_m - math.pi ** 2 * float(row.correction)
            w.writerow([row.n, row.slope_b.q, row.slope_r.q, row.correction.numerator,
                        row.correction.denominator, f"{est:.12f}"])
        return out.getvalue()


def distinct_corrections(N: int) -> CorrectionTable:
    """Corrections for ``n = 1..N``; distinctness is decided with exact rationals."""
    if not isinstance(N, int) or N < 1:
        raise DomainError(f"N must be a positive integer, got {N}")
    rows = []
    for n in range(1, N + 1):
        b, r = slopes(n, N)
        rows.append(CorrectionRow(n, b, r, Fraction(1, b.squared_length)
                                  + Fraction(1, r.squared_length)))
    values = [row.correction for row in rows]
    return CorrectionTable(N, tuple(rows), len(set(values)) == len(values))


@dataclass(frozen=True)
class MonotonicityResult:
    ok: bool
    counterexample: tuple = None  # ((x0, f0), (x1, f1)) or ("derivative", x)

    def __bool__(self):
        return self.ok


def monotonicity_check(C: float, grid_points: int = 100_000) -> MonotonicityResult:
    """Grid check that ``1/(1+x^2) + 1/(1+(C-x)^2)`` strictly decreases on ``(1/sqrt 3, C/2)``.

    Also compares ``x/(1+x^2)^2`` against ``(C-x)/(1+(C-x)^2)^2``: the left side
    must stay strictly larger, so ``f'`` has no root inside the interval.
    """
    if not C > 2:
        raise DomainError(f"C must exceed 2, got {C}")
    if grid_points < 1000:
        raise DomainError(f"need at least 1000 grid points, got {grid_points}")
    lo, hi = 1 / math.sqrt(3), C / 2
    eps = (hi - lo) / grid_points
    x = np.linspace(lo + eps, hi - eps, grid_points)
    y = C - x
    f = 1 / (1 + x * x) + 1 / (1 + y * y)
    bad = np.nonzero(np.diff(f) >= 0)[0]
    if bad.size:
        i = int(bad[0])
        return MonotonicityResult(False, ((float(x[i]), float(f[i])),
                                          (float(x[i + 1]), float(f[i + 1]))))
    lhs = x / (1 + x * x) ** 2
    rhs = y / (1 + y * y) ** 2
    bad = np.nonzero(lhs <= rhs)[0]
    if bad.size:
        return MonotonicityResult(False, ("derivative", float(x[int(bad[0])])))
    return MonotonicityResult(True)
