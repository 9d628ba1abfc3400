"""Nonzero-state counts for Rule 150, by three independent methods.

``num(n)`` counts the 1s in row n of the orbit from the single site seed,
``cum(n)`` is its running total over rows 0..n.  Both are computed by
direct simulation, by 2x2 matrix products over the binary digits of n,
and by closed forms, all in exact integer arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import eca
from .errors import DomainError
from .quadratic import QSqrt5


@dataclass(frozen=True)
class Mat2:
    """2x2 integer matrix [[a, b], [c, d]]."""

    a: int
    b: int
    c: int
    d: int

    def __matmul__(self, o: "Mat2") -> "Mat2":
        return Mat2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def __pow__(self, n: int) -> "Mat2":
        if n < 0:
            raise DomainError("matrix power requires n >= 0")
        result = Mat2(1, 0, 0, 1)
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def apply_row(self, row: tuple[int, int]) -> tuple[int, int]:
        r1, r2 = row
        return (r1 * self.a + r2 * self.c, r1 * self.b + r2 * self.d)

    def apply_col(self, col: tuple[int, int]) -> tuple[int, int]:
        c1, c2 = col
        return (self.a * c1 + self.b * c2, self.c * c1 + self.d * c2)


#: transition matrix for cum over doubling time windows
M = Mat2(2, 4, 1, 0)
#: per-binary-digit transition matrices for num
M0 = Mat2(1, 0, 1, 0)
M1 = Mat2(1, 2, 1, 0)
A_ROW = (1, 0)
U0 = (1, 1)
V0 = (4, 1)


def cluster_factor(run_length: int) -> int:
    """Count contributed by one maximal run of ``run_length`` 1-digits."""
    if run_length < 0:
        raise DomainError("run length must be >= 0")
    return (2 ** (run_length + 2) + (-1) ** (run_length + 1)) // 3


def ones_coefficient(i: int) -> int:
    """b_i: the series coefficient of the all-ones expansion (b_1 = 1)."""
    if i < 1:
        raise DomainError("coefficient index starts at 1")
    return cluster_factor(i - 1)


# -- direct simulation -------------------------------------------------------


def num_series(n_max: int) -> list[int]:
    """[num(0), .., num(n_max)] in one evolution pass."""
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    row = eca.single_site_seed()
    out = [row.popcount()]
    for _ in range(n_max):
        row = eca.step_rule150(row)
        out.append(row.popcount())
    return out


def cum_series(n_max: int) -> list[int]:
    """[cum(0), .., cum(n_max)] in one evolution pass."""
    out = num_series(n_max)
    total = 0
    for i, v in enumerate(out):
        total += v
        out[i] = total
    return out


def num_direct(n: int) -> int:
    if n < -1:
        raise DomainError("num is defined for n >= -1")
    if n == -1:
        return 0
    return num_series(n)[-1]


def cum_direct(n: int) -> int:
    if n < -1:
        raise DomainError("cum is defined for n >= -1")
    if n == -1:
        return 0
    return cum_series(n)[-1]


# -- matrix products over binary digits --------------------------------------


def num_matrix(n: int) -> int:
    """a M_{digit} ... M_{digit} u0 over the binary digits of n, MSB first."""
    if n < 0:
        raise DomainError("num_matrix requires n >= 0")
    row = A_ROW
    if n:
        for ch in bin(n)[2:]:
            row = (M1 if ch == "1" else M0).apply_row(row)
    return row[0] * U0[0] + row[1] * U0[1]


def num_cluster(n: int) -> int:
    """Product of cluster factors over maximal 1-runs in the binary digits."""
    if n < 0:
        raise DomainError("num_cluster requires n >= 0")
    result = 1
    for run in bin(n)[2:].split("0"):
        if run:
            result *= cluster_factor(len(run))
    return result


@lru_cache(maxsize=None)
def cum_pow2(k: int) -> int:
    """cum(2^k - 1) = a M^(k-1) v0, via exponentiation by squaring."""
    if k < 1:
        raise DomainError("cum_pow2 requires k >= 1")
    col = (M ** (k - 1)).apply_col(V0)
    return col[0]


def cum_pow2_closed(k: int) -> QSqrt5:
    """cum(2^k - 1) as the exact Q(sqrt5) closed form.

    The sqrt5 part cancels, so the result is checkable as an integer.
    """
    if k < 1:
        raise DomainError("cum_pow2_closed requires k >= 1")
    plus = QSqrt5(1, 1) ** (k + 2)
    minus = QSqrt5(1, -1) ** (k + 2)
    return QSqrt5(0, 1, 20) * (plus - minus)


def _cum_pow2_or_one(j: int) -> int:
    # cum(2^0 - 1) = cum(0) = 1 extends the decomposition to the last digit
    return 1 if j == 0 else cum_pow2(j)


def cum_decompose(m: int) -> int:
    """cum(m - 1) as a sum of prefix counts times power-of-two cums.

    Streams the binary digits x_1..x_k of m (MSB first), keeping the row
    vector a M_{x_1} .. M_{x_{i-1}}, whose dot with u0 is num(prefix).
    Each 1-digit at position i contributes num(prefix) * cum(2^(k-i) - 1).
    """
    if m <= 0:
        raise DomainError("cum_decompose requires m >= 1")
    digits = bin(m)[2:]
    k = len(digits)
    row = A_ROW
    total = 0
    for i, ch in enumerate(digits, start=1):
        if ch == "1":
            total += (row[0] * U0[0] + row[1] * U0[1]) * _cum_pow2_or_one(k - i)
            row = M1.apply_row(row)
        else:
            row = M0.apply_row(row)
    return total
