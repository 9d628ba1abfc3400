"""Differentiability probes for the singular function.

At a dyadic point the left difference quotients diverge while the right
ones vanish, so the function has no derivative there; at typical points
the bracketing dyadic quotient 2^k r_k alpha^k collapses to zero.  All
probe values are exact Q(sqrt5) elements, so divergence and vanishing
are decidable comparisons rather than float heuristics.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DomainError
from .quadratic import (
    ALPHA,
    ONE,
    TWO_ALPHA,
    BitStream,
    Dyadic,
    Generator,
    QSqrt5,
)
from .singular import Enclosure, RunState

_ONE_MINUS_2ALPHA = ONE - TWO_ALPHA
_ONE_PLUS_ALPHA = ONE + ALPHA
#: per-stream seed spacing for derivative_zero_sample (documented scheme)
_SEED_STRIDE = 1_000_003


def _coefficient(bits: tuple[int, ...]) -> int:
    state = RunState()
    for b in bits:
        state.step(b)
    return state.r


def _require_interior_dyadic(x: Dyadic) -> int:
    if x.num == 0 or x.exp == 0:  # canonical endpoints are (0,0) and (1,0)
        raise DomainError(f"{x} is not a dyadic in (0, 1)")
    return x.exp


def tail_ones_series(start: int) -> QSqrt5:
    """sum_{i >= start} b_i alpha^i in closed form (the full sum is 1)."""
    if start < 1:
        raise DomainError("start must be >= 1")
    two_alpha_pow = TWO_ALPHA**start
    neg_alpha_pow = (-ALPHA) ** start
    return (2 * two_alpha_pow / _ONE_MINUS_2ALPHA + neg_alpha_pow / _ONE_PLUS_ALPHA) / 3


def left_quotient(x: Dyadic, m: int) -> QSqrt5:
    """(F(x) - F(y_m)) / (x - y_m) for y_m = x - 2^-m, exactly.

    x must terminate at bit k and m > k.  Closed form:
    2^m r(x)_k alpha^k sum_{i >= m-k+1} b_i alpha^i, which grows like
    (4 alpha)^m and diverges since 4 alpha = sqrt5 - 1 > 1.
    """
    k = _require_interior_dyadic(x)
    if m <= k:
        raise DomainError(f"need m > {k} for depth-{k} point")
    r_k = _coefficient(x.bits[:-1])
    return (r_k << m) * ALPHA**k * tail_ones_series(m - k + 1)


def right_quotient(x: Dyadic, m: int) -> QSqrt5:
    """(F(z_m) - F(x)) / (z_m - x) for z_m = x + 2^(1-m), exactly.

    Equals r(x)_{k+1} (2 alpha)^(m-1), which vanishes since 2 alpha < 1.
    """
    k = _require_interior_dyadic(x)
    if m < k + 2:
        raise DomainError(f"need m >= {k + 2} for depth-{k} point")
    r_next = _coefficient(x.bits)
    return r_next * TWO_ALPHA ** (m - 1)


def dyadic_quotient_statistic(x: BitStream, k: int) -> QSqrt5:
    """The bracketing difference quotient 2^k r(x)_k alpha^k at depth k."""
    if k < 1:
        raise DomainError("k must be >= 1")
    return _coefficient(x.prefix(k - 1)) * TWO_ALPHA**k


def stream_seed(base: int, index: int) -> int:
    """Derived seed of the index-th stream in a sampling run."""
    return base * _SEED_STRIDE + index


def derivative_zero_sample(seed: int, count: int, k: int) -> Fraction:
    """Fraction of seeded random streams whose depth-k quotient statistic
    falls below 10^-3 (exact comparison)."""
    if count < 1 or k < 1:
        raise DomainError("count and k must be >= 1")
    threshold = QSqrt5.from_fraction(Fraction(1, 1000))
    factor = TWO_ALPHA**k
    below = 0
    for i in range(count):
        stream = BitStream((), Generator(stream_seed(seed, i)))
        if _coefficient(stream.prefix(k - 1)) * factor < threshold:
            below += 1
    return Fraction(below, count)


@dataclass(frozen=True)
class QuotientReport:
    """One probe row: which point, which side, which depth, what value."""

    point: str
    side: str
    m: int
    value: Union[QSqrt5, Enclosure]

    def to_row(self, digits: int = 12) -> dict:
        row: dict = {"point": self.point, "side": self.side, "m": self.m}
        if isinstance(self.value, Enclosure):
            row["value_decimal"] = self.value.lo.to_decimal(digits)
            row["value_decimal_hi"] = self.value.hi.to_decimal(digits)
        else:
            row["value_decimal"] = self.value.to_decimal(digits)
            row["exact_p"] = self.value.p
            row["exact_q"] = self.value.q
            row["exact_d"] = self.value.d
        return row


def quotient_report(x: Dyadic, m_max: int, side: str) -> list[QuotientReport]:
    """Probe rows for a dyadic point, m running up to m_max."""
    k = _require_interior_dyadic(x)
    point = str(x)
    rows: list[QuotientReport] = []
    if side in ("left", "both"):
        rows += [
            QuotientReport(point, "left", m, left_quotient(x, m))
            for m in range(k + 1, m_max + 1)
        ]
    if side in ("right", "both"):
        rows += [
            QuotientReport(point, "right", m, right_quotient(x, m))
            for m in range(k + 2, m_max + 1)
        ]
    if side == "symmetric":
        from .quadratic import bits_of

        stream = bits_of(x)
        rows += [
            QuotientReport(point, "symmetric", m, dyadic_quotient_statistic(stream, m))
            for m in range(1, m_max + 1)
        ]
    if not rows:
        raise DomainError(f"no admissible m <= {m_max} for side {side!r}")
    return rows
