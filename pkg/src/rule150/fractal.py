"""Prefractal bitmaps, self-similarity checks, and dimension estimates.

The limit set of the orbit has box-counting dimension log2(1 + sqrt5);
because doubling the time window maps cells (i, t) to (2i, 2t) exactly,
occupied boxes at scale 2^-j correspond one-to-one to cells counted by
cum(2^j - 1), so the slope can use exact counts far beyond what a pixel
grid could hold.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from . import eca
from .counting import cum_pow2
from .errors import DomainError, ResourceLimitError

#: largest prefractal exponent we will materialize as a bitmap
PREFRACTAL_MAX_K = 14


@dataclass(frozen=True)
class Bitmap:
    """A packed binary image: bit c of rows[r] is the pixel at column c."""

    width: int
    height: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1 or len(self.rows) != self.height:
            raise DomainError("inconsistent bitmap dimensions")
        for row in self.rows:
            if row < 0 or row.bit_length() > self.width:
                raise DomainError("row data wider than bitmap")

    def pixel(self, col: int, row: int) -> int:
        if not (0 <= col < self.width and 0 <= row < self.height):
            raise DomainError("pixel outside bitmap")
        return (self.rows[row] >> col) & 1

    def popcount(self) -> int:
        return sum(row.bit_count() for row in self.rows)


def light_cone_bitmap(configs: list[eca.Configuration]) -> Bitmap:
    """Render rows t = 0..n onto the light cone grid, origin centered."""
    n = len(configs) - 1
    center = n
    rows = tuple(cfg.bits << (cfg.offset + center) for cfg in configs)
    return Bitmap(2 * n + 1, n + 1, rows)


def prefractal(k: int) -> Bitmap:
    """The cells of the pattern up to time 2^k - 1 as a 2^k x (2^(k+1)-1) image."""
    if k < 1:
        raise DomainError("k must be >= 1")
    if k > PREFRACTAL_MAX_K:
        raise ResourceLimitError(f"prefractal guard is k <= {PREFRACTAL_MAX_K}")
    configs = eca.evolve(eca.single_site_seed(), (1 << k) - 1)
    return light_cone_bitmap(configs)


def subsample_even(c: eca.Configuration) -> eca.Configuration:
    """Subsample a row at even cell indices (requires even offset)."""
    if c.offset % 2:
        raise DomainError("row offset must be even to subsample")
    packed = bin(c.bits)[2:][::-1]  # LSB first
    sub = packed[::2][::-1]
    return eca.Configuration.make(c.offset // 2, int(sub, 2) if sub else 0)


def selfsim_check(k: int) -> bool:
    """Does the even-coordinate subsample of even rows reproduce level k-1?"""
    if k < 2:
        raise DomainError("k must be >= 2")
    rows = eca.evolve(eca.single_site_seed(), (1 << k) - 2)
    half = 1 << (k - 1)
    for t in range(half):
        if subsample_even(rows[2 * t]) != rows[t]:
            return False
    return True


def boxcount_slope(jmin: int, jmax: int) -> float:
    """Least-squares slope of log2 cum(2^j - 1) against j on [jmin, jmax].

    Converges to log2(1 + sqrt5) ~ 1.694242 as the window moves right.
    Rounded to 6 decimal places.
    """
    if not (2 <= jmin < jmax <= 64):
        raise DomainError("need 2 <= jmin < jmax <= 64")
    xs = range(jmin, jmax + 1)
    ys = [math.log2(cum_pow2(j)) for j in xs]
    n = len(ys)
    x_mean = sum(xs) / n
    y_mean = sum(ys) / n
    sxy = sum((x - x_mean) * (y - y_mean) for x, y in zip(xs, ys))
    sxx = sum((x - x_mean) ** 2 for x in xs)
    return round(sxy / sxx, 6)


#: the target dimension, log(1 + sqrt5)/log 2, to slope precision
DIMENSION_TARGET = round(math.log2(1 + math.sqrt(5)), 6)
