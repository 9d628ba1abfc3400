"""Elementary cellular automata on finite-support rows.

Rows are stored bit-packed: cell ``offset + j`` is bit ``j`` of an int.
That makes one Rule 150 step three shifts and two xors, and keeps
equality testing exact after canonical trimming.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import DomainError, OddRuleCodeError

RULE_150 = 150


def _trim(offset: int, bits: int) -> tuple[int, int, int]:
    if bits == 0:
        return 0, 0, 0
    shift = (bits & -bits).bit_length() - 1
    bits >>= shift
    return offset + shift, bits, bits.bit_length()


@dataclass(frozen=True)
class Configuration:
    """A row of cells with finite support.

    Canonical form: the row is empty, or its first and last stored cells
    are both 1.  Cell lookups outside the stored window return 0.
    """

    offset: int
    bits: int
    width: int

    def __post_init__(self) -> None:
        if self.bits == 0:
            if self.offset != 0 or self.width != 0:
                raise DomainError("empty configuration must be (0, 0, 0)")
        elif self.bits % 2 == 0 or self.bits.bit_length() != self.width:
            raise DomainError("configuration not canonical")

    @classmethod
    def empty(cls) -> "Configuration":
        return cls(0, 0, 0)

    @classmethod
    def make(cls, offset: int, bits: int) -> "Configuration":
        """Canonicalize an (offset, packed bits) pair."""
        return cls(*_trim(offset, bits))

    @classmethod
    def from_cells(cls, offset: int, cells) -> "Configuration":
        bits = 0
        for j, c in enumerate(cells):
            if c not in (0, 1):
                raise DomainError("cells must be 0 or 1")
            bits |= c << j
        return cls.make(offset, bits)

    def cell(self, i: int) -> int:
        j = i - self.offset
        if 0 <= j < self.width:
            return (self.bits >> j) & 1
        return 0

    def cells(self) -> list[int]:
        return [(self.bits >> j) & 1 for j in range(self.width)]

    def ones(self) -> Iterator[int]:
        """Indices of cells with value 1, in increasing order."""
        bits, j = self.bits, 0
        while bits:
            if bits & 1:
                yield self.offset + j
            bits >>= 1
            j += 1

    def popcount(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0


def single_site_seed() -> Configuration:
    """The configuration with a single 1 at index 0."""
    return Configuration(0, 1, 1)


def step_rule150(c: Configuration) -> Configuration:
    """One step of the rule: new cell i is (left + center + right) mod 2."""
    b = c.bits
    return Configuration.make(c.offset - 1, b ^ (b << 1) ^ (b << 2))


def _check_code(wolfram_code: int) -> None:
    if not 0 <= wolfram_code <= 255:
        raise DomainError(f"Wolfram code out of range: {wolfram_code}")
    if wolfram_code % 2:
        raise OddRuleCodeError(
            f"rule {wolfram_code} maps 000 to 1; finite support not preserved"
        )


def step_generic(c: Configuration, wolfram_code: int) -> Configuration:
    """One step of an arbitrary even-coded elementary rule."""
    _check_code(wolfram_code)
    if wolfram_code == RULE_150:
        return step_rule150(c)
    out = 0
    base = c.offset - 1
    for j in range(c.width + 2):
        i = base + j
        idx = (c.cell(i - 1) << 2) | (c.cell(i) << 1) | c.cell(i + 1)
        if (wolfram_code >> idx) & 1:
            out |= 1 << j
    return Configuration.make(base, out)


def evolve(c: Configuration, n: int, rule: int = RULE_150) -> list[Configuration]:
    """Rows t = 0..n of the orbit of ``c`` (row 0 is ``c`` itself)."""
    if n < 0:
        raise DomainError("step count must be nonnegative")
    _check_code(rule)
    rows = [c]
    step = step_rule150 if rule == RULE_150 else (lambda r: step_generic(r, rule))
    for _ in range(n):
        rows.append(step(rows[-1]))
    return rows


@dataclass(frozen=True)
class PatternSet:
    """The nonzero cells (i, t) of a spatio-temporal pattern up to time n."""

    cells: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        for i, t in self.cells:
            if t < 0 or abs(i) > t:
                raise DomainError(f"cell {(i, t)} outside the light cone")

    def __len__(self) -> int:
        return len(self.cells)

    def __contains__(self, cell: tuple[int, int]) -> bool:
        return cell in self.cells


def pattern_cells(n: int, rule: int = RULE_150) -> PatternSet:
    """Cells (i, t) with (T^t seed)_i = 1 for 0 <= t <= n."""
    rows = evolve(single_site_seed(), n, rule)
    cells = frozenset((i, t) for t, row in enumerate(rows) for i in row.ones())
    return PatternSet(cells)
