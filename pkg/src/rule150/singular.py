"""The singular function F built from Rule 150 counts.

F(x) = sum_i x_i r(x)_i alpha^i over the binary digits of x, where
alpha = (sqrt5 - 1)/4 and r(x)_i is an integer coefficient streamed from
the first i-1 digits.  Four independent evaluation routes are provided:

* exact finite series at dyadic points,
* exact recursion through the three functional equations,
* exact matrix-geometric summation for eventually periodic expansions,
* rigorous interval enclosure for arbitrary bit streams.

A fifth route, the normalized count ratio F_k, serves as the
simulation-backed oracle the others are checked against.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .counting import cum_decompose, cum_pow2
from .errors import DomainError
from .quadratic import (
    ALPHA,
    ONE,
    ZERO,
    BitStream,
    Dyadic,
    Ones,
    Periodic,
    QSqrt5,
    Zeros,
    dyadic_of,
    ones_tail_of,
)

#: 1/(1 - 3*alpha) = 7 + 3*sqrt5, the geometric tail factor (3*alpha < 1)
INV_ONE_MINUS_3ALPHA = QSqrt5(7, 3)
#: alpha/(1 - 3*alpha) = sqrt5 + 2, the modulus-of-continuity constant
MODULUS_COEFFICIENT = QSqrt5(2, 1)
_ALPHA_PLUS_2ALPHA2 = ALPHA + 2 * (ALPHA * ALPHA)


class RunState:
    """Row vector a M_{x_1} ... M_{x_j}, streamed one digit at a time.

    After j digits, ``r`` is the series coefficient r_{j+1} = row . u0.
    The per-step growth of r is 1 (digit 0), 3 (first 1 of a run), or
    b_{l+1}/b_l < 3 (run extension), so r_{j+1} <= 3^j.
    """

    __slots__ = ("w1", "w2", "pos")

    def __init__(self) -> None:
        self.w1, self.w2 = 1, 0
        self.pos = 1

    @property
    def r(self) -> int:
        return self.w1 + self.w2

    @property
    def row(self) -> tuple[int, int]:
        return (self.w1, self.w2)

    def step(self, bit: int) -> None:
        if bit:
            self.w1, self.w2 = self.w1 + self.w2, 2 * self.w1
        else:
            self.w1, self.w2 = self.w1 + self.w2, 0
        self.pos += 1


def r_sequence(x: BitStream, k: int) -> list[int]:
    """Coefficients r(x)_1 .. r(x)_k (r_1 = 1 always)."""
    if k < 1:
        raise DomainError("k must be >= 1")
    state = RunState()
    out = [state.r]
    for bit in x.prefix(k - 1):
        state.step(bit)
        out.append(state.r)
    return out


def eval_dyadic_exact(x: Dyadic) -> QSqrt5:
    """Exact F at a dyadic point: the finite series over the terminating
    expansion (F(0) = 0, F(1) = 1)."""
    if x.num == 0:
        return ZERO
    if x.exp == 0:
        return ONE
    total = ZERO
    a_pow = ONE
    state = RunState()
    for bit in x.bits:
        a_pow = a_pow * ALPHA
        if bit:
            total = total + state.r * a_pow
        state.step(bit)
    return total


def eval_fk(x: Dyadic, k: int) -> Fraction:
    """The normalized count ratio at depth k, as an exact rational.

    F_k(x) = cum(floor(x 2^k) - 1) / cum(2^k - 1); the numerator comes
    from the decomposition over binary digits, so no simulation is run.
    """
    if k < 1:
        raise DomainError("k must be >= 1")
    if x.exp > k:
        raise DomainError(f"{x} has depth {x.exp} > {k}")
    scaled = x.num << (k - x.exp)
    numerator = 0 if scaled == 0 else cum_decompose(scaled)
    return Fraction(numerator, cum_pow2(k))


_RECURSION_MEMO: dict[tuple[int, int], QSqrt5] = {(0, 0): ZERO}


def eval_recursive_dyadic(x: Dyadic) -> QSqrt5:
    """Exact F at a dyadic point, using only the functional equations.

    F(x) = alpha F(2x)                                   on [0, 1/2)
    F(x) = 3 F(x - 1/2) + alpha                          on [1/2, 3/4)
    F(x) = F(x - 1/2) + 2 F(x - 3/4) + alpha + 2 alpha^2 on [3/4, 1]

    with the base case F(0) = 0; memoized on canonical (num, exp) keys.
    """
    key = (x.num, x.exp)
    hit = _RECURSION_MEMO.get(key)
    if hit is not None:
        return hit
    m, e = x.num, x.exp
    if 2 * m < (1 << e):  # x < 1/2
        val = ALPHA * eval_recursive_dyadic(Dyadic(m, e - 1))
    elif 4 * m < 3 * (1 << e):  # x < 3/4
        val = 3 * eval_recursive_dyadic(Dyadic(m - (1 << (e - 1)), e)) + ALPHA
    else:
        if e < 2:  # only x = 1 reaches here shallow; rescale to quarters
            m, e = m << (2 - e), 2
        val = (
            eval_recursive_dyadic(Dyadic(m - (1 << (e - 1)), e))
            + 2 * eval_recursive_dyadic(Dyadic(m - 3 * (1 << (e - 2)), e))
            + _ALPHA_PLUS_2ALPHA2
        )
    _RECURSION_MEMO[key] = val
    return val


@dataclass(frozen=True)
class Enclosure:
    """An exact interval [lo, hi] certified to contain a value."""

    lo: QSqrt5
    hi: QSqrt5

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise DomainError("enclosure bounds out of order")

    @property
    def width(self) -> QSqrt5:
        return self.hi - self.lo

    def __contains__(self, value) -> bool:
        return self.lo <= value <= self.hi


def eval_stream_enclosure(x: BitStream, eps: Union[int, Fraction]) -> Enclosure:
    """Rigorous enclosure of F(x) of width <= eps for any bit stream.

    After consuming i digits the unseen tail is bounded by
    r_{i+1} alpha^{i+1} / (1 - 3 alpha), using the live coefficient and
    the worst-case per-step growth factor 3; since 3 alpha < 1 the bound
    shrinks to zero and the loop terminates.  A Zeros tail is summed
    exactly instead (width 0).
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise DomainError("eps must be positive")
    eps_q = QSqrt5.from_fraction(eps)
    total = ZERO
    a_pow = ONE
    state = RunState()
    head_len = len(x.head)
    exact_after = head_len if isinstance(x.tail, Zeros) else None
    stream = x.bits()
    i = 0
    while True:
        if exact_after is not None and i >= exact_after:
            return Enclosure(total, total)
        bound = state.r * (a_pow * ALPHA) * INV_ONE_MINUS_3ALPHA
        if bound <= eps_q:
            return Enclosure(total, total + bound)
        bit = next(stream)
        i += 1
        a_pow = a_pow * ALPHA
        if bit:
            total = total + state.r * a_pow
        state.step(bit)


def eval_periodic_exact(head: Sequence[int], period: Sequence[int]) -> QSqrt5:
    """Exact F for an eventually periodic expansion head (period)*.

    The periodic tail is a matrix-geometric series: with P the digit
    product over one period and c the within-period contribution vector,
    the tail equals alpha^H w (I - alpha^p P)^{-1} c for the integer row
    vector w reached after the head.  The 2x2 system is solved exactly by
    Cramer's rule; the matrix is never singular because the entries of P
    are at most 3^p while (3 alpha)^p < 1.
    """
    period = tuple(period)
    if not period:
        raise DomainError("period must be nonempty")
    # consume the head like the finite series
    total = ZERO
    a_pow = ONE
    state = RunState()
    for bit in head:
        if bit not in (0, 1):
            raise DomainError(f"not a bit: {bit!r}")
        a_pow = a_pow * ALPHA
        if bit:
            total = total + state.r * a_pow
        state.step(bit)
    w1, w2 = state.row

    # one pass over the period: prefix products feed c, full product is P
    p11, p12, p21, p22 = 1, 0, 0, 1
    c1, c2 = ZERO, ZERO
    ap = ONE
    for bit in period:
        if bit not in (0, 1):
            raise DomainError(f"not a bit: {bit!r}")
        ap = ap * ALPHA
        if bit:
            c1 = c1 + (p11 + p12) * ap
            c2 = c2 + (p21 + p22) * ap
            p11, p12 = p11 + p12, 2 * p11
            p21, p22 = p21 + p22, 2 * p21
        else:
            p11, p12 = p11 + p12, 0
            p21, p22 = p21 + p22, 0

    s11 = ONE - ap * p11
    s12 = -(ap * p12)
    s21 = -(ap * p21)
    s22 = ONE - ap * p22
    det = s11 * s22 - s12 * s21
    assert det.sign() != 0, "spectral radius of alpha^p P must be < 1"
    y1 = (c1 * s22 - c2 * s12) / det
    y2 = (c2 * s11 - c1 * s21) / det
    return total + a_pow * (w1 * y1 + w2 * y2)


def check_dual_representation(x: Dyadic) -> bool:
    """True iff both binary expansions of a dyadic in (0,1) give the same F."""
    zeros_tail = eval_dyadic_exact(x)
    alt = ones_tail_of(x)  # validates 0 < x < 1
    ones_tail = eval_periodic_exact(alt.head, (1,))
    return zeros_tail == ones_tail


def eval_bitstream_exact(x: BitStream) -> QSqrt5:
    """Exact F for Zeros/Ones/Periodic-tailed streams (dispatch helper)."""
    tail = x.tail
    if isinstance(tail, Zeros):
        return eval_dyadic_exact(dyadic_of(x.head))
    if isinstance(tail, Ones):
        return eval_periodic_exact(x.head, (1,))
    if isinstance(tail, Periodic):
        return eval_periodic_exact(x.head, tail.word)
    raise DomainError("generator streams only admit enclosures")
