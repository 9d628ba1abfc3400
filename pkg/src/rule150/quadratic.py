"""Exact arithmetic in Q(sqrt 5), dyadic rationals, and binary bit streams.

No hardware floats anywhere: signs and comparisons reduce to integer
square comparisons, decimal output goes through integer square roots.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence, Union

from .errors import DomainError


def _sign(n: int) -> int:
    return (n > 0) - (n < 0)


@dataclass(frozen=True)
class QSqrt5:
    """The field element (p + q*sqrt5) / d, kept in lowest terms with d > 0.

    Canonical form makes equality structural: two values are equal iff
    their (p, q, d) triples are.
    """

    p: int
    q: int = 0
    d: int = 1

    def __post_init__(self) -> None:
        p, q, d = self.p, self.q, self.d
        if d == 0:
            raise ZeroDivisionError("denominator is zero")
        if d < 0:
            p, q, d = -p, -q, -d
        g = math.gcd(p, q, d)
        if g > 1:
            p, q, d = p // g, q // g, d // g
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "d", d)

    # -- construction ---------------------------------------------------

    @classmethod
    def from_fraction(cls, x: Union[int, Fraction]) -> "QSqrt5":
        f = Fraction(x)
        return cls(f.numerator, 0, f.denominator)

    @staticmethod
    def _coerce(other) -> "QSqrt5":
        if isinstance(other, QSqrt5):
            return other
        if isinstance(other, (int, Fraction)):
            return QSqrt5.from_fraction(other)
        return NotImplemented

    # -- predicates -----------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    @property
    def is_integer(self) -> bool:
        return self.q == 0 and self.d == 1

    def to_fraction(self) -> Fraction:
        if self.q != 0:
            raise DomainError(f"{self!r} is irrational")
        return Fraction(self.p, self.d)

    # -- field operations -------------------------------------------------

    def __add__(self, other) -> "QSqrt5":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QSqrt5(
            self.p * o.d + o.p * self.d,
            self.q * o.d + o.q * self.d,
            self.d * o.d,
        )

    __radd__ = __add__

    def __neg__(self) -> "QSqrt5":
        return QSqrt5(-self.p, -self.q, self.d)

    def __sub__(self, other) -> "QSqrt5":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "QSqrt5":
        return (-self) + other

    def __mul__(self, other) -> "QSqrt5":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QSqrt5(
            self.p * o.p + 5 * self.q * o.q,
            self.p * o.q + self.q * o.p,
            self.d * o.d,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QSqrt5":
        if self.p == 0 and self.q == 0:
            raise ZeroDivisionError("inverse of zero")
        # 1/((p+q*s)/d) = d*(p-q*s) / (p^2 - 5 q^2); the norm is nonzero
        # for nonzero elements because sqrt 5 is irrational.
        norm = self.p * self.p - 5 * self.q * self.q
        return QSqrt5(self.d * self.p, -self.d * self.q, norm)

    def __truediv__(self, other) -> "QSqrt5":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> "QSqrt5":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> "QSqrt5":
        if n < 0:
            return self.inverse() ** (-n)
        result = QSqrt5(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- order ------------------------------------------------------------

    def sign(self) -> int:
        """Exact sign under the real embedding with sqrt 5 > 0."""
        p, q = self.p, self.q
        if q == 0:
            return _sign(p)
        if p == 0:
            return _sign(q)
        if p > 0 and q > 0:
            return 1
        if p < 0 and q < 0:
            return -1
        # mixed signs: |p| vs |q|*sqrt5 decides; equality cannot happen
        return _sign(p) if p * p > 5 * q * q else _sign(q)

    def compare(self, other) -> int:
        o = self._coerce(other)
        if o is NotImplemented:
            raise TypeError(f"cannot compare QSqrt5 with {type(other).__name__}")
        return (self - o).sign()

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self.p, self.q, self.d) == (o.p, o.q, o.d)

    def __hash__(self) -> int:
        if self.q == 0:
            return hash(Fraction(self.p, self.d))
        return hash((self.p, self.q, self.d))

    def __lt__(self, other) -> bool:
        return self.compare(other) < 0

    def __le__(self, other) -> bool:
        return self.compare(other) <= 0

    def __gt__(self, other) -> bool:
        return self.compare(other) > 0

    def __ge__(self, other) -> bool:
        return self.compare(other) >= 0

    def __abs__(self) -> "QSqrt5":
        return -self if self.sign() < 0 else self

    # -- rendering ----------------------------------------------------------

    def floor(self) -> int:
        if self.q == 0:
            return self.p // self.d
        # floor(q*sqrt5) is exact: 5*q^2 is never a perfect square for q != 0,
        # so q*sqrt5 sits strictly between consecutive integers and no integer
        # lies in (p + floor(q*sqrt5), p + q*sqrt5].
        root = math.isqrt(5 * self.q * self.q)
        k = root if self.q > 0 else -root - 1
        return (self.p + k) // self.d

    def to_decimal(self, digits: int) -> str:
        """Correctly rounded decimal string (round-half-to-even)."""
        if digits < 1:
            raise DomainError("digits must be >= 1")
        t = 10**digits
        scaled = self * t
        f2 = (scaled + scaled).floor()
        if f2 % 2 == 0:
            n = f2 // 2
        elif scaled.q == 0 and 2 * scaled.p == f2 * scaled.d:
            lo = (f2 - 1) // 2
            n = lo if lo % 2 == 0 else lo + 1
        else:
            n = (f2 + 1) // 2
        sign = "-" if n < 0 else ""
        n = abs(n)
        return f"{sign}{n // t}.{n % t:0{digits}d}"

    def __str__(self) -> str:
        if self.q == 0:
            return str(Fraction(self.p, self.d))
        body = f"{self.p}{self.q:+}*sqrt5"
        return body if self.d == 1 else f"({body})/{self.d}"


ZERO = QSqrt5(0)
ONE = QSqrt5(1)
SQRT5 = QSqrt5(0, 1)
#: alpha = (sqrt5 - 1)/4, the contraction ratio; root of 4x^2 + 2x - 1.
ALPHA = QSqrt5(-1, 1, 4)
TWO_ALPHA = QSqrt5(-1, 1, 2)


@dataclass(frozen=True, order=False)
class Dyadic:
    """The dyadic rational num / 2**exp in [0, 1].

    Canonical: num is odd, or exp == 0 (so 0 and 1 are (0, 0) and (1, 0)).
    """

    num: int
    exp: int = 0

    def __post_init__(self) -> None:
        m, e = self.num, self.exp
        if e < 0 or m < 0 or m > (1 << e):
            raise DomainError(f"{m}/2^{e} is not a dyadic in [0, 1]")
        if m == 0:
            e = 0
        elif m % 2 == 0:
            s = min((m & -m).bit_length() - 1, e)
            m >>= s
            e -= s
        object.__setattr__(self, "num", m)
        object.__setattr__(self, "exp", e)

    @classmethod
    def from_fraction(cls, x: Union[int, Fraction]) -> "Dyadic":
        f = Fraction(x)
        e = f.denominator.bit_length() - 1
        if f.denominator != 1 << e:
            raise DomainError(f"{f} is not dyadic")
        return cls(f.numerator, e)

    @property
    def depth(self) -> int:
        return self.exp

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.num, 1 << self.exp)

    @property
    def bits(self) -> tuple[int, ...]:
        """Digits x_1..x_exp of the terminating binary expansion."""
        if self.exp == 0:
            return ()
        return tuple(int(ch) for ch in format(self.num, f"0{self.exp}b"))

    def _cmp(self, other) -> int:
        if isinstance(other, Dyadic):
            a, b = self.num << other.exp, other.num << self.exp
        elif isinstance(other, (int, Fraction)):
            f = Fraction(other)
            a = self.num * f.denominator
            b = f.numerator << self.exp
        else:
            raise TypeError(f"cannot compare Dyadic with {type(other).__name__}")
        return _sign(a - b)

    def __eq__(self, other) -> bool:
        if isinstance(other, Dyadic):
            return (self.num, self.exp) == (other.num, other.exp)
        if isinstance(other, (int, Fraction)):
            return self._cmp(other) == 0
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.fraction)

    def __lt__(self, other) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other) -> bool:
        return self._cmp(other) >= 0

    def __str__(self) -> str:
        return f"{self.num}/{1 << self.exp}"


DYADIC_ZERO = Dyadic(0)
DYADIC_ONE = Dyadic(1)


# -- bit streams -----------------------------------------------------------


@dataclass(frozen=True)
class Zeros:
    """Tail of all 0s (terminating expansion)."""


@dataclass(frozen=True)
class Ones:
    """Tail of all 1s."""


@dataclass(frozen=True)
class Periodic:
    """Tail repeating a fixed nonempty word forever."""

    word: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.word:
            raise DomainError("periodic word must be nonempty")
        _check_bits(self.word)


@dataclass(frozen=True)
class Generator:
    """Deterministic seeded random tail; replayable per consumer."""

    seed: int


Tail = Union[Zeros, Ones, Periodic, Generator]


def _check_bits(bits: Sequence[int]) -> None:
    for b in bits:
        if b not in (0, 1):
            raise DomainError(f"not a bit: {b!r}")


@dataclass(frozen=True)
class BitStream:
    """Binary expansion x = sum x_i / 2^i: a finite head plus a tail rule."""

    head: tuple[int, ...] = ()
    tail: Tail = Zeros()

    def __post_init__(self) -> None:
        _check_bits(self.head)

    def bits(self) -> Iterator[int]:
        """Yield x_1, x_2, ... forever.  Generator tails replay from seed."""
        yield from self.head
        tail = self.tail
        if isinstance(tail, Zeros):
            while True:
                yield 0
        elif isinstance(tail, Ones):
            while True:
                yield 1
        elif isinstance(tail, Periodic):
            while True:
                yield from tail.word
        else:
            rng = random.Random(tail.seed)
            while True:
                yield rng.getrandbits(1)

    def prefix(self, k: int) -> tuple[int, ...]:
        it = self.bits()
        return tuple(next(it) for _ in range(k))


def bits_of(x: Dyadic) -> BitStream:
    """Terminating (Zeros-tail) expansion; 1 itself only has the Ones tail."""
    if x == DYADIC_ONE:
        return BitStream((), Ones())
    return BitStream(x.bits, Zeros())


def ones_tail_of(x: Dyadic) -> BitStream:
    """The alternate all-ones-tail expansion of a dyadic in (0, 1)."""
    if not DYADIC_ZERO < x < DYADIC_ONE:
        raise DomainError("dual expansion exists only inside (0, 1)")
    h = x.bits
    return BitStream(h[:-1] + (0,), Ones())


def dyadic_of(head: Sequence[int]) -> Dyadic:
    """The dyadic whose terminating expansion starts with ``head``."""
    _check_bits(head)
    m = 0
    for b in head:
        m = (m << 1) | b
    return Dyadic(m, len(head))


def bits_of_fraction(x: Union[int, Fraction]) -> BitStream:
    """Expansion of any rational in [0, 1]: terminating or eventually periodic."""
    f = Fraction(x)
    if not 0 <= f <= 1:
        raise DomainError(f"{f} outside [0, 1]")
    if f == 1:
        return BitStream((), Ones())
    num, den = f.numerator, f.denominator
    seen: dict[int, int] = {}
    digits: list[int] = []
    r = num
    while r and r not in seen:
        seen[r] = len(digits)
        r *= 2
        digits.append(r // den)
        r %= den
    if not r:
        return BitStream(tuple(digits), Zeros())
    start = seen[r]
    return BitStream(tuple(digits[:start]), Periodic(tuple(digits[start:])))
