"""Min-plus semirings over exact rationals.

Two carrier types: TropNum (rank 1, Q u {inf}, plus = min, times = +) and
Trop2 (rank 2, Q^2 u {inf}, plus = lexicographic min, times = componentwise +).
The Boolean sub-semiring {0, inf} is TropNum restricted by `is_boolean`.
Infinity is encoded as value None and is absorbing for times, neutral for plus.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .errors import ZeroInput

Rat = Union[int, Fraction]


def parse_rational(text: str) -> Fraction:
    """Parse "num" or "num/den" into an exact Fraction."""
    return Fraction(text.strip())


def format_rational(q: Rat) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True, slots=True)
class TropNum:
    """Element of the tropical numbers: a rational, or infinity (None)."""

    value: Optional[Fraction]

    @staticmethod
    def of(x: Rat) -> "TropNum":
        return TropNum(Fraction(x))

    @staticmethod
    def parse(text: str) -> "TropNum":
        text = text.strip()
        if text in ("inf", "+inf", "infinity"):
            return T_INF
        return TropNum(parse_rational(text))

    @property
    def is_inf(self) -> bool:
        return self.value is None

    @property
    def is_boolean(self) -> bool:
        return self.value is None or self.value == 0

    def __add__(self, other: "TropNum") -> "TropNum":
        if self.value is None:
            return other
        if other.value is None:
            return self
        return self if self.value <= other.value else other

    def __mul__(self, other: "TropNum") -> "TropNum":
        if self.value is None or other.value is None:
            return T_INF
        return TropNum(self.value + other.value)

    def __pow__(self, n: int) -> "TropNum":
        if n < 0:
            raise ValueError("tropical powers need n >= 0")
        if n == 0:
            return TropNum(Fraction(0))
        if self.value is None:
            return T_INF
        return TropNum(n * self.value)

    def precedes(self, other: "TropNum") -> bool:
        """Canonical partial order: a precedes b iff a + b == b (so inf is least)."""
        return self + other == other

    def shift(self, q: Rat) -> "TropNum":
        """Tropical scaling by a finite rational (adds q; inf stays inf)."""
        if self.value is None:
            return T_INF
        return TropNum(self.value + Fraction(q))

    def __str__(self) -> str:
        return "inf" if self.value is None else format_rational(self.value)

    def __repr__(self) -> str:
        return f"TropNum({self})"


@dataclass(frozen=True, slots=True)
class Trop2:
    """Element of the rank-2 tropical numbers: a pair of rationals, or infinity."""

    value: Optional[tuple[Fraction, Fraction]]

    @staticmethod
    def of(a: Rat, b: Rat) -> "Trop2":
        return Trop2((Fraction(a), Fraction(b)))

    @property
    def is_inf(self) -> bool:
        return self.value is None

    def __add__(self, other: "Trop2") -> "Trop2":
        if self.value is None:
            return other
        if other.value is None:
            return self
        return self if self.value <= other.value else other

    def __mul__(self, other: "Trop2") -> "Trop2":
        if self.value is None or other.value is None:
            return T2_INF
        return Trop2((self.value[0] + other.value[0], self.value[1] + other.value[1]))

    def __pow__(self, n: int) -> "Trop2":
        if n < 0:
            raise ValueError("tropical powers need n >= 0")
        if n == 0:
            return Trop2((Fraction(0), Fraction(0)))
        if self.value is None:
            return T2_INF
        return Trop2((n * self.value[0], n * self.value[1]))

    def precedes(self, other: "Trop2") -> bool:
        return self + other == other

    def __str__(self) -> str:
        if self.value is None:
            return "inf"
        return f"({format_rational(self.value[0])}, {format_rational(self.value[1])})"

    def __repr__(self) -> str:
        return f"Trop2({self})"


T_INF = TropNum(None)
T_ZERO = TropNum(Fraction(0))  # multiplicative identity of T
T2_INF = Trop2(None)
T2_ZERO = Trop2((Fraction(0), Fraction(0)))

TropElem = Union[TropNum, Trop2]


def trop_add(a: TropElem, b: TropElem) -> TropElem:
    return a + b


def trop_mul(a: TropElem, b: TropElem) -> TropElem:
    return a * b


def trop_sum(addends: Iterable[TropElem], inf: TropElem | None = None) -> TropElem:
    """Tropical sum of a finite sequence; the empty sum is infinity.

    `inf` picks the semiring when the sequence may be empty; it defaults to
    the rank-2 infinity.
    """
    total: TropElem | None = None
    for a in addends:
        total = a if total is None else total + a
    if total is None:
        return inf if inf is not None else T2_INF
    return total


@dataclass(frozen=True, slots=True)
class VanishReport:
    """Outcome of a tropical-vanishing test on a finite sequence of addends."""

    vanishes: bool
    total: TropElem
    attainment: tuple[int, ...]


def tropically_vanishes(addends: Sequence[TropElem], inf: TropElem | None = None) -> VanishReport:
    """Check whether a finite tropical sum vanishes.

    The sum vanishes iff it is infinity, or the minimum is attained by at
    least two addends; this is equivalent to removal-stability (dropping any
    one addend leaves the sum unchanged), which `vanishes_by_removal` tests
    directly.
    """
    total = trop_sum(addends, inf=inf)
    attainment = tuple(k for k, a in enumerate(addends) if a == total)
    vanishes = total.is_inf or len(attainment) >= 2
    return VanishReport(vanishes, total, attainment)


def vanishes_by_removal(addends: Sequence[TropElem], inf: TropElem | None = None) -> bool:
    """Literal removal-stability definition of tropical vanishing (test oracle)."""
    total = trop_sum(addends, inf=inf)
    for k in range(len(addends)):
        rest = trop_sum(addends[:k] + addends[k + 1:], inf=inf)
        if rest != total:
            return False
    return True


def v_p(n: int, p: int) -> int:
    """Exact exponent of the prime p in the nonzero integer n."""
    if n == 0:
        raise ZeroInput("v_p(0) is infinite; handle zero at the call site")
    n = abs(n)
    count = 0
    while n % p == 0:
        n //= p
        count += 1
    return count


def digit_sum(m: int, p: int) -> int:
    total = 0
    while m:
        m, r = divmod(m, p)
        total += r
    return total


def v_p_factorial(m: int, p: int) -> int:
    """v_p(m!) by Legendre's closed form (m - digit_sum_p(m)) / (p - 1)."""
    if m < 0:
        raise ValueError("factorial valuation needs m >= 0")
    return (m - digit_sum(m, p)) // (p - 1)


def v_p_factorial_iter(m: int, p: int) -> int:
    """v_p(m!) as the iterative sum of floor(m / p^k) (cross-check path)."""
    total = 0
    q = p
    while q <= m:
        total += m // q
        q *= p
    return total


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True, slots=True)
class NatValuation:
    """Valuation on the naturals selecting a tropical differential d_v.

    p = None is the trivial mode (every positive natural maps to 0); a prime
    p gives the p-adic mode n -> v_p(n). Zero maps to infinity.
    """

    p: Optional[int] = None

    def __post_init__(self):
        if self.p is not None and not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def __call__(self, n: int) -> TropNum:
        if n == 0:
            return T_INF
        if self.p is None:
            return T_ZERO
        return TropNum.of(v_p(n, self.p))

    def factorial(self, m: int) -> TropNum:
        """Valuation of m! (zero in trivial mode)."""
        if self.p is None:
            return T_ZERO
        return TropNum.of(v_p_factorial(m, self.p))


TRIVIAL_NAT_VAL = NatValuation(None)
