"""Degree-truncated power series, classical and tropical, with differential structure.

Every series carries a hard truncation degree N and stores coefficients for
t^0 .. t^N.  Binary operations truncate to the smaller window; each
differentiation loses one degree.  A window that is all zero (classical) or
all infinite (tropical) cannot determine the leading term of the underlying
infinite series, so leading-term extraction returns an infinity flagged
`truncation_limited` instead of failing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import TruncationExhausted
from .fields import FieldBackend, FieldElem
from .semiring import (
    NatValuation,
    T_INF,
    T2_INF,
    TRIVIAL_NAT_VAL,
    TropNum,
    Trop2,
)


@dataclass(frozen=True, slots=True)
class LeadingTerm:
    """Leading term of a truncated series; flagged when the window is empty.

    A flagged infinity means every coefficient inside the truncation window
    was zero / infinite -- the true series may still have support beyond it.
    """

    value: Union[Trop2, TropNum]
    truncation_limited: bool = False

    @property
    def is_inf(self) -> bool:
        return self.value.is_inf


@dataclass(frozen=True, slots=True)
class PowerSeries:
    """Truncated element of K[[t]] with exact coefficients."""

    backend: FieldBackend
    truncation: int
    coeffs: tuple[FieldElem, ...]

    def __post_init__(self):
        if self.truncation < 0:
            raise ValueError("classical series need truncation >= 0")
        if len(self.coeffs) != self.truncation + 1:
            raise ValueError("coefficient count must be truncation + 1")

    @staticmethod
    def from_coeffs(backend: FieldBackend, truncation: int, coeffs: Sequence[FieldElem]) -> "PowerSeries":
        cs = list(coeffs)[: truncation + 1]
        cs += [backend.zero()] * (truncation + 1 - len(cs))
        return PowerSeries(backend, truncation, tuple(cs))

    @staticmethod
    def zero(backend: FieldBackend, truncation: int) -> "PowerSeries":
        return PowerSeries.from_coeffs(backend, truncation, [])

    @staticmethod
    def one(backend: FieldBackend, truncation: int) -> "PowerSeries":
        return PowerSeries.from_coeffs(backend, truncation, [backend.one()])

    @staticmethod
    def monomial(backend: FieldBackend, truncation: int, coeff: FieldElem, degree: int) -> "PowerSeries":
        cs = [backend.zero()] * (truncation + 1)
        if 0 <= degree <= truncation:
            cs[degree] = coeff
        return PowerSeries(backend, truncation, tuple(cs))

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.coeffs)

    def order(self):
        """Smallest exponent with a nonzero coefficient, or None within the window."""
        for k, c in enumerate(self.coeffs):
            if not c.is_zero:
                return k
        return None

    def constant_term(self) -> FieldElem:
        return self.coeffs[0]

    def truncate(self, truncation: int) -> "PowerSeries":
        if truncation >= self.truncation:
            return self
        return PowerSeries(self.backend, truncation, self.coeffs[: truncation + 1])

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.truncation, other.truncation)
        return PowerSeries(self.backend, n,
                           tuple(a + b for a, b in zip(self.coeffs, other.coeffs))[: n + 1])

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        return self + (-other)

    def __neg__(self) -> "PowerSeries":
        return PowerSeries(self.backend, self.truncation, tuple(-c for c in self.coeffs))

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.truncation, other.truncation)
        out = [self.backend.zero()] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a.is_zero:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if not b.is_zero:
                    out[i + j] = out[i + j] + a * b
        return PowerSeries(self.backend, n, tuple(out))

    def __pow__(self, n: int) -> "PowerSeries":
        if n < 0:
            raise ValueError("series powers need n >= 0")
        result = PowerSeries.one(self.backend, self.truncation)
        for _ in range(n):
            result = result * self
        return result

    def scale(self, c: FieldElem) -> "PowerSeries":
        return PowerSeries(self.backend, self.truncation, tuple(c * a for a in self.coeffs))

    def derivative(self) -> "PowerSeries":
        """d/dt; drops the truncation by one."""
        if self.truncation == 0:
            raise TruncationExhausted("no coefficients left to differentiate")
        cs = tuple(self.backend.elem(k) * self.coeffs[k] for k in range(1, self.truncation + 1))
        return PowerSeries(self.backend, self.truncation - 1, cs)


@dataclass(frozen=True, slots=True)
class TropSeries:
    """Truncated tropical power series with a tropical differential d_v.

    Truncation -1 (an empty window) marks a series differentiated past its
    data; its leading term is a flagged infinity.
    """

    nat_val: NatValuation
    truncation: int
    coeffs: tuple[TropNum, ...]

    def __post_init__(self):
        if self.truncation < -1:
            raise ValueError("tropical series need truncation >= -1")
        if len(self.coeffs) != self.truncation + 1:
            raise ValueError("coefficient count must be truncation + 1")

    @staticmethod
    def from_coeffs(nat_val: NatValuation, truncation: int, coeffs: Sequence[TropNum]) -> "TropSeries":
        cs = list(coeffs)[: truncation + 1]
        cs += [T_INF] * (truncation + 1 - len(cs))
        return TropSeries(nat_val, truncation, tuple(cs))

    @staticmethod
    def inf(nat_val: NatValuation, truncation: int) -> "TropSeries":
        return TropSeries.from_coeffs(nat_val, truncation, [])

    @staticmethod
    def monomial(nat_val: NatValuation, truncation: int, coeff: TropNum, degree: int) -> "TropSeries":
        cs = [T_INF] * (truncation + 1)
        if 0 <= degree <= truncation:
            cs[degree] = coeff
        return TropSeries(nat_val, truncation, tuple(cs))

    @property
    def is_inf(self) -> bool:
        return all(c.is_inf for c in self.coeffs)

    def __add__(self, other: "TropSeries") -> "TropSeries":
        n = min(self.truncation, other.truncation)
        return TropSeries(self.nat_val, n,
                          tuple(a + b for a, b in zip(self.coeffs, other.coeffs))[: n + 1])

    def __mul__(self, other: "TropSeries") -> "TropSeries":
        """Min-plus convolution."""
        n = min(self.truncation, other.truncation)
        out = [T_INF] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a.is_inf:
                continue
            for j in range(n + 1 - i):
                out[i + j] = out[i + j] + a * other.coeffs[j]
        return TropSeries(self.nat_val, n, tuple(out))

    def scale(self, c: TropNum) -> "TropSeries":
        """Tropical scalar multiple: adds c to every coefficient."""
        return TropSeries(self.nat_val, self.truncation, tuple(c * a for a in self.coeffs))

    def diff(self) -> "TropSeries":
        """Tropical differential d_v: coefficient k-1 becomes v(k) + coefficient k."""
        if self.truncation <= 0:
            return TropSeries(self.nat_val, -1, ())
        cs = tuple(self.nat_val(k) * self.coeffs[k] for k in range(1, self.truncation + 1))
        return TropSeries(self.nat_val, self.truncation - 1, cs)

    def diff_n(self, j: int) -> "TropSeries":
        s = self
        for _ in range(j):
            s = s.diff()
        return s

    def leading(self) -> LeadingTerm:
        """Phi: (first finite exponent, its coefficient) in T_2; flagged if none."""
        for k, c in enumerate(self.coeffs):
            if not c.is_inf:
                return LeadingTerm(Trop2((Fraction(k), c.value)))
        return LeadingTerm(T2_INF, truncation_limited=True)

    def truncate(self, truncation: int) -> "TropSeries":
        if truncation >= self.truncation:
            return self
        return TropSeries(self.nat_val, truncation, self.coeffs[: truncation + 1])


@dataclass(frozen=True, slots=True)
class BoolSeries:
    """Boolean (Grigoriev-mode) series: only the support is recorded."""

    truncation: int
    support: frozenset[int]

    def __post_init__(self):
        if any(k < 0 or k > self.truncation for k in self.support):
            raise ValueError("support must lie inside the truncation window")

    def diff(self) -> "BoolSeries":
        if self.truncation <= 0:
            return BoolSeries(-1, frozenset())
        return BoolSeries(self.truncation - 1, frozenset(k - 1 for k in self.support if k >= 1))

    def diff_n(self, j: int) -> "BoolSeries":
        s = self
        for _ in range(j):
            s = s.diff()
        return s

    def leading(self) -> LeadingTerm:
        """Phi for the Boolean pair: t^n -> n in T; flagged if the window is empty."""
        if self.support:
            return LeadingTerm(TropNum.of(min(self.support)))
        return LeadingTerm(T_INF, truncation_limited=True)

    def to_trop(self) -> TropSeries:
        cs = [TropNum.of(0) if k in self.support else T_INF for k in range(self.truncation + 1)]
        return TropSeries(TRIVIAL_NAT_VAL, self.truncation, tuple(cs))


def phi_leading(s: Union[TropSeries, BoolSeries]) -> LeadingTerm:
    """Leading-term map of the tropical pair."""
    return s.leading()


def trop_diff(s: TropSeries) -> TropSeries:
    return s.diff()


def tropicalize_series(a: PowerSeries) -> TropSeries:
    """Coefficientwise valuation of a classical series (the differential enhancement)."""
    return TropSeries(a.backend.nat_val, a.truncation,
                      tuple(c.valuation() for c in a.coeffs))


def rank2_val(a: PowerSeries) -> LeadingTerm:
    """Rank-2 valuation (t-order, valuation of the leading coefficient)."""
    k = a.order()
    if k is None:
        return LeadingTerm(T2_INF, truncation_limited=True)
    return LeadingTerm(Trop2((Fraction(k), a.coeffs[k].valuation().value)))


def psi_one(a: Sequence[FieldElem], backend: FieldBackend) -> PowerSeries:
    """Taylor packing: coefficient j of the output is a_j / j!."""
    cs = tuple(c * backend.elem(Fraction(1, math.factorial(j))) for j, c in enumerate(a))
    return PowerSeries(backend, len(a) - 1, cs)


def psi(a: Sequence[Sequence[FieldElem]], backend: FieldBackend) -> tuple[PowerSeries, ...]:
    return tuple(psi_one(ai, backend) for ai in a)


def psi_one_inverse(s: PowerSeries) -> tuple[FieldElem, ...]:
    return tuple(c * s.backend.elem(math.factorial(j)) for j, c in enumerate(s.coeffs))


def psi_inverse(series: Sequence[PowerSeries]) -> tuple[tuple[FieldElem, ...], ...]:
    return tuple(psi_one_inverse(s) for s in series)


def psi_trop(b: Sequence[TropNum], nat_val: NatValuation) -> TropSeries:
    """Tropical Taylor packing: coefficient j is b_j - v(j!)."""
    cs = []
    for j, bj in enumerate(b):
        fact = nat_val.factorial(j)
        cs.append(T_INF if bj.is_inf else TropNum(bj.value - fact.value))
    return TropSeries(nat_val, len(b) - 1, tuple(cs))


def psi_trop_inverse(s: TropSeries) -> tuple[TropNum, ...]:
    """Inverse packing: b_j = c_j + v(j!) (the constant term of d_v^j applied to s)."""
    return tuple(s.nat_val.factorial(j) * c for j, c in enumerate(s.coeffs))


def sigma0(w: Trop2) -> TropNum:
    """Pair morphism on leading terms: projection onto the first component."""
    if w.is_inf:
        return T_INF
    return TropNum(w.value[0])


def sigma_to_grigoriev(s: TropSeries) -> BoolSeries:
    """Pair morphism on series: keep the support, forget finite coefficients."""
    return BoolSeries(s.truncation,
                      frozenset(k for k, c in enumerate(s.coeffs) if not c.is_inf))
