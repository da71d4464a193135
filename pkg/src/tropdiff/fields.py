"""Exact coefficient fields with a valuation, uniformizer section and residue field.

Three backends:

* ``trivial``     -- Q with the trivial valuation (value group {0});
* ``padic``       -- Q with the p-adic valuation, uniformizer p;
* ``eisenstein``  -- Q(zeta), zeta^(p-1) = -p, totally ramified of index
  e = p - 1, uniformizer zeta, residue field F_p.

Eisenstein elements are vectors (c_0, ..., c_{p-2}) of rationals standing for
sum c_i zeta^i, reduced by zeta^(p-1) = -p.  For p = 2 the vector has length
one and zeta is the rational -2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import NegativeValuation, NonIntegralExponent, ZeroInput
from .semiring import (
    NatValuation,
    Rat,
    T_INF,
    TropNum,
    Trop2,
    format_rational,
    is_prime,
    v_p,
)


@dataclass(frozen=True, slots=True)
class FieldBackend:
    """Tag selecting one of the three coefficient-field implementations."""

    kind: str  # "trivial" | "padic" | "eisenstein"
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("trivial", "padic", "eisenstein"):
            raise ValueError(f"unknown field backend {self.kind!r}")
        if self.kind == "trivial":
            if self.p is not None:
                raise ValueError("the trivial backend takes no prime")
        elif self.p is None or not is_prime(self.p):
            raise ValueError(f"backend {self.kind!r} needs a prime, got {self.p!r}")

    @property
    def degree(self) -> int:
        return self.p - 1 if self.kind == "eisenstein" else 1

    @property
    def ramification(self) -> int:
        """Index e of the value group (1/e)Z; 1 for the unramified backends."""
        return self.p - 1 if self.kind == "eisenstein" else 1

    @property
    def residue_char(self) -> int:
        """Characteristic of the residue field (0 means the residue field is Q)."""
        return 0 if self.kind == "trivial" else self.p

    @property
    def nat_val(self) -> NatValuation:
        """The valuation on N matching this field's tropical differential."""
        return NatValuation(None if self.kind == "trivial" else self.p)

    def elem(self, x: Rat) -> "FieldElem":
        c = Fraction(x)
        return FieldElem(self, (c,) + (Fraction(0),) * (self.degree - 1))

    def zero(self) -> "FieldElem":
        return self.elem(0)

    def one(self) -> "FieldElem":
        return self.elem(1)

    def zeta(self) -> "FieldElem":
        if self.kind != "eisenstein":
            raise ValueError("zeta only exists over an Eisenstein backend")
        if self.degree == 1:  # p = 2: zeta^1 = -2 already lies in Q
            return self.elem(-self.p)
        coeffs = [Fraction(0)] * self.degree
        coeffs[1] = Fraction(1)
        return FieldElem(self, tuple(coeffs))

    def uniformizer_pow(self, k: int) -> "FieldElem":
        """pi^k for the backend uniformizer pi; k may be negative."""
        if self.kind == "trivial":
            if k != 0:
                raise NonIntegralExponent("the trivial backend has no uniformizer")
            return self.one()
        if self.kind == "padic":
            return self.elem(Fraction(self.p) ** k)
        # zeta^k = (-p)^q * zeta^r with k = q*(p-1) + r, 0 <= r < p-1
        q, r = divmod(k, self.p - 1)
        scale = Fraction(-self.p) ** q
        return self.zeta() ** r * self.elem(scale)

    def from_coeffs(self, coeffs) -> "FieldElem":
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != self.degree:
            raise ValueError(f"expected {self.degree} coefficients, got {len(coeffs)}")
        return FieldElem(self, coeffs)

    def describe(self) -> str:
        if self.kind == "trivial":
            return "Q (trivial valuation)"
        if self.kind == "padic":
            return f"Q ({self.p}-adic valuation)"
        return f"Q(zeta), zeta^{self.p - 1} = -{self.p} ({self.p}-adic valuation)"


@dataclass(frozen=True, slots=True)
class FieldElem:
    """Exact element of a valued-field backend."""

    backend: FieldBackend
    coeffs: tuple[Fraction, ...]

    def _check(self, other: "FieldElem"):
        if self.backend != other.backend:
            raise ValueError("mixed field backends")

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other: "FieldElem") -> "FieldElem":
        self._check(other)
        return FieldElem(self.backend, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "FieldElem") -> "FieldElem":
        self._check(other)
        return FieldElem(self.backend, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "FieldElem":
        return FieldElem(self.backend, tuple(-a for a in self.coeffs))

    def __mul__(self, other: "FieldElem") -> "FieldElem":
        self._check(other)
        d = self.backend.degree
        if d == 1:
            return FieldElem(self.backend, (self.coeffs[0] * other.coeffs[0],))
        out = [Fraction(0)] * d
        p = self.backend.p
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b == 0:
                    continue
                k = i + j
                if k < d:
                    out[k] += a * b
                else:  # zeta^(p-1) = -p folds the overflow back
                    out[k - d] += -p * a * b
        return FieldElem(self.backend, tuple(out))

    def inverse(self) -> "FieldElem":
        if self.is_zero:
            raise ZeroInput("cannot invert zero")
        d = self.backend.degree
        if d == 1:
            return FieldElem(self.backend, (1 / self.coeffs[0],))
        # Solve (self * x) = 1 by Gaussian elimination on the multiplication matrix.
        basis = []
        power = self.backend.one()
        zeta = self.backend.zeta()
        for _ in range(d):
            basis.append((self * power).coeffs)
            power = power * zeta
        rows = [[basis[j][i] for j in range(d)] + [Fraction(1 if i == 0 else 0)] for i in range(d)]
        for col in range(d):
            pivot = next(r for r in range(col, d) if rows[r][col] != 0)
            rows[col], rows[pivot] = rows[pivot], rows[col]
            inv = 1 / rows[col][col]
            rows[col] = [v * inv for v in rows[col]]
            for r in range(d):
                if r != col and rows[r][col] != 0:
                    factor = rows[r][col]
                    rows[r] = [v - factor * w for v, w in zip(rows[r], rows[col])]
        return FieldElem(self.backend, tuple(rows[i][d] for i in range(d)))

    def __truediv__(self, other: "FieldElem") -> "FieldElem":
        return self * other.inverse()

    def __pow__(self, n: int) -> "FieldElem":
        if n < 0:
            return self.inverse() ** (-n)
        result = self.backend.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def valuation(self) -> TropNum:
        """Exact valuation; zero maps to infinity."""
        if self.is_zero:
            return T_INF
        b = self.backend
        if b.kind == "trivial":
            return TropNum.of(0)
        e = b.ramification
        best = None
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            v = Fraction(v_p(c.numerator, b.p) - v_p(c.denominator, b.p)) + Fraction(i, e)
            if best is None or v < best:
                best = v
        return TropNum(best)

    def __str__(self) -> str:
        if self.backend.degree == 1:
            return format_rational(self.coeffs[0])
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(format_rational(c))
            else:
                power = "zeta" if i == 1 else f"zeta^{i}"
                if c == 1:
                    parts.append(power)
                elif c == -1:
                    parts.append(f"-{power}")
                else:
                    parts.append(f"{format_rational(c)}*{power}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"FieldElem({self})"


@dataclass(frozen=True, slots=True)
class ResidueElem:
    """Element of the residue field: F_p (p a prime) or Q (p = None)."""

    p: Optional[int]
    value: Union[int, Fraction]

    @staticmethod
    def of(p: Optional[int], x: Rat) -> "ResidueElem":
        if p is None:
            return ResidueElem(None, Fraction(x))
        q = Fraction(x)
        if q.denominator % p == 0:
            raise NegativeValuation(f"{x} has no residue mod {p}")
        num = q.numerator % p
        inv = pow(q.denominator % p, -1, p)
        return ResidueElem(p, (num * inv) % p)

    @property
    def is_zero(self) -> bool:
        return self.value == 0

    def _check(self, other: "ResidueElem"):
        if self.p != other.p:
            raise ValueError("mixed residue fields")

    def __add__(self, other: "ResidueElem") -> "ResidueElem":
        self._check(other)
        v = self.value + other.value
        return ResidueElem(self.p, v % self.p if self.p else v)

    def __neg__(self) -> "ResidueElem":
        return ResidueElem(self.p, (-self.value) % self.p if self.p else -self.value)

    def __sub__(self, other: "ResidueElem") -> "ResidueElem":
        return self + (-other)

    def __mul__(self, other: "ResidueElem") -> "ResidueElem":
        self._check(other)
        v = self.value * other.value
        return ResidueElem(self.p, v % self.p if self.p else v)

    def __str__(self) -> str:
        return str(self.value) if self.p else format_rational(self.value)

    def __repr__(self) -> str:
        return f"ResidueElem({self} mod {self.p})" if self.p else f"ResidueElem({self})"


def field_val(x: FieldElem) -> TropNum:
    """Valuation of a field element (infinity on zero)."""
    return x.valuation()


def section_phi(w: Trop2, backend: FieldBackend) -> tuple[int, FieldElem]:
    """Multiplicative section of the rank-2 valuation: (alpha, beta) -> pi^(beta*e) t^alpha.

    Returns the pair (t-exponent, scalar); t is kept symbolic.  Raises
    NonIntegralExponent when (alpha, beta) is outside the value group.
    """
    if w.is_inf:
        raise NonIntegralExponent("phi is a section on finite weights only")
    alpha, beta = w.value
    if alpha.denominator != 1:
        raise NonIntegralExponent(f"t-exponent {alpha} is not an integer")
    scaled = beta * backend.ramification
    if scaled.denominator != 1:
        raise NonIntegralExponent(f"{beta} is outside the value group of {backend.kind}")
    if backend.kind == "trivial" and beta != 0:
        raise NonIntegralExponent("the trivial backend has value group {0}")
    return int(alpha), backend.uniformizer_pow(int(scaled))


def residue(x: FieldElem) -> ResidueElem:
    """Residue-field image of an element of nonnegative valuation."""
    b = x.backend
    if b.kind == "trivial":
        return ResidueElem(None, x.coeffs[0])
    v = x.valuation()
    if not v.is_inf and v.value < 0:
        raise NegativeValuation(f"valuation {v} < 0 has no residue")
    if b.kind == "padic":
        return ResidueElem.of(b.p, x.coeffs[0]) if not x.is_zero else ResidueElem(b.p, 0)
    # Eisenstein: terms c_i zeta^i with i >= 1 have positive valuation.
    return ResidueElem.of(b.p, x.coeffs[0]) if x.coeffs[0] != 0 else ResidueElem(b.p, 0)


def angular_component(x: FieldElem) -> ResidueElem:
    """Residue of the unit part x * phi(-v(x)); multiplicative in x."""
    if x.is_zero:
        raise ZeroInput("the angular component of zero is undefined")
    b = x.backend
    if b.kind == "trivial":
        return ResidueElem(None, x.coeffs[0])
    v = x.valuation().value
    unit = x * b.uniformizer_pow(-int(v * b.ramification))
    return residue(unit)
