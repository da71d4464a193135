"""Seeded random generators and independent oracles shared by the test suite."""

from fractions import Fraction
import random

from tropdiff.diffpoly import DiffPoly, ExponentMatrix
from tropdiff.fields import FieldBackend, FieldElem, ResidueElem, residue
from tropdiff.semiring import NatValuation, T_INF, T2_INF, TropNum, Trop2
from tropdiff.series import PowerSeries, TropSeries

SEED = 20260810

TRIVIAL = FieldBackend("trivial")
PADIC3 = FieldBackend("padic", 3)
EISEN2 = FieldBackend("eisenstein", 2)
EISEN3 = FieldBackend("eisenstein", 3)
EISEN5 = FieldBackend("eisenstein", 5)


def rng_for(name: str) -> random.Random:
    """Per-test deterministic stream so tests stay order-independent."""
    return random.Random(f"{SEED}:{name}")


def rand_fraction(rng, lo=-9, hi=9, max_den=6) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def rand_nonzero_fraction(rng, lo=-9, hi=9, max_den=6) -> Fraction:
    while True:
        q = rand_fraction(rng, lo, hi, max_den)
        if q:
            return q


def rand_trop_num(rng, inf_prob=0.2) -> TropNum:
    if rng.random() < inf_prob:
        return T_INF
    return TropNum(rand_fraction(rng))


def rand_trop2(rng, inf_prob=0.2) -> Trop2:
    if rng.random() < inf_prob:
        return T2_INF
    return Trop2((rand_fraction(rng), rand_fraction(rng)))


def rand_elem(rng, backend: FieldBackend, sparse=True) -> FieldElem:
    coeffs = []
    for _ in range(backend.degree):
        if sparse and rng.random() < 0.3:
            coeffs.append(Fraction(0))
        else:
            coeffs.append(rand_fraction(rng))
    return backend.from_coeffs(coeffs)


def rand_nonzero_elem(rng, backend: FieldBackend) -> FieldElem:
    while True:
        x = rand_elem(rng, backend)
        if not x.is_zero:
            return x


def rand_power_series(rng, backend: FieldBackend, truncation: int,
                      zero_prob=0.3) -> PowerSeries:
    coeffs = [backend.zero() if rng.random() < zero_prob else rand_elem(rng, backend)
              for _ in range(truncation + 1)]
    return PowerSeries(backend, truncation, tuple(coeffs))


def rand_trop_series(rng, nat_val: NatValuation, truncation: int,
                     inf_prob=0.25, half_integers=False) -> TropSeries:
    coeffs = []
    for _ in range(truncation + 1):
        if rng.random() < inf_prob:
            coeffs.append(T_INF)
        elif half_integers:
            coeffs.append(TropNum(Fraction(rng.randint(-8, 8), 2)))
        else:
            coeffs.append(TropNum(rand_fraction(rng)))
    return TropSeries(nat_val, truncation, tuple(coeffs))


def rand_full_trop_series(rng, nat_val, truncation, half_integers=False) -> TropSeries:
    """All-finite coefficients: every leading term is exact, no truncation flags."""
    return rand_trop_series(rng, nat_val, truncation, inf_prob=0.0,
                            half_integers=half_integers)


def rand_exponent_matrix(rng, nvars, max_order, max_degree) -> ExponentMatrix:
    degree = rng.randint(0, max_degree)
    entries = {}
    for _ in range(degree):
        ij = (rng.randrange(nvars), rng.randint(0, max_order))
        entries[ij] = entries.get(ij, 0) + 1
    return ExponentMatrix.make(entries)


def rand_diffpoly(rng, backend, nvars, truncation, max_terms=3,
                  max_order=2, max_degree=2, zero_prob=0.2) -> DiffPoly:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        lam = rand_exponent_matrix(rng, nvars, max_order, max_degree)
        terms[lam] = rand_power_series(rng, backend, truncation, zero_prob)
    return DiffPoly.make(backend, nvars, truncation, terms)


def rand_nonzero_diffpoly(rng, backend, nvars, truncation, **kw) -> DiffPoly:
    while True:
        f = rand_diffpoly(rng, backend, nvars, truncation, **kw)
        if not f.is_zero:
            return f


# ---------------------------------------------------------------------------
# independent oracles

def vp_factorial_bruteforce(m: int, p: int) -> int:
    """Valuation of m! by factoring the literal product."""
    count = 0
    for k in range(2, m + 1):
        while k % p == 0:
            k //= p
            count += 1
    return count


def exp_series_direct(backend: FieldBackend, u: PowerSeries, truncation: int) -> PowerSeries:
    """exp(u) for u with zero constant term, by summing u^k / k! directly."""
    assert u.coeffs[0].is_zero
    total = PowerSeries.one(backend, truncation)
    term = PowerSeries.one(backend, truncation)
    fact = 1
    for k in range(1, truncation + 1):
        term = term * u.truncate(truncation)
        fact *= k
        total = total + term.scale(backend.elem(Fraction(1, fact)))
    return total


def kpoly_evaluate(f, values) -> FieldElem:
    """Evaluate a KPoly at constant values b[i][j] for x_i^(j)."""
    total = f.backend.zero()
    for lam, c in f.terms:
        prod = c
        for (i, j), e in lam.entries:
            prod = prod * values[i][j] ** e
        total = total + prod
    return total


class Laurent:
    """Finite Laurent series over a field backend (literal h_S oracle only)."""

    def __init__(self, backend, coeffs=None):
        self.backend = backend
        self.coeffs = {k: v for k, v in (coeffs or {}).items() if not v.is_zero}

    @staticmethod
    def from_power_series(s: PowerSeries) -> "Laurent":
        return Laurent(s.backend, {k: c for k, c in enumerate(s.coeffs)})

    def shift_scale(self, shift: int, scalar: FieldElem) -> "Laurent":
        return Laurent(self.backend,
                       {k + shift: scalar * v for k, v in self.coeffs.items()})

    def rank2_valuation(self):
        """(order, v_K(leading coefficient)) or None for zero."""
        if not self.coeffs:
            return None
        k = min(self.coeffs)
        return (Fraction(k), self.coeffs[k].valuation().value)

    def residue_class(self) -> ResidueElem:
        """Image in R/m for an element of valuation >= (0, 0)."""
        v = self.rank2_valuation()
        p = self.backend.residue_char or None
        if v is None:
            return ResidueElem(p, 0 if p else Fraction(0))
        assert v >= (0, 0), "literal h_S coefficient left the valuation ring"
        if v[0] > 0 or (v[0] == 0 and v[1] > 0):
            return ResidueElem(p, 0 if p else Fraction(0))
        return residue(self.coeffs[0])


def initial_form_literal(f: DiffPoly, s) -> "ResiduePolyLike":
    """Literal h_S expansion of the initial form: multiply every coefficient by
    the section values, divide out the minimum, and reduce mod the maximal ideal."""
    from tropdiff.diffpoly import eval_tropical, tropicalize_poly
    from tropdiff.fields import section_phi
    from tropdiff.initial import ResiduePoly

    backend = f.backend
    p = backend.residue_char or None
    report = eval_tropical(tropicalize_poly(f), s)
    assert not report.truncation_limited
    if report.value.is_inf:
        return ResiduePoly.zero(p, f.nvars)
    neg_total = Trop2((-report.value.value[0], -report.value.value[1]))
    shift0, scalar0 = section_phi(neg_total, backend)
    out = {}
    for lam, coeff in f.terms:
        shift, scalar = shift0, scalar0
        for (i, j), e in lam.entries:
            w = s[i].diff_n(j).leading()
            assert not w.truncation_limited
            sh, sc = section_phi(w.value, backend)
            shift += sh * e
            scalar = scalar * sc ** e
        c = Laurent.from_power_series(coeff).shift_scale(shift, scalar)
        r = c.residue_class()
        if not r.is_zero:
            out[lam] = r
    return ResiduePoly.make(p, f.nvars, out)
