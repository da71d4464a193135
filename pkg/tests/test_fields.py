from fractions import Fraction

import pytest

from tropdiff.errors import NegativeValuation, NonIntegralExponent, ZeroInput
from tropdiff.fields import (
    FieldBackend,
    ResidueElem,
    angular_component,
    field_val,
    residue,
    section_phi,
)
from tropdiff.semiring import T_INF, TropNum, Trop2

from helpers import (
    EISEN2,
    EISEN3,
    EISEN5,
    PADIC3,
    TRIVIAL,
    rand_nonzero_elem,
    rng_for,
)


def test_backend_validation():
    with pytest.raises(ValueError):
        FieldBackend("padic")
    with pytest.raises(ValueError):
        FieldBackend("eisenstein", 4)
    with pytest.raises(ValueError):
        FieldBackend("trivial", 3)
    with pytest.raises(ValueError):
        FieldBackend("complex", 3)


def test_eisenstein_zeta_relation():
    # zeta^(p-1) = -p for every backend, including the degenerate p = 2
    for backend in (EISEN2, EISEN3, EISEN5):
        z = backend.zeta()
        assert z ** (backend.p - 1) == backend.elem(-backend.p)


def test_field_val_examples():
    assert field_val(EISEN3.zeta()) == TropNum.of(Fraction(1, 2))
    assert field_val(PADIC3.elem(6)) == TropNum.of(1)
    assert field_val(PADIC3.zero()) == T_INF
    assert field_val(TRIVIAL.elem(Fraction(-7, 3))) == TropNum.of(0)
    assert field_val(EISEN2.zeta()) == TropNum.of(1)
    # valuation of a mixed Eisenstein element: min over components
    x = EISEN3.from_coeffs([Fraction(9), Fraction(1, 3)])  # v = min(2, -1 + 1/2)
    assert field_val(x) == TropNum.of(Fraction(-1, 2))


def test_section_phi_examples():
    t_exp, scalar = section_phi(Trop2.of(0, Fraction(1, 2)), EISEN3)
    assert (t_exp, scalar) == (0, EISEN3.zeta())

    t_exp, scalar = section_phi(Trop2.of(2, Fraction(3, 2)), EISEN3)
    assert t_exp == 2
    assert scalar == EISEN3.zeta() ** 3
    assert scalar == EISEN3.elem(-3) * EISEN3.zeta()  # zeta^3 = -3*zeta

    assert section_phi(Trop2.of(0, 0), PADIC3) == (0, PADIC3.one())
    assert section_phi(Trop2.of(3, -2), PADIC3) == (3, PADIC3.elem(Fraction(1, 9)))
    assert section_phi(Trop2.of(-1, 0), TRIVIAL) == (-1, TRIVIAL.one())


def test_section_phi_errors():
    with pytest.raises(NonIntegralExponent):
        section_phi(Trop2.of(0, Fraction(1, 3)), EISEN3)
    with pytest.raises(NonIntegralExponent):
        section_phi(Trop2.of(Fraction(1, 2), 0), PADIC3)
    with pytest.raises(NonIntegralExponent):
        section_phi(Trop2.of(0, 1), TRIVIAL)
    with pytest.raises(NonIntegralExponent):
        section_phi(Trop2(None), PADIC3)


def test_angular_component_examples():
    assert angular_component(EISEN3.one()) == ResidueElem(3, 1)
    # ac(6*zeta): unit part 6*zeta^(-2) = -2, and -2 = 1 mod 3
    assert angular_component(EISEN3.elem(6) * EISEN3.zeta()) == ResidueElem(3, 1)
    # the leading coefficient -p*zeta of the worked example has ac = 1
    assert angular_component(EISEN3.elem(-3) * EISEN3.zeta()) == ResidueElem(3, 1)
    assert angular_component(TRIVIAL.elem(Fraction(-2, 7))) == \
        ResidueElem(None, Fraction(-2, 7))
    with pytest.raises(ZeroInput):
        angular_component(PADIC3.zero())


def test_residue_examples():
    assert residue(PADIC3.elem(Fraction(7, 2))) == ResidueElem(3, 2)
    assert residue(EISEN3.zeta()) == ResidueElem(3, 0)
    assert residue(EISEN3.one()) == ResidueElem(3, 1)
    assert residue(PADIC3.zero()) == ResidueElem(3, 0)
    with pytest.raises(NegativeValuation):
        residue(PADIC3.elem(Fraction(1, 3)))


def test_eisenstein_inverse():
    rng = rng_for("eisenstein-inverse")
    for backend in (EISEN2, EISEN3, EISEN5):
        for _ in range(50):
            x = rand_nonzero_elem(rng, backend)
            assert x * x.inverse() == backend.one()
    x = EISEN3.one() + EISEN3.zeta()
    assert (EISEN3.one() / x) * x == EISEN3.one()


def check_valuation_multiplicative(count=1000):
    rng = rng_for("val-mult")
    backends = (TRIVIAL, PADIC3, EISEN3, EISEN5)
    for k in range(count):
        backend = backends[k % len(backends)]
        x, y = rand_nonzero_elem(rng, backend), rand_nonzero_elem(rng, backend)
        assert field_val(x * y) == field_val(x) * field_val(y)


def check_valuation_subadditive(count=1000):
    rng = rng_for("val-subadd")
    backends = (TRIVIAL, PADIC3, EISEN3)
    for k in range(count):
        backend = backends[k % len(backends)]
        x, y = rand_nonzero_elem(rng, backend), rand_nonzero_elem(rng, backend)
        vx, vy, vs = field_val(x), field_val(y), field_val(x + y)
        # v(x+y) >= min(v(x), v(y)) in the usual order, i.e. the sum of the
        # three valuations tropically vanishes
        assert vs.precedes(vx + vy)
        if vx != vy:
            assert vs == vx + vy


def check_section_monoid_hom(count=1000):
    rng = rng_for("phi-hom")
    backends = (PADIC3, EISEN3, EISEN5)
    for k in range(count):
        backend = backends[k % len(backends)]
        e = backend.ramification
        w1 = Trop2.of(rng.randint(-4, 4), Fraction(rng.randint(-6, 6), e))
        w2 = Trop2.of(rng.randint(-4, 4), Fraction(rng.randint(-6, 6), e))
        t1, s1 = section_phi(w1, backend)
        t2, s2 = section_phi(w2, backend)
        t12, s12 = section_phi(w1 * w2, backend)
        assert t12 == t1 + t2 and s12 == s1 * s2


def check_angular_multiplicative(count=1000):
    rng = rng_for("ac-mult")
    backends = (TRIVIAL, PADIC3, EISEN3, EISEN5)
    for k in range(count):
        backend = backends[k % len(backends)]
        x, y = rand_nonzero_elem(rng, backend), rand_nonzero_elem(rng, backend)
        assert angular_component(x * y) == angular_component(x) * angular_component(y)
        if backend.kind != "trivial":
            v = field_val(x)
            unit = x * backend.uniformizer_pow(-int(v.value * backend.ramification))
            assert residue(unit) == angular_component(x)


def check_eisenstein_reduction(count=1000):
    rng = rng_for("eisen-reduction")
    for k in range(count):
        backend = (EISEN2, EISEN3, EISEN5)[k % 3]
        x = rand_nonzero_elem(rng, backend)
        assert x * backend.zeta() ** (backend.p - 1) == x * backend.elem(-backend.p)


def test_valuation_multiplicative():
    check_valuation_multiplicative()


def test_valuation_subadditive():
    check_valuation_subadditive()


def test_section_monoid_hom():
    check_section_monoid_hom()


def test_angular_multiplicative():
    check_angular_multiplicative()


def test_eisenstein_reduction():
    check_eisenstein_reduction()
