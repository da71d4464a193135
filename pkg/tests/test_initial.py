from fractions import Fraction

import pytest

from tropdiff.diffpoly import (
    DiffPoly,
    ExponentMatrix,
    eval_tropical,
    tropicalize_poly,
)
from tropdiff.errors import TruncationAmbiguous
from tropdiff.fields import ResidueElem
from tropdiff.initial import (
    ResiduePoly,
    initial_form,
    initial_system_monomial_check,
    is_monomial,
)
from tropdiff.semiring import TropNum
from tropdiff.series import PowerSeries, TropSeries
from tropdiff.verify import exp_equation, exp_tropical_closed_form

from helpers import (
    EISEN2,
    EISEN3,
    EISEN5,
    initial_form_literal,
    rand_full_trop_series,
    rand_nonzero_diffpoly,
    rand_trop_series,
    rng_for,
)

X = ExponentMatrix.var(0, 0)
X1 = ExponentMatrix.var(0, 1)


def x_prime_plus_x(p):
    return ResiduePoly.make(p, 1, {X1: ResidueElem(p, 1), X: ResidueElem(p, 1)})


def test_initial_form_worked_example():
    for p in (2, 3, 5):
        _, f = exp_equation(p, 6 * p)
        s = exp_tropical_closed_form(p, 6 * p)
        assert initial_form(f, (s,)) == x_prime_plus_x(p)


def test_initial_form_zero_and_monomial():
    backend = EISEN3
    nv = backend.nat_val
    # all windows infinite: the evaluation is infinite, the initial form zero
    f = DiffPoly.make(backend, 1, 6, {X * X1: PowerSeries.one(backend, 6)})
    s = TropSeries.inf(nv, 6)
    assert initial_form(f, (s,)).is_zero
    assert eval_tropical(tropicalize_poly(f), (s,)).value.is_inf

    x_poly = DiffPoly.var(backend, 1, 6, 0, 0)
    s = rand_full_trop_series(rng_for("monomial-x"), nv, 6)
    form = initial_form(x_poly, (s,))
    assert form == ResiduePoly.make(3, 1, {X: ResidueElem(3, 1)})
    assert is_monomial(form)


def test_is_monomial():
    assert not is_monomial(x_prime_plus_x(3))
    assert is_monomial(ResiduePoly.make(3, 1, {ExponentMatrix.var(0, 3): ResidueElem(3, 2)}))
    assert not is_monomial(ResiduePoly.zero(3, 1))


def test_truncation_ambiguity():
    backend = EISEN3
    nv = backend.nat_val
    one = PowerSeries.one(backend, 6)
    f = DiffPoly.make(backend, 1, 6, {X1: one, X: -one})

    # S known only at degree 0: the derivative window is empty, so the x'
    # term could still tie or beat the x term at first coordinate 0
    s0 = TropSeries.monomial(nv, 0, TropNum.of(0), 0)
    with pytest.raises(TruncationAmbiguous):
        initial_form(f, (s0,))

    # S known to degree 6 pins the derivative weight above 6: the all-INF
    # window is data, and the x term is an exact monomial minimum
    s6 = TropSeries.monomial(nv, 6, TropNum.of(0), 0)
    form = initial_form(f, (s6,))
    assert is_monomial(form) and form.terms[0][0] == X


def test_monomial_check_worked_example():
    for p in (2, 3, 5):
        _, f = exp_equation(p, 6 * p)
        s = exp_tropical_closed_form(p, 6 * p)
        report = initial_system_monomial_check([f], (s,), 3 * p)
        assert report.monomial_free and report.cross_check_ok
        assert report.verdict == f"MONOMIAL_FREE_UP_TO_{3 * p}"
        assert report.solution_report.all_vanish


def test_monomial_check_perturbed_witness():
    p = 3
    _, f = exp_equation(p, 18)
    s = exp_tropical_closed_form(p, 18)
    cs = list(s.coeffs)
    cs[3] = TropNum(cs[3].value + 1)
    perturbed = TropSeries(s.nat_val, 18, tuple(cs))
    report = initial_system_monomial_check([f], (perturbed,), 9)
    assert not report.monomial_free
    assert report.witnesses
    l, k = report.witnesses[0]
    assert l == 0 and k <= 3
    assert report.verdict == "MONOMIAL_FOUND"


def test_monomial_check_empty_generators():
    s = rand_full_trop_series(rng_for("empty-gens"), EISEN3.nat_val, 6)
    report = initial_system_monomial_check([], (s,), 4)
    assert report.monomial_free and not report.witnesses


def check_initial_biconditionals(count=1000):
    """zero <=> infinite evaluation; monomial <=> unique finite attainment."""
    rng = rng_for("initial-biconditionals")
    backend = EISEN3
    nv = backend.nat_val
    completed = 0
    for k in range(count):
        f = rand_nonzero_diffpoly(rng, backend, 1, 6, max_terms=3, max_order=2,
                                  max_degree=2)
        if k % 3 == 0:
            s = rand_trop_series(rng, nv, 6, inf_prob=0.4)
        else:
            s = rand_full_trop_series(rng, nv, 6)
        report = eval_tropical(tropicalize_poly(f), (s,))
        try:
            form = initial_form(f, (s,))
        except TruncationAmbiguous:
            assert report.truncation_limited
            continue
        completed += 1
        assert form.is_zero == report.value.is_inf
        assert is_monomial(form) == (not report.value.is_inf
                                     and len(report.attainment) == 1)
        if not form.is_zero:
            assert tuple(lam for lam, _ in form.terms) == report.attainment
    assert completed >= count // 2


def check_initial_multiplicativity(count=50):
    """in_S(fg) equals in_S(f) * in_S(g) over the residue field."""
    rng = rng_for("initial-mult")
    backend = EISEN3
    nv = backend.nat_val
    for _ in range(count):
        f = rand_nonzero_diffpoly(rng, backend, 1, 8, max_terms=2, max_order=1,
                                  max_degree=1)
        g = rand_nonzero_diffpoly(rng, backend, 1, 8, max_terms=2, max_order=1,
                                  max_degree=1)
        s = rand_full_trop_series(rng, nv, 8)
        assert initial_form(f * g, (s,)) == initial_form(f, (s,)) * initial_form(g, (s,))


def check_initial_literal_oracle(count=50):
    """The angular-component shortcut agrees with the literal h_S expansion."""
    rng = rng_for("initial-literal")
    for k in range(count):
        backend = (EISEN3, EISEN2, EISEN5)[k % 3]
        nv = backend.nat_val
        e = backend.ramification
        f = rand_nonzero_diffpoly(rng, backend, 1, 8, max_terms=3, max_order=2,
                                  max_degree=2)
        # coefficients inside the value group (1/e)Z so the section applies
        coeffs = tuple(TropNum.of(Fraction(rng.randint(-6, 6), e)) for _ in range(9))
        s = TropSeries(nv, 8, coeffs)
        assert initial_form(f, (s,)) == initial_form_literal(f, (s,))


def test_initial_biconditionals():
    check_initial_biconditionals()


def test_initial_multiplicativity():
    check_initial_multiplicativity()


def test_initial_literal_oracle():
    check_initial_literal_oracle()
