import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from humbert import quadrature as qmod
from humbert.errors import DomainError, QuadratureBudgetError
from humbert.quadrature import integrate_interval, integrate_real_line, integrate_semi_infinite


def test_gauss_nodes_match_legendre():
    # the 7-point Gauss rule embedded in the Kronrod set
    x, w = np.polynomial.legendre.leggauss(7)
    pos = sorted(zip(x, w), reverse=True)[:4]
    assert [p[0] for p in pos] == pytest.approx(qmod._XGK[1::2], abs=1e-15)
    assert [p[1] for p in pos] == pytest.approx(qmod._WG, abs=1e-15)


def test_kronrod_exact_for_degree_22():
    # K15 integrates polynomials up to degree 22 exactly
    for k in range(23):
        v, _ = qmod._gk15(lambda t: t**k, 0.0, 1.0)
        assert v == pytest.approx(1 / (k + 1), rel=1e-14)


@pytest.mark.parametrize("f, a, b, exact", [
    (math.sin, 0.0, math.pi, 2.0),
    (math.exp, -1.0, 2.0, math.e**2 - math.exp(-1)),
    (lambda t: 1 / (1 + t * t), -5.0, 5.0, 2 * math.atan(5.0)),
    (math.sqrt, 0.0, 1.0, 2 / 3),
    (lambda t: math.cos(40 * t), 0.0, 1.0, math.sin(40) / 40),
])
def test_finite_closed_forms(f, a, b, exact):
    r = integrate_interval(f, a, b, 1e-12)
    assert abs(r.value - exact) <= 1e-11
    assert abs(r.value - exact) <= r.error_estimate + 1e-14


@pytest.mark.parametrize("f, exact", [
    (lambda x: math.exp(-x), 1.0),
    (lambda x: x**3 * math.exp(-x), 6.0),
    (lambda x: 1 / (1 + x * x), math.pi / 2),
    (lambda x: math.exp(-x * x), math.sqrt(math.pi) / 2),
    (lambda x: math.exp(-2 * x) * math.cos(x), 2 / 5),
])
def test_semi_infinite_closed_forms(f, exact):
    r = integrate_semi_infinite(f, 1e-12)
    assert abs(r.value - exact) <= 1e-11
    assert abs(r.value - exact) <= r.error_estimate + 1e-15


@given(st.floats(0.2, 20.0))
def test_real_line_gaussian(beta):
    r = integrate_real_line(lambda x: math.exp(-beta * x * x), 1e-12)
    assert r.value == pytest.approx(math.sqrt(math.pi / beta), rel=1e-11)


@given(st.floats(-3, 3), st.floats(-3, 3))
def test_linearity(a, b):
    f = lambda x: math.exp(-x)
    g = lambda x: math.exp(-x * x)
    ra = integrate_semi_infinite(lambda x: a * f(x) + b * g(x), 1e-12).value
    rb = a * integrate_semi_infinite(f, 1e-12).value + b * integrate_semi_infinite(g, 1e-12).value
    assert abs(ra - rb) <= 1e-11 * (1 + abs(a) + abs(b))


def test_reversed_interval():
    assert integrate_interval(math.exp, 1.0, 0.0).value == pytest.approx(1 - math.e, rel=1e-14)


def test_deterministic():
    f = lambda x: math.exp(-x) * math.sin(3 * x) ** 2
    a = integrate_semi_infinite(f)
    b = integrate_semi_infinite(f)
    assert a == b


def test_tighter_tolerance_costs_more():
    f = lambda x: 1 / (1 + x**4)
    loose = integrate_semi_infinite(f, 1e-5)
    tight = integrate_semi_infinite(f, 1e-12)
    assert tight.evaluations > loose.evaluations
    exact = math.pi / (2 * math.sqrt(2))
    assert abs(tight.value - exact) < abs(loose.value - exact) or abs(tight.value - exact) < 1e-14


def test_budget_exhaustion():
    # 1/sqrt(x) tail decays too slowly for the budget
    with pytest.raises(QuadratureBudgetError) as info:
        integrate_semi_infinite(lambda x: 1 / math.sqrt(x + 1) / (1 + x) ** 0.1, 1e-12, max_evals=3000)
    assert info.value.best is not None
    assert info.value.best.evaluations <= 3000


def test_non_finite_integrand():
    with pytest.raises(DomainError):
        integrate_interval(lambda x: math.inf, 0.0, 1.0)


def test_bad_tolerance():
    with pytest.raises(DomainError):
        integrate_interval(math.sin, 0.0, 1.0, 0.0)
