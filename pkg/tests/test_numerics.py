import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from humbert.errors import DomainError
from humbert.numerics import (
    Stirling2Table,
    binomial,
    falling_factorial,
    log_gamma,
    reciprocal_factorial,
    stirling2,
)


# small Stirling numbers, from the set-partition counts
KNOWN_S2 = {(4, 2): 7, (5, 3): 25, (6, 3): 90, (7, 4): 350, (10, 5): 42525}


@pytest.mark.parametrize("pr, expected", KNOWN_S2.items())
def test_stirling_known_values(pr, expected):
    assert stirling2(*pr) == expected


def test_stirling_edges():
    assert stirling2(0, 0) == 1
    assert stirling2(5, 0) == 0
    assert stirling2(3, 5) == 0
    assert all(stirling2(p, p) == 1 for p in range(30))
    assert all(stirling2(p, 1) == 1 for p in range(1, 30))


@given(st.integers(1, 60), st.integers(1, 60))
def test_stirling_recurrence(p, r):
    assert stirling2(p, r) == r * stirling2(p - 1, r) + stirling2(p - 1, r - 1)


@given(st.integers(0, 40))
def test_stirling_explicit_formula(p):
    # S(p, r) = (1/r!) sum_j (-1)^j C(r, j) (r - j)^p
    for r in range(p + 1):
        alt = sum((-1) ** j * math.comb(r, j) * (r - j) ** p for j in range(r + 1))
        assert stirling2(p, r) * math.factorial(r) == alt


@given(st.integers(0, 25), st.integers(-5, 5))
def test_powers_expand_in_falling_factorials(p, c):
    # c^p = sum_r S(p, r) (c)_r
    assert c**p == sum(stirling2(p, r) * falling_factorial(c, r) for r in range(p + 1))


def test_stirling_table_matches_function():
    tab = Stirling2Table.build(15)
    assert all(tab(p, r) == stirling2(p, r) for p in range(16) for r in range(16))


def test_stirling_rejects_negative():
    with pytest.raises(DomainError):
        stirling2(-1, 0)


@given(st.integers(0, 80), st.integers(0, 80))
def test_binomial_symmetry(n, k):
    if k <= n:
        assert binomial(n, k) == binomial(n, n - k)
    else:
        assert binomial(n, k) == 0


def test_falling_factorial_negative_base():
    # (-1)_3 = (-1)(-2)(-3)
    assert falling_factorial(-1, 3) == -6
    assert falling_factorial(3, 4) == 0
    assert falling_factorial(Fraction(1, 2), 2) == Fraction(-1, 4)


@pytest.mark.parametrize("m", [-5, -1])
def test_reciprocal_factorial_negative(m):
    assert reciprocal_factorial(m) == 0.0


@given(st.integers(0, 30))
def test_reciprocal_factorial_nonnegative(m):
    assert reciprocal_factorial(m) == pytest.approx(1 / math.factorial(m), rel=1e-15)


@given(st.floats(0.01, 150.0))
def test_log_gamma_against_mpmath(x):
    ref = float(mpmath.loggamma(mpmath.mpf(x)))
    # absolute near the zeros at 1 and 2, relative elsewhere
    assert abs(log_gamma(x) - ref) <= 1e-13 * max(1.0, abs(ref))


def test_log_gamma_third_against_integral():
    # Gamma(1/3) = int_0^inf t^(-2/3) e^(-t) dt, computed independently
    g = mpmath.quad(lambda t: t ** (-mpmath.mpf(2) / 3) * mpmath.exp(-t), [0, 1, mpmath.inf])
    assert log_gamma(1 / 3) == pytest.approx(float(mpmath.log(g)), rel=1e-14)


@pytest.mark.parametrize("x", [0.0, -1.0, -7.0, math.inf, math.nan])
def test_log_gamma_poles(x):
    with pytest.raises(DomainError):
        log_gamma(x)
