import math

import mpmath
import pytest
from hypothesis import given, strategies as st

from humbert.errors import DomainError
from humbert.identities import (
    SUITES,
    IdentityReport,
    airy_moment_value,
    check_airy_domains,
    check_airy_representation,
    check_derivative_recurrence,
    check_gauss_identity,
    check_generating_function,
    check_index_recurrence,
    check_laplace_identity,
    check_negative_index,
    check_ode_residual_suite,
    check_reduction,
    run_suite,
)


def test_compare_modes():
    r = IdentityReport.compare("t", {}, 1.0 + 1e-10, 1.0, 1e-9)
    assert r.passed and r.mode == "rel"
    assert r.rel_residual == pytest.approx(1e-10, rel=1e-5)
    r = IdentityReport.compare("t", {}, 2e-13, 0.0, 1e-13, "abs")
    assert not r.passed
    with pytest.raises(DomainError):
        IdentityReport.compare("t", {}, 0.0, 0.0, 1.0, "bogus")


def test_report_round_trips_through_dict():
    r = check_negative_index(1, 1.0)
    assert IdentityReport(**r.to_dict()) == r


@given(st.integers(0, 5), st.integers(0, 5), st.floats(0.05, 6.0))
def test_recurrences_hold(m1, m2, x):
    assert check_derivative_recurrence(m1, m2, x).passed
    assert check_index_recurrence(1, m1, m2, x).passed
    assert check_index_recurrence(2, m1, m2, x).passed


def test_index_recurrence_reports_both_forms():
    r = check_index_recurrence(1, 2, 1, 1.0)
    assert "three-term form" in r.notes and "ladder form" in r.notes


def test_negative_index_example():
    r = check_negative_index(0, 2.0)
    assert r.passed and r.rel_residual <= 1e-12


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_reductions(n):
    for q in range(n):
        for x in (0.5, 1.0, 2.0, 4.0):
            assert check_reduction(n, q, x).passed


def test_reduction_n3_includes_two_index_form():
    assert "two-index I(0,0)" in check_reduction(3, 0, 1.0).notes


def test_generating_function_two_index():
    r = check_generating_function(2, 1.0, 12)
    assert r.rhs == pytest.approx(math.e**3, rel=1e-15)
    assert r.passed


def test_generating_function_converges_in_M():
    errs = [check_generating_function(2, 1.0, M, tolerance=1.0).rel_residual for M in (2, 4, 6, 8)]
    assert all(a > b for a, b in zip(errs, errs[1:]))


def test_generating_function_p3_matches_independent_sum():
    # the truncated box sum itself, recomputed in high precision
    x = mpmath.mpf("0.5")
    M = 8
    total = mpmath.mpf(0)
    for m1 in range(-M, M + 1):
        for m2 in range(-M, M + 1):
            for m3 in range(-M, M + 1):
                r0 = max(0, -m1, -m2, -m3)
                total += mpmath.nsum(
                    lambda r: x**r / (mpmath.factorial(r) * mpmath.factorial(m1 + r)
                                      * mpmath.factorial(m2 + r) * mpmath.factorial(m3 + r)),
                    [r0, r0 + 40],
                )
    r = check_generating_function(3, 0.5, 8)
    assert r.lhs == pytest.approx(float(total), rel=1e-13)


@pytest.mark.parametrize("beta", [1.0, 2.0, 4.0, 100.0])
def test_laplace(beta):
    r = check_laplace_identity(beta)
    assert r.passed
    assert r.rhs == pytest.approx(float(mpmath.besselj(0, 2 / mpmath.sqrt(beta)) / beta), rel=1e-14)


@pytest.mark.parametrize("beta", [0.5, 1.0, 2.0])
def test_gauss(beta):
    assert check_gauss_identity(beta).passed


def test_transform_domain_guards():
    with pytest.raises(DomainError):
        check_laplace_identity(0.1)
    with pytest.raises(DomainError):
        check_airy_representation(1.0, "upper_half")


def test_airy_moments_half_line_at_zero():
    # int_0^inf Ai = 1/3, int Ai = 1
    assert airy_moment_value(0.0, "half_line") == pytest.approx(1 / 3, rel=1e-15)
    assert airy_moment_value(0.0, "full_line") == 1.0


@pytest.mark.parametrize("x", [1.0, 3.0])
def test_airy_half_line_moment_series(x):
    # same quantity from an independent mpmath quadrature
    k = mpmath.mpf(1) / 3
    f = lambda t: mpmath.nsum(
        lambda r: (x * t / 3) ** r / (mpmath.factorial(r) * mpmath.gamma(k * r + 1) ** 2), [0, mpmath.inf]
    ) * mpmath.airyai(t)
    with mpmath.workdps(20):
        ref = mpmath.quad(f, [0, 2, 6, 12, 24])
    assert airy_moment_value(x, "half_line") == pytest.approx(float(ref), rel=1e-13)


@pytest.mark.parametrize("x", [0.0, 1.0, 2.0, 3.0])
def test_airy_quadrature_matches_moment_series(x):
    for r in check_airy_domains(x):
        moment = airy_moment_value(x, r.parameters["domain"])
        if r.parameters["domain"] == "half_line":
            assert r.lhs == pytest.approx(moment, rel=1e-10)
        else:
            # the oscillatory tail below t = -16 is cut; the report's error
            # estimate must cover what that costs
            assert abs(r.lhs - moment) <= r.error_estimate


def test_airy_report_names_verdict():
    for r in check_airy_domains(0.0):
        assert "domain" in r.notes
        assert ("winning domain" in r.notes) or ("no domain passes" in r.notes) or ("both" in r.notes)


def test_ode_suite_reports_xi_oracle():
    reps = check_ode_residual_suite("remodified", (3, 1), (0.5, 1.0))
    assert all(r.passed for r in reps)
    assert all("xi-space residual" in r.notes for r in reps)


def test_ode_suite_rejects_nonpositive_x():
    with pytest.raises(DomainError):
        check_ode_residual_suite("remodified", (3, 0), (0.0,))


def test_tightening_tolerance_turns_check_red():
    r = check_generating_function(2, 1.0, 12, tolerance=1e-20)
    assert not r.passed


def test_suites_are_deterministic():
    for name in ("recurrences", "ode"):
        assert run_suite(name) == run_suite(name)


def test_unknown_suite():
    with pytest.raises(DomainError):
        run_suite("nope")


def test_suite_order():
    assert list(SUITES) == ["recurrences", "reductions", "generating", "ode", "transforms"]


@pytest.mark.parametrize("x", [0.0, 1.0, 2.0, 3.0])
def test_airy_full_line_with_rescaled_argument(x):
    # the moment sum gives I_{0,0}(c^3/3), so c = x / 3^(2/3) lands on I_0(3, x)
    from humbert.identities import airy_transform_integral
    from humbert.series import remodified
    r = airy_transform_integral(x / 3 ** (2 / 3), "full_line")
    assert abs(r.value - remodified(3, 0, x).value) <= r.error_estimate


@pytest.mark.parametrize("x", [0.0, 1.0])
def test_generating_function_monotone_in_M(x):
    errs = [abs(check_generating_function(2, x, M, tolerance=1.0).lhs - math.exp(2 + x))
            for M in (4, 6, 8, 10, 12)]
    assert all(a >= b for a, b in zip(errs, errs[1:]))


@pytest.mark.parametrize("suite", ["recurrences", "reductions", "generating", "ode"])
def test_tightening_series_tolerance_keeps_passes(suite):
    from humbert.series import TruncationPolicy
    loose = run_suite(suite, TruncationPolicy(rel_tol=1e-10))
    tight = run_suite(suite, TruncationPolicy(rel_tol=1e-14))
    assert len(loose) == len(tight)
    for a, b in zip(loose, tight):
        assert not (a.passed and not b.passed), a.identity_name
