"""Executable identity checks, each returning an IdentityReport.

Every check computes both sides by independent routes (separate series,
term-wise differentiation, quadrature) and compares them at a tolerance
chosen for the dominant error source: 1e-11 to 1e-12 for pure series
identities, 1e-8 for quadrature-based transforms, 1e-6 for the Airy
representation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass, replace
from typing import Callable, Iterable

from .errors import DomainError, QuadratureBudgetError, TruncationError
from .numerics import stirling2
from .operators import (
    EULER,
    D,
    OperatorPolynomial,
    apply_to_series,
    euler_power,
    humbert_ode,
    humbert_ode_residual,
    remodified_ode,
    remodified_residual_sides,
    xi_space_residual,
)
from .quadrature import QuadratureResult, integrate_interval, integrate_real_line, integrate_semi_infinite
from .series import (
    AIRY_RANGE,
    DEFAULT_POLICY,
    TruncationPolicy,
    airy_ai,
    airy_ai_prime,
    classical_bessel_I,
    classical_bessel_J0,
    humbert2,
    humbert_generalized,
    humbert_multi,
    humbert_series,
    remodified,
)

__all__ = [
    "AIRY_DOMAINS",
    "IdentityReport",
    "SUITES",
    "airy_moment_value",
    "check_airy_domains",
    "airy_transform_integral",
    "check_airy_representation",
    "check_classical_reduction",
    "check_derivative_recurrence",
    "check_gauss_identity",
    "check_generating_function",
    "check_humbert_ode_coefficients",
    "check_index_recurrence",
    "check_laplace_identity",
    "check_negative_index",
    "check_ode_residual_suite",
    "check_reduction",
    "check_remodified_classical_operator",
    "check_remodified_expansions",
    "check_stirling_operator",
    "run_suite",
]

AIRY_DOMAINS = ("half_line", "full_line")
# Ai(t) < 1e-18 at the cutoff, so the dropped upper tail is negligible even
# against the growth of the I(0,0)(xt/3 | 1/3) factor
AIRY_UPPER_CUTOFF = AIRY_RANGE


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of one identity check.

    ``mode`` says which residual the tolerance applies to ("rel" or "abs").
    """

    identity_name: str
    parameters: dict
    lhs: float
    rhs: float
    abs_residual: float
    rel_residual: float
    tolerance: float
    mode: str
    passed: bool
    notes: str = ""
    error_estimate: float | None = None  # quadrature-backed checks only

    @classmethod
    def compare(
        cls,
        name: str,
        parameters: dict,
        lhs: float,
        rhs: float,
        tolerance: float,
        mode: str = "rel",
        notes: str = "",
    ) -> IdentityReport:
        if mode not in ("rel", "abs"):
            raise DomainError(f"unknown tolerance mode {mode!r}")
        abs_res = abs(lhs - rhs)
        if rhs != 0:
            rel_res = abs_res / abs(rhs)
        else:
            rel_res = 0.0 if abs_res == 0 else abs_res / abs(lhs)
        measured = rel_res if mode == "rel" else abs_res
        return cls(
            name, dict(parameters), float(lhs), float(rhs), abs_res, rel_res,
            tolerance, mode, measured <= tolerance, notes,
        )

    @property
    def measured(self) -> float:
        return self.rel_residual if self.mode == "rel" else self.abs_residual

    def to_dict(self) -> dict:
        return asdict(self)


def _worst(reports: list[IdentityReport], extra_notes: str = "") -> IdentityReport:
    """The least favourable of several comparisons of one identity.

    Notes list every comparison so nothing is hidden by the choice.
    """
    worst = max(reports, key=lambda r: (not r.passed, r.measured / r.tolerance))
    summary = "; ".join(f"{r.notes or r.identity_name}: {r.mode} residual {r.measured:.3e}" for r in reports)
    notes = summary if not extra_notes else f"{summary}; {extra_notes}"
    return IdentityReport(
        worst.identity_name, worst.parameters, worst.lhs, worst.rhs, worst.abs_residual,
        worst.rel_residual, worst.tolerance, worst.mode, worst.passed, notes, worst.error_estimate,
    )


# -- recurrences -------------------------------------------------------------


def _derivative(m1: int, m2: int, x: float, policy: TruncationPolicy) -> float:
    ev = humbert2(m1, m2, x, policy)
    return apply_to_series(D, humbert_series((m1, m2), ev.terms_used + 2), x)


def check_derivative_recurrence(
    m1: int, m2: int, x: float, policy: TruncationPolicy = DEFAULT_POLICY
) -> IdentityReport:
    """d/dx I_{m1,m2} = I_{m1+1,m2+1}; lhs by term-wise differentiation."""
    lhs = _derivative(m1, m2, x, policy)
    rhs = humbert2(m1 + 1, m2 + 1, x, policy).value
    return IdentityReport.compare(
        "derivative_recurrence", {"m1": m1, "m2": m2, "x": x}, lhs, rhs, 1e-11
    )


def check_index_recurrence(
    which: int, m1: int, m2: int, x: float, policy: TruncationPolicy = DEFAULT_POLICY
) -> IdentityReport:
    """m_k I = I(lowered) - x I_{m1+1,m2+1}, and the ladder form (m_k + xD) I = I(lowered).

    The returned report is the worse of the two forms.
    """
    if which not in (1, 2):
        raise DomainError(f"which must be 1 or 2, got {which!r}")
    mk = m1 if which == 1 else m2
    lowered = (m1 - 1, m2) if which == 1 else (m1, m2 - 1)
    params = {"which": which, "m1": m1, "m2": m2, "x": x}
    ev = humbert2(m1, m2, x, policy)
    i_low = humbert2(*lowered, x, policy).value
    i_up = humbert2(m1 + 1, m2 + 1, x, policy).value

    if mk == 0:
        # lhs is exactly zero; the rhs is a cancellation, judged absolutely
        three = IdentityReport.compare(
            "index_recurrence", params, 0.0, i_low - x * i_up, 1e-13, "abs", "three-term form"
        )
    else:
        three = IdentityReport.compare(
            "index_recurrence", params, mk * ev.value, i_low - x * i_up, 1e-11, "rel", "three-term form"
        )
    series = humbert_series((m1, m2), ev.terms_used + 2)
    ladder_lhs = apply_to_series(mk + EULER, series, x)
    ladder = IdentityReport.compare(
        "index_recurrence", params, ladder_lhs, i_low, 1e-11, "rel", "ladder form"
    )
    return _worst([three, ladder])


def check_negative_index(
    m2: int, x: float, policy: TruncationPolicy = DEFAULT_POLICY
) -> IdentityReport:
    """I_{-1,m2}(x) = x I_{1,m2+1}(x), from the reciprocal-factorial convention."""
    lhs = humbert2(-1, m2, x, policy).value
    rhs = x * humbert2(1, m2 + 1, x, policy).value
    return IdentityReport.compare("negative_index", {"m2": m2, "x": x}, lhs, rhs, 1e-12)


# -- generating function -----------------------------------------------------


def check_generating_function(
    p: int, x: float, M: int, tolerance: float | None = None,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> IdentityReport:
    """Sum of I_{m}(x) over m in [-M, M]^p against exp(p + x) (all u_j = 1)."""
    if not 2 <= p <= 4:
        raise DomainError(f"generating-function check supports 2 <= p <= 4, got {p}")
    if M < 1:
        raise DomainError("M must be >= 1")
    if tolerance is None:
        tolerance = 1e-8 if p == 2 else 1e-6
    full, inner = [], []
    for m in itertools.product(range(-M, M + 1), repeat=p):
        v = humbert_multi(m, x, policy).value
        full.append(v)
        if M >= 2 and max(abs(mk) for mk in m) <= M - 2:
            inner.append(v)
    lhs = math.fsum(full)
    rhs = math.exp(p + x)
    notes = ""
    if M >= 2:
        prev = math.fsum(inner)
        notes = (
            f"M={M - 2}: sum={prev!r} rel err={abs(prev - rhs) / rhs:.3e}; "
            f"M={M}: rel err={abs(lhs - rhs) / rhs:.3e}"
        )
    return IdentityReport.compare(
        "generating_function", {"p": p, "x": x, "M": M}, lhs, rhs, tolerance, notes=notes
    )


# -- reductions --------------------------------------------------------------


def check_reduction(
    n: int, q: int, x: float, policy: TruncationPolicy = DEFAULT_POLICY
) -> IdentityReport:
    """I_q(n, x) = (x/n)^q I_{1..1,0..0}((x/n)^n).

    n = 3, q = 0 is also compared with I_{0,0}((x/3)^3) and n = 2 with the
    classical I_q(x).
    """
    if n < 2 or not 0 <= q <= n - 1:
        raise DomainError(f"reduction needs n >= 2 and 0 <= q <= n-1, got ({n}, {q})")
    params = {"n": n, "q": q, "x": x}
    lhs = remodified(n, q, x, policy).value
    m = (1,) * q + (0,) * (n - 1 - q)
    xi = (x / n) ** n
    reports = [
        IdentityReport.compare(
            "reduction", params, lhs, (x / n) ** q * humbert_multi(m, xi, policy).value,
            1e-12, notes=f"multi-index {m}",
        )
    ]
    if n == 3 and q == 0:
        reports.append(
            IdentityReport.compare(
                "reduction", params, lhs, humbert2(0, 0, xi, policy).value, 1e-12,
                notes="two-index I(0,0)",
            )
        )
    if n == 2:
        reports.append(
            IdentityReport.compare(
                "reduction", params, lhs, classical_bessel_I(q, x), 1e-12,
                notes=f"classical I_{q}",
            )
        )
    return _worst(reports)


def check_classical_reduction(
    q: int, x: float, policy: TruncationPolicy = DEFAULT_POLICY
) -> IdentityReport:
    """I_q(2, x) against the classical modified Bessel series I_q(x), q in {0, 1}."""
    if q not in (0, 1):
        raise DomainError("only q = 0, 1 exist for n = 2")
    return IdentityReport.compare(
        "classical_reduction", {"q": q, "x": x},
        remodified(2, q, x, policy).value, classical_bessel_I(q, x), 1e-12,
    )


# -- integral transforms -----------------------------------------------------


def _quad_report(name, params, run: Callable[[], QuadratureResult], rhs, tol, notes=""):
    try:
        res = run()
    except (QuadratureBudgetError, TruncationError) as exc:
        best = getattr(exc, "best", None) or getattr(exc, "partial", None)
        lhs = best.value if best is not None else math.nan
        rep = IdentityReport.compare(name, params, lhs if math.isfinite(lhs) else 0.0, rhs, tol,
                                     notes=f"{notes}; quadrature failed: {exc}".strip("; "))
        return replace(rep, passed=False, error_estimate=math.inf)
    extra = f"quadrature error estimate {res.error_estimate:.3e}, {res.evaluations} evaluations"
    rep = IdentityReport.compare(name, params, res.value, rhs, tol,
                                 notes=f"{notes}; {extra}" if notes else extra)
    return replace(rep, error_estimate=res.error_estimate)


def check_laplace_identity(
    beta: float, policy: TruncationPolicy = DEFAULT_POLICY
) -> IdentityReport:
    """int_0^inf I_{0,0}(-x) e^{-beta x} dx = J_0(2/sqrt(beta)) / beta."""
    if not beta >= 0.5:
        raise DomainError(f"Laplace check validated for beta >= 0.5, got {beta!r}")

    def integrand(x):
        w = math.exp(-beta * x)
        if w == 0.0:
            return 0.0
        return humbert2(0, 0, -x, policy).value * w

    rhs = classical_bessel_J0(2 / math.sqrt(beta)) / beta
    return _quad_report(
        "laplace_transform", {"beta": beta},
        lambda: integrate_semi_infinite(integrand, 1e-11 / beta), rhs, 1e-8,
    )


def check_gauss_identity(
    beta: float, policy: TruncationPolicy = DEFAULT_POLICY
) -> IdentityReport:
    """int I_{0,0}(x) e^{-beta x^2} dx = sqrt(pi/beta) I_{0,0}(1/(4 beta) | 2)."""
    if not beta >= 0.5:
        raise DomainError(f"Gaussian check validated for beta >= 0.5, got {beta!r}")

    def integrand(x):
        w = math.exp(-beta * x * x)
        if w == 0.0:
            return 0.0
        return humbert2(0, 0, x, policy).value * w

    scale = math.sqrt(math.pi / beta)
    rhs = scale * humbert_generalized(0, 0, 1 / (4 * beta), 2.0, policy).value
    return _quad_report(
        "gauss_transform", {"beta": beta},
        lambda: integrate_real_line(integrand, 1e-11 * scale), rhs, 1e-8,
    )


def airy_moment_value(x: float, domain: str) -> float:
    """Closed form of int I_{0,0}(xt/3 | 1/3) Ai(t) dt, summed over Airy moments.

    half_line: (1/3) sum_s (x 3^{-4/3})^s / Gamma(s/3 + 1)^3.
    full_line: only s = 3j moments survive, giving I_{0,0}(x^3 / 81).
    """
    if domain == "full_line":
        return humbert2(0, 0, x**3 / 81).value
    if domain != "half_line":
        raise DomainError(f"unknown domain {domain!r}")
    y = x * 3 ** (-4 / 3)
    total, term, s = 1.0, 1.0, 0
    while True:
        term *= y * (math.gamma(s / 3 + 1) / math.gamma(s / 3 + 4 / 3)) ** 3
        s += 1
        total += term
        if abs(term) < 1e-17 * total:
            return total / 3


def airy_transform_integral(
    c: float, domain: str, policy: TruncationPolicy = DEFAULT_POLICY
) -> QuadratureResult:
    """int I_{0,0}(c t | 1/3) Ai(t) dt over ``domain``.

    The upper limit is cut at t = 16, where Ai < 1e-18. The full line is
    cut below at -16, the end of Ai's validated range; the oscillatory tail
    beyond it is approximated by two integrations by parts through
    Ai'' = t Ai, and twice the size of the next term goes into the error
    estimate.
    """
    if domain not in AIRY_DOMAINS:
        raise DomainError(f"domain must be one of {AIRY_DOMAINS}, got {domain!r}")
    k = 1 / 3

    def g(t):
        return humbert_generalized(0, 0, c * t, k, policy).value

    def integrand(t):
        return g(t) * airy_ai(t)

    hi = AIRY_UPPER_CUTOFF
    lo = 0.0 if domain == "half_line" else -AIRY_RANGE
    panels = 4 if domain == "half_line" else 16
    upper_tail = abs(g(hi)) * airy_ai(hi) / math.sqrt(hi)
    lower_tail = 0.0
    lower_correction = 0.0
    if domain == "full_line":
        # with G = g/t and Ai = Ai''/t, parts twice give
        #   int_{-inf}^{lo} G Ai'' = G Ai' - G' Ai + int_{-inf}^{lo} G'' Ai,
        # the boundary terms are added; the last integral is estimated as twice
        # its own leading term |G''/t Ai'|, which alone runs a few percent low
        h = 1e-2
        g0, gp, gm = g(lo) / lo, g(lo + h) / (lo + h), g(lo - h) / (lo - h)
        d1 = (gp - gm) / (2 * h)
        d2 = (gp - 2 * g0 + gm) / (h * h)
        lower_correction = g0 * airy_ai_prime(lo) - d1 * airy_ai(lo)
        lower_tail = 2 * abs(d2 / lo * airy_ai_prime(lo))
    r = integrate_interval(integrand, lo, hi, 1e-10, initial_panels=panels)
    return QuadratureResult(r.value + lower_correction, r.error_estimate + upper_tail + lower_tail,
                            r.evaluations)


def check_airy_representation(
    x: float, domain: str, policy: TruncationPolicy = DEFAULT_POLICY
) -> IdentityReport:
    """int I_{0,0}(xt/3 | 1/3) Ai(t) dt over ``domain`` against I_0(3, x)."""
    if not 0 <= x <= 3:
        raise DomainError(f"Airy check validated for 0 <= x <= 3, got {x!r}")
    if domain not in AIRY_DOMAINS:
        raise DomainError(f"domain must be one of {AIRY_DOMAINS}, got {domain!r}")
    lo = 0.0 if domain == "half_line" else -AIRY_RANGE
    rhs = remodified(3, 0, x, policy).value
    notes = (
        f"domain={domain}, integrated over [{lo:g}, {AIRY_UPPER_CUTOFF:g}], "
        f"moment-series value of this integral {airy_moment_value(x, domain)!r}"
    )
    return _quad_report("airy_representation", {"x": x, "domain": domain},
                        lambda: airy_transform_integral(x / 3, domain, policy), rhs, 1e-6, notes)


def check_airy_domains(x: float, policy: TruncationPolicy = DEFAULT_POLICY) -> list[IdentityReport]:
    """Both domain variants at x, each annotated with the verdict."""
    reports = [check_airy_representation(x, d, policy) for d in AIRY_DOMAINS]
    passing = [r.parameters["domain"] for r in reports if r.passed]
    if len(passing) == 1:
        verdict = f"winning domain: {passing[0]}"
    elif passing:
        verdict = "both domains pass"
    else:
        closest = min(reports, key=lambda r: r.rel_residual).parameters["domain"]
        verdict = f"no domain passes (closest: {closest})"
    return [replace(r, notes=f"{r.notes}; {verdict}") for r in reports]


# -- ODEs --------------------------------------------------------------------


def check_ode_residual_suite(
    family: str, params: tuple[int, int], grid: Iterable[float],
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> list[IdentityReport]:
    """Residual of the derived ODE on the truncated series, one report per x.

    family is "two_index" with params (m1, m2) or "remodified" with (n, q).
    Tolerance is 1e-8 absolute, scaled by max(1, |rhs|).
    """
    a, b = params
    out = []
    for x in grid:
        if not x > 0:
            raise DomainError("ODE residual grid points must be positive")
        notes = ""
        if family == "two_index":
            lhs, rhs = humbert_ode_residual(a, b, x, policy)
            pars = {"family": family, "m1": a, "m2": b, "x": x}
        elif family == "remodified":
            lhs, rhs = remodified_residual_sides(a, b, x, policy)
            pars = {"family": family, "n": a, "q": b, "x": x}
            if b >= 1:
                notes = f"xi-space residual {xi_space_residual(a, b, x, policy):.3e}"
        else:
            raise DomainError(f"unknown family {family!r}")
        tol = 1e-8 * max(1.0, abs(rhs))
        out.append(IdentityReport.compare("ode_residual", pars, lhs, rhs, tol, "abs", notes))
    return out


def _exact_report(name: str, params: dict, mismatches: int, notes: str) -> IdentityReport:
    # exact checks: lhs counts mismatched coefficients, which must be 0
    return IdentityReport.compare(name, params, float(mismatches), 0.0, 0.5, "abs", notes)


def check_stirling_operator(p_max: int = 12) -> IdentityReport:
    """(xD)^p == sum_r S(p, r) x^r D^r exactly for p <= p_max."""
    bad = 0
    for p in range(p_max + 1):
        op = euler_power(p)
        for r in range(p + 1):
            bad += op.coefficient(r, r) != stirling2(p, r)
        bad += sum(1 for (a, b) in op.terms if a != b)
    return _exact_report("euler_stirling_expansion", {"p_max": p_max}, bad,
                         "exact rational comparison; lhs counts mismatches")


def check_humbert_ode_coefficients(lo: int = -3, hi: int = 5) -> IdentityReport:
    """D (m1 + xD)(m2 + xD) == x^2 D^3 + (m1+m2+3) x D^2 + (m1+1)(m2+1) D on a grid."""
    bad = 0
    for m1 in range(lo, hi + 1):
        for m2 in range(lo, hi + 1):
            expected = OperatorPolynomial({
                (2, 3): 1, (1, 2): m1 + m2 + 3, (0, 1): (m1 + 1) * (m2 + 1),
            })
            bad += humbert_ode(m1, m2) != expected
    return _exact_report("humbert_ode_coefficients", {"lo": lo, "hi": hi}, bad,
                         "exact rational comparison; lhs counts mismatching (m1, m2)")


def check_remodified_expansions(n_max: int = 6) -> IdentityReport:
    """Euler-power and Stirling-sum builds of the re-modified ODE agree exactly."""
    bad = 0
    for n in range(2, n_max + 1):
        for q in range(n):
            bad += remodified_ode(n, q, "euler") != remodified_ode(n, q, "stirling")
    return _exact_report("remodified_ode_expansions", {"n_max": n_max}, bad,
                         "exact rational comparison; lhs counts mismatching (n, q)")


def check_remodified_classical_operator() -> IdentityReport:
    """x^2 (lhs - 1) for (n, q) = (2, 1) is the order-1 modified Bessel operator."""
    lhs, s = remodified_ode(2, 1)
    cleared = OperatorPolynomial.monomial(2, 0) * (lhs - OperatorPolynomial.monomial(s, 0))
    bessel = OperatorPolynomial({(2, 2): 1, (1, 1): 1, (0, 0): -1, (2, 0): -1})
    return _exact_report("remodified_classical_operator", {"n": 2, "q": 1},
                         int(cleared != bessel), f"cleared operator: {cleared}")


# -- suites ------------------------------------------------------------------

RECURRENCE_GRID_X = (0.25, 1.0, 2.5)
REDUCTION_X = (0.5, 1.0, 2.0, 4.0)
ODE_GRID = (0.5, 1.0, 2.0)
ODE_FAMILIES = (
    ("two_index", (0, 0)),
    ("two_index", (1, 2)),
    ("remodified", (3, 0)),
    ("remodified", (2, 1)),
    ("remodified", (3, 1)),
    ("remodified", (3, 2)),
    ("remodified", (4, 1)),
)


def _recurrences(policy):
    out = []
    for m1, m2, x in itertools.product(range(5), range(5), RECURRENCE_GRID_X):
        out.append(check_derivative_recurrence(m1, m2, x, policy))
        out.append(check_index_recurrence(1, m1, m2, x, policy))
        out.append(check_index_recurrence(2, m1, m2, x, policy))
    for m2, x in itertools.product((0, 1, 2), (0.5, 1.0, 2.0)):
        out.append(check_negative_index(m2, x, policy))
    return out


def _reductions(policy):
    out = []
    for n in (2, 3, 4, 5):
        for q in range(n):
            for x in REDUCTION_X:
                out.append(check_reduction(n, q, x, policy))
    for q in (0, 1):
        for i in range(50):
            out.append(check_classical_reduction(q, 10 * i / 49, policy))
    return out


def _generating(policy):
    return [
        check_generating_function(2, 1.0, 12, policy=policy),
        check_generating_function(2, 0.0, 12, policy=policy),
        check_generating_function(3, 0.5, 8, policy=policy),
    ]


def _ode(policy):
    out = [
        check_stirling_operator(12),
        check_humbert_ode_coefficients(-3, 5),
        check_remodified_expansions(6),
        check_remodified_classical_operator(),
    ]
    for family, params in ODE_FAMILIES:
        out.extend(check_ode_residual_suite(family, params, ODE_GRID, policy))
    return out


def _transforms(policy):
    out = [check_laplace_identity(b, policy) for b in (1.0, 2.0, 4.0, 100.0)]
    out += [check_gauss_identity(b, policy) for b in (0.5, 1.0, 2.0)]
    for x in (0.0, 1.0, 2.0, 3.0):
        out.extend(check_airy_domains(x, policy))
    return out


SUITES: dict[str, Callable[[TruncationPolicy], list[IdentityReport]]] = {
    "recurrences": _recurrences,
    "reductions": _reductions,
    "generating": _generating,
    "ode": _ode,
    "transforms": _transforms,
}


def run_suite(name: str, policy: TruncationPolicy = DEFAULT_POLICY) -> list[IdentityReport]:
    """Reports for a named suite ("all" runs every suite), in fixed order."""
    if name == "all":
        return [r for suite in SUITES.values() for r in suite(policy)]
    if name not in SUITES:
        raise DomainError(f"unknown suite {name!r}; choose from all, {', '.join(SUITES)}")
    return SUITES[name](policy)
