"""Truncated power-series evaluation of the Humbert-Bessel family.

All evaluators share one summation driver: terms are generated by their
exact ratio t[r+1]/t[r], summed in increasing r, and the loop stops once two
consecutive terms fall below ``rel_tol * |partial sum|``. The dropped tail is
bounded by a geometric majorant, which is rigorous here because every term
ratio in this module is decreasing in r.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import gmpy2
from gmpy2 import mpfr

from .errors import DomainError, TruncationError

__all__ = [
    "AIRY_RANGE",
    "DEFAULT_POLICY",
    "Evaluation",
    "MultiIndex",
    "TruncationPolicy",
    "airy_ai",
    "airy_ai_prime",
    "classical_bessel_I",
    "classical_bessel_J0",
    "humbert2",
    "humbert_generalized",
    "humbert_multi",
    "humbert_series",
    "remodified",
    "remodified_series",
]

# Ai is validated on |t| <= AIRY_RANGE; the extended-precision Maclaurin sum
# keeps ~1e-15 relative accuracy over that whole range.
AIRY_RANGE = 16.0
J0_RANGE = 12.0


@dataclass(frozen=True)
class TruncationPolicy:
    rel_tol: float = 1e-14
    max_terms: int = 500

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise DomainError(f"rel_tol must be positive, got {self.rel_tol!r}")
        if self.max_terms < 1:
            raise DomainError(f"max_terms must be >= 1, got {self.max_terms!r}")


DEFAULT_POLICY = TruncationPolicy()


@dataclass(frozen=True)
class Evaluation:
    """A series value with its truncation diagnostics."""

    value: float
    terms_used: int
    tail_bound: float


@dataclass(frozen=True)
class MultiIndex:
    indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(int(m) for m in self.indices)
        if not idx:
            raise DomainError("a multi-index needs at least one entry")
        object.__setattr__(self, "indices", idx)

    @classmethod
    def of(cls, m: MultiIndex | Iterable[int]) -> MultiIndex:
        return m if isinstance(m, MultiIndex) else cls(tuple(m))

    def __iter__(self):
        return iter(self.indices)

    def __len__(self):
        return len(self.indices)

    @property
    def start(self) -> int:
        """First r with a nonzero term; earlier terms carry 1/(negative)! = 0."""
        return max(0, -min(self.indices))


def _sum_series(
    first: float,
    ratio: Callable[[int], float],
    r0: int,
    policy: TruncationPolicy,
    what: str,
) -> Evaluation:
    total = first
    term = first
    terms = 1
    if first == 0.0:
        return Evaluation(0.0, 1, 0.0)
    r = r0
    small = 0
    while True:
        if terms >= policy.max_terms:
            partial = Evaluation(total, terms, math.inf)
            raise TruncationError(
                f"{what}: no convergence within {policy.max_terms} terms", partial
            )
        term *= ratio(r)
        r += 1
        total += term
        terms += 1
        if term == 0.0:
            return Evaluation(total, terms, 0.0)
        if abs(term) < policy.rel_tol * abs(total):
            small += 1
            if small == 2:
                break
        else:
            small = 0
    nxt = abs(term * ratio(r))
    rho = min(abs(ratio(r + 1)), 0.999)
    return Evaluation(total, terms, nxt / (1.0 - rho))


def _first_term(x: float, r0: int, factorial_args: Sequence[int]) -> float:
    den = math.prod(math.factorial(a) for a in factorial_args)
    if r0 == 0:
        return float(Fraction(1, den))
    return x**r0 * float(Fraction(1, den))


def humbert_multi(
    m: MultiIndex | Iterable[int], x: float, policy: TruncationPolicy = DEFAULT_POLICY
) -> Evaluation:
    """I_{m1..mp}(x) = sum_r x^r / (r! prod_k (m_k + r)!)."""
    m = MultiIndex.of(m)
    r0 = m.start
    first = _first_term(x, r0, [r0, *(mk + r0 for mk in m)])
    if x == 0:
        return Evaluation(first, 1, 0.0)

    def ratio(r):
        den = r + 1
        for mk in m:
            den *= mk + r + 1
        return x / den

    return _sum_series(first, ratio, r0, policy, f"I{m.indices}({x})")


def humbert2(
    m1: int, m2: int, x: float, policy: TruncationPolicy = DEFAULT_POLICY
) -> Evaluation:
    """Two-index Humbert-Bessel function I_{m1,m2}(x)."""
    r0 = max(0, -m1, -m2)
    first = _first_term(x, r0, [r0, m1 + r0, m2 + r0])
    if x == 0:
        return Evaluation(first, 1, 0.0)

    def ratio(r):
        return x / ((r + 1) * (m1 + r + 1) * (m2 + r + 1))

    return _sum_series(first, ratio, r0, policy, f"I({m1},{m2})({x})")


def _gamma_ratio(a: float, k: float) -> float:
    """Gamma(a) / Gamma(a + k) for a > 0, k > 0."""
    if a + k < 170.0:
        return math.gamma(a) / math.gamma(a + k)
    return math.exp(math.lgamma(a) - math.lgamma(a + k))


def humbert_generalized(
    m1: int, m2: int, x: float, k: float, policy: TruncationPolicy = DEFAULT_POLICY
) -> Evaluation:
    """I_{m1,m2}(x|k) = sum_r x^r / (r! Gamma(kr+1+m1) Gamma(kr+1+m2))."""
    if not k > 0:
        raise DomainError(f"order parameter k must be positive, got {k!r}")
    if m1 < 0 or m2 < 0:
        raise DomainError("the generalized function takes nonnegative indices")
    first = 1.0 / (math.gamma(1 + m1) * math.gamma(1 + m2))
    if x == 0:
        return Evaluation(first, 1, 0.0)

    def ratio(r):
        a = k * r + 1
        return x / (r + 1) * _gamma_ratio(a + m1, k) * _gamma_ratio(a + m2, k)

    return _sum_series(first, ratio, 0, policy, f"I({m1},{m2})({x}|{k})")


def remodified(
    n: int, q: int, x: float, policy: TruncationPolicy = DEFAULT_POLICY
) -> Evaluation:
    """Re-modified Bessel function I_q(n, x).

    (x/n)^q sum_r (x/n)^(nr) / ((r!)^n (r+1)^q), defined for n >= 2 and
    0 <= q <= n - 1 (q = n - 1 included).
    """
    if n < 2:
        raise DomainError(f"remodified needs n >= 2, got n={n}")
    if not 0 <= q <= n - 1:
        raise DomainError(f"remodified needs 0 <= q <= n-1, got n={n}, q={q}")
    scale = (x / n) ** q
    if x == 0:
        return Evaluation(scale, 1, 0.0)
    u = (x / n) ** n

    def ratio(r):
        return u * (r + 1) ** q / ((r + 1) ** n * (r + 2) ** q)

    ev = _sum_series(1.0, ratio, 0, policy, f"I_{q}({n},{x})")
    return Evaluation(scale * ev.value, ev.terms_used, abs(scale) * ev.tail_bound)


_CLASSICAL = TruncationPolicy(rel_tol=1e-15, max_terms=500)


def classical_bessel_I(order: int, x: float) -> float:
    """Modified Bessel function of the first kind, integer order >= 0."""
    if order < 0:
        raise DomainError("classical_bessel_I takes order >= 0")
    h = x / 2
    first = h**order / math.factorial(order)
    if x == 0:
        return first

    def ratio(r):
        return h * h / ((r + 1) * (r + order + 1))

    return _sum_series(first, ratio, 0, _CLASSICAL, f"I_{order}({x})").value


def classical_bessel_J0(x: float) -> float:
    """J_0 by its power series; validated for |x| <= 12.

    The alternating terms grow to about I_0(x), so the sum is carried in
    MPFR with enough guard bits to absorb the cancellation.
    """
    if not abs(x) <= J0_RANGE:
        raise DomainError(f"classical_bessel_J0 validated for |x| <= {J0_RANGE}")
    if x == 0:
        return 1.0
    bits = 64 + int(1.5 * abs(x))
    with gmpy2.context(precision=bits):
        h2 = (mpfr(x) / 2) ** 2
        term = total = mpfr(1)
        eps = mpfr(2) ** -bits
        r = 0
        while abs(term) >= eps:
            r += 1
            term *= -h2 / (r * r)
            total += term
        return float(total)


@lru_cache(maxsize=None)
def _airy_anchors(bits: int):
    """Ai(0) = 3^(-2/3)/Gamma(2/3) and -Ai'(0) = 3^(-1/3)/Gamma(1/3)."""
    with gmpy2.context(precision=bits):
        three = mpfr(3)
        c1 = gmpy2.cbrt(three) ** -2 / gmpy2.gamma(mpfr(2) / 3)
        c2 = gmpy2.cbrt(three) ** -1 / gmpy2.gamma(mpfr(1) / 3)
    return c1, c2


@lru_cache(maxsize=65536)
def _airy_pair(t: float) -> tuple[float, float]:
    """(Ai(t), Ai'(t)) from the Maclaurin pair f, g.

    Ai = Ai(0) f - |Ai'(0)| g. The two series cancel by up to (4/3)|t|^1.5
    nats, so they are summed in MPFR with that many guard bits.
    """
    if not abs(t) <= AIRY_RANGE:
        raise DomainError(f"airy_ai validated for |t| <= {AIRY_RANGE}, got {t!r}")
    bits = 64 + int(2.0 * abs(t) ** 1.5)
    c1, c2 = _airy_anchors(bits)
    with gmpy2.context(precision=bits):
        T = mpfr(t)
        t3 = T**3
        eps = mpfr(2) ** -bits
        # value series: f = 1 + t^3/6 + ..., g = t + t^4/12 + ...
        a, b = mpfr(1), T
        f, g = a, b
        # derivative series: f' = t^2/2 + ..., g' = 1 + t^3/3 + ...
        fp_term, gp_term = T * T / 2, mpfr(1)
        fp, gp = fp_term, gp_term
        k = 0
        while True:
            a *= t3 / ((3 * k + 2) * (3 * k + 3))
            b *= t3 / ((3 * k + 3) * (3 * k + 4))
            fp_term *= t3 / ((3 * k + 3) * (3 * k + 5))
            gp_term *= t3 / ((3 * k + 1) * (3 * k + 3))
            f += a
            g += b
            fp += fp_term
            gp += gp_term
            k += 1
            if max(abs(a), abs(b), abs(fp_term), abs(gp_term)) < eps:
                break
        return float(c1 * f - c2 * g), float(c1 * fp - c2 * gp)


def airy_ai(t: float) -> float:
    """Airy function Ai(t) for real |t| <= AIRY_RANGE."""
    return _airy_pair(t)[0]


def airy_ai_prime(t: float) -> float:
    return _airy_pair(t)[1]


def humbert_series(m: MultiIndex | Iterable[int], n_terms: int) -> list[tuple[int, float]]:
    """First ``n_terms`` nonzero (exponent, coefficient) pairs of I_{m}(x)."""
    m = MultiIndex.of(m)
    out = []
    for r in range(m.start, m.start + n_terms):
        den = math.factorial(r) * math.prod(math.factorial(mk + r) for mk in m)
        out.append((r, float(Fraction(1, den))))
    return out


def remodified_series(n: int, q: int, n_terms: int) -> list[tuple[int, float]]:
    """(exponent, coefficient) pairs of I_q(n, x) as a series in x."""
    if n < 2 or not 0 <= q <= n - 1:
        raise DomainError(f"remodified needs n >= 2 and 0 <= q <= n-1, got ({n}, {q})")
    out = []
    for r in range(n_terms):
        e = q + n * r
        den = n**e * math.factorial(r) ** n * (r + 1) ** q
        out.append((e, float(Fraction(1, den))))
    return out
