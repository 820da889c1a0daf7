"""Exact algebra of one-variable differential operators sum c[a,b] x^a D^b.

Coefficients are Fractions, x-exponents may be negative (Laurent), and every
operator is kept in normal form: powers of x to the left of derivatives.
The product rule used for normal ordering is

    D^b x^c = sum_j C(b, j) (c)_j x^(c-j) D^(b-j),

with (c)_j the falling factorial, valid for any integer c.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .errors import DomainError
from .numerics import binomial, falling_factorial, stirling2
from .series import (
    DEFAULT_POLICY,
    MultiIndex,
    TruncationPolicy,
    humbert2,
    humbert_multi,
    humbert_series,
    remodified,
    remodified_series,
)

__all__ = [
    "OperatorPolynomial",
    "X",
    "D",
    "ONE",
    "apply_to_series",
    "euler_power",
    "humbert_ode",
    "humbert_ode_residual",
    "multi_ode",
    "multiply",
    "ode_residual",
    "remodified_ode",
    "stirling_expansion",
    "xi_space_residual",
]

Term = tuple[int, int]


class OperatorPolynomial:
    """Immutable noncommutative polynomial in x, 1/x and D = d/dx."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Term, object] | Iterable[tuple[Term, object]] = ()):
        acc: dict[Term, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for (a, b), c in items:
            if b < 0:
                raise DomainError(f"derivative order must be >= 0, got {b}")
            key = (int(a), int(b))
            acc[key] = acc.get(key, Fraction(0)) + Fraction(c)
        self._terms = MappingProxyType({k: v for k, v in acc.items() if v != 0})
        self._hash = None

    @classmethod
    def monomial(cls, x_exponent: int = 0, d_order: int = 0, coeff=1) -> OperatorPolynomial:
        return cls({(x_exponent, d_order): coeff})

    @classmethod
    def constant(cls, c) -> OperatorPolynomial:
        return cls({(0, 0): c})

    @property
    def terms(self) -> Mapping[Term, Fraction]:
        return self._terms

    def coefficient(self, x_exponent: int, d_order: int) -> Fraction:
        return self._terms.get((x_exponent, d_order), Fraction(0))

    @property
    def order(self) -> int:
        """Highest derivative order present (-1 for the zero operator)."""
        return max((b for _, b in self._terms), default=-1)

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Rational)):
            other = OperatorPolynomial.constant(other)
        if not isinstance(other, OperatorPolynomial):
            return NotImplemented
        return dict(self._terms) == dict(other._terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    @staticmethod
    def _coerce(other) -> OperatorPolynomial | None:
        if isinstance(other, OperatorPolynomial):
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return OperatorPolynomial.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return OperatorPolynomial([*self._terms.items(), *other._terms.items()])

    __radd__ = __add__

    def __neg__(self):
        return OperatorPolynomial({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return multiply(self, other)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return multiply(other, self)

    def __pow__(self, p: int):
        if p < 0:
            raise DomainError("only nonnegative powers of an operator exist here")
        out = ONE
        for _ in range(p):
            out = out * self
        return out

    def sorted_terms(self) -> list[tuple[Term, Fraction]]:
        """Terms by descending derivative order, then descending x-exponent."""
        return sorted(self._terms.items(), key=lambda kv: (-kv[0][1], -kv[0][0]))

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for i, ((a, b), c) in enumerate(self.sorted_terms()):
            mono = " ".join(p for p in (_x_part(a), _d_part(b)) if p)
            mag = abs(c)
            if not mono:
                body = _fmt_coeff(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{_fmt_coeff(mag)} {mono}"
            if i == 0:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f"- {body}" if c < 0 else f"+ {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"OperatorPolynomial({str(self)!r})"


def _x_part(a: int) -> str:
    if a == 0:
        return ""
    return "x" if a == 1 else f"x^{a}"


def _d_part(b: int) -> str:
    if b == 0:
        return ""
    return "D" if b == 1 else f"D^{b}"


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def multiply(A: OperatorPolynomial, B: OperatorPolynomial) -> OperatorPolynomial:
    """Normal-ordered product A B."""
    acc: dict[Term, Fraction] = {}
    for (a, b), ca in A.terms.items():
        for (c, d), cb in B.terms.items():
            for j in range(b + 1):
                ff = falling_factorial(c, j)
                if ff == 0:
                    break
                key = (a + c - j, b + d - j)
                acc[key] = acc.get(key, Fraction(0)) + ca * cb * binomial(b, j) * ff
    return OperatorPolynomial(acc)


ONE = OperatorPolynomial.constant(1)
X = OperatorPolynomial.monomial(1, 0)
D = OperatorPolynomial.monomial(0, 1)
EULER = OperatorPolynomial.monomial(1, 1)


def euler_power(p: int) -> OperatorPolynomial:
    """(xD)^p by repeated normal-ordered multiplication."""
    if not 0 <= p <= 20:
        raise DomainError(f"euler_power supports 0 <= p <= 20, got {p}")
    return EULER**p


def stirling_expansion(p: int) -> OperatorPolynomial:
    """sum_r S(p, r) x^r D^r, the closed form of (xD)^p."""
    return OperatorPolynomial({(r, r): stirling2(p, r) for r in range(p + 1)})


def humbert_ode(m1: int, m2: int) -> OperatorPolynomial:
    """L = D (m1 + xD)(m2 + xD); I_{m1,m2} solves L z = z."""
    return D * (m1 + EULER) * (m2 + EULER)


def multi_ode(m: MultiIndex | Iterable[int]) -> OperatorPolynomial:
    """D prod_k (m_k + xD); I_{m} solves L z = z."""
    m = MultiIndex.of(m)
    if len(m) > 10:
        raise DomainError("multi_ode supports at most 10 indices")
    out = D
    for mk in m:
        out = out * (mk + EULER)
    return out


def remodified_ode(n: int, q: int, expansion: str = "euler") -> tuple[OperatorPolynomial, int]:
    """ODE of the re-modified Bessel function I_q(n, x) as (lhs, s).

    The equation is ``lhs w = x^s w``. For q >= 1 the x^(-q) factor that the
    operator acts through is folded into ``lhs`` on the right, so ``lhs`` is a
    Laurent operator applied directly to w. ``expansion`` picks how the Euler
    powers are built: "euler" multiplies (xD) out, "stirling" uses the
    Stirling-number closed form.
    """
    if n < 2 or not 0 <= q <= n - 1:
        raise DomainError(f"remodified_ode needs n >= 2 and 0 <= q <= n-1, got ({n}, {q})")
    if expansion == "euler":
        power = euler_power
    elif expansion == "stirling":
        power = stirling_expansion
    else:
        raise DomainError(f"unknown expansion {expansion!r}")
    if q == 0:
        return D * power(n - 1), n - 1
    inner = OperatorPolynomial(())
    for r in range(q + 1):
        inner = inner + binomial(q, r) * n ** (q - r) * power(r + n - q - 1)
    return D * inner * OperatorPolynomial.monomial(-q, 0), n - q - 1


def apply_to_series(
    L: OperatorPolynomial, coefficients: Sequence[tuple[float, float]], x: float
) -> float:
    """Apply L term-wise to sum_k c_k x^(s_k) and evaluate at x.

    D^b x^s = (s)_b x^(s-b) holds for real s, so generalized power series
    are fine as long as x > 0.
    """
    laurent = any(a < 0 for a, _ in L.terms)
    fractional = any(float(s) != int(s) for s, _ in coefficients)
    if x <= 0 and (laurent or fractional):
        raise DomainError("negative or fractional exponents need x > 0")
    ops = [(a, b, float(c)) for (a, b), c in L.terms.items()]
    parts = []
    for s, ck in coefficients:
        if ck == 0:
            continue
        integral = float(s) == int(s)
        for a, b, c in ops:
            ff = falling_factorial(int(s) if integral else float(s), b)
            if ff == 0:
                continue
            e = (int(s) if integral else float(s)) - b + a
            parts.append(c * ck * ff * x**e)
    return math.fsum(parts)


def _series_residual(L, s, series, value, x):
    lhs = apply_to_series(L, series, x)
    rhs = x**s * value
    return lhs, rhs


def humbert_ode_residual(
    m1: int, m2: int, x: float, policy: TruncationPolicy = DEFAULT_POLICY
) -> tuple[float, float]:
    """(L z, z) at x for z the truncated I_{m1,m2} series."""
    ev = humbert2(m1, m2, x, policy)
    series = humbert_series((m1, m2), ev.terms_used)
    return _series_residual(humbert_ode(m1, m2), 0, series, ev.value, x)


def remodified_residual_sides(
    n: int, q: int, x: float, policy: TruncationPolicy = DEFAULT_POLICY
) -> tuple[float, float]:
    """(lhs w, x^s w) at x, w the truncated I_q(n, x) series."""
    if not x > 0:
        raise DomainError("the re-modified ODE residual needs x > 0")
    lhs_op, s = remodified_ode(n, q)
    ev = remodified(n, q, x, policy)
    series = remodified_series(n, q, ev.terms_used)
    return _series_residual(lhs_op, s, series, ev.value, x)


def ode_residual(n: int, q: int, x: float, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Absolute residual of the re-modified Bessel ODE on the truncated series."""
    lhs, rhs = remodified_residual_sides(n, q, x, policy)
    return abs(lhs - rhs)


def xi_space_residual(n: int, q: int, x: float, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Residual of D prod(m_k + xi D) z = z at xi = (x/n)^n.

    Independent check on the x-space equation: the multi-index is q ones
    followed by n-1-q zeros.
    """
    m = (1,) * q + (0,) * (n - 1 - q)
    xi = (x / n) ** n
    ev = humbert_multi(m, xi, policy)
    series = humbert_series(m, ev.terms_used)
    return abs(apply_to_series(multi_ode(m), series, xi) - ev.value)
