"""Exact arithmetic core: rational scalars, dense polynomials, truncated
power series, and first-order jets.

Everything here is immutable after construction and every operation is a
pure function, so values can be shared freely between concurrent tasks.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .errors import DomainError, ZeroLeadingCoefficient

# The exact scalar used throughout: arbitrary precision, always in lowest
# terms, denominator > 0.  fractions.Fraction already guarantees all of
# that, so it simply gets a domain-appropriate name.
Rational = Fraction


def as_rational(value) -> Rational:
    """Coerce an int, a string like '7' or '-3/4', or a Rational.

    Floats are rejected on purpose: silently converting them would smuggle
    binary rounding into the exact layer.
    """
    if isinstance(value, Rational):
        return value
    if isinstance(value, int) or isinstance(value, str):
        return Rational(value)
    raise TypeError(f"expected an exact rational-like value, got {type(value).__name__}")


class Poly:
    """Dense polynomial over Rational; coeffs[i] is the x**i coefficient.

    Trailing zeros are trimmed, so the zero polynomial has an empty
    coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [as_rational(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "Poly":
        return cls((0,) * degree + (coeff,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def valuation(self):
        """Index of the lowest nonzero coefficient, or None for zero."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def coefficient(self, i: int) -> Rational:
        """The x**i coefficient, zero beyond the stored degree."""
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Rational(0)

    def __call__(self, x):
        result = Rational(0)
        for c in reversed(self.coeffs):
            result = result * x + c
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __add__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __sub__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Poly):
            if self.is_zero or other.is_zero:
                return Poly()
            out = [Rational(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if not a:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return Poly(out)
        scalar = as_rational(other)
        return Poly(scalar * c for c in self.coeffs)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise DomainError("polynomial powers take a nonnegative integer exponent")
        result = Poly((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def compose_linear(self, a, b) -> "Poly":
        """Return p(a + b*x) expanded exactly."""
        arg = Poly((as_rational(a), as_rational(b)))
        result = Poly()
        for c in reversed(self.coeffs):
            result = result * arg + Poly((c,))
        return result

    def to_string(self, var: str = "x") -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*{var}" if c != 1 else var)
            else:
                parts.append(f"{c}*{var}^{i}" if c != 1 else f"{var}^{i}")
        return " + ".join(parts).replace("+ -", "- ")

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Poly([{', '.join(str(c) for c in self.coeffs)}])"


def beta_rational(alpha: int, beta: int) -> Rational:
    """Exact beta-function value (alpha-1)!(beta-1)!/(alpha+beta-1)!.

    Only positive integer arguments are supported.
    """
    if not isinstance(alpha, int) or not isinstance(beta, int):
        raise DomainError("beta_rational takes integer arguments only")
    if alpha < 1 or beta < 1:
        raise DomainError(f"beta_rational requires alpha, beta >= 1, got ({alpha}, {beta})")
    return Rational(factorial(alpha - 1) * factorial(beta - 1), factorial(alpha + beta - 1))


def convolve(p: Poly, q: Poly) -> Poly:
    """Convolution on the half line: (p*q)(t) = integral of p(t-s)q(s) over [0,t].

    Monomials combine as x^a * x^b = a! b! / (a+b+1)! * t^(a+b+1), so the
    result of two polynomials is again a polynomial, computed exactly.
    """
    if p.is_zero or q.is_zero:
        return Poly()
    out = [Rational(0)] * (len(p.coeffs) + len(q.coeffs))
    for i, a in enumerate(p.coeffs):
        if not a:
            continue
        for j, b in enumerate(q.coeffs):
            if not b:
                continue
            out[i + j + 1] += a * b * Rational(factorial(i) * factorial(j), factorial(i + j + 1))
    return Poly(out)


class Series:
    """Power series truncated at a fixed order.

    coeffs always has length order+1 and arithmetic never reports
    coefficients beyond the order.  Mixing two orders truncates to the
    smaller one, matching formal-series semantics.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order: int | None = None):
        cs = [as_rational(c) for c in coeffs]
        if order is None:
            if not cs:
                cs = [Rational(0)]
            order = len(cs) - 1
        if order < 0:
            raise DomainError("series order must be nonnegative")
        if len(cs) <= order:
            cs.extend([Rational(0)] * (order + 1 - len(cs)))
        else:
            cs = cs[: order + 1]
        self.coeffs = tuple(cs)
        self.order = order

    @classmethod
    def from_poly(cls, p: Poly, order: int) -> "Series":
        return cls(p.coeffs, order)

    def truncate(self, order: int) -> "Series":
        if order >= self.order:
            return self
        return Series(self.coeffs, order)

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Series):
            return self.order == other.order and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.coeffs, self.order))

    def __neg__(self):
        return Series([-c for c in self.coeffs], self.order)

    def _common_order(self, other: "Series") -> int:
        return min(self.order, other.order)

    def __add__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        d = self._common_order(other)
        return Series([self.coeffs[i] + other.coeffs[i] for i in range(d + 1)], d)

    def __sub__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        d = self._common_order(other)
        return Series([self.coeffs[i] - other.coeffs[i] for i in range(d + 1)], d)

    def __mul__(self, other):
        if isinstance(other, Series):
            d = self._common_order(other)
            out = [Rational(0)] * (d + 1)
            for i in range(d + 1):
                a = self.coeffs[i]
                if not a:
                    continue
                for j in range(d + 1 - i):
                    out[i + j] += a * other.coeffs[j]
            return Series(out, d)
        scalar = as_rational(other)
        return Series([scalar * c for c in self.coeffs], self.order)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        """Formal long division; the denominator needs a nonzero constant term."""
        if not isinstance(other, Series):
            return NotImplemented
        if not other.coeffs[0]:
            raise ZeroLeadingCoefficient("series division requires denom.coeffs[0] != 0")
        d = self._common_order(other)
        inv0 = 1 / other.coeffs[0]
        out: list[Rational] = []
        for j in range(d + 1):
            acc = self.coeffs[j]
            for i in range(1, j + 1):
                acc -= other.coeffs[i] * out[j - i]
            out.append(acc * inv0)
        return Series(out, d)

    def __repr__(self):
        return f"Series([{', '.join(str(c) for c in self.coeffs)}], order={self.order})"


class Jet:
    """First-order jet value + slope*eps with eps**2 == 0.

    Carries one unknown linearly through ring operations: products keep the
    cross terms and drop the eps**2 term, which is exactly the
    linearization needed when a single coefficient is unknown.
    """

    __slots__ = ("value", "slope")

    def __init__(self, value, slope=0):
        self.value = as_rational(value)
        self.slope = as_rational(slope)

    @classmethod
    def constant(cls, value) -> "Jet":
        return cls(value, 0)

    def __eq__(self, other):
        if isinstance(other, Jet):
            return self.value == other.value and self.slope == other.slope
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.slope))

    def __neg__(self):
        return Jet(-self.value, -self.slope)

    def __add__(self, other):
        if isinstance(other, Jet):
            return Jet(self.value + other.value, self.slope + other.slope)
        return Jet(self.value + as_rational(other), self.slope)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, Jet) else -as_rational(other))

    def __rsub__(self, other):
        return (-self) + as_rational(other)

    def __mul__(self, other):
        if isinstance(other, Jet):
            return Jet(
                self.value * other.value,
                self.value * other.slope + self.slope * other.value,
            )
        scalar = as_rational(other)
        return Jet(scalar * self.value, scalar * self.slope)

    __rmul__ = __mul__

    def __repr__(self):
        return f"Jet({self.value}, {self.slope})"


def _jet_mul_list(a: list[Jet], b: list[Jet], cap: int | None) -> list[Jet]:
    n = len(a) + len(b) - 1
    if cap is not None:
        n = min(n, cap + 1)
    out = [Jet(0, 0) for _ in range(n)]
    for i, x in enumerate(a):
        if i >= n:
            break
        if not x.value and not x.slope:
            continue
        for j, y in enumerate(b):
            if i + j >= n:
                break
            out[i + j] = out[i + j] + x * y
    return out


def jet_poly_pow(p: Poly, unknown_degree: int, n: int, truncate_at: int | None = None) -> list[Jet]:
    """Coefficients of (p + a*x^unknown_degree)**n with the unknown a kept
    to first order.

    p must fix every coefficient below unknown_degree (its degree has to be
    smaller), and the returned list holds one Jet per degree: the value is
    the coefficient with a = 0, the slope is the sensitivity to a.
    truncate_at caps the highest degree reported.
    """
    if not isinstance(n, int) or n < 0:
        raise DomainError("jet_poly_pow takes a nonnegative integer exponent")
    if unknown_degree < 0:
        raise DomainError("unknown_degree must be nonnegative")
    if p.degree >= unknown_degree:
        raise DomainError(
            f"p fixes coefficients only below degree {unknown_degree}, got degree {p.degree}"
        )
    base = [Jet(p.coefficient(i), 0) for i in range(unknown_degree)]
    base.append(Jet(0, 1))
    result = [Jet(1, 0)]
    power = base
    e = n
    while e:
        if e & 1:
            result = _jet_mul_list(result, power, truncate_at)
        e >>= 1
        if e:
            power = _jet_mul_list(power, power, truncate_at)
    return result
