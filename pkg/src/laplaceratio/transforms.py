"""Laplace transforms of polynomial and piecewise-polynomial functions,
exact power-ratio expansions at infinity, and the convolution residual.

The central object is the power ratio

    H(f, lambda) = L{f^n}(lambda) / L{f^m}(lambda)

for distinct positive integers n and m.  For a polynomial f the ratio has
an exact expansion in u = 1/lambda; for piecewise polynomials it is
evaluated numerically from closed-form per-piece integrals.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from math import factorial

from .algebra import Poly, Rational, Series, as_rational
from .errors import (
    DivergentTransform,
    DomainError,
    NotVanishing,
    ZeroDenominator,
    ZeroFunction,
)


def laplace_poly(p: Poly, order: int | None = None) -> Series:
    """Transform of a polynomial as a series in u = 1/lambda.

    The term rule L{x^i} = i!/lambda^(i+1) puts i! * coeffs[i] at u^(i+1);
    the u^0 coefficient is always zero.  A polynomial transform terminates,
    so padding to a larger order is exact.
    """
    out = [Rational(0)] * (len(p.coeffs) + 1)
    for i, c in enumerate(p.coeffs):
        out[i + 1] = factorial(i) * c
    if order is None:
        order = len(out) - 1
    return Series(out, order)


@dataclass(frozen=True)
class RatioExpansion:
    """Expansion of a power ratio at lambda = infinity.

    Represents H(lambda) = lambda**lead * T(1/lambda) where T is the tail
    series; the normalizing shift is absorbed into lead so that the tail
    has a nonzero constant term.
    """

    lead: int
    tail: Series

    def __post_init__(self):
        if not self.tail.coeffs[0]:
            raise DomainError("ratio expansion tail must have a nonzero constant term")

    @property
    def order(self) -> int:
        return self.tail.order


def ratio_expansion(f: Poly, n: int, m: int, order: int) -> RatioExpansion:
    """Exact expansion of L{f^n}/L{f^m} at infinity, to the given tail order.

    The leading exponent is k*(m-n) where k is the index of f's lowest
    nonzero coefficient.
    """
    _check_exponents(n, m)
    if f.is_zero:
        raise ZeroFunction("the zero function has no transform ratio")
    if order < 0:
        raise DomainError("expansion order must be nonnegative")
    k = f.valuation
    num = _shifted_transform(f ** n, k * n, order)
    den = _shifted_transform(f ** m, k * m, order)
    return RatioExpansion(lead=k * (m - n), tail=num / den)


def _shifted_transform(power: Poly, valuation: int, order: int) -> Series:
    # coefficients of L{power} / u^(valuation+1); entry j is
    # (valuation+j)! * [x^(valuation+j)] power
    return Series(
        [factorial(valuation + j) * power.coefficient(valuation + j) for j in range(order + 1)],
        order,
    )


def _check_exponents(n: int, m: int) -> None:
    if not isinstance(n, int) or not isinstance(m, int) or n < 1 or m < 1:
        raise DomainError(f"exponents must be positive integers, got ({n}, {m})")
    if n == m:
        raise DomainError("exponents must be distinct")


class RationalFunction:
    """Exact ratio of two polynomials in lambda.

    Stored with the common integer content removed and a positive leading
    denominator coefficient.  Equality means equality as rational
    functions (by cross multiplication), not of the stored pair.
    """

    __slots__ = ("numer", "denom")

    def __init__(self, numer: Poly, denom: Poly):
        if denom.is_zero:
            raise DomainError("rational function denominator must be nonzero")
        scale = _content_scale(numer.coeffs + denom.coeffs)
        if denom.coeffs[-1] < 0:
            scale = -scale
        self.numer = numer * scale
        self.denom = denom * scale

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.numer * other.denom == other.numer * self.denom
        return NotImplemented

    __hash__ = None

    def __call__(self, lam) -> float:
        den = float(self.denom(as_rational_number(lam)))
        if den == 0.0:
            raise ZeroDenominator(f"denominator vanishes at lambda = {lam}")
        return float(self.numer(as_rational_number(lam))) / den

    def expansion(self, order: int) -> RatioExpansion:
        """Expand at lambda = infinity as a RatioExpansion."""
        rev_n = Series(self.numer.coeffs[::-1], order)
        rev_d = Series(self.denom.coeffs[::-1], order)
        return RatioExpansion(lead=self.numer.degree - self.denom.degree, tail=rev_n / rev_d)

    def __repr__(self):
        return f"RationalFunction({self.numer!r}, {self.denom!r})"

    def __str__(self):
        return f"({self.numer.to_string('lambda')}) / ({self.denom.to_string('lambda')})"


def _content_scale(coeffs) -> Rational:
    # multiplier turning the coefficients into integers with gcd 1
    lcm_den = 1
    for c in coeffs:
        lcm_den = lcm_den * c.denominator // math.gcd(lcm_den, c.denominator)
    gcd_num = 0
    for c in coeffs:
        gcd_num = math.gcd(gcd_num, abs(c.numerator * (lcm_den // c.denominator)))
    return Rational(lcm_den, gcd_num if gcd_num else 1)


def as_rational_number(x) -> Rational:
    """Exact conversion accepting floats as well (binary floats are exact)."""
    if isinstance(x, float):
        return Rational(x)
    return as_rational(x)


def ratio_rational(f: Poly, n: int, m: int) -> RationalFunction:
    """Exact closed form of L{f^n}/L{f^m} as a rational function of lambda."""
    _check_exponents(n, m)
    if f.is_zero:
        raise ZeroFunction("the zero function has no transform ratio")
    fn, fm = f ** n, f ** m
    num = _transform_numerator(fn)
    den = _transform_numerator(fm)
    # L{f^j} = num_j(lambda) / lambda^(deg f^j + 1); move the power of
    # lambda to whichever side keeps both polynomials
    shift = fn.degree - fm.degree
    if shift >= 0:
        den = den * Poly.monomial(shift)
    else:
        num = num * Poly.monomial(-shift)
    return RationalFunction(num, den)


def _transform_numerator(p: Poly) -> Poly:
    # L{p}(lambda) * lambda^(deg p + 1), a polynomial in lambda
    d = p.degree
    return Poly([factorial(d - i) * p.coeffs[d - i] for i in range(d + 1)])


def sin_maclaurin(degree: int) -> Poly:
    """Maclaurin polynomial of sin truncated at the given degree."""
    if degree < 0:
        raise DomainError("degree must be nonnegative")
    coeffs = [Rational(0)] * (degree + 1)
    for j in range(0, (degree - 1) // 2 + 1):
        coeffs[2 * j + 1] = Rational((-1) ** j, factorial(2 * j + 1))
    return Poly(coeffs)


def sin_ratio_check(order: int) -> bool:
    """Check the entire-function test vector: the power ratio of sin with
    exponents (2, 1) equals 2(lambda^2+1) / (lambda(lambda^2+4)).

    The Maclaurin polynomial is truncated at the given degree, which keeps
    tail coefficients exact up to order degree-1; the comparison runs over
    exactly those orders.
    """
    if order < 4:
        raise DomainError("sin_ratio_check needs order >= 4")
    got = ratio_expansion(sin_maclaurin(order), 2, 1, order - 1)
    want = sin_closed_form().expansion(order - 1)
    return got == want


def sin_closed_form() -> RationalFunction:
    """The exact power ratio of sin with exponents (2, 1)."""
    return RationalFunction(Poly([2, 0, 2]), Poly([0, 4, 0, 1]))


class PiecewisePoly:
    """Right-continuous piecewise polynomial on [0, infinity).

    breakpoints are strictly increasing rationals starting at 0; piece i
    applies on [breakpoints[i], breakpoints[i+1]) and the last piece on
    [b_last, infinity).  The last piece must be constant unless the
    polynomial tail is explicitly allowed; either way the transform exists
    for every lambda > 0.
    """

    __slots__ = ("breakpoints", "pieces", "polynomial_tail")

    def __init__(self, breakpoints, pieces, allow_polynomial_tail: bool = False):
        bps = tuple(as_rational(b) for b in breakpoints)
        ps = tuple(p if isinstance(p, Poly) else Poly(p) for p in pieces)
        if not bps or bps[0] != 0:
            raise DomainError("breakpoints must start at 0")
        if len(bps) != len(ps):
            raise DomainError("need exactly one piece per breakpoint")
        for a, b in zip(bps, bps[1:]):
            if b <= a:
                raise DomainError("breakpoints must be strictly increasing")
        if ps[-1].degree > 0 and not allow_polynomial_tail:
            raise DomainError(
                "the final piece must be constant unless allow_polynomial_tail is set"
            )
        self.breakpoints = bps
        self.pieces = ps
        self.polynomial_tail = ps[-1].degree > 0

    def piece_at(self, x) -> Poly:
        """The polynomial in force at point x >= 0."""
        xq = as_rational_number(x)
        if xq < 0:
            raise DomainError("piecewise functions live on [0, infinity)")
        return self.pieces[bisect_right(self.breakpoints, xq) - 1]

    def __call__(self, x):
        xq = as_rational_number(x)
        value = self.piece_at(xq)(xq)
        return float(value) if isinstance(x, float) else value

    def __pow__(self, n: int) -> "PiecewisePoly":
        if not isinstance(n, int) or n < 1:
            raise DomainError("piecewise powers take a positive integer exponent")
        return PiecewisePoly(
            self.breakpoints,
            [p ** n for p in self.pieces],
            allow_polynomial_tail=True,
        )

    def __eq__(self, other):
        if isinstance(other, PiecewisePoly):
            return self.breakpoints == other.breakpoints and self.pieces == other.pieces
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        cells = ", ".join(
            f"[{b}, {e}): {p}"
            for b, e, p in zip(self.breakpoints, self.breakpoints[1:], self.pieces)
        )
        sep = ", " if cells else ""
        return f"PiecewisePoly({cells}{sep}[{self.breakpoints[-1]}, inf): {self.pieces[-1]})"


def step_example(n_max: int) -> PiecewisePoly:
    """Built-in staircase fixture: value 2**-i on [1 - 2**-i, 1 - 2**-(i+1))
    for i < n_max, with the staircase truncated after n_max steps and the
    constant 2 on [1, infinity)."""
    if n_max < 1:
        raise DomainError("n_max must be at least 1")
    breakpoints = [1 - Rational(1, 2 ** i) for i in range(n_max + 1)] + [Rational(1)]
    pieces = [Poly([Rational(1, 2 ** i)]) for i in range(n_max + 1)] + [Poly([2])]
    return PiecewisePoly(breakpoints, pieces)


def _exp_weighted_moments(a: float, b: float | None, degree: int, lam: float) -> list[float]:
    # I_j = integral of x^j e^(-lam x) over [a, b] (b = None means infinity),
    # by the upward incomplete-gamma recurrence
    ea = math.exp(-lam * a)
    eb = math.exp(-lam * b) if b is not None else 0.0
    vals = [(ea - eb) / lam]
    for j in range(1, degree + 1):
        boundary = (a ** j) * ea - (b ** j) * eb if b is not None else (a ** j) * ea
        vals.append((boundary + j * vals[j - 1]) / lam)
    return vals


def laplace_piecewise(pp: PiecewisePoly, lam: float) -> float:
    """Numeric Laplace transform of a piecewise polynomial at lambda > 0.

    Each piece contributes a closed-form integral, so there is no
    quadrature error beyond double-precision rounding.
    """
    if lam <= 0:
        raise DivergentTransform(f"transform requires lambda > 0, got {lam}")
    total = 0.0
    ends = list(pp.breakpoints[1:]) + [None]
    for start, end, piece in zip(pp.breakpoints, ends, pp.pieces):
        if piece.is_zero:
            continue
        moments = _exp_weighted_moments(
            float(start), None if end is None else float(end), piece.degree, lam
        )
        total += sum(float(c) * moments[j] for j, c in enumerate(piece.coeffs))
    return total


def ratio_eval_piecewise(pp: PiecewisePoly, n: int, m: int, lam: float) -> float:
    """Power ratio L{pp^n}/L{pp^m} at a single lambda > 0."""
    _check_exponents(n, m)
    den = laplace_piecewise(pp ** m, lam)
    if den == 0.0:
        raise ZeroDenominator(f"L{{f^{m}}}({lam}) = 0")
    return laplace_piecewise(pp ** n, lam) / den


def shift_vanishing(pp: PiecewisePoly, a) -> PiecewisePoly:
    """Shift left by a, i.e. x -> f(x + a), for a function vanishing on [0, a).

    Removes a leading dead zone exactly; raises NotVanishing if the
    function is nonzero anywhere on [0, a).
    """
    aq = as_rational(a)
    if aq < 0:
        raise DomainError("shift distance must be nonnegative")
    if aq == 0:
        return pp
    for i, piece in enumerate(pp.pieces):
        start = pp.breakpoints[i]
        if start >= aq:
            break
        if not piece.is_zero:
            raise NotVanishing(f"function is nonzero on [{start}, min({aq}, next bp))")
    cut = bisect_right(pp.breakpoints, aq) - 1
    new_bps = [Rational(0)] + [b - aq for b in pp.breakpoints[cut + 1 :]]
    new_pieces = [p.compose_linear(aq, 1) for p in pp.pieces[cut:]]
    return PiecewisePoly(new_bps, new_pieces, allow_polynomial_tail=True)


def delay(pp: PiecewisePoly, a) -> PiecewisePoly:
    """Shift right by a: zero on [0, a), then f(x - a).  Inverse of
    shift_vanishing on its domain."""
    aq = as_rational(a)
    if aq < 0:
        raise DomainError("delay distance must be nonnegative")
    if aq == 0:
        return pp
    new_bps = [Rational(0)] + [b + aq for b in pp.breakpoints]
    new_pieces = [Poly()] + [p.compose_linear(-aq, 1) for p in pp.pieces]
    return PiecewisePoly(new_bps, new_pieces, allow_polynomial_tail=True)


def _convolve_at(f: PiecewisePoly, g: PiecewisePoly, t: Rational) -> Rational:
    # (f*g)(t) = integral of f(t-s) g(s) ds over [0, t], split at every point
    # where either factor changes piece, then integrated exactly per cell
    if t <= 0:
        return Rational(0)
    cuts = {Rational(0), t}
    for b in g.breakpoints:
        if 0 < b < t:
            cuts.add(b)
    for b in f.breakpoints:
        if 0 < t - b < t:
            cuts.add(t - b)
    grid = sorted(cuts)
    total = Rational(0)
    for lo, hi in zip(grid, grid[1:]):
        mid = (lo + hi) / 2
        # f evaluated at t-s with s in the cell: compose its piece with t-s
        integrand = f.piece_at(t - mid).compose_linear(t, -1) * g.piece_at(mid)
        for j, c in enumerate(integrand.coeffs):
            if c:
                total += c * (hi ** (j + 1) - lo ** (j + 1)) / (j + 1)
    return total


def convolution_residual(f: PiecewisePoly, g: PiecewisePoly, n: int, m: int, t: float) -> float:
    """Value at t of f^n * g^m - f^m * g^n, the residual whose vanishing
    for all t is equivalent to equality of the two power ratios.

    The convolutions are evaluated by exact cell-by-cell integration, so
    the returned double is the correctly rounded exact value.
    """
    _check_exponents(n, m)
    tq = as_rational_number(t)
    if tq < 0:
        raise DomainError("the residual is defined for t >= 0")
    value = _convolve_at(f ** n, g ** m, tq) - _convolve_at(f ** m, g ** n, tq)
    return float(value)
