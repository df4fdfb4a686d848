"""Recover the Taylor coefficients of a function from an expansion of its
power ratio L{f^n}/L{f^m} at infinity.

The recursion works on the reduced form of the ratio.  Writing k for the
lowest nonzero coefficient index of f, the shifted transform series

    A_j = (kn+j)! [x^(kn+j)] f^n      B_j = (km+j)! [x^(km+j)] f^m

satisfy A = T * B where T is the expansion tail, so each unknown Taylor
coefficient enters the residual A - T*B linearly at a fresh order and is
pinned down by a nonvanishing pivot.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from math import factorial

from .algebra import Jet, Poly, Rational, beta_rational, convolve, jet_poly_pow
from .errors import (
    DomainError,
    InconsistentRatio,
    InsufficientOrder,
    IrrationalRoot,
    NoRealRoot,
)
from .transforms import RatioExpansion


@dataclass(frozen=True)
class RatioSpec:
    """The exponent pair (n, m) of a power ratio; distinct positive integers."""

    n: int
    m: int

    def __post_init__(self):
        if not isinstance(self.n, int) or not isinstance(self.m, int):
            raise DomainError("exponents must be integers")
        if self.n < 1 or self.m < 1:
            raise DomainError(f"exponents must be positive, got ({self.n}, {self.m})")
        if self.n == self.m:
            raise DomainError("exponents must be distinct")


@dataclass(frozen=True)
class IdentifyState:
    """Progress of the sequential recovery: coefficients c_k .. c_(k+len-1)."""

    k: int
    coeffs: tuple[Rational, ...]
    ambiguous_sign: bool
    spec: RatioSpec

    def __post_init__(self):
        if not self.coeffs or not self.coeffs[0]:
            raise DomainError("the leading recovered coefficient must be nonzero")
        if self.ambiguous_sign and (self.spec.n - self.spec.m) % 2:
            raise DomainError("sign ambiguity only arises for an even exponent difference")

    def extended(self, c: Rational) -> "IdentifyState":
        return replace(self, coeffs=self.coeffs + (c,))

    @property
    def partial_poly(self) -> Poly:
        return Poly((Rational(0),) * self.k + self.coeffs)


@dataclass(frozen=True)
class IdentifyResult:
    """Canonical recovered polynomial.

    When the exponent difference is even the ratio cannot see a global
    sign, so the representative with positive leading coefficient is
    returned and ambiguous_sign is set.
    """

    poly: Poly
    ambiguous_sign: bool
    recovered_degree: int
    k: int


def infer_order(H: RatioExpansion, spec: RatioSpec) -> int:
    """Lowest nonzero coefficient index k of the source, read off the
    leading exponent: lead = k*(m-n)."""
    diff = spec.m - spec.n
    if H.lead % diff != 0:
        raise InconsistentRatio(
            f"leading exponent {H.lead} is not a multiple of m-n = {diff}"
        )
    k = H.lead // diff
    if k < 0:
        raise InconsistentRatio(f"leading exponent {H.lead} implies negative order {k}")
    return k


def leading_coefficient(
    H: RatioExpansion, spec: RatioSpec, k: int, exact: bool = True
):
    """Solve for the k-th derivative a = f^(k)(0) from the tail's constant
    term via a^(n-m) = T_0 * (km)! * (k!)^(n-m) / (kn)!.

    Returns (a, ambiguous).  When n-m is odd the real root is unique; when
    n-m is even the right side must be positive and the positive root is
    returned with ambiguous = True.  In exact mode an irrational root
    raises IrrationalRoot; otherwise a float within 1e-14 relative of the
    true root is returned.
    """
    n, m = spec.n, spec.m
    rhs = (
        H.tail.coeffs[0]
        * factorial(k * m)
        * Rational(factorial(k)) ** (n - m)
        / factorial(k * n)
    )
    e = n - m
    if e < 0:
        rhs, e = 1 / rhs, -e
    ambiguous = e % 2 == 0
    if ambiguous and rhs < 0:
        raise NoRealRoot(
            f"even exponent difference with negative normalized leading value {rhs}"
        )
    sign = -1 if rhs < 0 else 1
    mag = abs(rhs)
    if exact:
        num = _exact_nth_root(mag.numerator, e)
        den = _exact_nth_root(mag.denominator, e)
        if num is None or den is None:
            raise IrrationalRoot(f"{mag} has no rational root of index {e}")
        return sign * Rational(num, den), ambiguous
    return sign * float(mag) ** (1.0 / e), ambiguous


def _exact_nth_root(x: int, e: int) -> int | None:
    # floor integer e-th root by Newton iteration (bit-length start, so
    # arbitrarily large ints are fine); None when x is not a perfect power
    if x in (0, 1) or e == 1:
        return x
    r = 1 << ((x.bit_length() - 1) // e + 1)
    while True:
        nxt = ((e - 1) * r + x // r ** (e - 1)) // e
        if nxt >= r:
            break
        r = nxt
    return r if r ** e == x else None


def pivot_value(k: int, l: int, spec: RatioSpec) -> Rational:
    """The bracket n*B(k(n-1)+l+1, km+1) - m*B(k(m-1)+l+1, kn+1) that makes
    the coefficient at degree l uniquely solvable; nonzero whenever n != m.
    """
    if not 0 <= k < l:
        raise DomainError(f"pivot needs l > k >= 0, got (k, l) = ({k}, {l})")
    n, m = spec.n, spec.m
    return n * beta_rational(k * (n - 1) + l + 1, k * m + 1) - m * beta_rational(
        k * (m - 1) + l + 1, k * n + 1
    )


def next_coefficient(state: IdentifyState, H: RatioExpansion) -> Rational:
    """The unique coefficient c_l (l = first undetermined degree) that
    makes the residual of the reduced ratio equation vanish at its lowest
    open order, with c_l carried through the powers as a linear jet."""
    k, spec = state.k, state.spec
    n, m = spec.n, spec.m
    l = k + len(state.coeffs)
    j = l - k
    if H.tail.order < j:
        raise InsufficientOrder(
            f"tail order {H.tail.order} too short: coefficient {l} first appears at order {j}"
        )
    partial = state.partial_poly
    jets_n = jet_poly_pow(partial, l, n, truncate_at=k * n + j)
    jets_m = jet_poly_pow(partial, l, m, truncate_at=k * m + j)
    A = [factorial(k * n + i) * _jet_at(jets_n, k * n + i) for i in range(j + 1)]
    B = [factorial(k * m + i) * _jet_at(jets_m, k * m + i) for i in range(j + 1)]
    T = H.tail.coeffs
    residual = [
        A[i] - sum((T[r] * B[i - r] for r in range(i + 1)), Jet(0, 0)) for i in range(j + 1)
    ]
    # orders below j were matched by earlier steps, and the unknown cannot
    # appear there
    assert all(r.value == 0 and r.slope == 0 for r in residual[:j])
    r = residual[j]
    assert r.slope != 0  # pivot is nonzero for n != m
    return -r.value / r.slope


def _jet_at(jets: list[Jet], i: int) -> Jet:
    return jets[i] if i < len(jets) else Jet(0, 0)


def identify(H: RatioExpansion, spec: RatioSpec, target_degree: int) -> IdentifyResult:
    """Recover the source polynomial through the target degree.

    Runs infer_order, then leading_coefficient, then the sequential
    coefficient recursion.  If H came from a polynomial of degree at most
    target_degree the result equals it exactly, up to a global sign when
    n-m is even (the canonical representative has a positive leading
    coefficient).
    """
    if target_degree < 0:
        raise DomainError("target degree must be nonnegative")
    k = infer_order(H, spec)
    required = k * (spec.n + spec.m - 1) + target_degree + 1
    if H.tail.order < required:
        raise InsufficientOrder(
            f"recovery through degree {target_degree} needs tail order >= {required}, "
            f"got {H.tail.order}"
        )
    a, ambiguous = leading_coefficient(H, spec, k)
    state = IdentifyState(k, (a / factorial(k),), ambiguous, spec)
    for _ in range(k + 1, target_degree + 1):
        state = state.extended(next_coefficient(state, H))
    return IdentifyResult(
        poly=state.partial_poly,
        ambiguous_sign=ambiguous,
        recovered_degree=max(target_degree, k),
        k=k,
    )


def verify_identity(f: Poly, g: Poly, spec: RatioSpec) -> bool:
    """Exact test of the convolution identity f^n * g^m = f^m * g^n, which
    holds iff the two power ratios coincide."""
    n, m = spec.n, spec.m
    return convolve(f ** n, g ** m) == convolve(f ** m, g ** n)
