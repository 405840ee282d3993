"""Exact scalar arithmetic: rationals, generalised binomials, rising
factorials, gamma products over the half-integers, and a degree-bounded
polynomial-identity certifier.

Everything here is a pure function of immutable values.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Final, Iterable, Sequence

from ._errors import DomainError, InsufficientSamples, PoleError
from ._util import runtime_typecheck

__all__ = [
    "Rat",
    "RatLike",
    "GammaValue",
    "as_rat",
    "rat_str",
    "parse_rat",
    "is_integer",
    "is_half_integer",
    "is_nonpositive_integer",
    "binomial_gen",
    "pochhammer",
    "gamma_product",
    "certify_poly_identity",
]

logger = logging.getLogger(__name__)

Rat = Fraction
RatLike = Fraction | int

ZERO: Final[Fraction] = Fraction(0)
ONE: Final[Fraction] = Fraction(1)


# ---------------------------------------------------------------------------
# Rat helpers
# ---------------------------------------------------------------------------

def as_rat(value: RatLike | str) -> Rat:
    """Coerce ``int``/``str``/``Fraction`` to an exact ``Fraction``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rat(value)
    raise TypeError(f"expected int, Fraction or 'p/q' string, got {type(value).__name__}")


def rat_str(value: RatLike) -> str:
    """Canonical text form: ``"p/q"`` in lowest terms, ``"p"`` when q = 1."""
    return str(as_rat(value))


def parse_rat(text: str) -> Rat:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"{text!r} is not a rational of the form p or p/q") from None


def is_integer(x: RatLike) -> bool:
    return isinstance(x, int) or x.denominator == 1


def is_half_integer(x: RatLike) -> bool:
    """True on ℤ/2 (integers included)."""
    return isinstance(x, int) or (2 * x).denominator == 1


def is_nonpositive_integer(x: RatLike) -> bool:
    return is_integer(x) and x <= 0


# ---------------------------------------------------------------------------
# Binomials and rising factorials
# ---------------------------------------------------------------------------

def binomial_gen(x: RatLike, k: int) -> Rat:
    """Generalised binomial coefficient C(x, k).

    ``0`` for ``k < 0``; otherwise x(x-1)…(x-k+1)/k!.  Agrees with the
    ordinary coefficient for integer ``0 <= k <= x``.
    """
    if k < 0:
        return ZERO
    if isinstance(x, int) or x.denominator == 1:
        top = int(x)
        if top >= 0:
            return Fraction(math.comb(top, k))
        # upper negation: C(-t, k) = (-1)^k C(t+k-1, k)
        value = math.comb(k - top - 1, k)
        return Fraction(-value if k % 2 else value)
    p, q = x.numerator, x.denominator
    num = 1
    for i in range(k):
        num *= p - i * q
    return Fraction(num, q**k * math.factorial(k))


def pochhammer(x: RatLike, n: int) -> Rat:
    """Rising factorial (x)_n = x(x+1)…(x+n-1); (x)_0 = 1."""
    if n < 0:
        raise DomainError(f"pochhammer length must be >= 0, got {n}")
    x = as_rat(x)
    p, q = x.numerator, x.denominator
    num = 1
    for i in range(n):
        num *= p + i * q
    return Fraction(num, q**n)


# ---------------------------------------------------------------------------
# Gamma over ℤ/2
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GammaValue:
    """Exact value ``coeff · π^(sqrt_pi_exp/2)``."""

    coeff: Rat
    sqrt_pi_exp: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeff", as_rat(self.coeff))
        if self.coeff == 0:
            object.__setattr__(self, "sqrt_pi_exp", 0)

    def __mul__(self, other: GammaValue | RatLike) -> GammaValue:
        if isinstance(other, GammaValue):
            return GammaValue(self.coeff * other.coeff, self.sqrt_pi_exp + other.sqrt_pi_exp)
        return GammaValue(self.coeff * as_rat(other), self.sqrt_pi_exp)

    __rmul__ = __mul__

    def __truediv__(self, other: GammaValue | RatLike) -> GammaValue:
        if isinstance(other, GammaValue):
            if other.coeff == 0:
                raise ZeroDivisionError("division by a zero GammaValue")
            return GammaValue(self.coeff / other.coeff, self.sqrt_pi_exp - other.sqrt_pi_exp)
        return GammaValue(self.coeff / as_rat(other), self.sqrt_pi_exp)

    @property
    def is_zero(self) -> bool:
        return self.coeff == 0

    def to_rat(self) -> Rat:
        """The value as a rational; DomainError while a power of √π remains."""
        if self.sqrt_pi_exp != 0:
            raise DomainError(
                f"value {self.coeff}·√π^{self.sqrt_pi_exp} is not rational "
                "(the √π exponents do not cancel)"
            )
        return self.coeff

    def __str__(self) -> str:
        if self.sqrt_pi_exp == 0:
            return rat_str(self.coeff)
        return f"{rat_str(self.coeff)}*sqrt(pi)^{self.sqrt_pi_exp}"


def _gamma_half(z: Rat) -> GammaValue:
    """Γ(z) for z in ℤ/2, z not a pole."""
    if z.denominator == 1:
        return GammaValue(Fraction(math.factorial(int(z) - 1)), 0)
    k = int(z - Fraction(1, 2))
    if k >= 0:
        # Γ(k + 1/2) = (2k)! / (4^k k!) · √π
        return GammaValue(Fraction(math.factorial(2 * k), 4**k * math.factorial(k)), 1)
    n = -k
    # Γ(1/2 - n) = (-4)^n n! / (2n)! · √π
    return GammaValue(Fraction((-4) ** n * math.factorial(n), math.factorial(2 * n)), 1)


def gamma_product(
        num: Sequence[RatLike],
        den: Sequence[RatLike],
        *,
        reciprocal_zeros: bool = False,
) -> GammaValue:
    """Exact ∏Γ(num_i) / ∏Γ(den_j) for half-integer arguments.

    Args:
        num: Arguments of the numerator gammas.
        den: Arguments of the denominator gammas.
        reciprocal_zeros: Treat a pole among the *denominator* arguments as
            the zero of 1/Γ, giving the exact value 0.  A numerator pole is
            always an error.

    Raises:
        DomainError: An argument is not in ℤ/2.
        PoleError: A numerator argument (or, without ``reciprocal_zeros``, any
            argument) is a nonpositive integer.
    """
    num_r = [as_rat(z) for z in num]
    den_r = [as_rat(z) for z in den]
    for z in (*num_r, *den_r):
        if not is_half_integer(z):
            raise DomainError(f"gamma argument {rat_str(z)} is not a half-integer")

    num_poles = [z for z in num_r if is_nonpositive_integer(z)]
    if num_poles:
        raise PoleError(f"Γ has a pole at {rat_str(num_poles[0])} (numerator)")
    den_poles = [z for z in den_r if is_nonpositive_integer(z)]
    if den_poles:
        if reciprocal_zeros:
            return GammaValue(ZERO, 0)
        raise PoleError(f"Γ has a pole at {rat_str(den_poles[0])} (denominator)")

    value = GammaValue(ONE, 0)
    for z in num_r:
        value = value * _gamma_half(z)
    for z in den_r:
        value = value / _gamma_half(z)
    return value


# ---------------------------------------------------------------------------
# Degree-bounded polynomial identities
# ---------------------------------------------------------------------------

@runtime_typecheck
def certify_poly_identity(
        degree_bound: int,
        lhs_at: Callable[[Rat], Rat],
        rhs_at: Callable[[Rat], Rat],
        sample_points: Iterable[RatLike],
) -> bool:
    """Certify ``lhs ≡ rhs`` for two polynomials of degree ≤ ``degree_bound``.

    Agreement at ``degree_bound + 1`` distinct points proves the identity,
    provided both sides really are polynomials of that degree.

    Raises:
        InsufficientSamples: fewer than ``degree_bound + 1`` distinct points.
    """
    points = list(dict.fromkeys(as_rat(p) for p in sample_points))
    if len(points) < degree_bound + 1:
        raise InsufficientSamples(
            f"need {degree_bound + 1} distinct sample points for degree {degree_bound}, "
            f"got {len(points)}"
        )
    for point in points:
        left, right = lhs_at(point), rhs_at(point)
        if left != right:
            logger.debug("polynomial identity fails at %s: %s != %s", point, left, right)
            return False
    return True
