"""Terminating hypergeometric series and the closed-form evaluations of the
second proof of Theorem 1.

Every value is exact.  Gamma products are restricted to half-integer
arguments (see :func:`binomcert._exact.gamma_product`).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Final, Sequence

from ._errors import CertificateError, DomainError, LowerParamPole, NonTerminating, PipelinePole, PoleError
from ._exact import (
    ONE,
    GammaValue,
    Rat,
    RatLike,
    as_rat,
    binomial_gen,
    gamma_product,
    is_half_integer,
    is_nonpositive_integer,
    pochhammer,
    rat_str,
)
from ._util import _validate_enum, runtime_typecheck

__all__ = [
    "HypSpec",
    "CHAIN_METHODS",
    "eval_terminating",
    "transform_3f2_check",
    "gessel_stanton_value",
    "gessel_stanton_check",
    "dixon_value",
    "dixon_check",
    "whipple_value",
    "whipple_check",
    "chu_vandermonde",
    "sum_3f2_spec",
    "second_proof_chain",
    "remark_evaluations",
]

logger = logging.getLogger(__name__)

CHAIN_METHODS: Final[frozenset[str]] = frozenset({"series", "gessel-stanton"})


@dataclass(frozen=True)
class HypSpec:
    """pFq[upper; lower; arg] with at least one nonpositive-integer upper parameter."""

    upper: Sequence[RatLike]
    lower: Sequence[RatLike]
    arg: RatLike = ONE

    def __post_init__(self) -> None:
        object.__setattr__(self, "upper", tuple(as_rat(u) for u in self.upper))
        object.__setattr__(self, "lower", tuple(as_rat(l) for l in self.lower))
        object.__setattr__(self, "arg", as_rat(self.arg))

    @property
    def termination_index(self) -> int:
        """Smallest N with -N among the upper parameters.

        Raises:
            NonTerminating: no upper parameter is a nonpositive integer.
            LowerParamPole: a lower parameter -j with j <= N-1 makes a
                denominator vanish before the series stops.
        """
        stops = [int(-u) for u in self.upper if is_nonpositive_integer(u)]
        if not stops:
            raise NonTerminating(f"{self} has no nonpositive-integer upper parameter")
        index = min(stops)
        for low in self.lower:
            if is_nonpositive_integer(low) and -low <= index - 1:
                raise LowerParamPole(
                    f"lower parameter {rat_str(low)} vanishes before {self} terminates at k = {index}"
                )
        return index

    def __str__(self) -> str:
        up = ", ".join(rat_str(u) for u in self.upper)
        low = ", ".join(rat_str(l) for l in self.lower)
        return f"{len(self.upper)}F{len(self.lower)}[{up}; {low}; {rat_str(self.arg)}]"


def eval_terminating(spec: HypSpec) -> Rat:
    """Σ_{k=0}^{N} ∏(upper)_k / ∏(lower)_k · arg^k / k!, by the term ratio."""
    index = spec.termination_index
    term, total = ONE, ONE
    for k in range(index):
        num, den = spec.arg, Fraction(k + 1)
        for u in spec.upper:
            num *= u + k
        for l in spec.lower:
            den *= l + k
        term = term * num / den
        total += term
    return total


def transform_3f2_check(N: int, a: RatLike, b: RatLike, d: RatLike, e: RatLike) -> bool:
    """₃F₂[−N, a, b; d, e; 1] = (e−b)_N/(e)_N · ₃F₂[−N, b, d−a; d, 1+b−e−N; 1]."""
    a, b, d, e = (as_rat(v) for v in (a, b, d, e))
    scale = pochhammer(e, N)
    if scale == 0:
        raise LowerParamPole(f"(e)_N vanishes at e = {rat_str(e)}, N = {N}")
    lhs = eval_terminating(HypSpec((-N, a, b), (d, e)))
    rhs = pochhammer(e - b, N) / scale * eval_terminating(HypSpec((-N, b, d - a), (d, 1 + b - e - N)))
    return lhs == rhs


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------

def _gessel_stanton_spec(N: int, b: Rat, s: Rat) -> HypSpec:
    return HypSpec((-s * b + s + 1, b - 1, -N), (b + 1, s * (-N - b) - N))


def gessel_stanton_value(N: int, b: RatLike, s: RatLike) -> Rat:
    """(1+s+sN)_N · b(N+1) / ((1+s(b+N))_N · (b+N))."""
    b, s = as_rat(b), as_rat(s)
    den = pochhammer(1 + s * (b + N), N) * (b + N)
    if den == 0:
        raise PoleError(f"Gessel-Stanton denominator vanishes at N={N}, b={rat_str(b)}, s={rat_str(s)}")
    return pochhammer(1 + s + s * N, N) * b * (N + 1) / den


def gessel_stanton_check(N: int, b: RatLike, s: RatLike) -> bool:
    b, s = as_rat(b), as_rat(s)
    return eval_terminating(_gessel_stanton_spec(N, b, s)) == gessel_stanton_value(N, b, s)


def _require_half_integers(**args: Rat) -> None:
    for name, value in args.items():
        if not is_half_integer(value):
            raise DomainError(f"{name} = {rat_str(value)} is not a half-integer")


def dixon_value(a: RatLike, b: RatLike, c: RatLike) -> Rat:
    """Dixon's well-poised sum for ₃F₂[a, b, c; 1+a−b, 1+a−c; 1].

    Γ(1+a/2)Γ(1+a−b)Γ(1+a−c)Γ(1+a/2−b−c) / [Γ(1+a)Γ(1+a/2−b)Γ(1+a/2−c)Γ(1+a−b−c)]
    """
    a, b, c = as_rat(a), as_rat(b), as_rat(c)
    half = a / 2
    value = gamma_product(
        [1 + half, 1 + a - b, 1 + a - c, 1 + half - b - c],
        [1 + a, 1 + half - b, 1 + half - c, 1 + a - b - c],
        reciprocal_zeros=True,
    )
    return value.to_rat()


def dixon_check(a: RatLike, b: RatLike, c: RatLike) -> bool:
    a, b, c = as_rat(a), as_rat(b), as_rat(c)
    lhs = eval_terminating(HypSpec((a, b, c), (1 + a - b, 1 + a - c)))
    return lhs == dixon_value(a, b, c)


def whipple_value(a: RatLike, c: RatLike, d: RatLike) -> Rat:
    """Whipple's sum for ₃F₂[a, 1−a, c; d, 1+2c−d; 1].

    2^(1−2c)·π·Γ(d)Γ(1+2c−d) / [Γ((a+d)/2)Γ((1−a+d)/2)Γ((1+a+2c−d)/2)Γ((2+2c−a−d)/2)]
    """
    a, c, d = as_rat(a), as_rat(c), as_rat(d)
    _require_half_integers(c=c)
    power = Fraction(2) ** int(1 - 2 * c)
    value = GammaValue(power, 2) * gamma_product(
        [d, 1 + 2 * c - d],
        [(a + d) / 2, (1 - a + d) / 2, (1 + a + 2 * c - d) / 2, (2 + 2 * c - a - d) / 2],
        reciprocal_zeros=True,
    )
    return value.to_rat()


def whipple_check(a: RatLike, c: RatLike, d: RatLike) -> bool:
    a, c, d = as_rat(a), as_rat(c), as_rat(d)
    lhs = eval_terminating(HypSpec((a, 1 - a, c), (d, 1 + 2 * c - d)))
    return lhs == whipple_value(a, c, d)


@runtime_typecheck
def chu_vandermonde(N: int, b: RatLike, c: RatLike) -> Rat:
    """₂F₁[−N, b; c; 1] = (c−b)_N / (c)_N, cross-checked by direct summation."""
    b, c = as_rat(b), as_rat(c)
    den = pochhammer(c, N)
    if den == 0:
        raise LowerParamPole(f"(c)_N vanishes at c = {rat_str(c)}, N = {N}")
    value = pochhammer(c - b, N) / den
    direct = eval_terminating(HypSpec((-N, b), (c,)))
    if value != direct:
        raise CertificateError(f"Chu-Vandermonde fails at N={N}, b={rat_str(b)}, c={rat_str(c)}: {value} != {direct}")
    return value


# ---------------------------------------------------------------------------
# Second proof of Theorem 1
# ---------------------------------------------------------------------------

def sum_3f2_spec(m: int, n: int, alpha: RatLike) -> HypSpec:
    """₃F₂[1−n, αm, (1+α)m+1; αm+2, (1+α)m+n/α+1; 1]."""
    alpha = as_rat(alpha)
    return HypSpec(
        (1 - n, alpha * m, (1 + alpha) * m + 1),
        (alpha * m + 2, (1 + alpha) * m + n / alpha + 1),
    )


def _chain_prefactor(m: int, n: int, alpha: Rat) -> Rat:
    top_m, top_n = (1 + alpha) * m, (1 + 1 / alpha) * n
    den = pochhammer(2 - top_n, n - 1)
    if den == 0:
        raise PipelinePole(
            f"(2-(1+1/alpha)n)_(n-1) vanishes at m={m}, n={n}, alpha={rat_str(alpha)}",
            factor="(2-(1+1/alpha)n)_(n-1)",
        )
    if alpha * m + 1 == 0:
        raise PipelinePole(f"alpha*m + 1 vanishes at m={m}, alpha={rat_str(alpha)}", factor="alpha*m+1")
    return (
        binomial_gen(top_m, m)
        * binomial_gen(top_n - 2, n - 1)
        * pochhammer(1 - top_m - top_n, n - 1)
        / den
        * m
        / (alpha * m + 1)
    )


def _chain_sum(m: int, n: int, alpha: Rat, method: str) -> Rat:
    if method == "series":
        spec = sum_3f2_spec(m, n, alpha)
        try:
            return eval_terminating(spec)
        except LowerParamPole as exc:
            raise PipelinePole(str(exc), factor="3F2 lower parameter") from exc
    try:
        return gessel_stanton_value(n - 1, alpha * m + 1, -1 - 1 / alpha)
    except PoleError as exc:
        raise PipelinePole(str(exc), factor="Gessel-Stanton denominator") from exc


def second_proof_chain(m: int, n: int, alpha: RatLike, method: str = "series") -> Rat:
    """Theorem 1 through the ₃F₂ pipeline of the second proof.

    The inner double sum collapses (Chu-Vandermonde) to a single sum, which
    is rewritten as a terminating ₃F₂ and transformed; *method* picks how
    that ₃F₂ is evaluated: ``"series"`` sums it term by term,
    ``"gessel-stanton"`` uses the closed form with N = n−1, b = αm+1,
    s = −1−1/α.

    Raises:
        PipelinePole: a pipeline denominator vanishes (``factor`` names it).
    """
    (method,) = _validate_enum("method", method, set(CHAIN_METHODS), allow_multi=False)
    alpha = as_rat(alpha)
    if m < 1 or n < 1:
        raise DomainError("second_proof_chain needs m, n >= 1")
    if alpha == 0 or alpha == -1:
        raise DomainError(f"alpha = {rat_str(alpha)} outside domain (alpha must avoid 0 and -1)")
    try:
        value = _chain_prefactor(m, n, alpha) * _chain_sum(m, n, alpha, method)
    except PipelinePole as exc:
        logger.debug("pipeline pole (%s) at m=%s n=%s alpha=%s", exc.factor, m, n, alpha)
        raise
    return value


def remark_evaluations(m: int, n: int, alpha: RatLike) -> dict[str, Rat]:
    """The ₃F₂ of the second proof, evaluated every applicable way.

    Dixon applies at α = 1 with (a, b, c) = (2m+1, m, 1−n).  Whipple applies
    at α = n/m with (a, c, d) = (1−n, m+n+1, n+2).
    """
    alpha = as_rat(alpha)
    values = {
        "series": eval_terminating(sum_3f2_spec(m, n, alpha)),
        "gessel-stanton": gessel_stanton_value(n - 1, alpha * m + 1, -1 - 1 / alpha),
    }
    if alpha == 1:
        values["dixon"] = dixon_value(2 * m + 1, m, 1 - n)
    if alpha == Fraction(n, m):
        values["whipple"] = whipple_value(1 - n, m + n + 1, n + 2)
    if len(set(values.values())) != 1:
        logger.debug("3F2 evaluations disagree at m=%s n=%s alpha=%s: %s", m, n, alpha, values)
    return values
