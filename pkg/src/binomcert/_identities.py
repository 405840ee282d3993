"""Direct double-sum evaluators (the oracles), closed forms and the identity
registry.

The double sums are evaluated by plain nested summation; the closed forms are
the only fast path.  Binomials inside the evaluators go through an LRU cache
because a sweep asks for the same coefficients millions of times.
"""

from __future__ import annotations

import functools
import logging
import time
import types
from dataclasses import dataclass, fields
from fractions import Fraction
from typing import Callable, Final, Mapping

import pandas as pd

from ._errors import CertificateError, DegenerateError, DomainError, UnknownIdentity
from ._exact import (
    ZERO,
    Rat,
    RatLike,
    as_rat,
    binomial_gen,
    certify_poly_identity,
    pochhammer,
    rat_str,
)
from ._hypergeom import second_proof_chain
from ._util import _prune_none, runtime_typecheck

__all__ = [
    "ParamSet",
    "IdentityDescriptor",
    "VerificationReport",
    "REGISTRY",
    "ALIASES",
    "DEFAULT_ALPHAS",
    "lhs_theorem1",
    "rhs_theorem1",
    "single_sum_k",
    "telescope_certificate",
    "telescoped_total",
    "lhs_theorem2",
    "rhs_theorem2",
    "lhs_theorem3",
    "rhs_theorem3",
    "get_identity",
    "eval_identity",
    "catalog",
    "theorem1_alpha_certify",
    "theorem3_certify",
    "doub_xab_check",
    "corollary4_rederive",
]

logger = logging.getLogger(__name__)

DEFAULT_ALPHAS: Final[tuple[Fraction, ...]] = (
    Fraction(1), Fraction(2), Fraction(3),
    Fraction(1, 2), Fraction(2, 3), Fraction(5, 3), Fraction(7, 2),
)

_binom = functools.lru_cache(maxsize=1 << 20)(binomial_gen)
_poch = functools.lru_cache(maxsize=1 << 16)(pochhammer)


def _span(lo: int, hi: int) -> range:
    """Inclusive integer range; empty when hi < lo."""
    return range(lo, hi + 1)


def _double_sum(a_range: range, b_range: range, term: Callable[[int, int], Rat]) -> Rat:
    total = ZERO
    for a in a_range:
        for b in b_range:
            total += term(a, b)
    return total


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ParamSet:
    """One point of a parameter grid; unused parameters stay ``None``."""

    m: int
    n: int
    r: int | None = None
    p: int | None = None
    q: int | None = None
    alpha: Rat | None = None
    x: Rat | None = None

    def __post_init__(self) -> None:
        for name in ("alpha", "x"):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, as_rat(value))

    def as_dict(self) -> dict[str, object]:
        return _prune_none({f.name: getattr(self, f.name) for f in fields(self)})

    def to_json(self) -> dict[str, str]:
        return {k: rat_str(v) for k, v in self.as_dict().items()}  # type: ignore[arg-type]

    def sort_key(self) -> tuple:
        return tuple(
            (0, ZERO) if getattr(self, f.name) is None else (1, as_rat(getattr(self, f.name)))
            for f in fields(self)
        )

    def __str__(self) -> str:
        return ", ".join(f"{k}={v}" for k, v in self.to_json().items())


@dataclass(frozen=True)
class IdentityDescriptor:
    id: str
    lhs: Callable[[ParamSet], Rat]
    rhs: Callable[[ParamSet], Rat]
    domain: Callable[[ParamSet], str | None]
    anchor: str
    params: tuple[str, ...]
    title: str = ""

    def check_domain(self, params: ParamSet) -> str | None:
        """``None`` when *params* is admissible, otherwise the reason."""
        missing = [name for name in self.params if getattr(params, name) is None]
        if missing:
            return f"{self.id} needs parameter(s) {', '.join(missing)}"
        return self.domain(params)


@dataclass(frozen=True)
class VerificationReport:
    identity: str
    params: ParamSet
    lhs_value: Rat
    rhs_value: Rat
    equal: bool
    elapsed: float  # seconds

    @property
    def micros(self) -> int:
        return int(round(self.elapsed * 1e6))

    def to_json(self, *, timing: bool = True) -> dict[str, object]:
        record: dict[str, object] = {
            "identity": self.identity,
            "params": self.params.to_json(),
            "lhs": rat_str(self.lhs_value),
            "rhs": rat_str(self.rhs_value),
            "equal": self.equal,
        }
        if timing:
            record["micros"] = self.micros
        return record


# ---------------------------------------------------------------------------
# Theorem 1
# ---------------------------------------------------------------------------

def _check_alpha(alpha: Rat) -> None:
    if alpha == 0 or alpha == -1:
        raise DomainError(f"alpha = {rat_str(alpha)} outside domain (alpha must avoid 0 and -1)")


def _tops(m: int, n: int, alpha: Rat) -> tuple[Rat, Rat]:
    return (1 + alpha) * m, (1 + 1 / alpha) * n


def _theorem1_denominator(m: int, n: int, alpha: Rat) -> Rat:
    if m == 0 and n == 0:
        raise DegenerateError("Theorem 1 closed form is 0/0 at m = n = 0")
    if m + n / alpha == 0:
        raise DegenerateError(f"m + n/alpha = 0 at m={m}, n={n}, alpha={rat_str(alpha)}")
    return (1 + alpha) * (m + n / alpha)


def lhs_theorem1(m: int, n: int, alpha: RatLike) -> Rat:
    """Σ_{a=1}^{m} Σ_{b=1}^{n} C((1+α)m−a+b−1, m−a)·C((1+α⁻¹)n+a−b−1, n−b)."""
    alpha = as_rat(alpha)
    _check_alpha(alpha)
    top_m, top_n = _tops(m, n, alpha)
    return _double_sum(
        _span(1, m), _span(1, n),
        lambda a, b: _binom(top_m - a + b - 1, m - a) * _binom(top_n + a - b - 1, n - b),
    )


def rhs_theorem1(m: int, n: int, alpha: RatLike) -> Rat:
    """mn / ((1+α)(m+α⁻¹n)) · C((1+α)m, m) · C((1+α⁻¹)n, n)."""
    alpha = as_rat(alpha)
    _check_alpha(alpha)
    den = _theorem1_denominator(m, n, alpha)
    top_m, top_n = _tops(m, n, alpha)
    return m * n / den * _binom(top_m, m) * _binom(top_n, n)


def single_sum_k(m: int, n: int, alpha: RatLike) -> Rat:
    """Σ_{k=0}^{min(m,n)} k·C((1+α)m, m−k)·C((1+α⁻¹)n, n−k)."""
    alpha = as_rat(alpha)
    _check_alpha(alpha)
    top_m, top_n = _tops(m, n, alpha)
    return sum(
        (k * _binom(top_m, m - k) * _binom(top_n, n - k) for k in _span(0, min(m, n))),
        ZERO,
    )


def _antidifference(m: int, n: int, alpha: Rat, k: int) -> Rat:
    top_m, top_n = _tops(m, n, alpha)
    weight = (m + k / alpha) * (n + alpha * k) / _theorem1_denominator(m, n, alpha)
    return weight * _binom(top_m, m - k) * _binom(top_n, n - k)


def telescope_certificate(m: int, n: int, alpha: RatLike, k: int) -> bool:
    """Check k·C((1+α)m, m−k)·C((1+α⁻¹)n, n−k) = s(k) − s(k+1)."""
    alpha = as_rat(alpha)
    _check_alpha(alpha)
    if not 0 <= k <= min(m, n):
        raise DomainError(f"k = {k} outside 0..min(m, n) = 0..{min(m, n)}")
    top_m, top_n = _tops(m, n, alpha)
    summand = k * _binom(top_m, m - k) * _binom(top_n, n - k)
    return summand == _antidifference(m, n, alpha, k) - _antidifference(m, n, alpha, k + 1)


def telescoped_total(m: int, n: int, alpha: RatLike) -> Rat:
    """Σ_k (s(k) − s(k+1)) with every step checked against the summand."""
    alpha = as_rat(alpha)
    total = ZERO
    for k in _span(0, min(m, n)):
        if not telescope_certificate(m, n, alpha, k):
            raise CertificateError(f"telescoping step fails at m={m}, n={n}, alpha={rat_str(alpha)}, k={k}")
        total += _antidifference(m, n, alpha, k) - _antidifference(m, n, alpha, k + 1)
    return total


@runtime_typecheck
def theorem1_alpha_certify(m: int, n: int) -> bool:
    """Theorem 1 as a polynomial identity in α.

    Both sides times α^(n−1)(1+α)(mα+n) are polynomials of degree ≤ m+n.
    """
    if m < 1 or n < 1:
        raise DomainError("theorem1_alpha_certify needs m, n >= 1")

    def lhs_at(alpha: Rat) -> Rat:
        return alpha ** (n - 1) * (1 + alpha) * (m * alpha + n) * lhs_theorem1(m, n, alpha)

    def rhs_at(alpha: Rat) -> Rat:
        top_m, top_n = _tops(m, n, alpha)
        return alpha**n * m * n * _binom(top_m, m) * _binom(top_n, n)

    return certify_poly_identity(m + n, lhs_at, rhs_at, [Fraction(i) for i in _span(1, m + n + 1)])


# ---------------------------------------------------------------------------
# Theorem 2
# ---------------------------------------------------------------------------

def lhs_theorem2(m: int, n: int, r: int, alpha: RatLike) -> Rat:
    alpha = as_rat(alpha)
    _check_alpha(alpha)
    top_m, top_n = _tops(m, n, alpha)

    def term(low_m: int, low_n: int) -> Callable[[int, int], Rat]:
        return lambda a, b: (
            _binom(top_m - a + b - 1, low_m - a) * _binom(top_n + a - b - 1, low_n - b)
        )

    inner = _double_sum(_span(0, m - r - 2), _span(0, n - r - 2), term(m - r - 2, n - r - 2))
    outer = _double_sum(_span(0, m + r), _span(0, n + r), term(m + r, n + r))
    return inner + outer


def rhs_theorem2(m: int, n: int, r: int, alpha: RatLike) -> Rat:
    alpha = as_rat(alpha)
    _check_alpha(alpha)
    top_m, top_n = _tops(m, n, alpha)
    head = ZERO
    if m * n != 0:
        head = 2 * m * n / _theorem1_denominator(m, n, alpha) * _binom(top_m, m) * _binom(top_n, n)
    tail = sum(
        ((r - abs(k) + 1) * _binom(top_m, m - k) * _binom(top_n, n - k) for k in _span(-r, r)),
        ZERO,
    )
    return head + tail


# ---------------------------------------------------------------------------
# Theorem 3
# ---------------------------------------------------------------------------

def lhs_theorem3(m: int, n: int, x: RatLike) -> Rat:
    x = as_rat(x)
    return _double_sum(
        _span(1, m), _span(1, n),
        lambda a, b: _binom(x + m - a + b - 1, n + b - 1) * _binom(x + a - b - 1, n - b),
    )


def rhs_theorem3(m: int, n: int, x: RatLike) -> Rat:
    x = as_rat(x)
    if 2 * x + m == 0:
        raise DegenerateError(f"2x + m = 0 at m={m}, x={rat_str(x)}")
    return m * n / (2 * x + m) * _binom(2 * x + m, 2 * n)


@runtime_typecheck
def theorem3_certify(m: int, n: int) -> bool:
    """Theorem 3 as a polynomial identity in x (both sides of degree ≤ 2n)."""
    if m < 1 or n < 1:
        raise DomainError("theorem3_certify needs m, n >= 1")
    # x = 1..2n+1 keeps 2x + m > 0
    points = [Fraction(i) for i in _span(1, 2 * n + 1)]
    return certify_poly_identity(
        2 * n,
        lambda x: lhs_theorem3(m, n, x),
        lambda x: rhs_theorem3(m, n, x),
        points,
    )


def _xab_term(m: int, n: int, x: Rat) -> Callable[[int, int], Rat]:
    return lambda a, b: _binom(x + a - 1, n + b - 1) * _binom(x + m - a, n - b)


def _doub_xab_lhs(m: int, n: int, x: Rat) -> Rat:
    return 2 * _double_sum(_span(1, m), _span(1, n), _xab_term(m, n, x))


def _doub_xab_rhs(m: int, n: int, x: Rat) -> Rat:
    return m * _binom(2 * x + m - 1, 2 * n - 1)


def doub_xab_check(m: int, n: int, x: RatLike) -> bool:
    """The reflected form of Theorem 3 and the two steps of its proof.

    (i)   2·Σ_{a=1}^{m}Σ_{b=1}^{n} C(x+a−1, n+b−1)C(x+m−a, n−b) = m·C(2x+m−1, 2n−1)
    (ii)  a → m+1−a, b → 1−b maps the b ∈ [1, n] half onto b ∈ [1−n, 0]
    (iii) the full range b ∈ [1−n, n] sums to m·C(2x+m−1, 2n−1)
    """
    x = as_rat(x)
    if m < 1 or n < 1:
        raise DomainError("doub_xab_check needs m, n >= 1")
    term = _xab_term(m, n, x)
    upper_half = _double_sum(_span(1, m), _span(1, n), term)
    lower_half = _double_sum(
        _span(1, m), _span(1 - n, 0),
        lambda a, b: _binom(x + m - a, n - b) * _binom(x + a - 1, n + b - 1),
    )
    full_range = _double_sum(_span(1, m), _span(1 - n, n), term)
    target = _doub_xab_rhs(m, n, x)
    checks = (2 * upper_half == target, upper_half == lower_half, full_range == target)
    if not all(checks):
        logger.debug("doub-xab at m=%s n=%s x=%s: %s", m, n, x, checks)
    return all(checks)


# ---------------------------------------------------------------------------
# Registry evaluators (ParamSet → Rat)
# ---------------------------------------------------------------------------

def _central(ps: ParamSet) -> tuple[int, int, int, int]:
    """(pm, qm, pn, qn) for the Corollary 1 family."""
    p, q, m, n = ps.p, ps.q, ps.m, ps.n
    return p * m, q * m, p * n, q * n


def _cor1_closed(ps: ParamSet) -> Rat:
    pm, qm, pn, qn = _central(ps)
    return Fraction(ps.p * ps.q * ps.m * ps.n, (ps.p + ps.q) * (ps.m + ps.n)) * _binom(pm + qm, pm) * _binom(pn + qn, pn)


def _cor1_term(ps: ParamSet) -> Callable[[int, int], Rat]:
    pm, qm, pn, qn = _central(ps)
    return lambda a, b: _binom(pm + qm - a + b - 1, pm - a) * _binom(pn + qn + a - b - 1, qn - b)


def _cor1_full_closed(ps: ParamSet) -> Rat:
    pm, qm, pn, qn = _central(ps)
    return Fraction(ps.p * ps.q * ps.n, ps.p + ps.q) * _binom(pm + qm + pn + qn, pm + pn)


def _cor1_lhs(ps: ParamSet) -> Rat:
    pm, _, _, qn = _central(ps)
    return _double_sum(_span(1, pm), _span(1, qn), _cor1_term(ps))


def _cor1_exchanged_lhs(ps: ParamSet) -> Rat:
    pm, qm, pn, qn = _central(ps)
    return _double_sum(
        _span(1, pm), _span(1, qn),
        lambda a, b: _binom(pm + qm - a + b - 1, b - 1) * _binom(pn + qn + a - b - 1, a - 1),
    )


def _cor1_exchanged_rhs(ps: ParamSet) -> Rat:
    pm, qm, pn, qn = _central(ps)
    return Fraction(ps.p * ps.q * ps.m * ps.n, (ps.p + ps.q) * (ps.m + ps.n)) * _binom(pm + pn, pm) * _binom(qm + qn, qm)


def _cor1_full_lhs(ps: ParamSet) -> Rat:
    pm, _, pn, qn = _central(ps)
    return _double_sum(_span(1 - pn, pm), _span(1, qn), _cor1_term(ps))


def _cor1_negative_lhs(ps: ParamSet) -> Rat:
    _, _, pn, qn = _central(ps)
    return _double_sum(_span(1 - pn, 0), _span(1, qn), _cor1_term(ps))


def _cor1_difference(ps: ParamSet) -> Rat:
    return _cor1_full_closed(ps) - _cor1_closed(ps)


def _cor1_reflected_lhs(ps: ParamSet) -> Rat:
    pm, qm, pn, qn = _central(ps)
    return _double_sum(
        _span(1, pn), _span(1, qn),
        lambda a, b: _binom(pm + qm + a + b - 2, pm + a - 1) * _binom(pn + qn - a - b, qn - b),
    )


def _cor1_pochhammer_lhs(ps: ParamSet) -> Rat:
    pm, qm, pn, qn = _central(ps)
    return _double_sum(
        _span(1, pn), _span(1, qn),
        lambda a, b: _poch(pm + qm + 1, a + b - 2) / (_poch(pm + 1, a - 1) * _poch(qm + 1, b - 1))
        * _binom(pn + qn - a - b, qn - b),
    )


def _cor1_pochhammer_rhs(ps: ParamSet) -> Rat:
    pm, qm, pn, qn = _central(ps)
    p, q, m, n = ps.p, ps.q, ps.m, ps.n
    ratio = _poch(pm + qm + 1, pn + qn) / (_poch(pm + 1, pn) * _poch(qm + 1, qn))
    return (
        Fraction(p * q * n, p + q) * ratio
        - Fraction(p * q * m * n, (p + q) * (m + n)) * _binom(pn + qn, pn)
    )


def _cor2_lhs(ps: ParamSet) -> Rat:
    m, n, x = ps.m, ps.n, ps.x
    return _double_sum(
        _span(1, m), _span(1, n),
        lambda a, b: _poch(m * x + n * x + 1, a + b - 2) / (_poch(m * x + 1, a - 1) * _poch(n * x + 1, b - 1))
        * _binom(m + n - a - b, m - a),
    )


def _cor2_rhs(ps: ParamSet) -> Rat:
    m, n, x = ps.m, ps.n, ps.x
    ratio = _poch(m * x + n * x + 1, m + n) / (_poch(m * x + 1, m) * _poch(n * x + 1, n))
    return Fraction(m * n, m + n) * ratio - m * n * x / ((m + n) * (1 + x)) * _binom(m + n, m)


def _cor3_lhs(ps: ParamSet) -> Rat:
    m, n = ps.m, ps.n
    return _double_sum(
        _span(1, m), _span(1, n),
        lambda a, b: _binom(m + n - a - b, m - a) * Fraction((m + n) ** (a + b - 2), m ** (a - 1) * n ** (b - 1)),
    )


def _cor3_rhs(ps: ParamSet) -> Rat:
    m, n = ps.m, ps.n
    return Fraction((m + n) ** (m + n - 1), m ** (m - 1) * n ** (n - 1)) - Fraction(m * n, m + n) * _binom(m + n, m)


def _s3_lhs(ps: ParamSet) -> Rat:
    m, n = ps.m, ps.n
    return _double_sum(
        _span(1, m), _span(1, n),
        lambda a, b: _binom(m + n - a + b - 1, m - a) * _binom(m + n + a - b - 1, n - b),
    )


def _s3_rhs(ps: ParamSet) -> Rat:
    m, n = ps.m, ps.n
    return Fraction(m * n, 2 * (m + n)) * _binom(m + n, m) ** 2


def _s4_lhs(ps: ParamSet) -> Rat:
    m, n = ps.m, ps.n
    return _double_sum(
        _span(1, m - 2), _span(1, n - 2),
        lambda a, b: _binom(m + n + a - b - 1, m + a + 1) * _binom(m + n - a + b - 1, n + b + 1),
    )


def _s4_rhs(ps: ParamSet) -> Rat:
    m, n = ps.m, ps.n
    central = _binom(m + n, m)
    return (
        central**2
        + _binom(m + n, m - 1) * _binom(m + n, n - 1)
        + Fraction(m * n, 2 * (m + n)) * central**2
        - _binom(2 * m + 2 * n, 2 * n)
    )


# ---------------------------------------------------------------------------
# Theorem 2 family
# ---------------------------------------------------------------------------

def _pqrsum_rhs(ps: ParamSet, r: int) -> Rat:
    pm, qm, pn, qn = _central(ps)
    head = 2 * _cor1_closed(ps)
    tail = sum(
        ((r - abs(k) + 1) * _binom(pm + qm, pm - k) * _binom(pn + qn, qn - k) for k in _span(-r, r)),
        ZERO,
    )
    return head + tail


def _pqrsum_inner(ps: ParamSet, r: int) -> Rat:
    pm, qm, pn, qn = _central(ps)
    return _double_sum(
        _span(1, pm - r - 1), _span(1, qn - r - 1),
        lambda a, b: _binom(pm + qm - a + b - 1, pm - r - 1 - a) * _binom(pn + qn + a - b - 1, qn - r - 1 - b),
    )


def _pqrsum_lhs(ps: ParamSet) -> Rat:
    r = ps.r
    pm, qm, pn, qn = _central(ps)
    outer = _double_sum(
        _span(0, pm + r), _span(0, qn + r),
        lambda a, b: _binom(pm + qm - a + b - 1, pm + r - a) * _binom(pn + qn + a - b - 1, qn + r - b),
    )
    return _pqrsum_inner(ps, r) + outer


def _split_term(ps: ParamSet, r: int) -> Callable[[int, int], Rat]:
    """Summand of the reflected sums used by the range-split identities."""
    pm, qm, pn, qn = _central(ps)
    return lambda a, b: _binom(pm + qm + a - b - 1, pm + r + a) * _binom(pn + qn - a + b - 1, qn + r + b)


def _pm_r_1_lhs(ps: ParamSet) -> Rat:
    r = ps.r
    pm, _, _, qn = _central(ps)
    return _pqrsum_inner(ps, r) + _double_sum(_span(-pm - r, 0), _span(-qn - r, 0), _split_term(ps, r))


def _split_parts(ps: ParamSet, r: int) -> tuple[Rat, Rat, Rat]:
    """(T2, T3, T4): the three reflected partial sums at this r."""
    pm, qm, pn, qn = _central(ps)
    term = _split_term(ps, r)
    t2 = _double_sum(_span(-pm - r, 0), _span(-qn - r, 0), term)
    t3 = _double_sum(_span(-pm - r, 0), _span(1, qm - r - 1), term)
    t4 = _double_sum(_span(1, pn - r - 1), _span(1, qm - r - 1), term)
    return t2, t3, t4


def _pm_r_2_lhs(ps: ParamSet) -> Rat:
    t2, t3, _ = _split_parts(ps, ps.r)
    return t3 + t2


def _pm_r_2_rhs(ps: ParamSet) -> Rat:
    pm, qm, pn, qn = _central(ps)
    return Fraction((pm + ps.r + 1) * ps.q, ps.p + ps.q) * _binom(pm + qm + pn + qn, pm + pn)


def _pm_r_3_lhs(ps: ParamSet) -> Rat:
    _, t3, t4 = _split_parts(ps, ps.r)
    return t3 + t4


def _pm_r_3_rhs(ps: ParamSet) -> Rat:
    pm, qm, pn, qn = _central(ps)
    return Fraction((qm - ps.r - 1) * ps.p, ps.p + ps.q) * _binom(pm + qm + pn + qn, pm + pn)


def _cor4_lhs(ps: ParamSet) -> Rat:
    r = ps.r
    pm, qm, pn, qn = _central(ps)
    first = _double_sum(
        _span(1, pm - r), _span(1, qn - r),
        lambda a, b: _binom(pm + qm - a + b - 1, pm - r - a) * _binom(pn + qn + a - b - 1, qn - r - b),
    )
    second = _double_sum(
        _span(1, pn - r), _span(1, qm - r),
        lambda a, b: _binom(pn + qn - a + b - 1, pn - r - a) * _binom(pm + qm + a - b - 1, qm - r - b),
    )
    return first + second


def _cor4_rhs(ps: ParamSet) -> Rat:
    r = ps.r
    pm, qm, pn, qn = _central(ps)
    tail = sum(
        ((r - abs(k)) * _binom(pm + qm, pm - k) * _binom(pn + qn, qn - k) for k in _span(1 - r, r - 1)),
        ZERO,
    )
    return 2 * _cor1_closed(ps) - r * _binom(pm + qm + pn + qn, pm + pn) + tail


def _cor5_lhs(ps: ParamSet) -> Rat:
    m, n, r = ps.m, ps.n, ps.r
    return _double_sum(
        _span(1, m - r), _span(1, n - r),
        lambda a, b: _binom(2 * m - a + b - 1, m - r - a) * _binom(2 * n + a - b - 1, n - r - b),
    )


def _cor5_rhs(ps: ParamSet) -> Rat:
    m, n, r = ps.m, ps.n, ps.r
    cm, cn = _binom(2 * m, m), _binom(2 * n, n)
    tail = sum(((r - k) * _binom(2 * m, m - k) * _binom(2 * n, n - k) for k in _span(1, r - 1)), ZERO)
    return (
        Fraction(m * n, 2 * (m + n)) * cm * cn
        - Fraction(r, 2) * _binom(2 * m + 2 * n, m + n)
        + Fraction(r, 2) * cm * cn
        + tail
    )


def _cor6_lhs(ps: ParamSet) -> Rat:
    m, n, r = ps.m, ps.n, ps.r
    return _double_sum(
        _span(1, m - r), _span(1, n - r),
        lambda a, b: _binom(m + n - a + b - 1, m - r - a) * _binom(m + n + a - b - 1, n - r - b),
    )


def _cor6_rhs(ps: ParamSet) -> Rat:
    m, n, r = ps.m, ps.n, ps.r
    central = _binom(m + n, m)
    tail = sum(((r - k) * _binom(m + n, m - k) * _binom(m + n, n - k) for k in _span(1, r - 1)), ZERO)
    return (
        Fraction(m * n, 2 * (m + n)) * central**2
        - Fraction(r, 2) * _binom(2 * m + 2 * n, 2 * m)
        + Fraction(r, 2) * central**2
        + tail
    )


def _with_r(ps: ParamSet, r: int) -> ParamSet:
    return ParamSet(m=ps.m, n=ps.n, r=r)


def _r2_pq1_rhs(ps: ParamSet) -> Rat:
    m, n = ps.m, ps.n
    cm, cn = _binom(2 * m, m), _binom(2 * n, n)
    return (
        cm * cn
        + _binom(2 * m, m - 1) * _binom(2 * n, n - 1)
        + Fraction(m * n, 2 * (m + n)) * cm * cn
        - _binom(2 * m + 2 * n, m + n)
    )


def _r1_pq1_rhs(ps: ParamSet) -> Rat:
    m, n = ps.m, ps.n
    cm, cn = _binom(2 * m, m), _binom(2 * n, n)
    return Fraction(1, 2) * cm * cn + Fraction(m * n, 2 * (m + n)) * cm * cn - Fraction(1, 2) * _binom(2 * m + 2 * n, m + n)


def _r1_mn_rhs(ps: ParamSet) -> Rat:
    m, n = ps.m, ps.n
    central = _binom(m + n, m)
    return Fraction(1, 2) * central**2 + Fraction(m * n, 2 * (m + n)) * central**2 - Fraction(1, 2) * _binom(2 * m + 2 * n, 2 * m)


@runtime_typecheck
def corollary4_rederive(m: int, n: int, p: int, q: int, r: int) -> bool:
    """Re-derive Corollary 4 at *r* from the range splits at r − 1.

    With T1 + T2 = R1 (pm-r-1), T3 + T2 = R2 (pm-r-2) and T3 + T4 = R3
    (pm-r-3), Corollary 4 is T1 + T4 = R1 − R2 + R3.
    """
    if min(m, n, p, q, r) < 1 or q * m < r:
        raise DomainError("corollary4_rederive needs m, n, p, q, r >= 1 and qm >= r")
    ps = ParamSet(m=m, n=n, p=p, q=q, r=r - 1)
    t1 = _pqrsum_inner(ps, r - 1)
    t2, t3, t4 = _split_parts(ps, r - 1)
    r1, r2, r3 = _pqrsum_rhs(ps, r - 1), _pm_r_2_rhs(ps), _pm_r_3_rhs(ps)
    at_r = ParamSet(m=m, n=n, p=p, q=q, r=r)
    checks = {
        "pm-r-1": t1 + t2 == r1,
        "pm-r-2": t3 + t2 == r2,
        "pm-r-3": t3 + t4 == r3,
        "sums": t1 + t4 == _cor4_lhs(at_r),
        "closed": r1 - r2 + r3 == _cor4_rhs(at_r),
    }
    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        logger.debug("corollary 4 re-derivation fails (%s) at %s", ", ".join(failed), at_r)
    return not failed


# ---------------------------------------------------------------------------
# Domains
# ---------------------------------------------------------------------------

def _positive(ps: ParamSet, *names: str) -> str | None:
    bad = [f"{name} = {getattr(ps, name)}" for name in names if getattr(ps, name) < 1]
    return f"{', '.join(bad)} outside domain (must be >= 1)" if bad else None


def _nonnegative(ps: ParamSet, *names: str) -> str | None:
    bad = [f"{name} = {getattr(ps, name)}" for name in names if getattr(ps, name) < 0]
    return f"{', '.join(bad)} outside domain (must be >= 0)" if bad else None


def _alpha_reason(alpha: Rat) -> str | None:
    if alpha == 0 or alpha == -1:
        return f"alpha = {rat_str(alpha)} outside domain (alpha must avoid 0 and -1)"
    return None


def _dom_theorem1(ps: ParamSet) -> str | None:
    reason = _nonnegative(ps, "m", "n") or _alpha_reason(ps.alpha)
    if reason:
        return reason
    if ps.m == 0 and ps.n == 0:
        return "degenerate: closed form is 0/0 at m = n = 0"
    if ps.m + ps.n / ps.alpha == 0:
        return "degenerate: m + n/alpha = 0"
    return None


def _dom_theorem1_positive(ps: ParamSet) -> str | None:
    return _positive(ps, "m", "n") or _dom_theorem1(ps)


def _dom_theorem2(ps: ParamSet) -> str | None:
    reason = _nonnegative(ps, "m", "n", "r") or _alpha_reason(ps.alpha)
    if reason:
        return reason
    if ps.m * ps.n != 0 and ps.m + ps.n / ps.alpha == 0:
        return "degenerate: m + n/alpha = 0"
    return None


def _dom_mn(ps: ParamSet) -> str | None:
    return _positive(ps, "m", "n")


def _dom_pqmn(ps: ParamSet) -> str | None:
    return _positive(ps, "p", "q", "m", "n")


def _dom_pqmn_r0(ps: ParamSet) -> str | None:
    return _dom_pqmn(ps) or _nonnegative(ps, "r")


def _dom_split(ps: ParamSet) -> str | None:
    reason = _dom_pqmn_r0(ps)
    if reason:
        return reason
    if ps.q * ps.m < ps.r + 1:
        return f"qm = {ps.q * ps.m} < r + 1 = {ps.r + 1}: the b-range 1..qm-r-1 runs backwards"
    return None


def _dom_pqmnr(ps: ParamSet) -> str | None:
    return _positive(ps, "p", "q", "m", "n", "r")


def _dom_mnr(ps: ParamSet) -> str | None:
    return _positive(ps, "m", "n", "r")


def _dom_cor2(ps: ParamSet) -> str | None:
    reason = _dom_mn(ps)
    if reason:
        return reason
    if ps.x < 0:
        return f"x = {rat_str(ps.x)} outside domain (must be >= 0)"
    return None


def _dom_theorem3(ps: ParamSet) -> str | None:
    reason = _dom_mn(ps)
    if reason:
        return reason
    if 2 * ps.x + ps.m == 0:
        return "degenerate: 2x + m = 0"
    return None


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

_ENTRIES: dict[str, IdentityDescriptor] = {}


def _register(
        id: str,
        lhs: Callable[[ParamSet], Rat],
        rhs: Callable[[ParamSet], Rat],
        domain: Callable[[ParamSet], str | None],
        params: tuple[str, ...],
        anchor: str,
        title: str,
) -> None:
    _ENTRIES[id] = IdentityDescriptor(id, lhs, rhs, domain, anchor, params, title)


_MNA = ("m", "n", "alpha")
_PQMN = ("p", "q", "m", "n")

_register(
    "thm1", lambda ps: lhs_theorem1(ps.m, ps.n, ps.alpha), lambda ps: rhs_theorem1(ps.m, ps.n, ps.alpha),
    _dom_theorem1, _MNA, "Theorem 1",
    "double sum with tops (1+alpha)m and (1+1/alpha)n",
)
_register(
    "kxyalpha", lambda ps: single_sum_k(ps.m, ps.n, ps.alpha), lambda ps: rhs_theorem1(ps.m, ps.n, ps.alpha),
    _dom_theorem1, _MNA, "Theorem 1, k-weighted single sum",
    "single k-weighted sum equals the Theorem 1 closed form",
)
_register(
    "telescope", lambda ps: telescoped_total(ps.m, ps.n, ps.alpha), lambda ps: rhs_theorem1(ps.m, ps.n, ps.alpha),
    _dom_theorem1, _MNA, "Theorem 1, telescoped form",
    "telescoped certificate total equals the Theorem 1 closed form",
)
_register(
    "thm1_hyp", lambda ps: second_proof_chain(ps.m, ps.n, ps.alpha), lambda ps: rhs_theorem1(ps.m, ps.n, ps.alpha),
    _dom_theorem1_positive, _MNA, "Theorem 1, 3F2 route",
    "3F2 pipeline of the second proof equals the Theorem 1 closed form",
)
_register(
    "S3", _s3_lhs, _s3_rhs, _dom_mn, ("m", "n"), "Theorem 1 at alpha = n/m",
    "Theorem 1 at alpha = n/m",
)
_register(
    "S4", _s4_lhs, _s4_rhs, _dom_mn, ("m", "n"), "Theorem 2 at alpha = n/m",
    "shifted double sum (r = 2 case of the m+n form)",
)
_register(
    "cor1", _cor1_lhs, _cor1_closed, _dom_pqmn, _PQMN, "Corollary 1",
    "Theorem 1 with alpha, m, n -> q/p, pm, qn",
)
_register(
    "cor1_exchanged", _cor1_exchanged_lhs, _cor1_exchanged_rhs, _dom_pqmn, _PQMN,
    "Corollary 1, exchanged",
    "Corollary 1 with p, m and q, n exchanged",
)
_register(
    "cor1_full_range", _cor1_full_lhs, _cor1_full_closed, _dom_pqmn, _PQMN,
    "Corollary 1, full range",
    "a extended to 1-pn..pm",
)
_register(
    "cor1_negative_range", _cor1_negative_lhs, _cor1_difference, _dom_pqmn, _PQMN,
    "Corollary 1, negative range",
    "a restricted to 1-pn..0",
)
_register(
    "cor1_reflected", _cor1_reflected_lhs, _cor1_difference, _dom_pqmn, _PQMN,
    "Corollary 1, reflected",
    "negative range reflected onto 1..pn",
)
_register(
    "cor1_pochhammer", _cor1_pochhammer_lhs, _cor1_pochhammer_rhs, _dom_pqmn, _PQMN,
    "Corollary 1, rising factorials",
    "rising-factorial form",
)
_register(
    "cor2", _cor2_lhs, _cor2_rhs, _dom_cor2, ("m", "n", "x"), "Corollary 2",
    "rising-factorial form with p, q, m, n -> m, n, x, 1",
)
_register(
    "cor3", _cor3_lhs, _cor3_rhs, _dom_mn, ("m", "n"), "Corollary 3",
    "limit of Corollary 2 as x grows",
)
_register(
    "thm2", lambda ps: lhs_theorem2(ps.m, ps.n, ps.r, ps.alpha), lambda ps: rhs_theorem2(ps.m, ps.n, ps.r, ps.alpha),
    _dom_theorem2, ("m", "n", "r", "alpha"), "Theorem 2",
    "two shifted double sums against the weighted central sum",
)
_register(
    "pqrsum", _pqrsum_lhs, lambda ps: _pqrsum_rhs(ps, ps.r), _dom_pqmn_r0, _PQMN + ("r",), "Theorem 2 at alpha = q/p",
    "Theorem 2 with alpha, m, n -> q/p, pm, qn",
)
_register(
    "pm_r_1", _pm_r_1_lhs, lambda ps: _pqrsum_rhs(ps, ps.r), _dom_pqmn_r0, _PQMN + ("r",), "Theorem 2 at alpha = q/p, reflected",
    "pqrsum with the second sum reflected",
)
_register(
    "pm_r_2", _pm_r_2_lhs, _pm_r_2_rhs, _dom_split, _PQMN + ("r",), "Corollary 4, first split",
    "Chu-Vandermonde over b in -qn-r..qm-r-1",
)
_register(
    "pm_r_3", _pm_r_3_lhs, _pm_r_3_rhs, _dom_split, _PQMN + ("r",), "Corollary 4, second split",
    "Chu-Vandermonde over a in -pm-r..pn-r-1 (the two sums added)",
)
_register(
    "cor4", _cor4_lhs, _cor4_rhs, _dom_pqmnr, _PQMN + ("r",), "Corollary 4",
    "sum of the two shifted double sums",
)
_register(
    "cor5", _cor5_lhs, _cor5_rhs, _dom_mnr, ("m", "n", "r"), "Corollary 5",
    "tops 2m and 2n",
)
_register(
    "cor6", _cor6_lhs, _cor6_rhs, _dom_mnr, ("m", "n", "r"), "Corollary 6",
    "tops m+n",
)
_register(
    "r2_pq1", lambda ps: _cor5_lhs(_with_r(ps, 2)), _r2_pq1_rhs, _dom_mn, ("m", "n"),
    "Corollary 5, r = 2", "Corollary 5 at r = 2",
)
_register(
    "r1_pq1", lambda ps: _cor5_lhs(_with_r(ps, 1)), _r1_pq1_rhs, _dom_mn, ("m", "n"),
    "Corollary 5, r = 1", "Corollary 5 at r = 1",
)
_register(
    "r1_mn", lambda ps: _cor6_lhs(_with_r(ps, 1)), _r1_mn_rhs, _dom_mn, ("m", "n"),
    "Corollary 6, r = 1", "Corollary 6 at r = 1",
)
_register(
    "thm3", lambda ps: lhs_theorem3(ps.m, ps.n, ps.x), lambda ps: rhs_theorem3(ps.m, ps.n, ps.x),
    _dom_theorem3, ("m", "n", "x"), "Theorem 3",
    "free parameter x",
)
_register(
    "doub_xab", lambda ps: _doub_xab_lhs(ps.m, ps.n, ps.x), lambda ps: _doub_xab_rhs(ps.m, ps.n, ps.x),
    _dom_mn, ("m", "n", "x"), "Theorem 3, shifted x",
    "Theorem 3 after x -> -x-m+n",
)

REGISTRY: Mapping[str, IdentityDescriptor] = types.MappingProxyType(_ENTRIES)

# the m+n form is the seventh numbered statement when Corollary 1's exchanged
# display is counted separately
ALIASES: Mapping[str, str] = types.MappingProxyType({"cor7": "cor6"})


def get_identity(identity_id: str) -> IdentityDescriptor:
    key = ALIASES.get(identity_id, identity_id)
    try:
        return REGISTRY[key]
    except KeyError:
        raise UnknownIdentity(f"unknown identity {identity_id!r}; see `binomcert list`") from None


@runtime_typecheck
def eval_identity(identity_id: str, params: ParamSet) -> VerificationReport:
    """Evaluate one registry identity at *params*.

    Args:
        identity_id: Registry key (see :data:`REGISTRY`) or alias.
        params: The parameter point.

    Returns:
        VerificationReport: exact LHS (direct summation), RHS (closed form)
        and their equality.

    Raises:
        UnknownIdentity: *identity_id* is not registered.
        DomainError: *params* violates the identity's domain.
        DegenerateError, PoleError: propagated from the evaluators.
    """
    descriptor = get_identity(identity_id)
    reason = descriptor.check_domain(params)
    if reason:
        raise DomainError(reason)

    start = time.perf_counter()
    lhs = descriptor.lhs(params)
    rhs = descriptor.rhs(params)
    elapsed = time.perf_counter() - start
    logger.debug("%s at %s: %s vs %s in %.1f µs", identity_id, params, lhs, rhs, elapsed * 1e6)
    return VerificationReport(identity_id, params, lhs, rhs, lhs == rhs, elapsed)


def catalog() -> pd.DataFrame:
    """The registry as a DataFrame: ``id``, ``anchor``, ``params``, ``title``."""
    rows = [
        {"id": d.id, "anchor": d.anchor, "params": ",".join(d.params), "title": d.title}
        for d in REGISTRY.values()
    ]
    rows += [
        {"id": alias, "anchor": REGISTRY[target].anchor, "params": ",".join(REGISTRY[target].params),
         "title": f"alias of {target}"}
        for alias, target in ALIASES.items()
    ]
    return pd.DataFrame(rows, columns=["id", "anchor", "params", "title"])
