"""Truncated Laurent series in one and two variables, and the generating
functions behind Theorems 1 and 2.

Notation used throughout: ``t = u(x) − 1`` solves ``x = t / (1+t)^(1+α)``
and ``s = v(y) − 1`` solves the same equation with α replaced by 1/α.  Then
``1 + α − αu = 1 − αt`` and ``uv − u − v = ts − 1``, so every kernel below
is built from t, s and series inverses with constant term ±1.

A series carries the highest exponent it knows (``order``); every operation
propagates that bound, and asking for a coefficient past it raises
:class:`~binomcert._errors.TruncationError`.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Final, Iterator, Mapping, Sequence

from ._errors import DomainError, TruncationError
from ._exact import ONE, ZERO, Rat, RatLike, as_rat, binomial_gen, is_integer, rat_str
from ._util import _validate_enum

__all__ = [
    "DEFAULT_ORDER",
    "LaurentSeries",
    "BiSeries",
    "BiPoly",
    "revert_u",
    "reversion_residual_check",
    "remark_coefficients",
    "classical_gf_check",
    "F_closed_form",
    "G_r_closed_form",
    "G_r_check",
    "middle_gf_check",
    "pde_check",
    "routine_identity_check",
    "dump_univariate",
    "dump_bivariate",
]

logger = logging.getLogger(__name__)

DEFAULT_ORDER: Final[int] = 16
F_METHODS: Final[frozenset[str]] = frozenset({"direct", "geometric"})


# ---------------------------------------------------------------------------
# Univariate
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LaurentSeries:
    """Coefficients of x^start .. x^order (inclusive), exact and known.

    Leading zeros are stripped on construction, so ``start`` is the
    valuation of a nonzero series.  The zero series has no coefficients and
    ``start = order + 1``.
    """

    coeffs: tuple[Rat, ...]
    start: int
    order: int

    def __post_init__(self) -> None:
        coeffs = [as_rat(c) for c in self.coeffs][: max(self.order - self.start + 1, 0)]
        coeffs += [ZERO] * (self.order - self.start + 1 - len(coeffs))
        start = self.start
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            start += 1
        if not coeffs:
            start = self.order + 1
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "start", start)

    # -------------------------------------------------------------------------
    # Constructors
    # -------------------------------------------------------------------------

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[RatLike], start: int = 0, order: int | None = None) -> LaurentSeries:
        if order is None:
            order = start + len(coeffs) - 1
        return cls(tuple(as_rat(c) for c in coeffs), start, order)

    @classmethod
    def constant(cls, value: RatLike, order: int) -> LaurentSeries:
        return cls((as_rat(value),), 0, order)

    @classmethod
    def monomial(cls, exponent: int, order: int, value: RatLike = 1) -> LaurentSeries:
        return cls((as_rat(value),), exponent, order)

    # -------------------------------------------------------------------------
    # Access
    # -------------------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, exponent: int) -> Rat:
        if exponent > self.order:
            raise TruncationError(f"coefficient of x^{exponent} requested, series known to x^{self.order}")
        if exponent < self.start:
            return ZERO
        return self.coeffs[exponent - self.start]

    def __getitem__(self, exponent: int) -> Rat:
        return self.coefficient(exponent)

    def items(self) -> Iterator[tuple[int, Rat]]:
        for offset, c in enumerate(self.coeffs):
            yield self.start + offset, c

    def truncate(self, order: int) -> LaurentSeries:
        if order > self.order:
            raise TruncationError(f"cannot extend a series known to x^{self.order} to x^{order}")
        return LaurentSeries(self.coeffs, self.start, order)

    def shift(self, k: int) -> LaurentSeries:
        """Multiply by x^k."""
        return LaurentSeries(self.coeffs, self.start + k, self.order + k)

    def derivative(self) -> LaurentSeries:
        return LaurentSeries(
            tuple(e * c for e, c in self.items()), self.start - 1, self.order - 1
        )

    # -------------------------------------------------------------------------
    # Ring Operations
    # -------------------------------------------------------------------------

    def _coerce(self, other: LaurentSeries | RatLike) -> LaurentSeries:
        if isinstance(other, LaurentSeries):
            return other
        return LaurentSeries.constant(other, self.order)

    def __add__(self, other: LaurentSeries | RatLike) -> LaurentSeries:
        other = self._coerce(other)
        order = min(self.order, other.order)
        start = min(self.start, other.start, order + 1)
        return LaurentSeries(
            tuple(self.coefficient(e) + other.coefficient(e) for e in range(start, order + 1)),
            start,
            order,
        )

    __radd__ = __add__

    def __neg__(self) -> LaurentSeries:
        return LaurentSeries(tuple(-c for c in self.coeffs), self.start, self.order)

    def __sub__(self, other: LaurentSeries | RatLike) -> LaurentSeries:
        return self + (-self._coerce(other))

    def __rsub__(self, other: RatLike) -> LaurentSeries:
        return self._coerce(other) - self

    def __mul__(self, other: LaurentSeries | RatLike) -> LaurentSeries:
        if not isinstance(other, LaurentSeries):
            c = as_rat(other)
            return LaurentSeries(tuple(c * a for a in self.coeffs), self.start, self.order)
        start = self.start + other.start
        order = min(self.order + other.start, other.order + self.start)
        out = [ZERO] * max(order - start + 1, 0)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if i + j >= len(out):
                    break
                out[i + j] += a * b
        return LaurentSeries(tuple(out), start, order)

    __rmul__ = __mul__

    def inverse(self) -> LaurentSeries:
        """1/self; a series of valuation v known to o gives one known to o − 2v."""
        if self.is_zero:
            raise ZeroDivisionError("the zero series has no inverse")
        v = self.start
        c0 = self.coeffs[0]
        length = self.order - 2 * v + v + 1  # exponents -v .. order - 2v
        out: list[Rat] = []
        for k in range(max(length, 0)):
            acc = ZERO
            for i in range(1, min(k, len(self.coeffs) - 1) + 1):
                acc += self.coeffs[i] * out[k - i]
            out.append((ONE - acc) / c0 if k == 0 else -acc / c0)
        return LaurentSeries(tuple(out), -v, self.order - 2 * v)

    def __truediv__(self, other: LaurentSeries | RatLike) -> LaurentSeries:
        if isinstance(other, LaurentSeries):
            return self * other.inverse()
        return self * (ONE / as_rat(other))

    def __pow__(self, beta: RatLike) -> LaurentSeries:
        """self^β by the power recurrence.

        Integer β works for any nonzero series (x^v and the leading
        coefficient are factored out); a non-integer β needs constant term 1.
        """
        beta = as_rat(beta)
        if self.is_zero:
            if is_integer(beta) and beta > 0:
                result = self
                for _ in range(int(beta) - 1):
                    result = result * self
                return result
            raise ZeroDivisionError("nonpositive power of the zero series")
        v, c0 = self.start, self.coeffs[0]
        if not is_integer(beta) and (v != 0 or c0 != 1):
            raise DomainError(f"rational power {rat_str(beta)} needs a series with constant term 1")
        f = [c / c0 for c in self.coeffs]
        p = [ONE]
        for k in range(1, len(f)):
            acc = ZERO
            for j in range(1, k + 1):
                acc += ((beta + 1) * j - k) * f[j] * p[k - j]
            p.append(acc / k)
        lead = c0 ** int(beta) if is_integer(beta) else ONE
        shift = int(v * beta)
        return LaurentSeries(tuple(lead * c for c in p), shift, shift + len(f) - 1)

    def __str__(self) -> str:
        terms = " + ".join(f"({rat_str(c)})x^{e}" for e, c in self.items() if c != 0)
        return f"{terms or '0'} + O(x^{self.order + 1})"


# ---------------------------------------------------------------------------
# Bivariate
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class BiSeries:
    """Dense grid of coefficients of x^i y^j, x_start ≤ i ≤ x_order and
    y_start ≤ j ≤ y_order."""

    grid: tuple[tuple[Rat, ...], ...]
    x_start: int
    y_start: int
    x_order: int
    y_order: int

    @classmethod
    def build(
            cls,
            x_range: tuple[int, int],
            y_range: tuple[int, int],
            coefficient: Callable[[int, int], Rat],
    ) -> BiSeries:
        (x_start, x_order), (y_start, y_order) = x_range, y_range
        grid = tuple(
            tuple(coefficient(i, j) for j in range(y_start, y_order + 1))
            for i in range(x_start, x_order + 1)
        )
        return cls(grid, x_start, y_start, x_order, y_order)

    @classmethod
    def outer(cls, f: LaurentSeries, g: LaurentSeries) -> BiSeries:
        """f(x)·g(y)."""
        return cls(
            tuple(tuple(a * b for b in g.coeffs) for a in f.coeffs),
            f.start, g.start, f.order, g.order,
        )

    def coefficient(self, i: int, j: int) -> Rat:
        if i > self.x_order or j > self.y_order:
            raise TruncationError(
                f"coefficient of x^{i} y^{j} requested, series known to x^{self.x_order} y^{self.y_order}"
            )
        if i < self.x_start or j < self.y_start:
            return ZERO
        return self.grid[i - self.x_start][j - self.y_start]

    def __eq__(self, other: object) -> bool:
        """Same known orders and the same coefficients (starts may differ by zero padding)."""
        if not isinstance(other, BiSeries):
            return NotImplemented
        if (self.x_order, self.y_order) != (other.x_order, other.y_order):
            return False
        x_lo, y_lo = min(self.x_start, other.x_start), min(self.y_start, other.y_start)
        return all(
            self.coefficient(i, j) == other.coefficient(i, j)
            for i in range(x_lo, self.x_order + 1)
            for j in range(y_lo, self.y_order + 1)
        )

    __hash__ = None  # type: ignore[assignment]

    def items(self) -> Iterator[tuple[tuple[int, int], Rat]]:
        """Known coefficients in lexicographic exponent order."""
        for di, row in enumerate(self.grid):
            for dj, c in enumerate(row):
                yield (self.x_start + di, self.y_start + dj), c

    def truncate(self, x_order: int, y_order: int | None = None) -> BiSeries:
        y_order = x_order if y_order is None else y_order
        if x_order > self.x_order or y_order > self.y_order:
            raise TruncationError("cannot extend a bivariate series past its known order")
        return BiSeries.build(
            (min(self.x_start, x_order + 1), x_order),
            (min(self.y_start, y_order + 1), y_order),
            self.coefficient,
        )

    def _combine(self, other: BiSeries, op: Callable[[Rat, Rat], Rat]) -> BiSeries:
        x_order, y_order = min(self.x_order, other.x_order), min(self.y_order, other.y_order)
        return BiSeries.build(
            (min(self.x_start, other.x_start, x_order + 1), x_order),
            (min(self.y_start, other.y_start, y_order + 1), y_order),
            lambda i, j: op(self.coefficient(i, j), other.coefficient(i, j)),
        )

    def __add__(self, other: BiSeries) -> BiSeries:
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other: BiSeries) -> BiSeries:
        return self._combine(other, lambda a, b: a - b)

    def __neg__(self) -> BiSeries:
        return self.scale(-1)

    def scale(self, c: RatLike) -> BiSeries:
        c = as_rat(c)
        return BiSeries(
            tuple(tuple(c * a for a in row) for row in self.grid),
            self.x_start, self.y_start, self.x_order, self.y_order,
        )

    def __mul__(self, other: BiSeries | RatLike) -> BiSeries:
        if not isinstance(other, BiSeries):
            return self.scale(other)
        x_start, y_start = self.x_start + other.x_start, self.y_start + other.y_start
        x_order = min(self.x_order + other.x_start, other.x_order + self.x_start)
        y_order = min(self.y_order + other.y_start, other.y_order + self.y_start)
        rows, cols = max(x_order - x_start + 1, 0), max(y_order - y_start + 1, 0)
        out = [[ZERO] * cols for _ in range(rows)]
        for i1, row_a in enumerate(self.grid):
            for j1, a in enumerate(row_a):
                if a == 0:
                    continue
                for i2 in range(min(len(other.grid), rows - i1)):
                    row_b, target = other.grid[i2], out[i1 + i2]
                    for j2 in range(min(len(row_b), cols - j1)):
                        target[j1 + j2] += a * row_b[j2]
        return BiSeries(tuple(tuple(r) for r in out), x_start, y_start, x_order, y_order)

    __rmul__ = __mul__

    def inverse(self) -> BiSeries:
        """1/self for a series with nonnegative starts and nonzero constant term."""
        if self.x_start < 0 or self.y_start < 0:
            raise DomainError("only series without principal part can be inverted")
        c0 = self.coefficient(0, 0)
        if c0 == 0:
            raise ZeroDivisionError("bivariate series with zero constant term is not invertible")
        out: dict[tuple[int, int], Rat] = {}
        for i in range(self.x_order + 1):
            for j in range(self.y_order + 1):
                acc = ONE if (i, j) == (0, 0) else ZERO
                for k in range(self.x_start, i + 1):
                    for l in range(self.y_start, j + 1):
                        if (k, l) == (0, 0):
                            continue
                        c = self.grid[k - self.x_start][l - self.y_start]
                        if c != 0:
                            acc -= c * out[i - k, j - l]
                out[i, j] = acc / c0
        return BiSeries.build((0, self.x_order), (0, self.y_order), lambda i, j: out[i, j])

    def __pow__(self, k: int) -> BiSeries:
        base = self.inverse() if k < 0 else self
        result = BiSeries.build((0, self.x_order), (0, self.y_order), lambda i, j: ONE if i == j == 0 else ZERO)
        for _ in range(abs(k)):
            result = result * base
        return result

    def euler_x(self) -> BiSeries:
        """x ∂/∂x."""
        return BiSeries.build(
            (self.x_start, self.x_order), (self.y_start, self.y_order),
            lambda i, j: i * self.coefficient(i, j),
        )

    def euler_y(self) -> BiSeries:
        """y ∂/∂y."""
        return BiSeries.build(
            (self.x_start, self.x_order), (self.y_start, self.y_order),
            lambda i, j: j * self.coefficient(i, j),
        )


class BiPoly:
    """Exact polynomial in u, v stored as ``{(i, j): coefficient}``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], RatLike] | None = None):
        self.terms: dict[tuple[int, int], Rat] = {
            k: as_rat(c) for k, c in (terms or {}).items() if c != 0
        }

    @classmethod
    def constant(cls, value: RatLike) -> BiPoly:
        return cls({(0, 0): value})

    @classmethod
    def u(cls) -> BiPoly:
        return cls({(1, 0): 1})

    @classmethod
    def v(cls) -> BiPoly:
        return cls({(0, 1): 1})

    def _lift(self, other: BiPoly | RatLike) -> BiPoly:
        return other if isinstance(other, BiPoly) else BiPoly.constant(other)

    def __add__(self, other: BiPoly | RatLike) -> BiPoly:
        other = self._lift(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self) -> BiPoly:
        return BiPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: BiPoly | RatLike) -> BiPoly:
        return self + (-self._lift(other))

    def __rsub__(self, other: RatLike) -> BiPoly:
        return self._lift(other) - self

    def __mul__(self, other: BiPoly | RatLike) -> BiPoly:
        other = self._lift(other)
        out: dict[tuple[int, int], Rat] = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, ZERO) + a * b
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> BiPoly:
        if k < 0:
            raise DomainError("BiPoly powers must be nonnegative")
        result, base = BiPoly.constant(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = BiPoly.constant(other)
        return isinstance(other, BiPoly) and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {rat_str(c)}" for k, c in sorted(self.terms.items()))
        return f"BiPoly({{{body}}})"


# ---------------------------------------------------------------------------
# Reversion and the univariate generating functions
# ---------------------------------------------------------------------------

def _revert(exponent: Rat, N: int) -> LaurentSeries:
    """t(x) with t = x·(1+t)^exponent, to x^N, by fixed-point iteration."""
    t = LaurentSeries((), 1, N)
    for _ in range(N):
        t = ((1 + t) ** exponent).shift(1).truncate(N)
    return t


def revert_u(alpha: RatLike, N: int) -> LaurentSeries:
    """u(x) − 1 where x = (u − 1)/u^(1+α), known to x^N."""
    alpha = as_rat(alpha)
    if alpha == 0:
        raise DomainError("alpha must be nonzero")
    if N < 1:
        raise DomainError(f"reversion order must be >= 1, got {N}")
    return _revert(1 + alpha, N)


def reversion_residual_check(alpha: RatLike, N: int) -> bool:
    """t/(1+t)^(1+α) reproduces x modulo x^(N+1)."""
    alpha = as_rat(alpha)
    t = revert_u(alpha, N)
    residual = (t * (1 + t) ** (-(1 + alpha))).truncate(N)
    return residual == LaurentSeries.monomial(1, N)


def _kernel(t: LaurentSeries, weight: Rat, power: int, order: int) -> LaurentSeries:
    """(1+t)·t^power / (1 − weight·t), truncated at *order*."""
    base = (1 + t) / (1 - weight * t)
    if power:
        base = base * t**power
    return base.truncate(order)


def remark_coefficients(alpha: RatLike, N: int) -> list[Rat]:
    """[x^m] u/(1+α−αu) for m = 0..N (equal to C((1+α)m, m))."""
    alpha = as_rat(alpha)
    t = revert_u(alpha, N)
    series = _kernel(t, alpha, 0, N)
    return [series.coefficient(m) for m in range(N + 1)]


def classical_gf_check(aa: RatLike, beta: RatLike, N: int) -> bool:
    """Σ C(aa+βn, n) wⁿ = z^(aa+1) / ((1−β)z + β) with w = (z−1)/z^β."""
    aa, beta = as_rat(aa), as_rat(beta)
    if beta == 0:
        raise DomainError("beta must be nonzero")
    z = 1 + _revert(beta, N)
    series = z ** (aa + 1) / ((1 - beta) * z + beta)
    for n in range(N + 1):
        expected = binomial_gen(aa + beta * n, n)
        if series.coefficient(n) != expected:
            logger.debug("classical formula fails at n=%s: %s != %s", n, series.coefficient(n), expected)
            return False
    return True


# ---------------------------------------------------------------------------
# F(x, y) and G_r(x, y)
# ---------------------------------------------------------------------------

def _check_alpha(alpha: Rat) -> None:
    if alpha == 0 or alpha == -1:
        raise DomainError(f"alpha = {rat_str(alpha)} outside domain (alpha must avoid 0 and -1)")


class _Kernels:
    """The factors A_j(x) = u t^j/(1−αt) and B_j(y) = v s^j/(1−s/α)."""

    def __init__(self, alpha: Rat, N: int, M: int):
        self.alpha, self.N, self.M = alpha, N, M
        self.t = revert_u(alpha, N)
        self.s = revert_u(1 / alpha, N)
        self._cache: dict[int, BiSeries] = {}

    def pair(self, j: int) -> BiSeries:
        """outer(A_j, B_j), truncated at M in both variables."""
        if j not in self._cache:
            a = _kernel(self.t, self.alpha, j, self.M)
            b = _kernel(self.s, 1 / self.alpha, j, self.M)
            self._cache[j] = BiSeries.outer(a, b)
        return self._cache[j]

    def denominator_inverse_sq(self) -> BiSeries:
        """(uv − u − v)^(−2) = (ts − 1)^(−2)."""
        u, v = (1 + self.t), (1 + self.s)
        one_x, one_y = LaurentSeries.constant(1, self.N), LaurentSeries.constant(1, self.N)
        d = BiSeries.outer(u, v) - BiSeries.outer(u, one_y) - BiSeries.outer(one_x, v)
        return (d ** -2).truncate(self.N)


def _precision(M: int, r: int = 0) -> int:
    # t^(-r) loses r+1 orders
    return M + r + 2


def F_closed_form(alpha: RatLike, M: int, method: str = "direct") -> BiSeries:
    """uv(u−1)(v−1) / [(1+α−αu)(1+α⁻¹−α⁻¹v)(uv−u−v)²] to order M.

    ``method="direct"`` inverts (uv−u−v)² as a bivariate series;
    ``method="geometric"`` expands it as Σ_k k·(ts)^k.
    """
    (method,) = _validate_enum("method", method, set(F_METHODS), allow_multi=False)
    alpha = as_rat(alpha)
    _check_alpha(alpha)
    if M < 1:
        raise DomainError(f"order must be >= 1, got {M}")
    kernels = _Kernels(alpha, _precision(M), M)
    if method == "direct":
        f = kernels.pair(1) * kernels.denominator_inverse_sq()
    else:
        f = kernels.pair(0).scale(0)
        for k in range(1, M + 1):
            f = f + kernels.pair(k).scale(k)
    # every point of [0, M]^2, zero rows included
    return BiSeries.build((0, M), (0, M), f.coefficient)


def _g_r_pair(alpha: Rat, r: int, M: int) -> tuple[BiSeries, BiSeries, _Kernels]:
    kernels = _Kernels(alpha, _precision(M, r), M)
    inv_sq = kernels.denominator_inverse_sq()
    g_r = (kernels.pair(-r) * inv_sq).truncate(M)
    g_neg = (kernels.pair(r + 2) * inv_sq).truncate(M)
    return g_r, g_neg, kernels


def _check_g_r(alpha: Rat, r: int, M: int) -> None:
    _check_alpha(alpha)
    if r < 0 or M < r + 1:
        raise DomainError(f"need r >= 0 and M >= r + 1, got r={r}, M={M}")


def G_r_closed_form(alpha: RatLike, r: int, M: int) -> BiSeries:
    """uv(u−1)^(−r)(v−1)^(−r) / [(1+α−αu)(1+α⁻¹−α⁻¹v)(uv−u−v)²] to order M."""
    alpha = as_rat(alpha)
    _check_g_r(alpha, r, M)
    return _g_r_pair(alpha, r, M)[0]


def _shifted_double_sum(m: int, n: int, shift: int, alpha: Rat) -> Rat:
    """Σ_{a=0}^{m+shift} Σ_{b=0}^{n+shift} C((1+α)m−a+b−1, m+shift−a)·C((1+α⁻¹)n+a−b−1, n+shift−b)."""
    top_m, top_n = (1 + alpha) * m, (1 + 1 / alpha) * n
    total = ZERO
    for a in range(m + shift + 1):
        for b in range(n + shift + 1):
            total += binomial_gen(top_m - a + b - 1, m + shift - a) * binomial_gen(top_n + a - b - 1, n + shift - b)
    return total


def G_r_check(alpha: RatLike, r: int, M: int) -> bool:
    """Coefficients of G_r and G_(−r−2) against their double sums.

    Checks every (m, n) in [−r, M]², including the principal part, and
    that the Σ (k+1)(ts)^k expansion gives the same G_r.
    """
    alpha = as_rat(alpha)
    _check_g_r(alpha, r, M)
    g_r, g_neg, kernels = _g_r_pair(alpha, r, M)

    geometric = kernels.pair(-r)
    for k in range(1, M + 2 * r + 1):
        geometric = geometric + kernels.pair(k - r).scale(k + 1)
    if geometric.truncate(M) != g_r:
        logger.debug("geometric and direct G_%s disagree at alpha=%s", r, alpha)
        return False

    for m in range(-r, M + 1):
        for n in range(-r, M + 1):
            if g_r.coefficient(m, n) != _shifted_double_sum(m, n, r, alpha):
                logger.debug("G_%s coefficient (%s, %s) fails at alpha=%s", r, m, n, alpha)
                return False
            if g_neg.coefficient(m, n) != _shifted_double_sum(m, n, -r - 2, alpha):
                logger.debug("G_%s coefficient (%s, %s) fails at alpha=%s", -r - 2, m, n, alpha)
                return False
    return True


def middle_gf_check(alpha: RatLike, r: int, M: int) -> bool:
    """[x^m y^n] uv(u−1)^k(v−1)^k/[(1+α−αu)(1+α⁻¹−α⁻¹v)] = C((1+α)m, m−k)·C((1+α⁻¹)n, n−k)
    for |k| ≤ r and m, n ≥ −r."""
    alpha = as_rat(alpha)
    _check_alpha(alpha)
    kernels = _Kernels(alpha, _precision(M, r), M)
    for k in range(-r, r + 1):
        pair = kernels.pair(k)
        for m in range(-r, M + 1):
            for n in range(-r, M + 1):
                expected = binomial_gen((1 + alpha) * m, m - k) * binomial_gen((1 + 1 / alpha) * n, n - k)
                if pair.coefficient(m, n) != expected:
                    logger.debug("middle kernel k=%s fails at (%s, %s), alpha=%s", k, m, n, alpha)
                    return False
    return True


def pde_check(alpha: RatLike, M: int) -> bool:
    """[(1+α)x∂_x + (1+α⁻¹)y∂_y] F = x·R_α′(x) · y·R_(1/α)′(y), R_α = u/(1+α−αu)."""
    alpha = as_rat(alpha)
    _check_alpha(alpha)
    if M < 2:
        raise DomainError(f"order must be >= 2, got {M}")
    f = F_closed_form(alpha, M)
    lhs = f.euler_x().scale(1 + alpha) + f.euler_y().scale(1 + 1 / alpha)
    t, s = revert_u(alpha, M + 1), revert_u(1 / alpha, M + 1)
    rx = _kernel(t, alpha, 0, M + 1).derivative().shift(1).truncate(M)
    ry = _kernel(s, 1 / alpha, 0, M + 1).derivative().shift(1).truncate(M)
    rhs = BiSeries.outer(rx, ry)
    return all(lhs.coefficient(i, j) == rhs.coefficient(i, j) for i in range(M + 1) for j in range(M + 1))


# ---------------------------------------------------------------------------
# Cleared-denominator identity of the Theorem 2 proof
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _RationalTerm:
    """coeff · numerator · ∏ factor^exponent (negative exponent: denominator)."""

    coeff: Rat
    numerator: BiPoly
    exponents: Mapping[str, int]


def _factors(alpha: Rat) -> dict[str, BiPoly]:
    u, v = BiPoly.u(), BiPoly.v()
    return {
        "pu": 1 + alpha - alpha * u,
        "pv": 1 + 1 / alpha - v * (1 / alpha),
        "u1": u - 1,
        "v1": v - 1,
        "D": u * v - u - v,
    }


def _clear(terms: Sequence[_RationalTerm], factors: Mapping[str, BiPoly], common: Mapping[str, int]) -> BiPoly:
    total = BiPoly()
    for term in terms:
        poly = term.numerator * term.coeff
        for name, base in factors.items():
            power = term.exponents.get(name, 0) + common[name]
            if power < 0:
                raise DomainError(f"common denominator misses {name}^{-power}")
            poly = poly * base**power
        total = total + poly
    return total


def routine_identity_check(alpha: RatLike, r: int) -> bool:
    """G_r + G_(−r−2) = 2·F + Σ_{k=−r}^{r} (r−|k|+1)·uv(u−1)^k(v−1)^k/[(1+α−αu)(1+α⁻¹−α⁻¹v)],
    multiplied through by the common denominator and compared in ℚ[u, v]."""
    alpha = as_rat(alpha)
    _check_alpha(alpha)
    if r < 0:
        raise DomainError(f"r must be >= 0, got {r}")
    uv = BiPoly.u() * BiPoly.v()
    base = {"pu": -1, "pv": -1}

    def term(coeff: RatLike, shift: int, d: int) -> _RationalTerm:
        return _RationalTerm(as_rat(coeff), uv, {**base, "u1": shift, "v1": shift, "D": d})

    lhs = [term(1, -r, -2), term(1, r + 2, -2)]
    rhs = [term(2, 1, -2)] + [term(r - abs(k) + 1, k, 0) for k in range(-r, r + 1)]
    factors = _factors(alpha)
    common = {
        name: max([0] + [-t.exponents.get(name, 0) for t in lhs + rhs]) for name in factors
    }
    return _clear(lhs, factors, common) == _clear(rhs, factors, common)


# ---------------------------------------------------------------------------
# Dumps
# ---------------------------------------------------------------------------

def dump_univariate(series: LaurentSeries) -> list[str]:
    """One ``"m p/q"`` line per known coefficient from the valuation up."""
    return [f"{e} {rat_str(c)}" for e, c in series.items()]


def dump_bivariate(series: BiSeries) -> list[str]:
    """One ``"m n p/q"`` line per grid point, lexicographic."""
    return [f"{i} {j} {rat_str(c)}" for (i, j), c in series.items()]
