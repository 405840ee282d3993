from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from binomcert._errors import DomainError, TruncationError
from binomcert._exact import binomial_gen
from binomcert._identities import DEFAULT_ALPHAS, rhs_theorem1
from binomcert._series import (
    BiPoly,
    F_closed_form,
    G_r_check,
    G_r_closed_form,
    LaurentSeries,
    classical_gf_check,
    dump_bivariate,
    dump_univariate,
    middle_gf_check,
    pde_check,
    remark_coefficients,
    revert_u,
    reversion_residual_check,
    routine_identity_check,
)

ORDER = 4


def series_strategy():
    head = st.integers(min_value=1, max_value=9)
    tail = st.lists(st.integers(min_value=-9, max_value=9), min_size=ORDER, max_size=ORDER)
    return st.builds(lambda h, t: LaurentSeries.from_coeffs([h, *t]), head, tail)


@given(series_strategy(), series_strategy(), series_strategy())
def test_multiplication_associates(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(series_strategy(), series_strategy(), series_strategy())
def test_multiplication_distributes(a, b, c):
    assert a * (b + c) == a * b + a * c


@given(series_strategy())
def test_inverse(s):
    assert s * s.inverse() == LaurentSeries.constant(1, ORDER)


def test_coefficient_past_order():
    with pytest.raises(TruncationError):
        revert_u(1, 4).coefficient(5)


def test_laurent_bookkeeping():
    x = LaurentSeries.monomial(1, 6)
    inv = (x + x * x).inverse()
    assert inv.start == -1
    assert inv.order == 4
    assert [c for _, c in inv.items()] == [1, -1, 1, -1, 1, -1]


def test_revert_catalan():
    t = revert_u(1, 4)
    assert [(e, c) for e, c in t.items()] == [(1, 1), (2, 2), (3, 5), (4, 14)]
    assert dump_univariate(t) == ["1 1", "2 2", "3 5", "4 14"]


@pytest.mark.parametrize("alpha", DEFAULT_ALPHAS)
def test_reversion_residual(alpha):
    assert reversion_residual_check(alpha, 10)


@pytest.mark.parametrize("alpha", [1, Fraction(1, 2), Fraction(5, 3)])
def test_remark_coefficients(alpha):
    alpha = Fraction(alpha)
    expected = [binomial_gen((1 + alpha) * m, m) for m in range(9)]
    assert remark_coefficients(alpha, 8) == expected


def test_remark_central_binomials():
    assert remark_coefficients(1, 3) == [1, 2, 6, 20]


@pytest.mark.parametrize("aa, beta, N", [(0, 2, 5), (1, 1, 5), (Fraction(3, 2), Fraction(5, 2), 4)])
def test_classical_formula(aa, beta, N):
    assert classical_gf_check(aa, beta, N)


def test_revert_rejects_zero_alpha():
    with pytest.raises(DomainError):
        revert_u(0, 4)


def test_f_coefficients():
    f = F_closed_form(1, 4)
    assert f.coefficient(1, 1) == 1
    assert f.coefficient(2, 2) == 18
    assert all(f.coefficient(m, 0) == 0 and f.coefficient(0, m) == 0 for m in range(5))


@pytest.mark.parametrize("alpha", [2, Fraction(2, 3)])
def test_f_matches_theorem1(alpha):
    f = F_closed_form(alpha, 5)
    for m in range(1, 6):
        for n in range(1, 6):
            assert f.coefficient(m, n) == rhs_theorem1(m, n, alpha)


def test_f_constructions_agree():
    assert F_closed_form(Fraction(2, 3), 4, "geometric") == F_closed_form(Fraction(2, 3), 4, "direct")


@pytest.mark.parametrize("alpha", [1, Fraction(1, 2), Fraction(2, 3)])
def test_f_dumps_agree_across_methods(alpha):
    direct = dump_bivariate(F_closed_form(alpha, 3, "direct"))
    geometric = dump_bivariate(F_closed_form(alpha, 3, "geometric"))
    assert direct == geometric
    assert len(direct) == 16
    assert direct[:4] == ["0 0 0", "0 1 0", "0 2 0", "0 3 0"]
    assert direct[5] == "1 1 1"


def test_f_rejects_bad_method():
    with pytest.raises(ValueError):
        F_closed_form(1, 4, "newton")


@pytest.mark.parametrize("alpha, r, M", [(1, 0, 6), (1, 2, 6), (Fraction(2, 3), 1, 5)])
def test_g_r(alpha, r, M):
    assert G_r_check(alpha, r, M)


def test_g_r_dump_has_principal_part():
    lines = dump_bivariate(G_r_closed_form(1, 2, 6))
    assert any(line.startswith("-1 -1 ") for line in lines)
    assert lines == sorted(lines, key=lambda s: tuple(int(v) for v in s.split()[:2]))


def test_g_r_needs_order():
    with pytest.raises(DomainError):
        G_r_check(1, 3, 3)


def test_middle_generating_function():
    assert middle_gf_check(1, 1, 4)
    assert middle_gf_check(Fraction(7, 2), 2, 3)


@pytest.mark.parametrize("alpha, M", [(1, 8), (Fraction(5, 3), 6)])
def test_pde(alpha, M):
    assert pde_check(alpha, M)


def test_pde_small_order():
    with pytest.raises(DomainError):
        pde_check(1, 1)


@pytest.mark.parametrize("alpha, r", [(1, 0), (1, 3), (Fraction(7, 2), 2), (Fraction(2, 3), 4)])
def test_routine_identity(alpha, r):
    assert routine_identity_check(alpha, r)


def test_bipoly_ring():
    u, v = BiPoly.u(), BiPoly.v()
    assert (u + v) ** 2 == u * u + 2 * u * v + v * v
    assert (u - 1) * (u + 1) == u**2 - 1
    assert u - u == 0
