import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from binomcert._errors import DomainError, LowerParamPole, NonTerminating, PipelinePole
from binomcert._hypergeom import (
    HypSpec,
    chu_vandermonde,
    dixon_check,
    dixon_value,
    eval_terminating,
    gessel_stanton_check,
    remark_evaluations,
    second_proof_chain,
    sum_3f2_spec,
    transform_3f2_check,
    whipple_check,
    whipple_value,
)
from binomcert._identities import DEFAULT_ALPHAS, rhs_theorem1

F = Fraction


def test_eval_terminating_small():
    assert eval_terminating(HypSpec((-2, 1), (1,))) == 0
    assert eval_terminating(HypSpec((0, 5), (2,))) == 1


def test_termination_index_takes_smallest():
    assert HypSpec((-1, -3), (2,)).termination_index == 1


def test_non_terminating():
    with pytest.raises(NonTerminating):
        HypSpec((1, 2), (3,)).termination_index


def test_lower_parameter_pole():
    with pytest.raises(LowerParamPole):
        eval_terminating(HypSpec((-3, 1), (-1,)))


def test_parameter_order_is_irrelevant():
    upper, lower = (F(1, 3), -4, F(5, 2)), (F(7, 3), F(-5, 7))
    base = eval_terminating(HypSpec(upper, lower))
    for up in itertools.permutations(upper):
        for low in itertools.permutations(lower):
            assert eval_terminating(HypSpec(up, low)) == base


def test_chu_vandermonde_example():
    assert chu_vandermonde(3, F(-1, 2), F(5, 2)) == F(32, 21)


def test_chu_vandermonde_grid():
    for N in range(21):
        for b, c in itertools.product((F(-1, 2), F(2, 3), 4), (F(5, 2), F(7, 3))):
            chu_vandermonde(N, b, c)


def test_chu_vandermonde_typechecks():
    with pytest.raises(TypeError):
        chu_vandermonde("3", 1, 2)


def _rationals(denominator):
    """Non-integer rationals p/denominator with |p| <= 40."""
    return st.integers(-40, 40).filter(lambda p: p % denominator).map(lambda p: F(p, denominator))


@settings(max_examples=200, deadline=None, derandomize=True)
@given(
    N=st.integers(0, 8),
    a=st.integers(-20, 20).map(lambda p: F(p, 4)),
    b=_rationals(3),
    d=_rationals(7),
    e=_rationals(5),
)
def test_transformation_random_grid(N, a, b, d, e):
    assert transform_3f2_check(N, a, b, d, e)


_GS_B = (F(1, 2), F(2, 3), 1, F(3, 2), 2, F(7, 5), 3, F(9, 4), 4, F(11, 3))
_GS_S = (F(1, 3), F(1, 2), 1, F(3, 2), 2, F(5, 2), 3, F(10, 3), 5, F(7, 4))


@pytest.mark.parametrize("N", range(16))
def test_gessel_stanton_grid(N):
    for b, s in itertools.product(_GS_B, _GS_S):
        assert gessel_stanton_check(N, b, s)


def test_dixon_example():
    assert dixon_value(2, -1, F(1, 2)) == F(9, 10)
    assert dixon_check(2, -1, F(1, 2))


# a even, b half-odd, one terminating parameter -n: no gamma argument is a pole
_DIXON_TUPLES = [
    (a, b, -n) for a, b, n in itertools.product((2, 4, 6), (F(1, 2), F(3, 2), F(5, 2)), (1, 2, 3))
]


@pytest.mark.parametrize("a, b, c", _DIXON_TUPLES + [(a, c, b) for a, b, c in _DIXON_TUPLES])
def test_dixon_half_integer(a, b, c):
    assert dixon_check(a, b, c)


@pytest.mark.parametrize("m, n", itertools.product(range(1, 6), repeat=2))
def test_dixon_at_alpha_one(m, n):
    assert dixon_check(2 * m + 1, m, 1 - n)


def test_whipple_examples():
    assert whipple_value(-1, F(3, 2), 2) == F(1, 4)
    assert whipple_value(-1, F(1, 2), 1) == 0


# a = 1 makes the series the constant 1
@pytest.mark.parametrize(
    "c, d", [(F(k, 2), d) for k in range(1, 8) for d in range(1, k + 1)]
)
def test_whipple_trivial_series(c, d):
    assert whipple_value(1, c, d) == 1
    assert whipple_check(1, c, d)


@pytest.mark.parametrize(
    "a, c, d",
    [(-n, F(k, 2), d) for n in (1, 2, 3) for k in (1, 3, 5) for d in range(1, k + 1)],
)
def test_whipple_half_integer(a, c, d):
    assert whipple_check(a, c, d)


@pytest.mark.parametrize("m, n", itertools.product(range(1, 6), repeat=2))
def test_whipple_at_m_equals_n(m, n):
    assert whipple_check(1 - n, m + n + 1, n + 2)


def test_whipple_needs_half_integer_c():
    with pytest.raises(DomainError):
        whipple_check(-1, F(1, 3), 2)


@pytest.mark.parametrize("method", ["series", "gessel-stanton"])
def test_second_proof_chain(method):
    for alpha in DEFAULT_ALPHAS:
        for m, n in itertools.product(range(1, 6), repeat=2):
            assert second_proof_chain(m, n, alpha, method) == rhs_theorem1(m, n, alpha)


def test_second_proof_chain_by_hand():
    assert second_proof_chain(1, 2, 1) == 4
    assert eval_terminating(sum_3f2_spec(1, 2, 1)) == F(4, 5)


def test_pipeline_poles_name_the_factor():
    with pytest.raises(PipelinePole) as exc:
        second_proof_chain(1, 4, -2)
    assert exc.value.factor == "(2-(1+1/alpha)n)_(n-1)"
    with pytest.raises(PipelinePole) as exc:
        second_proof_chain(2, 2, F(-1, 2))
    assert exc.value.factor == "alpha*m+1"


def test_second_proof_chain_domain():
    with pytest.raises(DomainError):
        second_proof_chain(0, 1, 1)
    with pytest.raises(ValueError):
        second_proof_chain(1, 1, 1, method="wz")


@pytest.mark.parametrize("m, n", itertools.product(range(1, 5), repeat=2))
def test_remark_evaluations_agree(m, n):
    for alpha in {F(1), F(n, m)}:
        values = remark_evaluations(m, n, alpha)
        assert len(set(values.values())) == 1
        assert ("dixon" in values) == (alpha == 1)
        assert ("whipple" in values) == (alpha == F(n, m))
