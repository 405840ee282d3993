from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from binomcert._errors import DomainError, InsufficientSamples, PoleError
from binomcert._exact import (
    GammaValue,
    binomial_gen,
    certify_poly_identity,
    gamma_product,
    parse_rat,
    pochhammer,
    rat_str,
)
from binomcert._identities import lhs_theorem3, rhs_theorem3

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
half_integers = st.integers(min_value=1, max_value=30).map(lambda k: Fraction(k, 2))


def _to_fraction(value) -> Fraction:
    value = sympy.nsimplify(value)
    return Fraction(int(value.p), int(value.q))


@pytest.mark.parametrize(
    "x, k, expected",
    [(4, 2, 6), (Fraction(5, 2), 2, Fraction(15, 8)), (3, 5, 0), (7, -1, 0), (-1, 3, -1), (0, 0, 1)],
)
def test_binomial_gen_examples(x, k, expected):
    assert binomial_gen(x, k) == expected


@pytest.mark.parametrize(
    "x, n, expected",
    [(1, 4, 24), (Fraction(7, 3), 0, 1), (Fraction(1, 2), 3, Fraction(15, 8))],
)
def test_pochhammer_examples(x, n, expected):
    assert pochhammer(x, n) == expected


def test_pochhammer_rejects_negative_length():
    with pytest.raises(DomainError):
        pochhammer(1, -1)


@given(rationals, st.integers(min_value=-2, max_value=10))
def test_pascal_rule(x, k):
    assert binomial_gen(x, k) == binomial_gen(x - 1, k) + binomial_gen(x - 1, k - 1)


@given(rationals, st.integers(min_value=0, max_value=8), st.integers(min_value=0, max_value=8))
def test_pochhammer_splits(x, m, n):
    assert pochhammer(x, m + n) == pochhammer(x, m) * pochhammer(x + m, n)


@given(st.integers(min_value=0, max_value=40), st.data())
def test_complement_symmetry(N, data):
    k = data.draw(st.integers(min_value=0, max_value=N))
    assert binomial_gen(N, k) == binomial_gen(N, N - k)


@settings(max_examples=50)
@given(rationals, st.integers(min_value=0, max_value=7))
def test_binomial_matches_sympy(x, k):
    oracle = sympy.binomial(sympy.Rational(x.numerator, x.denominator), k)
    assert binomial_gen(x, k) == _to_fraction(oracle)


@settings(max_examples=50)
@given(rationals, st.integers(min_value=0, max_value=7))
def test_pochhammer_matches_sympy(x, n):
    oracle = sympy.rf(sympy.Rational(x.numerator, x.denominator), n)
    assert pochhammer(x, n) == _to_fraction(oracle)


def test_binomial_degree_in_x():
    # unit-step k-th difference of C(x, k) is C(x, 0) = 1
    k = 5
    diffs = [binomial_gen(Fraction(1, 3) + i, k) for i in range(k + 2)]
    for _ in range(k):
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    assert diffs == [1, 1]


@pytest.mark.parametrize(
    "num, den, coeff, exp",
    [
        ([4], [2], 6, 0),
        ([Fraction(5, 2)], [Fraction(1, 2)], Fraction(3, 4), 0),
        ([Fraction(3, 2)], [2], Fraction(1, 2), 1),
        ([Fraction(-1, 2)], [], -2, 1),
    ],
)
def test_gamma_product_examples(num, den, coeff, exp):
    assert gamma_product(num, den) == GammaValue(coeff, exp)


@given(half_integers)
def test_gamma_recurrence(z):
    assert gamma_product([z + 1], [z]) == GammaValue(z, 0)


@settings(max_examples=40)
@given(half_integers)
def test_gamma_matches_sympy(z):
    value = gamma_product([z], [])
    oracle = sympy.gamma(sympy.Rational(z.numerator, z.denominator))
    expected = sympy.Rational(value.coeff.numerator, value.coeff.denominator) * sympy.sqrt(sympy.pi) ** value.sqrt_pi_exp
    assert sympy.simplify(oracle - expected) == 0


def test_gamma_product_poles_and_domain():
    with pytest.raises(PoleError):
        gamma_product([0], [1])
    with pytest.raises(PoleError):
        gamma_product([1], [-2])
    with pytest.raises(DomainError):
        gamma_product([Fraction(1, 3)], [1])


def test_reciprocal_zero_gives_exact_zero():
    assert gamma_product([3], [-1], reciprocal_zeros=True).is_zero
    with pytest.raises(PoleError):
        gamma_product([-1], [3], reciprocal_zeros=True)


def test_gamma_value_to_rat():
    assert GammaValue(Fraction(3, 4), 0).to_rat() == Fraction(3, 4)
    with pytest.raises(DomainError):
        GammaValue(1, 1).to_rat()


@given(rationals)
def test_rat_string_round_trip(x):
    assert parse_rat(rat_str(x)) == x


def test_rat_str_canonical():
    assert rat_str(Fraction(6, 4)) == "3/2"
    assert rat_str(5) == "5"
    assert rat_str(Fraction(-2, 4)) == "-1/2"


@pytest.mark.parametrize("text", ["1/0", "abc", "1.5.2"])
def test_parse_rat_rejects(text):
    with pytest.raises(DomainError):
        parse_rat(text)


def test_certify_poly_identity_examples():
    assert certify_poly_identity(1, lambda x: 2 * x + 1, lambda x: 2 * x + 1, [0, 1])
    assert not certify_poly_identity(1, lambda x: 2 * x + 1, lambda x: 2 * x, [0, 1])


def test_certify_theorem3_small_case():
    assert certify_poly_identity(
        2, lambda x: lhs_theorem3(1, 1, x), lambda x: rhs_theorem3(1, 1, x), [1, 2, 3]
    )
    assert lhs_theorem3(1, 1, 2) == rhs_theorem3(1, 1, 2) == 2


def test_certify_needs_enough_distinct_points():
    with pytest.raises(InsufficientSamples):
        certify_poly_identity(2, lambda x: x, lambda x: x, [1, 1, 2])


def test_certify_typechecks_degree():
    with pytest.raises(TypeError) as exc:
        certify_poly_identity("2", lambda x: x, lambda x: x, [1, 2, 3])
    assert "degree_bound" in str(exc.value)
