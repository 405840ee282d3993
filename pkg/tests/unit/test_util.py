from fractions import Fraction

import pytest

from binomcert._util import _parse_int_range, _parse_rat_list, _prune_none, _validate_enum, runtime_typecheck


def test_validate_enum_rejects_unknown_value():
    with pytest.raises(ValueError) as exc:
        _validate_enum("method", "wz", {"direct", "geometric"}, allow_multi=False)
    assert "method='wz'" in str(exc.value)


def test_validate_enum_splits_and_dedupes():
    assert _validate_enum("kinds", "F, Gr,F", {"F", "Gr"}) == ("F", "Gr")
    assert _validate_enum("kinds", ["pde"], {"pde"}) == ("pde",)


def test_validate_enum_single_value_only():
    with pytest.raises(ValueError):
        _validate_enum("kind", ["F", "Gr"], {"F", "Gr"}, allow_multi=False)
    with pytest.raises(ValueError):
        _validate_enum("kind", [], {"F"})
    with pytest.raises(TypeError):
        _validate_enum("kind", 3, {"F"})  # type: ignore[arg-type]


@pytest.mark.parametrize(
    "text, expected",
    [
        ("3", (3,)),
        ("0:3", (0, 1, 2, 3)),
        ("1,4,7", (1, 4, 7)),
        ("1:2, 2:3", (1, 2, 3)),
        ("-2:0", (-2, -1, 0)),
    ],
)
def test_parse_int_range(text, expected):
    assert _parse_int_range(text) == expected


@pytest.mark.parametrize("text", ["5:1", "a", "1:b", "1.5"])
def test_parse_int_range_rejects(text):
    with pytest.raises(ValueError):
        _parse_int_range(text)


def test_parse_rat_list():
    assert _parse_rat_list("1,2, 1/2") == (Fraction(1), Fraction(2), Fraction(1, 2))
    assert _parse_rat_list(["2/3", "4/6,-7/2"]) == (Fraction(2, 3), Fraction(-7, 2))


@pytest.mark.parametrize("text", ["x", "1/0", "1//2"])
def test_parse_rat_list_rejects(text):
    with pytest.raises(ValueError) as exc:
        _parse_rat_list(text)
    assert "not a rational" in str(exc.value)


def test_prune_none():
    assert _prune_none({"m": 1, "r": None}) == {"m": 1}


@runtime_typecheck
def _scaled(m: int, alpha: Fraction | int, xs: tuple[int, ...] = ()) -> Fraction:
    return m * alpha


def test_runtime_typecheck():
    assert _scaled(2, Fraction(1, 3)) == Fraction(2, 3)
    assert _scaled(2, 3, xs=(1, 2)) == 6
    with pytest.raises(TypeError) as exc:
        _scaled(True, 1)
    assert "m=True" in str(exc.value)
    with pytest.raises(TypeError):
        _scaled(1, 0.5)  # type: ignore[arg-type]
    with pytest.raises(TypeError):
        _scaled(1, 1, xs=(1, "2"))  # type: ignore[arg-type]
