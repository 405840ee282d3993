from __future__ import annotations

import inspect, functools
import collections.abc as _abc
import types
from fractions import Fraction

from typing import Iterable, Any, Sequence, get_origin, get_args, Union, get_type_hints, Mapping

from collections.abc import Sequence as ABCSequence

__all__ = [
    "_string_to_tuple",
    "_raise_invalid_argument",
    "runtime_typecheck",
    "_validate_enum",
    "_prune_none",
    "_parse_rat_list",
    "_parse_int_range",
]

def _string_to_tuple(value: str | Iterable[str]) -> tuple[str, ...]:
    if isinstance(value, str):
        # split on commas, trim whitespace, drop empties
        return tuple(s.strip() for s in value.split(",") if s.strip())
    return tuple(value)

def _raise_invalid_argument(param: str, value: object, allowed: Iterable[str]) -> None:
    choices = ", ".join(sorted(set(allowed)))
    raise ValueError(f"{param}={value!r} is invalid; choose from: {choices}")

def _is_instance(val: Any, anno: Any) -> bool:
    """isinstance() against a type hint; bools never count as integers or rationals."""

    origin = get_origin(anno) or anno

    if anno is Any:
        return True

    if origin in (Union, types.UnionType):
        return any(_is_instance(val, arg) for arg in get_args(anno))

    if isinstance(val, bool) and origin in (int, Fraction):
        return False

    if origin in (ABCSequence, tuple) and get_args(anno):
        if isinstance(val, (str, bytes)) or not isinstance(val, origin):
            return False
        item = get_args(anno)[0]
        return all(_is_instance(v, item) for v in val)

    return isinstance(val, origin)

def runtime_typecheck(fn):
    """Check call arguments against *fn*'s annotations; raise ``TypeError`` on mismatch."""

    sig   = inspect.signature(fn)
    hints = get_type_hints(fn)

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        bound = sig.bind_partial(*args, **kwargs)
        for name, value in bound.arguments.items():
            anno = hints.get(name)
            if anno is not None and not _is_instance(value, anno):
                raise TypeError(f"{fn.__name__}(): {name}={value!r} is not {anno}")
        return fn(*args, **kwargs)

    return wrapper

def _validate_enum(
    param_name: str,
    value: str | Sequence[str],
    allowed: set[str],
    *,
    allow_multi: bool = True,
) -> tuple[str, ...]:
    """Normalise *value* to a tuple and verify every element is in *allowed*."""

    if isinstance(value, str):
        items = [s.strip() for s in value.split(",")] if allow_multi else [value]
    elif isinstance(value, _abc.Iterable):
        items = list(value)
    else:
        raise TypeError(f"{param_name} must be str or Sequence[str]")

    if not items:
        raise ValueError(f"{param_name} cannot be empty")

    if not set(items).issubset(allowed):
        _raise_invalid_argument(param_name, value, allowed)

    if not allow_multi and len(items) != 1:
        _raise_invalid_argument(param_name, value, allowed)

    return tuple(dict.fromkeys(items))

def _prune_none(mapping: Mapping[str, object]) -> dict[str, object]:
    """Return a new dict without the None-valued keys."""
    return {k: v for k, v in mapping.items() if v is not None}

def _parse_rat_list(values: str | Iterable[str]) -> tuple[Fraction, ...]:
    """Parse ``"1,2,1/2"`` (or repeated flags) into exact rationals, order kept."""
    out: list[Fraction] = []
    for chunk in ([values] if isinstance(values, str) else values):
        for item in _string_to_tuple(chunk):
            try:
                out.append(Fraction(item))
            except (ValueError, ZeroDivisionError):
                raise ValueError(f"{item!r} is not a rational of the form p or p/q") from None
    return tuple(dict.fromkeys(out))

def _parse_int_range(value: str) -> tuple[int, ...]:
    """``"3"`` → (3,), ``"0:30"`` → 0..30 inclusive, ``"1,4,7"`` → (1, 4, 7)."""
    out: list[int] = []
    for item in _string_to_tuple(value):
        lo, sep, hi = item.partition(":")
        try:
            if sep:
                start, stop = int(lo), int(hi)
                if stop < start:
                    raise ValueError(f"empty range {item!r}")
                out.extend(range(start, stop + 1))
            else:
                out.append(int(item))
        except ValueError as exc:
            raise ValueError(f"{item!r} is not an integer or lo:hi range ({exc})") from None
    return tuple(dict.fromkeys(out))
