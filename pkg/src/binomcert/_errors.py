from __future__ import annotations

"""binomcert: **shared exception hierarchy** and exit-code helper.

Every sub-module (*_exact.py*, *_identities.py*, *_series.py*,
*_hypergeom.py*, *_sweep.py*) raises these classes so that callers can
handle failures uniformly:

```python
from binomcert._errors import DegenerateError, DomainError

try:
    eval_identity("thm1", params)
except DegenerateError:
    skip_cell()
except DomainError as e:
    logger.warning("bad parameter: %s", e)
```"""

from typing import Final

__all__ = [
    "BinomcertError",
    "DomainError",
    "PoleError",
    "LowerParamPole",
    "PipelinePole",
    "DegenerateError",
    "InsufficientSamples",
    "UnknownIdentity",
    "NonTerminating",
    "TruncationError",
    "CertificateError",
    "exit_code_for",
]

# ---------------------------------------------------------------------------
# Base & specialised exceptions
# ---------------------------------------------------------------------------


class BinomcertError(Exception):
    """Base for *all* binomcert exceptions."""


# ---------------------------------------------------------------------------
# Parameter domains
# ---------------------------------------------------------------------------

class DomainError(BinomcertError, ValueError):
    """Parameters outside the declared domain of an operation or identity."""


class DegenerateError(BinomcertError):
    """A closed form collapses to 0/0 (e.g. Theorem 1 at m = n = 0)."""


# ---------------------------------------------------------------------------
# Poles
# ---------------------------------------------------------------------------

class PoleError(BinomcertError):
    """Gamma function (or rising factorial in a denominator) hits a pole."""


class LowerParamPole(PoleError):
    """A lower hypergeometric parameter vanishes before the series terminates."""


class PipelinePole(PoleError):
    """A denominator of the second-proof pipeline vanishes.

    ``factor`` names the offending factor so sweeps can report it.
    """

    def __init__(self, message: str, factor: str | None = None):
        super().__init__(message)
        self.factor = factor


# ---------------------------------------------------------------------------
# Series / certification
# ---------------------------------------------------------------------------

class NonTerminating(BinomcertError):
    """No upper parameter is a nonpositive integer."""


class TruncationError(BinomcertError):
    """A coefficient was requested beyond the known order of a series."""


class InsufficientSamples(BinomcertError):
    """Too few distinct sample points for a degree-bounded certification."""


class CertificateError(BinomcertError):
    """A transcribed certificate step failed to hold exactly."""


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

class UnknownIdentity(BinomcertError, KeyError):
    """No identity with this id in the registry."""

    def __str__(self) -> str:  # KeyError quotes its message otherwise
        return str(self.args[0]) if self.args else ""


# ---------------------------------------------------------------------------
# Helper – map exception → CLI exit code
# ---------------------------------------------------------------------------

EXIT_EQUAL: Final[int] = 0
EXIT_UNEQUAL: Final[int] = 1
EXIT_ERROR: Final[int] = 2


def exit_code_for(exc: BaseException | None, *, equal: bool = True) -> int:
    """Return the process exit code for an outcome.

    ``None`` means the run finished; its verdict is then ``equal``.
    Library errors and bad arguments map to 2.
    """
    if exc is None:
        return EXIT_EQUAL if equal else EXIT_UNEQUAL
    if isinstance(exc, (BinomcertError, ValueError, TypeError, ZeroDivisionError)):
        return EXIT_ERROR
    raise exc
