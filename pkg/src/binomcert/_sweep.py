from __future__ import annotations

import itertools
import json
import logging
import time
from concurrent.futures import Executor, ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from fractions import Fraction
from typing import Final, Iterable, Sequence

import pandas as pd

from ._errors import BinomcertError, PipelinePole
from ._exact import Rat, binomial_gen, rat_str
from ._identities import DEFAULT_ALPHAS, ParamSet, eval_identity, get_identity, rhs_theorem1
from ._series import (
    DEFAULT_ORDER,
    F_closed_form,
    G_r_check,
    pde_check,
    remark_coefficients,
    reversion_residual_check,
    routine_identity_check,
)
from ._util import _validate_enum

__all__ = [
    "SweepConfig",
    "SweepRunner",
    "DEFAULT_SUITE",
    "DEFAULT_XS",
    "CERTIFICATE_KINDS",
    "OUTPUT_FORMATS",
    "STATUSES",
    "run_suite",
    "summarize",
    "to_json_lines",
    "to_text",
]

logger = logging.getLogger(__name__)

# ---------------------------------------------------------------------------
# Defaults
# ---------------------------------------------------------------------------

DEFAULT_XS: Final[tuple[Fraction, ...]] = (Fraction(0), Fraction(1), Fraction(2), Fraction(5, 2), Fraction(7))
CERTIFICATE_KINDS: Final[frozenset[str]] = frozenset({"revert", "F", "Gr", "pde", "routine"})
OUTPUT_FORMATS: Final[frozenset[str]] = frozenset({"text", "json"})
STATUSES: Final[tuple[str, ...]] = ("pass", "fail", "skip", "error")
PARAM_COLUMNS: Final[tuple[str, ...]] = ("m", "n", "r", "p", "q", "alpha", "x")
BATCH_SIZE: Final[int] = 64
CELL_COLUMNS: Final[tuple[str, ...]] = ("identity", *PARAM_COLUMNS, "lhs", "rhs", "status", "reason", "micros", "params")
CERTIFICATE_COLUMNS: Final[tuple[str, ...]] = ("certificate", "alpha", "r", "order", "status", "reason", "micros")


def _span(lo: int, hi: int) -> tuple[int, ...]:
    return tuple(range(lo, hi + 1))


@dataclass(frozen=True)
class SweepConfig:
    """One Cartesian sweep.

    Each identity is swept over the axes it declares (see
    ``IdentityDescriptor.params``); the other axes are ignored for it.
    ``certificates`` adds series certificates, one per alpha (and per r for
    ``Gr``/``routine``), run at ``order``.
    """

    identities: tuple[str, ...] = ()
    m: tuple[int, ...] = _span(0, 10)
    n: tuple[int, ...] = _span(0, 10)
    r: tuple[int, ...] = _span(0, 2)
    p: tuple[int, ...] = _span(1, 2)
    q: tuple[int, ...] = _span(1, 2)
    alphas: tuple[Rat, ...] = DEFAULT_ALPHAS
    xs: tuple[Rat, ...] = DEFAULT_XS
    order: int = DEFAULT_ORDER
    jobs: int = 1
    fmt: str = "text"
    timing: bool = False
    certificates: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        for identity_id in self.identities:
            get_identity(identity_id)
        if self.certificates:
            _validate_enum("certificates", self.certificates, set(CERTIFICATE_KINDS))
        _validate_enum("fmt", self.fmt, set(OUTPUT_FORMATS), allow_multi=False)
        if self.jobs < 1:
            raise ValueError(f"jobs must be >= 1, got {self.jobs}")

    def cells(self) -> list[tuple[str, ParamSet]]:
        """Every (identity, ParamSet) of the grid, unsorted."""
        axes = {
            "m": self.m, "n": self.n, "r": self.r, "p": self.p, "q": self.q,
            "alpha": self.alphas, "x": self.xs,
        }
        out: list[tuple[str, ParamSet]] = []
        for identity_id in self.identities:
            names = get_identity(identity_id).params
            for values in itertools.product(*(axes[name] for name in names)):
                out.append((identity_id, ParamSet(**dict(zip(names, values)))))
        return out

    def certificate_tasks(self) -> list[tuple[str, Rat, int | None, int]]:
        tasks: list[tuple[str, Rat, int | None, int]] = []
        for kind in self.certificates:
            rs: Sequence[int | None] = self.r if kind in ("Gr", "routine") else (None,)
            for alpha in self.alphas:
                for r in rs:
                    tasks.append((kind, alpha, r, self.order))
        return tasks


_CORE: Final[tuple[str, ...]] = (
    "cor1", "cor1_exchanged", "cor1_full_range", "cor1_negative_range", "cor1_reflected",
    "cor1_pochhammer", "pqrsum", "pm_r_1", "pm_r_2", "pm_r_3", "cor4",
)

DEFAULT_SUITE: Final[tuple[SweepConfig, ...]] = (
    SweepConfig(("thm1", "kxyalpha"), m=_span(0, 30), n=_span(0, 30)),
    SweepConfig(("telescope",), m=_span(1, 25), n=_span(1, 25)),
    SweepConfig(("thm1_hyp",), m=_span(1, 12), n=_span(1, 12)),
    SweepConfig(("S3",), m=_span(1, 40), n=_span(1, 40)),
    SweepConfig(("S4",), m=_span(2, 40), n=_span(2, 40)),
    SweepConfig(("thm2",), m=_span(0, 20), n=_span(0, 20), r=_span(0, 5)),
    SweepConfig(_CORE, p=_span(1, 4), q=_span(1, 4), m=_span(1, 10), n=_span(1, 10), r=_span(1, 4)),
    SweepConfig(
        ("cor2", "cor5", "cor6", "r2_pq1", "r1_pq1", "r1_mn"),
        m=_span(1, 10), n=_span(1, 10), r=_span(1, 4), xs=(Fraction(1), Fraction(2), Fraction(5, 2), Fraction(7)),
    ),
    SweepConfig(("cor3",), m=_span(1, 15), n=_span(1, 15)),
    SweepConfig(("thm3", "doub_xab"), m=_span(1, 10), n=_span(1, 10), xs=(Fraction(0), Fraction(1), Fraction(5, 2))),
    SweepConfig(certificates=("revert",), order=16),
    SweepConfig(certificates=("F",), order=12),
    SweepConfig(certificates=("Gr", "pde"), order=8, r=_span(0, 3)),
    SweepConfig(certificates=("routine",), r=_span(0, 4)),
)


# ---------------------------------------------------------------------------
# Workers (top level so a process pool can pickle them)
# ---------------------------------------------------------------------------

def _run_cell(identity_id: str, params: ParamSet) -> dict[str, object]:
    record: dict[str, object] = {"identity": identity_id, "params": params, "lhs": None, "rhs": None,
                                 "status": "error", "reason": None, "micros": None}
    reason = get_identity(identity_id).check_domain(params)
    if reason:
        record.update(status="skip", reason=reason)
        return record
    try:
        report = eval_identity(identity_id, params)
    except PipelinePole as exc:
        record.update(status="skip", reason=f"pipeline pole: {exc.factor}")
    except (BinomcertError, ZeroDivisionError) as exc:
        logger.debug("%s at %s raised %r", identity_id, params, exc)
        record.update(reason=f"{type(exc).__name__}: {exc}")
    else:
        record.update(
            lhs=report.lhs_value, rhs=report.rhs_value,
            status="pass" if report.equal else "fail", micros=report.micros,
        )
    return record


def _run_cells(cells: Sequence[tuple[str, ParamSet]]) -> list[dict[str, object]]:
    return [_run_cell(identity_id, params) for identity_id, params in cells]


def _f_certificate(alpha: Rat, order: int) -> bool:
    direct = F_closed_form(alpha, order, "direct")
    if F_closed_form(alpha, order, "geometric") != direct:
        return False
    for m in range(order + 1):
        for n in range(order + 1):
            expected = rhs_theorem1(m, n, alpha) if m * n else Fraction(0)
            if direct.coefficient(m, n) != expected:
                return False
    return True


def _revert_certificate(alpha: Rat, order: int) -> bool:
    if not reversion_residual_check(alpha, order):
        return False
    expected = [binomial_gen((1 + alpha) * m, m) for m in range(order + 1)]
    return remark_coefficients(alpha, order) == expected


def _run_certificate(kind: str, alpha: Rat, r: int | None, order: int) -> dict[str, object]:
    record: dict[str, object] = {"certificate": kind, "alpha": alpha, "r": r, "order": order,
                                 "status": "error", "reason": None, "micros": None}
    start = time.perf_counter()
    try:
        if kind == "revert":
            passed = _revert_certificate(alpha, order)
        elif kind == "F":
            passed = _f_certificate(alpha, order)
        elif kind == "Gr":
            passed = G_r_check(alpha, r, order)
        elif kind == "pde":
            passed = pde_check(alpha, order)
        else:
            passed = routine_identity_check(alpha, r)
    except (BinomcertError, ZeroDivisionError) as exc:
        record["reason"] = f"{type(exc).__name__}: {exc}"
        return record
    record.update(status="pass" if passed else "fail", micros=int(round((time.perf_counter() - start) * 1e6)))
    return record


def _batched(items: Sequence, size: int) -> Iterable[Sequence]:
    for i in range(0, len(items), size):
        yield items[i:i + size]


# ---------------------------------------------------------------------------
# Runner
# ---------------------------------------------------------------------------

class SweepRunner:
    """Run one or more :class:`SweepConfig` in-process or over a process pool.

    Use as a context manager so the pool is shut down::

        with SweepRunner(config) as runner:
            frame = runner.run()

    ``jobs``, ``fmt`` and ``timing`` default to the first config's values.
    """

    def __init__(
            self,
            configs: SweepConfig | Sequence[SweepConfig],
            *,
            jobs: int | None = None,
            fmt: str | None = None,
            timing: bool | None = None,
    ):
        self.configs: tuple[SweepConfig, ...] = (configs,) if isinstance(configs, SweepConfig) else tuple(configs)
        first = self.configs[0] if self.configs else SweepConfig()
        self.jobs = jobs if jobs is not None else first.jobs
        if self.jobs < 1:
            raise ValueError(f"jobs must be >= 1, got {self.jobs}")
        fmt = fmt if fmt is not None else first.fmt
        (self.fmt,) = _validate_enum("fmt", fmt, set(OUTPUT_FORMATS), allow_multi=False)
        self.timing = timing if timing is not None else first.timing
        self._pool: Executor | None = None

    def __enter__(self) -> SweepRunner:
        if self.jobs > 1:
            self._pool = ProcessPoolExecutor(max_workers=self.jobs)
        return self

    def __exit__(self, exc_type, exc, tb) -> None:
        if self._pool is not None:
            self._pool.shutdown()
            self._pool = None

    # -------------------------------------------------------------------------
    # Helper Methods
    # -------------------------------------------------------------------------

    def _gather_cells(self, cells: list[tuple[str, ParamSet]]) -> list[dict[str, object]]:
        if self._pool is None:
            return _run_cells(cells)
        futures = [self._pool.submit(_run_cells, batch) for batch in _batched(cells, BATCH_SIZE)]
        return [record for future in as_completed(futures) for record in future.result()]

    def _gather_certificates(self, tasks: list[tuple[str, Rat, int | None, int]]) -> list[dict[str, object]]:
        if self._pool is None:
            return [_run_certificate(*task) for task in tasks]
        futures = [self._pool.submit(_run_certificate, *task) for task in tasks]
        return [future.result() for future in as_completed(futures)]

    # -------------------------------------------------------------------------
    # Public API
    # -------------------------------------------------------------------------

    def run(self) -> pd.DataFrame:
        """One row per identity cell, sorted by (identity, m, n, r, p, q, alpha, x)."""
        cells = [cell for config in self.configs for cell in config.cells()]
        if cells:
            logger.info("sweeping %d cells (jobs=%d)", len(cells), self.jobs)
        records = self._gather_cells(cells)
        records.sort(key=lambda rec: (rec["identity"], rec["params"].sort_key()))  # type: ignore[union-attr]
        frame = _cells_frame(records)
        if cells:
            logger.info("sweep finished: %s", summarize(frame))
        return frame

    def run_certificates(self) -> pd.DataFrame:
        """One row per series certificate, sorted by (certificate, alpha, r, order)."""
        tasks = [task for config in self.configs for task in config.certificate_tasks()]
        if tasks:
            logger.info("running %d series certificates (jobs=%d)", len(tasks), self.jobs)
        records = self._gather_certificates(tasks)
        records.sort(key=lambda rec: (rec["certificate"], rec["alpha"],
                                      -1 if rec["r"] is None else rec["r"], rec["order"]))
        return pd.DataFrame(records, columns=list(CERTIFICATE_COLUMNS), dtype=object)

    def render(self, cells: pd.DataFrame, certs: pd.DataFrame | None = None) -> list[str]:
        """Output lines in ``self.fmt``, with per-record micros when ``self.timing``."""
        if self.fmt == "json":
            return to_json_lines(cells, certs, timing=self.timing)
        return [to_text(cells, certs, timing=self.timing)]


def _cells_frame(records: list[dict[str, object]]) -> pd.DataFrame:
    rows = []
    for rec in records:
        params: ParamSet = rec["params"]  # type: ignore[assignment]
        row = {"identity": rec["identity"], **{name: getattr(params, name) for name in PARAM_COLUMNS}}
        row.update({k: rec[k] for k in ("lhs", "rhs", "status", "reason", "micros")})
        row["params"] = params
        rows.append(row)
    return pd.DataFrame(rows, columns=list(CELL_COLUMNS), dtype=object)


def run_suite(configs: Sequence[SweepConfig], *, jobs: int = 1) -> tuple[pd.DataFrame, pd.DataFrame]:
    """Run several configs over one pool; returns (cells, certificates)."""
    with SweepRunner(configs, jobs=jobs) as runner:
        return runner.run(), runner.run_certificates()


# ---------------------------------------------------------------------------
# Reporting
# ---------------------------------------------------------------------------

def summarize(*frames: pd.DataFrame) -> dict[str, int]:
    """Counts of pass / fail / skip / error over all rows of *frames*."""
    counts = dict.fromkeys(STATUSES, 0)
    for frame in frames:
        for status, count in frame["status"].value_counts().items():
            counts[str(status)] += int(count)
    return counts


def _cell_json(row: pd.Series, timing: bool) -> dict[str, object]:
    params: ParamSet = row["params"]
    record: dict[str, object] = {"identity": row["identity"], "params": params.to_json()}
    if row["status"] in ("pass", "fail"):
        record.update(lhs=rat_str(row["lhs"]), rhs=rat_str(row["rhs"]), equal=row["status"] == "pass")
    record["status"] = row["status"]
    if row["reason"] is not None:
        record["reason"] = row["reason"]
    if timing and row["micros"] is not None:
        record["micros"] = row["micros"]
    return record


def _certificate_json(row: pd.Series, timing: bool) -> dict[str, object]:
    record: dict[str, object] = {"certificate": row["certificate"], "alpha": rat_str(row["alpha"])}
    if row["r"] is not None:
        record["r"] = row["r"]
    record.update(order=row["order"], status=row["status"])
    if row["reason"] is not None:
        record["reason"] = row["reason"]
    if timing and row["micros"] is not None:
        record["micros"] = row["micros"]
    return record


def to_json_lines(cells: pd.DataFrame, certs: pd.DataFrame | None = None, *, timing: bool = False) -> list[str]:
    """JSON lines: one per cell, one per certificate, then the summary."""
    certs = certs if certs is not None else pd.DataFrame(columns=list(CERTIFICATE_COLUMNS))
    lines = [json.dumps(_cell_json(row, timing)) for _, row in cells.iterrows()]
    lines += [json.dumps(_certificate_json(row, timing)) for _, row in certs.iterrows()]
    lines.append(json.dumps(summarize(cells, certs)))
    return lines


def to_text(cells: pd.DataFrame, certs: pd.DataFrame | None = None, *, timing: bool = False) -> str:
    certs = certs if certs is not None else pd.DataFrame(columns=list(CERTIFICATE_COLUMNS))
    blocks = []
    if not cells.empty:
        view = pd.DataFrame({
            "identity": cells["identity"],
            "params": cells["params"].map(str),
            "lhs": cells["lhs"].map(lambda v: "" if v is None else rat_str(v)),
            "rhs": cells["rhs"].map(lambda v: "" if v is None else rat_str(v)),
            "status": cells["status"],
            "reason": cells["reason"].map(lambda v: v or ""),
        })
        if timing:
            view["micros"] = cells["micros"]
        blocks.append(view.to_string(index=False))
    if not certs.empty:
        view = certs.drop(columns=[] if timing else ["micros"]).copy()
        view["alpha"] = view["alpha"].map(rat_str)
        view = view.fillna("")
        blocks.append(view.to_string(index=False))
    counts = summarize(cells, certs)
    blocks.append(" ".join(f"{k}={v}" for k, v in counts.items()))
    return "\n\n".join(blocks)

