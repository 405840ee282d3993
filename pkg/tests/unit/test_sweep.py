import json
from fractions import Fraction

import pandas as pd
import pytest

from binomcert._errors import CertificateError, UnknownIdentity
from binomcert._identities import REGISTRY, ParamSet, VerificationReport
from binomcert._sweep import (
    DEFAULT_SUITE,
    SweepConfig,
    SweepRunner,
    run_suite,
    summarize,
    to_json_lines,
    to_text,
)


def small_config(**kwargs):
    base = dict(identities=("thm1",), m=(0, 1, 2), n=(0, 1, 2), alphas=(Fraction(1), Fraction(2)))
    base.update(kwargs)
    return SweepConfig(**base)


def test_cells_follow_declared_axes():
    cells = small_config(r=(0, 1, 2, 3)).cells()
    assert len(cells) == 18
    assert all(params.r is None for _, params in cells)


def test_runner_statuses_and_order():
    with SweepRunner(small_config()) as runner:
        frame = runner.run()
    assert isinstance(frame, pd.DataFrame)
    assert summarize(frame) == {"pass": 16, "fail": 0, "skip": 2, "error": 0}
    skips = frame[frame["status"] == "skip"]
    assert skips["reason"].str.contains("degenerate").all()
    keys = [p.sort_key() for p in frame["params"]]
    assert keys == sorted(keys)


def test_every_registry_identity_on_a_small_grid():
    config = SweepConfig(
        identities=tuple(REGISTRY),
        m=tuple(range(1, 5)), n=tuple(range(1, 5)), r=(0, 1, 2), p=(1, 2), q=(1, 2),
        alphas=(Fraction(1), Fraction(2, 3)), xs=(Fraction(1), Fraction(5, 2)),
    )
    cells, _ = run_suite([config])
    counts = summarize(cells)
    assert counts["fail"] == 0
    assert counts["error"] == 0
    assert counts["pass"] > 0
    assert sum(counts.values()) == len(config.cells())


def test_parallel_output_is_identical():
    config = small_config(identities=("thm1", "S3", "cor5"), r=(1, 2))
    serial = to_json_lines(*run_suite([config], jobs=1))
    parallel = to_json_lines(*run_suite([config], jobs=2))
    assert serial == parallel


def test_json_lines_layout():
    cells, certs = run_suite([small_config(certificates=("routine",), r=(0,))])
    lines = [json.loads(line) for line in to_json_lines(cells, certs)]
    assert lines[-1] == {"pass": 18, "fail": 0, "skip": 2, "error": 0}
    first = lines[0]
    assert first["params"] == {"m": "0", "n": "0", "alpha": "1"}
    assert first["status"] == "skip"
    assert "lhs" not in first
    assert "micros" not in first
    cert_lines = [rec for rec in lines if "certificate" in rec]
    assert cert_lines == [
        {"certificate": "routine", "alpha": "1", "r": 0, "order": 16, "status": "pass"},
        {"certificate": "routine", "alpha": "2", "r": 0, "order": 16, "status": "pass"},
    ]


def test_timing_adds_micros():
    cells, certs = run_suite([small_config(m=(1,), n=(1,))])
    record = json.loads(to_json_lines(cells, certs, timing=True)[0])
    assert isinstance(record["micros"], int)


def test_certificates():
    config = SweepConfig(certificates=("revert", "Gr", "pde"), alphas=(Fraction(1), Fraction(1, 2)), r=(0, 1), order=6)
    with SweepRunner(config) as runner:
        certs = runner.run_certificates()
        cells = runner.run()
    assert cells.empty
    assert summarize(certs) == {"pass": 8, "fail": 0, "skip": 0, "error": 0}
    assert list(certs["certificate"]) == ["Gr"] * 4 + ["pde"] * 2 + ["revert"] * 2
    assert list(certs["alpha"][:4]) == [Fraction(1, 2), Fraction(1, 2), Fraction(1), Fraction(1)]


def test_pipeline_pole_is_a_skip():
    config = SweepConfig(identities=("thm1_hyp",), m=(1,), n=(4,), alphas=(Fraction(-2),))
    cells, _ = run_suite([config])
    row = cells.iloc[0]
    assert row["status"] == "skip"
    assert row["reason"] == "pipeline pole: (2-(1+1/alpha)n)_(n-1)"


def test_evaluator_errors_are_recorded(mocker):
    mocker.patch("binomcert._sweep.eval_identity", side_effect=CertificateError("boom"))
    cells, _ = run_suite([small_config(m=(1,), n=(1,), alphas=(Fraction(1),))])
    row = cells.iloc[0]
    assert row["status"] == "error"
    assert row["reason"] == "CertificateError: boom"


def test_unequal_report_is_a_fail(mocker):
    params = ParamSet(m=1, n=1, alpha=1)
    report = VerificationReport("thm1", params, Fraction(1), Fraction(2), False, 0.0)
    mocker.patch("binomcert._sweep.eval_identity", return_value=report)
    cells, _ = run_suite([small_config(m=(1,), n=(1,), alphas=(Fraction(1),))])
    assert summarize(cells)["fail"] == 1
    assert "fail=1" in to_text(cells)


def test_config_validation():
    with pytest.raises(UnknownIdentity):
        SweepConfig(identities=("nope",))
    with pytest.raises(ValueError):
        SweepConfig(fmt="yaml")
    with pytest.raises(ValueError):
        SweepConfig(certificates=("taylor",))
    with pytest.raises(ValueError):
        SweepConfig(jobs=0)


def test_default_suite_covers_acceptance_grids():
    ids = {identity for config in DEFAULT_SUITE for identity in config.identities}
    assert {"thm1", "kxyalpha", "telescope", "S3", "S4", "thm2", "cor4", "cor6", "thm3", "doub_xab"} <= ids
    kinds = {kind for config in DEFAULT_SUITE for kind in config.certificates}
    assert kinds == {"revert", "F", "Gr", "pde", "routine"}


def test_render_follows_config_format():
    config = small_config(m=(1,), n=(1, 2), alphas=(Fraction(1),), fmt="json", timing=True)
    with SweepRunner(config) as runner:
        cells, certs = runner.run(), runner.run_certificates()
        lines = runner.render(cells, certs)
    records = [json.loads(line) for line in lines]
    assert [rec["status"] for rec in records[:-1]] == ["pass", "pass"]
    assert all(isinstance(rec["micros"], int) for rec in records[:-1])
    assert records[-1] == {"pass": 2, "fail": 0, "skip": 0, "error": 0}


def test_render_overrides_beat_config():
    config = small_config(m=(1,), n=(1,), alphas=(Fraction(1),), fmt="json")
    with SweepRunner(config, fmt="text") as runner:
        (text,) = runner.render(runner.run(), runner.run_certificates())
    assert text.endswith("pass=1 fail=0 skip=0 error=0")
    assert "micros" not in text
    with pytest.raises(ValueError):
        SweepRunner(config, fmt="csv")
