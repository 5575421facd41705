from __future__ import annotations

import asyncio

import pytest

from core.config import EngineConfig
from core.errors import InputError
from core.pipeline import JobSpec, LcharPipeline, ProgressEvent


def run(job: JobSpec, **config) -> tuple:
    events: list[ProgressEvent] = []
    pipeline = LcharPipeline(EngineConfig(**config), events.append)
    return asyncio.run(pipeline.run(job)), events


def test_unknown_command():
    with pytest.raises(InputError):
        JobSpec("solve", "A2")


def test_umbrella_job():
    result, events = run(JobSpec("umbrella", "A2"))
    assert result.exit_code == 0
    assert result.report["kind"] == "hypergeometric"
    assert result.summary[0] == "faces:  {} {1} {3} {1,2,3}"
    assert events[-1].status == "done"


def test_charvar_concurrency_is_deterministic():
    serial, _ = run(JobSpec("charvar", "A2"), face_concurrency=1)
    parallel, events = run(JobSpec("charvar", "A2"), face_concurrency=4)
    assert serial.report == parallel.report
    assert [c["face"] for c in parallel.report["components"]] == [[], [1], [3], [1, 2, 3]]
    assert sorted(e.step for e in events if e.label.startswith("face")) == [1, 2, 3, 4]


def test_singlocus_gkz_job():
    result, _ = run(JobSpec("singlocus", "A2", gkz=True))
    assert result.summary == ["x1*x3*(x2^2-4*x1*x3)"]
    assert result.report["route"] == "discriminants"


def test_binomial_singlocus_job():
    result, _ = run(JobSpec("singlocus", "binomial"))
    assert result.summary == ["(x1+x2)*x2"]


def test_errors_map_to_exit_codes():
    missing, events = run(JobSpec("toric", "no-such-system"))
    assert missing.exit_code == 1
    assert "InputError" in missing.error
    assert events[-1].status == "error"
    witness, _ = run(JobSpec("witness", "A2"))
    assert witness.exit_code == 1


def test_holonomic_andean_job():
    result, _ = run(JobSpec("holonomic", "andean"))
    assert result.exit_code == 0
    assert result.report["holonomic"] is False
    assert result.summary == ["holonomic: false"]


def test_log_file_written(tmp_path):
    run(JobSpec("discriminant", "A2"))
    log = (tmp_path / "log" / "lchar.log").read_text(encoding="utf-8")
    assert "discriminant" in log
