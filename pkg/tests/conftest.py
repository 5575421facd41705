from __future__ import annotations

import random

import pytest

from core.algebra import poly as P
from core.algebra.exact import IntMatrix, PointedMatrix
from core.algebra.parsing import parse_poly
from core.algebra.weyl import ProjectiveWeight


@pytest.fixture(autouse=True)
def _log_dir(tmp_path, monkeypatch):
    # 流水线的文件日志写到临时目录
    monkeypatch.setenv("LCHAR_LOG_DIR", str(tmp_path / "log"))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)


@pytest.fixture
def a1() -> IntMatrix:
    return IntMatrix.from_rows([[1, 1, 1]])


@pytest.fixture
def a2() -> IntMatrix:
    return IntMatrix.from_rows([[1, 1, 1], [0, 1, 2]])


@pytest.fixture
def a2_pointed(a2) -> PointedMatrix:
    return PointedMatrix.of(a2)


@pytest.fixture
def middle_weight() -> ProjectiveWeight:
    """L_x = (1,0,1)，L_∂ = (0,1,0)。"""
    return ProjectiveWeight((1, 0, 1), (0, 1, 0))


@pytest.fixture
def make_ideal():
    """make_ideal(("x", "y"), "x^2 - y", ...) → PolyIdeal。"""
    def build(names: tuple[str, ...], *texts: str) -> P.PolyIdeal:
        ring = P.poly_ring(names)
        return P.PolyIdeal.of(ring, [parse_poly(t, ring) for t in texts])
    return build
