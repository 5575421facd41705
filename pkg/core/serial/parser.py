"""系统描述文件解析：JSON 文件或内置 fixture → SystemSpec。

文件格式（所有数字都可以写成字符串，有理数写成 "p/q"）：
    {
      "A":       [["1","1","1"],["0","1","2"]],   # 必填（纯 Weyl 系统除外）
      "beta":    ["1/2","1/3"],
      "L_x":     ["0","0","0"],  "L_d": ["1","1","1"],
      "breve_A": [[...],[...]],                    # 截断系统
      "ideal":   ["d1^2 - d1*d2"],                 # 二项式 D-模
      "n": 2, "weyl": ["x1"], "theta": false       # 任意 Weyl 理想
    }
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Sequence

from loguru import logger
from sympy import Rational

from core.algebra.exact import IntMatrix, PointedMatrix
from core.algebra.parsing import parse_poly
from core.algebra.weyl import ProjectiveWeight, WeylIdeal, parse_weyl
from core.config import parse_rational
from core.errors import InputError
from core.fixtures import FIXTURES, fixture
from core.gkz.binom import BinomialModuleSpec
from core.gkz.hyper import HypergeometricSystem, TruncatedSystem, d_ring, toric_ideal

_KNOWN_KEYS = {"A", "beta", "L_x", "L_d", "breve_A", "ideal", "n", "weyl", "theta", "description"}


@dataclass(frozen=True)
class SystemSpec:
    source: str
    matrix: IntMatrix | None = None
    beta: tuple[Rational, ...] | None = None
    weight: ProjectiveWeight | None = None
    breve: IntMatrix | None = None
    ideal: tuple[str, ...] | None = None
    weyl: tuple[str, ...] | None = None
    n: int | None = None
    theta: bool = False

    @property
    def kind(self) -> str:
        """weyl | binomial | truncated | hypergeometric。"""
        if self.weyl is not None:
            return "weyl"
        if self.ideal is not None:
            return "binomial"
        if self.breve is not None:
            return "truncated"
        return "hypergeometric"

    @property
    def variables(self) -> int:
        if self.kind == "weyl":
            return self.n
        return self.matrix.ncols

    def with_overrides(self, beta: Sequence[Rational] | None = None,
                       weight: ProjectiveWeight | None = None,
                       theta: bool | None = None) -> "SystemSpec":
        spec = self
        if beta is not None:
            spec = replace(spec, beta=tuple(beta))
        if weight is not None:
            spec = replace(spec, weight=weight)
        if theta:
            spec = replace(spec, theta=True)
        return spec

    # --- 组装 ---------------------------------------------------------------

    def require_matrix(self) -> IntMatrix:
        if self.matrix is None:
            raise InputError(f"{self.source}: this command needs a matrix 'A'")
        return self.matrix

    def pointed(self) -> PointedMatrix:
        return PointedMatrix.of(self.require_matrix())

    def require_beta(self) -> tuple[Rational, ...]:
        if self.beta is None:
            raise InputError(f"{self.source}: this command needs 'beta' (or --beta)")
        return self.beta

    def weight_or_order(self) -> ProjectiveWeight:
        return self.weight or ProjectiveWeight.order_filtration(self.variables)

    def hypergeometric(self) -> HypergeometricSystem:
        return HypergeometricSystem(self.pointed(), self.require_beta())

    def truncated(self) -> TruncatedSystem:
        if self.breve is None:
            raise InputError(f"{self.source}: this command needs 'breve_A'")
        matrix = self.require_matrix()
        if self.breve.rows[: matrix.nrows] != matrix.rows:
            raise InputError(f"{self.source}: the first rows of breve_A must equal A")
        return TruncatedSystem.of(self.breve, matrix.nrows, self.require_beta())

    def binomial(self) -> BinomialModuleSpec:
        """二项式 D-模；截断系统按 I = I_Ă 处理。"""
        matrix = self.require_matrix()
        if self.ideal is not None:
            gens: list = list(self.ideal)
        elif self.breve is not None:
            gens = list(toric_ideal(self.breve).gens)
        else:
            gens = list(toric_ideal(matrix).gens)
        return BinomialModuleSpec.of(matrix, gens, self.require_beta())

    def weyl_ideal(self) -> WeylIdeal:
        if self.kind == "weyl":
            return WeylIdeal.of(self.n, [parse_weyl(t, self.n, self.theta) for t in self.weyl])
        if self.kind == "hypergeometric":
            return self.hypergeometric().ideal
        if self.kind == "truncated":
            return self.truncated().ideal
        return self.binomial().weyl_ideal


def _matrix(value, key: str, source: str) -> IntMatrix:
    if not isinstance(value, list) or not value or not all(isinstance(r, list) for r in value):
        raise InputError(f"{source}: '{key}' must be a nonempty array of arrays")
    try:
        return IntMatrix.from_rows(value)
    except InputError as e:
        raise InputError(f"{source}: '{key}': {e}") from e


def _vector(value, key: str, source: str) -> tuple[Rational, ...]:
    if not isinstance(value, list):
        raise InputError(f"{source}: '{key}' must be an array")
    try:
        return tuple(parse_rational(v) for v in value)
    except InputError as e:
        raise InputError(f"{source}: '{key}': {e}") from e


def _strings(value, key: str, source: str) -> tuple[str, ...]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise InputError(f"{source}: '{key}' must be an array of strings")
    return tuple(value)


def parse_system(data: dict, source: str = "<input>") -> SystemSpec:
    if not isinstance(data, dict):
        raise InputError(f"{source}: top level must be an object")
    unknown = set(data) - _KNOWN_KEYS
    if unknown:
        raise InputError(f"{source}: unknown keys {sorted(unknown)}")

    matrix = _matrix(data["A"], "A", source) if "A" in data else None
    beta = _vector(data["beta"], "beta", source) if "beta" in data else None
    breve = _matrix(data["breve_A"], "breve_A", source) if "breve_A" in data else None
    ideal = _strings(data["ideal"], "ideal", source) if "ideal" in data else None
    weyl = _strings(data["weyl"], "weyl", source) if "weyl" in data else None
    theta = bool(data.get("theta", False))

    n = data.get("n")
    if weyl is not None:
        if not isinstance(n, int) or n < 1:
            raise InputError(f"{source}: a Weyl system needs a positive integer 'n'")
    elif matrix is None:
        raise InputError(f"{source}: missing 'A'")
    else:
        n = matrix.ncols

    weight = None
    if ("L_x" in data) != ("L_d" in data):
        raise InputError(f"{source}: give both 'L_x' and 'L_d'")
    if "L_x" in data:
        weight = ProjectiveWeight(_vector(data["L_x"], "L_x", source), _vector(data["L_d"], "L_d", source))
        if weight.n != n:
            raise InputError(f"{source}: weight has {weight.n} entries, expected {n}")

    if beta is not None and matrix is not None and len(beta) != matrix.nrows:
        raise InputError(f"{source}: 'beta' has {len(beta)} entries, 'A' has {matrix.nrows} rows")
    if breve is not None and matrix is not None and breve.ncols != matrix.ncols:
        raise InputError(f"{source}: 'breve_A' and 'A' have different column counts")
    if ideal is not None and matrix is not None:
        ring = d_ring(matrix.ncols)
        for text in ideal:
            parse_poly(text, ring)

    return SystemSpec(source, matrix, beta, weight, breve, ideal, weyl, n, theta)


def load_system(path_or_name: str | Path) -> SystemSpec:
    """读入 JSON 系统文件；路径不存在但是 fixture 名时使用内置 fixture。"""
    path = Path(path_or_name)
    if path.is_file():
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise InputError(f"{path}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from e
        logger.debug("load    file={}", path)
        return parse_system(data, str(path))
    name = str(path_or_name)
    if name in FIXTURES:
        logger.debug("load    fixture={}", name)
        return parse_system(fixture(name), f"fixture:{name}")
    raise InputError(f"no such file or fixture: {name}")
