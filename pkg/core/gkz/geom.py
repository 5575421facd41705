"""精确多面体几何：L-伞 Φ(A,L)、面枚举与 pyramid 组合。

L-多面体是 conv{(1:0), (L_∂1:a_1), …, (L_∂n:a_n)}，在仿射图 {ε·y0 + h·y = 1}
中归一化后计算。所有运算在 Q 上进行，不使用浮点凸包。

面的成员内部用 0 起始的列号，序列化时再转成 1 起始。
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from loguru import logger
from sympy import Matrix, Rational

from core.algebra.exact import IntMatrix, PointedMatrix, column_rank, rational_nullspace
from core.algebra.weyl import ProjectiveWeight
from core.errors import InputError


@dataclass(frozen=True)
class Face:
    members: tuple[int, ...]
    rank: int

    @classmethod
    def of(cls, matrix: IntMatrix, members: Iterable[int]) -> "Face":
        members = tuple(sorted(set(members)))
        if any(not 0 <= i < matrix.ncols for i in members):
            raise InputError(f"face {members} indexes columns outside 0..{matrix.ncols - 1}")
        return cls(members, column_rank(matrix, members))

    @property
    def one_based(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in self.members)

    def complement(self, n: int) -> tuple[int, ...]:
        return tuple(i for i in range(n) if i not in self.members)

    def __contains__(self, i: object) -> bool:
        return i in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __str__(self) -> str:
        return "{" + ",".join(str(i) for i in self.one_based) + "}"


def face_sort_key(face: Face) -> tuple:
    return (len(face.members), face.members)


@dataclass(frozen=True)
class UmbrellaChart:
    matrix: PointedMatrix
    weight: ProjectiveWeight
    h: tuple[Rational, ...]
    epsilon: Rational

    def __post_init__(self) -> None:
        if self.epsilon <= 0:
            raise InputError("chart epsilon must be positive")
        for j in range(self.matrix.n):
            if self._denominator(j) <= 0:
                raise InputError(f"chart condition fails at column {j + 1}")

    def _denominator(self, j: int) -> Rational:
        col = self.matrix.matrix.column(j)
        return sum(Rational(a) * b for a, b in zip(col, self.h)) + self.epsilon * self.weight.ld[j]

    def points(self) -> list[tuple[Rational, ...]]:
        """归一化点：下标 0 是 (1:0)，下标 i 是第 i 列的提升。"""
        d = self.matrix.d
        out = [(1 / self.epsilon,) + (Rational(0),) * d]
        for j in range(self.matrix.n):
            scale = 1 / self._denominator(j)
            col = self.matrix.matrix.column(j)
            out.append((self.weight.ld[j] * scale,) + tuple(Rational(a) * scale for a in col))
        return out


@dataclass(frozen=True)
class Umbrella:
    chart: UmbrellaChart
    faces: tuple[Face, ...]

    @property
    def facets(self) -> tuple[Face, ...]:
        return facets(self)

    def is_facet(self, face: Face) -> bool:
        return face in self.facets


def choose_epsilon(matrix: PointedMatrix, weight: ProjectiveWeight,
                   h: Sequence[Rational] | None = None) -> Rational:
    """满足图条件的最大的 1/2 幂。"""
    h = tuple(Rational(x) for x in (h or matrix.certificate))
    eps = Rational(1)
    for _ in range(4096):
        if all(sum(Rational(a) * b for a, b in zip(col, h)) + eps * ld > 0
               for col, ld in zip(matrix.matrix.columns, weight.ld)):
            return eps
        eps /= 2
    raise InputError("no chart epsilon found; is h a pointedness certificate?")


def _affine_coordinates(points: list[tuple[Rational, ...]]) -> list[tuple[Rational, ...]]:
    """投影到仿射包的主元坐标上（投影在仿射包上是单射）。"""
    base = points[0]
    diffs = [[p[k] - base[k] for k in range(len(base))] for p in points[1:]]
    if not diffs:
        return [()]
    _, pivots = Matrix(diffs).rref()
    return [tuple(p[k] - base[k] for k in pivots) for p in points]


def _facet_sets(coords: list[tuple[Rational, ...]]) -> set[frozenset[int]]:
    r = len(coords[0])
    if r == 0:
        return set()
    found: set[frozenset[int]] = set()
    for subset in itertools.combinations(range(len(coords)), r):
        anchor = coords[subset[0]]
        rows = [[a - b for a, b in zip(coords[j], anchor)] for j in subset[1:]]
        normals = rational_nullspace(rows, r)
        if len(normals) != 1:
            continue
        normal = normals[0]
        level = sum(a * b for a, b in zip(normal, anchor))
        values = [sum(a * b for a, b in zip(normal, p)) for p in coords]
        if all(v <= level for v in values) or all(v >= level for v in values):
            found.add(frozenset(i for i, v in enumerate(values) if v == level))
    return found


def _face_lattice(facet_sets: set[frozenset[int]], everything: frozenset[int]) -> set[frozenset[int]]:
    faces = {everything, frozenset()} | set(facet_sets)
    frontier = set(facet_sets)
    while frontier:
        fresh = set()
        for f in frontier:
            for g in facet_sets:
                meet = f & g
                if meet not in faces:
                    fresh.add(meet)
        faces |= fresh
        frontier = fresh
    return faces


def l_umbrella(matrix: PointedMatrix, weight: ProjectiveWeight,
               h: Sequence[Rational] | None = None,
               epsilon: Rational | None = None) -> Umbrella:
    """Φ(A,L)：L-多面体中不含 (1:0) 的面（含 ∅ 与全部顶点）。"""
    if weight.n != matrix.n:
        raise InputError(f"weight has n={weight.n}, matrix has {matrix.n} columns")
    h = tuple(Rational(x) for x in (h if h is not None else matrix.certificate))
    if len(h) != matrix.d:
        raise InputError(f"chart vector h has length {len(h)}, expected {matrix.d}")
    eps = Rational(epsilon) if epsilon is not None else choose_epsilon(matrix, weight, h)
    chart = UmbrellaChart(matrix, weight, h, eps)

    coords = _affine_coordinates(chart.points())
    facet_sets = _facet_sets(coords)
    lattice = _face_lattice(facet_sets, frozenset(range(len(coords))))
    faces = sorted(
        (Face.of(matrix.matrix, (i - 1 for i in f)) for f in lattice if 0 not in f),
        key=face_sort_key,
    )
    logger.debug("umbrella n={} weight={} eps={} faces={}",
                 matrix.n, weight.describe(), eps, [str(f) for f in faces])
    return Umbrella(chart, tuple(faces))


def facets(umbrella: Umbrella) -> tuple[Face, ...]:
    """Φ 中秩最大的面。"""
    top = max(f.rank for f in umbrella.faces)
    return tuple(f for f in umbrella.faces if f.rank == top and (top > 0 or not f.members))


def _as_members(face: Face | Iterable[int]) -> tuple[int, ...]:
    return face.members if isinstance(face, Face) else tuple(sorted(set(face)))


def rank_critical(face: Face | Iterable[int], matrix: IntMatrix) -> tuple[int, ...]:
    members = _as_members(face)
    full = column_rank(matrix, members)
    return tuple(i for i in members
                 if column_rank(matrix, [j for j in members if j != i]) < full)


def is_pyramid(face: Face | Iterable[int], matrix: IntMatrix) -> bool:
    return bool(rank_critical(face, matrix))


def pyramid_core(face: Face | Iterable[int], matrix: IntMatrix,
                 order: Sequence[int] | None = None) -> Face:
    """反复删去秩关键列，得到唯一的非 pyramid 子面。order 只影响删除次序。"""
    members = list(_as_members(face))
    while True:
        critical = rank_critical(members, matrix)
        if not critical:
            return Face.of(matrix, members)
        if order is not None:
            pick = next(i for i in order if i in critical)
        else:
            pick = critical[0]
        members.remove(pick)
