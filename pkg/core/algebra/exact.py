"""精确整数 / 有理线性代数。

- IntMatrix：不可变整数矩阵（Python int，任意精度）
- smith_normal_form / lattice_kernel / spans_lattice：基于 sympy 的 Smith 标准形
- is_pointed：Fourier–Motzkin 消元判定 pointed，返回证书或不可行证明
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from loguru import logger
from sympy import QQ, Matrix, Rational, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import smith_normal_decomp

from core.errors import InputError


@dataclass(frozen=True)
class IntMatrix:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not self.rows or not self.rows[0]:
            raise InputError("matrix dimensions must be positive")
        width = len(self.rows[0])
        if any(len(r) != width for r in self.rows):
            raise InputError("matrix rows have different lengths")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int | str]]) -> "IntMatrix":
        try:
            parsed = tuple(tuple(int(str(e).strip()) for e in row) for row in rows)
        except ValueError as e:
            raise InputError(f"matrix entries must be integers: {e}") from e
        return cls(parsed)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    @property
    def columns(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.column(j) for j in range(self.ncols))

    def submatrix(self, cols: Sequence[int]) -> "IntMatrix":
        """按列选取子矩阵（列顺序保持给定顺序）。"""
        return IntMatrix(tuple(tuple(r[j] for j in cols) for r in self.rows))

    def top_rows(self, k: int) -> "IntMatrix":
        return IntMatrix(self.rows[:k])

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.rows)))

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(a * b for a, b in zip(r, vec)) for r in self.rows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        cols = other.columns
        return IntMatrix(tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows))

    def to_sympy(self) -> Matrix:
        return Matrix(self.rows)

    def to_json(self) -> list[list[str]]:
        return [[str(e) for e in r] for r in self.rows]


@dataclass(frozen=True)
class Lattice:
    ambient: int
    basis: tuple[tuple[int, ...], ...] = ()

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, vec: Sequence[int]) -> bool:
        """vec 是否属于基向量张成的 Z-模。"""
        if not any(vec):
            return True
        if not self.basis:
            return False
        # 解 B^T y = vec，要求 y 整数；B 行满秩，借助 Smith 形式判定
        bt = IntMatrix(self.basis).transpose()
        u, s, _ = smith_normal_form(bt)
        rhs = u.apply(vec)
        for i, value in enumerate(rhs):
            diag = s.rows[i][i] if i < s.ncols else 0
            if diag == 0:
                if value != 0:
                    return False
                continue
            if value % diag:
                return False
        return True


@dataclass(frozen=True)
class PointednessRefusal:
    """不可行证明：非负乘子 y 满足 Σ y_i a_i = 0 且 Σ y_i > 0。"""
    multipliers: tuple[Rational, ...]


@dataclass(frozen=True)
class PointedMatrix:
    """带 pointed 证书 h 的矩阵；spans 记录列是否生成 Z^d。"""
    matrix: IntMatrix
    certificate: tuple[Rational, ...]
    spans: bool

    @classmethod
    def of(cls, m: IntMatrix) -> "PointedMatrix":
        result = is_pointed(m)
        if isinstance(result, PointednessRefusal):
            raise InputError(
                "matrix is not pointed: nonnegative combination "
                f"{[str(x) for x in result.multipliers]} of the columns vanishes"
            )
        return cls(m, result, spans_lattice(m))

    @property
    def d(self) -> int:
        return self.matrix.nrows

    @property
    def n(self) -> int:
        return self.matrix.ncols


# ---------------------------------------------------------------------------
# Smith 标准形与格
# ---------------------------------------------------------------------------

def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """返回 (U, S, V)，满足 U·M·V = S，U、V 幺模，S 对角且满足整除链。"""
    dm = DomainMatrix([[ZZ(e) for e in r] for r in m.rows], (m.nrows, m.ncols), ZZ)
    smf, s, t = smith_normal_decomp(dm)
    u = _to_int_rows(s.to_list())
    v = _to_int_rows(t.to_list())
    d = _to_int_rows(smf.to_list())
    # 对角元统一为非负（翻转 U 的对应行）
    for i in range(min(m.nrows, m.ncols)):
        if d[i][i] < 0:
            d[i][i] = -d[i][i]
            u[i] = [-e for e in u[i]]
    return (
        IntMatrix(tuple(map(tuple, u))),
        IntMatrix(tuple(map(tuple, d))),
        IntMatrix(tuple(map(tuple, v))),
    )


def _to_int_rows(rows: list[list]) -> list[list[int]]:
    return [[int(e) for e in r] for r in rows]


def invariant_factors(m: IntMatrix) -> tuple[int, ...]:
    _, s, _ = smith_normal_form(m)
    return tuple(s.rows[i][i] for i in range(min(m.nrows, m.ncols)))


def lattice_kernel(m: IntMatrix) -> Lattice:
    """{z ∈ Z^cols : M·z = 0} 的一组基（由 Smith 形式得到，天然饱和）。"""
    _, s, v = smith_normal_form(m)
    zero_cols = [j for j in range(m.ncols) if all(s.rows[i][j] == 0 for i in range(m.nrows))]
    basis = [_sign_normalize(v.column(j)) for j in zero_cols]
    basis.sort()
    return Lattice(m.ncols, tuple(basis))


def _sign_normalize(vec: Sequence[int]) -> tuple[int, ...]:
    for e in vec:
        if e:
            return tuple(vec) if e > 0 else tuple(-x for x in vec)
    return tuple(vec)


def spans_lattice(m: IntMatrix) -> bool:
    """列向量是否生成整个 Z^rows。"""
    invs = invariant_factors(m)
    return len(invs) == m.nrows and all(f == 1 for f in invs)


def saturate_lattice(lat: Lattice) -> Lattice:
    """Sat(L) = Q·L ∩ Z^ambient。"""
    if lat.rank == 0:
        return lat
    orth = lattice_kernel(IntMatrix(lat.basis))
    if orth.rank == 0:
        return Lattice(lat.ambient, IntMatrix.identity(lat.ambient).rows)
    return lattice_kernel(IntMatrix(orth.basis))


def lattice_from_generators(ambient: int, gens: Iterable[Sequence[int]]) -> Lattice:
    """由任意生成元得到格的一组基（Smith 形式去掉零行）。"""
    rows = [tuple(g) for g in gens if any(g)]
    if not rows:
        return Lattice(ambient)
    u, s, v = smith_normal_form(IntMatrix(tuple(rows)))
    # 行格 = (S·V^{-1}) 的非零行
    vinv = Matrix(v.rows).inv()
    basis = []
    for i in range(min(s.nrows, s.ncols)):
        diag = s.rows[i][i]
        if diag:
            basis.append(_sign_normalize(tuple(int(diag * e) for e in vinv.row(i))))
    return Lattice(ambient, tuple(sorted(basis)))


def is_saturated(lat: Lattice) -> bool:
    sat = saturate_lattice(lat)
    return sat.rank == lat.rank and all(lat.contains(b) for b in sat.basis)


# ---------------------------------------------------------------------------
# 有理线性代数
# ---------------------------------------------------------------------------

def rational_rank(rows: Sequence[Sequence]) -> int:
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return 0
    return Matrix(rows).rank()


def column_rank(m: IntMatrix, cols: Iterable[int]) -> int:
    cols = list(cols)
    if not cols:
        return 0
    return m.submatrix(cols).to_sympy().rank()


def rational_nullspace(rows: Sequence[Sequence], width: int) -> list[tuple[Rational, ...]]:
    """{y : rows·y = 0} 的有理基。"""
    if not rows:
        return [tuple(Rational(int(i == j)) for j in range(width)) for i in range(width)]
    return [tuple(vec) for vec in Matrix([list(r) for r in rows]).nullspace()]


def in_affine_span(point: Sequence, offset: Sequence, directions: Sequence[Sequence]) -> bool:
    """point ∈ offset + span(directions)。"""
    diff = [Rational(p) - Rational(o) for p, o in zip(point, offset)]
    if not directions:
        return all(x == 0 for x in diff)
    base = Matrix([list(d) for d in directions]).T
    return base.rank() == base.row_join(Matrix(diff)).rank()


def to_qq(r: Rational):
    """sympy Rational → QQ 域元素。"""
    r = Rational(r)
    return QQ(int(r.p), int(r.q))


def common_denominator(values: Iterable[Rational]) -> int:
    return math.lcm(*(int(Rational(v).q) for v in values))


# ---------------------------------------------------------------------------
# Fourier–Motzkin
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Row:
    coeffs: tuple[Rational, ...]   # coeffs·h ≥ rhs
    rhs: Rational
    mult: tuple[Rational, ...]     # 原始约束 a_i·h ≥ 1 的非负组合系数


def is_pointed(m: IntMatrix) -> tuple[Rational, ...] | PointednessRefusal:
    """寻找 h 使 h·a_i > 0 对所有列成立。

    齐次严格不等式组可行 ⇔ h·a_i ≥ 1 可行；按最后一个变量到第一个的顺序消元，
    再逐个回代。不可行时返回导出矛盾的非负乘子。
    """
    d, n = m.nrows, m.ncols
    system = [
        _Row(tuple(Rational(e) for e in m.column(j)), Rational(1),
             tuple(Rational(int(i == j)) for i in range(n)))
        for j in range(n)
    ]
    stages: list[list[_Row]] = [[] for _ in range(d)]
    for k in reversed(range(d)):
        stages[k] = system
        system = _eliminate(system, k)
        logger.debug("fm      var={} rows={}", k, len(system))

    for row in system:
        if row.rhs > 0:
            total = sum(row.mult)
            return PointednessRefusal(tuple(x / total for x in row.mult))

    h: list[Rational] = []
    for k in range(d):
        lower, upper = None, None
        for row in stages[k]:
            c = row.coeffs[k]
            rest = row.rhs - sum(row.coeffs[j] * h[j] for j in range(k))
            if c > 0:
                bound = rest / c
                lower = bound if lower is None else max(lower, bound)
            elif c < 0:
                bound = rest / c
                upper = bound if upper is None else min(upper, bound)
            elif rest > 0:
                # 回代不应出现矛盾，出现即说明消元有误
                raise AssertionError("inconsistent back substitution")
        h.append(_pick_value(lower, upper))

    cert = tuple(h)
    assert all(sum(a * b for a, b in zip(cert, col)) > 0 for col in m.columns)
    return cert


def _eliminate(rows: list[_Row], k: int) -> list[_Row]:
    pos = [r for r in rows if r.coeffs[k] > 0]
    neg = [r for r in rows if r.coeffs[k] < 0]
    out = [r for r in rows if r.coeffs[k] == 0]
    for p in pos:
        for q in neg:
            sp, sq = 1 / p.coeffs[k], -1 / q.coeffs[k]
            out.append(_Row(
                tuple(sp * a + sq * b for a, b in zip(p.coeffs, q.coeffs)),
                sp * p.rhs + sq * q.rhs,
                tuple(sp * a + sq * b for a, b in zip(p.mult, q.mult)),
            ))
    # 去重：系数与右端相同的约束只保留一个
    seen: dict[tuple, _Row] = {}
    for r in out:
        seen.setdefault((r.coeffs, r.rhs), r)
    return list(seen.values())


def _pick_value(lower: Rational | None, upper: Rational | None) -> Rational:
    """在 [lower, upper] 中取绝对值最小的整数，没有整数时取下界。"""
    if (lower is None or lower <= 0) and (upper is None or upper >= 0):
        return Rational(0)
    if upper is None:
        return Rational(math.ceil(lower))
    if lower is None:
        return Rational(math.floor(upper))
    if lower > 0:
        candidate = Rational(math.ceil(lower))
        return candidate if candidate <= upper else lower
    candidate = Rational(math.floor(upper))
    return candidate if candidate >= lower else upper
