"""A-超几何系统：toric 理想、Euler 算子、余法分量、判别式、奇异轨迹与截断系统。

变量约定：
  d1..dn   C[∂] 中的 ∂_i
  x1..xn   位置变量
  X1..Xn   余切方向 ξ_i
  t1..td   判别式消元用的环面变量
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from loguru import logger
from sympy import Rational

from core.algebra import poly as P
from core.algebra.exact import IntMatrix, PointedMatrix, lattice_kernel, rational_rank, to_qq
from core.algebra.weyl import (
    ProjectiveWeight,
    WeylElement,
    WeylIdeal,
    d_names,
    from_commutative,
    gr_ideal,
    initial_form,
    phase_space_ring,
    singular_locus,
    x_names,
    xi_names,
)
from core.errors import InputError, WitnessNotFoundError
from core.gkz.geom import Face, face_sort_key, l_umbrella


def d_ring(n: int):
    return P.poly_ring(d_names(n))


def x_ring(n: int):
    return P.poly_ring(x_names(n))


def _binomial(ring, plus: Sequence[int], minus: Sequence[int], variables: Sequence[int]) -> P.Poly:
    gens = ring.gens
    a, b = ring.one, ring.one
    for k, var in enumerate(variables):
        a *= gens[var] ** plus[k]
        b *= gens[var] ** minus[k]
    return a - b


def toric_ideal(matrix: IntMatrix, ring=None, variables: Sequence[int] | None = None) -> P.PolyIdeal:
    """I_A = ⟨∂^{z+} − ∂^{z−} : z ∈ ker A 的格基⟩ : (∏∂)^∞。

    ring / variables 允许把二项式放进别的环（如 ξ 变量）。
    """
    ring = ring or d_ring(matrix.ncols)
    variables = tuple(variables) if variables is not None else tuple(range(matrix.ncols))
    kernel = lattice_kernel(matrix)
    gens = []
    for z in kernel.basis:
        plus = [max(e, 0) for e in z]
        minus = [max(-e, 0) for e in z]
        gens.append(_binomial(ring, plus, minus, variables))
    lattice_ideal = P.PolyIdeal.of(ring, gens)
    if not gens:
        return lattice_ideal
    prod = ring.one
    for var in variables:
        prod *= ring.gens[var]
    result = P.saturate(lattice_ideal, prod).reduced()
    logger.debug("toric   n={} kernel_rank={} gens={}", matrix.ncols, kernel.rank, len(result.gens))
    return result


def euler_operators(matrix: IntMatrix, beta: Sequence[Rational]) -> list[WeylElement]:
    """E_i − β_i = Σ_j a_ij x_j ∂_j − β_i。"""
    if len(beta) != matrix.nrows:
        raise InputError(f"beta has {len(beta)} entries, matrix has {matrix.nrows} rows")
    n = matrix.ncols
    theta = [WeylElement.x(n, j) * WeylElement.d(n, j) for j in range(n)]
    out = []
    for row, b in zip(matrix.rows, beta):
        op = WeylElement.constant(n, -to_qq(b))
        for a, t in zip(row, theta):
            if a:
                op = op + t * a
        out.append(op)
    return out


@dataclass(frozen=True)
class HypergeometricSystem:
    matrix: PointedMatrix
    beta: tuple[Rational, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "beta", tuple(Rational(b) for b in self.beta))
        if len(self.beta) != self.matrix.d:
            raise InputError(f"beta has {len(self.beta)} entries, matrix has {self.matrix.d} rows")

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def ideal(self) -> WeylIdeal:
        """H_A(β) = D·(I_A, E_A − β)。"""
        toric = [from_commutative(g, self.n) for g in toric_ideal(self.matrix.matrix).gens]
        return WeylIdeal.of(self.n, toric + euler_operators(self.matrix.matrix, self.beta))


@dataclass(frozen=True)
class ConormalComponent:
    face: Face
    ideal: P.PolyIdeal
    dimension: int

    @property
    def label(self) -> str:
        return str(self.face)


def _columns_product(ring, names: Iterable[str]) -> P.Poly:
    index = {name: k for k, name in enumerate(P.ring_names(ring))}
    out = ring.one
    for name in names:
        out *= ring.gens[index[name]]
    return out


def conormal_closure_ideal(matrix: IntMatrix, face: Face,
                           columns: Sequence[int] | None = None,
                           n: int | None = None) -> ConormalComponent:
    """C̄_τ 的定义理想：⟨ξ_i : i∉τ⟩ + τ 上的 toric 二项式 + A·(xξ) 的各行，再对 ξ_τ 饱和。

    columns 把矩阵的列映到环境坐标（默认恒等），n 是环境维数；不在 columns 中的坐标
    上 ξ 被置零而 x 自由。
    """
    columns = tuple(columns) if columns is not None else tuple(range(matrix.ncols))
    n = n if n is not None else matrix.ncols
    ring = phase_space_ring(n)
    x, xi = ring.gens[:n], ring.gens[n:]
    support = [columns[k] for k in face.members]

    gens = [xi[i] for i in range(n) if i not in support]
    if face.members:
        sub = matrix.submatrix(face.members)
        toric = toric_ideal(sub, ring, [n + c for c in support])
        gens.extend(toric.gens)
    for row in matrix.rows:
        gens.append(sum((a * x[c] * xi[c] for a, c in zip(row, columns) if a), ring.zero))
    ideal = P.PolyIdeal.of(ring, gens)
    if support:
        ideal = P.saturate(ideal, _columns_product(ring, [f"X{c + 1}" for c in support]))
    ideal = ideal.reduced()
    dim = P.dimension(ideal)
    logger.debug("conormal face={} dim={} gens={}", [c + 1 for c in support], dim, len(ideal.gens))
    ambient_face = Face(tuple(sorted(support)), face.rank)
    return ConormalComponent(ambient_face, ideal, dim)


def char_variety_gkz(matrix: PointedMatrix, weight: ProjectiveWeight) -> list[ConormalComponent]:
    """Char^L(D/H_A(β)) = ⋃_{τ ∈ Φ(A,L)} C̄_τ，与 β 无关。"""
    umbrella = l_umbrella(matrix, weight)
    return [conormal_closure_ideal(matrix.matrix, face) for face in umbrella.faces]


def union_ideal(components: Sequence[ConormalComponent], n: int) -> P.PolyIdeal:
    """各分量理想之交，其零点集是分量之并。"""
    return P.intersect_all([c.ideal for c in components], phase_space_ring(n))


# ---------------------------------------------------------------------------
# 判别式
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Discriminant:
    matrix: IntMatrix
    columns: tuple[int, ...]
    poly: P.Poly

    @property
    def trivial(self) -> bool:
        return self.poly.is_ground


def a_discriminant(matrix: IntMatrix, columns: Sequence[int] | None = None,
                   n: int | None = None) -> Discriminant:
    """Δ_M：f = Σ x_j t^{a_j} 在环面上有临界点的系数向量之闭包的定义多项式。

    负指数用 t^m 平移（m_i = max(0, −min_j a_ij)）；余维 ≥ 2 时返回 1。
    """
    columns = tuple(columns) if columns is not None else tuple(range(matrix.ncols))
    n = n if n is not None else max(columns) + 1
    d = matrix.nrows
    t_names = tuple(f"t{i}" for i in range(1, d + 1))
    xs = tuple(f"x{c + 1}" for c in columns)
    ring = P.poly_ring(t_names + xs)
    t, x = ring.gens[:d], ring.gens[d:]
    shift = [max(0, -min(row)) for row in matrix.rows]

    def monomial(col: tuple[int, ...]) -> P.Poly:
        out = ring.one
        for i in range(d):
            out *= t[i] ** (col[i] + shift[i])
        return out

    terms = [x[k] * monomial(matrix.column(k)) for k in range(matrix.ncols)]
    gens = [sum(terms, ring.zero)]
    for i in range(d):
        gens.append(sum((matrix.rows[i][k] * terms[k] for k in range(matrix.ncols)), ring.zero))
    critical = P.PolyIdeal.of(ring, gens)
    critical = P.saturate(critical, _columns_product(ring, t_names))
    eliminated = P.restrict(P.eliminate(critical, t_names), xs)
    if eliminated.is_zero():
        raise InputError(f"discriminantal variety of columns {[c + 1 for c in columns]} is everything")
    poly = P.divisorial_part(eliminated)
    target = x_ring(n)
    poly = P.normalize(P.transfer(poly, target))
    logger.debug("disc    columns={} -> {}", [c + 1 for c in columns], P.format_poly(poly))
    return Discriminant(matrix, columns, poly)


def discriminant_factors(matrix: PointedMatrix, columns: Sequence[int] | None = None,
                         n: int | None = None) -> list[Discriminant]:
    """Φ(A,F) 中每个非空面的判别式（按面排序）。"""
    columns = tuple(columns) if columns is not None else tuple(range(matrix.n))
    n = n if n is not None else matrix.n
    umbrella = l_umbrella(matrix, ProjectiveWeight.order_filtration(matrix.n))
    out = []
    for face in umbrella.faces:
        if not face.members:
            continue
        sub = matrix.matrix.submatrix(face.members)
        out.append(a_discriminant(sub, [columns[k] for k in face.members], n))
    return out


def squarefree_product(polys: Iterable[P.Poly], ring) -> P.Poly:
    acc = ring.one
    for p in polys:
        acc *= P.transfer(p, ring)
    return P.squarefree_part(acc)


def distinct_factors(polys: Iterable[P.Poly]) -> list[P.Poly]:
    """去掉常数与重复因子，保持首次出现的次序。"""
    out: list[P.Poly] = []
    for p in polys:
        p = P.normalize(p)
        if p.is_ground or p in out:
            continue
        out.append(p)
    return out


def format_product(factors: Sequence[P.Poly]) -> str:
    """x1*x3*(x2^2-4*x1*x3) 形式；空积写作 1。"""
    if not factors:
        return "1"
    parts = []
    for f in factors:
        text = P.format_poly(f).replace(" ", "")
        parts.append(text if len(f) == 1 else f"({text})")
    return "*".join(parts)


def sing_locus_gkz(matrix: PointedMatrix) -> P.Poly:
    """Φ(A,F) 各面判别式之积的无平方部分。"""
    factors = discriminant_factors(matrix)
    return squarefree_product((f.poly for f in factors), x_ring(matrix.n))


def is_homogeneous_matrix(matrix: IntMatrix) -> bool:
    """1_n 是否在 A 的 Q-行空间中。"""
    ones = [[1] * matrix.ncols]
    return rational_rank(list(matrix.rows)) == rational_rank(list(matrix.rows) + ones)


def hypergeometric_sing_locus(system: HypergeometricSystem) -> P.PolyIdeal:
    """直接用 Weyl-GB 计算 Sing(D/H_A(β))。"""
    return singular_locus(system.ideal)


# ---------------------------------------------------------------------------
# 截断系统
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TruncatedSystem:
    breve: PointedMatrix
    d: int
    beta: tuple[Rational, ...]
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "beta", tuple(Rational(b) for b in self.beta))
        k, n = self.breve.d, self.breve.n
        if not 0 < self.d < k < n:
            raise InputError(f"truncated system needs d < k < n, got d={self.d} k={k} n={n}")
        if rational_rank(list(self.breve.matrix.rows)) != k:
            raise InputError("breve_A must have full row rank")
        if len(self.beta) != self.d:
            raise InputError(f"beta has {len(self.beta)} entries, expected {self.d}")

    @classmethod
    def of(cls, breve: IntMatrix, d: int, beta: Sequence[Rational]) -> "TruncatedSystem":
        return cls(PointedMatrix.of(breve), d, tuple(beta))

    @property
    def n(self) -> int:
        return self.breve.n

    @property
    def k(self) -> int:
        return self.breve.d

    @property
    def expected_dimension(self) -> int:
        return self.n + self.k - self.d

    @property
    def matrix(self) -> IntMatrix:
        return self.breve.matrix.top_rows(self.d)

    @property
    def toric(self) -> WeylIdeal:
        if "toric" not in self._cache:
            gens = [from_commutative(g, self.n) for g in toric_ideal(self.breve.matrix).gens]
            self._cache["toric"] = WeylIdeal.of(self.n, gens)
        return self._cache["toric"]

    @property
    def ideal(self) -> WeylIdeal:
        """D·(I_Ă, E_A − β)。"""
        return WeylIdeal.of(self.n, self.toric.generators + tuple(euler_operators(self.matrix, self.beta)))


def truncated_char_component(system: TruncatedSystem, face: Face,
                             weight: ProjectiveWeight) -> ConormalComponent:
    """(⟨ξ_i : i∉τ⟩ + gr^L(D·I_Ă) + in_L(E_A − β)) : (∏ξ_τ)^∞，τ 是 Φ(Ă,L) 的 facet。"""
    umbrella = l_umbrella(system.breve, weight)
    if face not in umbrella.facets:
        raise InputError(f"face {face} is not a facet of the umbrella")
    n = system.n
    ring = phase_space_ring(n)
    gens = [ring.gens[n + i] for i in face.complement(n)]
    gens.extend(gr_ideal(system.toric, weight).gens)
    gens.extend(initial_form(e, weight) for e in euler_operators(system.matrix, system.beta))
    ideal = P.PolyIdeal.of(ring, gens)
    if face.members:
        ideal = P.saturate(ideal, _columns_product(ring, [f"X{i + 1}" for i in face.members]))
    ideal = ideal.reduced()
    dim = P.dimension(ideal)
    logger.debug("trunc   face={} dim={} expected={}", face, dim, system.expected_dimension)
    return ConormalComponent(face, ideal, dim)


@dataclass(frozen=True)
class TorusWitness:
    facet: Face
    ideal: P.PolyIdeal
    dimension: int
    expected_dimension: int
    tried: tuple[Face, ...]

    @property
    def confirmed(self) -> bool:
        return not self.ideal.is_unit() and self.dimension == self.expected_dimension


def torus_component_witness(system: TruncatedSystem, weight: ProjectiveWeight) -> TorusWitness:
    """依次尝试 Φ(Ă,L) 的 facet，找一个在 T*(C*)^n 中维数为 n+k−d 的分量。

    T*(C*)^n 只要求 x ∈ (C*)^n，ξ 不受限制；pyramid facet 的分量含 ξ_j (j∉τ)，
    所以饱和只用 x_1⋯x_n 与 ∏_{i∈τ} ξ_i。
    """
    umbrella = l_umbrella(system.breve, weight)
    ring = phase_space_ring(system.n)
    tried: list[Face] = []
    for facet in sorted(umbrella.facets, key=face_sort_key):
        tried.append(facet)
        component = truncated_char_component(system, facet, weight)
        xi = xi_names(system.n)
        names = x_names(system.n) + tuple(xi[i] for i in facet.members)
        torus = P.saturate(component.ideal, _columns_product(ring, names)).reduced()
        if torus.is_unit():
            logger.debug("witness facet={} misses the torus", facet)
            continue
        dim = P.dimension(torus)
        witness = TorusWitness(facet, torus, dim, system.expected_dimension, tuple(tried))
        if witness.confirmed:
            logger.debug("witness facet={} dim={}", facet, dim)
            return witness
    raise WitnessNotFoundError(
        f"no facet of the umbrella yields a torus component of dimension {system.expected_dimension}; "
        f"tried {[str(f) for f in tried]}"
    )


def truncated_singular_locus(system: TruncatedSystem) -> P.PolyIdeal:
    """Weyl 路径计算的奇异轨迹；1_n 在 A 的行空间中时应为 ⟨0⟩。"""
    return singular_locus(system.ideal)
