"""A-分次二项式理想与二项式 D-模。

流程：
  1. cellular_decomposition：按变量反复拆分 I = (I : ∂_i^∞) ∩ (I + ⟨∂_i^e⟩)
  2. associated_lattice：对每个 cell σ 与 σ̄-标准单项式 m，J_m = (C : ∂^m) ∩ C[∂_σ]
     是格理想，读出格与特征 ρ，再换算成 σ 上的有理缩放 γ
  3. classify_toral_andean / quasidegrees：toral 或 Andean，以及拟次数仿射子空间
  4. is_holonomic：−β 不在 Andean 排列中
  5. char_variety_binomial / sing_locus_binomial：贡献的 toral 素理想上套用 A_σ 的闭式结果

系数域保持 Q；需要单位根的特征直接拒绝。
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from loguru import logger
from sympy import Matrix, Rational

from core.algebra import poly as P
from core.algebra.exact import (
    IntMatrix,
    Lattice,
    PointedMatrix,
    column_rank,
    in_affine_span,
    is_saturated,
    lattice_from_generators,
    lattice_kernel,
    rational_rank,
    smith_normal_form,
    spans_lattice,
)
from core.algebra.parsing import parse_poly
from core.algebra.weyl import (
    ProjectiveWeight,
    WeylIdeal,
    from_commutative,
    has_finite_rank,
    is_L_holonomic,
    phase_space_ring,
)
from core.errors import InputError, UnsupportedInputError, VerificationError
from core.gkz.geom import Face, l_umbrella
from core.gkz.hyper import (
    ConormalComponent,
    TorusWitness,
    TruncatedSystem,
    conormal_closure_ideal,
    d_ring,
    discriminant_factors,
    distinct_factors,
    euler_operators,
    squarefree_product,
    torus_component_witness,
    x_ring,
)

TORAL = "toral"
ANDEAN = "andean"


# ---------------------------------------------------------------------------
# 输入
# ---------------------------------------------------------------------------

def _check_binomial(ideal: P.PolyIdeal) -> None:
    for g in ideal.gens:
        if len(g) > 2:
            raise UnsupportedInputError(f"generator {P.format_poly(g)} is neither a monomial nor a binomial")


def is_A_graded(ideal: P.PolyIdeal, matrix: IntMatrix) -> bool:
    """每个二项式生成元 λ∂^u − μ∂^v 满足 Au = Av。"""
    _check_binomial(ideal)
    if ideal.ring.ngens != matrix.ncols:
        raise InputError(f"ideal has {ideal.ring.ngens} variables, matrix has {matrix.ncols} columns")
    for g in ideal.gens:
        monoms = list(g.keys())
        if len(monoms) == 2 and matrix.apply(monoms[0]) != matrix.apply(monoms[1]):
            return False
    return True


@dataclass(frozen=True)
class BinomialModuleSpec:
    matrix: PointedMatrix
    ideal: P.PolyIdeal
    beta: tuple[Rational, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "beta", tuple(Rational(b) for b in self.beta))
        if len(self.beta) != self.matrix.d:
            raise InputError(f"beta has {len(self.beta)} entries, matrix has {self.matrix.d} rows")
        if P.ring_names(self.ideal.ring) != P.ring_names(d_ring(self.matrix.n)):
            raise InputError("binomial ideal must live in d1..dn")
        if not is_A_graded(self.ideal, self.matrix.matrix):
            raise InputError("binomial ideal is not A-graded")

    @classmethod
    def of(cls, matrix: IntMatrix, generators: Iterable[str | P.Poly],
           beta: Sequence[Rational]) -> "BinomialModuleSpec":
        ring = d_ring(matrix.ncols)
        gens = [parse_poly(g, ring) if isinstance(g, str) else g for g in generators]
        return cls(PointedMatrix.of(matrix), P.PolyIdeal.of(ring, gens), tuple(beta))

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def weyl_ideal(self) -> WeylIdeal:
        """D·(I, E_A − β)。"""
        gens = [from_commutative(g, self.n) for g in self.ideal.gens]
        return WeylIdeal.of(self.n, gens + euler_operators(self.matrix.matrix, self.beta))


# ---------------------------------------------------------------------------
# cellular 分解
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CellularComponent:
    sigma: tuple[int, ...]
    ideal: P.PolyIdeal

    def complement(self, n: int) -> tuple[int, ...]:
        return tuple(i for i in range(n) if i not in self.sigma)

    def __str__(self) -> str:
        gens = ", ".join(P.format_poly(g) for g in self.ideal.gens)
        return f"<{gens}> on {{{','.join(str(i + 1) for i in self.sigma)}}}"


def _stabilizing_exponent(ideal: P.PolyIdeal, var: P.Poly) -> int | None:
    """I : var = I 时返回 None（非零因子）；否则返回 e 使 I : var^e = I : var^{e+1}。"""
    current = P.ideal_quotient(ideal, var)
    if P.same_ideal(current, ideal):
        return None
    e = 1
    while True:
        nxt = P.ideal_quotient(current, var)
        if P.same_ideal(nxt, current):
            return e
        current, e = nxt, e + 1


def _split(ideal: P.PolyIdeal, depth: int, limit: int) -> list[CellularComponent]:
    if ideal.is_unit():
        return []
    if depth > limit:
        raise UnsupportedInputError("cellular decomposition did not stabilize")
    ring = ideal.ring
    sigma = []
    for i, var in enumerate(ring.gens):
        if P.radical_membership(var, ideal):
            continue
        e = _stabilizing_exponent(ideal, var)
        if e is None:
            sigma.append(i)
            continue
        logger.debug("cell    split on d{} e={} depth={}", i + 1, e, depth)
        left = P.saturate(ideal, var).reduced()
        right = (ideal + P.PolyIdeal.of(ring, [var ** e])).reduced()
        return _split(left, depth + 1, limit) + _split(right, depth + 1, limit)
    return [CellularComponent(tuple(sigma), ideal.reduced())]


def _merge(components: list[CellularComponent], ring) -> list[CellularComponent]:
    by_sigma: dict[tuple[int, ...], P.PolyIdeal] = {}
    for c in components:
        if c.sigma in by_sigma:
            by_sigma[c.sigma] = P.intersect(by_sigma[c.sigma], c.ideal).reduced()
        else:
            by_sigma[c.sigma] = c.ideal
    merged = [CellularComponent(s, i) for s, i in by_sigma.items()]
    merged.sort(key=lambda c: (-len(c.sigma), c.sigma))

    kept = list(merged)
    for c in merged:
        others = [o.ideal for o in kept if o is not c]
        if not others:
            continue
        meet = P.intersect_all(others, ring)
        if all(c.ideal.contains(g) for g in meet.gens):
            kept.remove(c)
    return kept


def cellular_decomposition(ideal: P.PolyIdeal) -> list[CellularComponent]:
    """I = ⋂ C_σ，每个 C_σ 中 ∂_σ 为非零因子、∂_σ̄ 幂零；不冗余。"""
    _check_binomial(ideal)
    if ideal.is_zero():
        return [CellularComponent(tuple(range(ideal.ring.ngens)), ideal)]
    pieces = _split(ideal.reduced(), 0, 4 * ideal.ring.ngens + 8)
    out = _merge(pieces, ideal.ring)
    logger.debug("cell    components={}", [str(c) for c in out])
    return out


# ---------------------------------------------------------------------------
# 结合格、特征与缩放
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BinomialPrime:
    """I_ρ + ⟨∂_i : i∉σ⟩，其中 ∂_i = γ_i ∂'_i 把 I_ρ 变成格理想 I_L。"""
    sigma: tuple[int, ...]
    lattice: Lattice
    gamma: tuple[Rational, ...]

    @property
    def unital(self) -> bool:
        return all(g == 1 for g in self.gamma)

    def character(self) -> tuple[Rational, ...]:
        """ρ 在格基上的取值。"""
        out = []
        for b in self.lattice.basis:
            value = Rational(1)
            for g, e in zip(self.gamma, b):
                value *= g ** e
            out.append(value)
        return tuple(out)

    def ideal(self, n: int) -> P.PolyIdeal:
        ring = d_ring(n)
        gens = [ring.gens[i] for i in range(n) if i not in self.sigma]
        binomials = []
        for z in self.lattice.basis:
            plus, minus = ring.one, ring.one
            for k, e in enumerate(z):
                var = ring.gens[self.sigma[k]]
                if e > 0:
                    plus *= (var * _qq(1 / self.gamma[k])) ** e
                elif e < 0:
                    minus *= (var * _qq(1 / self.gamma[k])) ** (-e)
            binomials.append(plus - minus)
        lattice_ideal = P.PolyIdeal.of(ring, binomials)
        if binomials:
            prod = ring.one
            for i in self.sigma:
                prod *= ring.gens[i]
            lattice_ideal = P.saturate(lattice_ideal, prod)
        return P.PolyIdeal.of(ring, gens + list(lattice_ideal.gens)).reduced()


def _qq(r: Rational):
    r = Rational(r)
    return P.QQ(int(r.p), int(r.q))


def _from_qq(c) -> Rational:
    return Rational(int(c.numerator), int(c.denominator))


def character_rescaling(diffs: Sequence[Sequence[int]], values: Sequence[Rational],
                        size: int) -> tuple[Rational, ...]:
    """求 γ ∈ (Q*)^size 使 γ^w = ρ(w) 对每个 (w, ρ(w)) 成立。

    Smith 形式 U·W·V = S：Y = U·log ρ，z_l = Y_l^{1/s_l}，γ = V·z（乘法写法）。
    """
    if not diffs:
        return (Rational(1),) * size
    u, s, v = smith_normal_form(IntMatrix(tuple(tuple(w) for w in diffs)))
    rank = sum(1 for i in range(min(s.nrows, s.ncols)) if s.rows[i][i])
    y = []
    for l in range(s.nrows):
        value = Rational(1)
        for j, rho in enumerate(values):
            value *= Rational(rho) ** u.rows[l][j]
        y.append(value)
    if any(y[l] != 1 for l in range(rank, s.nrows)):
        raise InputError("binomial relations have inconsistent coefficients")
    z = []
    for l in range(size):
        if l < rank:
            if s.rows[l][l] != 1:
                raise UnsupportedInputError("character needs roots of unity")
            z.append(y[l])
        else:
            z.append(Rational(1))
    gamma = []
    for i in range(size):
        value = Rational(1)
        for l in range(size):
            value *= z[l] ** v.rows[i][l]
        gamma.append(value)
    return tuple(gamma)


def _sigma_ring_names(sigma: Sequence[int]) -> tuple[str, ...]:
    return tuple(f"d{i + 1}" for i in sigma)


def standard_monomials(component: CellularComponent, n: int) -> list[tuple[int, ...]]:
    """σ̄ 变量中不属于 C 的单项式（∂_σ̄ 幂零，故有限）。"""
    ring = component.ideal.ring
    outside = component.complement(n)
    start = tuple([0] * n)
    if component.ideal.contains(ring.one):
        return []
    seen = {start}
    queue = deque([start])
    out = []
    while queue:
        m = queue.popleft()
        out.append(m)
        if len(out) > 10_000:
            raise UnsupportedInputError("too many standard monomials in the nilpotent variables")
        for j in outside:
            nxt = list(m)
            nxt[j] += 1
            nxt = tuple(nxt)
            if nxt in seen:
                continue
            seen.add(nxt)
            if not component.ideal.contains(ring.from_dict({nxt: 1})):
                queue.append(nxt)
    return sorted(out)


def _monomial(ring, m: Sequence[int]) -> P.Poly:
    return ring.from_dict({tuple(m): 1})


def _j_ideal(component: CellularComponent, m: Sequence[int], n: int) -> P.PolyIdeal | None:
    """(C : ∂^m) ∩ C[∂_σ]；σ = ∅ 时没有格，返回 None。"""
    if not component.sigma:
        return None
    ring = component.ideal.ring
    quotient = P.ideal_quotient(component.ideal, _monomial(ring, m)) if any(m) else component.ideal
    outside = [f"d{i + 1}" for i in component.complement(n)]
    return P.restrict(P.eliminate(quotient, outside), _sigma_ring_names(component.sigma))


def _prime_of(j_ideal: P.PolyIdeal, sigma: tuple[int, ...]) -> BinomialPrime:
    size = len(sigma)
    diffs, values = [], []
    for g in j_ideal.groebner():
        terms = list(g.terms())
        if len(terms) == 1:
            raise InputError(f"cell variables are zero divisors: {P.format_poly(g)}")
        (u, cu), (v, cv) = terms
        w = tuple(a - b for a, b in zip(u, v))
        diffs.append(w)
        values.append(-_from_qq(cv) / _from_qq(cu))
    lattice = lattice_from_generators(size, diffs)
    if not is_saturated(lattice):
        raise UnsupportedInputError(
            f"lattice {list(lattice.basis)} on cell {[i + 1 for i in sigma]} is not saturated; "
            "its associated primes need roots of unity"
        )
    gamma = character_rescaling(diffs, values, size)
    return BinomialPrime(sigma, lattice, gamma)


def associated_lattice(component: CellularComponent, matrix: IntMatrix) -> list[BinomialPrime]:
    """C 的结合素理想：cell σ、饱和格 L ⊆ Z^σ 与有理缩放 γ。"""
    n = matrix.ncols
    primes: list[BinomialPrime] = []
    for m in standard_monomials(component, n):
        j = _j_ideal(component, m, n)
        if j is None:
            prime = BinomialPrime((), Lattice(0), ())
        elif j.is_unit():
            continue
        else:
            prime = _prime_of(j, component.sigma)
        key = (prime.sigma, prime.lattice, prime.character())
        if all((p.sigma, p.lattice, p.character()) != key for p in primes):
            primes.append(prime)
    return primes


def classify_toral_andean(sigma: Sequence[int], lattice: Lattice, matrix: IntMatrix) -> str:
    """|σ| − rank L ≤ rank A_σ 时为 toral，否则为 Andean。

    A-齐次时 L ⊆ ker(A_σ)，条件即 rank L = dim ker_Q(A_σ)。
    """
    return TORAL if len(sigma) - lattice.rank <= column_rank(matrix, sigma) else ANDEAN


# ---------------------------------------------------------------------------
# 拟次数
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuasidegreeSet:
    """仿射子空间 offset + span(directions) 的并；directions 取行最简形。"""
    pieces: tuple[tuple[tuple[Rational, ...], tuple[tuple[Rational, ...], ...]], ...] = ()

    def contains(self, point: Sequence[Rational]) -> bool:
        return any(in_affine_span(point, offset, dirs) for offset, dirs in self.pieces)

    def __or__(self, other: "QuasidegreeSet") -> "QuasidegreeSet":
        pieces = list(self.pieces)
        for p in other.pieces:
            if p not in pieces:
                pieces.append(p)
        return QuasidegreeSet(tuple(sorted(pieces, key=_piece_key)))

    @property
    def empty(self) -> bool:
        return not self.pieces


def _piece_key(piece) -> tuple:
    offset, dirs = piece
    return (len(dirs), tuple(map(str, offset)), tuple(tuple(map(str, d)) for d in dirs))


def canonical_piece(offset: Sequence, directions: Sequence[Sequence]) -> tuple:
    offset = [Rational(x) for x in offset]
    dirs = [list(map(Rational, d)) for d in directions if any(d)]
    if not dirs:
        return (tuple(offset), ())
    reduced, pivots = Matrix(dirs).rref()
    basis = [tuple(reduced.row(k)) for k in range(len(pivots))]
    for row, p in zip(basis, pivots):
        factor = offset[p]
        if factor:
            offset = [a - factor * b for a, b in zip(offset, row)]
    return (tuple(offset), tuple(basis))


def quasidegrees(component: CellularComponent, matrix: IntMatrix) -> QuasidegreeSet:
    """⋃_m (−A·m + span A_σ)，m 取 σ̄-标准单项式。"""
    n = matrix.ncols
    directions = [matrix.column(i) for i in component.sigma]
    pieces: list = []
    for m in standard_monomials(component, n):
        offset = tuple(-x for x in matrix.apply(m))
        piece = canonical_piece(offset, directions)
        if piece not in pieces:
            pieces.append(piece)
    return QuasidegreeSet(tuple(sorted(pieces, key=_piece_key)))


def graded_degrees(component: CellularComponent, matrix: IntMatrix, max_degree: int) -> set[tuple[int, ...]]:
    """C[∂]/C 在总次数 ≤ max_degree 内非零的 A-次数（标准单项式的 −A·u）。"""
    basis = component.ideal.groebner()
    leads = [g.LM for g in basis]
    n = matrix.ncols
    out: set[tuple[int, ...]] = set()
    for total in range(max_degree + 1):
        for combo in combinations_with_replacement(range(n), total):
            u = [0] * n
            for i in combo:
                u[i] += 1
            if any(all(a <= b for a, b in zip(lm, u)) for lm in leads):
                continue
            out.add(tuple(-x for x in matrix.apply(u)))
    return out


# ---------------------------------------------------------------------------
# 分析与判定
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ComponentAnalysis:
    component: CellularComponent
    primes: tuple[BinomialPrime, ...]
    kinds: tuple[str, ...]
    quasidegrees: QuasidegreeSet

    @property
    def andean(self) -> bool:
        return ANDEAN in self.kinds

    @property
    def overapproximated(self) -> bool:
        return len(self.primes) > 1


@lru_cache(maxsize=64)
def analyze(matrix: PointedMatrix, ideal: P.PolyIdeal) -> tuple[ComponentAnalysis, ...]:
    out = []
    for component in cellular_decomposition(ideal):
        primes = tuple(associated_lattice(component, matrix.matrix))
        kinds = tuple(classify_toral_andean(p.sigma, p.lattice, matrix.matrix) for p in primes)
        qdeg = quasidegrees(component, matrix.matrix)
        logger.debug("cell    {} kinds={} pieces={}", component, kinds, len(qdeg.pieces))
        out.append(ComponentAnalysis(component, primes, kinds, qdeg))
    return tuple(out)


@dataclass(frozen=True)
class HolonomicityVerdict:
    holonomic: bool
    arrangement: QuasidegreeSet
    components: tuple[ComponentAnalysis, ...]

    @property
    def overapproximated(self) -> bool:
        return any(c.overapproximated and c.andean for c in self.components)

    def __bool__(self) -> bool:
        return self.holonomic


def is_holonomic(spec: BinomialModuleSpec) -> HolonomicityVerdict:
    """−β ∉ ⋃ qdeg(C[∂]/C)，C 取 Andean 分量。"""
    components = analyze(spec.matrix, spec.ideal)
    arrangement = QuasidegreeSet()
    for c in components:
        if c.andean:
            arrangement = arrangement | c.quasidegrees
    minus_beta = tuple(-b for b in spec.beta)
    verdict = HolonomicityVerdict(not arrangement.contains(minus_beta), arrangement, components)
    if verdict.overapproximated:
        logger.warning("Andean arrangement uses whole cellular components with several associated primes")
    return verdict


def _beta_in_span(spec: BinomialModuleSpec, sigma: Sequence[int]) -> bool:
    directions = [spec.matrix.matrix.column(i) for i in sigma]
    return in_affine_span(spec.beta, [0] * spec.matrix.d, directions)


def contributing_primes(spec: BinomialModuleSpec) -> list[BinomialPrime]:
    """toral 素理想 p，满足 −β ∈ qdeg(C[∂]/C) 且 D/(p, E_A − β) 非零。"""
    minus_beta = tuple(-b for b in spec.beta)
    out: list[BinomialPrime] = []
    for c in analyze(spec.matrix, spec.ideal):
        if not c.quasidegrees.contains(minus_beta):
            continue
        for prime, kind in zip(c.primes, c.kinds):
            if kind == TORAL and _beta_in_span(spec, prime.sigma) and prime not in out:
                out.append(prime)
    return out


def _require_holonomic(spec: BinomialModuleSpec) -> None:
    if not is_holonomic(spec).holonomic:
        raise InputError("the binomial D-module is not holonomic")


def _rescale(f: P.Poly, factors: dict[int, Rational]) -> P.Poly:
    """变量 k 替换为 factors[k]·变量 k。"""
    out = {}
    for monom, coeff in f.items():
        scale = Rational(1)
        for k, e in enumerate(monom):
            if e and k in factors:
                scale *= factors[k] ** e
        out[monom] = coeff * _qq(scale)
    return f.ring.from_dict(out)


def _sub_pointed(spec: BinomialModuleSpec, sigma: Sequence[int]) -> PointedMatrix:
    sub = spec.matrix.matrix.submatrix(sigma)
    return PointedMatrix(sub, spec.matrix.certificate, spans_lattice(sub))


def char_variety_binomial(spec: BinomialModuleSpec, weight: ProjectiveWeight) -> list[ConormalComponent]:
    """贡献 toral 素理想上 A_σ 的余法分量，经 x_i ↦ γ_i x_i、ξ_i ↦ ξ_i/γ_i 嵌回 2n 维。"""
    _require_holonomic(spec)
    n = spec.n
    ring = phase_space_ring(n)
    out: list[ConormalComponent] = []
    for prime in contributing_primes(spec):
        if not prime.sigma:
            ideal = P.PolyIdeal.of(ring, ring.gens[n:]).reduced()
            out.append(ConormalComponent(Face((), 0), ideal, n))
            continue
        sub = _sub_pointed(spec, prime.sigma)
        umbrella = l_umbrella(sub, weight.restrict(prime.sigma))
        factors: dict[int, Rational] = {}
        for k, i in enumerate(prime.sigma):
            factors[i] = prime.gamma[k]
            factors[n + i] = 1 / prime.gamma[k]
        for face in umbrella.faces:
            comp = conormal_closure_ideal(sub.matrix, face, prime.sigma, n)
            if not prime.unital:
                rescaled = P.PolyIdeal.of(ring, [_rescale(g, factors) for g in comp.ideal.gens]).reduced()
                comp = ConormalComponent(comp.face, rescaled, comp.dimension)
            if all(comp.face != o.face or not P.same_ideal(comp.ideal, o.ideal) for o in out):
                out.append(comp)
    out.sort(key=lambda c: (len(c.face.members), c.face.members))
    return out


def binomial_discriminant_factors(spec: BinomialModuleSpec) -> list[P.Poly]:
    """各贡献素理想上缩放后的面判别式（去重，按出现次序）。"""
    _require_holonomic(spec)
    n = spec.n
    polys = []
    for prime in contributing_primes(spec):
        if not prime.sigma:
            continue
        factors = {i: prime.gamma[k] for k, i in enumerate(prime.sigma)}
        for disc in discriminant_factors(_sub_pointed(spec, prime.sigma), prime.sigma, n):
            polys.append(_rescale(disc.poly, factors))
    return distinct_factors(polys)


def sing_locus_binomial(spec: BinomialModuleSpec) -> P.Poly:
    """缩放判别式之积的无平方部分。"""
    return squarefree_product(binomial_discriminant_factors(spec), x_ring(spec.n))


def is_L_holonomic_binomial(spec: BinomialModuleSpec, weight: ProjectiveWeight,
                            verify: bool = False) -> bool:
    """二项式 D-模 L-holonomic ⇔ holonomic；verify 时用 Weyl-GB 直接核对。"""
    verdict = is_holonomic(spec).holonomic
    if verify:
        direct = is_L_holonomic(spec.weyl_ideal, weight)
        logger.debug("verify  L={} combinatorial={} direct={}", weight.describe(), verdict, direct)
        if direct != verdict:
            raise VerificationError(
                f"holonomicity mismatch for L={weight.describe()}: quasidegree route says {verdict}, "
                f"Weyl Gröbner route says {direct}"
            )
    return verdict


def holonomic_by_singular_locus(spec: BinomialModuleSpec) -> bool:
    """holonomic ⇔ 秩有限 ⇔ 奇异轨迹为真子集。"""
    return has_finite_rank(spec.weyl_ideal)


def andean_witness(spec: BinomialModuleSpec, weight: ProjectiveWeight) -> TorusWitness:
    """对 −β 命中的全 cell Andean 素理想构造截断系统 Ă = (A; L^⊥ 的基)，返回环面分量。"""
    n = spec.n
    minus_beta = tuple(-b for b in spec.beta)
    if rational_rank(list(spec.matrix.matrix.rows)) != spec.matrix.d:
        raise UnsupportedInputError("andean witness needs A of full row rank")
    for c in analyze(spec.matrix, spec.ideal):
        if not c.quasidegrees.contains(minus_beta):
            continue
        for prime, kind in zip(c.primes, c.kinds):
            if kind != ANDEAN or len(prime.sigma) != n:
                continue
            if not prime.unital:
                raise UnsupportedInputError("andean witness needs a unital character")
            if prime.lattice.rank == 0:
                raise UnsupportedInputError("andean witness needs a nonzero lattice")
            rows = [list(r) for r in spec.matrix.matrix.rows]
            for vec in lattice_kernel(IntMatrix(prime.lattice.basis)).basis:
                if rational_rank(rows + [list(vec)]) > len(rows):
                    rows.append(list(vec))
            system = TruncatedSystem.of(IntMatrix.from_rows(rows), spec.matrix.d, spec.beta)
            logger.debug("witness breve_A={}", rows)
            return torus_component_witness(system, weight)
    raise UnsupportedInputError("no full-cell Andean component contains -beta")
