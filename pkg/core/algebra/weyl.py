"""Weyl 代数 D = Q⟨x1..xn, ∂1..∂n⟩ 与左 Gröbner 基。

元素以正规序（x 全在 ∂ 左边）存储：指数 (u, v) ∈ N^n × N^n → QQ 系数。
左 Gröbner 基按投影权重 L 排序，权重相同时按 grevlex 细分；
L 中出现负权重时在齐次化 Weyl 代数中计算（中心变量 h，∂x = x∂ + h²），
结果再令 h = 1。

在此之上提供：
  - initial_form / gr_ideal / char_variety：L-特征簇
  - is_L_holonomic：dim ∈ {−1, n}
  - singular_locus：(gr^F(I) : ⟨ξ⟩^∞) ∩ C[x]
  - has_finite_rank：奇异轨迹不是整个空间
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Mapping, Sequence

from loguru import logger
from sympy import QQ, Rational

from core.algebra import poly as P
from core.algebra.parsing import ExpressionReader
from core.errors import InputError

Exp = tuple[int, ...]


def phase_space_names(n: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(1, n + 1)) + tuple(f"X{i}" for i in range(1, n + 1))


def x_names(n: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(1, n + 1))


def xi_names(n: int) -> tuple[str, ...]:
    return tuple(f"X{i}" for i in range(1, n + 1))


def d_names(n: int) -> tuple[str, ...]:
    return tuple(f"d{i}" for i in range(1, n + 1))


def phase_space_ring(n: int):
    """gr^L(D) ≅ Q[x1..xn, X1..Xn]，Xi 表示 ξi。"""
    return P.poly_ring(phase_space_names(n))


# ---------------------------------------------------------------------------
# 投影权重
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProjectiveWeight:
    lx: tuple[Rational, ...]
    ld: tuple[Rational, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "lx", tuple(Rational(v) for v in self.lx))
        object.__setattr__(self, "ld", tuple(Rational(v) for v in self.ld))
        if len(self.lx) != len(self.ld) or not self.lx:
            raise InputError("L_x and L_d must be nonempty and of equal length")
        sums = {a + b for a, b in zip(self.lx, self.ld)}
        if len(sums) != 1:
            raise InputError(f"L_x + L_d must be constant, got {sorted(sums)}")
        if next(iter(sums)) <= 0:
            raise InputError("L_x + L_d must be positive")

    @classmethod
    def order_filtration(cls, n: int) -> "ProjectiveWeight":
        """F = (0_n, 1_n)。"""
        return cls((0,) * n, (1,) * n)

    @property
    def n(self) -> int:
        return len(self.lx)

    @property
    def c(self) -> Rational:
        return self.lx[0] + self.ld[0]

    @property
    def has_negative(self) -> bool:
        return any(v < 0 for v in self.lx + self.ld)

    def integer_vector(self) -> tuple[int, ...]:
        return P.integer_weights(self.lx + self.ld)

    def restrict(self, cols: Sequence[int]) -> "ProjectiveWeight":
        return ProjectiveWeight(tuple(self.lx[j] for j in cols), tuple(self.ld[j] for j in cols))

    def describe(self) -> str:
        fmt = lambda vs: ",".join(str(v) for v in vs)
        return f"{fmt(self.lx)};{fmt(self.ld)}"


# ---------------------------------------------------------------------------
# Weyl 元素
# ---------------------------------------------------------------------------

@lru_cache(maxsize=1 << 16)
def _mono_product(n: int, e1: Exp, e2: Exp, hom: bool) -> tuple[tuple[Exp, int], ...]:
    """x^{u1}∂^{v1} · x^{u2}∂^{v2} 的正规序展开。

    ∂^b x^a = Σ_k k!·C(a,k)·C(b,k) x^{a−k} ∂^{b−k}（齐次化时再乘 h^{2k}）。
    """
    per_coord = []
    for i in range(n):
        a, b = e2[i], e1[n + i]
        per_coord.append([(k, factorial(k) * comb(a, k) * comb(b, k)) for k in range(min(a, b) + 1)])
    out = []
    for choice in itertools.product(*per_coord):
        coeff = 1
        shift = 0
        u, v = [], []
        for i, (k, c) in enumerate(choice):
            coeff *= c
            shift += k
            u.append(e1[i] + e2[i] - k)
            v.append(e1[n + i] + e2[n + i] - k)
        exp = tuple(u) + tuple(v)
        if hom:
            exp += (e1[2 * n] + e2[2 * n] + 2 * shift,)
        out.append((exp, coeff))
    return tuple(out)


def _mul_terms(n: int, a: Mapping[Exp, object], b: Mapping[Exp, object], hom: bool) -> dict[Exp, object]:
    out: dict[Exp, object] = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            for exp, k in _mono_product(n, e1, e2, hom):
                out[exp] = out.get(exp, QQ(0)) + c1 * c2 * k
    return {e: c for e, c in out.items() if c}


class WeylElement:
    """正规序 Weyl 元素，不可变。"""

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Exp, object] | None = None) -> None:
        self.n = n
        clean = {}
        for e, c in (terms or {}).items():
            if len(e) != 2 * n or any(x < 0 for x in e):
                raise InputError(f"bad exponent {e} for n={n}")
            c = QQ.convert(c)
            if c:
                clean[tuple(e)] = c
        self.terms: dict[Exp, object] = clean
        self._hash: int | None = None

    @classmethod
    def constant(cls, n: int, c) -> "WeylElement":
        return cls(n, {(0,) * (2 * n): c})

    @classmethod
    def x(cls, n: int, i: int) -> "WeylElement":
        e = [0] * (2 * n)
        e[i] = 1
        return cls(n, {tuple(e): 1})

    @classmethod
    def d(cls, n: int, i: int) -> "WeylElement":
        e = [0] * (2 * n)
        e[n + i] = 1
        return cls(n, {tuple(e): 1})

    def _coerce(self, other) -> "WeylElement":
        if isinstance(other, WeylElement):
            if other.n != self.n:
                raise InputError(f"Weyl elements live in different algebras (n={self.n} vs {other.n})")
            return other
        return WeylElement.constant(self.n, QQ.convert(other))

    def __add__(self, other) -> "WeylElement":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, QQ(0)) + c
        return WeylElement(self.n, out)

    __radd__ = __add__

    def __neg__(self) -> "WeylElement":
        return WeylElement(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "WeylElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "WeylElement":
        return self._coerce(other) - self

    def __mul__(self, other) -> "WeylElement":
        return weyl_multiply(self, self._coerce(other))

    def __rmul__(self, other) -> "WeylElement":
        return weyl_multiply(self._coerce(other), self)

    def __pow__(self, k: int) -> "WeylElement":
        if k < 0:
            raise InputError("negative powers are not defined in the Weyl algebra")
        out = WeylElement.constant(self.n, 1)
        for _ in range(k):
            out = out * self
        return out

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, WeylElement) and self.n == other.n and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"WeylElement({format_weyl(self)})"

    def __str__(self) -> str:
        return format_weyl(self)

    @property
    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)


def weyl_multiply(a: WeylElement, b: WeylElement) -> WeylElement:
    if a.n != b.n:
        raise InputError(f"Weyl elements live in different algebras (n={a.n} vs {b.n})")
    return WeylElement(a.n, _mul_terms(a.n, a.terms, b.terms, False))


def from_commutative(f: P.Poly, n: int) -> WeylElement:
    """C[∂] 中的多项式（变量 d1..dn 的任意子集）→ Weyl 元素。"""
    names = P.ring_names(f.ring)
    index = {}
    for k, name in enumerate(names):
        if not name.startswith("d") or not name[1:].isdigit() or not 1 <= int(name[1:]) <= n:
            raise InputError(f"variable {name} is not one of d1..d{n}")
        index[k] = int(name[1:]) - 1
    terms = {}
    for monom, c in f.items():
        e = [0] * (2 * n)
        for k, power in enumerate(monom):
            e[n + index[k]] += power
        terms[tuple(e)] = c
    return WeylElement(n, terms)


def parse_weyl(text: str, n: int, theta: bool = False) -> WeylElement:
    """读入 Weyl 元素；乘积按书写次序在 D 中计算。theta=True 时 ti 表示 xi*di。"""

    def variable(name: str) -> WeylElement:
        kind, idx = name[:1], name[1:]
        if not idx.isdigit() or not 1 <= int(idx) <= n:
            raise InputError(f"unknown variable {name!r} (n={n})")
        i = int(idx) - 1
        if kind == "x":
            return WeylElement.x(n, i)
        if kind == "d":
            return WeylElement.d(n, i)
        if kind == "t" and theta:
            return WeylElement.x(n, i) * WeylElement.d(n, i)
        raise InputError(f"unknown variable {name!r}")

    return ExpressionReader(lambda c: WeylElement.constant(n, c), variable).read(text)


def _display_key(n: int, e: Exp):
    v = sum(e[n:])
    return (v, sum(e), tuple(reversed([-x for x in e])))


def format_weyl(p: WeylElement) -> str:
    """正规序输出，x 在前。"""
    if not p.terms:
        return "0"
    n = p.n
    names = x_names(n) + d_names(n)
    out = []
    for e in sorted(p.terms, key=lambda e: _display_key(n, e), reverse=True):
        c = p.terms[e]
        mono = P.format_monomial(names, e)
        neg = c < 0
        mag = -c if neg else c
        if not mono:
            body = P.format_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{P.format_rational(mag)}*{mono}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


@dataclass(frozen=True)
class WeylIdeal:
    n: int
    generators: tuple[WeylElement, ...]

    @classmethod
    def of(cls, n: int, gens: Iterable[WeylElement]) -> "WeylIdeal":
        gens = tuple(g for g in gens if g)
        if any(g.n != n for g in gens):
            raise InputError("generators live in a different Weyl algebra")
        return cls(n, gens)

    def __add__(self, other: "WeylIdeal") -> "WeylIdeal":
        return WeylIdeal.of(self.n, self.generators + other.generators)


# ---------------------------------------------------------------------------
# 初始形式
# ---------------------------------------------------------------------------

def _weight_of(w: Sequence[int], e: Exp) -> int:
    return sum(a * b for a, b in zip(w, e))


def initial_form(p: WeylElement, weight: ProjectiveWeight) -> P.Poly:
    """in_L(P)：L-权重最大的项，作为 (x, ξ) 中的交换多项式。"""
    if not p:
        raise InputError("initial form of the zero operator")
    if weight.n != p.n:
        raise InputError(f"weight has n={weight.n}, operator has n={p.n}")
    w = weight.integer_vector()
    top = max(_weight_of(w, e) for e in p.terms)
    ring = phase_space_ring(p.n)
    return ring.from_dict({e: c for e, c in p.terms.items() if _weight_of(w, e) == top})


# ---------------------------------------------------------------------------
# 左 Gröbner 基
# ---------------------------------------------------------------------------

@dataclass
class _Basic:
    poly: dict[Exp, object]
    lm: Exp
    lc: object
    sugar: int


class _LeftBuchberger:
    """左理想的 Buchberger 算法：sugar 选对策略，链判据，完全约化。

    Weyl 代数中乘积判据不成立，只使用链判据。
    """

    def __init__(self, n: int, weight: Sequence[int], hom: bool) -> None:
        self.n = n
        self.w = tuple(weight)
        self.hom = hom
        self.basis: list[_Basic] = []
        self.pending: set[tuple[int, int]] = set()
        self._heap: list = []

    def key(self, e: Exp):
        return (_weight_of(self.w, e), sum(e), tuple(reversed([-x for x in e])))

    def lead(self, p: Mapping[Exp, object]) -> Exp:
        return max(p, key=self.key)

    @staticmethod
    def _divides(a: Exp, b: Exp) -> bool:
        return all(x <= y for x, y in zip(a, b))

    def _mono_times(self, mono: Exp, coeff, p: Mapping[Exp, object]) -> dict[Exp, object]:
        return _mul_terms(self.n, {mono: coeff}, p, self.hom)

    def normal_form(self, p: dict[Exp, object], basis: Sequence[_Basic]) -> dict[Exp, object]:
        f = dict(p)
        rest: dict[Exp, object] = {}
        while f:
            lm = self.lead(f)
            c = f[lm]
            for g in basis:
                if self._divides(g.lm, lm):
                    shift = tuple(x - y for x, y in zip(lm, g.lm))
                    sub = self._mono_times(shift, c / g.lc, g.poly)
                    for e, v in sub.items():
                        nv = f.get(e, QQ(0)) - v
                        if nv:
                            f[e] = nv
                        else:
                            f.pop(e, None)
                    break
            else:
                rest[lm] = c
                del f[lm]
        return rest

    def _add(self, p: dict[Exp, object], sugar: int) -> None:
        lm = self.lead(p)
        lc = p[lm]
        poly = {e: c / lc for e, c in p.items()}
        idx = len(self.basis)
        self.basis.append(_Basic(poly, lm, QQ(1), sugar))
        for k in range(idx):
            self._push_pair(k, idx)

    def _push_pair(self, i: int, j: int) -> None:
        gi, gj = self.basis[i], self.basis[j]
        lcm = tuple(max(a, b) for a, b in zip(gi.lm, gj.lm))
        sugar = max(gi.sugar + sum(lcm) - sum(gi.lm), gj.sugar + sum(lcm) - sum(gj.lm))
        self.pending.add((i, j))
        heapq.heappush(self._heap, (sugar, self.key(lcm), i, j, lcm))

    def _chain_skip(self, i: int, j: int, lcm: Exp) -> bool:
        for k, g in enumerate(self.basis):
            if k in (i, j) or not self._divides(g.lm, lcm):
                continue
            if (min(i, k), max(i, k)) not in self.pending and (min(j, k), max(j, k)) not in self.pending:
                return True
        return False

    def run(self, gens: Sequence[dict[Exp, object]]) -> list[dict[Exp, object]]:
        for g in gens:
            r = self.normal_form(g, self.basis)
            if r:
                self._add(r, max(sum(e) for e in r))
        steps = 0
        while self._heap:
            sugar, _, i, j, lcm = heapq.heappop(self._heap)
            self.pending.discard((i, j))
            if self._chain_skip(i, j, lcm):
                continue
            gi, gj = self.basis[i], self.basis[j]
            si = self._mono_times(tuple(a - b for a, b in zip(lcm, gi.lm)), QQ(1), gi.poly)
            sj = self._mono_times(tuple(a - b for a, b in zip(lcm, gj.lm)), QQ(1), gj.poly)
            spoly = dict(si)
            for e, v in sj.items():
                nv = spoly.get(e, QQ(0)) - v
                if nv:
                    spoly[e] = nv
                else:
                    spoly.pop(e, None)
            r = self.normal_form(spoly, self.basis)
            steps += 1
            if r:
                self._add(r, sugar)
                logger.debug("weylgb  basis={} pairs={} sugar={}", len(self.basis), len(self._heap), sugar)
        logger.debug("weylgb  done steps={} basis={}", steps, len(self.basis))
        return self._reduce()

    def _reduce(self) -> list[dict[Exp, object]]:
        minimal: list[_Basic] = []
        for idx, g in enumerate(self.basis):
            redundant = False
            for k, other in enumerate(self.basis):
                if k == idx or not self._divides(other.lm, g.lm):
                    continue
                if other.lm != g.lm or k < idx:
                    redundant = True
                    break
            if not redundant:
                minimal.append(g)
        out = []
        for idx, g in enumerate(minimal):
            others = [m for k, m in enumerate(minimal) if k != idx]
            r = self.normal_form(g.poly, others)
            lc = r[self.lead(r)]
            out.append({e: c / lc for e, c in r.items()})
        return out


def _homogenize(terms: Mapping[Exp, object]) -> dict[Exp, object]:
    top = max(sum(e) for e in terms)
    return {e + (top - sum(e),): c for e, c in terms.items()}


def _dehomogenize(terms: Mapping[Exp, object]) -> dict[Exp, object]:
    out: dict[Exp, object] = {}
    for e, c in terms.items():
        out[e[:-1]] = out.get(e[:-1], QQ(0)) + c
    return {e: c for e, c in out.items() if c}


@lru_cache(maxsize=128)
def left_groebner(ideal: WeylIdeal, weight: ProjectiveWeight) -> WeylIdeal:
    """关于 L 的左 Gröbner 基，其初始形式生成 gr^L(I)。"""
    n = ideal.n
    if weight.n != n:
        raise InputError(f"weight has n={weight.n}, ideal has n={n}")
    if not ideal.generators:
        return ideal
    w = weight.integer_vector()
    hom = weight.has_negative
    gens = [g.terms for g in ideal.generators]
    logger.debug("weylgb  n={} gens={} weight={} homogenized={}", n, len(gens), weight.describe(), hom)
    if hom:
        engine = _LeftBuchberger(n, w + (0,), True)
        basis = [_dehomogenize(g) for g in engine.run([_homogenize(g) for g in gens])]
    else:
        engine = _LeftBuchberger(n, w, False)
        basis = engine.run(gens)

    elements = [WeylElement(n, b) for b in basis if b]
    if any(e.is_constant for e in elements):
        return WeylIdeal(n, (WeylElement.constant(n, 1),))
    key = _LeftBuchberger(n, w, False).key
    elements.sort(key=lambda e: (key(max(e.terms, key=key)), format_weyl(e)), reverse=True)
    return WeylIdeal(n, tuple(elements))


def gr_ideal(ideal: WeylIdeal, weight: ProjectiveWeight) -> P.PolyIdeal:
    """gr^L(I) ⊆ Q[x, ξ]。"""
    ring = phase_space_ring(ideal.n)
    gb = left_groebner(ideal, weight)
    return P.PolyIdeal.of(ring, [initial_form(g, weight) for g in gb.generators])


def char_variety(ideal: WeylIdeal, weight: ProjectiveWeight) -> P.PolyIdeal:
    """Char^L(D/I) = Var(gr^L(I))，返回定义理想。"""
    return gr_ideal(ideal, weight)


def is_L_holonomic(ideal: WeylIdeal, weight: ProjectiveWeight) -> bool:
    return P.dimension(gr_ideal(ideal, weight)) in (-1, ideal.n)


def singular_locus(ideal: WeylIdeal) -> P.PolyIdeal:
    """(gr^F(I) : ⟨ξ⟩^∞) ∩ C[x]；⟨0⟩ 表示奇异轨迹是整个 X。"""
    n = ideal.n
    gr = gr_ideal(ideal, ProjectiveWeight.order_filtration(n))
    xs = P.poly_ring(x_names(n))
    if gr.is_unit():
        return P.unit_ideal(xs)
    ring = gr.ring
    pieces = []
    for xi in ring.gens[n:]:
        sat = P.saturate(gr, xi)
        pieces.append(P.restrict(P.eliminate(sat, xi_names(n)), x_names(n)))
    result = P.intersect_all(pieces, xs).reduced()
    logger.debug("sing    n={} gens={}", n, len(result.gens))
    return result


def divisorial_singular_locus(ideal: WeylIdeal) -> P.Poly:
    """奇异轨迹的余维 ≤ 1 部分；奇异轨迹为全空间时报错。"""
    sing = singular_locus(ideal)
    if sing.is_zero():
        raise InputError("singular locus is the whole space")
    return P.divisorial_part(sing)


def has_finite_rank(ideal: WeylIdeal) -> bool:
    return not singular_locus(ideal).is_zero()
