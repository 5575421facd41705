"""有理数域上的多元多项式与理想运算。

多项式直接使用 sympy 的 PolyElement（dict: 指数元组 → QQ 系数），
Gröbner 基调用 sympy.polys.groebnertools.groebner；权重序通过自定义
MonomialOrder 接入 PolyRing。本模块只负责理想层面的组合运算：
饱和、消元、交、商、维数、初始理想、因子部分与根式判定。
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from loguru import logger
from sympy import QQ, Rational, Symbol
from sympy.polys.groebnertools import groebner as _groebner
from sympy.polys.orderings import MonomialOrder, grevlex
from sympy.polys.rings import PolyElement, PolyRing

from core.errors import InputError

Poly = PolyElement

_AUX = "_aux"


class WeightOrder(MonomialOrder):
    """整数权重序，权重相同时按 grevlex 细分。权重必须非负。"""

    alias = "weight"
    is_global = True

    def __init__(self, weight: Sequence[int]) -> None:
        weight = tuple(int(w) for w in weight)
        if any(w < 0 for w in weight):
            raise InputError(f"weight order needs nonnegative weights, got {weight}")
        self.weight = weight

    def __call__(self, monomial: Sequence[int]):
        return (
            sum(w * e for w, e in zip(self.weight, monomial)),
            sum(monomial),
            tuple(reversed([-e for e in monomial])),
        )

    def __repr__(self) -> str:
        return f"WeightOrder({self.weight})"

    __str__ = __repr__

    # PolyRing 按 order 缓存环，权重必须参与比较
    def __eq__(self, other: object) -> bool:
        return isinstance(other, WeightOrder) and other.weight == self.weight

    def __hash__(self) -> int:
        return hash((WeightOrder, self.weight))


def integer_weights(weight: Sequence) -> tuple[int, ...]:
    """有理权重按公分母放大为整数（序不变）。"""
    values = [Rational(w) for w in weight]
    scale = math.lcm(*(int(v.q) for v in values)) if values else 1
    return tuple(int(v * scale) for v in values)


@lru_cache(maxsize=None)
def poly_ring(names: tuple[str, ...], order: MonomialOrder = grevlex) -> PolyRing:
    return PolyRing([Symbol(n) for n in names], QQ, order)


def ring_names(ring: PolyRing) -> tuple[str, ...]:
    return tuple(str(s) for s in ring.symbols)


def reorder(f: Poly, ring: PolyRing) -> Poly:
    """同一组变量、不同单项式序之间搬运多项式。"""
    return ring.from_dict(dict(f))


def transfer(f: Poly, ring: PolyRing) -> Poly:
    """按变量名把多项式搬到另一个环；缺失变量必须不出现。"""
    target = {name: i for i, name in enumerate(ring_names(ring))}
    src = ring_names(f.ring)
    out: dict[tuple[int, ...], object] = {}
    for monom, coeff in f.items():
        exp = [0] * ring.ngens
        for i, e in enumerate(monom):
            if not e:
                continue
            if src[i] not in target:
                raise InputError(f"variable {src[i]} does not exist in target ring")
            exp[target[src[i]]] = e
        out[tuple(exp)] = coeff
    return ring.from_dict(out)


@dataclass(frozen=True)
class PolyIdeal:
    ring: PolyRing
    gens: tuple[Poly, ...]
    _gb_cache: dict = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def of(cls, ring: PolyRing, gens: Iterable[Poly]) -> "PolyIdeal":
        gens = tuple(g if g.ring == ring else transfer(g, ring) for g in gens)
        return cls(ring, tuple(g for g in gens if g))

    @property
    def names(self) -> tuple[str, ...]:
        return ring_names(self.ring)

    def groebner(self, order: MonomialOrder = grevlex) -> list[Poly]:
        """约化 Gröbner 基（在带有该序的环中），结果按首项降序。"""
        if order not in self._gb_cache:
            self._gb_cache[order] = _compute_groebner(self.ring, self.gens, order)
        return self._gb_cache[order]

    def is_unit(self) -> bool:
        gb = self.groebner()
        return len(gb) == 1 and gb[0].is_ground

    def is_zero(self) -> bool:
        return not self.gens

    def contains(self, f: Poly) -> bool:
        if not f:
            return True
        gb = self.groebner()
        if not gb:
            return False
        g = reorder(transfer(f, self.ring), gb[0].ring)
        return not g.rem(gb)

    def __add__(self, other: "PolyIdeal") -> "PolyIdeal":
        return PolyIdeal.of(self.ring, self.gens + tuple(transfer(g, self.ring) for g in other.gens))

    def reduced(self) -> "PolyIdeal":
        """以约化 Gröbner 基作为生成元的同一理想（grevlex）。"""
        return PolyIdeal.of(self.ring, [reorder(g, self.ring) for g in self.groebner()])


def _compute_groebner(ring: PolyRing, gens: Sequence[Poly], order: MonomialOrder) -> list[Poly]:
    ordered = poly_ring(ring_names(ring), order)
    polys = [reorder(g, ordered) for g in gens if g]
    if not polys:
        return []
    logger.debug("groebner vars={} gens={} order={}", ring.ngens, len(polys), order)
    basis = _groebner(polys, ordered, method="buchberger")
    basis = [g.monic() for g in basis if g]
    basis.sort(key=lambda g: order(g.LM), reverse=True)
    return basis


def ideal(ring: PolyRing, gens: Iterable[Poly]) -> PolyIdeal:
    return PolyIdeal.of(ring, gens)


def unit_ideal(ring: PolyRing) -> PolyIdeal:
    return PolyIdeal.of(ring, [ring.one])


def same_ideal(a: PolyIdeal, b: PolyIdeal) -> bool:
    return all(a.contains(g) for g in b.gens) and all(b.contains(g) for g in a.gens)


# ---------------------------------------------------------------------------
# 规范化与 gcd
# ---------------------------------------------------------------------------

def normalize(f: Poly) -> Poly:
    """整系数本原化，首项系数为正（按环的单项式序）。"""
    if not f:
        return f
    den = math.lcm(*(int(c.denominator) for c in f.values()))
    g = f * den
    cont = math.gcd(*(int(c.numerator) for c in g.values()))
    g = g * QQ(1, cont)
    if g.LC < 0:
        g = -g
    return g


def multivariate_gcd(f: Poly, g: Poly) -> Poly:
    if not f:
        return normalize(g)
    if not g:
        return normalize(f)
    return normalize(f.gcd(g))


def squarefree_part(f: Poly) -> Poly:
    if not f or f.is_ground:
        return normalize(f)
    return normalize(f.sqf_part())


# ---------------------------------------------------------------------------
# 消元、饱和、交、商
# ---------------------------------------------------------------------------

def groebner_basis(i: PolyIdeal, order: MonomialOrder = grevlex) -> PolyIdeal:
    basis = i.groebner(order)
    ring = basis[0].ring if basis else poly_ring(i.names, order)
    return PolyIdeal(ring, tuple(basis))


def eliminate(i: PolyIdeal, names: Iterable[str]) -> PolyIdeal:
    """I ∩ (不含 names 的子环)，结果仍放在原环中。"""
    names = set(names)
    idx = [k for k, n in enumerate(i.names) if n in names]
    if not idx:
        return i
    order = WeightOrder([1 if k in idx else 0 for k in range(i.ring.ngens)])
    kept = [g for g in i.groebner(order) if all(m[k] == 0 for m in g.keys() for k in idx)]
    return PolyIdeal.of(i.ring, [reorder(g, i.ring) for g in kept])


def restrict(i: PolyIdeal, names: Sequence[str]) -> PolyIdeal:
    """把只含 names 变量的理想搬到较小的环 poly_ring(names)。"""
    ring = poly_ring(tuple(names))
    return PolyIdeal.of(ring, [transfer(g, ring) for g in i.gens])


def _with_aux(ring: PolyRing) -> tuple[PolyRing, Poly]:
    ext = poly_ring(ring_names(ring) + (_AUX,))
    return ext, ext.gens[-1]


def _lift(f: Poly, ext: PolyRing) -> Poly:
    return ext.from_dict({m + (0,): c for m, c in f.items()})


def _drop_aux(i: PolyIdeal, ring: PolyRing) -> PolyIdeal:
    eliminated = eliminate(i, [_AUX])
    return PolyIdeal.of(ring, [ring.from_dict({m[:-1]: c for m, c in g.items()}) for g in eliminated.gens])


def saturate(i: PolyIdeal, f: Poly) -> PolyIdeal:
    """I : f^∞，用辅助变量 t：(I + ⟨1 − t·f⟩) ∩ R。"""
    f = transfer(f, i.ring)
    if not f:
        raise InputError("cannot saturate by the zero polynomial")
    if f.is_ground:
        return i
    ext, t = _with_aux(i.ring)
    j = PolyIdeal.of(ext, [_lift(g, ext) for g in i.gens] + [1 - t * _lift(f, ext)])
    logger.debug("saturate vars={} gens={}", i.ring.ngens, len(i.gens))
    return _drop_aux(j, i.ring)


def intersect(a: PolyIdeal, b: PolyIdeal) -> PolyIdeal:
    """I ∩ J = (t·I + (1−t)·J) ∩ R。"""
    ring = a.ring
    if a.is_zero() or b.is_zero():
        return PolyIdeal.of(ring, [])
    ext, t = _with_aux(ring)
    gens = [t * _lift(g, ext) for g in a.gens]
    gens += [(1 - t) * _lift(transfer(g, ring), ext) for g in b.gens]
    return _drop_aux(PolyIdeal.of(ext, gens), ring)


def intersect_all(ideals: Sequence[PolyIdeal], ring: PolyRing) -> PolyIdeal:
    if not ideals:
        return unit_ideal(ring)
    acc = ideals[0]
    for nxt in ideals[1:]:
        acc = intersect(acc, nxt)
    return acc


def ideal_quotient(i: PolyIdeal, f: Poly) -> PolyIdeal:
    """I : f = (I ∩ ⟨f⟩) / f。"""
    f = transfer(f, i.ring)
    if not f:
        return unit_ideal(i.ring)
    meet = intersect(i, PolyIdeal.of(i.ring, [f]))
    return PolyIdeal.of(i.ring, [g.exquo(f) for g in meet.gens])


def saturate_ideal(i: PolyIdeal, j: PolyIdeal) -> PolyIdeal:
    """I : J^∞ = ⋂_k (I : f_k^∞)，f_k 取 J 的生成元。"""
    gens = [transfer(g, i.ring) for g in j.gens if g]
    if not gens:
        return unit_ideal(i.ring)
    if any(g.is_ground for g in gens):
        return i
    return intersect_all([saturate(i, g) for g in gens], i.ring)


# ---------------------------------------------------------------------------
# 维数、初始理想、因子部分、根式
# ---------------------------------------------------------------------------

def dimension(i: PolyIdeal) -> int:
    """Krull 维数：首项理想的最大独立变量集；单位理想记为 −1。"""
    n = i.ring.ngens
    basis = i.groebner()
    if not basis:
        return n
    if any(g.is_ground for g in basis):
        return -1
    supports = [frozenset(k for k, e in enumerate(g.LM) if e) for g in basis]
    for size in range(n, -1, -1):
        for subset in itertools.combinations(range(n), size):
            s = set(subset)
            if not any(sup <= s for sup in supports):
                return size
    return 0


def initial_form(f: Poly, weight: Sequence[int]) -> Poly:
    best = max(sum(w * e for w, e in zip(weight, m)) for m in f.keys())
    return f.ring.from_dict({m: c for m, c in f.items()
                             if sum(w * e for w, e in zip(weight, m)) == best})


def initial_ideal(i: PolyIdeal, weight: Sequence) -> PolyIdeal:
    w = integer_weights(weight)
    if len(w) != i.ring.ngens:
        raise InputError(f"weight has {len(w)} entries, ring has {i.ring.ngens} variables")
    basis = i.groebner(WeightOrder(w))
    return PolyIdeal.of(i.ring, [reorder(initial_form(g, w), i.ring) for g in basis])


def divisorial_part(i: PolyIdeal) -> Poly:
    """约化 GB 的 gcd 的无平方部分；余维 ≥ 2 时返回 1。"""
    basis = [reorder(g, i.ring) for g in i.groebner()]
    if not basis:
        raise InputError("the zero ideal has no divisorial part")
    acc = basis[0]
    for g in basis[1:]:
        if acc.is_ground:
            break
        acc = acc.gcd(g)
    if acc.is_ground:
        return i.ring.one
    return squarefree_part(acc)


def radical_membership(f: Poly, i: PolyIdeal) -> bool:
    """Rabinowitsch：f ∈ √I ⇔ 1 ∈ I + ⟨1 − t·f⟩。"""
    f = transfer(f, i.ring)
    if not f:
        return True
    ext, t = _with_aux(i.ring)
    j = PolyIdeal.of(ext, [_lift(g, ext) for g in i.gens] + [1 - t * _lift(f, ext)])
    return j.is_unit()


def radical_contains_ideal(i: PolyIdeal, j: PolyIdeal) -> bool:
    """J ⊆ √I，即 Var(I) ⊆ Var(J)。"""
    return all(radical_membership(g, i) for g in j.gens)


def same_radical(a: PolyIdeal, b: PolyIdeal) -> bool:
    return radical_contains_ideal(a, b) and radical_contains_ideal(b, a)


# ---------------------------------------------------------------------------
# 输出
# ---------------------------------------------------------------------------

def format_rational(c) -> str:
    num, den = int(c.numerator), int(c.denominator)
    return str(num) if den == 1 else f"{num}/{den}"


def format_monomial(names: Sequence[str], monom: Sequence[int]) -> str:
    parts = []
    for name, e in zip(names, monom):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(f: Poly) -> str:
    """规范输出：按环的单项式序降序，系数写成 p/q。"""
    if not f:
        return "0"
    names = ring_names(f.ring)
    out = []
    for monom, coeff in f.terms():
        mono = format_monomial(names, monom)
        neg = coeff < 0
        mag = -coeff if neg else coeff
        if not mono:
            body = format_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_rational(mag)}*{mono}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)
