"""结果序列化：计算结果 → JSON 报告。

约定：
  - 有理数写成最简 "p/q"，整数写成 "p"
  - 多项式按所在环的单项式序规范输出
  - 面与列号一律 1 起始
  - dumps 使用 sort_keys + indent=2，相同输入得到逐字节相同的输出
"""

from __future__ import annotations

import json
from typing import Iterable, Sequence

from sympy import Rational

from core.algebra import poly as P
from core.algebra.exact import IntMatrix, Lattice
from core.algebra.weyl import ProjectiveWeight, WeylIdeal, format_weyl
from core.gkz.binom import BinomialPrime, ComponentAnalysis, HolonomicityVerdict, QuasidegreeSet
from core.gkz.geom import Face, Umbrella, is_pyramid, pyramid_core
from core.gkz.hyper import ConormalComponent, Discriminant, TorusWitness


def rational(value) -> str:
    r = Rational(value)
    return str(r.p) if r.q == 1 else f"{r.p}/{r.q}"


def vector(values: Iterable) -> list[str]:
    return [rational(v) for v in values]


def matrix(m: IntMatrix) -> list[list[str]]:
    return m.to_json()


def face(f: Face) -> list[int]:
    return list(f.one_based)


def weight(w: ProjectiveWeight) -> dict:
    return {"L_x": vector(w.lx), "L_d": vector(w.ld)}


def ideal(i: P.PolyIdeal) -> list[str]:
    return [P.format_poly(g) for g in i.gens]


def umbrella(u: Umbrella) -> dict:
    top = u.facets
    a = u.chart.matrix.matrix
    return {
        "chart": {"h": vector(u.chart.h), "epsilon": rational(u.chart.epsilon)},
        "weight": weight(u.chart.weight),
        "faces": [
            {
                "members": face(f),
                "rank": f.rank,
                "facet": f in top,
                "pyramid": is_pyramid(f, a),
                "core": face(pyramid_core(f, a)),
            }
            for f in u.faces
        ],
    }


def component(c: ConormalComponent) -> dict:
    return {"face": face(c.face), "dimension": c.dimension, "ideal": ideal(c.ideal)}


def components(cs: Sequence[ConormalComponent]) -> list[dict]:
    return [component(c) for c in cs]


def discriminant(d: Discriminant) -> dict:
    return {
        "columns": [c + 1 for c in d.columns],
        "matrix": matrix(d.matrix),
        "poly": P.format_poly(d.poly),
        "trivial": d.trivial,
    }


def lattice(lat: Lattice) -> list[list[int]]:
    return [list(b) for b in lat.basis]


def prime(p: BinomialPrime, kind: str) -> dict:
    return {
        "cell": [i + 1 for i in p.sigma],
        "lattice": lattice(p.lattice),
        "rescaling": vector(p.gamma),
        "kind": kind,
    }


def quasidegree_set(q: QuasidegreeSet) -> list[dict]:
    return [{"offset": vector(o), "directions": [vector(d) for d in dirs]} for o, dirs in q.pieces]


def analysis(c: ComponentAnalysis) -> dict:
    return {
        "cell": [i + 1 for i in c.component.sigma],
        "ideal": ideal(c.component.ideal),
        "primes": [prime(p, k) for p, k in zip(c.primes, c.kinds)],
        "quasidegrees": quasidegree_set(c.quasidegrees),
        "several_primes": c.overapproximated,
    }


def verdict(v: HolonomicityVerdict) -> dict:
    return {
        "holonomic": v.holonomic,
        "andean_arrangement": quasidegree_set(v.arrangement),
        "components": [analysis(c) for c in v.components],
        "overapproximated": v.overapproximated,
    }


def witness(w: TorusWitness) -> dict:
    return {
        "facet": face(w.facet),
        "dimension": w.dimension,
        "expected_dimension": w.expected_dimension,
        "confirmed": w.confirmed,
        "tried": [face(f) for f in w.tried],
        "ideal": ideal(w.ideal),
    }


def weyl_ideal(i: WeylIdeal) -> list[str]:
    return [format_weyl(g) for g in i.generators]


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> dict:
    return json.loads(text)
