from __future__ import annotations

import pytest
from sympy import Rational

from core.algebra.exact import IntMatrix, PointedMatrix, rational_rank
from core.algebra.weyl import ProjectiveWeight
from core.errors import InputError
from core.gkz.geom import (
    Face,
    UmbrellaChart,
    choose_epsilon,
    facets,
    is_pyramid,
    l_umbrella,
    pyramid_core,
    rank_critical,
)


def members(umbrella) -> list[tuple[int, ...]]:
    return [f.one_based for f in umbrella.faces]


def test_a2_order_filtration(a2_pointed):
    u = l_umbrella(a2_pointed, ProjectiveWeight.order_filtration(3))
    assert members(u) == [(), (1,), (3,), (1, 2, 3)]
    assert [f.one_based for f in facets(u)] == [(1, 2, 3)]
    assert [f.rank for f in u.faces] == [0, 1, 1, 2]


def test_a2_middle_weight_hides_column(a2_pointed, middle_weight):
    u = l_umbrella(a2_pointed, middle_weight)
    assert members(u) == [(), (1,), (3,), (1, 3)]
    assert [f.one_based for f in u.facets] == [(1, 3)]
    assert u.is_facet(Face.of(a2_pointed.matrix, [0, 2]))


def test_single_column():
    pm = PointedMatrix.of(IntMatrix.from_rows([[1]]))
    u = l_umbrella(pm, ProjectiveWeight.order_filtration(1))
    assert members(u) == [(), (1,)]
    assert [f.one_based for f in u.facets] == [(1,)]


def test_repeated_columns_share_a_point():
    pm = PointedMatrix.of(IntMatrix.from_rows([[1, 1]]))
    u = l_umbrella(pm, ProjectiveWeight.order_filtration(2))
    assert members(u) == [(), (1, 2)]


def test_umbrella_independent_of_chart(a2_pointed, middle_weight):
    base = members(l_umbrella(a2_pointed, middle_weight))
    for h in [(1, 0), (2, -Rational(1, 4)), (3, 1)]:
        assert members(l_umbrella(a2_pointed, middle_weight, h=h)) == base
    assert members(l_umbrella(a2_pointed, middle_weight, epsilon=Rational(1, 8))) == base


def test_chart_condition(a2_pointed):
    f = ProjectiveWeight.order_filtration(3)
    eps = choose_epsilon(a2_pointed, f, (1, 0))
    assert eps == 1
    chart = UmbrellaChart(a2_pointed, f, (Rational(1), Rational(0)), eps)
    points = chart.points()
    assert points[0] == (1, 0, 0)
    assert points[2] == (Rational(1, 2), Rational(1, 2), Rational(1, 2))
    with pytest.raises(InputError, match="chart condition"):
        UmbrellaChart(a2_pointed, ProjectiveWeight((1, 1, 1), (0, 0, 0)), (Rational(0), Rational(1)), Rational(1))


def test_weight_length_mismatch(a2_pointed):
    with pytest.raises(InputError):
        l_umbrella(a2_pointed, ProjectiveWeight.order_filtration(2))


@pytest.mark.parametrize(
    "face, expected",
    [((0, 1, 2), False), ((0, 1), True), ((), False), ((0,), True)],
)
def test_pyramid(a2, face, expected):
    assert is_pyramid(face, a2) is expected


@pytest.mark.parametrize(
    "face, core",
    [((0, 1, 2), (1, 2, 3)), ((0, 1), ()), ((0,), ()), ((1,), ())],
)
def test_pyramid_core(a2, face, core):
    assert pyramid_core(face, a2).one_based == core


def test_pyramid_core_order_independent(rng):
    m = IntMatrix.from_rows([[1, 1, 1, 1, 1], [0, 1, 2, 0, 3], [0, 0, 0, 1, 0]])
    face = (0, 1, 2, 3, 4)
    assert rank_critical(face, m) == (3,)
    cores = set()
    for _ in range(8):
        order = list(face)
        rng.shuffle(order)
        cores.add(pyramid_core(face, m, order).members)
    assert cores == {(0, 1, 2, 4)}


@pytest.mark.parametrize("seed", range(5))
def test_random_order_filtration_faces(rng, seed):
    rng.seed(seed)
    n = rng.randint(2, 5)
    rows = [[1] * n, [rng.randint(0, 4) for _ in range(n)]]
    pm = PointedMatrix.of(IntMatrix.from_rows(rows))
    u = l_umbrella(pm, ProjectiveWeight.order_filtration(n))
    faces = {f.members for f in u.faces}
    assert () in faces
    top = facets(u)
    assert all(f.rank == rational_rank(rows) for f in top)
    # 面的交仍是面
    for a in faces:
        for b in faces:
            assert tuple(sorted(set(a) & set(b))) in faces


def random_pointed(rng) -> PointedMatrix:
    n = rng.randint(2, 5)
    rows = [[1] * n, [rng.randint(0, 4) for _ in range(n)]]
    if rng.random() < 0.3:
        rows.append([rng.randint(-1, 2) for _ in range(n)])
    return PointedMatrix.of(IntMatrix.from_rows(rows))


def random_weight(rng, n: int) -> ProjectiveWeight:
    c = rng.randint(1, 2)
    lx = [rng.randint(-1, 2) for _ in range(n)]
    ld = [c - a for a in lx]
    return ProjectiveWeight(lx, ld)


@pytest.mark.parametrize("seed", range(100))
def test_umbrella_chart_independence_random(rng, seed):
    rng.seed(seed)
    pm = random_pointed(rng)
    weight = random_weight(rng, pm.n)
    base = members(l_umbrella(pm, weight))
    h = [2 * Rational(c) for c in pm.certificate]
    shifted = [c + Rational(rng.randint(-1, 1), 4) for c in h]
    if all(sum(a * b for a, b in zip(col, shifted)) > 0 for col in pm.matrix.columns):
        h = shifted
    eps = choose_epsilon(pm, weight, h) / 4
    assert members(l_umbrella(pm, weight, h=h, epsilon=eps)) == base
