from __future__ import annotations

import pytest

from core.algebra import poly as P
from core.algebra.parsing import parse_poly
from core.errors import InputError

XY = ("x", "y")
PHASE3 = ("x1", "x2", "x3", "X1", "X2", "X3")


def test_unit_ideal_groebner(make_ideal):
    i = make_ideal(XY, "1")
    assert i.is_unit()
    assert P.dimension(i) == -1


def test_groebner_principal(make_ideal):
    i = make_ideal(("d1", "d2", "d3"), "d1*d3 - d2^2")
    assert [P.format_poly(g) for g in i.groebner()] == ["d2^2 - d1*d3"]


def test_groebner_closed_under_spairs(make_ideal):
    i = make_ideal(XY, "x^2 - y", "y^2")
    order = P.WeightOrder((1, 0))
    assert P.same_ideal(P.groebner_basis(i, order), i)


def test_saturate_monomial(make_ideal):
    i = make_ideal(XY, "x^2*y")
    x = i.ring.gens[0]
    assert P.same_ideal(P.saturate(i, x), make_ideal(XY, "y"))
    assert P.saturate(make_ideal(XY, "x"), x).is_unit()


def test_saturate_prime_unchanged(make_ideal):
    i = make_ideal(PHASE3, "X1*X3 - X2^2")
    prod = parse_poly("X1*X2*X3", i.ring)
    assert P.same_ideal(P.saturate(i, prod), i)


def test_saturate_by_ideal(make_ideal):
    names = ("x1", "x2", "X1", "X2")
    i = make_ideal(names, "x1*X1")
    # ⟨x1⟩ ∩ ⟨ξ1⟩ 的两个分量都不含 ⟨ξ1, ξ2⟩ 的幂
    assert P.same_ideal(P.saturate_ideal(i, make_ideal(names, "X1", "X2")), i)
    xy = make_ideal(XY, "x", "y")
    assert P.saturate_ideal(xy, xy).is_unit()
    assert P.same_ideal(P.saturate_ideal(make_ideal(XY, "x"), make_ideal(XY, "y")), make_ideal(XY, "x"))


def test_eliminate(make_ideal):
    i = make_ideal(("t", "x", "y"), "x - t", "y - t^2")
    e = P.restrict(P.eliminate(i, ["t"]), ("x", "y"))
    assert P.same_ideal(e, make_ideal(XY, "y - x^2"))
    assert P.eliminate(make_ideal(("t",), "t"), ["t"]).is_zero()
    kept = P.eliminate(make_ideal(XY, "x"), ["y"])
    assert P.same_ideal(kept, make_ideal(XY, "x"))


def test_dimension(make_ideal):
    assert P.dimension(make_ideal(XY, "x*y")) == 1
    conormal = make_ideal(PHASE3, "X1*X3 - X2^2", "x1*X1 + x2*X2 + x3*X3", "x2*X2 + 2*x3*X3")
    assert P.dimension(conormal) == 3
    assert P.dimension(P.PolyIdeal.of(P.poly_ring(XY), [])) == 2


def test_initial_ideal(make_ideal):
    i = make_ideal(XY, "x + y")
    assert P.same_ideal(P.initial_ideal(i, (1, 0)), make_ideal(XY, "x"))
    assert P.same_ideal(P.initial_ideal(i, (1, 1)), i)
    with pytest.raises(InputError):
        P.initial_ideal(i, (1,))


def test_divisorial_part(make_ideal):
    xyz = ("x", "y", "z")
    assert P.divisorial_part(make_ideal(xyz, "x^2*y", "x^2*z")) == parse_poly("x", P.poly_ring(xyz))
    assert P.divisorial_part(make_ideal(XY, "x", "y")) == 1
    assert P.format_poly(P.divisorial_part(make_ideal(("x1", "x2"), "x1"))) == "x1"
    with pytest.raises(InputError):
        P.divisorial_part(P.PolyIdeal.of(P.poly_ring(XY), []))


def test_radical_membership(make_ideal):
    ring = P.poly_ring(XY)
    assert P.radical_membership(parse_poly("x", ring), make_ideal(XY, "x^2"))
    assert not P.radical_membership(parse_poly("y", ring), make_ideal(XY, "x"))
    conormal = make_ideal(PHASE3, "X1*X3 - X2^2", "x1*X1 + x2*X2 + x3*X3", "x2*X2 + 2*x3*X3")
    assert P.radical_membership(parse_poly("x1*X1 + x2*X2 + x3*X3", conormal.ring), conormal)


def test_same_radical(make_ideal):
    assert P.same_radical(make_ideal(XY, "x^3", "y"), make_ideal(XY, "x", "y^2"))
    assert not P.same_radical(make_ideal(XY, "x"), make_ideal(XY, "x*y"))


def test_intersect_and_quotient(make_ideal):
    meet = P.intersect(make_ideal(XY, "x"), make_ideal(XY, "y"))
    assert P.same_ideal(meet, make_ideal(XY, "x*y"))
    x = meet.ring.gens[0]
    assert P.same_ideal(P.ideal_quotient(meet, x), make_ideal(XY, "y"))
    both = P.intersect_all([make_ideal(XY, "x"), make_ideal(XY, "y"), make_ideal(XY, "x + y")], meet.ring)
    assert P.same_ideal(both, make_ideal(XY, "x^2*y + x*y^2"))


def test_normalize_and_squarefree():
    ring = P.poly_ring(("x1", "x2", "x3"))
    f = parse_poly("-1/2*x2^2 + 2*x1*x3", ring)
    assert P.format_poly(P.normalize(f)) == "x2^2 - 4*x1*x3"
    g = parse_poly("x1^2*(x1 + x2)^3", ring)
    assert P.squarefree_part(g) == parse_poly("x1^2 + x1*x2", ring)
    assert P.multivariate_gcd(parse_poly("x1*x2", ring), parse_poly("x1*x3", ring)) == parse_poly("x1", ring)


def test_parse_errors():
    ring = P.poly_ring(XY)
    with pytest.raises(InputError):
        parse_poly("x +", ring)
    with pytest.raises(InputError):
        parse_poly("z", ring)
    with pytest.raises(InputError):
        parse_poly("x/0", ring)
    assert parse_poly("(x + y)^2", ring) == parse_poly("x^2 + 2*x*y + y^2", ring)
    assert parse_poly("x**2 - 3/2", ring) == parse_poly("x^2 - 3/2", ring)


def test_transfer_between_rings():
    small = P.poly_ring(("x2",))
    big = P.poly_ring(("x1", "x2"))
    f = parse_poly("x2^2 + 1", small)
    assert P.transfer(f, big) == parse_poly("x2^2 + 1", big)
    with pytest.raises(InputError):
        P.transfer(parse_poly("x1", big), small)


XYZ = ("x", "y", "z")


def random_ideal(rng) -> P.PolyIdeal:
    ring = P.poly_ring(XYZ)
    gens = []
    for _ in range(rng.randint(1, 3)):
        f = ring.zero
        for _ in range(rng.randint(1, 3)):
            term = ring(rng.choice([-2, -1, 1, 3]))
            for v in ring.gens:
                term *= v ** rng.randint(0, 2)
            f += term
        gens.append(f or ring.gens[0])
    return P.PolyIdeal.of(ring, gens)


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(100))
def test_saturation_is_idempotent(rng, seed):
    rng.seed(seed)
    i = random_ideal(rng)
    f = i.ring.one
    for v in rng.sample(list(i.ring.gens), rng.randint(1, 3)):
        f *= v
    once = P.saturate(i, f)
    assert P.same_ideal(P.saturate(once, f), once)
    assert all(once.contains(g) for g in i.gens)


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(100))
def test_initial_ideal_keeps_dimension(rng, seed):
    rng.seed(seed)
    i = random_ideal(rng)
    weight = [rng.randint(1, 5) for _ in XYZ]
    assert P.dimension(P.initial_ideal(i, weight)) == P.dimension(i)
