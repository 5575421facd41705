from __future__ import annotations

import pytest

from core.algebra import poly as P
from core.algebra.exact import IntMatrix, PointedMatrix
from core.algebra.parsing import parse_poly
from core.algebra.weyl import ProjectiveWeight, divisorial_singular_locus, gr_ideal, parse_weyl, phase_space_ring
from core.errors import InputError
from core.gkz.geom import Face
from core.gkz.hyper import (
    HypergeometricSystem,
    TruncatedSystem,
    a_discriminant,
    char_variety_gkz,
    conormal_closure_ideal,
    d_ring,
    discriminant_factors,
    distinct_factors,
    euler_operators,
    format_product,
    is_homogeneous_matrix,
    sing_locus_gkz,
    toric_ideal,
    torus_component_witness,
    truncated_char_component,
    union_ideal,
    x_ring,
)

F3 = ProjectiveWeight.order_filtration(3)


def phase(n: int, *texts: str) -> P.PolyIdeal:
    ring = phase_space_ring(n)
    return P.PolyIdeal.of(ring, [parse_poly(t, ring) for t in texts])


def xpoly(n: int, text: str) -> P.Poly:
    return parse_poly(text, x_ring(n))


# --- toric 理想与 Euler 算子 -----------------------------------------------------

def test_toric_ideals(a1, a2):
    ring = d_ring(3)
    assert P.same_ideal(toric_ideal(a2), P.PolyIdeal.of(ring, [parse_poly("d1*d3 - d2^2", ring)]))
    assert toric_ideal(IntMatrix.from_rows([[1]])).is_zero()
    expected = P.PolyIdeal.of(ring, [parse_poly("d1 - d2", ring), parse_poly("d2 - d3", ring)])
    assert P.same_ideal(toric_ideal(a1), expected)


def test_toric_ideal_needs_saturation():
    cubic = IntMatrix.from_rows([[1, 1, 1, 1], [0, 1, 2, 3]])
    ring = d_ring(4)
    i = toric_ideal(cubic)
    for text in ("d1*d3 - d2^2", "d2*d4 - d3^2", "d1*d4 - d2*d3"):
        assert i.contains(parse_poly(text, ring))


def test_euler_operators(a2):
    ops = euler_operators(a2, (0, 0))
    assert ops == [parse_weyl("x1*d1 + x2*d2 + x3*d3", 3), parse_weyl("x2*d2 + 2*x3*d3", 3)]
    assert euler_operators(IntMatrix.from_rows([[1]]), (5,)) == [parse_weyl("x1*d1 - 5", 1)]
    assert euler_operators(IntMatrix.from_rows([[1, 1]]), ("1/2",)) == [parse_weyl("x1*d1 + x2*d2 - 1/2", 2)]
    with pytest.raises(InputError):
        euler_operators(a2, (1,))


def test_hypergeometric_ideal(a2_pointed):
    system = HypergeometricSystem(a2_pointed, ("1/2", "1/3"))
    assert system.n == 3
    gens = system.ideal.generators
    assert parse_weyl("d2^2 - d1*d3", 3) in gens
    assert len(gens) == 3


# --- 余法闭包与特征簇 ------------------------------------------------------------

def test_conormal_full_face(a2):
    comp = conormal_closure_ideal(a2, Face.of(a2, [0, 1, 2]))
    # 闭包 {(u(t²,−2st,s²), (s²,st,t²))}：x 落在判别式锥 x2² = 4x1x3 上
    generators = phase(3, "X1*X3 - X2^2", "x1*X1 + x2*X2 + x3*X3", "x2*X2 + 2*x3*X3")
    assert all(comp.ideal.contains(g) for g in generators.gens)
    closure = phase(3, "x2^2 - 4*x1*x3", "x1*X1 - x3*X3", "x2*X1 + 2*x3*X2", "x2*X3 + 2*x1*X2")
    assert all(P.radical_membership(g, comp.ideal) for g in closure.gens)
    assert not P.same_radical(comp.ideal, generators)
    assert comp.dimension == 3


def test_conormal_vertex_and_empty(a2):
    comp = conormal_closure_ideal(a2, Face.of(a2, [0]))
    assert P.same_ideal(comp.ideal, phase(3, "X2", "X3", "x1"))
    assert comp.dimension == 3
    empty = conormal_closure_ideal(a2, Face.of(a2, []))
    assert P.same_ideal(empty.ideal, phase(3, "X1", "X2", "X3"))
    assert empty.label == "{}"


def test_char_variety_a2(a2_pointed):
    components = char_variety_gkz(a2_pointed, F3)
    assert [c.face.one_based for c in components] == [(), (1,), (3,), (1, 2, 3)]
    assert all(c.dimension == 3 for c in components)


def test_char_variety_single_column():
    pm = PointedMatrix.of(IntMatrix.from_rows([[1]]))
    components = char_variety_gkz(pm, ProjectiveWeight.order_filtration(1))
    assert P.same_ideal(components[0].ideal, phase(1, "X1"))
    assert P.same_ideal(components[1].ideal, phase(1, "x1"))


def test_char_variety_middle_weight(a2_pointed, middle_weight):
    components = char_variety_gkz(a2_pointed, middle_weight)
    assert [c.face.one_based for c in components] == [(), (1,), (3,), (1, 3)]
    top = components[-1]
    assert top.ideal.contains(parse_poly("X2", top.ideal.ring))


def test_char_variety_independent_of_beta(a2_pointed):
    # 组件只依赖 (A, L)；与 gr 理想的根式比对
    union = union_ideal(char_variety_gkz(a2_pointed, F3), 3)
    for beta in [(0, 0), ("1/2", "1/3")]:
        gr = gr_ideal(HypergeometricSystem(a2_pointed, beta).ideal, F3)
        assert P.same_radical(gr, union)


def middle_pattern(n: int) -> ProjectiveWeight:
    ld = [0] + [1] * (n - 2) + [0] if n > 2 else [0, 1]
    return ProjectiveWeight([1 - x for x in ld], ld)


@pytest.mark.slow
@pytest.mark.parametrize("rows", [[[1, 1, 1], [0, 1, 2]], [[1, 1], [0, 1]], [[1, 1, 1, 1], [0, 1, 2, 3]]])
@pytest.mark.parametrize("pattern", ["ones", "middle"])
def test_char_variety_matches_weyl_route(rows, pattern):
    pm = PointedMatrix.of(IntMatrix.from_rows(rows))
    n = pm.n
    weight = ProjectiveWeight.order_filtration(n) if pattern == "ones" else middle_pattern(n)
    union = union_ideal(char_variety_gkz(pm, weight), n)
    gr = gr_ideal(HypergeometricSystem(pm, ("1/2", "1/3")).ideal, weight)
    assert P.same_radical(gr, union)


# --- 判别式 ---------------------------------------------------------------------

def test_a2_discriminant(a2):
    disc = a_discriminant(a2)
    assert P.format_poly(disc.poly) == "x2^2 - 4*x1*x3"
    assert not disc.trivial


def test_single_column_discriminant():
    disc = a_discriminant(IntMatrix.from_rows([[2], [1]]), [1], 3)
    assert disc.poly == xpoly(3, "x2")


def test_trivial_discriminant():
    assert a_discriminant(IntMatrix.from_rows([[1, 1], [0, 1]])).trivial


def test_negative_entries_are_shifted():
    m = IntMatrix.from_rows([[1, 1, 1], [-1, 0, 1]])
    assert P.format_poly(a_discriminant(m).poly) == "x2^2 - 4*x1*x3"


def test_sing_locus_gkz(a2_pointed):
    product = sing_locus_gkz(a2_pointed)
    assert product == P.normalize(xpoly(3, "x1*x3*(x2^2 - 4*x1*x3)"))
    factors = distinct_factors(d.poly for d in discriminant_factors(a2_pointed))
    assert format_product(factors) == "x1*x3*(x2^2-4*x1*x3)"


def test_sing_locus_identity():
    pm = PointedMatrix.of(IntMatrix.identity(2))
    assert sing_locus_gkz(pm) == xpoly(2, "x1*x2")
    pm1 = PointedMatrix.of(IntMatrix.from_rows([[1]]))
    assert sing_locus_gkz(pm1) == xpoly(1, "x1")
    assert format_product([]) == "1"


def test_homogeneous_matrix(a2):
    assert is_homogeneous_matrix(a2)
    assert not is_homogeneous_matrix(IntMatrix.from_rows([[1, 2]]))


@pytest.mark.slow
def test_sing_locus_matches_weyl_route(a2_pointed):
    direct = divisorial_singular_locus(HypergeometricSystem(a2_pointed, ("1/2", "1/3")).ideal)
    assert P.normalize(P.transfer(direct, x_ring(3))) == sing_locus_gkz(a2_pointed)


# --- 截断系统 -------------------------------------------------------------------

def test_truncated_system_validation(a2):
    system = TruncatedSystem.of(a2, 1, ("1/2",))
    assert (system.n, system.k, system.expected_dimension) == (3, 2, 4)
    assert system.matrix == IntMatrix.from_rows([[1, 1, 1]])
    with pytest.raises(InputError):
        TruncatedSystem.of(a2, 2, (0, 0))
    with pytest.raises(InputError):
        TruncatedSystem.of(a2, 1, (0, 0))


def test_truncated_full_facet(a2):
    system = TruncatedSystem.of(a2, 1, ("1/2",))
    comp = truncated_char_component(system, Face.of(a2, [0, 1, 2]), F3)
    assert comp.dimension == 4
    assert P.same_ideal(comp.ideal, phase(3, "X1*X3 - X2^2", "x1*X1 + x2*X2 + x3*X3"))
    shifted = truncated_char_component(TruncatedSystem.of(a2, 1, (7,)), Face.of(a2, [0, 1, 2]), F3)
    assert P.same_ideal(shifted.ideal, comp.ideal)


def test_truncated_component_requires_facet(a2):
    system = TruncatedSystem.of(a2, 1, ("1/2",))
    with pytest.raises(InputError, match="not a facet"):
        truncated_char_component(system, Face.of(a2, [0]), F3)


def test_truncated_middle_weight_facet(a2, middle_weight):
    system = TruncatedSystem.of(a2, 1, ("1/2",))
    comp = truncated_char_component(system, Face.of(a2, [0, 2]), middle_weight)
    assert comp.dimension == 4
    assert comp.ideal.contains(parse_poly("X2", comp.ideal.ring))


TRUNCATED_WEIGHTS = [
    F3,
    ProjectiveWeight((1, 0, 1), (0, 1, 0)),
    ProjectiveWeight((0, 1, 0), (1, 0, 1)),
    ProjectiveWeight((-1, 0, 1), (2, 1, 0)),
]


@pytest.mark.parametrize("weight", TRUNCATED_WEIGHTS)
@pytest.mark.parametrize("beta", ["0", "1", "1/2"])
def test_torus_witness(a2, weight, beta):
    system = TruncatedSystem.of(a2, 1, (beta,))
    witness = torus_component_witness(system, weight)
    assert witness.confirmed
    assert witness.dimension == 4
    assert witness.tried[-1] == witness.facet


def test_torus_witness_on_pyramid_facet(a2, middle_weight):
    # facet {1,3} 的分量含 ξ2，仍与 T*(C*)^3 相交
    system = TruncatedSystem.of(a2, 1, ("1/2",))
    witness = torus_component_witness(system, middle_weight)
    assert witness.facet == Face.of(a2, [0, 2])
    assert witness.ideal.contains(parse_poly("X2", witness.ideal.ring))
    assert P.same_ideal(witness.ideal, phase(3, "x1*X1 + x3*X3", "X2"))


# --- 随机性质 -------------------------------------------------------------------

def random_curve(rng, low: int = 2, high: int = 4) -> IntMatrix:
    n = rng.randint(low, high)
    return IntMatrix.from_rows([[1] * n, sorted(rng.sample(range(6), n))])


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(100))
def test_conormal_components_have_dimension_n(rng, seed):
    rng.seed(seed)
    a = random_curve(rng)
    n = a.ncols
    lx = [rng.randint(-1, 1) for _ in range(n)]
    weight = ProjectiveWeight(lx, [1 - x for x in lx])
    for comp in char_variety_gkz(PointedMatrix.of(a), weight):
        assert comp.dimension == n


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(100))
def test_discriminant_column_shift_invariance(rng, seed):
    rng.seed(seed)
    a = random_curve(rng, 2, 3)
    m = [rng.randint(-2, 2), rng.randint(-2, 2)]
    shifted = IntMatrix.from_rows([[x + m[i] for x in row] for i, row in enumerate(a.rows)])
    assert a_discriminant(shifted).poly == a_discriminant(a).poly
