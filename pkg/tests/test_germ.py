from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from toricvol import build_germ, orthant
from toricvol.errors import NotFullDimensional, NotQGorenstein, NotStronglyConvex
from toricvol.geometry.cone import Cone


def test_orthant_w():
    for n in (2, 3, 4):
        g = orthant(n)
        assert g.w == (1,) * n
        assert g.gorenstein_index == 1


def test_blowup_w(blowup):
    assert blowup.w == (0, 0, 1)
    assert set(blowup.sigma_dual.rays) == {(-1, 0, 1), (0, -1, 1), (-1, 2, 1), (2, -1, 1)}


def test_planar_cone_w():
    # <(1,0), w> = 1 and <(1,3), w> = 1 force w = (1, 0)
    g = build_germ([(1, 0), (1, 3)])
    assert g.w == (1, 0)
    for r in g.sigma.rays:
        assert sum(a * b for a, b in zip(r, g.w)) == 1


def test_planar_cone_with_fractional_w():
    g = build_germ([(1, 0), (1, 2)])
    assert g.w == (1, 0)
    g = build_germ([(1, 0), (2, 3)])
    assert g.w == (1, Fraction(-1, 3))
    assert g.gorenstein_index == 3


def test_not_q_gorenstein():
    # four rays not on a common affine hyperplane
    with pytest.raises(NotQGorenstein):
        build_germ([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 2, -1)])


def test_invalid_cones():
    with pytest.raises(NotStronglyConvex):
        build_germ([(1, 0), (-1, 0), (0, 1)])
    with pytest.raises(NotFullDimensional):
        build_germ([(1, 0, 1), (0, 1, 1)])


polygon = st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), min_size=3, max_size=8, unique=True)
unimodular = st.sampled_from(
    [
        ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
        ((1, 1, 0), (0, 1, 0), (0, 0, 1)),
        ((1, 0, 2), (0, 1, -1), (0, 0, 1)),
        ((0, 1, 0), (1, 0, 3), (0, 0, 1)),
        ((2, 1, 1), (1, 1, 0), (1, 0, 1)),
    ]
)


def _germ_or_none(rays):
    try:
        return build_germ(rays)
    except (NotFullDimensional, NotStronglyConvex):
        return None


@given(polygon)
def test_height_one_germs_have_w_last_basis_vector(pts):
    g = _germ_or_none([(x, y, 1) for x, y in pts])
    if g is None:
        return
    assert g.w == (0, 0, 1)


@given(polygon, unimodular)
def test_w_pairs_to_one_on_every_ray(pts, T):
    rays = [tuple(sum(T[i][k] * v[k] for k in range(3)) for i in range(3)) for v in [(x, y, 1) for x, y in pts]]
    g = _germ_or_none(rays)
    if g is None:
        return
    for r in g.sigma.rays:
        assert sum(a * b for a, b in zip(r, g.w)) == 1
    assert g.sigma_dual.same_as(Cone.from_rays(g.sigma.dual().rays))


@given(st.tuples(st.integers(1, 6), st.integers(-5, 5)), st.tuples(st.integers(-6, -1), st.integers(-5, 5)))
def test_rank_two_cones_are_always_q_gorenstein(p, q):
    g = _germ_or_none([(p[1], p[0]), (q[1], -q[0])])
    if g is None:
        return
    for r in g.sigma.rays:
        assert sum(a * b for a, b in zip(r, g.w)) == 1


def test_contains_interior_examples(a3, blowup):
    assert a3.contains_interior((1, 1, 1))
    assert not a3.contains_interior((1, 0, 1))
    assert blowup.contains_interior((Fraction(1315, 10000), Fraction(1315, 10000), 1))


@given(
    st.tuples(*[st.fractions(-2, 2, max_denominator=7)] * 2 + [st.fractions(Fraction(1, 7), 2, max_denominator=7)]),
    st.fractions(Fraction(1, 9), 9, max_denominator=9),
)
def test_contains_interior_scale_invariant(u, lam):
    g = build_germ([(1, 0, 1), (0, 1, 1), (-1, -1, 1), (1, 1, 1)])
    assert g.contains_interior(u) == g.contains_interior(tuple(lam * x for x in u))


def test_dual_cells_cover_dual_cone(blowup):
    from toricvol.geometry.polytope import truncate, volume

    u = (Fraction(1, 3), Fraction(1, 5), 1)
    cell_total = sum(Fraction(d) / Fraction(6) / _prod(blowup, ids, u) for ids, d in blowup.dual_cells)
    assert cell_total == volume(truncate(blowup.sigma_dual, u, 1))


def _prod(g, ids, u):
    out = Fraction(1)
    for i in ids:
        out *= sum(a * b for a, b in zip(u, g.sigma_dual.rays[i]))
    return out


def test_automorphisms(blowup, a3):
    assert len(a3.automorphisms()) == 6
    autos = blowup.automorphisms()
    assert len(autos) == 2
    for T in autos:
        image = {tuple(sum(a * b for a, b in zip(row, r)) for row in T) for r in blowup.sigma.rays}
        assert image == set(blowup.sigma.rays)
