"""Core checks for the decorated-face calculus, cup products, and covers."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stexo.builders import bar_b, bar_e_z2, circle, point, z2_table, z4_table
from stexo.errors import (
    ModelMismatchError,
    TrivialCoverError,
    ValidationError,
)
from stexo.gf2 import solve_affine
from stexo.simplicial import (
    Cochain,
    Involution,
    SimplicialMap,
    SimplicialModel,
    coboundary,
    cover_from_cocycle,
    cup,
    cup_i,
    insert_degeneracy,
    product,
    product_involution,
    quotient_free_involution,
    relabel_model,
    sq,
    swap_factors,
)


def triangle():
    """The 2-simplex as a model: vertices 0,1,2; edges 01,02,12; one 2-cell."""
    faces = [
        [],
        [
            [((), 1), ((), 0)],  # edge 01
            [((), 2), ((), 0)],  # edge 02
            [((), 2), ((), 1)],  # edge 12
        ],
        [[((), 2), ((), 1), ((), 0)]],  # d0=12, d1=02, d2=01
    ]
    return SimplicialModel(2, [3, 3, 1], faces, name="triangle")


@pytest.fixture(scope="module")
def rp6():
    return bar_b(z2_table(), 6, name="rp")


@pytest.fixture(scope="module")
def torus():
    c = circle(2)
    return c, product(c, c, 2, name="t2")


def test_insert_degeneracy_canonical_words():
    assert insert_degeneracy((), 0) == (0,)
    assert insert_degeneracy((0,), 1) == (1, 0)
    assert insert_degeneracy((1, 0), 1) == (2, 1, 0)
    assert insert_degeneracy((3, 1), 2) == (4, 2, 1)
    assert insert_degeneracy((3, 1), 0) == (4, 2, 0)


def test_triangle_validates_and_subfaces():
    t = triangle()
    assert t.validate() == []
    assert t.subface(2, 0, (0, 1)) == ((), 0)
    assert t.subface(2, 0, (0, 2)) == ((), 1)
    assert t.subface(2, 0, (1, 2)) == ((), 2)
    assert t.subface(2, 0, (0,)) == ((), 0)
    assert t.subface(1, 2, (0, 1)) == ((), 2)


def test_validate_reports_broken_identity():
    t = triangle()
    # swap the ends of edge 12 so d_i d_j identities fail
    t.faces[1][2] = [((), 1), ((), 2)]
    bad = t.validate()
    assert bad and "d_" in bad[0]


def test_validate_reports_malformed_word():
    t = triangle()
    t.faces[2][0] = [((0, 1), 0), ((), 2), ((), 0)]
    bad = t.validate()
    assert any("decreasing" in msg for msg in bad)


def test_faces_of_degenerate_targets(rp6):
    # d_i s_j identities, pushed through a decorated target
    for n in (2, 3, 4):
        for j in range(n):
            t = (insert_degeneracy((), j), 0)
            for i in range(n + 1):
                got = rp6.face(n, t, i)
                if i in (j, j + 1):
                    assert got == ((), 0)


def test_coboundary_squares_to_zero(rp6):
    for model in (rp6, bar_b(z4_table(), 3), circle(3)):
        for k in range(model.max_degree - 1):
            a = model.coboundary_matrix(k)
            b = model.coboundary_matrix(k + 1)
            assert b.matmul(a).is_zero()


def test_interval_model_coboundary():
    # two vertices, one edge: delta of a point indicator hits the edge once
    faces = [[], [[((), 1), ((), 0)]]]
    seg = SimplicialModel(1, [2, 1], faces, name="segment")
    assert seg.validate() == []
    u = Cochain.from_support(seg, 0, [0])
    assert coboundary(u).values.tolist() == [1]


def test_circle_coboundary_vanishes():
    c = circle(1)
    u = Cochain.from_support(c, 0, [0])
    assert coboundary(u).is_zero()


def test_cochain_mismatch_raises(rp6):
    c = circle(1)
    u = Cochain.from_support(c, 1, [0])
    v = Cochain.from_support(rp6, 1, [0])
    with pytest.raises(ModelMismatchError):
        _ = u + v
    with pytest.raises(ModelMismatchError):
        cup(u, v)


def test_cup_unital_and_associative(rp6):
    rng = np.random.default_rng(7)
    one = Cochain(rp6, 0, np.ones(1, dtype=np.uint8))
    for _ in range(20):
        u = Cochain(rp6, 2, rng.integers(0, 2, 1, dtype=np.uint8))
        v = Cochain(rp6, 1, rng.integers(0, 2, 1, dtype=np.uint8))
        w = Cochain(rp6, 2, rng.integers(0, 2, 1, dtype=np.uint8))
        assert cup(one, u) == u
        assert cup(u, one) == u
        assert cup(cup(u, v), w) == cup(u, cup(v, w))


def test_torus_cup_structure(torus):
    c, t2 = torus
    m = t2.model
    e = Cochain.from_support(c, 1, [0])
    e1 = t2.left.pullback(e)
    e2 = t2.right.pullback(e)
    assert coboundary(e1).is_zero() and coboundary(e2).is_zero()
    d1 = m.coboundary_matrix(1)
    assert solve_affine(d1, cup(e1, e1).values) is not None
    assert solve_affine(d1, cup(e2, e2).values) is not None
    assert solve_affine(d1, cup(e1, e2).values) is None
    anticomm = cup(e1, e2) + cup(e2, e1)
    assert solve_affine(d1, anticomm.values) is not None


@pytest.fixture(scope="module")
def bar4():
    """Bar model of the cyclic group of order four: nontrivial coboundaries."""
    return bar_b(z4_table(), 4, name="bar4")


@pytest.mark.parametrize("p,q,i", [(1, 1, 1), (1, 2, 1), (2, 2, 2), (1, 3, 1), (2, 3, 2)])
def test_cup_i_coboundary_contract(bar4, p, q, i):
    """delta(u cup_i v) = boundary terms + cup_(i-1) symmetrization."""
    rng = np.random.default_rng(11 * p + q + i)
    for _ in range(60):
        u = Cochain(bar4, p, rng.integers(0, 2, bar4.n_cells(p), dtype=np.uint8))
        v = Cochain(bar4, q, rng.integers(0, 2, bar4.n_cells(q), dtype=np.uint8))
        lhs = coboundary(cup_i(u, v, i))
        rhs = (
            cup_i(u, v, i - 1)
            + cup_i(v, u, i - 1)
            + cup_i(coboundary(u), v, i)
            + cup_i(u, coboundary(v), i)
        )
        assert lhs == rhs


def test_cup_leibniz(bar4):
    rng = np.random.default_rng(3)
    for _ in range(100):
        u = Cochain(bar4, 1, rng.integers(0, 2, bar4.n_cells(1), dtype=np.uint8))
        v = Cochain(bar4, 2, rng.integers(0, 2, bar4.n_cells(2), dtype=np.uint8))
        assert coboundary(cup(u, v)) == cup(coboundary(u), v) + cup(u, coboundary(v))


def test_sq_rejects_open_cochain():
    t = triangle()
    u = Cochain.from_support(t, 1, [0])
    assert not coboundary(u).is_zero()
    with pytest.raises(ValidationError):
        sq(u, 1)


def test_sq_unstable_zero(rp6):
    x = Cochain.from_support(rp6, 1, [0])
    assert sq(x, 2).is_zero()
    assert sq(x, 2).degree == 3


def test_sq_zero_is_identity_on_classes(rp6):
    """Sq^0 fixes cohomology classes (not necessarily cochains)."""
    x = Cochain.from_support(rp6, 1, [0])
    xx = cup(x, x)
    for u in (x, xx):
        diff = sq(u, 0) + u
        assert solve_affine(rp6.coboundary_matrix(u.degree - 1), diff.values) is not None


# -- products -----------------------------------------------------------------


def test_product_torus_counts(torus):
    c, t2 = torus
    m = t2.model
    assert m.cells == (1, 3, 2)
    assert m.euler_characteristic() == 0
    assert m.validate() == []
    assert t2.left.validate() == []
    assert t2.right.validate() == []


def test_product_with_point_is_identity(rp6):
    pt = point(0)
    pr = product(rp6, pt, 4)
    assert pr.model.cells == rp6.cells[:5]
    for n in range(1, 5):
        assert pr.model.faces[n] == rp6.faces[n][: rp6.cells[n]]


def test_four_torus_counts(torus):
    c, t2 = torus
    t4 = product(t2.model, t2.model, 4, name="t4")
    assert t4.model.cells == (1, 15, 50, 60, 24)
    assert t4.model.euler_characteristic() == 0
    assert t4.model.validate() == []


def test_swap_involution_has_diagonal_fixed_cells(torus):
    c, t2 = torus
    t4 = product(t2.model, t2.model, 4)
    sw = swap_factors(t4)
    assert any("fixed" in msg for msg in sw.validate())


# -- covers and quotients ------------------------------------------------------


def test_two_sheet_quotient_matches_bar():
    em, flip = bar_e_z2(6)
    assert em.validate() == []
    assert flip.validate() == []
    pair = quotient_free_involution(em, flip)
    rp = bar_b(z2_table(), 6)
    assert pair.base.cells == rp.cells
    assert pair.base.faces == rp.faces
    assert pair.w1.support() == (0,)
    assert pair.projection.validate() == []


def test_cover_from_cocycle_round_trip():
    rp = bar_b(z2_table(), 5, name="rp")
    w = Cochain.from_support(rp, 1, [0])
    pair = cover_from_cocycle(rp, w)
    assert pair.cover.cells == (2, 2, 2, 2, 2, 2)
    assert pair.cover.validate() == []
    assert pair.involution.validate() == []
    assert pair.projection.validate() == []
    assert pair.w1 == w
    back = quotient_free_involution(pair.cover, pair.involution)
    assert back.base.cells == rp.cells
    assert back.w1.support() == (0,)


def test_trivial_cover_is_reported():
    rp = bar_b(z2_table(), 3)
    zero = Cochain.zero(rp, 1)
    with pytest.raises(TrivialCoverError):
        cover_from_cocycle(rp, zero)
    pair = cover_from_cocycle(rp, zero, allow_trivial=True)
    # the disjoint double: quotient must flag the null-cohomologous cocycle
    with pytest.raises(TrivialCoverError):
        quotient_free_involution(pair.cover, pair.involution)


def test_cover_rejects_non_cocycle(torus):
    c, t2 = torus
    m = t2.model
    rng = np.random.default_rng(5)
    for _ in range(20):
        w = Cochain(m, 1, rng.integers(0, 2, m.n_cells(1), dtype=np.uint8))
        if not coboundary(w).is_zero():
            with pytest.raises(ValidationError):
                cover_from_cocycle(m, w)
            return
    raise AssertionError("no non-cocycle found on the torus")


def test_descend_invariant_round_trips():
    em, flip = bar_e_z2(4)
    pair = quotient_free_involution(em, flip)
    rng = np.random.default_rng(2)
    for deg in (1, 2, 3):
        vals = rng.integers(0, 2, pair.base.n_cells(deg), dtype=np.uint8)
        down = Cochain(pair.base, deg, vals)
        up = pair.projection.pullback(down)
        assert pair.descend_invariant(up) == down
    skew = Cochain.from_support(em, 1, [0])
    if not np.array_equal(skew.values[flip.perms[1]], skew.values):
        with pytest.raises(ValidationError):
            pair.descend_invariant(skew)


def test_product_involution_free_on_cover(torus):
    c, t2 = torus
    t4 = product(t2.model, t2.model, 3, name="t4")
    em3, flip3 = bar_e_z2(3)
    C = product(t4.model, em3, 3)
    T = product_involution(C, swap_factors(t4), flip3)
    assert T.validate() == []


def test_relabel_preserves_structure(rp6):
    c = circle(2)
    t2 = product(c, c, 2).model
    rng = np.random.default_rng(9)
    out, perms = relabel_model(t2, rng)
    assert out.cells == t2.cells
    assert out.validate() == []
    assert out.euler_characteristic() == t2.euler_characteristic()


@given(st.integers(min_value=0, max_value=4), st.data())
@settings(max_examples=30, deadline=None)
def test_insert_degeneracy_matches_word_set_semantics(a, data):
    """The word-as-set rule: letters >= a shift, a joins the set."""
    word = data.draw(
        st.lists(st.integers(min_value=0, max_value=6), max_size=4, unique=True)
    )
    word = tuple(sorted(word, reverse=True))
    got = set(insert_degeneracy(word, a))
    want = {w + 1 for w in word if w >= a} | {a} | {w for w in word if w < a}
    assert got == want
