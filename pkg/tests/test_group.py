import itertools

import numpy as np
import pytest
from hypothesis import given, settings

from kinstatic.algebra import ad_matrix, static_ext
from kinstatic.errors import DimensionError, KinstaticError
from kinstatic.group import (
    EXT_IDENTITY,
    IDENTITY,
    ExtGroupElement,
    GroupElement,
    adjoint,
    b_map,
    coboundary_equivalent,
    coboundary_of_b,
    cocycle,
    cocycle_batch,
    ext_inverse,
    ext_multiply,
    integer_grid,
    multiply,
    verify_cocycle_identity,
)

from .strategies import elements, vec6

G = GroupElement


def test_multiply_examples():
    assert multiply(G(1, 2, 3), G(4, 5, 6)) == G(5, 7, 9)
    assert G(1, 2, 3) * IDENTITY == G(1, 2, 3)
    assert G(1, 2, 3) * G(-1, -2, -3) == IDENTITY
    assert G(1, 2, 3).inverse() == G(-1, -2, -3)


def test_cocycle_examples():
    assert np.array_equal(cocycle("c", G(1, 2, 3), G(4, 5, 6)), [5, 12, 6])
    g = G(1.5, -2, 7)
    assert not cocycle("c1", g, g).any()
    assert np.array_equal(cocycle("c1", G(1, 0, 0), G(0, 1, 0)), [0.5, 0, 0])
    with pytest.raises(KinstaticError):
        cocycle("c3", g, g)


@settings(max_examples=200)
@given(elements, elements)
def test_c_is_c1_plus_c2(g, h):
    assert np.allclose(cocycle("c", g, h), cocycle("c1", g, h) + cocycle("c2", g, h), atol=1e-12)


def test_cocycle_batch_matches_scalar(rng):
    gs = rng.normal(size=(50, 3))
    hs = rng.normal(size=(50, 3))
    for kind in ("c", "c1", "c2", "zero"):
        batch = cocycle_batch(kind, gs, hs)
        single = np.array([cocycle(kind, G(*g), G(*h)) for g, h in zip(gs, hs)])
        assert np.allclose(batch, single, atol=0)


def test_b_map_examples():
    assert np.array_equal(b_map(G(2, 3, 4)), [3, 6, 4])
    assert not b_map(IDENTITY).any()
    assert np.array_equal(b_map(G(1, 1, 1)), [0.5, 0.5, 0.5])


def test_cocycle_identity_examples():
    e1, e2, e3 = G(1, 0, 0), G(0, 1, 0), G(0, 0, 1)
    assert not verify_cocycle_identity("c", e1, e2, e3).any()
    for kind in ("c", "c1", "c2"):
        assert not verify_cocycle_identity(kind, G(1, 2, 3), IDENTITY, G(-4, 5, 0.5)).any()


@pytest.mark.parametrize("kind", ["c", "c1", "c2"])
def test_cocycle_identity_on_integer_grid(kind):
    grid = np.array([g.as_array() for g in integer_grid(-2, 2)])
    g2, g3 = grid[:, None], grid[None, :]
    for g1 in grid:
        res = (cocycle_batch(kind, g1, g2) + cocycle_batch(kind, g1 + g2, g3)
               - cocycle_batch(kind, g1, g2 + g3) - cocycle_batch(kind, g2, g3))
        assert not res.any()


@settings(max_examples=300)
@given(elements, elements, elements)
def test_cocycle_identity_random(a, b, c):
    for kind in ("c", "c1", "c2"):
        assert np.max(np.abs(verify_cocycle_identity(kind, a, b, c))) <= 1e-12 * (1 + 1e3)


def test_coboundary_equivalences():
    rep = coboundary_equivalent("c", "c1")
    assert rep.equivalent and rep.max_residual <= 1e-12
    rep = coboundary_equivalent("c2", "zero")
    assert rep.equivalent and rep.max_residual <= 1e-12
    rep = coboundary_equivalent("c1", "zero")
    assert not rep.equivalent


def test_c1_is_not_a_coboundary_witness():
    # c1 is antisymmetric while delta b is symmetric in an abelian group
    g, h = G(0, 1, 0), G(1, 0, 0)
    assert np.array_equal(cocycle("c1", g, h), [-0.5, 0, 0])
    assert np.array_equal(coboundary_of_b(g, h), [0.5, 0, 0])
    rep = coboundary_equivalent("c1", "zero", samples=[(g, h)])
    assert rep.max_residual == 1.0
    # in the opposite order the two agree, so a single pair does not decide
    assert coboundary_equivalent("c1", "zero", samples=[(h, g)]).max_residual == 0.0


def test_ext_multiply_examples():
    a = ExtGroupElement.from_params(0, 0, 0, 1, 2, 3)
    b = ExtGroupElement.from_params(0, 0, 0, 4, 5, 6)
    assert (a * b).params() == (5, 12, 6, 5, 7, 9)
    assert ext_multiply(a, EXT_IDENTITY) == a
    assert a * ext_inverse(a) == EXT_IDENTITY
    assert ext_inverse(a) * a == EXT_IDENTITY


ext_elements = vec6.map(lambda a: ExtGroupElement.from_params(*a))


@settings(max_examples=200)
@given(ext_elements, ext_elements, ext_elements)
def test_ext_associative(a, b, c):
    assert np.allclose(((a * b) * c).as_array(), (a * (b * c)).as_array(), atol=1e-9)


def test_ext_associative_exact_on_grid():
    grid = [ExtGroupElement(g.t, g.v, g.x, g) for g in integer_grid(-1, 1)]
    for a, b, c in itertools.product(grid, repeat=3):
        assert (a * b) * c == a * (b * c)


def test_adjoint_examples():
    assert np.array_equal(adjoint(G(1, 0, 0), [0, 0, 0, 0, 1, 0]), [1, 0, 0, 0, 1, 0])
    d = np.array([1.0, 2, 3, 4, 5, 6])
    assert np.array_equal(adjoint(IDENTITY, d), d)
    assert np.array_equal(adjoint(G(2, 3, 1), [0, 0, 0, 1, 0, 0]), [-3, 0, -1, 1, 0, 0])
    with pytest.raises(DimensionError):
        adjoint(IDENTITY, [1, 2, 3])


@settings(max_examples=300)
@given(elements, elements, vec6)
def test_adjoint_is_action(g, h, d):
    assert np.allclose(adjoint(g * h, d), adjoint(g, adjoint(h, d)), atol=1e-9)


@settings(max_examples=300)
@given(elements, vec6)
def test_adjoint_matches_ad_matrix(g, d):
    ext = static_ext()
    ad = ad_matrix(ext, ext.vector(K=g.v, P=g.x, E=g.t))
    assert np.allclose((np.eye(6) + ad) @ d, adjoint(g, d), atol=1e-9)
    assert not (ad @ ad).any()  # the exponential series stops after the linear term


def test_adjoint_from_conjugation():
    # Ad_g(delta) as the derivative of g exp(s delta) g^-1 at s = 0, using the extended law
    g = ExtGroupElement.from_params(0, 0, 0, 0.7, -1.2, 2.5)
    d = np.array([0.3, -0.1, 0.4, 1.1, -0.6, 0.9])
    s = 1e-6
    # exp(s delta) in the product coordinates: central part gets the BCH correction c(g,g)/2 ~ O(s^2)
    small = ExtGroupElement.from_params(*(s * d))
    conj = (g * small * ext_inverse(g)).as_array()
    assert np.allclose(conj / s, adjoint(g.g, d), atol=1e-5)


def test_json_round_trip():
    g = G(1.5, -2, 3)
    assert G.from_json(g.to_json()) == g
    e = ExtGroupElement.from_params(1, 2, 3, 4, 5, 6)
    assert ExtGroupElement.from_json(e.to_json()) == e
    with pytest.raises(KinstaticError):
        G(float("nan"), 0, 0)
