import itertools

import numpy as np
import pytest
from hypothesis import given, settings

from kinstatic.algebra import (
    ALGEBRA_NAMES,
    BracketTable,
    ad_matrix,
    bch2,
    bracket,
    check_jacobi,
    from_brackets,
    registry_get,
    static_ext,
)
from kinstatic.errors import DimensionError, NotNilpotentError, ParameterError, UnknownAlgebraError
from kinstatic.group import GroupElement, c1

from .strategies import vec6

UNIT = {"c_vel": 1.0, "omega": 1.0}


def nonzero(tbl):
    return {(i, j): c for i, j, c in tbl.nonzero_brackets()}


def test_registry_has_twelve_tables():
    assert len(ALGEBRA_NAMES) == 12
    for name in ALGEBRA_NAMES:
        assert registry_get(name, UNIT).dim in (3, 6)


def test_static_is_abelian():
    tbl = registry_get("Static")
    assert tbl.dim == 3
    assert not tbl.c.any()


def test_galilei_single_bracket():
    assert nonzero(registry_get("Galilei")) == {("K", "E"): {"P": 1.0}}


def test_static_ext_brackets():
    tbl = registry_get("StaticExt")
    assert tbl.basis_labels == ("M", "F", "Y", "K", "P", "E")
    assert nonzero(tbl) == {("K", "P"): {"M": 1.0}, ("K", "E"): {"Y": 1.0}, ("P", "E"): {"F": 1.0}}
    for central in "MFY":
        assert not tbl.c[tbl.index(central)].any()


@pytest.mark.parametrize("name, expected", [
    ("dS+", {("K", "P"): {"E": 0.25}, ("K", "E"): {"P": 1.0}, ("P", "E"): {"K": 9.0}}),
    ("dS-", {("K", "P"): {"E": 0.25}, ("K", "E"): {"P": 1.0}, ("P", "E"): {"K": -9.0}}),
    ("NH+", {("K", "E"): {"P": 1.0}, ("P", "E"): {"K": 9.0}}),
    ("NH-", {("K", "E"): {"P": 1.0}, ("P", "E"): {"K": -9.0}}),
    ("Poincare", {("K", "P"): {"E": 0.25}, ("K", "E"): {"P": 1.0}}),
    ("ParaPoincare+", {("K", "P"): {"E": 0.25}, ("P", "E"): {"K": 9.0}}),
    ("ParaPoincare-", {("K", "P"): {"E": 0.25}, ("P", "E"): {"K": -9.0}}),
    ("Carroll", {("K", "P"): {"E": 0.25}}),
    ("ParaGalilei", {("P", "E"): {"K": 9.0}}),
])
def test_kinematical_brackets_with_parameters(name, expected):
    # c = 2, omega = 3: E/c^2 -> 0.25 E, omega^2 K -> 9 K
    assert nonzero(registry_get(name, {"c_vel": 2.0, "omega": 3.0})) == expected


def test_unicode_minus_accepted():
    assert nonzero(registry_get("dS−", UNIT)) == nonzero(registry_get("dS-", UNIT))


def test_registry_errors():
    with pytest.raises(UnknownAlgebraError):
        registry_get("Lorentz")
    with pytest.raises(ParameterError):
        registry_get("dS+", {"omega": 1.0})
    with pytest.raises(ParameterError):
        registry_get("NH+", {"omega": -1.0})


def test_bracket_examples():
    ext = static_ext()
    assert np.array_equal(bracket(ext, ext.basis("K"), ext.basis("P")), ext.basis("M"))
    gal = registry_get("Galilei")
    assert np.array_equal(bracket(gal, gal.vector(K=2), gal.vector(E=3)), gal.vector(P=6))
    a = np.array([1.0, -2.0, 0.5])
    assert not bracket(gal, a, a).any()


def test_bracket_dimension_mismatch():
    with pytest.raises(DimensionError):
        bracket(static_ext(), np.ones(3), np.ones(6))


@pytest.mark.parametrize("name", ALGEBRA_NAMES)
def test_jacobi_exact(name):
    rep = check_jacobi(registry_get(name, UNIT))
    assert rep.residual == 0.0 and rep.passed


def test_jacobi_so3_type():
    tbl = from_brackets("so3ish", "KPE", {("K", "P"): {"E": 1}, ("K", "E"): {"P": 1}, ("P", "E"): {"K": 1}})
    assert check_jacobi(tbl).residual == 0.0


def test_jacobi_detects_violation():
    # [A,B]=C, [B,C]=D, [A,D]=A: [A,[B,C]] = A while [B,[C,A]] and [C,[A,B]] vanish
    tbl = from_brackets("bad", "ABCD", {("A", "B"): {"C": 1}, ("B", "C"): {"D": 1}, ("A", "D"): {"A": 1}})
    rep = check_jacobi(tbl)
    assert rep.residual == 1.0 and not rep.passed


def test_bch2_examples():
    ext = static_ext()
    K, P = ext.basis("K"), ext.basis("P")
    assert np.array_equal(bch2(ext, K, P), K + P + 0.5 * ext.basis("M"))
    a = np.array([0.1, 0.2, 0.3, 1.0, -2.0, 4.0])
    assert np.array_equal(bch2(ext, a, a), 2 * a)


def test_bch2_refuses_de_sitter():
    with pytest.raises(NotNilpotentError, match="not step-2 nilpotent"):
        bch2(registry_get("dS+", UNIT), np.ones(3), np.ones(3))


def test_ad_matrix_examples():
    st = registry_get("Static")
    assert not ad_matrix(st, np.array([1.0, 2.0, 3.0])).any()
    ext = static_ext()
    ad = ad_matrix(ext, ext.basis("K"))
    expected = np.zeros((6, 6))
    expected[ext.index("M"), ext.index("P")] = 1
    expected[ext.index("Y"), ext.index("E")] = 1
    assert np.array_equal(ad, expected)
    g = ext.vector(K=0.5, P=-1.5, E=2.0)
    delta = np.array([0, 0, 0, 0, 3.0, 0])
    # (1 + ad) delta = (v dx, -t dx, 0, 0, dx, 0) with v = 0.5, t = 2, dx = 3
    assert np.array_equal((np.eye(6) + ad_matrix(ext, g)) @ delta, [1.5, -6.0, 0, 0, 3.0, 0])
    g0 = ext.vector(K=0.5, P=-1.5)
    assert np.array_equal((np.eye(6) + ad_matrix(ext, g0)) @ delta, [1.5, 0, 0, 0, 3.0, 0])


def test_json_round_trip():
    for name in ALGEBRA_NAMES:
        tbl = registry_get(name, {"c_vel": 2.0, "omega": 3.0})
        doc = tbl.to_json()
        back = BracketTable.from_json(doc)
        assert back.basis_labels == tbl.basis_labels
        assert np.array_equal(back.c, tbl.c)


def test_tables_are_immutable():
    with pytest.raises(ValueError):
        static_ext().c[0, 0, 0] = 1.0


@settings(max_examples=200)
@given(vec6, vec6)
def test_bracket_antisymmetric(a, b):
    ext = static_ext()
    assert np.allclose(bracket(ext, a, b), -bracket(ext, b, a), atol=1e-12)


@settings(max_examples=200)
@given(vec6, vec6, vec6)
def test_bch2_associative(a, b, c):
    ext = static_ext()
    lhs = bch2(ext, a, bch2(ext, b, c))
    rhs = bch2(ext, bch2(ext, a, b), c)
    assert np.allclose(lhs, rhs, atol=1e-9)


def test_bch2_central_part_is_c1(rng):
    ext = static_ext()
    for g, h in rng.normal(size=(1000, 2, 3)):
        central = bch2(ext, np.r_[0, 0, 0, g], np.r_[0, 0, 0, h])[:3]
        v, x, t = g
        v2, x2, t2 = h
        expected = 0.5 * np.array([v * x2 - v2 * x, x * t2 - x2 * t, v * t2 - v2 * t])
        assert np.max(np.abs(central - expected)) <= 1e-12
        assert np.max(np.abs(central - c1(GroupElement(*g), GroupElement(*h)))) <= 1e-12


def test_nilpotency_of_registry():
    # only abelian algebras and the extension are step-2 nilpotent among these tables
    from kinstatic.algebra import step2_violation
    ok = {n for n in ALGEBRA_NAMES if step2_violation(registry_get(n, UNIT)) is None}
    assert ok == {"Static", "StaticExt", "Galilei", "Carroll", "ParaGalilei"}
