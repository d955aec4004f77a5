import math

import pytest

from fermatdeg.algebra import euler_phi
from fermatdeg.cm import (
    CMType,
    GaloisData,
    decompose_jacobian,
    divisors,
    is_primitive,
    prym_cm_type,
    reflex_type,
    stabilizer,
    units,
)
from fermatdeg.errors import InvalidModulus, Unsupported

ODD = list(range(3, 100, 2))


def test_prym_types():
    assert prym_cm_type(9).sorted() == [1, 2, 4]
    assert prym_cm_type(15).sorted() == [1, 2, 4, 7]
    assert prym_cm_type(3).sorted() == [1]


@pytest.mark.parametrize("m", [2, 1, 10])
def test_prym_rejects_even(m):
    with pytest.raises(InvalidModulus):
        prym_cm_type(m)


def test_reflex_examples():
    assert reflex_type(CMType(5, frozenset({1, 2}))).sorted() == [1, 3]
    assert reflex_type(CMType(3, frozenset({1}))).sorted() == [1]
    assert reflex_type(prym_cm_type(9)).sorted() == [1, 5, 7]


def test_printed_dual_formula_is_not_a_cm_type():
    # {1} together with every j > g: four labels for m = 9 where a CM type has three
    g = 4
    with pytest.raises(InvalidModulus):
        CMType(9, frozenset(j for j in units(9) if j == 1 or j > g))


@pytest.mark.parametrize("m", ODD)
def test_cm_axioms(m):
    phi = prym_cm_type(m)
    assert len(phi.members) == euler_phi(m) // 2
    for j in units(m):
        assert (j in phi.members) != ((m - j) in phi.members)
    rho = reflex_type(phi)
    assert len(rho.members) == euler_phi(m) // 2
    if is_primitive(phi):
        assert reflex_type(rho) == phi


@pytest.mark.parametrize("m", ODD)
def test_stabilizer_exhaustion(m):
    # a * S_m = S_m only for a = 1, checked over every unit
    phi = prym_cm_type(m)
    hits = [a for a in units(m) if {a * j % m for j in phi.members} == set(phi.members)]
    assert hits == [1]
    assert stabilizer(phi) == hits
    assert is_primitive(phi)


@pytest.mark.parametrize("m", ODD)
def test_ledger_dimensions(m):
    led = decompose_jacobian(m)
    assert led.genus == (m - 1) // 2
    assert sorted(f.cm_modulus for f in led.factors) == sorted(d for d in divisors(m) if d > 1)
    for f in led.factors:
        assert f.dimension == euler_phi(f.cm_modulus) // 2


def test_ledger_examples():
    assert [f.as_tuple() for f in decompose_jacobian(9).factors] == [("X", 3, 9), ("J3", 1, 3)]
    assert [f.as_tuple() for f in decompose_jacobian(15).factors] == [("X", 4, 15), ("J5", 2, 5), ("J3", 1, 3)]
    assert [f.as_tuple() for f in decompose_jacobian(27).factors] == [("X2", 9, 27), ("X1", 3, 9), ("J3", 1, 3)]
    assert [f.as_tuple() for f in decompose_jacobian(7).factors] == [("J7", 3, 7)]


def test_even_ledgers():
    led = decompose_jacobian(18)
    assert led.multiplicity == 2 and led.genus == 8
    assert led.factors == decompose_jacobian(9).factors
    with pytest.raises(Unsupported):
        decompose_jacobian(12)


def test_galois_data():
    G = GaloisData(15)
    assert G.units == (1, 2, 4, 7, 8, 11, 13, 14)
    assert G.subgroup_for(5) == (1, 11)
    for d in (3, 5, 15):
        assert len(G.subgroup_for(d)) == euler_phi(15) // euler_phi(d)
        H = set(G.subgroup_for(d))
        assert all(a * b % 15 in H for a in H for b in H)
    assert G.index(13) == 6
