"""Simplicial complexes, simplicial maps and the cone space comparison."""

import pytest

from stronghom.algebra import FgAbGroup
from stronghom.chain import ChainMap
from stronghom.errors import InvalidSimplicial
from stronghom.generators import random_simplicial_map, rng_for
from stronghom.simplicial import (SimplicialComplex, SimplicialMap, axiom1_crosscheck, circle, crosscheck_passes,
                                  full_simplex, induced_on_h1, point, reduced_homology, simplicial_mapping_cone,
                                  solenoid_tower, wrap_map)

Z = FgAbGroup.from_invariants((), 1)
Z2 = FgAbGroup.from_invariants((2,))


def test_triangle():
    C = circle(3).chains()
    assert (C.rank(0), C.rank(1)) == (3, 3)
    assert C.homology(0).isomorphic(Z) and C.homology(1).isomorphic(Z)


def test_point_and_simplex():
    assert point().chains().ranks() == {0: 1}
    C = full_simplex(2).chains()
    assert C.homology(0).isomorphic(Z)
    assert C.homology(1).is_trivial() and C.homology(2).is_trivial()


def test_faces_are_closed():
    K = SimplicialComplex("abc", ["abc"])
    assert len(K.simplices(1)) == 3 and len(K.simplices(0)) == 3


def test_identity_map():
    K = circle(4)
    f = SimplicialMap(K, K, {v: v for v in K.vertices})
    assert f.chain_map() == ChainMap.identity(K.chains())


def test_collapse_to_point():
    K = circle(3)
    f = SimplicialMap(K, point(), {v: 0 for v in K.vertices})
    assert f.chain_map().component(1).ncols == 3
    assert f.chain_map().component(1).nrows == 0


def test_non_simplicial_assignment_rejected():
    with pytest.raises(InvalidSimplicial):
        # edge 0-1 would land on the diagonal 0-2, which the square does not have
        SimplicialMap(circle(4), circle(4), {0: 0, 1: 2, 2: 2, 3: 3})


def test_degree_two_map_doubles_h1():
    assert abs(induced_on_h1(wrap_map(6, 3)).matrix.rows[0][0]) == 2


@pytest.mark.parametrize("p", [2, 3])
def test_solenoid_bonds(p):
    T = solenoid_tower(p, 2)
    assert abs(T.bonds[0].induced_on_homology(1).matrix.rows[0][0]) == p
    assert solenoid_tower(p, 1).length == 1


def test_cone_of_identity_on_point():
    K, _ = simplicial_mapping_cone(SimplicialMap(point(), point(), {0: 0}))
    C = K.chains()
    assert C.homology(0).isomorphic(Z)
    assert all(C.homology(n).is_trivial() for n in range(1, 3))


def test_cone_of_identity_on_circle():
    S = circle(3)
    K, _ = simplicial_mapping_cone(SimplicialMap(S, S, {v: v for v in S.vertices}))
    assert all(reduced_homology(K, n).is_trivial() for n in range(0, 3))


def test_degree_two_cone_space_is_moore_space():
    f = wrap_map(6, 3)
    K, _ = simplicial_mapping_cone(f)
    assert reduced_homology(K, 1).isomorphic(Z2)
    assert reduced_homology(K, 2).is_trivial()
    cert = axiom1_crosscheck(f, 1)
    assert crosscheck_passes(cert)
    assert cert["algebraic_cone"] == cert["cone_space_reduced"] == Z2.to_dict()


def test_crosscheck_identity_and_inclusion():
    S = circle(3)
    f = SimplicialMap(S, S, {v: v for v in S.vertices})
    for n in range(0, 3):
        assert crosscheck_passes(axiom1_crosscheck(f, n))
    g = SimplicialMap(point(), S, {0: 0})
    cert = axiom1_crosscheck(g, 1)
    assert crosscheck_passes(cert) and cert["algebraic_cone"] == Z.to_dict()


def test_random_maps_crosscheck():
    for i in range(15):
        f = random_simplicial_map(rng_for(11, "smap", i))
        C = f.chain_map()
        for n in range(0, max(C.source.hi, C.target.hi) + 2):
            assert crosscheck_passes(axiom1_crosscheck(f, n))
