"""Chain complexes, mapping cones and coherent morphisms."""

import pytest
from hypothesis import given, strategies as st

from stronghom.algebra import FgAbGroup
from stronghom.chain import (ChainComplex, ChainHomotopy, ChainMap, CoherentChainHomotopy, CoherentChainMorphism,
                             MappingCone, compose_coherent, cone_functor_homotopy, cone_functor_map)
from stronghom.errors import IncoherentHomotopy, IncoherentMorphism, InvalidChainMap, InvalidComplex
from stronghom.generators import random_coherent_pair, random_complex, random_chain_map, rng_for
from stronghom.matrix import IntMatrix
from stronghom.simplicial import circle, point, wrap_map

Z = FgAbGroup.from_invariants((), 1)
Z2 = FgAbGroup.from_invariants((2,), 0)


def M(rows):
    return IntMatrix(rows)


def contractible():
    """Z in degree 1 mapping isomorphically onto Z in degree 0."""
    return ChainComplex({0: 1, 1: 1}, {1: M([[1]])})


def test_circle_homology():
    C = circle(3).chains()
    assert C.ranks() == {0: 3, 1: 3}
    assert C.homology(0).isomorphic(Z)
    assert C.homology(1).isomorphic(Z)


def test_small_complexes():
    assert ChainComplex.concentrated(1, 0).homology(0).isomorphic(Z)
    assert contractible().is_acyclic()


def test_dd_nonzero_rejected():
    with pytest.raises(InvalidComplex):
        ChainComplex({0: 1, 1: 1, 2: 1}, {1: M([[1]]), 2: M([[1]])})


def test_non_chain_map_rejected():
    C = contractible()
    with pytest.raises(InvalidChainMap):
        ChainMap(C, C, {0: M([[1]]), 1: M([[2]])})


def test_cone_differential_signs():
    # L = M = Z in degree 0, f = x3: C_1 = L_0, C_0 = M_0, d(l, m) = (dl, -dm + f l)
    L = ChainComplex.concentrated(1, 0)
    f = ChainMap(L, L, {0: M([[3]])})
    C = MappingCone(f)
    assert C.differential(1) == M([[3]])
    assert C.homology(0).invariants == ((3,), 0)
    # one level up: L = M = the contractible complex, f = identity
    K = contractible()
    Cid = MappingCone(ChainMap.identity(K))
    # C_1 = L_0 + M_1, C_0 = M_0; d = [f_0 | -d_1]
    assert Cid.differential(1) == M([[1, -1]])
    # C_2 = L_1 + M_2 -> C_1 = L_0 + M_1: [[d_1, 0], [f_1, -d_2]]
    assert Cid.differential(2) == M([[1], [1]])


@given(st.integers(0, 10 ** 6))
def test_cone_of_identity_acyclic(seed):
    C = random_complex(rng_for(seed, "t"), max_rank=3).complex
    assert MappingCone(ChainMap.identity(C)).is_acyclic()


@given(st.integers(0, 10 ** 6))
def test_cone_inclusion_projection(seed):
    rng = rng_for(seed, "cone")
    L, T = random_complex(rng, max_rank=3), random_complex(rng, max_rank=3).complex
    f = random_chain_map(rng, L, T)
    C = MappingCone(f)
    i, p = C.inclusion(), C.projection()
    assert not i.commutation_failures() and not p.commutation_failures()
    assert (p @ i).is_zero()


def test_zero_map_cone_splits():
    L, Mc = circle(3).chains(), point().chains()
    C = MappingCone(ChainMap.zero(L, Mc))
    for n in range(0, 3):
        expected = L.homology(n - 1).invariants, Mc.homology(n).invariants
        tors = tuple(sorted(expected[0][0] + expected[1][0]))
        assert C.homology(n).invariants == (tors, expected[0][1] + expected[1][1])


def test_degree_two_circle_map():
    f = wrap_map(6, 3).chain_map()
    assert MappingCone(f).homology(1).isomorphic(Z2)
    assert f.induced_on_homology(1).matrix in (M([[2]]), M([[-2]]))


def test_induced_identity_and_acyclic_target():
    C = circle(4).chains()
    assert ChainMap.identity(C).induced_on_homology(1).is_identity()
    K = contractible()
    h = ChainMap(ChainComplex.concentrated(1, 0), K, {0: M([[1]])}).induced_on_homology(0)
    assert h.is_zero()


def test_identity_coherent_gives_identity_cone_map():
    f = wrap_map(6, 3).chain_map()
    assert cone_functor_map(CoherentChainMorphism.identity(f)) == ChainMap.identity(MappingCone(f))


def test_strict_morphism_is_block_diagonal():
    L = ChainComplex.concentrated(1, 0)
    f = ChainMap(L, L, {0: M([[2]])})
    three = ChainMap(L, L, {0: M([[3]])})
    Phi = CoherentChainMorphism.strict(f, f, three, three)
    m = cone_functor_map(Phi)
    assert m.component(1) == M([[3]]) and m.component(0) == M([[3]])


def nonstrict_example():
    """f = g = id on the contractible complex, phi1 = 0, phi2 = id; corrected by -h."""
    K = contractible()
    f = ChainMap.identity(K)
    phi1, phi2 = ChainMap.zero(K, K), ChainMap.identity(K)
    # d phi12 + phi12 d = g phi1 - phi2 f = -id
    phi12 = {0: M([[-1]])}
    return CoherentChainMorphism(f, f, phi1, phi2, phi12)


def test_nonstrict_morphism_commutes_with_cone_differentials():
    Phi = nonstrict_example()
    assert not Phi.is_strict()
    assert not cone_functor_map(Phi).commutation_failures()


def test_wrong_orientation_rejected():
    K = contractible()
    f = ChainMap.identity(K)
    with pytest.raises(IncoherentMorphism):
        CoherentChainMorphism(f, f, ChainMap.zero(K, K), ChainMap.identity(K), {0: M([[1]])})


def test_zero_coherent_homotopy():
    Phi = nonstrict_example()
    D = CoherentChainHomotopy(Phi, Phi, None, None, None)
    assert cone_functor_homotopy(D).is_zero()


def test_strict_levelwise_homotopy_gives_block_homotopy():
    K = contractible()
    f = ChainMap.identity(K)
    z, i = ChainMap.zero(K, K), ChainMap.identity(K)
    Phi = CoherentChainMorphism.strict(f, f, z, z)
    Psi = CoherentChainMorphism.strict(f, f, i, i)
    h = {0: M([[1]])}
    # d12 has to absorb g d1 - d2 f = 0 here, so it can vanish
    D = CoherentChainHomotopy(Phi, Psi, h, h, None)
    H = cone_functor_homotopy(D)
    assert not H.identity_failures()
    # C_1 = L_0 + M_1 -> C_2 = L_1 (M_2 = 0): the d1 block
    assert H.component(1) == M([[1, 0]])
    # C_0 = M_0 -> C_1 = L_0 + M_1: the -d2 block
    assert H.component(0) == M([[0], [-1]])


def test_forced_corrector():
    # L = Z in degree 0; Q = Z, Z, Z in degrees 0..2 with only d_2 = 1 nonzero.
    # d2 = (h_0 = 1) is a homotopy 0 ~> 0 on Q, and only d12 = -1 balances -d2 f.
    L = ChainComplex.concentrated(1, 0)
    Q = ChainComplex({0: 1, 1: 1, 2: 1}, {2: M([[1]])})
    f = ChainMap(L, Q, {0: M([[1]])})
    Phi = CoherentChainMorphism.strict(f, f, ChainMap.zero(L, L), ChainMap.zero(Q, Q))
    with pytest.raises(IncoherentHomotopy):
        CoherentChainHomotopy(Phi, Phi, None, {0: M([[1]])}, None)
    D = CoherentChainHomotopy(Phi, Phi, None, {0: M([[1]])}, {0: M([[-1]])})
    assert not D.d12.is_zero()
    H = cone_functor_homotopy(D)
    assert not H.identity_failures()


@given(st.integers(0, 10 ** 6))
def test_random_coherent_pairs(seed):
    pair = random_coherent_pair(rng_for(seed, "cp"))
    a, b = cone_functor_map(pair.Phi), cone_functor_map(pair.Psi)
    H = cone_functor_homotopy(pair.D)
    assert not H.identity_failures()
    C = a.source
    for n in range(C.lo, C.hi + 1):
        assert a.induced_on_homology(n) == b.induced_on_homology(n)


def test_compose_with_identity():
    Phi = nonstrict_example()
    left = compose_coherent(CoherentChainMorphism.identity(Phi.f), Phi)
    right = compose_coherent(Phi, CoherentChainMorphism.identity(Phi.g))
    for X in (left, right):
        assert X.phi1 == Phi.phi1 and X.phi2 == Phi.phi2
        assert X.phi12.same_components(Phi.phi12)


def test_compose_strict_with_nonstrict():
    Phi = nonstrict_example()
    K = Phi.g.source
    two = ChainMap.identity(K).scaled(2)
    S = CoherentChainMorphism.strict(Phi.g, Phi.g.scaled(1), two, two)
    X = compose_coherent(Phi, S)
    assert X.phi12.same_components(Phi.phi12.scaled(2))
    assert not cone_functor_map(X).commutation_failures()


def test_chain_homotopy_identity():
    K = contractible()
    H = ChainHomotopy(ChainMap.zero(K, K), ChainMap.identity(K), {0: M([[1]])})
    assert not H.identity_failures()
