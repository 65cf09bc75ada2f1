"""Towers, shift-difference maps, strong homology and the exact sequences."""

import pytest
from hypothesis import given, settings, strategies as st

from stronghom.algebra import FgAbGroup
from stronghom.chain import ChainComplex, ChainMap, CoherentChainMorphism, MappingCone
from stronghom.errors import InvalidTower, TowerTooShort
from stronghom.generators import (levelwise_identity, random_map_tower, random_tower, random_tower_morphism,
                                  rng_for, scalar_morphism, trivial_codomain, trivial_domain)
from stronghom.matrix import IntMatrix
from stronghom.simplicial import circle, point, solenoid_map_tower, solenoid_tower
from stronghom.tower import (MapTower, Tower, TowerMorphism, chain_map_failures, cone_tower, induced_morphism,
                             long_exact_sequence, pair_shift_difference, product_complex, shift_difference,
                             sigma_partial_ses, strong_homology, tower_strong_homology)

Z = FgAbGroup.from_invariants((), 1)


def inclusion_tower(N):
    """Point -> circle inclusion at every level, identity bonds."""
    P, S = point().chains(), circle(3).chains()
    f = ChainMap(P, S, {0: IntMatrix([[1], [0], [0]])})
    return MapTower(Tower.constant(P, N), Tower.constant(S, N), [f] * N)


def test_product_complex():
    C = circle(3).chains()
    assert product_complex(Tower.constant(C, 1)) == C
    assert product_complex(Tower.constant(C, 2)).ranks() == {0: 6, 1: 6}


def test_solenoid_product_ranks():
    # three levels of a 3-edge circle with degree-2 bonds have 3 + 6 + 12 cells in each degree
    assert product_complex(solenoid_tower(2, 3)).ranks() == {0: 21, 1: 21}


def test_constant_identity_shift_is_minus_i_plus_i():
    C = ChainComplex({0: 2})
    s = shift_difference(Tower.constant(C, 2))
    assert s.component(0) == IntMatrix([[-1, 0, 1, 0], [0, -1, 0, 1]])


def test_constant_identity_kernel_on_homology():
    C = circle(3).chains()
    s = shift_difference(Tower.constant(C, 3))
    for n in (0, 1):
        assert s.induced_on_homology(n).kernel().isomorphic(C.homology(n))


def test_solenoid_shift_on_cycles():
    T = solenoid_tower(2, 2)
    s = shift_difference(T)
    h = s.induced_on_homology(1)
    assert h.source.invariants == ((), 2) and h.target.invariants == ((), 1)
    # (c_1, c_2) -> 2 c_2 - c_1 on the fundamental classes, up to orientation
    assert [abs(x) for x in h.matrix.rows[0]] == [1, 2]


def test_short_towers_rejected():
    with pytest.raises(TowerTooShort):
        shift_difference(Tower.constant(ChainComplex({0: 1}), 1))
    with pytest.raises(InvalidTower):
        Tower([ChainComplex({0: 1})] * 2, [])


def test_noncommuting_square_rejected():
    C = ChainComplex({0: 1})
    T = Tower.constant(C, 2)
    with pytest.raises(InvalidTower):
        MapTower(T, T, [ChainMap.identity(C), ChainMap.identity(C).scaled(2)])


@settings(max_examples=25)
@given(st.integers(0, 10 ** 6))
def test_shift_maps_are_chain_maps(seed):
    rng = rng_for(seed, "tower-test")
    assert not chain_map_failures(shift_difference(random_tower(rng)))
    assert not chain_map_failures(pair_shift_difference(random_map_tower(rng)))


def test_identity_pair_shift_block():
    C = ChainComplex({0: 1})
    F = levelwise_identity(Tower.constant(C, 2))
    s = pair_shift_difference(F)
    # cone of id on Z: C_1 = Z (source), C_0 = Z (target)
    assert s.component(0) == IntMatrix([[-1, 1]])
    assert s.component(1) == IntMatrix([[-1, 1]])


def test_identity_on_domain_restricts_to_shift():
    T = random_tower(rng_for(1, "dom"), N=3)
    F = levelwise_identity(T)
    s, p = pair_shift_difference(F), shift_difference(T)
    for n in p.source.degrees:
        # source-block rows/columns of the cone coordinates in degree n + 1
        rows = [k for i, C in enumerate(cone_tower(F).levels[:2]) for k in _source_block(cone_tower(F), i, n + 1)]
        cols = [k for i, C in enumerate(cone_tower(F).levels) for k in _source_block(cone_tower(F), i, n + 1)]
        assert s.component(n + 1).select_rows(rows).select_columns(cols) == p.component(n)


def _source_block(T, i, n):
    offset = sum(C.rank(n) for C in T.levels[:i])
    a, _ = T.levels[i].split(n)
    return range(offset, offset + a)


def test_solenoid_pair_is_valid():
    F = solenoid_map_tower(2, 3, 3)
    assert not chain_map_failures(pair_shift_difference(F))
    assert sigma_partial_ses(F).passes()


def test_constant_identity_point_strong_homology():
    P = point().chains()
    F = levelwise_identity(Tower.constant(P, 2))
    assert strong_homology(F, 0).is_trivial()
    assert all(strong_homology(F, n).is_trivial() for n in range(-1, 3))


def test_identity_circle_tower_is_trivial():
    F = levelwise_identity(Tower.constant(circle(3).chains(), 3))
    for n in range(-1, 3):
        assert strong_homology(F, n).is_trivial()
        assert strong_homology(F, n).isomorphic(MappingCone(F.maps[-1]).homology(n))


def test_point_to_circle_inclusion():
    F = inclusion_tower(3)
    assert strong_homology(F, 1).isomorphic(MappingCone(F.maps[-1]).homology(1))
    assert strong_homology(F, 1).isomorphic(Z)


def test_solenoid_pair_strong_homology():
    F = solenoid_map_tower(2, 3, 3)
    assert strong_homology(F, 1).invariants == ((3,), 0)


def test_tower_strong_homology_matches_last_level():
    T = solenoid_tower(2, 3)
    for n in (0, 1):
        assert tower_strong_homology(T, n).isomorphic(T.levels[-1].homology(n))


def test_degenerate_ses():
    F = random_map_tower(rng_for(3, "deg"))
    s = sigma_partial_ses(trivial_domain(F))
    assert s.passes()
    for n in s.sigma.source.degrees:
        assert s.sigma.component(n).nrows == s.sigma.component(n).ncols
        assert s.partial.component(n).nrows == 0
    s = sigma_partial_ses(trivial_codomain(F))
    assert s.passes()
    for n in s.sigma.target.degrees:
        assert s.sigma.component(n).ncols == 0
        P = s.partial.component(n)
        assert P.nrows == P.ncols


@given(st.integers(0, 10 ** 6))
@settings(max_examples=15)
def test_les_exact(seed):
    les = long_exact_sequence(random_map_tower(rng_for(seed, "les-test")))
    assert all(les.composites_zero()) and les.is_exact()


def test_les_levelwise_identity_forces_isomorphisms():
    F = levelwise_identity(random_tower(rng_for(5, "les-id")))
    les = long_exact_sequence(F)
    assert all(G.is_trivial() for G in les.groups[1::3])
    E = [h for h, lab in zip(les.maps, les.map_labels) if lab.startswith("E_")]
    assert E and all(h.is_isomorphism() for h in E)


def test_les_trivial_codomain_gives_suspension():
    F = trivial_codomain(random_map_tower(rng_for(6, "les-tc")))
    les = long_exact_sequence(F)
    partial = [h for h, lab in zip(les.maps, les.map_labels) if lab.startswith("partial_")]
    assert all(h.is_isomorphism() for h in partial)


def test_identity_morphism_induces_identity():
    F = solenoid_map_tower(2, 3, 2)
    M = TowerMorphism.identity(F)
    for n in (0, 1):
        assert induced_morphism(M, n).is_identity()


def test_morphism_into_acyclic_target_is_zero():
    K = ChainComplex({0: 1, 1: 1}, {1: IntMatrix([[1]])})
    F = levelwise_identity(Tower.constant(circle(3).chains(), 2))
    G = levelwise_identity(Tower.constant(K, 2))
    S = circle(3).chains()
    z = ChainMap.zero(S, K)
    M = TowerMorphism(F, G, [CoherentChainMorphism.strict(f, g, z, z) for f, g in zip(F.maps, G.maps)])
    assert all(induced_morphism(M, n).is_zero() for n in range(-1, 3))


def test_scalar_three_on_solenoid_pair():
    F = solenoid_map_tower(2, 1, 2)
    M = scalar_morphism(F, 3)
    h = induced_morphism(M, 0)
    assert h.matrix == IntMatrix.scalar(h.matrix.nrows, 3) or h.source.is_trivial()
    X = solenoid_tower(2, 2)
    G = MapTower(Tower.constant(ChainComplex.zero(), 2), X,
                 [ChainMap.zero(ChainComplex.zero(), C) for C in X.levels])
    M = scalar_morphism(G, 3)
    h = induced_morphism(M, 1)
    assert h.source.isomorphic(Z)
    assert h.matrix == IntMatrix([[3]])


def test_random_morphism_ladder():
    from stronghom.exact import certificate_passes
    M = random_tower_morphism(rng_for(2, "ladder"))
    assert certificate_passes(M.ladder_certificate())


def test_reindex():
    F = random_map_tower(rng_for(4, "reindex"), N=4)
    G = F.reindex([0, 2, 3])
    assert G.length == 3 and G.domain.bonds[0] == F.domain.bond(0, 2)
    with pytest.raises(InvalidTower):
        F.reindex([2, 1])
