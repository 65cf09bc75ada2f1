"""lim and lim^1 of group towers; the Milnor sequence of a finite map tower."""

import pytest
from hypothesis import given, strategies as st

from stronghom.algebra import FgAbGroup, Homomorphism
from stronghom.chain import ChainComplex, ChainMap, CoherentChainMorphism
from stronghom.errors import InvalidTower
from stronghom.generators import levelwise_identity, random_map_tower, random_unimodular, rng_for, \
    scalar_morphism
from stronghom.limits import GroupTower, homology_group_tower, inverse_limit, level_homology_tower, \
    lim1_verdict, milnor_naturality, milnor_report
from stronghom.matrix import IntMatrix
from stronghom.simplicial import circle, point, solenoid_tower
from stronghom.tower import MapTower, Tower, TowerMorphism

Z = FgAbGroup.from_invariants((), 1)


def test_constant_identity_limit():
    assert inverse_limit(GroupTower.constant(Z)).isomorphic(Z)
    assert lim1_verdict(GroupTower.constant(Z)).zero


@pytest.mark.parametrize("p", [2, 3, 5, -2])
def test_multiplication_tower(p):
    T = GroupTower.scalar(Z, p)
    assert inverse_limit(T).is_trivial()
    v = lim1_verdict(T)
    assert v.verdict == "nonzero"
    assert abs(v.certificate["determinant_on_stable_lattice"]) == abs(p)


@pytest.mark.parametrize("u", [1, -1])
def test_unit_tower(u):
    T = GroupTower.scalar(Z, u)
    assert lim1_verdict(T).zero
    assert inverse_limit(T).isomorphic(Z)


def test_torsion_towers():
    Z4 = FgAbGroup.from_invariants((4,))
    assert inverse_limit(GroupTower.scalar(Z4, 2)).is_trivial()
    assert lim1_verdict(GroupTower.scalar(Z4, 2)).zero
    Z6 = FgAbGroup.from_invariants((6,))
    assert lim1_verdict(GroupTower.scalar(Z6, 2)).zero
    assert inverse_limit(GroupTower.scalar(Z6, 2)).invariants == ((3,), 0)


def test_mixed_tower():
    # Z + Z with bond diag(1, 2): lim = Z, lim^1 nonzero
    A = FgAbGroup.from_invariants((), 2)
    T = GroupTower(tail=(A, Homomorphism(A, A, IntMatrix.diagonal([1, 2]))))
    assert inverse_limit(T).isomorphic(Z)
    assert not lim1_verdict(T).zero


@given(st.integers(0, 10 ** 6))
def test_conjugation_invariance(seed):
    rng = rng_for(seed, "conj")
    d = [rng.choice((0, 1, -1, 2, 3)) for _ in range(2)]
    A = FgAbGroup.from_invariants((), 2)
    P, Pi = random_unimodular(rng, 2)
    D = IntMatrix.diagonal(d)
    T1 = GroupTower(tail=(A, Homomorphism(A, A, D)))
    T2 = GroupTower(tail=(A, Homomorphism(A, A, P @ D @ Pi)))
    assert lim1_verdict(T1).zero == lim1_verdict(T2).zero
    assert inverse_limit(T1).isomorphic(inverse_limit(T2))


def test_finite_mode_shift():
    T = GroupTower([Z, Z, Z], [Homomorphism(Z, Z, IntMatrix([[2]]))] * 2)
    assert T.mode == "finite"
    assert inverse_limit(T).isomorphic(Z)
    assert lim1_verdict(T).zero


def test_splice_required():
    with pytest.raises(InvalidTower):
        GroupTower([Z], [], tail=(Z, Homomorphism.identity(Z)))


def test_solenoid_homology_tower():
    H1 = level_homology_tower(solenoid_tower(2, 3), 1)
    assert all(G.isomorphic(Z) for G in H1.groups)
    assert all(b.matrix == IntMatrix([[2]]) for b in H1.bonds)
    H1 = level_homology_tower(solenoid_tower(3, 2), 1)
    assert H1.bonds[0].matrix == IntMatrix([[3]])


def inclusion_tower(N):
    P, S = point().chains(), circle(3).chains()
    f = ChainMap(P, S, {0: IntMatrix([[1], [0], [0]])})
    return MapTower(Tower.constant(P, N), Tower.constant(S, N), [f] * N)


def test_milnor_levelwise_identity():
    F = levelwise_identity(Tower.constant(circle(3).chains(), 3))
    for n in (0, 1):
        r = milnor_report(F, n)
        assert r.passes()
        assert r.lim.is_trivial() and r.lim1_group.is_trivial() and r.strong_group.is_trivial()


def test_milnor_point_to_circle():
    F = inclusion_tower(3)
    r = milnor_report(F, 1)
    assert r.passes()
    assert r.lim1_group.is_trivial()
    assert r.strong_group.isomorphic(Z) and r.lim.isomorphic(Z)
    assert homology_group_tower(F, 1).groups[-1].isomorphic(Z)


def test_milnor_random():
    F = random_map_tower(rng_for(9, "milnor-test"))
    for n in range(-1, 4):
        assert milnor_report(F, n).passes()


def test_naturality_examples():
    from stronghom.exact import certificate_passes
    F = inclusion_tower(2)
    assert certificate_passes(milnor_naturality(TowerMorphism.identity(F), 1))
    M = scalar_morphism(levelwise_identity(solenoid_tower(2, 2)), 3)
    assert certificate_passes(milnor_naturality(M, 1))
    K = ChainComplex.zero()
    G = levelwise_identity(Tower.constant(K, 2))
    S = circle(3).chains()
    z = ChainMap.zero(S, K)
    H = levelwise_identity(Tower.constant(S, 2))
    M = TowerMorphism(H, G, [CoherentChainMorphism.strict(f, g, z, z) for f, g in zip(H.maps, G.maps)])
    assert certificate_passes(milnor_naturality(M, 0))
