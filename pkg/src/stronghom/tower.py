"""Finite towers of complexes and of chain maps.

A tower ``X_1 <- X_2 <- ... <- X_N`` stores ``bonds[i]: levels[i+1] -> levels[i]``.
The shift-difference map goes from the product over levels ``1..N`` to the
product over ``1..N-1``, ``(c_i) -> (p(c_{i+1}) - c_i)``, with no wrap-around
term at the last level.  The strong homology of a map tower in degree ``n`` is
``H_{n+1}`` of the cone of the shift-difference map of its tower of cones.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import FgAbGroup, Homomorphism
from .chain import (ChainComplex, ChainHomotopy, ChainMap, CoherentChainHomotopy,
                    CoherentChainMorphism, MappingCone, cone_functor_homotopy, cone_functor_map,
                    degrees_of)
from .errors import InvalidChainMap, InvalidTower, TowerTooShort
from .exact import LongExactSequence, certificate_passes, homology_les, ses_certificate
from .matrix import IntMatrix


class Tower:
    def __init__(self, levels: Sequence[ChainComplex], bonds: Sequence[ChainMap]):
        if not levels:
            raise InvalidTower("a tower needs at least one level")
        if len(bonds) != len(levels) - 1:
            raise InvalidTower(f"{len(levels)} levels need {len(levels) - 1} bonds, got {len(bonds)}")
        for i, b in enumerate(bonds):
            if b.source != levels[i + 1] or b.target != levels[i]:
                raise InvalidTower(f"bond {i} does not go from level {i + 1} to level {i}")
        self.levels = list(levels)
        self.bonds = list(bonds)

    @property
    def length(self) -> int:
        return len(self.levels)

    @classmethod
    def constant(cls, C: ChainComplex, N: int) -> Tower:
        return cls([C] * N, [ChainMap.identity(C)] * (N - 1))

    def bond(self, i: int, j: int) -> ChainMap:
        """Composite bond ``levels[j] -> levels[i]`` for ``i <= j`` (0-based)."""
        out = ChainMap.identity(self.levels[j])
        for k in range(j - 1, i - 1, -1):
            out = self.bonds[k] @ out
        return out

    def truncate(self, N: int) -> Tower:
        return Tower(self.levels[:N], self.bonds[:N - 1])

    def __repr__(self) -> str:
        return f"Tower(N={self.length})"


class MapTower:
    """Levelwise chain maps ``f_i: X_i -> X'_i`` with ``f_i p_i = p'_i f_{i+1}``."""

    def __init__(self, domain: Tower, codomain: Tower, maps: Sequence[ChainMap]):
        if domain.length != codomain.length or len(maps) != domain.length:
            raise InvalidTower("domain, codomain and maps must have the same length")
        for i, f in enumerate(maps):
            if f.source != domain.levels[i] or f.target != codomain.levels[i]:
                raise InvalidTower(f"map {i} has the wrong endpoints")
        for i in range(domain.length - 1):
            left = maps[i] @ domain.bonds[i]
            right = codomain.bonds[i] @ maps[i + 1]
            if not left.same_components(right):
                raise InvalidTower(f"square {i} does not commute")
        self.domain = domain
        self.codomain = codomain
        self.maps = list(maps)
        self._cache: dict = {}

    @property
    def length(self) -> int:
        return self.domain.length

    @classmethod
    def identity(cls, T: Tower) -> MapTower:
        return cls(T, T, [ChainMap.identity(C) for C in T.levels])

    def reindex(self, indices: Sequence[int]) -> MapTower:
        """Subtower on the (strictly increasing, 0-based) ``indices`` with composite bonds."""
        if any(b <= a for a, b in zip(indices, indices[1:])):
            raise InvalidTower("reindexing needs a strictly increasing index function")
        X = Tower([self.domain.levels[k] for k in indices],
                  [self.domain.bond(a, b) for a, b in zip(indices, indices[1:])])
        Y = Tower([self.codomain.levels[k] for k in indices],
                  [self.codomain.bond(a, b) for a, b in zip(indices, indices[1:])])
        return MapTower(X, Y, [self.maps[k] for k in indices])

    def truncate(self, N: int) -> MapTower:
        return MapTower(self.domain.truncate(N), self.codomain.truncate(N), self.maps[:N])

    def cached(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    def __repr__(self) -> str:
        return f"MapTower(N={self.length})"


def _product(levels: Sequence[ChainComplex]) -> ChainComplex:
    if not levels:
        return ChainComplex.zero()
    return levels[0].direct_sum(*levels[1:])


def _product_map(maps: Sequence[ChainMap], source: ChainComplex, target: ChainComplex) -> ChainMap:
    return ChainMap(source, target, {n: IntMatrix.block_diag([f.component(n) for f in maps])
                                     for n in source.degrees}, check=False)


def product_complex(T: Tower) -> ChainComplex:
    return _product(T.levels)


def _shift_difference(T: Tower, check: bool = True) -> ChainMap:
    N = T.length
    K, K2 = _product(T.levels), _product(T.levels[:-1])
    comps = {}
    for n in K.degrees:
        grid = []
        for i in range(N - 1):
            row = []
            for j in range(N):
                r, c = T.levels[i].rank(n), T.levels[j].rank(n)
                if j == i:
                    row.append(-IntMatrix.identity(r))
                elif j == i + 1:
                    row.append(T.bonds[i].component(n))
                else:
                    row.append(IntMatrix.zeros(r, c))
            grid.append(row)
        comps[n] = IntMatrix.block(grid) if grid else IntMatrix.zeros(0, K.rank(n))
    return ChainMap(K, K2, comps, check=check)


def shift_difference(T: Tower, check: bool = True) -> ChainMap:
    """``(c_i) -> (p(c_{i+1}) - c_i)``; building it re-verifies the chain-map identity."""
    if T.length < 2:
        raise TowerTooShort("the shift-difference map needs at least two levels")
    return _shift_difference(T, check)


def chain_map_failures(f: ChainMap) -> list[int]:
    """Degrees where ``d f = f d`` fails (empty for a chain map)."""
    return f.commutation_failures()


def cone_bond(F: MapTower, i: int) -> ChainMap:
    """Bond ``C(f_{i+1}) -> C(f_i)`` induced by ``(p_i, p'_i)``."""
    def build():
        Phi = CoherentChainMorphism.strict(F.maps[i + 1], F.maps[i], F.domain.bonds[i], F.codomain.bonds[i])
        return cone_functor_map(Phi)
    return F.cached(("cone_bond", i), build)


def cone_tower(F: MapTower) -> Tower:
    def build():
        cones = [MappingCone(f) for f in F.maps]
        bonds = [cone_bond(F, i) for i in range(F.length - 1)]
        # bonds were built on their own cone objects; rebind to the shared ones
        bonds = [ChainMap(cones[i + 1], cones[i], b.components(), check=False) for i, b in enumerate(bonds)]
        return Tower(cones, bonds)
    return F.cached("cone_tower", build)


def pair_shift_difference(F: MapTower, check: bool = True) -> ChainMap:
    """Shift-difference map of the tower of levelwise cones."""
    if F.length < 2:
        raise TowerTooShort("the shift-difference map needs at least two levels")
    return F.cached(("pair_shift", check), lambda: _shift_difference(cone_tower(F), check))


def _pair_shift_any(F: MapTower) -> ChainMap:
    return F.cached("pair_shift_any", lambda: _shift_difference(cone_tower(F), False))


def strong_cone(F: MapTower) -> MappingCone:
    return F.cached("strong_cone", lambda: MappingCone(_pair_shift_any(F)))


def tower_cone(T: Tower) -> MappingCone:
    return MappingCone(_shift_difference(T, check=False))


def strong_homology(F: MapTower, n: int) -> FgAbGroup:
    """``H_{n+1}`` of the cone of the pair shift-difference map."""
    return strong_cone(F).homology(n + 1)


def tower_strong_homology(T: Tower, n: int) -> FgAbGroup:
    """The same construction for a single tower of complexes."""
    return tower_cone(T).homology(n + 1)


@dataclass
class SES:
    sigma: ChainMap
    partial: ChainMap
    certificate: dict

    def passes(self) -> bool:
        return certificate_passes(self.certificate)


def _inclusions(F: MapTower, k: int) -> ChainMap:
    """``prod_{i<k} X'_i -> prod_{i<k} C(f_i)``, levelwise ``c' -> (0, (-1)^n c')``."""
    cones = cone_tower(F).levels[:k]
    return _product_map([C.inclusion() for C in cones],
                        _product(F.codomain.levels[:k]), _product(cones))


def _projections(F: MapTower, k: int) -> ChainMap:
    """``prod_{i<k} C(f_i) -> (prod_{i<k} X_i)[1]``."""
    cones = cone_tower(F).levels[:k]
    return _product_map([C.projection() for C in cones],
                        _product(cones), _product(F.domain.levels[:k]).shift(1))


def sigma_partial_ses(F: MapTower, degrees=None) -> SES:
    """``0 -> C(p') -sigma-> C(p, p') -partial-> C(p)[1] -> 0`` with a degreewise certificate."""
    def build():
        N = F.length
        pp = _shift_difference(F.codomain, check=False)
        pq = _pair_shift_any(F)
        p = _shift_difference(F.domain, check=False)
        J = CoherentChainMorphism.strict(pp, pq, _inclusions(F, N), _inclusions(F, N - 1))
        sigma = cone_functor_map(J)
        P = CoherentChainMorphism.strict(pq, p.shift(1), _projections(F, N), _projections(F, N - 1))
        partial = cone_functor_map(P)
        target = MappingCone(p).shift(1)
        if partial.target != target:
            raise InvalidChainMap("cone of the shifted map differs from the shifted cone")
        C = strong_cone(F)
        sigma = ChainMap(sigma.source, C, sigma.components(), check=False)
        partial = ChainMap(C, target, partial.components(), check=False)
        return sigma, partial
    sigma, partial = F.cached("ses", build)
    cert = ses_certificate(sigma, partial, degrees)
    return SES(sigma, partial, cert)


def _les_range(F: MapTower) -> tuple[int, int]:
    d = degrees_of(*F.domain.levels, *F.codomain.levels)
    if not d:
        return 0, 0
    return d[-1] + 1, d[0] - 1


def long_exact_sequence(F: MapTower, top: int | None = None, bottom: int | None = None) -> LongExactSequence:
    """``... -> Hbar_n(X') -> Hbar_n(f) -> Hbar_{n-1}(X) -E-> Hbar_{n-1}(X') -> ...``

    for ``n`` from ``top`` down to ``bottom``; defaults cover every degree where
    a group can be nonzero.
    """
    t, b = _les_range(F)
    top = t if top is None else top
    bottom = b if bottom is None else bottom
    ses = sigma_partial_ses(F, degrees=[])
    les = homology_les(ses.sigma, ses.partial, top + 1, bottom + 1)
    labels, mlabels = [], []
    for n in range(top, bottom - 1, -1):
        labels += [f"Hbar_{n}(X')", f"Hbar_{n}(f)", f"Hbar_{n - 1}(X)"]
        mlabels += [f"sigma_{n}", f"partial_{n}"]
        if n > bottom:
            mlabels.append(f"E_{n - 1}")
    les.labels, les.map_labels = labels, mlabels
    return les


class TowerMorphism:
    """Levelwise coherent morphisms ``f_i -> g_i`` whose cone maps commute with the cone bonds."""

    def __init__(self, source: MapTower, target: MapTower, levels: Sequence[CoherentChainMorphism]):
        if source.length != target.length or len(levels) != source.length:
            raise InvalidTower("tower morphisms need towers and levels of equal length")
        for i, Phi in enumerate(levels):
            if Phi.f != source.maps[i] or Phi.g != target.maps[i]:
                raise InvalidTower(f"level {i} does not go from f_{i} to g_{i}")
        self.source, self.target = source, target
        self.levels = list(levels)
        self.cone_maps = [cone_functor_map(Phi) for Phi in levels]
        for i in range(source.length - 1):
            left = self.cone_maps[i] @ cone_bond(source, i)
            right = cone_bond(target, i) @ self.cone_maps[i + 1]
            if not left.same_components(right):
                raise InvalidTower(f"level maps {i}, {i + 1} do not commute with the cone bonds")
        self._cache: dict = {}

    @classmethod
    def strict(cls, source: MapTower, target: MapTower, phi1: Sequence[ChainMap],
               phi2: Sequence[ChainMap]) -> TowerMorphism:
        return cls(source, target, [CoherentChainMorphism.strict(f, g, a, b) for f, g, a, b in
                                    zip(source.maps, target.maps, phi1, phi2)])

    @classmethod
    def identity(cls, F: MapTower) -> TowerMorphism:
        return cls(F, F, [CoherentChainMorphism.identity(f) for f in F.maps])

    @classmethod
    def along(cls, source: MapTower, target: MapTower, indices: Sequence[int],
              levels: Sequence[CoherentChainMorphism]) -> TowerMorphism:
        """Morphism given by an increasing index function: ``levels[i]: f_{indices[i]} -> g_i``."""
        return cls(source.reindex(indices), target, levels)

    def _cached(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    def _levelwise(self, which: str, k: int) -> ChainMap:
        if which == "cone":
            maps = self.cone_maps[:k]
            S, T = cone_tower(self.source).levels[:k], cone_tower(self.target).levels[:k]
        elif which == "domain":
            maps = [Phi.phi1 for Phi in self.levels[:k]]
            S, T = self.source.domain.levels[:k], self.target.domain.levels[:k]
        else:
            maps = [Phi.phi2 for Phi in self.levels[:k]]
            S, T = self.source.codomain.levels[:k], self.target.codomain.levels[:k]
        return _product_map(maps, _product(S), _product(T))

    def chain_map(self, which: str = "cone") -> ChainMap:
        """Induced chain map on the strong cones; ``which`` selects the map, domain or codomain tower."""
        def build():
            N = self.source.length
            if which == "cone":
                s, t = _pair_shift_any(self.source), _pair_shift_any(self.target)
                S, T = strong_cone(self.source), strong_cone(self.target)
            else:
                side = (lambda F: F.domain) if which == "domain" else (lambda F: F.codomain)
                s = _shift_difference(side(self.source), check=False)
                t = _shift_difference(side(self.target), check=False)
                S, T = MappingCone(s), MappingCone(t)
            Phi = CoherentChainMorphism.strict(s, t, self._levelwise(which, N), self._levelwise(which, N - 1))
            m = cone_functor_map(Phi)
            return ChainMap(S, T, m.components(), check=False)
        return self._cached(("chain", which), build)

    def induced(self, n: int, which: str = "cone") -> Homomorphism:
        return self.chain_map(which).induced_on_homology(n + 1)

    def ladder_certificate(self, top: int | None = None, bottom: int | None = None) -> dict:
        """Commutativity of the three squares between the two long exact sequences."""
        t, b = _les_range(self.source)
        t2, b2 = _les_range(self.target)
        top = max(t, t2) if top is None else top
        bottom = min(b, b2) if bottom is None else bottom
        sF = sigma_partial_ses(self.source, degrees=[])
        sG = sigma_partial_ses(self.target, degrees=[])
        from .exact import connecting_homomorphism
        out = {}
        for n in range(top, bottom - 1, -1):
            k = n + 1
            a_f = self.induced(n, "codomain")
            c_f = self.induced(n, "cone")
            x_f = self.induced(n - 1, "domain")
            sq_sigma = c_f @ sF.sigma.induced_on_homology(k) == sG.sigma.induced_on_homology(k) @ a_f
            sq_partial = x_f @ sF.partial.induced_on_homology(k) == sG.partial.induced_on_homology(k) @ c_f
            a_next = self.induced(n - 1, "codomain")
            sq_E = (a_next @ connecting_homomorphism(sF.sigma, sF.partial, k)
                    == connecting_homomorphism(sG.sigma, sG.partial, k) @ x_f)
            out[n] = {"sigma": sq_sigma, "partial": sq_partial, "E": sq_E}
        return out


def induced_morphism(M: TowerMorphism, n: int) -> Homomorphism:
    """``Hbar_n(f) -> Hbar_n(g)``."""
    return M.induced(n)


class TowerHomotopy:
    """Levelwise coherent homotopies ``M1.levels[i] ~ M2.levels[i]`` compatible with the cone bonds."""

    def __init__(self, M1: TowerMorphism, M2: TowerMorphism, levels: Sequence[CoherentChainHomotopy]):
        if M1.source is not M2.source or M1.target is not M2.target:
            raise InvalidTower("homotopic tower morphisms must share source and target")
        self.M1, self.M2 = M1, M2
        self.levels = list(levels)
        for i, D in enumerate(levels):
            if D.Phi is not M1.levels[i] or D.Psi is not M2.levels[i]:
                raise InvalidTower(f"homotopy {i} does not relate level {i} of the morphisms")
        self.cone_homotopies = [cone_functor_homotopy(D) for D in levels]
        for i in range(M1.source.length - 1):
            left = self.cone_homotopies[i].compose(cone_bond(M1.source, i))
            right = cone_bond(M1.target, i).compose(self.cone_homotopies[i + 1])
            if not left.same_components(right):
                raise InvalidTower(f"homotopies {i}, {i + 1} do not commute with the cone bonds")

    def chain_homotopy(self) -> ChainHomotopy:
        """Homotopy between the induced chain maps on the strong cones (verified)."""
        N = self.M1.source.length
        F, G = self.M1.chain_map(), self.M2.chain_map()
        S, T = cone_tower(self.M1.source), cone_tower(self.M1.target)
        s, t = _pair_shift_any(self.M1.source), _pair_shift_any(self.M1.target)

        def prod_h(k):
            comps = {}
            Ssum, Tsum = _product(S.levels[:k]), _product(T.levels[:k])
            for n in Ssum.degrees:
                comps[n] = IntMatrix.block_diag([H.component(n) for H in self.cone_homotopies[:k]])
            return comps, Ssum, Tsum

        hN, _, _ = prod_h(N)
        hN1, _, _ = prod_h(N - 1)
        Phi = CoherentChainMorphism.strict(s, t, self.M1._levelwise("cone", N), self.M1._levelwise("cone", N - 1))
        Psi = CoherentChainMorphism.strict(s, t, self.M2._levelwise("cone", N), self.M2._levelwise("cone", N - 1))
        D = CoherentChainHomotopy(Phi, Psi, hN, hN1, None)
        H = cone_functor_homotopy(D)
        return ChainHomotopy(F, G, H._c)
