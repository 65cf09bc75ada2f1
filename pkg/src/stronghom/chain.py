"""Bounded chain complexes over Z, chain maps, homotopies and mapping cones.

Cone convention: for ``f: L -> M`` the cone has ``C_n = L_{n-1} + M_n`` (the
L-block listed first) and differential ``d(l, m) = (dl, -dm + f l)``.

Coherent morphisms ``Phi = (phi1, phi2, phi12): f -> g`` (``f: L -> M``,
``g: P -> Q``) carry a homotopy ``phi12`` *from* ``phi2 f`` *to* ``g phi1``,
i.e. ``d phi12 + phi12 d = g phi1 - phi2 f``.  This is the orientation for
which ``(l, m) -> (phi1 l, phi2 m + phi12 l)`` commutes with the cone
differentials.
"""

from __future__ import annotations

from typing import Mapping

from .algebra import FgAbGroup, Homomorphism, kernel_basis, subquotient
from .errors import (IncoherentHomotopy, IncoherentMorphism, InvalidChainMap, InvalidComplex,
                     InvalidHomotopy)
from .matrix import IntMatrix


class ChainComplex:
    """A finitely supported complex of free abelian groups.

    ``ranks`` maps degree -> rank, ``differentials`` maps ``n`` to the matrix
    of ``d_n: C_n -> C_{n-1}``; missing differentials are zero.
    """

    def __init__(self, ranks: Mapping[int, int], differentials: Mapping[int, IntMatrix] | None = None,
                 check: bool = True):
        support = [n for n, r in ranks.items() if r]
        if any(r < 0 for r in ranks.values()):
            raise InvalidComplex("negative rank")
        if support:
            self.lo, self.hi = min(support), max(support)
        else:
            self.lo, self.hi = 0, -1
        self._ranks = {n: ranks.get(n, 0) for n in range(self.lo, self.hi + 1)}
        self._d: dict[int, IntMatrix] = {}
        for n, mat in (differentials or {}).items():
            shape = (self.rank(n - 1), self.rank(n))
            if mat.shape != shape:
                raise InvalidComplex(f"differential {n} has shape {mat.shape}, expected {shape}")
            if shape[0] and shape[1]:
                self._d[n] = mat
        self._homology: dict[int, FgAbGroup] = {}
        if check:
            for n in range(self.lo + 2, self.hi + 1):
                if not (self.differential(n - 1) @ self.differential(n)).is_zero():
                    raise InvalidComplex(f"d_{n - 1} d_{n} != 0")

    @classmethod
    def zero(cls) -> ChainComplex:
        return cls({})

    @classmethod
    def concentrated(cls, rank: int, degree: int = 0) -> ChainComplex:
        return cls({degree: rank})

    @property
    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def rank(self, n: int) -> int:
        return self._ranks.get(n, 0)

    def ranks(self) -> dict[int, int]:
        return dict(self._ranks)

    def differential(self, n: int) -> IntMatrix:
        mat = self._d.get(n)
        if mat is None:
            return IntMatrix.zeros(self.rank(n - 1), self.rank(n))
        return mat

    def is_zero(self) -> bool:
        return self.hi < self.lo

    def cycles(self, n: int) -> IntMatrix:
        return kernel_basis(self.differential(n))

    def boundaries(self, n: int) -> IntMatrix:
        return self.differential(n + 1)

    def homology(self, n: int) -> FgAbGroup:
        """``ker d_n / im d_{n+1}``, realised on cycle representatives."""
        H = self._homology.get(n)
        if H is None:
            H = subquotient(self.cycles(n), self.boundaries(n))
            self._homology[n] = H
        return H

    def is_acyclic(self) -> bool:
        return all(self.homology(n).is_trivial() for n in self.degrees)

    def shift(self, k: int = 1) -> ChainComplex:
        """``(C[k])_n = C_{n-k}`` with the same (unsigned) differential."""
        return ChainComplex({n + k: r for n, r in self._ranks.items()},
                            {n + k: d for n, d in self._d.items()}, check=False)

    def direct_sum(self, *others: ChainComplex) -> ChainComplex:
        parts = (self,) + others
        lo = min(c.lo for c in parts)
        hi = max(c.hi for c in parts)
        ranks = {n: sum(c.rank(n) for c in parts) for n in range(lo, hi + 1)}
        diffs = {n: IntMatrix.block_diag([c.differential(n) for c in parts]) for n in range(lo, hi + 1)}
        return ChainComplex(ranks, diffs, check=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChainComplex):
            return NotImplemented
        return (self._ranks == other._ranks
                and all(self.differential(n) == other.differential(n) for n in self.degrees))

    __hash__ = None

    def __repr__(self) -> str:
        return f"{type(self).__name__}(ranks={self._ranks})"


class GradedMap:
    """A family ``component(n): S_n -> T_{n+degree}``; absent components are zero."""

    def __init__(self, source: ChainComplex, target: ChainComplex, degree: int,
                 components: Mapping[int, IntMatrix] | None = None):
        self.source = source
        self.target = target
        self.degree = degree
        self._c: dict[int, IntMatrix] = {}
        for n, mat in (components or {}).items():
            shape = (target.rank(n + degree), source.rank(n))
            if mat.shape != shape:
                raise InvalidChainMap(f"component {n} has shape {mat.shape}, expected {shape}")
            if shape[0] and shape[1]:
                self._c[n] = mat

    def component(self, n: int) -> IntMatrix:
        mat = self._c.get(n)
        if mat is None:
            return IntMatrix.zeros(self.target.rank(n + self.degree), self.source.rank(n))
        return mat

    def components(self) -> dict[int, IntMatrix]:
        return {n: self.component(n) for n in self.source.degrees}

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self._c.values())

    def same_components(self, other: GradedMap) -> bool:
        return all(self.component(n) == other.component(n) for n in self.source.degrees)

    def __add__(self, other: GradedMap) -> GradedMap:
        return GradedMap(self.source, self.target, self.degree,
                         {n: self.component(n) + other.component(n) for n in self.source.degrees})

    def __sub__(self, other: GradedMap) -> GradedMap:
        return GradedMap(self.source, self.target, self.degree,
                         {n: self.component(n) - other.component(n) for n in self.source.degrees})

    def __neg__(self) -> GradedMap:
        return GradedMap(self.source, self.target, self.degree,
                         {n: -m for n, m in self._c.items()})

    def scaled(self, k: int) -> GradedMap:
        return GradedMap(self.source, self.target, self.degree,
                         {n: m * k for n, m in self._c.items()})

    def compose(self, other: GradedMap) -> GradedMap:
        """``self o other`` as a graded map (degrees add)."""
        comps = {}
        for n in other.source.degrees:
            comps[n] = self.component(n + other.degree) @ other.component(n)
        return GradedMap(other.source, self.target, self.degree + other.degree, comps)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(degree={self.degree}, source={self.source!r}, target={self.target!r})"


class ChainMap(GradedMap):
    """Degree-0 graded map commuting with the differentials (checked)."""

    def __init__(self, source: ChainComplex, target: ChainComplex,
                 components: Mapping[int, IntMatrix] | None = None, check: bool = True):
        super().__init__(source, target, 0, components)
        if check:
            bad = self.commutation_failures()
            if bad:
                raise InvalidChainMap(f"d f != f d in degrees {bad}")

    def commutation_failures(self) -> list[int]:
        lo = min(self.source.lo, self.target.lo)
        hi = max(self.source.hi, self.target.hi) + 1
        out = []
        for n in range(lo, hi + 1):
            left = self.target.differential(n) @ self.component(n)
            right = self.component(n - 1) @ self.source.differential(n)
            if left != right:
                out.append(n)
        return out

    @classmethod
    def identity(cls, C: ChainComplex) -> ChainMap:
        return cls(C, C, {n: IntMatrix.identity(C.rank(n)) for n in C.degrees}, check=False)

    @classmethod
    def zero(cls, S: ChainComplex, T: ChainComplex) -> ChainMap:
        return cls(S, T, {}, check=False)

    @classmethod
    def from_graded(cls, g: GradedMap, check: bool = True) -> ChainMap:
        if g.degree != 0:
            raise InvalidChainMap("a chain map has degree 0")
        return cls(g.source, g.target, g._c, check=check)

    def __matmul__(self, other: ChainMap) -> ChainMap:
        if not isinstance(other, ChainMap):
            return NotImplemented
        return ChainMap(other.source, self.target,
                        {n: self.component(n) @ other.component(n) for n in other.source.degrees},
                        check=False)

    def __add__(self, other):
        return ChainMap.from_graded(GradedMap.__add__(self, other), check=False)

    def __sub__(self, other):
        return ChainMap.from_graded(GradedMap.__sub__(self, other), check=False)

    def __neg__(self):
        return ChainMap.from_graded(GradedMap.__neg__(self), check=False)

    def scaled(self, k: int) -> ChainMap:
        return ChainMap.from_graded(GradedMap.scaled(self, k), check=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChainMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.same_components(other))

    __hash__ = None

    def shift(self, k: int = 1) -> ChainMap:
        return ChainMap(self.source.shift(k), self.target.shift(k),
                        {n + k: m for n, m in self._c.items()}, check=False)

    def induced_on_homology(self, n: int) -> Homomorphism:
        return Homomorphism.induced(self.component(n), self.source.homology(n), self.target.homology(n))

    def direct_sum(self, *others: ChainMap) -> ChainMap:
        parts = (self,) + others
        S = self.source.direct_sum(*[p.source for p in others])
        T = self.target.direct_sum(*[p.target for p in others])
        return ChainMap(S, T, {n: IntMatrix.block_diag([p.component(n) for p in parts])
                               for n in S.degrees}, check=False)


class ChainHomotopy(GradedMap):
    """Degree +1 map ``H`` with ``dH + Hd = to_map - from_map`` (checked)."""

    def __init__(self, from_map: ChainMap, to_map: ChainMap,
                 components: Mapping[int, IntMatrix] | None = None, check: bool = True):
        if from_map.source != to_map.source or from_map.target != to_map.target:
            raise InvalidHomotopy("homotopic maps must share source and target")
        super().__init__(from_map.source, from_map.target, 1, components)
        self.from_map = from_map
        self.to_map = to_map
        if check:
            bad = self.identity_failures()
            if bad:
                raise InvalidHomotopy(f"dH + Hd != g - f in degrees {bad}")

    def identity_failures(self) -> list[int]:
        S, T = self.source, self.target
        out = []
        for n in range(min(S.lo, T.lo) - 1, max(S.hi, T.hi) + 2):
            lhs = T.differential(n + 1) @ self.component(n) + self.component(n - 1) @ S.differential(n)
            if lhs != self.to_map.component(n) - self.from_map.component(n):
                out.append(n)
        return out

    @classmethod
    def zero(cls, f: ChainMap) -> ChainHomotopy:
        return cls(f, f, {}, check=False)

    @classmethod
    def from_graded(cls, H: GradedMap, f: ChainMap) -> ChainHomotopy:
        """The homotopy ``H`` starting at ``f``; its endpoint ``f + dH + Hd`` is computed."""
        S, T = f.source, f.target
        comps = {}
        for n in S.degrees:
            comps[n] = f.component(n) + T.differential(n + 1) @ H.component(n) \
                + H.component(n - 1) @ S.differential(n)
        g = ChainMap(S, T, comps, check=False)
        return cls(f, g, H._c, check=False)


def homology(C: ChainComplex, n: int) -> FgAbGroup:
    return C.homology(n)


def induced_on_homology(f: ChainMap, n: int) -> Homomorphism:
    return f.induced_on_homology(n)


class MappingCone(ChainComplex):
    """The cone of ``f: L -> M`` with ``d(l, m) = (dl, -dm + f l)``."""

    def __init__(self, f: ChainMap):
        L, M = f.source, f.target
        self.of = f
        lo, hi = min(L.lo + 1, M.lo), max(L.hi + 1, M.hi)
        ranks = {n: L.rank(n - 1) + M.rank(n) for n in range(lo, hi + 1)}
        diffs = {}
        for n in range(lo + 1, hi + 1):
            diffs[n] = IntMatrix.block([
                [L.differential(n - 1), IntMatrix.zeros(L.rank(n - 2), M.rank(n))],
                [f.component(n - 1), -M.differential(n)],
            ])
        super().__init__(ranks, diffs, check=False)

    def split(self, n: int) -> tuple[int, int]:
        """Ranks of the (source degree n-1, target degree n) blocks of ``C_n``."""
        return self.of.source.rank(n - 1), self.of.target.rank(n)

    def inclusion_matrix(self, n: int) -> IntMatrix:
        """Degree-``n`` component of :meth:`inclusion`."""
        a, b = self.split(n)
        sign = -1 if n % 2 else 1
        return IntMatrix._raw(((0,) * b,) * a + IntMatrix.scalar(b, sign).rows, (a + b, b))

    def projection_matrix(self, n: int) -> IntMatrix:
        """Degree-``n`` component of :meth:`projection`."""
        a, b = self.split(n)
        tail = (0,) * (a + b)
        return IntMatrix._raw(tuple(tail[:i] + (1,) + tail[i + 1:] for i in range(a)), (a, a + b))

    def inclusion(self) -> ChainMap:
        """``M -> C``, ``m -> (0, (-1)^n m)``; the sign makes it a chain map."""
        M = self.of.target
        return ChainMap(M, self, {n: self.inclusion_matrix(n) for n in M.degrees}, check=False)

    def projection(self) -> ChainMap:
        """``C -> L[1]``, ``(l, m) -> l``."""
        target = self.of.source.shift(1)
        return ChainMap(self, target, {n: self.projection_matrix(n) for n in self.degrees}, check=False)


def mapping_cone(f: ChainMap) -> MappingCone:
    return MappingCone(f)


class CoherentChainMorphism:
    """``Phi = (phi1, phi2, phi12): f -> g`` with ``phi12`` a homotopy ``phi2 f ~> g phi1``."""

    def __init__(self, f: ChainMap, g: ChainMap, phi1: ChainMap, phi2: ChainMap,
                 phi12: GradedMap | Mapping[int, IntMatrix] | None = None):
        if phi1.source != f.source or phi2.source != f.target:
            raise IncoherentMorphism("phi1/phi2 sources must be the source/target of f")
        if phi1.target != g.source or phi2.target != g.target:
            raise IncoherentMorphism("phi1/phi2 targets must be the source/target of g")
        self.f, self.g, self.phi1, self.phi2 = f, g, phi1, phi2
        comps = phi12._c if isinstance(phi12, GradedMap) else (phi12 or {})
        try:
            self.phi12 = ChainHomotopy(phi2 @ f, g @ phi1, comps)
        except InvalidHomotopy as exc:
            raise IncoherentMorphism(f"phi12 is not a homotopy from phi2 f to g phi1: {exc}") from None

    @classmethod
    def strict(cls, f: ChainMap, g: ChainMap, phi1: ChainMap, phi2: ChainMap) -> CoherentChainMorphism:
        return cls(f, g, phi1, phi2, None)

    @classmethod
    def identity(cls, f: ChainMap) -> CoherentChainMorphism:
        return cls(f, f, ChainMap.identity(f.source), ChainMap.identity(f.target), None)

    def is_strict(self) -> bool:
        return self.phi12.is_zero()

    def __repr__(self) -> str:
        return f"CoherentChainMorphism(strict={self.is_strict()})"


class CoherentChainHomotopy:
    """``D = (d1, d2, d12)`` relating coherent morphisms ``Phi`` and ``Psi``.

    ``d1: phi1 ~> psi1`` and ``d2: phi2 ~> psi2`` are homotopies; ``d12`` has
    degree +2 and satisfies ``d d12 - d12 d = g d1 - d2 f + phi12 - psi12``.
    """

    def __init__(self, Phi: CoherentChainMorphism, Psi: CoherentChainMorphism,
                 d1: GradedMap | Mapping[int, IntMatrix] | None,
                 d2: GradedMap | Mapping[int, IntMatrix] | None,
                 d12: GradedMap | Mapping[int, IntMatrix] | None):
        if Phi.f != Psi.f or Phi.g != Psi.g:
            raise IncoherentHomotopy("Phi and Psi must be morphisms between the same maps")
        self.Phi, self.Psi = Phi, Psi
        f, g = Phi.f, Phi.g
        c = (lambda x: x._c if isinstance(x, GradedMap) else (x or {}))
        try:
            self.d1 = ChainHomotopy(Phi.phi1, Psi.phi1, c(d1))
            self.d2 = ChainHomotopy(Phi.phi2, Psi.phi2, c(d2))
        except InvalidHomotopy as exc:
            raise IncoherentHomotopy(str(exc)) from None
        self.d12 = GradedMap(f.source, g.target, 2, c(d12))
        bad = self.identity_failures()
        if bad:
            raise IncoherentHomotopy(f"degree-two identity fails in degrees {bad}")

    def identity_failures(self) -> list[int]:
        f, g = self.Phi.f, self.Phi.g
        L, Q = f.source, g.target
        out = []
        for n in range(L.lo - 1, L.hi + 2):
            lhs = Q.differential(n + 2) @ self.d12.component(n) - self.d12.component(n - 1) @ L.differential(n)
            rhs = (g.component(n + 1) @ self.d1.component(n) - self.d2.component(n) @ f.component(n)
                   + self.Phi.phi12.component(n) - self.Psi.phi12.component(n))
            if lhs != rhs:
                out.append(n)
        return out


def cone_functor_map(Phi: CoherentChainMorphism) -> ChainMap:
    """``C(f) -> C(g)``, ``(l, m) -> (phi1 l, phi2 m + phi12 l)``; commutation is re-verified."""
    Cf, Cg = MappingCone(Phi.f), MappingCone(Phi.g)
    comps = {}
    for n in Cf.degrees:
        a, b = Cf.split(n)
        c, d = Cg.split(n)
        comps[n] = IntMatrix.block([
            [Phi.phi1.component(n - 1), IntMatrix.zeros(c, b)],
            [Phi.phi12.component(n - 1), Phi.phi2.component(n)],
        ])
    try:
        return ChainMap(Cf, Cg, comps)
    except InvalidChainMap as exc:
        raise IncoherentMorphism(str(exc)) from None


def cone_functor_homotopy(D: CoherentChainHomotopy, Phi: CoherentChainMorphism | None = None,
                          Psi: CoherentChainMorphism | None = None) -> ChainHomotopy:
    """``(l, m) -> (d1 l, -d2 m + d12 l)``: a homotopy from ``Phi_cone`` to ``Psi_cone``.

    With the orientations fixed in this module the identity
    ``dD + Dd = Psi_cone - Phi_cone`` holds with no extra sign.
    """
    Phi = Phi or D.Phi
    Psi = Psi or D.Psi
    if Phi is not D.Phi or Psi is not D.Psi:
        raise IncoherentHomotopy("D does not relate the given morphisms")
    F, G = cone_functor_map(Phi), cone_functor_map(Psi)
    Cf, Cg = F.source, F.target
    comps = {}
    for n in Cf.degrees:
        a, b = Cf.split(n)
        c, d = Cg.split(n + 1)
        comps[n] = IntMatrix.block([
            [D.d1.component(n - 1), IntMatrix.zeros(c, b)],
            [D.d12.component(n - 1), -D.d2.component(n)],
        ])
    try:
        return ChainHomotopy(F, G, comps)
    except InvalidHomotopy as exc:
        raise IncoherentHomotopy(str(exc)) from None


def compose_coherent(Phi: CoherentChainMorphism, Psi: CoherentChainMorphism) -> CoherentChainMorphism:
    """``Psi o Phi = (psi1 phi1, psi2 phi2, psi12 phi1 + psi2 phi12)``."""
    if Phi.g != Psi.f:
        raise IncoherentMorphism("endpoint mismatch in composition")
    phi12 = Psi.phi12.compose(Phi.phi1) + Psi.phi2.compose(Phi.phi12)
    return CoherentChainMorphism(Phi.f, Psi.g, Psi.phi1 @ Phi.phi1, Psi.phi2 @ Phi.phi2, phi12)


def degrees_of(*complexes: ChainComplex) -> range:
    cs = [c for c in complexes if not c.is_zero()]
    if not cs:
        return range(0)
    return range(min(c.lo for c in cs), max(c.hi for c in cs) + 1)
