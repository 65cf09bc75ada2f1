"""Finite simplicial complexes, simplicial maps and their ordered chain complexes.

Simplices are oriented by the global vertex order.  A simplicial map sends an
oriented simplex to the sorted image simplex times the sign of the sorting
permutation, or to zero when two vertices collapse.
"""

from __future__ import annotations

from itertools import combinations
from typing import Hashable, Iterable, Sequence

from .algebra import Homomorphism, exact_at
from .chain import ChainComplex, ChainMap, MappingCone
from .errors import InvalidSimplicial
from .matrix import IntMatrix
from .tower import MapTower, Tower, strong_homology


def _perm_sign(seq: Sequence[int]) -> int:
    sign = 1
    s = list(seq)
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            if s[i] > s[j]:
                sign = -sign
    return sign


class SimplicialComplex:
    """Vertices in a fixed total order; ``simplices`` are closed downward on construction."""

    def __init__(self, vertices: Sequence[Hashable], simplices: Iterable[Iterable[Hashable]] = ()):
        self.vertices = list(vertices)
        self.index = {v: i for i, v in enumerate(self.vertices)}
        if len(self.index) != len(self.vertices):
            raise InvalidSimplicial("duplicate vertex labels")
        faces: set[tuple[int, ...]] = {(i,) for i in range(len(self.vertices))}
        for s in simplices:
            try:
                idx = tuple(sorted({self.index[v] for v in s}))
            except KeyError as exc:
                raise InvalidSimplicial(f"unknown vertex {exc.args[0]!r}") from None
            if not idx:
                continue
            for k in range(1, len(idx) + 1):
                faces.update(combinations(idx, k))
        self._by_dim: dict[int, list[tuple[int, ...]]] = {}
        for f in faces:
            self._by_dim.setdefault(len(f) - 1, []).append(f)
        for d in self._by_dim:
            self._by_dim[d].sort()
        self._pos = {f: i for d in self._by_dim for i, f in enumerate(self._by_dim[d])}
        self._chains = None

    @property
    def dimension(self) -> int:
        return max(self._by_dim, default=-1)

    def simplices(self, d: int) -> list[tuple[int, ...]]:
        """Sorted vertex-index tuples of the ``d``-simplices."""
        return self._by_dim.get(d, [])

    def labelled(self, d: int) -> list[tuple]:
        return [tuple(self.vertices[i] for i in s) for s in self.simplices(d)]

    def contains(self, idx: tuple[int, ...]) -> bool:
        return idx in self._pos

    def position(self, idx: tuple[int, ...]) -> int:
        return self._pos[idx]

    def maximal_simplices(self) -> list[tuple]:
        out = []
        for d in sorted(self._by_dim):
            for s in self._by_dim[d]:
                if not any(set(s) < set(t) for t in self._by_dim.get(d + 1, [])):
                    out.append(tuple(self.vertices[i] for i in s))
        return out

    def chains(self) -> ChainComplex:
        if self._chains is None:
            ranks = {d: len(s) for d, s in self._by_dim.items()}
            diffs = {}
            for d in range(1, self.dimension + 1):
                rows = [[0] * len(self.simplices(d)) for _ in self.simplices(d - 1)]
                for j, s in enumerate(self.simplices(d)):
                    for i in range(len(s)):
                        face = s[:i] + s[i + 1:]
                        rows[self._pos[face]][j] += -1 if i % 2 else 1
                diffs[d] = IntMatrix(rows, (len(self.simplices(d - 1)), len(self.simplices(d))))
            self._chains = ChainComplex(ranks, diffs)
        return self._chains

    def __repr__(self) -> str:
        return f"SimplicialComplex({len(self.vertices)} vertices, dim {self.dimension})"


class SimplicialMap:
    def __init__(self, source: SimplicialComplex, target: SimplicialComplex, assignment):
        self.source, self.target = source, target
        try:
            self.vmap = [target.index[assignment[v]] for v in source.vertices]
        except KeyError as exc:
            raise InvalidSimplicial(f"vertex {exc.args[0]!r} is unmapped or maps outside the target") from None
        for d in range(source.dimension + 1):
            for s in source.simplices(d):
                img = tuple(sorted({self.vmap[i] for i in s}))
                if not target.contains(img):
                    raise InvalidSimplicial(f"image of simplex {source.labelled(d)[source.position(s)]} "
                                            f"is not a simplex")
        self._chain_map = None

    def image(self, s: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
        """``(sign, simplex)`` of the oriented image; sign 0 when the simplex collapses."""
        img = [self.vmap[i] for i in s]
        if len(set(img)) < len(img):
            return 0, ()
        return _perm_sign(img), tuple(sorted(img))

    def chain_map(self) -> ChainMap:
        if self._chain_map is None:
            S, T = self.source.chains(), self.target.chains()
            comps = {}
            for d in S.degrees:
                rows = [[0] * S.rank(d) for _ in range(T.rank(d))]
                for j, s in enumerate(self.source.simplices(d)):
                    sign, img = self.image(s)
                    if sign:
                        rows[self.target.position(img)][j] = sign
                comps[d] = IntMatrix(rows, (T.rank(d), S.rank(d)))
            self._chain_map = ChainMap(S, T, comps)
        return self._chain_map

    def compose(self, other: SimplicialMap) -> SimplicialMap:
        """``self o other``."""
        return SimplicialMap(other.source, self.target,
                             {v: self.target.vertices[self.vmap[other.vmap[i]]]
                              for i, v in enumerate(other.source.vertices)})


def chains_of(K: SimplicialComplex) -> ChainComplex:
    return K.chains()


def chain_map_of(f: SimplicialMap) -> ChainMap:
    return f.chain_map()


def point() -> SimplicialComplex:
    return SimplicialComplex([0], [[0]])


def circle(m: int) -> SimplicialComplex:
    """Boundary of an ``m``-gon (``m >= 3``) on vertices ``0..m-1``."""
    if m < 3:
        raise InvalidSimplicial("a simplicial circle needs at least three edges")
    return SimplicialComplex(range(m), [[i, (i + 1) % m] for i in range(m)])


def full_simplex(k: int) -> SimplicialComplex:
    return SimplicialComplex(range(k + 1), [list(range(k + 1))])


def wrap_map(source_edges: int, target_edges: int) -> SimplicialMap:
    """``j -> j mod target_edges`` between circles; degree ``source_edges / target_edges``."""
    if source_edges % target_edges:
        raise InvalidSimplicial("the source circle must have a multiple of the target's edges")
    return SimplicialMap(circle(source_edges), circle(target_edges),
                         {j: j % target_edges for j in range(source_edges)})


def solenoid_tower(p: int, N: int, base: int = 3) -> Tower:
    """``N`` circles, level ``i`` (1-based) with ``base * p^(i-1)`` edges, degree-``p`` bonds."""
    if p < 2 or N < 1:
        raise InvalidSimplicial("need p >= 2 and N >= 1")
    sizes = [base * p ** i for i in range(N)]
    levels = [circle(m).chains() for m in sizes]
    bonds = []
    for i in range(N - 1):
        b = wrap_map(sizes[i + 1], sizes[i]).chain_map()
        bonds.append(ChainMap(levels[i + 1], levels[i], b.components(), check=False))
    return Tower(levels, bonds)


def solenoid_map_tower(p: int, q: int, N: int) -> MapTower:
    """Levelwise degree-``q`` maps from one degree-``p`` solenoid tower onto another."""
    X = solenoid_tower(p, N, base=3 * q)
    Y = solenoid_tower(p, N)
    maps = []
    for i in range(N):
        f = wrap_map(3 * q * p ** i, 3 * p ** i).chain_map()
        maps.append(ChainMap(X.levels[i], Y.levels[i], f.components(), check=False))
    return MapTower(X, Y, maps)


def constant_map_tower(f: SimplicialMap, N: int) -> MapTower:
    g = f.chain_map()
    return MapTower(Tower.constant(g.source, N), Tower.constant(g.target, N), [g] * N)


APEX = ("apex",)


class SimplicialCone:
    """Mapping cylinder of ``f: S -> T`` with the ``S`` end coned off to an apex.

    Vertex order: apex, then ``("s", v)`` for source vertices, then ``("t", w)``.
    """

    def __init__(self, f: SimplicialMap):
        self.f = f
        S, T = f.source, f.target
        verts = [APEX] + [("s", v) for v in S.vertices] + [("t", w) for w in T.vertices]
        simplices = []
        for d in range(T.dimension + 1):
            simplices += [[("t", T.vertices[i]) for i in s] for s in T.simplices(d)]
        for d in range(S.dimension + 1):
            for s in S.simplices(d):
                simplices.append([APEX] + [("s", S.vertices[i]) for i in s])
                for i in range(len(s)):
                    simplices.append([("s", S.vertices[v]) for v in s[:i + 1]]
                                     + [("t", T.vertices[f.vmap[v]]) for v in s[i:]])
        self.complex = SimplicialComplex(verts, simplices)
        self.s_offset = 1
        self.t_offset = 1 + len(S.vertices)

    def _oriented(self, idx: Sequence[int]) -> tuple[int, int]:
        """``(sign, position)`` of an ordered vertex list, sign 0 if degenerate."""
        if len(set(idx)) < len(idx):
            return 0, -1
        key = tuple(sorted(idx))
        return _perm_sign(idx), self.complex.position(key)

    def inclusion(self) -> ChainMap:
        """Chains of the target included into chains of the cone space."""
        T = self.f.target
        Z = self.complex.chains()
        comps = {}
        for d in T.chains().degrees:
            rows = [[0] * T.chains().rank(d) for _ in range(Z.rank(d))]
            for j, s in enumerate(T.simplices(d)):
                sign, pos = self._oriented([self.t_offset + i for i in s])
                rows[pos][j] = sign
            comps[d] = IntMatrix(rows, (Z.rank(d), T.chains().rank(d)))
        return ChainMap(T.chains(), Z, comps)

    def relative_chains(self) -> tuple[ChainComplex, ChainMap]:
        """Chains relative to the apex vertex, with the quotient map."""
        Z = self.complex.chains()
        ranks = Z.ranks()
        ranks[0] = ranks.get(0, 0) - 1
        diffs = {n: Z.differential(n) for n in Z.degrees if n >= 2}
        if 1 in Z.degrees:
            diffs[1] = Z.differential(1).select_rows(range(1, Z.rank(0)))
        R = ChainComplex(ranks, diffs)
        comps = {n: IntMatrix.identity(Z.rank(n)) for n in Z.degrees if n >= 1}
        comps[0] = IntMatrix.identity(Z.rank(0)).select_rows(range(1, Z.rank(0)))
        return R, ChainMap(Z, R, comps)

    def comparison(self) -> ChainMap:
        """``c(l, m) = (-1)^n (m - P l - A l)`` from the algebraic cone to the relative chains.

        ``P`` is the prism operator into the cylinder, ``A`` cones a source
        simplex to the apex.
        """
        f = self.f
        S, T = f.source, f.target
        cone = MappingCone(f.chain_map())
        R, q = self.relative_chains()
        comps = {}
        for n in cone.degrees:
            a, b = cone.split(n)
            rows = [[0] * (a + b) for _ in range(self.complex.chains().rank(n))]
            for j, s in enumerate(S.simplices(n - 1)):
                sign, pos = self._oriented([0] + [self.s_offset + i for i in s])
                rows[pos][j] -= sign
                for i in range(len(s)):
                    verts = [self.s_offset + v for v in s[:i + 1]] + [self.t_offset + f.vmap[v] for v in s[i:]]
                    sign, pos = self._oriented(verts)
                    if sign:
                        rows[pos][j] -= sign * (-1 if i % 2 else 1)
            for j, s in enumerate(T.simplices(n)):
                sign, pos = self._oriented([self.t_offset + i for i in s])
                rows[pos][a + j] += sign
            eps = -1 if n % 2 else 1
            mat = IntMatrix(rows, (self.complex.chains().rank(n), a + b)) * eps
            comps[n] = q.component(n) @ mat
        return ChainMap(cone, R, comps)

    def collapse(self) -> ChainMap:
        """Relative chains onto the shifted source chains: ``[apex, s] -> (-1)^(n+1) s``, others to 0."""
        S = self.f.source
        R, _ = self.relative_chains()
        target = S.chains().shift(1)
        comps = {}
        for n in R.degrees:
            rows = [[0] * R.rank(n) for _ in range(target.rank(n))]
            offset = 1 if n == 0 else 0
            for j, s in enumerate(S.simplices(n - 1)):
                sign, pos = self._oriented([0] + [self.s_offset + i for i in s])
                rows[j][pos - offset] = sign * (1 if n % 2 else -1)
            comps[n] = IntMatrix(rows, (target.rank(n), R.rank(n)))
        return ChainMap(R, target, comps)


def simplicial_mapping_cone(f: SimplicialMap) -> tuple[SimplicialComplex, ChainMap]:
    """The cone space triangulation and the chain inclusion of the target."""
    C = SimplicialCone(f)
    return C.complex, C.inclusion()


def reduced_homology(K: SimplicialComplex, n: int):
    """Reduced homology, computed as homology relative to the first vertex."""
    Z = K.chains()
    ranks = Z.ranks()
    if not ranks or ranks.get(0, 0) == 0:
        return Z.homology(n)
    ranks[0] -= 1
    diffs = {m: Z.differential(m) for m in Z.degrees if m >= 2}
    if 1 in Z.degrees:
        diffs[1] = Z.differential(1).select_rows(range(1, Z.rank(0)))
    return ChainComplex(ranks, diffs).homology(n)


def axiom1_crosscheck(f: SimplicialMap, n: int) -> dict:
    """Compare the algebraic cone sequence of ``f`` with the cone space sequence in degree ``n``.

    Top row: ``H_n(T) -> H_n(C(f)) -> H_{n-1}(S) -> H_{n-1}(T)`` from the
    algebraic cone.  Bottom row: ``H_n(T) -> H~_n(Z) -> H_{n-1}(S) -> H_{n-1}(T)``
    for the cone space ``Z``.  The vertical maps are identities on the outer
    terms and the comparison chain map in the middle.
    """
    g = f.chain_map()
    cone = MappingCone(g)
    sc = SimplicialCone(f)
    R, _ = sc.relative_chains()
    c = sc.comparison()
    inc_alg, proj_alg = cone.inclusion(), cone.projection()
    _, q = sc.relative_chains()
    inc_geo = q @ sc.inclusion()
    inc_geo = ChainMap(g.target, R, inc_geo.components(), check=False)
    col = sc.collapse()
    c_star = c.induced_on_homology(n)
    top_i, top_p = inc_alg.induced_on_homology(n), proj_alg.induced_on_homology(n)
    bot_i, bot_p = inc_geo.induced_on_homology(n), col.induced_on_homology(n)
    fs = g.induced_on_homology(n - 1)
    alg = cone.homology(n)
    geo = R.homology(n)
    # the same group through the constant two-level tower
    strong = strong_homology(MapTower(_const(g.source), _const(g.target), [g, g]), n)
    cert = {
        "degree": n,
        "algebraic_cone": alg.to_dict(),
        "cone_space_reduced": geo.to_dict(),
        "constant_tower_strong": strong.to_dict(),
        "comparison_is_chain_map": not c.commutation_failures(),
        "comparison_iso": c_star.is_isomorphism(),
        "groups_isomorphic": alg.isomorphic(geo) and alg.isomorphic(strong),
        "square_inclusion": c_star @ top_i == bot_i,
        "square_boundary": bot_p @ c_star == top_p,
        "top_row_exact": exact_at(top_i, top_p) and exact_at(top_p, fs),
        "bottom_row_exact": exact_at(bot_i, bot_p) and exact_at(bot_p, fs),
        "chain_level_inclusion": (c @ inc_alg).same_components(inc_geo),
        "chain_level_boundary": (col @ c).same_components(proj_alg),
    }
    return cert


def _const(C: ChainComplex) -> Tower:
    return Tower.constant(C, 2)


def crosscheck_passes(cert: dict) -> bool:
    return all(v for k, v in cert.items() if isinstance(v, bool))


def induced_on_h1(f: SimplicialMap) -> Homomorphism:
    return f.chain_map().induced_on_homology(1)
