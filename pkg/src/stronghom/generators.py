"""Seeded generators that produce valid instances by construction.

Complexes are direct sums of elementary pieces (``Z`` in one degree, or
``Z -d-> Z`` across two degrees) written in a random unimodular basis, so the
split structure is known and chain maps out of them can be built freely:
a free generator goes to any cycle, and a pair ``a -> d b`` goes to
``(d x + c, dx)`` for a random chain ``x`` and cycle ``c``.

Map towers are composites of a "surjective" stage ``X' + W -> X'`` and an
"injective" stage ``X' -> X' + Y`` whose bonds are triangular block matrices
chosen so that every square commutes exactly.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass

from .chain import (ChainComplex, ChainMap, CoherentChainHomotopy, CoherentChainMorphism,
                    GradedMap)
from .matrix import IntMatrix
from .simplicial import SimplicialComplex, SimplicialMap, point, wrap_map
from .tower import MapTower, Tower, TowerHomotopy, TowerMorphism


def rng_for(seed: int, *key) -> random.Random:
    """Independent deterministic stream for ``(seed, key...)``."""
    digest = hashlib.sha256(repr((seed,) + key).encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def random_unimodular(rng: random.Random, n: int, steps: int | None = None) -> tuple[IntMatrix, IntMatrix]:
    """A random ``U`` with ``det = +-1`` and its exact inverse."""
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    Ui = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps if steps is not None else 2 * n):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        c = rng.choice((-1, 1, 1, 2, -2))
        U[i] = [a + c * b for a, b in zip(U[i], U[j])]
        for row in Ui:
            row[j] -= c * row[i]
    perm = list(range(n))
    rng.shuffle(perm)
    signs = [rng.choice((1, -1)) for _ in range(n)]
    P = [[signs[i] * U[perm[i]][k] for k in range(n)] for i in range(n)]
    Pi = [[Ui[k][perm[i]] * signs[i] for i in range(n)] for k in range(n)]
    return IntMatrix(P, (n, n)), IntMatrix(Pi, (n, n))


@dataclass
class Piece:
    kind: str          # "free" or "pair"
    degree: int        # top degree of the piece
    d: int = 0         # pair multiplier


@dataclass
class GeneratedComplex:
    complex: ChainComplex
    pieces: list[Piece]
    basis: dict            # degree -> B_n (split generators as columns)
    inverse: dict          # degree -> B_n^-1
    slots: dict            # degree -> list of (piece index, "top"/"bottom"/"free")


def random_complex(rng: random.Random, lo: int = 0, hi: int = 3, max_rank: int = 3,
                   fill: float = 0.7) -> GeneratedComplex:
    ranks = {n: 0 for n in range(lo, hi + 1)}
    pieces: list[Piece] = []
    budget = sum(max_rank for _ in ranks)
    for _ in range(budget):
        if rng.random() > fill:
            continue
        k = rng.randint(lo, hi)
        if k > lo and rng.random() < 0.6 and ranks[k] < max_rank and ranks[k - 1] < max_rank:
            pieces.append(Piece("pair", k, rng.choice((1, 1, 2, 2, 3, 4, 6))))
            ranks[k] += 1
            ranks[k - 1] += 1
        elif ranks[k] < max_rank:
            pieces.append(Piece("free", k))
            ranks[k] += 1
    slots: dict[int, list] = {n: [] for n in ranks}
    for idx, p in enumerate(pieces):
        if p.kind == "free":
            slots[p.degree].append((idx, "free"))
        else:
            slots[p.degree].append((idx, "top"))
            slots[p.degree - 1].append((idx, "bottom"))
    for n in slots:
        rng.shuffle(slots[n])
    pos = {n: {s: i for i, s in enumerate(slots[n])} for n in slots}
    split_d = {}
    for n in range(lo + 1, hi + 1):
        rows = [[0] * len(slots[n]) for _ in slots[n - 1]]
        for j, (idx, role) in enumerate(slots[n]):
            if role == "top":
                rows[pos[n - 1][(idx, "bottom")]][j] = pieces[idx].d
        split_d[n] = IntMatrix(rows, (len(slots[n - 1]), len(slots[n])))
    basis, inverse = {}, {}
    for n in ranks:
        basis[n], inverse[n] = random_unimodular(rng, len(slots[n]))
    diffs = {n: basis[n - 1] @ split_d[n] @ inverse[n] for n in split_d}
    C = ChainComplex({n: len(slots[n]) for n in ranks}, diffs)
    return GeneratedComplex(C, pieces, basis, inverse, slots)


def _small_vector(rng: random.Random, n: int, density: float = 0.5) -> list[int]:
    return [rng.choice((-1, 1, 2)) if rng.random() < density else 0 for _ in range(n)]


def random_cycle(rng: random.Random, C: ChainComplex, n: int) -> tuple[int, ...]:
    Z = C.cycles(n)
    if Z.ncols == 0:
        return (0,) * C.rank(n)
    return Z.apply(_small_vector(rng, Z.ncols))


def random_graded(rng: random.Random, S: ChainComplex, T: ChainComplex, degree: int,
                  density: float = 0.3) -> GradedMap:
    comps = {}
    for n in S.degrees:
        r, c = T.rank(n + degree), S.rank(n)
        comps[n] = IntMatrix([[rng.choice((-1, 1)) if rng.random() < density else 0 for _ in range(c)]
                              for _ in range(r)], (r, c))
    return GradedMap(S, T, degree, comps)


def null_homotopic(h: GradedMap) -> ChainMap:
    """``dh + hd`` for a degree +1 map ``h``."""
    S, T = h.source, h.target
    return ChainMap(S, T, {n: T.differential(n + 1) @ h.component(n) + h.component(n - 1) @ S.differential(n)
                           for n in S.degrees}, check=False)


def random_chain_map(rng: random.Random, src: GeneratedComplex, T: ChainComplex,
                     homotopy: bool = True) -> ChainMap:
    S = src.complex
    images: dict[int, list] = {n: [None] * S.rank(n) for n in S.degrees}
    for n in S.degrees:
        for j, (idx, role) in enumerate(src.slots[n]):
            if role == "free":
                images[n][j] = random_cycle(rng, T, n)
            elif role == "top":
                x = _small_vector(rng, T.rank(n), 0.4)
                c = random_cycle(rng, T, n)
                dx = T.differential(n).apply(x)
                piece = src.pieces[idx]
                images[n][j] = tuple(piece.d * a + b for a, b in zip(x, c))
                jb = src.slots[n - 1].index((idx, "bottom"))
                images[n - 1][jb] = dx
    comps = {}
    for n in S.degrees:
        split = IntMatrix.from_columns(images[n], T.rank(n))
        comps[n] = split @ src.inverse[n]
    f = ChainMap(S, T, comps)
    if homotopy:
        f = f + null_homotopic(random_graded(rng, S, T, 1, 0.25))
    return f


def _stack(top: IntMatrix, bottom: IntMatrix) -> IntMatrix:
    return IntMatrix.vstack([top, bottom], top.ncols)


def _blocks(grid) -> IntMatrix:
    return IntMatrix.block(grid)


def _sum_map(S: ChainComplex, T: ChainComplex, grid_of) -> ChainMap:
    return ChainMap(S, T, {n: _blocks(grid_of(n)) for n in S.degrees})


def _change_basis(rng: random.Random, C: ChainComplex):
    """Random unimodular basis change: returns ``(C', B, B^-1)`` with ``d' = B d B^-1``."""
    B, Bi = {}, {}
    for n in C.degrees:
        B[n], Bi[n] = random_unimodular(rng, C.rank(n))
    diffs = {n: B[n - 1] @ C.differential(n) @ Bi[n] for n in C.degrees if n - 1 in B}
    return ChainComplex(C.ranks(), diffs), B, Bi


def _conj(f: ChainMap, S2, T2, Bt, Bsi) -> ChainMap:
    return ChainMap(S2, T2, {n: Bt[n] @ f.component(n) @ Bsi[n] if n in Bt else f.component(n)
                             for n in f.source.degrees})


def random_map_tower(rng: random.Random, N: int | None = None, lo: int = 0, hi: int = 3,
                     max_core: int = 3, max_side: int = 2, basis_change: bool = True) -> MapTower:
    """A valid map tower ``X -> X''`` with per-degree ranks at most ``max_core + max_side``."""
    N = N if N is not None else rng.randint(2, 5)
    core = [random_complex(rng, lo, hi, max_core) for _ in range(N)]
    W = [random_complex(rng, lo, hi, max_side) for _ in range(N)]
    Y = [random_complex(rng, lo, hi, max_side) for _ in range(N)]
    pc = [random_chain_map(rng, core[i + 1], core[i].complex) for i in range(N - 1)]
    w = [random_chain_map(rng, W[i + 1], W[i].complex) for i in range(N - 1)]
    q = [random_chain_map(rng, Y[i + 1], Y[i].complex) for i in range(N - 1)]
    h = [random_chain_map(rng, W[i], core[i].complex) for i in range(N)]
    g = [random_chain_map(rng, core[i], Y[i].complex) for i in range(N)]

    X = [core[i].complex.direct_sum(W[i].complex) for i in range(N)]
    X2 = [core[i].complex.direct_sum(Y[i].complex) for i in range(N)]
    Xb, X2b, fm = [], [], []
    for i in range(N - 1):
        corner = pc[i] @ h[i + 1] - h[i] @ w[i]
        zero = ChainMap.zero(core[i + 1].complex, W[i].complex)
        Xb.append(_sum_map(X[i + 1], X[i], lambda n, i=i, corner=corner, zero=zero: [
            [pc[i].component(n), corner.component(n)], [zero.component(n), w[i].component(n)]]))
        lower = g[i] @ pc[i] - q[i] @ g[i + 1]
        zero2 = ChainMap.zero(Y[i + 1].complex, core[i].complex)
        X2b.append(_sum_map(X2[i + 1], X2[i], lambda n, i=i, lower=lower, zero2=zero2: [
            [pc[i].component(n), zero2.component(n)], [lower.component(n), q[i].component(n)]]))
    for i in range(N):
        fi = _sum_map(X[i], core[i].complex, lambda n, i=i: [
            [IntMatrix.identity(core[i].complex.rank(n)), h[i].component(n)]])
        ei = ChainMap(core[i].complex, X2[i], {n: _stack(IntMatrix.identity(core[i].complex.rank(n)),
                                                         g[i].component(n))
                                               for n in core[i].complex.degrees})
        fm.append(ei @ fi)
    if basis_change:
        XX = [_change_basis(rng, C) for C in X]
        YY = [_change_basis(rng, C) for C in X2]
        Xb = [_conj(b, XX[i + 1][0], XX[i][0], XX[i][1], XX[i + 1][2]) for i, b in enumerate(Xb)]
        X2b = [_conj(b, YY[i + 1][0], YY[i][0], YY[i][1], YY[i + 1][2]) for i, b in enumerate(X2b)]
        fm = [_conj(f, XX[i][0], YY[i][0], YY[i][1], XX[i][2]) for i, f in enumerate(fm)]
        X = [t[0] for t in XX]
        X2 = [t[0] for t in YY]
    return MapTower(Tower(X, Xb), Tower(X2, X2b), fm)


def random_tower(rng: random.Random, N: int | None = None, lo: int = 0, hi: int = 3,
                 max_rank: int = 5) -> Tower:
    N = N if N is not None else rng.randint(2, 5)
    levels = [random_complex(rng, lo, hi, max_rank) for _ in range(N)]
    bonds = [random_chain_map(rng, levels[i + 1], levels[i].complex) for i in range(N - 1)]
    return Tower([g.complex for g in levels], bonds)


def trivial_domain(F: MapTower) -> MapTower:
    """Same codomain, zero domain."""
    Z = ChainComplex.zero()
    X = Tower([Z] * F.length, [ChainMap.identity(Z)] * (F.length - 1))
    return MapTower(X, F.codomain, [ChainMap.zero(Z, C) for C in F.codomain.levels])


def trivial_codomain(F: MapTower) -> MapTower:
    Z = ChainComplex.zero()
    Y = Tower([Z] * F.length, [ChainMap.identity(Z)] * (F.length - 1))
    return MapTower(F.domain, Y, [ChainMap.zero(C, Z) for C in F.domain.levels])


def levelwise_identity(T: Tower) -> MapTower:
    return MapTower.identity(T)


# coherent morphisms


@dataclass
class CoherentPair:
    Phi: CoherentChainMorphism
    Psi: CoherentChainMorphism
    D: CoherentChainHomotopy


def random_coherent_morphism(rng: random.Random, lo: int = 0, hi: int = 3, max_rank: int = 3):
    """A genuinely non-strict coherent morphism ``f -> g`` (and the generated pieces)."""
    L = random_complex(rng, lo, hi, max_rank)
    M = random_complex(rng, lo, hi, max_rank)
    R = random_complex(rng, lo, hi, 2)
    Q = random_complex(rng, lo, hi, max_rank)
    f = random_chain_map(rng, L, M.complex)
    phi2 = random_chain_map(rng, M, Q.complex)
    P = L.complex.direct_sum(R.complex)
    phi1 = ChainMap(L.complex, P, {n: _stack(IntMatrix.identity(L.complex.rank(n)),
                                             IntMatrix.zeros(R.complex.rank(n), L.complex.rank(n)))
                                   for n in L.complex.degrees})
    h = random_graded(rng, L.complex, Q.complex, 1, 0.4)
    k = random_chain_map(rng, R, Q.complex)
    left = phi2 @ f + null_homotopic(h)
    g = ChainMap(P, Q.complex, {n: IntMatrix.hstack([left.component(n), k.component(n)],
                                                    Q.complex.rank(n)) for n in P.degrees})
    return CoherentChainMorphism(f, g, phi1, phi2, h)


def random_coherent_pair(rng: random.Random, lo: int = 0, hi: int = 3, max_rank: int = 3) -> CoherentPair:
    """``Phi`` and ``Psi = Phi + (homotopy terms)`` together with the coherent homotopy ``D``."""
    Phi = random_coherent_morphism(rng, lo, hi, max_rank)
    f, g = Phi.f, Phi.g
    L, M, P, Q = f.source, f.target, g.source, g.target
    D1 = random_graded(rng, L, P, 1, 0.35)
    D2 = random_graded(rng, M, Q, 1, 0.35)
    D12 = random_graded(rng, L, Q, 2, 0.35)
    psi1 = Phi.phi1 + null_homotopic(D1)
    psi2 = Phi.phi2 + null_homotopic(D2)
    comps = {}
    for n in L.degrees:
        comps[n] = (Phi.phi12.component(n) + g.component(n + 1) @ D1.component(n)
                    - D2.component(n) @ f.component(n)
                    - (Q.differential(n + 2) @ D12.component(n) - D12.component(n - 1) @ L.differential(n)))
    Psi = CoherentChainMorphism(f, g, psi1, psi2, comps)
    D = CoherentChainHomotopy(Phi, Psi, D1, D2, D12)
    return CoherentPair(Phi, Psi, D)


# tower morphisms


def direct_sum_map_tower(F: MapTower, G: MapTower) -> MapTower:
    def tw(A: Tower, B: Tower) -> Tower:
        levels = [a.direct_sum(b) for a, b in zip(A.levels, B.levels)]
        return Tower(levels, [a.direct_sum(b) for a, b in zip(A.bonds, B.bonds)])
    X, Y = tw(F.domain, G.domain), tw(F.codomain, G.codomain)
    maps = [ChainMap(X.levels[i], Y.levels[i], a.direct_sum(b).components(), check=False)
            for i, (a, b) in enumerate(zip(F.maps, G.maps))]
    return MapTower(_rebind(X), _rebind(Y), maps)


def _rebind(T: Tower) -> Tower:
    return Tower(T.levels, [ChainMap(T.levels[i + 1], T.levels[i], b.components(), check=False)
                            for i, b in enumerate(T.bonds)])


def constant_map_tower(f: ChainMap, N: int) -> MapTower:
    return MapTower(Tower.constant(f.source, N), Tower.constant(f.target, N), [f] * N)


def scalar_morphism(F: MapTower, c: int) -> TowerMorphism:
    return TowerMorphism.strict(F, F, [ChainMap.identity(C).scaled(c) for C in F.domain.levels],
                                [ChainMap.identity(C).scaled(c) for C in F.codomain.levels])


def _block_inclusion(A: ChainComplex, B: ChainComplex, AB: ChainComplex, first: bool) -> ChainMap:
    comps = {}
    for n in AB.degrees:
        a, b = A.rank(n), B.rank(n)
        if first:
            comps[n] = _stack(IntMatrix.identity(a), IntMatrix.zeros(b, a))
        else:
            comps[n] = _stack(IntMatrix.zeros(a, b), IntMatrix.identity(b))
    src = A if first else B
    return ChainMap(src, AB, {n: comps[n] for n in src.degrees if n in comps})


def inclusion_morphism(F: MapTower, G: MapTower) -> TowerMorphism:
    """``F -> F + G``."""
    S = direct_sum_map_tower(F, G)
    phi1 = [_block_inclusion(a, b, ab, True) for a, b, ab in
            zip(F.domain.levels, G.domain.levels, S.domain.levels)]
    phi2 = [_block_inclusion(a, b, ab, True) for a, b, ab in
            zip(F.codomain.levels, G.codomain.levels, S.codomain.levels)]
    return TowerMorphism.strict(F, S, phi1, phi2)


def projection_morphism(F: MapTower, G: MapTower) -> TowerMorphism:
    """``F + G -> G``."""
    S = direct_sum_map_tower(F, G)

    def proj(a, b, ab):
        return ChainMap(ab, b, {n: IntMatrix.hstack([IntMatrix.zeros(b.rank(n), a.rank(n)),
                                                     IntMatrix.identity(b.rank(n))], b.rank(n))
                                for n in ab.degrees})
    phi1 = [proj(a, b, ab) for a, b, ab in zip(F.domain.levels, G.domain.levels, S.domain.levels)]
    phi2 = [proj(a, b, ab) for a, b, ab in zip(F.codomain.levels, G.codomain.levels, S.codomain.levels)]
    return TowerMorphism.strict(S, G, phi1, phi2)


def constant_morphism(Phi: CoherentChainMorphism, N: int) -> TowerMorphism:
    return TowerMorphism(constant_map_tower(Phi.f, N), constant_map_tower(Phi.g, N), [Phi] * N)


def compose_morphisms(M1: TowerMorphism, M2: TowerMorphism) -> TowerMorphism:
    from .chain import compose_coherent
    return TowerMorphism(M1.source, M2.target,
                         [compose_coherent(a, b) for a, b in zip(M1.levels, M2.levels)])


def random_tower_morphism(rng: random.Random, N: int | None = None) -> TowerMorphism:
    """One of: scalar, inclusion, projection, constant coherent, or a composite."""
    N = N if N is not None else rng.randint(2, 4)
    kind = rng.choice(("scalar", "inclusion", "projection", "coherent", "composite"))
    small = dict(max_core=2, max_side=1, hi=2)
    if kind == "scalar":
        return scalar_morphism(random_map_tower(rng, N, **small), rng.choice((-3, -2, 0, 2, 3)))
    if kind == "inclusion":
        return inclusion_morphism(random_map_tower(rng, N, **small), random_map_tower(rng, N, **small))
    if kind == "projection":
        return projection_morphism(random_map_tower(rng, N, **small), random_map_tower(rng, N, **small))
    if kind == "coherent":
        return constant_morphism(random_coherent_morphism(rng, 0, 2, 2), N)
    Phi = random_coherent_morphism(rng, 0, 2, 2)
    M1 = constant_morphism(Phi, N)
    return compose_morphisms(M1, scalar_morphism(M1.target, rng.choice((-1, 2))))


def random_tower_homotopy(rng: random.Random, N: int | None = None):
    """Levelwise-homotopic tower morphisms (constant towers) with the homotopy data."""
    N = N if N is not None else rng.randint(2, 3)
    pair = random_coherent_pair(rng, 0, 2, 2)
    M1 = constant_morphism(pair.Phi, N)
    M2 = TowerMorphism(M1.source, M1.target, [pair.Psi] * N)
    return TowerHomotopy(M1, M2, [pair.D] * N)


# simplicial maps


def random_simplicial_complex(rng: random.Random, nverts: int | None = None, max_dim: int = 2,
                              nsimplices: int | None = None) -> SimplicialComplex:
    nverts = nverts if nverts is not None else rng.randint(1, 6)
    simplices = []
    for _ in range(nsimplices if nsimplices is not None else rng.randint(1, 6)):
        k = rng.randint(1, min(max_dim + 1, nverts))
        simplices.append(rng.sample(range(nverts), k))
    return SimplicialComplex(range(nverts), simplices)


def random_simplicial_map(rng: random.Random) -> SimplicialMap:
    """A random vertex map; the target is enlarged by the image simplices, so it is simplicial."""
    kind = rng.choice(("random", "random", "circle", "collapse"))
    if kind == "circle":
        m = rng.randint(3, 4)
        return wrap_map(m * rng.randint(1, 3), m)
    S = random_simplicial_complex(rng)
    if kind == "collapse":
        return SimplicialMap(S, point(), {v: 0 for v in S.vertices})
    nt = rng.randint(1, 5)
    vmap = {v: rng.randrange(nt) for v in S.vertices}
    extra = [[vmap[v] for v in s] for d in range(S.dimension + 1) for s in S.labelled(d)]
    T0 = random_simplicial_complex(rng, nt, nsimplices=rng.randint(0, 3))
    T = SimplicialComplex(range(nt), T0.maximal_simplices() + extra)
    return SimplicialMap(S, T, vmap)
