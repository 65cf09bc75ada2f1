"""Exact integer linear algebra and finitely generated abelian groups.

Everything here works over Z with unbounded integers.  Groups are always
reported in canonical form: torsion coefficients ``d1 | d2 | ...`` (each > 1)
followed by the free rank.
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple, Sequence

from . import kernels
from .errors import ContainmentViolation, NotWellDefined
from .matrix import IntMatrix


def _tuples(rows) -> tuple:
    return tuple(map(tuple, rows))


class SmithForm(NamedTuple):
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix


@lru_cache(maxsize=16384)
def _snf(M: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix, IntMatrix]:
    m, n = M.shape
    U, Ui, D, V = kernels.snf(M.rows, m, n)
    raw = IntMatrix._raw
    return (raw(_tuples(U), (m, m)), raw(_tuples(Ui), (m, m)), raw(_tuples(D), (m, n)), raw(_tuples(V), (n, n)))


def smith_normal_form(M: IntMatrix) -> SmithForm:
    """Return ``(U, D, V)`` with ``U @ M @ V == D``, U and V unimodular.

    ``D`` is diagonal with nonnegative entries ``d1 | d2 | ...``.  Pivoting is
    deterministic, so repeated calls (and both kernel backends) agree exactly.
    """
    U, _, D, V = _snf(M)
    return SmithForm(U, D, V)


def diagonal_entries(M: IntMatrix) -> list[int]:
    D = _snf(M)[2]
    return [D[i, i] for i in range(min(D.shape))]


def rank(M: IntMatrix) -> int:
    return sum(1 for d in diagonal_entries(M) if d)


def hermite_basis(B: IntMatrix) -> IntMatrix:
    """Column Hermite normal form of the lattice spanned by the columns of ``B``.

    Zero columns are dropped.  Pivot rows increase from left to right, pivots
    are positive and entries left of a pivot are reduced into ``[0, pivot)``.
    The result depends only on the lattice, so it doubles as a canonical basis.
    """
    cols = kernels.hnf(B.rows, B.nrows, B.ncols)
    return IntMatrix.from_columns(cols, B.nrows)


def kernel_basis(M: IntMatrix) -> IntMatrix:
    """Columns form a basis of ``{x : M x = 0}``; the basis is saturated and in Hermite form."""
    return _kernel_basis(M)


@lru_cache(maxsize=16384)
def _kernel_basis(M: IntMatrix) -> IntMatrix:
    # column-reduce [M; I]: columns whose M-part vanishes carry the kernel,
    # already in Hermite form because the form of a lattice is unique
    m, n = M.shape
    stacked = M.rows + IntMatrix.identity(n).rows
    cols = kernels.hnf(stacked, m + n, n)
    return IntMatrix.from_columns([c[m:] for c in cols if not any(c[:m])], n)


def image_basis(M: IntMatrix) -> IntMatrix:
    """Columns form the Hermite basis of the column lattice of ``M``."""
    return _image_basis(M)


@lru_cache(maxsize=16384)
def _image_basis(M: IntMatrix) -> IntMatrix:
    return hermite_basis(M)


def solve_matrix(B: IntMatrix, Y: IntMatrix) -> IntMatrix | None:
    """An integer ``X`` with ``B @ X == Y``, or ``None`` if none exists."""
    if B.nrows != Y.nrows:
        raise ValueError("row mismatch in solve")
    U, _, D, V = _snf(B)
    r = sum(1 for i in range(min(D.shape)) if D[i, i])
    Z = U @ Y
    rows = []
    for i in range(B.nrows):
        row = Z.row(i)
        if i < r:
            d = D[i, i]
            if any(x % d for x in row):
                return None
            rows.append(tuple(x // d for x in row))
        elif any(row):
            return None
    top = IntMatrix._raw(tuple(rows), (r, Y.ncols))
    return V.select_columns(range(r)) @ top


def in_hermite_form(H: IntMatrix) -> bool:
    """Columns have strictly increasing pivot rows with positive pivots, zeros above them."""
    last = -1
    for j in range(H.ncols):
        col = H.col(j)
        i = next((i for i, x in enumerate(col) if x), None)
        if i is None or i <= last or col[i] < 0:
            return False
        last = i
    return True


def solve_hermite(H: IntMatrix, Y: IntMatrix) -> IntMatrix | None:
    """:func:`solve_matrix` for ``H`` in column Hermite form, by substitution."""
    if H.nrows != Y.nrows:
        raise ValueError("row mismatch in solve")
    r, n = H.ncols, Y.ncols
    if r == 0:
        return IntMatrix.zeros(0, n) if Y.is_zero() else None
    if n == 0:
        return IntMatrix.zeros(r, 0)
    X = kernels.hsolve(H.rows, Y.rows, H.nrows, r, n)
    return None if X is None else IntMatrix._raw(_tuples(X), (r, n))


def solve(B: IntMatrix, v: Sequence[int]) -> tuple[int, ...] | None:
    X = solve_matrix(B, IntMatrix.from_columns([v], B.nrows))
    return None if X is None else X.col(0)


def lattice_contains(B: IntMatrix, A: IntMatrix) -> bool:
    """True iff every column of ``A`` lies in the column lattice of ``B``."""
    return solve_matrix(B, A) is not None


def lattices_equal(A: IntMatrix, B: IntMatrix) -> bool:
    """Column lattices coincide; compared through their canonical Hermite bases."""
    if A.nrows != B.nrows:
        raise ValueError("lattices live in different ambient ranks")
    return image_basis(A) == image_basis(B)


class FgAbGroup:
    """``Z^k / span(relations)``, optionally realised inside a larger lattice.

    ``embedding`` (``n x k``, full column rank) identifies the presentation
    generators with vectors of an ambient ``Z^n``; this is how homology groups
    remember which cycles represent their generators.  Canonical generators are
    listed torsion first (by divisibility), free last.
    """

    def __init__(self, relations: IntMatrix, embedding: IntMatrix | None = None):
        k = relations.nrows
        if embedding is not None and embedding.ncols != k:
            raise ValueError("embedding width must equal the number of generators")
        self.relations = relations
        self.embedding = embedding
        # column operations on the relations leave U and U^-1 valid; the
        # Hermite form keeps the Smith elimination small
        U, Ui, D, _ = _snf(image_basis(relations))
        diag = [D[i, i] for i in range(min(D.shape))] + [0] * (k - min(D.shape))
        keep = [i for i, d in enumerate(diag) if d != 1]
        self.torsion = tuple(d for d in diag if d > 1)
        self.free_rank = sum(1 for d in diag if d == 0)
        self.orders = tuple(diag[i] for i in keep)
        self._coord = U.select_rows(keep)
        gens = Ui.select_columns(keep)
        self._gens = embedding @ gens if embedding is not None else gens
        self._solve = solve_hermite if embedding is not None and in_hermite_form(embedding) else solve_matrix

    @classmethod
    def from_invariants(cls, torsion: Sequence[int] = (), free_rank: int = 0) -> FgAbGroup:
        t = [d for d in torsion if d != 1]
        if any(d <= 0 for d in t):
            raise ValueError("torsion coefficients must be positive")
        k = len(t) + free_rank
        return cls(IntMatrix.diagonal(t, (k, len(t))))

    @classmethod
    def trivial(cls) -> FgAbGroup:
        return cls(IntMatrix.zeros(0, 0))

    @property
    def ngens(self) -> int:
        return len(self.orders)

    @property
    def ntorsion(self) -> int:
        return len(self.torsion)

    @property
    def ambient_rank(self) -> int:
        return self.relations.nrows

    @property
    def ambient_dim(self) -> int:
        return self._gens.nrows

    @property
    def invariants(self) -> tuple[tuple[int, ...], int]:
        return self.torsion, self.free_rank

    def is_trivial(self) -> bool:
        return self.ngens == 0

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int:
        """Cardinality; 0 stands for an infinite group."""
        if self.free_rank:
            return 0
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def generators(self) -> IntMatrix:
        """Ambient vectors of the canonical generators, one per column."""
        return self._gens

    def reduce(self, coords: Sequence[int]) -> tuple[int, ...]:
        return tuple(c % d if d else c for c, d in zip(coords, self.orders))

    def coordinates(self, v: Sequence[int]) -> tuple[int, ...]:
        """Canonical coordinates of an ambient vector (which must lie in the lattice)."""
        return self.coordinates_matrix(IntMatrix.from_columns([v], self.ambient_dim)).col(0)

    def coordinates_matrix(self, vecs: IntMatrix) -> IntMatrix:
        if self.embedding is not None:
            X = self._solve(self.embedding, vecs)
            if X is None:
                raise NotWellDefined("vector does not lie in the group's lattice")
        else:
            X = vecs
        C = self._coord @ X
        return IntMatrix._raw(tuple(tuple(x % d for x in row) if d else row
                                    for row, d in zip(C.rows, self.orders)), C.shape)

    def relation_lattice(self) -> IntMatrix:
        """Relations among canonical coordinates: ``d_i e_i`` for each torsion generator."""
        return IntMatrix.diagonal(self.torsion, (self.ngens, self.ntorsion))

    def isomorphic(self, other: FgAbGroup) -> bool:
        return self.invariants == other.invariants

    def __eq__(self, other) -> bool:
        if not isinstance(other, FgAbGroup):
            return NotImplemented
        return self.invariants == other.invariants

    def __hash__(self) -> int:
        return hash(self.invariants)

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"FgAbGroup({self})"

    def to_dict(self) -> dict:
        return {"torsion": [str(d) for d in self.torsion], "free_rank": self.free_rank, "display": str(self)}


def cokernel(M: IntMatrix) -> FgAbGroup:
    """``Z^rows / (column span of M)``."""
    return FgAbGroup(M)


def subquotient(K: IntMatrix, I: IntMatrix) -> FgAbGroup:
    """The group ``span(K) / span(I)`` realised inside the ambient lattice of ``K``.

    Raises :class:`ContainmentViolation` if ``I`` is not inside ``span(K)``.
    """
    if K.nrows != I.nrows:
        raise ValueError("K and I must share the ambient rank")
    K = image_basis(K)
    X = solve_hermite(K, I)
    if X is None:
        raise ContainmentViolation("the relation lattice is not contained in the subgroup lattice")
    return FgAbGroup(X, embedding=K)


class Homomorphism:
    """A homomorphism between two :class:`FgAbGroup` on canonical generators.

    ``matrix`` is ``target.ngens x source.ngens``; rows of torsion generators
    are stored reduced modulo their order.
    """

    def __init__(self, source: FgAbGroup, target: FgAbGroup, matrix: IntMatrix, check: bool = True):
        if matrix.shape != (target.ngens, source.ngens):
            raise ValueError(f"matrix shape {matrix.shape} does not fit "
                             f"{source.ngens} -> {target.ngens} generators")
        self.source = source
        self.target = target
        self.matrix = IntMatrix._raw(tuple(tuple(x % d for x in row) if d else row
                                           for row, d in zip(matrix.rows, target.orders)), matrix.shape)
        if check:
            self._check_well_defined()

    def _check_well_defined(self):
        for j, dj in enumerate(self.source.orders):
            if dj == 0:
                continue
            for i, di in enumerate(self.target.orders):
                x = dj * self.matrix[i, j]
                if (x % di if di else x) != 0:
                    raise NotWellDefined(f"generator {j} of order {dj} does not map to an element "
                                         f"killed by {dj}")

    @classmethod
    def induced(cls, f: IntMatrix, source: FgAbGroup, target: FgAbGroup) -> Homomorphism:
        """The map on groups induced by the ambient integer matrix ``f``."""
        if f.shape != (target.ambient_dim, source.ambient_dim):
            raise ValueError(f"ambient map of shape {f.shape} does not fit "
                             f"{source.ambient_dim} -> {target.ambient_dim}")
        images = f @ source.generators()
        return cls(source, target, target.coordinates_matrix(images))

    @classmethod
    def identity(cls, G: FgAbGroup) -> Homomorphism:
        return cls(G, G, IntMatrix.identity(G.ngens))

    @classmethod
    def zero(cls, source: FgAbGroup, target: FgAbGroup) -> Homomorphism:
        return cls(source, target, IntMatrix.zeros(target.ngens, source.ngens))

    def __matmul__(self, other: Homomorphism) -> Homomorphism:
        """Composition ``self o other``."""
        if not isinstance(other, Homomorphism):
            return NotImplemented
        if other.target.ngens != self.source.ngens or other.target.orders != self.source.orders:
            raise ValueError("composition of homomorphisms with mismatched groups")
        return Homomorphism(other.source, self.target, self.matrix @ other.matrix, check=False)

    def _same_shape(self, other: Homomorphism):
        if (self.source.orders, self.target.orders) != (other.source.orders, other.target.orders):
            raise ValueError("homomorphisms between different groups")

    def __add__(self, other: Homomorphism) -> Homomorphism:
        self._same_shape(other)
        return Homomorphism(self.source, self.target, self.matrix + other.matrix, check=False)

    def __sub__(self, other: Homomorphism) -> Homomorphism:
        self._same_shape(other)
        return Homomorphism(self.source, self.target, self.matrix - other.matrix, check=False)

    def __neg__(self) -> Homomorphism:
        return Homomorphism(self.source, self.target, -self.matrix, check=False)

    def __mul__(self, k: int) -> Homomorphism:
        return Homomorphism(self.source, self.target, self.matrix * k, check=False)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Homomorphism):
            return NotImplemented
        return (self.source.orders == other.source.orders
                and self.target.orders == other.target.orders
                and self.matrix == other.matrix)

    __hash__ = None

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def is_identity(self) -> bool:
        return self.source.orders == self.target.orders and self.matrix.is_identity()

    def image_lattice(self) -> IntMatrix:
        """Generators of the preimage of the image in target coordinates (contains the relations)."""
        return IntMatrix.hstack([self.matrix, self.target.relation_lattice()], self.target.ngens)

    def kernel_lattice(self) -> IntMatrix:
        """Generators of the kernel lifted to source coordinates (contains the relations)."""
        stacked = IntMatrix.hstack([self.matrix, self.target.relation_lattice()], self.target.ngens)
        K = kernel_basis(stacked)
        return K.select_rows(range(self.source.ngens))

    def is_injective(self) -> bool:
        return lattice_contains(self.source.relation_lattice(), self.kernel_lattice())

    def is_surjective(self) -> bool:
        return lattice_contains(self.image_lattice(), IntMatrix.identity(self.target.ngens))

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def kernel(self) -> FgAbGroup:
        return subquotient(self.kernel_lattice(), self.source.relation_lattice())

    def image(self) -> FgAbGroup:
        return subquotient(self.image_lattice(), self.target.relation_lattice())

    def cokernel(self) -> FgAbGroup:
        return cokernel(self.image_lattice())

    def __repr__(self) -> str:
        return f"Homomorphism({self.source} -> {self.target}, {self.matrix!r})"


def induced_hom(f: IntMatrix, srcK: IntMatrix, srcI: IntMatrix,
                tgtK: IntMatrix, tgtI: IntMatrix) -> Homomorphism:
    """The map ``span(srcK)/span(srcI) -> span(tgtK)/span(tgtI)`` induced by ``f``.

    Raises :class:`NotWellDefined` unless ``f`` carries ``srcK`` into ``tgtK``
    and ``srcI`` into ``tgtI``.
    """
    if not lattice_contains(tgtK, f @ srcK) or not lattice_contains(tgtI, f @ srcI):
        raise NotWellDefined("f does not respect the given lattices")
    return Homomorphism.induced(f, subquotient(srcK, srcI), subquotient(tgtK, tgtI))


def direct_sum(groups: Sequence[FgAbGroup]) -> FgAbGroup:
    """External direct sum.

    The ambient lattice is the concatenation of the summands' canonical
    coordinates; the sum's own canonical generators may mix summands.
    """
    return FgAbGroup(IntMatrix.block_diag([g.relation_lattice() for g in groups]))


def composite_is_zero(f: Homomorphism, g: Homomorphism) -> bool:
    return (g @ f).is_zero()


def exact_at(f: Homomorphism, g: Homomorphism) -> bool:
    """``im f == ker g`` inside ``f.target``."""
    return composite_is_zero(f, g) and lattices_equal(f.image_lattice(), g.kernel_lattice())
