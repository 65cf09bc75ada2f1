"""Smith form, lattices and finitely generated abelian groups."""

import pytest
from hypothesis import given, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from stronghom.algebra import (FgAbGroup, Homomorphism, cokernel, diagonal_entries, direct_sum, exact_at,
                               hermite_basis, image_basis, in_hermite_form, induced_hom, kernel_basis, lattice_contains,
                               lattices_equal, rank, smith_normal_form, solve, solve_hermite, solve_matrix,
                               subquotient)
from stronghom.errors import ContainmentViolation, NotWellDefined
from stronghom.matrix import IntMatrix


@st.composite
def matrices(draw, max_dim=5, bound=9):
    m = draw(st.integers(0, max_dim))
    n = draw(st.integers(0, max_dim))
    rows = draw(st.lists(st.lists(st.integers(-bound, bound), min_size=n, max_size=n), min_size=m, max_size=m))
    return IntMatrix(rows, (m, n))


def det(M):
    return Matrix(M.to_lists()).det() if M.nrows else 1


def sympy_factors(M):
    if not M.nrows or not M.ncols:
        return []
    return [int(x) for x in invariant_factors(Matrix(M.to_lists()), domain=ZZ) if x != 0]


@given(matrices())
def test_smith_form_transform_identity(M):
    U, D, V = smith_normal_form(M)
    assert U @ M @ V == D
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    d = diagonal_entries(M)
    nz = [x for x in d if x]
    assert all(x > 0 for x in nz) and d[:len(nz)] == nz
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    for i in range(D.nrows):
        for j in range(D.ncols):
            if i != j:
                assert D.rows[i][j] == 0


@given(matrices())
def test_invariant_factors_match_sympy(M):
    assert [x for x in diagonal_entries(M) if x] == [abs(x) for x in sympy_factors(M)]


def test_diag_2_3():
    assert smith_normal_form(IntMatrix([[2, 0], [0, 3]])).D == IntMatrix([[1, 0], [0, 6]])


def test_cokernels():
    assert cokernel(IntMatrix([[2, 0], [0, 3]])).invariants == ((6,), 0)
    assert cokernel(IntMatrix([[2]])).invariants == ((2,), 0)
    assert cokernel(IntMatrix.zeros(2, 0)).invariants == ((), 2)
    assert cokernel(IntMatrix([[1, 2], [3, 4]])).invariants == ((2,), 0)
    assert cokernel(IntMatrix([[0], [4]])).invariants == ((4,), 1)


def test_kernel_of_row_difference():
    K = kernel_basis(IntMatrix([[1, -1]]))
    assert K == IntMatrix([[1], [1]])
    assert kernel_basis(IntMatrix.identity(3)).ncols == 0


@given(matrices())
def test_kernel_and_image(M):
    K = kernel_basis(M)
    assert (M @ K).is_zero()
    assert K.ncols == M.ncols - rank(M)
    I = image_basis(M)
    assert I.ncols == rank(M)
    assert lattices_equal(I, M)


@given(matrices(), st.data())
def test_hermite_basis_is_canonical(M, data):
    # any column operation by a unimodular matrix leaves the Hermite basis unchanged
    n = M.ncols
    V = IntMatrix.identity(n)
    for _ in range(data.draw(st.integers(0, 6))):
        if n < 2:
            break
        i, j = data.draw(st.integers(0, n - 1)), data.draw(st.integers(0, n - 1))
        if i == j:
            continue
        q = data.draw(st.integers(-3, 3))
        E = IntMatrix([[int(r == c) + (q if (r, c) == (j, i) else 0) for c in range(n)] for r in range(n)], (n, n))
        V = V @ E
    assert hermite_basis(M @ V) == hermite_basis(M)


def test_lattice_examples():
    assert lattices_equal(IntMatrix([[2, 0], [0, 2]]), IntMatrix([[2, 2], [0, 2]]))
    assert not lattices_equal(IntMatrix([[2]]), IntMatrix([[4]]))
    assert lattice_contains(IntMatrix([[2]]), IntMatrix([[4]]))
    assert not lattice_contains(IntMatrix([[4]]), IntMatrix([[2]]))
    assert solve(IntMatrix([[2, 0], [0, 3]]), (4, 9)) == (2, 3)
    assert solve(IntMatrix([[2]]), (3,)) is None


def test_subquotient_of_even_lattice():
    G = subquotient(IntMatrix.identity(2), IntMatrix.scalar(2, 2))
    assert G.invariants == ((2, 2), 0)


def test_subquotient_requires_containment():
    with pytest.raises(ContainmentViolation):
        subquotient(IntMatrix([[2]]), IntMatrix([[1]]))


def test_induced_times_three_on_z3_is_zero():
    one, three = IntMatrix([[1]]), IntMatrix([[3]])
    h = induced_hom(three, one, three, one, three)
    assert h.source.invariants == ((3,), 0)
    assert h.is_zero()


def test_induced_requires_well_defined():
    one, two, four = IntMatrix([[1]]), IntMatrix([[2]]), IntMatrix([[4]])
    with pytest.raises(NotWellDefined):
        # x -> x from Z/2 to Z/4 does not send 2 into 4Z
        induced_hom(one, one, two, one, four)


def test_group_basics():
    G = FgAbGroup.from_invariants((2, 6), 1)
    H = direct_sum([FgAbGroup.from_invariants((2,)), FgAbGroup.from_invariants((3,)),
                    FgAbGroup.from_invariants((2,)), FgAbGroup.from_invariants((), 1)])
    assert G.isomorphic(H)
    assert not G.is_finite() and G.free_rank == 1
    assert FgAbGroup.from_invariants((4, 6)).order() == 24
    assert FgAbGroup.trivial().is_trivial()
    assert G.to_dict()["torsion"] == ["2", "6"]


def test_homomorphism_predicates():
    Z = FgAbGroup.from_invariants((), 1)
    Z2 = FgAbGroup.from_invariants((2,))
    double = Homomorphism(Z, Z, IntMatrix([[2]]))
    reduce = Homomorphism(Z, Z2, IntMatrix([[1]]))
    assert double.is_injective() and not double.is_surjective()
    assert reduce.is_surjective() and not reduce.is_injective()
    assert exact_at(double, reduce)
    assert double.cokernel().invariants == ((2,), 0)
    assert Homomorphism.identity(Z2).is_isomorphism()


@given(matrices())
def test_kernel_basis_is_hermite_form_of_kernel(M):
    V = smith_normal_form(M).V
    r = rank(M)
    K = kernel_basis(M)
    assert in_hermite_form(K)
    assert K == hermite_basis(V.select_columns(range(r, M.ncols)))


@given(matrices(), st.data())
def test_hermite_solve_agrees_with_general_solve(M, data):
    H = hermite_basis(M)
    k = data.draw(st.integers(1, 3))
    Y = IntMatrix([[data.draw(st.integers(-6, 6)) for _ in range(k)] for _ in range(M.nrows)], (M.nrows, k))
    X1, X2 = solve_hermite(H, Y), solve_matrix(H, Y)
    assert (X1 is None) == (X2 is None)
    if X1 is not None:
        assert H @ X1 == Y
