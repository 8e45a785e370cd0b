import numpy as np
import pytest
import sympy

from mirrorsmith import algebra as alg
from mirrorsmith.algebra import (Algebra, NotIdempotent, cartan_matrix, center_basis,
                                 check_algebra, corner, decompose, enveloping, invariants,
                                 is_symmetric_algebra, primitive_idempotents, quotient_algebra,
                                 tensor_product)
from mirrorsmith.exact import field_from_name
from mirrorsmith.worked_example import compiled, presentation_text
from oracles import end_uniserial_sum, path_algebra_oracle


def semisimple(f, n):
    """k^n with coordinatewise product."""
    struct = f.zeros((n, n, n))
    for i in range(n):
        struct[i, i, i] = f.one
    unit = f.array([1] * n)
    return Algebra(f, struct, unit, labels=[f"u{i}" for i in range(n)])


def matrix_algebra(f, n):
    """M_n(k) on matrix units E_ij, index i*n+j."""
    d = n * n
    struct = f.zeros((d, d, d))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                struct[i * n + j, j * n + k, i * n + k] = f.one
    unit = f.zeros(d)
    for i in range(n):
        unit[i * n + i] = f.one
    return Algebra(f, struct, unit, labels=[f"E{i}{j}" for i in range(n) for j in range(n)])


def center_oracle(A):
    """Centre dimension from a sympy nullspace of the commutator system."""
    n = A.dim
    rows = []
    for g in range(n):
        for k in range(n):
            rows.append([int(A.struct[i, g, k]) - int(A.struct[g, i, k]) if A.field.is_finite
                         else A.struct[i, g, k] - A.struct[g, i, k] for i in range(n)])
    M = sympy.Matrix(rows)
    if A.field.is_finite:
        from sympy import GF
        from sympy.polys.matrices import DomainMatrix
        return n - DomainMatrix.from_Matrix(M).convert_to(GF(A.field.p)).rank()
    return n - M.rank()


@pytest.mark.parametrize("name", ["lambda", "A", "B", "RAe", "RBf", "A2"])
@pytest.mark.parametrize("fld", ["F2", "F7", "Q"])
def test_compiled_examples_are_algebras(name, fld):
    A = compiled(name, fld)
    assert check_algebra(A).ok


@pytest.mark.parametrize("name", ["lambda", "A", "B", "RAe", "RBf", "A2"])
def test_dims_and_cartan_against_path_oracle(name):
    dim, cart = path_algebra_oracle(presentation_text(name), 7)
    A = compiled(name, "Q")
    assert A.dim == dim
    # oracle counts paths a -> b, i.e. dim e_a A e_b; Cartan rows are projectives A e_i
    assert cartan_matrix(A) == [list(r) for r in zip(*cart)]


@pytest.mark.parametrize("name", ["lambda", "A", "B", "RAe", "RBf"])
@pytest.mark.parametrize("fld", ["F2", "Q"])
def test_center_against_commutator_nullspace(name, fld):
    A = compiled(name, fld)
    assert len(center_basis(A)) == center_oracle(A)


def test_example_cartan_matches_uniserial_hom_counts():
    # End(Lam + S) and End(Lam + Y) over k[x]/x^3: Hom dims are min(lengths)
    assert cartan_matrix(compiled("A", "Q")) == end_uniserial_sum([3, 1])
    assert cartan_matrix(compiled("B", "Q")) == end_uniserial_sum([3, 2])


def test_frozen_invariants():
    # values frozen after agreement with the path and uniserial oracles above
    expected = {
        "A": (6, 2, 3, 4, 2, [1, 2]),
        "B": (9, 2, 3, 7, 2, [1, 2]),
        "RAe": (12, 3, 6, 9, 12, [1, 1, 12]),
        "RBf": (18, 3, 6, 15, 12, [1, 1, 12]),
        "lambda": (3, 1, 3, 2, 3, [3]),
    }
    for name, (dim, simples, center, rad, det, snf) in expected.items():
        for fld in ("F2", "F7", "Q"):
            inv = invariants(compiled(name, fld))
            assert (inv.dim, inv.simples, inv.center_dim, inv.radical_dim,
                    inv.cartan_det, inv.cartan_snf) == (dim, simples, center, rad, det, snf), (name, fld)


def test_det_of_cartan_matches_sympy():
    for name in ("RAe", "RBf"):
        cart = cartan_matrix(compiled(name, "Q"))
        assert invariants(compiled(name, "Q")).cartan_det == sympy.Matrix(cart).det()


def test_check_algebra_detects_nonassociative():
    f = field_from_name("Q")
    A = semisimple(f, 2)
    struct = A.struct.copy()
    struct[0, 1] = f.array([1, 0])  # u0*u1 = u0 breaks associativity with u1 as unit part
    bad = Algebra(f, struct, A.unit)
    assert not check_algebra(bad).ok


def test_matrix_algebra_invariants():
    f = field_from_name("F3")
    M = matrix_algebra(f, 2)
    assert check_algebra(M).ok
    assert len(center_basis(M)) == 1
    assert len(primitive_idempotents(M)) == 2
    inv = invariants(M)
    assert inv.simples == 1 and inv.radical_dim == 0


def test_opposite_is_cached_involution():
    A = compiled("A", "F2")
    op = A.opposite()
    assert op.opposite() is A
    x, y = A.basis_vector(1), A.basis_vector(3)
    assert np.array_equal(op.mul(x, y), A.mul(y, x))


def test_tensor_and_enveloping_dims():
    A = compiled("A", "F2")
    L = compiled("lambda", "F2")
    T = tensor_product(A, L)
    assert T.dim == 18 and check_algebra(T).ok
    E = enveloping(L)
    assert E.dim == 9 and check_algebra(E).ok


def test_corner_of_example_is_local_dim_three():
    A = compiled("A", "Q")
    C, incl = corner(A, A.vertex_idempotents[0])
    assert C.dim == 3 and incl.shape == (6, 3)
    assert decompose(C).simples == 1


def test_corner_rejects_non_idempotent():
    A = compiled("A", "Q")
    with pytest.raises(NotIdempotent):
        corner(A, A.arrow_elements["gamma"])


def test_quotient_by_radical_is_semisimple():
    A = compiled("B", "F2")
    Q, _, _ = quotient_algebra(A, decompose(A).radical)
    assert Q.dim == 2 and invariants(Q).radical_dim == 0


@pytest.mark.parametrize("fld", ["F2", "F3", "Q"])
def test_primitive_idempotents_complete_orthogonal(fld):
    A = compiled("RAe", fld)
    idems = primitive_idempotents(A)
    assert len(idems) == 3
    assert alg._is_complete_orthogonal(A, idems)


def test_symmetric_algebra_check():
    assert is_symmetric_algebra(compiled("lambda", "F2")).is_symmetric
    assert not is_symmetric_algebra(compiled("A2", "F2")).is_symmetric


def test_semisimple_radical_empty():
    f = field_from_name("F2")
    S = semisimple(f, 3)
    inv = invariants(S)
    assert inv.simples == 3 and inv.radical_dim == 0 and inv.cartan_det == 1
