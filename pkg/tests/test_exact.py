import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from mirrorsmith import exact
from mirrorsmith.exact import field_from_name
from oracles import sympy_rank_mod

small_ints = st.integers(min_value=-4, max_value=4)


def matrices(rows=st.integers(1, 5), cols=st.integers(1, 5)):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(st.lists(small_ints, min_size=rc[1], max_size=rc[1]),
                            min_size=rc[0], max_size=rc[0]))


def test_field_names():
    assert str(field_from_name("F7")) == "F7"
    assert str(field_from_name("Q")) == "Q"
    with pytest.raises(ValueError):
        field_from_name("F6")
    with pytest.raises(ValueError):
        field_from_name("R")


def test_prime_field_arithmetic():
    f = field_from_name("F5")
    assert f.inv(2) == 3
    assert f.scalar(-1) == 4
    with pytest.raises(ZeroDivisionError):
        f.inv(0)


@settings(max_examples=60, deadline=None)
@given(matrices(), st.sampled_from([2, 3, 7, None]))
def test_rank_matches_sympy(rows, p):
    f = field_from_name("Q" if p is None else f"F{p}")
    m = f.array(rows)
    assert exact.rank(m, f) == sympy_rank_mod(rows, p)


@settings(max_examples=60, deadline=None)
@given(matrices(), st.sampled_from([2, 5, None]))
def test_kernel_is_kernel(rows, p):
    f = field_from_name("Q" if p is None else f"F{p}")
    m = f.array(rows)
    ker = exact.kernel_basis(m, f)
    assert len(ker) == m.shape[1] - exact.rank(m, f)
    for v in ker:
        assert exact.is_zero(f.matmul(m, v))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n),
                                                     min_size=n, max_size=n)))
def test_det_and_inverse_over_q(rows):
    f = field_from_name("Q")
    m = f.array(rows)
    d = exact.det(m, f)
    assert d == sympy.Matrix(rows).det()
    if d != 0:
        inv = exact.inverse(m, f)
        assert np.array_equal(f.matmul(m, inv), f.eye(len(rows)))


def test_solve_linear_inconsistent():
    f = field_from_name("F3")
    m = f.array([[1, 1], [1, 1]])
    assert exact.solve_linear(m, f.array([1, 2]), f) is None
    x = exact.solve_linear(m, f.array([2, 2]), f)
    assert np.array_equal(f.matmul(m, x), f.array([2, 2]))


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_smith_normal_form_matches_sympy(rows):
    diag, L, R = exact.smith_normal_form(rows)
    prod = np.array(L, dtype=object) @ np.array(rows, dtype=object) @ np.array(R, dtype=object)
    for i in range(prod.shape[0]):
        for j in range(prod.shape[1]):
            assert prod[i, j] == (diag[i] if i == j else 0)
    ref = sympy_snf(sympy.Matrix(rows), domain=sympy.ZZ)
    expected = [abs(ref[i, i]) for i in range(min(ref.shape))]
    assert diag == expected
    assert abs(exact.int_det(L)) == 1 and abs(exact.int_det(R)) == 1


def test_smith_normal_form_example():
    diag, _, _ = exact.smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert diag == [2, 6, 12]


def _hnf_lattice(rows):
    from sympy.matrices.normalforms import hermite_normal_form
    M = sympy.Matrix(rows).T  # lattice generated by the columns
    H = hermite_normal_form(M)
    return {tuple(H[:, j]) for j in range(H.shape[1]) if any(H[:, j])}


@settings(max_examples=80, deadline=None)
@given(matrices(rows=st.integers(1, 3), cols=st.integers(1, 3)),
       st.lists(small_ints, min_size=3, max_size=3))
def test_lattice_contains_against_hermite_form(rows, target):
    n = len(rows[0])
    target = target[:n]
    if not any(any(r) for r in rows):
        assert exact.lattice_contains(rows, target) == (not any(target))
        return
    same = _hnf_lattice(rows) == _hnf_lattice(rows + [target])
    assert exact.lattice_contains(rows, target) == same


@settings(max_examples=40, deadline=None)
@given(matrices(rows=st.integers(1, 3), cols=st.integers(1, 3)),
       st.lists(small_ints, min_size=3, max_size=3))
def test_lattice_contains_combinations(rows, coeffs):
    n = len(rows[0])
    target = [sum(c * r[j] for c, r in zip(coeffs, rows)) for j in range(n)]
    assert exact.lattice_contains(rows, target)


def test_lattice_index_two():
    assert not exact.lattice_contains([[2, 0], [0, 1]], [1, 0])
    assert exact.lattice_contains([[1, 1], [1, -1]], [2, 0])
    assert not exact.lattice_contains([[1, 1], [1, -1]], [1, 0])
    assert exact.lattice_contains([], [0, 0])


def test_quotient_map_kernel():
    f = field_from_name("F5")
    sub = f.array([[1, 1, 0, 0], [0, 0, 1, 2]])
    free, P = exact.quotient_map(sub, 4, f)
    assert P.shape == (2, 4)
    assert exact.is_zero(f.matmul(P, sub.T))
    for k, i in enumerate(free):
        assert np.array_equal(P[:, i], f.eye(2)[:, k])


def test_coordinates_membership():
    f = field_from_name("Q")
    basis = f.array([[1, 0], [1, 1], [0, 1]])
    c = exact.Coordinates(basis, f)
    assert list(c.coords(f.array([2, 5, 3]))) == [2, 3]
    assert not c.contains(f.array([1, 0, 0]))
    with pytest.raises(ValueError):
        exact.Coordinates(f.array([[1, 2], [2, 4]]), f)
