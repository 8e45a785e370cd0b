import numpy as np
import pytest

from mirrorsmith.algebra import check_algebra, corner, decompose, invariants
from mirrorsmith.mirror import (Level, LevelNotCentral, build_mirror, check_idealized_extension,
                                displayed_product, is_unit_in_corner, levels_isomorphic,
                                mirror_isomorphism, omega_invertible, omega_map, rho_iso_check)
from mirrorsmith.quiverlang import verify_presentation
from mirrorsmith.worked_example import compiled, presentation


def corner_x(A, e):
    """Generator of the radical of eAe, in A-coordinates."""
    f = A.field
    C, incl = corner(A, e)
    return f.normalize(f.matmul(incl, decompose(C).radical[:, 0]))


@pytest.fixture(params=["F2", "F5", "Q"])
def fld(request):
    return request.param


@pytest.mark.parametrize("name,dim", [("A", 12), ("B", 18)])
def test_mirror_dims_and_algebra_axioms(name, dim, fld):
    A = compiled(name, fld)
    e = A.vertex_idempotents[0]
    M = build_mirror(A, e, e)
    assert M.algebra.dim == dim
    assert check_algebra(M.algebra).ok
    chk = check_idealized_extension(M)
    assert chk.ok and not chk.x_square_zero


@pytest.mark.parametrize("name,target", [("A", "RAe"), ("B", "RBf")])
def test_mirror_matches_shipped_presentation(name, target, fld):
    A = compiled(name, fld)
    e = A.vertex_idempotents[0]
    R = build_mirror(A, e, e).algebra
    assert verify_presentation(R, presentation(target, fld)).ok


def test_mirror_invariants_agree():
    ia = invariants(build_mirror(compiled("A", "F3"), *[compiled("A", "F3").vertex_idempotents[0]] * 2).algebra)
    B = compiled("B", "F3")
    ib = invariants(build_mirror(B, B.vertex_idempotents[0], B.vertex_idempotents[0]).algebra)
    assert (ia.simples, ia.cartan_det, ia.center_dim) == (ib.simples, ib.cartan_det, ib.center_dim) == (3, 12, 6)


def test_zero_level_gives_square_zero_extension():
    A = compiled("A", "F3")
    e = A.vertex_idempotents[0]
    M = build_mirror(A, e, A.zero())
    chk = check_idealized_extension(M)
    assert chk.ok and chk.x_square_zero


def test_omega_table_matches_displayed_formula(fld):
    # level on the middle factor vs level on the right factor: equal because
    # the level is central in eAe
    for name in ("A", "B"):
        A = compiled(name, fld)
        e = A.vertex_idempotents[0]
        for lam in (e, corner_x(A, e), A.zero()):
            om = omega_map(A, e, lam)
            assert np.array_equal(om.table, displayed_product(A, om.delta, lam))


def test_omega_invertible_exactly_for_unit_levels():
    A = compiled("A", "F5")
    e = A.vertex_idempotents[0]
    x = corner_x(A, e)
    assert omega_invertible(omega_map(A, e, e))
    assert omega_invertible(omega_map(A, e, A.field.normalize(e + x)))
    assert not omega_invertible(omega_map(A, e, x))


def test_level_must_lie_in_corner():
    A = compiled("A", "F2")
    e1, e2 = A.vertex_idempotents
    with pytest.raises(LevelNotCentral):
        Level.make(A, e1, e2)
    with pytest.raises(LevelNotCentral):
        build_mirror(A, e1, A.arrow_elements["alpha"])


def test_level_must_be_central_in_corner():
    from test_algebra import matrix_algebra
    from mirrorsmith.exact import field_from_name
    M = matrix_algebra(field_from_name("F3"), 2)
    E12 = M.basis_vector(1)
    with pytest.raises(LevelNotCentral):
        Level.make(M, M.unit, E12)


def test_rho_is_isomorphism(fld):
    for name in ("A", "B"):
        A = compiled(name, fld)
        e = A.vertex_idempotents[0]
        chk = rho_iso_check(A, e, extra_levels=[corner_x(A, e)])
        assert chk.ok
        assert chk.center_dim == chk.end_dim == 3


def test_unit_detection():
    A = compiled("B", "F3")
    e = A.vertex_idempotents[0]
    x = corner_x(A, e)
    assert is_unit_in_corner(A, e, e)
    assert is_unit_in_corner(A, e, A.field.normalize(2 * e + x))
    assert not is_unit_in_corner(A, e, x)


def test_mirror_isomorphism_for_unit_twist(fld):
    A = compiled("A", fld)
    e = A.vertex_idempotents[0]
    x = corner_x(A, e)
    mu = A.field.normalize(e + x)
    _, ok = mirror_isomorphism(A, e, e, mu)
    assert ok
    _, ok = mirror_isomorphism(A, e, x, mu)
    assert ok


def test_levels_isomorphic_classes(fld):
    A = compiled("A", fld)
    f = A.field
    e = A.vertex_idempotents[0]
    x = corner_x(A, e)
    twisted = f.normalize(A.mul(e, f.normalize(e + x)))
    assert levels_isomorphic(A, e, twisted, e).equivalent
    assert not levels_isomorphic(A, e, x, e).equivalent
    assert not levels_isomorphic(A, e, e, A.zero()).equivalent
    res = levels_isomorphic(A, e, f.normalize(x + A.mul(x, x)), x)
    assert res.equivalent and is_unit_in_corner(A, e, res.mu)
