import numpy as np
import pytest

from mirrorsmith import exact
from mirrorsmith.algebra import corner, decompose
from mirrorsmith.modrep import (AtLeast, Module, NoFaithfulProjInj, check_module,
                                corner_bimodules, direct_sum, dominant_dimension, dual_module,
                                end_algebra, hom_dim, is_faithful, is_gendo_symmetric,
                                is_injective, is_projective, left_ideal_module,
                                minimal_projective_resolution, module_isomorphic,
                                proj_inj_idempotent, quotient_module, radical_submodule,
                                regular_module, tensor_over_corner, tor_dims)
from mirrorsmith.worked_example import compiled, endomorphism_route
from oracles import end_uniserial_sum, uniserial_hom


def uniserials(lam):
    """k[x]/x^l for l = 1, 2, 3 as quotients of the regular module."""
    R = regular_module(lam)
    rad = decompose(lam).radical
    rad2 = lam.ideal_product(rad, rad)
    S, _ = quotient_module(R, radical_submodule(R))
    Y, _ = quotient_module(R, rad2)
    return {1: S, 2: Y, 3: R}


def simple_top(A, i):
    P, _ = left_ideal_module(A, A.vertex_idempotents[i])
    return quotient_module(P, radical_submodule(P))[0]


def right_corner_module(A, e):
    """Ae as a right eAe-module, written over the opposite corner."""
    f = A.field
    _, eA = corner_bimodules(A, e)
    L = eA.left_alg
    _, incl = corner(A, e)
    ae = exact.column_basis(A.right_matrix(e), f)
    c = exact.Coordinates(ae, f)
    Mr = Module(L.opposite(), [c.coords(f.matmul(A.right_matrix(incl[:, k]), ae)) for k in range(L.dim)])
    return Mr, Module(L, eA.left)


@pytest.mark.parametrize("fld", ["F2", "F3", "Q"])
def test_uniserial_hom_dims_match_closed_form(fld):
    mods = uniserials(compiled("lambda", fld))
    for a, M in mods.items():
        assert check_module(M) and M.dim == a
        for b, N in mods.items():
            assert hom_dim(M, N) == uniserial_hom(a, b)


@pytest.mark.parametrize("fld", ["F2", "Q"])
def test_endomorphism_route_dims(fld):
    EA, EB = endomorphism_route(compiled("lambda", fld))
    assert EA.dim == sum(map(sum, end_uniserial_sum([3, 1]))) == 6
    assert EB.dim == sum(map(sum, end_uniserial_sum([3, 2]))) == 9


def test_end_algebra_of_direct_sum_is_matrix_like():
    mods = uniserials(compiled("lambda", "F5"))
    E, _ = end_algebra(direct_sum([mods[1], mods[1]]))
    assert E.dim == 4  # M_2(k)


def test_dual_is_involutive_on_dims_and_swaps_proj_inj():
    lam = compiled("lambda", "F3")
    R = regular_module(lam)
    assert is_projective(R) and is_injective(R)  # self-injective
    S = uniserials(lam)[1]
    assert not is_projective(S) and not is_injective(S)
    A = compiled("A2", "F3")
    P2, _ = left_ideal_module(A, A.vertex_idempotents[1])
    D = dual_module(P2)
    assert D.dim == P2.dim
    assert is_projective(P2) and is_projective(dual_module(D))


def test_resolution_of_simple_is_exact_and_minimal():
    A = compiled("A", "F3")
    S2 = simple_top(A, 1)
    res = minimal_projective_resolution(S2, 4)
    f = A.field
    assert res.minimal
    # frozen after the exactness check below
    assert res.betti() == [1, 1, 2, 2, 2]
    assert exact.rank(res.maps[0], f) == S2.dim
    for k in range(1, len(res.maps)):
        comp = f.matmul(res.maps[k - 1], res.maps[k])
        assert exact.is_zero(comp)
        ker = res.terms[k - 1].dim - exact.rank(res.maps[k - 1], f)
        assert exact.rank(res.maps[k], f) == ker


def test_projective_resolution_terminates_for_hereditary():
    A = compiled("A2", "F2")
    for i in range(2):
        res = minimal_projective_resolution(simple_top(A, i), 5)
        assert res.complete and len(res.terms) <= 2


@pytest.mark.parametrize("fld", ["F2", "F5", "Q"])
def test_tor_over_corner_matches_closed_form(fld):
    # Ae over eAe = k[x]/x^3 is Lam + k, so Tor_n = Tor_n(k, k) = 1 for n >= 1
    A = compiled("A", fld)
    Mr, Nl = right_corner_module(A, A.vertex_idempotents[0])
    assert tor_dims(Mr, Nl, 3) == [6, 1, 1, 1]


def test_tor_zero_equals_corner_tensor_dim():
    for name, want in (("A", 6), ("B", 9)):
        A = compiled(name, "F2")
        e = A.vertex_idempotents[0]
        Mr, Nl = right_corner_module(A, e)
        assert tor_dims(Mr, Nl, 0)[0] == tensor_over_corner(A, e).dim == want


def test_tor_vanishes_over_semisimple_corner():
    A = compiled("A", "F3")
    e2 = A.vertex_idempotents[1]
    assert corner(A, e2)[0].dim == 1
    Mr, Nl = right_corner_module(A, e2)
    dims = tor_dims(Mr, Nl, 3)
    assert dims[0] == tensor_over_corner(A, e2).dim and dims[1:] == [0, 0, 0]


def test_corner_tensor_is_bimodule():
    A = compiled("B", "F3")
    ct = tensor_over_corner(A, A.vertex_idempotents[0])
    assert ct.bimodule.check()


def test_faithfulness():
    A = compiled("A", "F2")
    e1, e2 = A.vertex_idempotents
    assert is_faithful(left_ideal_module(A, e1)[0])
    assert not is_faithful(left_ideal_module(A, e2)[0])


def test_dominant_dimension_values():
    assert dominant_dimension(compiled("lambda", "F2"), 4) == AtLeast(4)
    assert dominant_dimension(compiled("A", "F2"), 2) == AtLeast(2)
    assert dominant_dimension(compiled("A2", "F2"), 3) == 1


@pytest.mark.parametrize("name", ["A", "B"])
@pytest.mark.parametrize("fld", ["F2", "F7", "Q"])
def test_examples_are_gendo_symmetric(name, fld):
    A = compiled(name, fld)
    cert = is_gendo_symmetric(A, A.vertex_idempotents[0])
    assert cert.gendo_symmetric
    assert cert.faithful and cert.projective and cert.injective and cert.duality_iso


def test_path_algebra_a2_is_not_gendo_symmetric():
    A = compiled("A2", "F2")
    e = proj_inj_idempotent(A)
    cert = is_gendo_symmetric(A, e)
    assert not cert.gendo_symmetric and not cert.domdim_ge2


def test_proj_inj_idempotent_of_example():
    A = compiled("A", "F3")
    e = proj_inj_idempotent(A)
    assert np.array_equal(e, A.vertex_idempotents[0])


def test_no_faithful_proj_inj():
    # radical square zero Kronecker-type algebra with no projective-injective
    from mirrorsmith.quiverlang import build_path_algebra, parse_presentation
    text = "field F2\nvertex 1\nvertex 2\nvertex 3\narrow a 1 2\narrow b 3 2\nrelations\nend\n"
    A = build_path_algebra(parse_presentation(text))[0]
    with pytest.raises(NoFaithfulProjInj):
        proj_inj_idempotent(A)


def test_module_isomorphic_detects_non_iso():
    mods = uniserials(compiled("lambda", "F3"))
    assert module_isomorphic(mods[3], mods[3]).status == "isomorphic"
    assert module_isomorphic(direct_sum([mods[1], mods[2]]), mods[3]).status == "not_isomorphic"
