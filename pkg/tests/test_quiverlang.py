import pytest

from mirrorsmith.algebra import check_algebra
from mirrorsmith.exact import field_from_name
from mirrorsmith.quiverlang import (NotAdmissible, NotBasic, NotFiniteDimensional, ParseError,
                                    SearchBudgetExceeded, build_path_algebra, gabriel_skeleton,
                                    parse_presentation, verify_compiled, verify_presentation,
                                    with_field)
from mirrorsmith.worked_example import compiled, presentation, presentation_text
from oracles import path_algebra_oracle

KRONECKER_SQ = """field F3
vertex a
vertex b
arrow x a b
arrow y a b
relations
end
"""


def _parse_error(text):
    with pytest.raises(ParseError) as info:
        parse_presentation(text)
    return info.value


def test_parse_error_positions():
    err = _parse_error("field F6\nend\n")
    assert (err.line, err.column) == (1, 7)
    err = _parse_error("field Q\nvertex 1\narrow a 1 2\nend\n")
    assert err.line == 3 and err.column == 11
    err = _parse_error("field Q\nvertex 1\narrow a 1 1\nrelations\na*b\nend\n")
    assert err.line == 5
    err = _parse_error("field Q\nvertex 1\n")
    assert "missing 'end'" in str(err)
    err = _parse_error("field Q\nvertex 1\nvertex 1\nend\n")
    assert err.line == 3 and "duplicate" in str(err)


def test_inhomogeneous_relation_rejected():
    text = "field Q\nvertex 1\nvertex 2\narrow a 1 1\narrow b 1 2\nrelations\na*a - a*b\nend\n"
    err = _parse_error(text)
    assert err.line == 7


def test_non_composable_word_rejected():
    text = "field Q\nvertex 1\nvertex 2\narrow a 1 2\nrelations\na*a\nend\n"
    assert _parse_error(text).line == 6


@pytest.mark.parametrize("name", ["lambda", "A", "B", "RAe", "RBf", "A2"])
def test_round_trip_text(name):
    pres = presentation(name)
    again = parse_presentation(pres.to_text())
    assert again.to_text() == pres.to_text()
    assert build_path_algebra(again)[0].dim == compiled(name, "Q").dim


@pytest.mark.parametrize("name", ["lambda", "A", "B", "RAe", "RBf", "A2"])
@pytest.mark.parametrize("fld", ["F2", "F5", "Q"])
def test_compiled_presentation_verifies_itself(name, fld):
    pres = presentation(name, fld)
    assert verify_compiled(compiled(name, fld), pres)


def test_trivial_path_factor():
    text = "field Q\nvertex 1\narrow x 1 1\nrelations\nx*x - x*[1]*x*[1]\nx^3\nend\n"
    # the relation is identically zero, so only x^3 cuts the algebra down
    A = build_path_algebra(parse_presentation(text))[0]
    assert A.dim == 3


def test_relation_with_short_term_is_not_admissible():
    text = "field Q\nvertex 1\narrow x 1 1\nrelations\nx^2 - x\nend\n"
    with pytest.raises(NotAdmissible):
        build_path_algebra(parse_presentation(text))


def test_infinite_dimensional_detected():
    text = "field Q\nvertex 1\narrow x 1 1\nrelations\nend\n"
    with pytest.raises(NotFiniteDimensional):
        build_path_algebra(parse_presentation(text), length_bound=6)


def test_printed_relations_without_gamma_beta_give_dim_seven():
    # the relation set of A with gamma*beta dropped; path oracle gives 7
    text = presentation_text("A").replace("gamma*beta\n", "")
    dim, _ = path_algebra_oracle(text, 7)
    assert dim == 7
    assert build_path_algebra(parse_presentation(text))[0].dim == 7


def test_kronecker_quiver():
    A = build_path_algebra(parse_presentation(KRONECKER_SQ))[0]
    assert A.dim == 4 and check_algebra(A).ok
    sk = gabriel_skeleton(A)
    assert sk.vertices == 2 and sk.arrows == {(0, 1): 2}


@pytest.mark.parametrize("name,verts,arrows", [
    ("lambda", 1, 1), ("A", 2, 3), ("B", 2, 2), ("RAe", 3, 6), ("RBf", 3, 4), ("A2", 2, 1),
])
def test_gabriel_skeleton_counts(name, verts, arrows):
    sk = gabriel_skeleton(compiled(name, "F2"))
    assert (sk.vertices, sk.arrow_count) == (verts, arrows)


def test_gabriel_skeleton_orientation_follows_composition():
    sk = gabriel_skeleton(compiled("A2", "Q"))
    assert sk.arrows == {(0, 1): 1}


def test_gabriel_rejects_non_basic():
    from test_algebra import matrix_algebra
    with pytest.raises(NotBasic):
        gabriel_skeleton(matrix_algebra(field_from_name("F2"), 2))


def test_verify_presentation_negative():
    A = compiled("A", "F3")
    res = verify_presentation(A, presentation("B", "F3"))
    assert not res.ok and "dimension" in res.reason
    res = verify_presentation(A, presentation("A", "F2"))
    assert not res.ok and "field" in res.reason


def test_verify_presentation_same_dim_different_algebra():
    # k[x]/x^3 against k[x,y]/(x,y)^2 truncated: both dim 3, not isomorphic
    other = "field F2\nvertex 1\narrow x 1 1\narrow y 1 1\nrelations\nx^2\ny^2\nx*y\ny*x\nend\n"
    res = verify_presentation(compiled("lambda", "F2"), parse_presentation(other))
    assert not res.ok


def test_verify_presentation_finds_witness_without_assignment():
    A = compiled("B", "F5")
    res = verify_presentation(A, presentation("B", "F5"))
    assert res.ok and res.assignment is not None


def test_verify_presentation_budget():
    A = compiled("RBf", "F7")
    with pytest.raises(SearchBudgetExceeded):
        verify_presentation(A, presentation("RBf", "F7"), budget=1)


def test_with_field_changes_only_field():
    pres = presentation("A")
    p2 = with_field(pres, field_from_name("F2"))
    assert str(p2.field) == "F2" and p2.arrows == pres.arrows
