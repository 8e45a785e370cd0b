import numpy as np

from mirrorsmith.algebra import check_algebra
from mirrorsmith.corpus import corpus, random_chain_map, random_complex, random_instance
from mirrorsmith.homotopy import check_complex, cone
from mirrorsmith.mirror import is_unit_in_corner
from mirrorsmith.suites import (check_associativity, check_rho, check_unit_twists, check_units,
                                homotopy_battery, run_corpus_suite)
from mirrorsmith.worked_example import compiled


def test_instances_are_deterministic():
    a = random_instance(7, 3)
    b = random_instance(7, 3)
    assert a.presentation.to_text() == b.presentation.to_text()
    assert all(np.array_equal(x, y) for x, y in zip(a.levels, b.levels))
    c = random_instance(8, 3)
    assert c.presentation.to_text() != a.presentation.to_text() or not np.array_equal(a.e, c.e)


def test_corpus_bounds_and_levels():
    for inst in corpus(25, root=11):
        A = inst.algebra
        assert A.dim <= 12 and str(A.field) == "F5"
        assert len(A.vertex_idempotents) <= 4
        assert len(inst.presentation.arrows) <= 6
        assert check_algebra(A).ok
        assert A.is_idempotent(inst.e)
        assert all(is_unit_in_corner(A, inst.e, u) for u in inst.units)


def test_instance_checks_pass_on_small_corpus():
    for inst in corpus(6, root=3):
        A, e = inst.algebra, inst.e
        assert check_rho(A, e, inst.levels).ok
        assert check_units(A, e, inst.levels).ok
        assert check_associativity(A, e, inst.levels).ok
        assert check_unit_twists(A, e, inst.levels, inst.units).ok


def test_corpus_report_shape():
    rep = run_corpus_suite(4, root=5, checks=("rho", "units"))
    assert rep.instances == 4 and set(rep.failures) == {"rho", "units"}
    assert rep.ok and rep.max_dim <= 12


def test_random_complexes_are_complexes():
    A = compiled("B", "F3")
    for k in range(10):
        rng = np.random.default_rng([1, k])
        X = random_complex(rng, A)
        assert check_complex(X).ok and X.hi <= 0
        Y = random_complex(rng, A, length=2)
        fm = random_chain_map(rng, X, Y)
        assert fm.is_chain_map() and check_complex(cone(fm)).ok


def test_small_homotopy_battery():
    algs = [compiled("A", "F2"), compiled("B", "F3")]
    failures, nontrivial = homotopy_battery(algs, n=8, root=2)
    assert failures == [] and nontrivial > 0
