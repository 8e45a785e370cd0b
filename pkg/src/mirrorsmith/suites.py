"""Property suites over the random corpus and over random complexes.

Each ``check_*`` function takes one instance and returns a :class:`SuiteOutcome`;
:func:`run_corpus_suite` maps them over a corpus, optionally in worker
processes.  Instances are regenerated from ``(root, index)`` inside the
worker, so results do not depend on scheduling.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import exact
from .algebra import DEFAULT_SEED, check_algebra, invariants
from .corpus import random_complex, random_instance
from .mirror import (Level, build_mirror, check_idealized_extension, is_unit_in_corner,
                     levels_isomorphic, mirror_isomorphism, omega_invertible, omega_map,
                     rho_endo, rho_iso_check)
from .modrep import tensor_over_corner


@dataclass
class SuiteOutcome:
    ok: bool
    failures: list = dc_field(default_factory=list)

    def __bool__(self):
        return self.ok


def _outcome(failures):
    return SuiteOutcome(not failures, failures)


def check_rho(A, e, levels=()) -> SuiteOutcome:
    """rho is a bijective unital algebra map onto the bimodule endomorphisms
    of Delta0, and omega_lam factors as omega_e followed by rho_lam."""
    rc = rho_iso_check(A, e, extra_levels=levels)
    fails = [name for name in ("linear", "multiplicative", "unital", "injective", "surjective",
                               "bimodule_maps", "omega_factorizes") if not getattr(rc, name)]
    return _outcome(fails)


def check_units(A, e, levels) -> SuiteOutcome:
    """omega_lam invertible iff lam is a unit of eAe iff rho_lam invertible."""
    f = A.field
    ct = tensor_over_corner(A, e)
    fails = []
    for k, lam in enumerate(levels):
        lev = Level.make(A, e, lam)
        om = omega_invertible(omega_map(A, e, lev, ct))
        unit = is_unit_in_corner(A, e, lam)
        r = rho_endo(A, e, lev, ct)
        rho = exact.rank(r, f) == r.shape[0]
        if not om == unit == rho:
            fails.append(f"level {k}: omega {om}, unit {unit}, rho {rho}")
    return _outcome(fails)


def check_associativity(A, e, levels) -> SuiteOutcome:
    fails = []
    for k, lam in enumerate(levels):
        M = build_mirror(A, e, lam)
        if not check_algebra(M.algebra).ok:
            fails.append(f"level {k}: not an associative unital algebra")
        elif not check_idealized_extension(M).ok:
            fails.append(f"level {k}: not an idealized extension")
    M0 = build_mirror(A, e, A.zero())
    if not check_idealized_extension(M0).x_square_zero:
        fails.append("level 0: X*X is not zero")
    return _outcome(fails)


def check_unit_twists(A, e, levels, units) -> SuiteOutcome:
    """lam and lam*mu give equivalent levels with an explicit algebra
    isomorphism; 0 and e are inequivalent once Delta0 is nonzero."""
    fails = []
    for k, lam in enumerate(levels):
        for m, mu in enumerate(units):
            lm = A.mul(lam, mu)
            if not levels_isomorphic(A, e, lm, lam):
                fails.append(f"level {k}, unit {m}: not declared equivalent")
            if not mirror_isomorphism(A, e, lam, mu)[1]:
                fails.append(f"level {k}, unit {m}: no algebra isomorphism")
    if tensor_over_corner(A, e).dim and levels_isomorphic(A, e, A.zero(), e):
        fails.append("levels 0 and e declared equivalent")
    return _outcome(fails)


CORPUS_CHECKS = {
    "rho": lambda inst: check_rho(inst.algebra, inst.e, inst.levels),
    "units": lambda inst: check_units(inst.algebra, inst.e, inst.levels),
    "associativity": lambda inst: check_associativity(inst.algebra, inst.e, inst.levels),
    "unit_twists": lambda inst: check_unit_twists(inst.algebra, inst.e, inst.levels, inst.units),
}


@dataclass
class CorpusReport:
    instances: int
    failures: dict  # check name -> list of (index, failure detail)
    max_dim: int

    @property
    def ok(self) -> bool:
        return not any(self.failures.values())


def _run_one(args):
    root, index, field, max_dim, checks = args
    inst = random_instance(root, index, field, max_dim)
    out = {}
    for name in checks:
        res = CORPUS_CHECKS[name](inst)
        out[name] = [(index, msg) for msg in res.failures]
    return inst.algebra.dim, out


def run_corpus_suite(n: int, root: int = DEFAULT_SEED, field: str = "F5", max_dim: int = 12,
                     checks=tuple(CORPUS_CHECKS), workers: int = 1) -> CorpusReport:
    jobs = [(root, k, field, max_dim, tuple(checks)) for k in range(n)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_one, jobs, chunksize=4))
    else:
        results = [_run_one(j) for j in jobs]
    failures = {name: [] for name in checks}
    top = 0
    for dim, out in results:
        top = max(top, dim)
        for name, fl in out.items():
            failures[name].extend(fl)
    return CorpusReport(n, failures, top)


# -- homotopy battery ---------------------------------------------------------------


def homotopy_battery_one(X) -> SuiteOutcome:
    """Cone of the identity vanishes, stalks of the terms are self-orthogonal,
    dualizing twice keeps the End invariants, and xi induces an automorphism
    of H^0 (complexes here live in degrees <= 0)."""
    from .homotopy import (check_complex, cone, dualize, end_algebra_complex, identity_map,
                           is_contractible, is_selforthogonal, stalk, xi_map)

    A = X.algebra
    fails = []
    if not check_complex(X):
        return _outcome(["random complex is not a complex"])
    if not is_contractible(cone(identity_map(X))):
        fails.append("cone of the identity is not contractible")
    for i in X.degrees():
        if not is_selforthogonal(stalk(A, X.tag(i)))[0]:
            fails.append(f"stalk of term {i} is not self-orthogonal")
    E, _ = end_algebra_complex(X)
    D = dualize(X)
    E1, _ = end_algebra_complex(D)
    E2, _ = end_algebra_complex(dualize(D))
    if invariants(E).fingerprint() != invariants(E2).fingerprint():
        fails.append("double dual changes End invariants")
    if (E.dim, invariants(E).center_dim) != (E1.dim, invariants(E1).center_dim):
        fails.append("dual changes End dimension or centre")
    if is_selforthogonal(X)[0] and not is_selforthogonal(D)[0]:
        fails.append("dual of a self-orthogonal complex is not self-orthogonal")
    try:
        xi_map(X)
    except AssertionError as exc:
        fails.append(str(exc))
    return _outcome(fails)


def homotopy_battery(algebras, n: int = 100, root: int = DEFAULT_SEED) -> tuple:
    """Returns ``(failures, nontrivial)`` where ``nontrivial`` counts the
    complexes with a nonzero differential."""
    failures, nontrivial = [], 0
    for k in range(n):
        rng = np.random.default_rng([root, k])
        X = random_complex(rng, algebras[k % len(algebras)])
        nontrivial += any(d.size and d.any() for d in X.diffs)
        res = homotopy_battery_one(X)
        failures.extend((k, msg) for msg in res.failures)
    return failures, nontrivial
