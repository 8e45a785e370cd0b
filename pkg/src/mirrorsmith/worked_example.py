"""The truncated-polynomial example end to end.

``Lam = k[x]/(x^3)``, ``A = End(Lam + S)`` with S simple and
``B = End(Lam + Y)`` with Y uniserial of length two.  The shipped quiver
files give the same algebras by presentation; items 1 to 9 of
:func:`run_example` compare the two routes and run the mirror, gendo and
tilting pipelines on them.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .algebra import DEFAULT_SEED, Algebra, corner, decompose, invariants
from .exact import Field, field_from_name
from .quiverlang import (QuiverPresentation, build_path_algebra, parse_presentation,
                         verify_presentation, with_field)

DATA_FILES = ("lambda", "A", "B", "RAe", "RBf", "A2")


def presentation_text(name: str) -> str:
    return resources.files("mirrorsmith").joinpath("data").joinpath(f"{name}.qp").read_text(encoding="utf-8")


def presentation(name: str, field: Field | str | None = None) -> QuiverPresentation:
    pres = parse_presentation(presentation_text(name))
    if field is not None:
        pres = with_field(pres, field_from_name(field) if isinstance(field, str) else field)
    return pres


def compiled(name: str, field: Field | str) -> Algebra:
    return build_path_algebra(presentation(name, field))[0]


@dataclass
class ExampleAlgebras:
    field: Field
    lam: Algebra
    A: Algebra
    B: Algebra
    e: np.ndarray
    f: np.ndarray


def example_algebras(field: Field | str = "Q") -> ExampleAlgebras:
    fld = field_from_name(field) if isinstance(field, str) else field
    lam = compiled("lambda", fld)
    A = compiled("A", fld)
    B = compiled("B", fld)
    return ExampleAlgebras(fld, lam, A, B, A.vertex_idempotents[0], B.vertex_idempotents[0])


def endomorphism_route(lam: Algebra):
    """``End(Lam + S)`` and ``End(Lam + Y)`` built from module data."""
    from .modrep import (direct_sum, end_algebra, quotient_module, radical_submodule,
                         regular_module)
    R = regular_module(lam)
    rad = decompose(lam).radical
    S, _ = quotient_module(R, radical_submodule(R))
    Y, _ = quotient_module(R, lam.ideal_product(rad, rad))
    EA, _ = end_algebra(direct_sum([R, S]))
    EB, _ = end_algebra(direct_sum([R, Y]))
    return EA, EB


@dataclass
class ItemResult:
    number: int
    name: str
    status: str  # PASS | FAIL | SKIPPED
    detail: str = ""
    seconds: float = 0.0

    @property
    def line(self) -> str:
        tail = f" ({self.detail})" if self.detail else ""
        return f"item{self.number:02d}_{self.name}: {self.status}{tail}"


def _status(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


# -- items ----------------------------------------------------------------------------


def item_dimensions(ex: ExampleAlgebras) -> ItemResult:
    from .mirror import build_mirror
    from .modrep import tensor_over_corner
    EA, EB = endomorphism_route(ex.lam)
    RA = build_mirror(ex.A, ex.e, ex.e)
    RB = build_mirror(ex.B, ex.f, ex.f)
    PA = compiled("RAe", ex.field)
    PB = compiled("RBf", ex.field)
    d0 = tensor_over_corner(ex.A, ex.e).dim
    t0 = tensor_over_corner(ex.B, ex.f).dim
    got = {
        "A": (EA.dim, ex.A.dim), "B": (EB.dim, ex.B.dim),
        "delta0": (d0, PA.dim - ex.A.dim), "theta0": (t0, PB.dim - ex.B.dim),
        "RAe": (RA.algebra.dim, PA.dim), "RBf": (RB.algebra.dim, PB.dim),
    }
    want = {"A": 6, "B": 9, "delta0": 6, "theta0": 9, "RAe": 12, "RBf": 18}
    ok = all(a == b == want[k] for k, (a, b) in got.items())
    detail = ", ".join(f"{k} {a}/{b}" for k, (a, b) in got.items())
    return ItemResult(1, "dimensions", _status(ok), detail)


def item_corners(ex: ExampleAlgebras) -> ItemResult:
    lam_pres = presentation("lambda", ex.field)
    res = []
    for alg, idem in ((ex.A, ex.e), (ex.B, ex.f)):
        C, _ = corner(alg, idem)
        res.append(verify_presentation(C, lam_pres).ok)
    return ItemResult(2, "corners", _status(all(res)), f"eAe {res[0]}, fBf {res[1]}")


def item_gendo(ex: ExampleAlgebras, seed: int = DEFAULT_SEED) -> ItemResult:
    from .modrep import is_gendo_symmetric
    certs = [is_gendo_symmetric(ex.A, ex.e, seed), is_gendo_symmetric(ex.B, ex.f, seed)]
    ok = all(c.gendo_symmetric for c in certs)
    detail = ", ".join(f"{n} domdim {c.dominant_dimension} duality {c.duality.status}"
                       for n, c in zip("AB", certs))
    return ItemResult(3, "gendo_symmetric", _status(ok), detail)


def item_presentations(ex: ExampleAlgebras, fields=None) -> ItemResult:
    """Mirror algebras against the shipped presentations, over each field."""
    from .mirror import build_mirror
    fields = fields or [ex.field]
    parts, ok = [], True
    for fld in fields:
        fld = field_from_name(fld) if isinstance(fld, str) else fld
        sub = example_algebras(fld) if fld != ex.field else ex
        for base, idem, name in ((sub.A, sub.e, "RAe"), (sub.B, sub.f, "RBf")):
            R = build_mirror(base, idem, idem).algebra
            match = verify_presentation(R, presentation(name, fld))
            ok &= match.ok
            parts.append(f"{name}/{fld} {match.ok}")
    return ItemResult(4, "presentations", _status(ok), ", ".join(parts))


def _corner_levels(alg: Algebra, idem: np.ndarray) -> list:
    """``e``, ``0``, the generator ``x`` of the corner radical, and ``e + x``."""
    f = alg.field
    C, incl = corner(alg, idem)
    rad = decompose(C).radical
    x = f.normalize(f.matmul(incl, rad[:, 0])) if rad.shape[1] else alg.zero()
    e = np.asarray(idem, dtype=f.dtype)
    return [e, alg.zero(), x, f.normalize(e + x)]


def item_rho(ex: ExampleAlgebras, corpus_size: int, root: int) -> ItemResult:
    from .suites import check_rho, run_corpus_suite
    local = [check_rho(ex.A, ex.e, _corner_levels(ex.A, ex.e)),
             check_rho(ex.B, ex.f, _corner_levels(ex.B, ex.f))]
    rep = run_corpus_suite(corpus_size, root, checks=("rho",)) if corpus_size else None
    ok = all(local) and (rep is None or rep.ok)
    detail = f"example {all(local)}, corpus {corpus_size} failures {len(rep.failures['rho']) if rep else 0}"
    return ItemResult(5, "rho_bijective", _status(ok), detail)


def item_units(ex: ExampleAlgebras, corpus_size: int, root: int) -> ItemResult:
    from .suites import check_units, run_corpus_suite
    local = [check_units(ex.A, ex.e, _corner_levels(ex.A, ex.e)),
             check_units(ex.B, ex.f, _corner_levels(ex.B, ex.f))]
    rep = run_corpus_suite(corpus_size, root, checks=("units",)) if corpus_size else None
    ok = all(local) and (rep is None or rep.ok)
    detail = f"example {all(local)}, corpus {corpus_size} failures {len(rep.failures['units']) if rep else 0}"
    return ItemResult(6, "omega_unit", _status(ok), detail)


def item_associativity(ex: ExampleAlgebras, corpus_size: int, root: int) -> ItemResult:
    from .suites import check_associativity, run_corpus_suite
    local = [check_associativity(ex.A, ex.e, _corner_levels(ex.A, ex.e)),
             check_associativity(ex.B, ex.f, _corner_levels(ex.B, ex.f))]
    rep = run_corpus_suite(corpus_size, root, checks=("associativity",)) if corpus_size else None
    ok = all(local) and (rep is None or rep.ok)
    n = len(rep.failures["associativity"]) if rep else 0
    return ItemResult(7, "associativity", _status(ok), f"example {all(local)}, corpus {corpus_size} failures {n}")


def item_unit_twists(ex: ExampleAlgebras, corpus_size: int, root: int) -> ItemResult:
    from .suites import check_unit_twists, run_corpus_suite
    local = []
    for alg, idem in ((ex.A, ex.e), (ex.B, ex.f)):
        levels = _corner_levels(alg, idem)
        units = [levels[0], levels[3]]
        local.append(check_unit_twists(alg, idem, levels, units))
    rep = run_corpus_suite(corpus_size, root, checks=("unit_twists",)) if corpus_size else None
    ok = all(local) and (rep is None or rep.ok)
    n = len(rep.failures["unit_twists"]) if rep else 0
    return ItemResult(8, "unit_twists", _status(ok), f"example {all(local)}, corpus {corpus_size} failures {n}")


def item_tilting(ex: ExampleAlgebras, seed: int = DEFAULT_SEED, exhaustive: bool = False,
                 budget: int = 10 ** 6) -> ItemResult:
    from .homotopy import tilting_search
    if not ex.field.is_finite:
        return ItemResult(9, "tilting_search", "SKIPPED", "search needs a finite field")
    target = invariants(ex.B)

    def good(hit):
        inv = hit.invariants
        return (hit.verdict.status in ("Verified", "K0PassUnverified") and inv.dim == target.dim
                and inv.simples == target.simples and inv.center_dim == target.center_dim
                and inv.cartan_snf == target.cartan_snf)

    res = tilting_search(ex.A, max_mult=2, seed=seed, budget=budget,
                         stop=None if exhaustive else good)
    found = [h for h in res.hits if good(h)]
    detail = f"examined {res.examined}, hits {len(res.hits)}, matching {len(found)}"
    if found:
        detail += f", first {found[0].complex!r} {found[0].verdict.status}"
    return ItemResult(9, "tilting_search", _status(bool(found)), detail)


def run_example(field: Field | str = "F2", seed: int = DEFAULT_SEED, corpus_size: int = 20,
                presentation_fields=None, exhaustive: bool = False) -> list:
    """Items 1 to 9 in order; corpus items run on ``corpus_size`` random
    instances over F5 rooted at ``seed``."""
    ex = example_algebras(field)
    steps = [
        lambda: item_dimensions(ex),
        lambda: item_corners(ex),
        lambda: item_gendo(ex, seed),
        lambda: item_presentations(ex, presentation_fields),
        lambda: item_rho(ex, corpus_size, seed),
        lambda: item_units(ex, corpus_size, seed),
        lambda: item_associativity(ex, corpus_size, seed),
        lambda: item_unit_twists(ex, corpus_size, seed),
        lambda: item_tilting(ex, seed, exhaustive),
    ]
    out = []
    for step in steps:
        t = time.perf_counter()
        item = step()
        item.seconds = time.perf_counter() - t
        out.append(item)
    return out
