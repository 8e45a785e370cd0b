"""Command-line front end.

Exit codes: 0 success, 1 semantic failure (a check failed), 2 input error
(unreadable or malformed files, bad flags).  Reports go to stdout as sorted
``key: value`` lines; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import __version__
from .algebra import DEFAULT_SEED, check_algebra, invariants
from .exact import field_from_name, is_zero
from .quiverlang import (NotAdmissible, NotFiniteDimensional, ParseError, build_path_algebra,
                         evaluate_poly, parse_poly, parse_presentation, verify_presentation,
                         with_field)
from .report import format_report

OK, FAILED, INPUT_ERROR = 0, 1, 2
BUILTIN_PREFIX = "builtin:"


class InputError(Exception):
    pass


class SemanticError(Exception):
    pass


def seed_from_env(environ=None) -> int:
    raw = (environ if environ is not None else os.environ).get("MIRRORSMITH_SEED")
    if raw is None or not raw.strip():
        return DEFAULT_SEED
    raw = raw.strip()
    try:
        return int(raw, 16) if raw.lower().startswith("0x") else int(raw, 10)
    except ValueError:
        raise InputError(f"MIRRORSMITH_SEED must be decimal or 0x-hex, got {raw!r}") from None


# -- loading -------------------------------------------------------------------------


def read_text(path: str) -> str:
    if path.startswith(BUILTIN_PREFIX):
        from .worked_example import DATA_FILES, presentation_text
        name = path[len(BUILTIN_PREFIX):]
        if name not in DATA_FILES:
            raise InputError(f"unknown built-in presentation {name!r}; known: {', '.join(DATA_FILES)}")
        return presentation_text(name)
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None


def load(path: str, field: str | None = None):
    """Parse and compile a presentation; returns ``(presentation, algebra)``."""
    try:
        pres = parse_presentation(read_text(path))
    except ParseError as exc:
        raise InputError(f"{path}: {exc}") from None
    if field is not None:
        try:
            pres = with_field(pres, field_from_name(field))
        except ValueError as exc:
            raise InputError(str(exc)) from None
    try:
        A, _ = build_path_algebra(pres)
    except (NotAdmissible, NotFiniteDimensional) as exc:
        raise SemanticError(f"{path}: {type(exc).__name__}: {exc}") from None
    return pres, A


def parse_idempotent(A, spec: str):
    from .algebra import idempotent_from_vertices
    from .modrep import NoFaithfulProjInj, proj_inj_idempotent
    if spec == "auto":
        try:
            return proj_inj_idempotent(A)
        except NoFaithfulProjInj as exc:
            raise SemanticError(f"NoFaithfulProjInj: {exc}") from None
    names = [s.strip() for s in spec.split(",") if s.strip()]
    if not names:
        raise InputError("empty --idempotent")
    try:
        return idempotent_from_vertices(A, names)
    except KeyError as exc:
        raise InputError(f"--idempotent: {exc.args[0]}") from None


def parse_level(A, pres, e, text: str):
    f = A.field
    text = text.strip()
    # "e" and "f" name the chosen idempotent unless an arrow takes the name
    if text in ("e", "f") and text not in {a.name for a in pres.arrows}:
        return e.copy()
    if text == "0":
        return A.zero()
    try:
        poly = parse_poly(text, pres)
    except ParseError as exc:
        raise InputError(f"--level: {exc}") from None
    images = {f"[{v}]": A.vertex_idempotents[k] for k, v in enumerate(pres.vertices)}
    images.update(A.arrow_elements)
    return f.normalize(evaluate_poly(A, poly, images))


def describe_idempotent(A, e) -> str:
    """Vertex names when ``e`` is a sum of vertex idempotents, else the element."""
    names = getattr(A, "vertex_names", None)
    if names and A.vertex_idempotents is not None:
        f = A.field
        picked = [n for n, v in zip(names, A.vertex_idempotents) if not is_zero(A.mul(e, v))]
        total = A.zero()
        for n in picked:
            total = f.normalize(total + A.vertex_idempotents[names.index(n)])
        if (total == e).all():
            return ",".join(picked)
    return A.fmt(e)


def field_name(A) -> str:
    return str(A.field)


# -- commands ------------------------------------------------------------------------


def cmd_check(args) -> tuple:
    pres, A = load(args.file, args.field)
    chk = check_algebra(A)
    inv = invariants(A)
    rep = {
        "arrows": len(pres.arrows),
        "cartan_det": inv.cartan_det,
        "cartan_matrix": inv.cartan,
        "center_dim": inv.center_dim,
        "dim": A.dim,
        "field": field_name(A),
        "radical_dim": inv.radical_dim,
        "simples": inv.simples,
        "vertices": len(pres.vertices),
    }
    return rep, OK if chk.ok else FAILED


def cmd_mirror(args) -> tuple:
    from .mirror import LevelNotCentral, build_mirror, check_idealized_extension
    from .modrep import is_gendo_symmetric
    pres, A = load(args.file, args.field)
    e = parse_idempotent(A, args.idempotent)
    lam = parse_level(A, pres, e, args.level)
    try:
        M = build_mirror(A, e, lam)
    except LevelNotCentral as exc:
        raise SemanticError(f"LevelNotCentral: {exc}") from None
    R = M.algebra
    ideal = check_idealized_extension(M)
    gendo = is_gendo_symmetric(A, e, args.seed)
    rep = {
        "algebra_check": "pass" if check_algebra(R).ok else "fail",
        "delta0_dim": M.delta.dim,
        "dim": R.dim,
        "field": field_name(A),
        "gendo_source": "pass" if gendo.gendo_symmetric else "fail",
        "idealized_extension": "pass" if ideal.ok else "fail",
        "idempotent": describe_idempotent(A, e),
        "level": A.fmt(lam),
        "x_square_zero": ideal.x_square_zero,
    }
    code = OK if ideal.ok and rep["algebra_check"] == "pass" else FAILED
    if args.expect:
        try:
            expect = parse_presentation(read_text(args.expect))
        except ParseError as exc:
            raise InputError(f"{args.expect}: {exc}") from None
        expect = with_field(expect, A.field)
        match = verify_presentation(R, expect)
        rep["presentation_match"] = match.ok
        rep["presentation_candidates"] = match.tried
        if match.ok:
            for name, val in sorted(match.assignment.items()):
                rep[f"witness.{name}"] = R.fmt(val)
        else:
            rep["presentation_reason"] = match.reason
            code = FAILED
    return rep, code


def cmd_gendo(args) -> tuple:
    from .modrep import is_gendo_symmetric
    pres, A = load(args.file, args.field)
    try:
        e = parse_idempotent(A, args.idempotent)
    except SemanticError as exc:
        rep = {"duality_iso": False, "domdim_ge2": False, "faithful": False,
               "gendo_symmetric": False, "idempotent": "none", "injective": False,
               "projective": False, "reason": str(exc)}
        return rep, FAILED
    cert = is_gendo_symmetric(A, e, args.seed)
    rep = {
        "dominant_dimension": str(cert.dominant_dimension),
        "domdim_ge2": cert.domdim_ge2,
        "duality_iso": cert.duality_iso,
        "faithful": cert.faithful,
        "gendo_symmetric": cert.gendo_symmetric,
        "idempotent": describe_idempotent(A, e),
        "injective": cert.injective,
        "projective": cert.projective,
    }
    return rep, OK if cert.gendo_symmetric else FAILED


def _complex_label(X, pres) -> str:
    names = list(pres.vertices)
    parts = []
    for i in X.degrees():
        counts = {}
        for t in X.tag(i):
            counts[names[t]] = counts.get(names[t], 0) + 1
        body = "+".join(f"{v}:{m}" for v, m in counts.items()) or "0"
        parts.append(f"[{i}]{body}")
    return " -> ".join(parts)


def _end_entries(prefix: str, X) -> dict:
    from .homotopy import end_algebra_complex
    E, _ = end_algebra_complex(X)
    inv = invariants(E)
    return {
        f"{prefix}end_cartan_det": inv.cartan_det,
        f"{prefix}end_cartan_snf": inv.cartan_snf,
        f"{prefix}end_center_dim": inv.center_dim,
        f"{prefix}end_dim": inv.dim,
        f"{prefix}end_simples": inv.simples,
    }


def _verdict_entries(prefix: str, v) -> dict:
    return {
        f"{prefix}k0": v.k0,
        f"{prefix}selforthogonal": v.selforthogonal,
        f"{prefix}verdict": str(v),
        f"{prefix}witness": ";".join(str(s) for s in v.witness.steps) if v.witness else "none",
    }


def cmd_tilt(args) -> tuple:
    from .homotopy import ComplexError, NonProjectiveTerm, is_tilting, parse_complex, tilting_search
    if args.complex:
        pres, A = load(args.file, args.field)
        text = read_text(args.complex)
        try:
            X = parse_complex(text, A, pres)
        except ParseError as exc:
            raise InputError(f"{args.complex}: {exc}") from None
        except (ComplexError, NonProjectiveTerm) as exc:
            raise InputError(f"{args.complex}: {exc}") from None
        v = is_tilting(X, args.witness_budget, args.seed)
        rep = {"complex": _complex_label(X, pres), "field": field_name(A)}
        rep.update(_verdict_entries("", v))
        rep.update(_end_entries("", X))
        return rep, FAILED if v.status == "Fail" else OK
    field = args.field
    if field is None:
        try:
            declared = parse_presentation(read_text(args.file)).field
        except ParseError as exc:
            raise InputError(f"{args.file}: {exc}") from None
        field = str(declared) if declared.is_finite else "F2"
    pres, A = load(args.file, field)
    if not A.field.is_finite:
        raise InputError("--search needs a finite field (F<p>)")
    res = tilting_search(A, max_mult=args.max_mult, seed=args.seed, budget=args.budget,
                         witness_budget=args.witness_budget, max_hits=args.max_hits)
    rep = {
        "field": field_name(A),
        "search.budget_exceeded": res.budget_exceeded,
        "search.examined": res.examined,
        "search.hits": len(res.hits),
        "search.presilting": res.presilting,
    }
    width = max(2, len(str(len(res.hits))))
    for k, hit in enumerate(res.hits, start=1):
        p = f"candidate{k:0{width}d}."
        rep[f"{p}complex"] = _complex_label(hit.complex, pres)
        rep.update(_verdict_entries(p, hit.verdict))
        inv = hit.invariants
        rep.update({
            f"{p}end_cartan_det": inv.cartan_det,
            f"{p}end_cartan_snf": inv.cartan_snf,
            f"{p}end_center_dim": inv.center_dim,
            f"{p}end_dim": inv.dim,
            f"{p}end_simples": inv.simples,
        })
    return rep, OK


def cmd_paper_example(args) -> tuple:
    from .worked_example import run_example
    items = run_example(args.field, seed=args.seed, corpus_size=args.corpus,
                        exhaustive=args.exhaustive)
    rep = {"field": args.field}
    for it in items:
        rep[f"item{it.number:02d}_{it.name}"] = it.status + (f" ({it.detail})" if it.detail else "")
    failed = [it for it in items if it.status == "FAIL"]
    if failed:
        print(f"first failing item: item{failed[0].number:02d}_{failed[0].name}", file=sys.stderr)
        return rep, FAILED
    return rep, OK


def cmd_invariants(args) -> tuple:
    from .modrep import tensor_over_corner
    rep = {}
    invs = []
    for side, path, idem in (("a", args.file_a, args.idempotent_a), ("b", args.file_b, args.idempotent_b)):
        pres, A = load(path, args.field)
        inv = invariants(A)
        invs.append(inv)
        rep.update({
            f"{side}.cartan_det": inv.cartan_det,
            f"{side}.cartan_snf": inv.cartan_snf,
            f"{side}.center_dim": inv.center_dim,
            f"{side}.dim": inv.dim,
            f"{side}.simples": inv.simples,
        })
        if idem:
            e = parse_idempotent(A, idem)
            rep[f"{side}.corner_tensor_dim"] = tensor_over_corner(A, e).dim
    a, b = invs
    rep.update({
        "agree.cartan_det": a.cartan_det == b.cartan_det,
        "agree.cartan_snf": a.cartan_snf == b.cartan_snf,
        "agree.center_dim": a.center_dim == b.center_dim,
        "agree.dim": a.dim == b.dim,
        "agree.simples": a.simples == b.simples,
    })
    return rep, OK


# -- argument parsing -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="mirrorsmith",
        description="Mirror-reflective algebras, gendo-symmetric certificates and tilting evidence. "
                    "Presentation files may be given as builtin:<name> for the shipped examples "
                    "(lambda, A, B, RAe, RBf, A2).")
    p.add_argument("--version", action="version", version=f"mirrorsmith {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, field_help="ground field override (Q or F<p>); default: the file's field"):
        sp.add_argument("--field", default=None, help=field_help)
        sp.add_argument("--seed", type=lambda s: int(s, 0), default=None,
                        help="random seed (default: MIRRORSMITH_SEED or 0xA1B2)")

    sp = sub.add_parser("check", help="compile a presentation and report invariants")
    sp.add_argument("file")
    common(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("mirror", help="build R(A,e,lambda)")
    sp.add_argument("file")
    sp.add_argument("--idempotent", default="auto", help="comma-separated vertices, or auto")
    sp.add_argument("--level", default="e", help="central element of eAe: path expression, e (or f), or 0")
    sp.add_argument("--expect", default=None, help="presentation the mirror should match")
    common(sp)
    sp.set_defaults(func=cmd_mirror)

    sp = sub.add_parser("gendo", help="gendo-symmetric certificate")
    sp.add_argument("file")
    sp.add_argument("--idempotent", default="auto")
    common(sp)
    sp.set_defaults(func=cmd_gendo)

    sp = sub.add_parser("tilt", help="tilting verdict for a complex file, or a search")
    sp.add_argument("file")
    mode = sp.add_mutually_exclusive_group(required=True)
    mode.add_argument("--complex", default=None, help="complex file to classify")
    mode.add_argument("--search", action="store_true", help="enumerate two-term complexes")
    sp.add_argument("--max-mult", type=int, default=2)
    sp.add_argument("--budget", type=int, default=10 ** 6)
    sp.add_argument("--max-hits", type=int, default=None)
    sp.add_argument("--witness-budget", type=int, default=64)
    common(sp, "ground field override; searches default to F2 when the file is over Q")
    sp.set_defaults(func=cmd_tilt)

    sp = sub.add_parser("paper-example", help="run the worked example pipeline (items 1-9)")
    sp.add_argument("--field", default="F2", help="F2 (default), F7, Q, ...")
    sp.add_argument("--corpus", type=int, default=20, help="random instances for items 5-8")
    sp.add_argument("--exhaustive", action="store_true", help="run the whole tilting search")
    sp.add_argument("--seed", type=lambda s: int(s, 0), default=None)
    sp.set_defaults(func=cmd_paper_example)

    sp = sub.add_parser("invariants", help="compare derived invariants of two algebras")
    sp.add_argument("file_a")
    sp.add_argument("file_b")
    sp.add_argument("--idempotent-a", default=None)
    sp.add_argument("--idempotent-b", default=None)
    sp.add_argument("--field", default=None)
    sp.add_argument("--seed", type=lambda s: int(s, 0), default=None)
    sp.set_defaults(func=cmd_invariants)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.seed is None:
            args.seed = seed_from_env()
        if getattr(args, "field", None) is not None:
            try:
                field_from_name(args.field)
            except ValueError as exc:
                raise InputError(str(exc)) from None
        rep, code = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except SemanticError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILED
    sys.stdout.write(format_report(rep))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
