"""Quiver-with-relations presentations: parsing, compilation to structure
constants, and verification of a presentation against a given algebra.

Paths compose left to right: the word ``alpha*beta`` means alpha, then beta,
so it is composable when alpha ends where beta starts.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import exact
from .algebra import Algebra, check_algebra, decompose, peirce_basis, primitive_idempotents
from .exact import Coordinates, Field, field_from_name, is_zero

DEFAULT_LENGTH_BOUND = 30
Q_GRID = (-2, -1, 1, 2)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class NotAdmissible(ValueError):
    pass


class NotFiniteDimensional(ValueError):
    pass


class SearchBudgetExceeded(RuntimeError):
    pass


class NotBasic(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass
class NcPoly:
    """Linear combination of words; a word is a tuple of factor names.  A
    factor ``[v]`` stands for the trivial path at vertex ``v``."""

    terms: list  # (int coefficient, tuple of names)

    def arrows_used(self) -> set:
        return {a for _, w in self.terms for a in w if not a.startswith("[")}

    def __str__(self):
        out = []
        for i, (c, w) in enumerate(self.terms):
            word = "*".join(w)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = word if mag == 1 else f"{mag} {word}"
            if i == 0:
                out.append(body if c > 0 else f"-{body}")
            else:
                out.append(f"{sign} {body}")
        return " ".join(out)


@dataclass
class QuiverPresentation:
    field: Field
    vertices: list
    arrows: list
    relations: list = dc_field(default_factory=list)

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(name)

    def endpoints(self, word: tuple) -> tuple:
        """(source, target) of a composable word; raises ValueError otherwise."""
        src = tgt = None
        for factor in word:
            if factor.startswith("["):
                s = t = factor[1:-1]
            else:
                a = self.arrow(factor)
                s, t = a.source, a.target
            if src is None:
                src = s
            elif tgt != s:
                raise ValueError(f"word {'*'.join(word)} is not composable at {factor}")
            tgt = t
        return src, tgt

    def to_text(self) -> str:
        lines = [f"field {self.field}"]
        lines += [f"vertex {v}" for v in self.vertices]
        lines += [f"arrow {a.name} {a.source} {a.target}" for a in self.arrows]
        lines.append("relations")
        lines += [str(r) for r in self.relations]
        lines.append("end")
        return "\n".join(lines) + "\n"


_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_VERTEX = re.compile(r"[A-Za-z0-9_]+")


class _PolyParser:
    """Recursive-descent parser for one NcPoly line."""

    def __init__(self, text: str, line: int, pres: QuiverPresentation | None, col0: int = 1):
        self.s = text
        self.i = 0
        self.line = line
        self.pres = pres
        self.col0 = col0

    def error(self, msg):
        raise ParseError(msg, self.line, self.col0 + self.i)

    def skip(self):
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1

    def peek(self):
        self.skip()
        return self.s[self.i] if self.i < len(self.s) else ""

    def integer(self):
        self.skip()
        m = re.match(r"\d+", self.s[self.i:])
        if not m:
            return None
        self.i += m.end()
        return int(m.group())

    def factor(self):
        self.skip()
        start = self.i
        if self.peek() == "[":
            self.i += 1
            m = _VERTEX.match(self.s, self.i)
            if not m or self.s[m.end():m.end() + 1] != "]":
                self.error("expected [vertex]")
            name = m.group()
            if self.pres is not None and name not in self.pres.vertices:
                self.i = m.start()
                self.error(f"unknown vertex {name!r}")
            self.i = m.end() + 1
            return [f"[{name}]"]
        m = _NAME.match(self.s, self.i)
        if not m:
            self.error("expected an arrow name")
        name = m.group()
        if self.pres is not None and name not in {a.name for a in self.pres.arrows}:
            self.i = start
            self.error(f"unknown arrow {name!r}")
        self.i = m.end()
        exp = 1
        if self.peek() == "^":
            self.i += 1
            exp = self.integer()
            if not exp:
                self.error("expected a positive exponent")
        return [name] * exp

    def word(self):
        w = self.factor()
        while self.peek() == "*":
            self.i += 1
            w += self.factor()
        return tuple(w)

    def term(self, sign):
        coef = self.integer()
        if coef is None:
            coef = 1
        elif self.peek() == "*":
            self.i += 1
        return sign * coef, self.word()

    def poly(self):
        sign = 1
        if self.peek() in "+-" and self.peek():
            sign = -1 if self.peek() == "-" else 1
            self.i += 1
        terms = [self.term(sign)]
        while self.peek():
            ch = self.peek()
            if ch not in "+-":
                self.error(f"unexpected character {ch!r}")
            self.i += 1
            terms.append(self.term(-1 if ch == "-" else 1))
        return NcPoly(terms)


def parse_poly(text: str, pres: QuiverPresentation, line: int = 1, col0: int = 1) -> NcPoly:
    poly = _PolyParser(text, line, pres, col0).poly()
    for _, w in poly.terms:
        try:
            pres.endpoints(w)
        except ValueError as exc:
            raise ParseError(str(exc), line, col0) from None
    return poly


def parse_presentation(text: str) -> QuiverPresentation:
    lines = text.splitlines()
    pres = None
    state = "header"
    for lineno, raw in enumerate(lines, start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        col = raw.index(stripped[0]) + 1
        if pres is None:
            m = re.fullmatch(r"field\s+(\S+)", stripped)
            if not m:
                raise ParseError("first line must be 'field Q' or 'field F<p>'", lineno, col)
            try:
                pres = QuiverPresentation(field_from_name(m.group(1)), [], [])
            except ValueError as exc:
                raise ParseError(str(exc), lineno, col + len("field ")) from None
            continue
        if state == "done":
            raise ParseError("content after 'end'", lineno, col)
        if state == "relations":
            if stripped == "end":
                state = "done"
                continue
            poly = parse_poly(stripped, pres, lineno, col)
            _check_relation(pres, poly, lineno, col)
            pres.relations.append(poly)
            continue
        parts = stripped.split()
        if parts[0] == "vertex":
            if len(parts) != 2 or not _VERTEX.fullmatch(parts[1]):
                raise ParseError("expected 'vertex <name>'", lineno, col)
            if parts[1] in pres.vertices:
                raise ParseError(f"duplicate vertex {parts[1]!r}", lineno, col)
            pres.vertices.append(parts[1])
        elif parts[0] == "arrow":
            if len(parts) != 4 or not _NAME.fullmatch(parts[1]):
                raise ParseError("expected 'arrow <name> <source> <target>'", lineno, col)
            for v in parts[2:]:
                if v not in pres.vertices:
                    raise ParseError(f"unknown vertex {v!r}", lineno, raw.index(v, col) + 1)
            if parts[1] in {a.name for a in pres.arrows}:
                raise ParseError(f"duplicate arrow {parts[1]!r}", lineno, col)
            pres.arrows.append(Arrow(parts[1], parts[2], parts[3]))
        elif parts[0] == "relations" and len(parts) == 1:
            state = "relations"
        elif parts[0] == "end" and len(parts) == 1:
            state = "done"
        else:
            raise ParseError(f"unexpected {parts[0]!r}", lineno, col)
    if pres is None:
        raise ParseError("empty presentation", 1, 1)
    if state != "done":
        raise ParseError("missing 'end'", len(lines) or 1, 1)
    return pres


def _check_relation(pres, poly, line, col):
    ends = {pres.endpoints(w) for _, w in poly.terms}
    if len(ends) > 1:
        raise ParseError("inhomogeneous relation: terms have different endpoints", line, col)


# -- compilation ---------------------------------------------------------------


@dataclass
class PathBasis:
    words: list  # surviving paths as tuples; trivial paths are ("[v]",)
    presentation: QuiverPresentation
    _index: dict
    _reducer: object
    _all_paths: list
    _path_index: dict

    def coords(self, word: tuple) -> np.ndarray:
        """Coordinate vector of a path (any word) in the quotient algebra."""
        word = _canonical_word(word, self.presentation)
        if word is None:
            return self.presentation.field.zeros(len(self.words))
        if word not in self._path_index:
            return self.presentation.field.zeros(len(self.words))
        return self._reducer(self._path_index[word])

    def evaluate(self, poly: NcPoly) -> np.ndarray:
        f = self.presentation.field
        out = f.zeros(len(self.words))
        for c, w in poly.terms:
            out = f.normalize(out + f.scalar(c) * self.coords(w))
        return out


def _canonical_word(word, pres):
    """Drop trivial-path factors from a word; None if not composable."""
    try:
        src, _ = pres.endpoints(word)
    except ValueError:
        return None
    core = tuple(a for a in word if not a.startswith("["))
    return core if core else (f"[{src}]",)


def _paths_up_to(pres: QuiverPresentation, L: int) -> list:
    paths = [(f"[{v}]",) for v in pres.vertices]
    frontier = [(a.name,) for a in pres.arrows]
    length = 1
    while frontier and length <= L:
        paths.extend(frontier)
        if length == L:
            break
        nxt = []
        for w in frontier:
            t = pres.arrow(w[-1]).target
            nxt.extend(w + (a.name,) for a in pres.arrows if a.source == t)
        frontier = nxt
        length += 1
    return paths


def _path_len(w):
    return 0 if w[0].startswith("[") else len(w)


def build_path_algebra(pres: QuiverPresentation, length_bound: int = DEFAULT_LENGTH_BOUND):
    """Compile ``kQ / I`` to structure constants.

    For growing ``L`` the ideal is computed inside the truncation
    ``kQ / J^(L+1)`` as the closure of the relations under multiplication by
    arrows.  Once every path of length ``L`` lies in it, ``J^L`` is contained
    in ``I`` and the surviving short paths give the basis.
    """
    f = pres.field
    if length_bound < 1:
        raise ValueError("length_bound must be at least 1")
    arrow_pos = {a.name: i for i, a in enumerate(pres.arrows)}
    for rel in pres.relations:
        for c, w in rel.terms:
            core = _canonical_word(w, pres)
            if f.scalar(c) != 0 and _path_len(core) < 2:
                raise NotAdmissible(f"relation {rel} has a term of length < 2")
    for L in range(1, length_bound + 1):
        paths = _paths_up_to(pres, L)
        # columns ordered longest first so pivots land on long paths
        order = sorted(range(len(paths)),
                       key=lambda i: (-_path_len(paths[i]), [arrow_pos.get(a, -1) for a in paths[i]]))
        cols = [paths[i] for i in order]
        index = {w: i for i, w in enumerate(cols)}
        ideal = _ideal_rows(pres, cols, index, L)
        top = [w for w in cols if _path_len(w) == L]
        reducer = _Reducer(ideal, len(cols), f)
        if all(reducer.in_ideal(index[w]) for w in top) or not top:
            return _assemble(pres, cols, index, reducer, L)
    raise NotFiniteDimensional(f"paths of length {length_bound} survive; raise the bound or check admissibility")


class _Reducer:
    def __init__(self, rows: np.ndarray, ncols: int, f: Field):
        self.f = f
        self.ncols = ncols
        if rows.shape[0]:
            red, piv, rk = exact.rref(rows, f)
            self.rows = red[:rk]
            self.pivots = piv
        else:
            self.rows = f.zeros((0, ncols))
            self.pivots = []
        self.pivset = set(self.pivots)
        self.free = [j for j in range(ncols) if j not in self.pivset]
        self.free_pos = {j: i for i, j in enumerate(self.free)}

    def in_ideal(self, col: int) -> bool:
        return col in self.pivset and all(self.rows[r, j] == 0 for r, p in enumerate(self.pivots)
                                          if p == col for j in self.free)

    def reduce(self, vec: np.ndarray) -> np.ndarray:
        """Normal form of a vector: coordinates on the free (standard) columns."""
        f = self.f
        v = np.array(vec, copy=True)
        for r, p in enumerate(self.pivots):
            if v[p] != 0:
                v = f.normalize(v - v[p] * self.rows[r])
        return v[self.free]

    def unit(self, col: int) -> np.ndarray:
        v = self.f.zeros(self.ncols)
        v[col] = self.f.one
        return self.reduce(v)


def _ideal_rows(pres, cols, index, L):
    f = pres.field
    n = len(cols)
    gens = []
    for rel in pres.relations:
        v = f.zeros(n)
        for c, w in rel.terms:
            core = _canonical_word(w, pres)
            if core in index:  # longer terms vanish in the truncation
                v[index[core]] = f.normalize(v[index[core]] + f.scalar(c))
        if not is_zero(v):
            gens.append(v)
    if not gens:
        return f.zeros((0, n))
    # arrow multiplication as index maps (-1 = zero)
    maps = []
    for a in pres.arrows:
        for side in ("left", "right"):
            tgt = np.full(n, -1)
            for j, w in enumerate(cols):
                src, end = pres.endpoints(w)
                if side == "left" and a.target == src:
                    new = _canonical_word((a.name,) + w, pres)
                elif side == "right" and end == a.source:
                    new = _canonical_word(w + (a.name,), pres)
                else:
                    continue
                if new in index:
                    tgt[j] = index[new]
            maps.append(tgt)
    basis = exact.row_space(np.stack(gens), f)
    delta = basis
    while delta.shape[0]:
        cand = []
        for tgt in maps:
            valid = tgt >= 0
            img = f.zeros(delta.shape)
            img[:, tgt[valid]] = delta[:, valid]
            cand.append(img)
        cand = np.concatenate(cand)
        cand = cand[np.any(cand != 0, axis=1)]
        if not cand.shape[0]:
            break
        grown = exact.row_space(np.concatenate([basis, cand]), f)
        if grown.shape[0] == basis.shape[0]:
            break
        new_rows = _reduce_rows(cand, basis, f)
        basis = grown
        delta = new_rows
    return basis


def _reduce_rows(cand, basis, f):
    """Rows of ``cand`` reduced modulo the (rref) row space ``basis``; nonzero ones kept."""
    _, piv, _ = exact.rref(basis, f) if basis.shape[0] else (None, [], 0)
    red = np.array(cand, copy=True)
    for r, p in enumerate(piv):
        coef = red[:, p].copy()
        hit = np.nonzero(coef)[0]
        if hit.size:
            red[hit] = f.normalize(red[hit] - np.outer(coef[hit], basis[r]))
    red = red[np.any(red != 0, axis=1)]
    return exact.row_space(red, f) if red.shape[0] else red


def _assemble(pres, cols, index, reducer, L):
    f = pres.field
    words = [cols[j] for j in reducer.free]
    m = len(words)
    struct = f.zeros((m, m, m))
    for i, u in enumerate(words):
        _, tu = pres.endpoints(u)
        for j, w in enumerate(words):
            sw, _ = pres.endpoints(w)
            if tu != sw:
                continue
            prod = _canonical_word(u + w, pres)
            if prod in index:
                struct[i, j] = reducer.unit(index[prod])
    unit = f.zeros(m)
    videm = []
    for v in pres.vertices:
        e = f.zeros(m)
        e[words.index((f"[{v}]",))] = f.one
        videm.append(e)
        unit = f.normalize(unit + e)
    gens = list(videm) + [reducer.unit(index[(a.name,)]) for a in pres.arrows]
    labels = [("e_" + w[0][1:-1]) if w[0].startswith("[") else "*".join(w) for w in words]
    A = Algebra(f, struct, unit, labels=labels, generators=gens, vertex_idempotents=videm)
    A.vertex_names = list(pres.vertices)
    A.arrow_elements = {a.name: reducer.unit(index[(a.name,)]) for a in pres.arrows}
    basis = PathBasis(words, pres, {w: i for i, w in enumerate(words)}, reducer.unit, cols, index)
    basis._reducer = lambda col: reducer.unit(col)
    return A, basis


def compile_presentation(pres: QuiverPresentation, length_bound: int = DEFAULT_LENGTH_BOUND) -> Algebra:
    return build_path_algebra(pres, length_bound)[0]


def load_presentation(path) -> QuiverPresentation:
    with open(path, encoding="utf-8") as fh:
        return parse_presentation(fh.read())


# -- evaluation in arbitrary algebras ------------------------------------------


def evaluate_poly(A: Algebra, poly: NcPoly, images: dict) -> np.ndarray:
    """Evaluate a relation with arrow and ``[v]`` images given as elements of A."""
    f = A.field
    total = A.zero()
    for c, w in poly.terms:
        x = A.unit
        for factor in w:
            x = A.mul(x, images[factor])
        total = f.normalize(total + f.scalar(c) * x)
    return total


@dataclass
class PresentationMatch:
    ok: bool
    assignment: dict | None = None
    reason: str = ""
    tried: int = 0

    def __bool__(self):
        return self.ok


def _vertex_key(v):
    return f"[{v}]"


def check_assignment(A: Algebra, pres: QuiverPresentation, assignment: dict,
                     rad=None, rad2=None, n_primitive=None, compiled_dim=None) -> PresentationMatch:
    """Check an explicit assignment of vertices (``[v]`` keys or bare vertex
    names) and arrows to elements of A."""
    f = A.field
    images = {}
    for v in pres.vertices:
        key = v if v in assignment else _vertex_key(v)
        if key not in assignment:
            return PresentationMatch(False, assignment, f"vertex {v} unassigned")
        images[_vertex_key(v)] = np.asarray(assignment[key], dtype=f.dtype)
    for a in pres.arrows:
        if a.name not in assignment:
            return PresentationMatch(False, assignment, f"arrow {a.name} unassigned")
        images[a.name] = np.asarray(assignment[a.name], dtype=f.dtype)
    idems = [images[_vertex_key(v)] for v in pres.vertices]
    total = f.normalize(sum(idems[1:], idems[0]))
    if not np.array_equal(total, A.unit):
        return PresentationMatch(False, assignment, "vertex idempotents do not sum to 1")
    for i, e in enumerate(idems):
        if is_zero(e) or not A.is_idempotent(e):
            return PresentationMatch(False, assignment, f"vertex {pres.vertices[i]} is not a nonzero idempotent")
        for j, g in enumerate(idems):
            if i != j and not is_zero(A.mul(e, g)):
                return PresentationMatch(False, assignment, "vertex idempotents are not orthogonal")
    if n_primitive is None:
        n_primitive = len(primitive_idempotents(A))
    if len(idems) != n_primitive:
        return PresentationMatch(False, assignment, "vertex idempotents are not primitive")
    if rad is None:
        rad, rad2 = _rad_and_square(A)
    rad_c = Coordinates(rad, f)
    rad2_c = Coordinates(rad2, f)
    for a in pres.arrows:
        x = images[a.name]
        es, et = images[_vertex_key(a.source)], images[_vertex_key(a.target)]
        if not np.array_equal(A.mul(A.mul(es, x), et), x):
            return PresentationMatch(False, assignment, f"arrow {a.name} not in e_{a.source} A e_{a.target}")
        if not rad_c.contains(x) or rad2_c.contains(x):
            return PresentationMatch(False, assignment, f"arrow {a.name} not in rad \\ rad^2")
    for rel in pres.relations:
        if not is_zero(evaluate_poly(A, rel, images)):
            return PresentationMatch(False, assignment, f"relation {rel} does not vanish")
    gen = A.subalgebra([images[a.name] for a in pres.arrows] + idems)
    if gen.shape[1] != A.dim:
        return PresentationMatch(False, assignment, "assigned elements do not generate")
    if compiled_dim is None:
        compiled_dim = compile_presentation(pres).dim
    if compiled_dim != A.dim:
        return PresentationMatch(False, assignment,
                                 f"presentation defines dim {compiled_dim}, algebra has dim {A.dim}")
    return PresentationMatch(True, assignment, "verified")


def _rad_and_square(A: Algebra):
    dec = decompose(A)
    rad = dec.radical
    rad2 = A.ideal_product(rad, rad) if rad.shape[1] else rad
    return rad, rad2


def verify_presentation(A: Algebra, pres: QuiverPresentation, assignment: dict | None = None,
                        budget: int = 10**6, extended: bool = True) -> PresentationMatch:
    """Decide whether ``pres`` presents ``A``.

    With an assignment the checks are direct.  Without one, vertices are
    matched to primitive idempotents through Peirce dimensions and arrows are
    searched among combinations of a basis of ``e_s (rad/rad^2) e_t``:
    exhaustively over F_p, over the grid {-2,-1,1,2} over Q.  If that finds
    nothing and ``extended`` is set, corrections from ``e_s rad^2 e_t`` are
    also searched.  The first witness in lexicographic order is returned.
    """
    if A.field != pres.field:
        return PresentationMatch(False, None, "different ground fields")
    compiled = compile_presentation(pres)
    if compiled.dim != A.dim:
        return PresentationMatch(False, None, f"dimension mismatch: {compiled.dim} vs {A.dim}")
    dec = decompose(A)
    idems = dec.idempotents
    rad = dec.radical
    rad2 = A.ideal_product(rad, rad) if rad.shape[1] else rad
    common = dict(rad=rad, rad2=rad2, n_primitive=len(idems), compiled_dim=compiled.dim)
    if assignment is not None:
        return check_assignment(A, pres, assignment, **common)
    nv = len(pres.vertices)
    if nv != len(idems):
        return PresentationMatch(False, None, f"{nv} vertices vs {len(idems)} primitive idempotents")
    cv = compiled.vertex_idempotents
    pdims = [[peirce_basis(compiled, cv[i], cv[j]).shape[1] for j in range(nv)] for i in range(nv)]
    adims = [[peirce_basis(A, idems[i], idems[j]).shape[1] for j in range(nv)] for i in range(nv)]
    counter = [0]
    phases = [False, True] if extended else [False]
    for with_rad2 in phases:
        for perm in itertools.permutations(range(nv)):
            if any(pdims[i][j] != adims[perm[i]][perm[j]] for i in range(nv) for j in range(nv)):
                continue
            vimg = {_vertex_key(v): idems[perm[i]] for i, v in enumerate(pres.vertices)}
            found = _search_arrows(A, pres, vimg, rad, rad2, with_rad2, budget, counter, common)
            if found is not None:
                found.tried = counter[0]
                return found
    return PresentationMatch(False, None,
                             "search exhausted" + ("" if A.field.is_finite else " on the integer grid"),
                             counter[0])


def _slice_candidates(A, es, et, rad, rad2, with_rad2):
    """Candidate arrow images in e_s rad e_t, in a fixed order."""
    f = A.field
    proj = f.matmul(A.left_matrix(es), A.right_matrix(et))
    block = exact.column_basis(f.matmul(proj, rad), f) if rad.shape[1] else f.zeros((A.dim, 0))
    block2 = exact.column_basis(f.matmul(proj, rad2), f) if rad2.shape[1] else f.zeros((A.dim, 0))
    k2 = block2.shape[1]
    both = np.concatenate([block2, block], axis=1)
    _, piv, _ = exact.rref(both, f)
    top = both[:, [p for p in piv if p >= k2]]
    s = top.shape[1]
    if s == 0:
        return []
    grid = list(range(f.p)) if f.is_finite else [0] + list(Q_GRID)
    nonzero = [c for c in grid if c != 0]
    out = []
    for coeffs in itertools.product(grid, repeat=s):
        if all(c == 0 for c in coeffs):
            continue
        base = f.normalize(sum(f.scalar(c) * top[:, i] for i, c in enumerate(coeffs)))
        if with_rad2 and k2:
            for corr in itertools.product(grid, repeat=k2):
                out.append(f.normalize(base + sum(f.scalar(c) * block2[:, i] for i, c in enumerate(corr))))
        else:
            out.append(base)
    del nonzero
    return out


def _search_arrows(A, pres, vimg, rad, rad2, with_rad2, budget, counter, common):
    arrows = list(pres.arrows)
    cands = [_slice_candidates(A, vimg[_vertex_key(a.source)], vimg[_vertex_key(a.target)],
                               rad, rad2, with_rad2) for a in arrows]
    if any(not c for c in cands):
        return None
    # relations become checkable once all their arrows are assigned
    names = [a.name for a in arrows]
    ready = {k: [] for k in range(len(arrows))}
    for rel in pres.relations:
        used = rel.arrows_used()
        last = max(names.index(a) for a in used) if used else 0
        ready[last].append(rel)
    images = dict(vimg)

    def rec(k):
        if k == len(arrows):
            assignment = {**{v: vimg[_vertex_key(v)] for v in pres.vertices},
                          **{a.name: images[a.name] for a in arrows}}
            res = check_assignment(A, pres, assignment, **common)
            return res if res.ok else None
        for x in cands[k]:
            counter[0] += 1
            if counter[0] > budget:
                raise SearchBudgetExceeded(f"presentation search exceeded {budget} candidates")
            images[arrows[k].name] = x
            if all(is_zero(evaluate_poly(A, rel, images)) for rel in ready[k]):
                hit = rec(k + 1)
                if hit is not None:
                    return hit
        images.pop(arrows[k].name, None)
        return None

    return rec(0)


@dataclass
class Skeleton:
    vertices: int
    arrows: dict  # (i, j) -> count of arrows i -> j

    @property
    def arrow_count(self) -> int:
        return sum(self.arrows.values())


def gabriel_skeleton(A: Algebra) -> Skeleton:
    """Ordinary quiver: one vertex per primitive idempotent, and
    ``dim e_i (rad/rad^2) e_j`` arrows from i to j (left-to-right paths)."""
    dec = decompose(A)
    if dec.simples != len(dec.idempotents):
        raise NotBasic("algebra is not basic: some primitive idempotents are isomorphic")
    rad = dec.radical
    rad2 = A.ideal_product(rad, rad) if rad.shape[1] else rad
    f = A.field
    arrows = {}
    idems = dec.idempotents
    for i, ei in enumerate(idems):
        for j, ej in enumerate(idems):
            proj = f.matmul(A.left_matrix(ei), A.right_matrix(ej))
            d1 = exact.rank(f.matmul(proj, rad), f) if rad.shape[1] else 0
            d2 = exact.rank(f.matmul(proj, rad2), f) if rad2.shape[1] else 0
            if d1 - d2:
                arrows[(i, j)] = d1 - d2
    return Skeleton(len(idems), arrows)


def verify_compiled(A: Algebra, pres: QuiverPresentation) -> bool:
    """Round trip: the canonical assignment of a compiled presentation verifies."""
    assignment = {v: A.vertex_idempotents[i] for i, v in enumerate(pres.vertices)}
    assignment.update(A.arrow_elements)
    return check_algebra(A).ok and verify_presentation(A, pres, assignment).ok


def with_field(pres: QuiverPresentation, f: Field) -> QuiverPresentation:
    """The same presentation read over another ground field."""
    return QuiverPresentation(f, list(pres.vertices), list(pres.arrows), list(pres.relations))
