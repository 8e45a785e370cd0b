"""Bounded complexes of modules and the homotopy category of projectives.

Differentials go up in degree, ``d^i : X^i -> X^{i+1}``, and act on column
vectors.  Shifts follow ``X[n]^i = X^{i+n}`` with ``d_{X[n]} = (-1)^n d_X``.
The cone of ``f : X -> Y`` has ``C^i = X^{i+1} + Y^i`` and differential
``(x, y) -> (-d x, f x + d y)``.

Complexes of projectives are *tagged*: each term is a direct sum of
indecomposable projectives ``A e_t`` where ``t`` indexes a fixed list of
primitive idempotents (the frame of the algebra).
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import exact
from .algebra import (DEFAULT_SEED, Algebra, decompose, invariants,
                      primitive_idempotents)
from .exact import Coordinates, is_zero
from .modrep import (Module, direct_sum, hom_basis, is_projective, left_ideal_module,
                     module_isomorphic, projective_cover, quotient_module, submodule)


class NonProjectiveTerm(ValueError):
    pass


class PositiveCohomology(ValueError):
    pass


class ComplexError(ValueError):
    pass


class MalformedWitness(ValueError):
    pass


class StrictificationFailed(RuntimeError):
    pass


class BudgetExceeded(RuntimeError):
    pass


# -- frames and tagged terms -----------------------------------------------------


@dataclass
class Frame:
    idempotents: list
    classes: list
    representatives: list


def frame(A: Algebra) -> Frame:
    """Primitive idempotents used to tag projective terms.  The opposite
    algebra shares the frame, so dualising keeps tags."""
    fr = A.__dict__.get("_frame")
    if fr is None:
        op = A._opposite
        if op is not None and "_frame" in op.__dict__:
            fr = op._frame
        else:
            dec = decompose(A)
            fr = Frame(list(dec.idempotents), list(dec.classes), list(dec.representatives))
        A._frame = fr
    return fr


@dataclass
class Term:
    module: Module
    bases: list  # basis (columns in A) of each summand A e_t
    offsets: list
    unit_coords: list  # coordinates of e_t in its summand


def term(A: Algebra, tags) -> Term:
    tags = tuple(tags)
    cache = A.__dict__.setdefault("_term_cache", {})
    if tags in cache:
        return cache[tags]
    f = A.field
    fr = frame(A)
    mods, bases, offsets, units = [], [], [], []
    off = 0
    for t in tags:
        e = fr.idempotents[t]
        m, basis = left_ideal_module(A, e)
        mods.append(m)
        bases.append(basis)
        offsets.append(off)
        units.append(Coordinates(basis, f).coords(e))
        off += m.dim
    if mods:
        mod = direct_sum(mods, name="+".join(f"P{t}" for t in tags))
    else:
        mod = Module(A, [f.zeros((0, 0))] * A.dim, name="0")
    out = Term(mod, bases, offsets, units)
    cache[tags] = out
    return out


def element_block_matrix(A: Algebra, src_tags, tgt_tags, U) -> np.ndarray:
    """Module matrix of ``x -> x U`` from ``+ A e_s`` to ``+ A e_t``.

    ``U[k][l]`` is an element of ``e_{s_k} A e_{t_l}``."""
    f = A.field
    S, T = term(A, src_tags), term(A, tgt_tags)
    out = f.zeros((T.module.dim, S.module.dim))
    fr = frame(A)
    for k, s in enumerate(src_tags):
        for l, t in enumerate(tgt_tags):
            u = np.asarray(U[k][l], dtype=f.dtype)
            if is_zero(u):
                continue
            es, et = fr.idempotents[s], fr.idempotents[t]
            if not np.array_equal(A.mul(A.mul(es, u), et), u):
                raise ComplexError(f"entry ({k},{l}) does not lie in e_{s} A e_{t}")
            img = f.matmul(A.right_matrix(u), S.bases[k])
            blk = Coordinates(T.bases[l], f).coords(img)
            r0, c0 = T.offsets[l], S.offsets[k]
            out[r0:r0 + blk.shape[0], c0:c0 + blk.shape[1]] = blk
    return out


def element_matrix(A: Algebra, src_tags, tgt_tags, M: np.ndarray) -> list:
    """Inverse of ``element_block_matrix``: entries ``u_{kl}`` as A-elements."""
    f = A.field
    S, T = term(A, src_tags), term(A, tgt_tags)
    out = []
    for k in range(len(src_tags)):
        row = []
        for l in range(len(tgt_tags)):
            r0, c0 = T.offsets[l], S.offsets[k]
            blk = M[r0:r0 + T.bases[l].shape[1], c0:c0 + S.bases[k].shape[1]]
            row.append(f.matmul(T.bases[l], f.matmul(blk, S.unit_coords[k])))
        out.append(row)
    return out


# -- complexes -----------------------------------------------------------------------


class Complex:
    """Bounded complex ``X^lo -> ... -> X^hi`` of modules over one algebra."""

    def __init__(self, algebra: Algebra, lo: int, terms, diffs, tags=None):
        self.algebra = algebra
        self.field = algebra.field
        self.lo = lo
        self.terms = list(terms)
        self.diffs = [np.asarray(d, dtype=self.field.dtype) for d in diffs]
        self.tags = [tuple(t) for t in tags] if tags is not None else None
        if len(self.diffs) != max(len(self.terms) - 1, 0):
            raise ComplexError("need one differential between consecutive terms")
        self._trim()

    def _trim(self):
        while self.terms and self.terms[0].dim == 0:
            self.terms.pop(0)
            if self.diffs:
                self.diffs.pop(0)
            if self.tags is not None:
                self.tags.pop(0)
            self.lo += 1
        while self.terms and self.terms[-1].dim == 0:
            self.terms.pop()
            if self.diffs:
                self.diffs.pop()
            if self.tags is not None:
                self.tags.pop()
        if not self.terms:
            self.lo = 0

    @property
    def hi(self) -> int:
        return self.lo + len(self.terms) - 1

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def tagged(self) -> bool:
        return self.tags is not None

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def term(self, i: int) -> Module:
        if self.lo <= i <= self.hi:
            return self.terms[i - self.lo]
        return _zero_module(self.algebra)

    def tag(self, i: int) -> tuple:
        if self.tags is None:
            raise NonProjectiveTerm("complex terms are not tagged projectives")
        if self.lo <= i <= self.hi:
            return self.tags[i - self.lo]
        return ()

    def diff(self, i: int) -> np.ndarray:
        if self.lo <= i < self.hi:
            return self.diffs[i - self.lo]
        return self.field.zeros((self.term(i + 1).dim, self.term(i).dim))

    def describe(self) -> str:
        if self.is_zero:
            return "0"
        if self.tags is None:
            return " -> ".join(f"[{i}]dim{self.term(i).dim}" for i in self.degrees())
        return " -> ".join(f"[{i}]" + ("+".join(f"P{t}" for t in self.tag(i)) or "0")
                           for i in self.degrees())

    def __repr__(self):
        return f"<Complex {self.describe()}>"


def _zero_module(A: Algebra) -> Module:
    z = A.__dict__.get("_zero_module")
    if z is None:
        z = Module(A, [A.field.zeros((0, 0))] * A.dim, name="0")
        A._zero_module = z
    return z


def tagged_complex(A: Algebra, lo: int, tags, diffs) -> Complex:
    return Complex(A, lo, [term(A, t).module for t in tags], diffs, tags)


def from_element_matrices(A: Algebra, lo: int, tags, mats) -> Complex:
    diffs = [element_block_matrix(A, tags[k], tags[k + 1], mats[k]) for k in range(len(tags) - 1)]
    return tagged_complex(A, lo, tags, diffs)


def stalk(A: Algebra, tags, degree: int = 0) -> Complex:
    return tagged_complex(A, degree, [tuple(tags)], [])


def stalk_module(M: Module, degree: int = 0) -> Complex:
    return Complex(M.algebra, degree, [M], [])


def regular_stalk(A: Algebra) -> Complex:
    return stalk(A, range(len(frame(A).idempotents)))


@dataclass
class ComplexCheck:
    ok: bool
    message: str = "ok"

    def __bool__(self):
        return self.ok


def check_complex(X: Complex) -> ComplexCheck:
    f = X.field
    for i in X.degrees():
        d = X.diff(i)
        if d.shape != (X.term(i + 1).dim, X.term(i).dim):
            return ComplexCheck(False, f"differential {i} has the wrong shape")
        for a, b in zip(X.term(i).gen_actions, X.term(i + 1).gen_actions):
            if not np.array_equal(f.matmul(d, a), f.matmul(b, d)):
                return ComplexCheck(False, f"differential {i} is not a module map")
        if not is_zero(f.matmul(X.diff(i + 1), d)):
            return ComplexCheck(False, f"d^{i + 1} d^{i} != 0")
    return ComplexCheck(True)


def shift(X: Complex, n: int) -> Complex:
    f = X.field
    sign = -1 if n % 2 else 1
    diffs = [f.normalize(sign * d) for d in X.diffs]
    return Complex(X.algebra, X.lo - n, X.terms, diffs, X.tags)


@dataclass
class ChainMap:
    """Degree-zero chain map; ``maps[i] : X^i -> Y^i``."""

    source: Complex
    target: Complex
    maps: dict

    def at(self, i: int) -> np.ndarray:
        if i in self.maps:
            return self.maps[i]
        return self.source.field.zeros((self.target.term(i).dim, self.source.term(i).dim))

    def is_chain_map(self) -> bool:
        f = self.source.field
        X, Y = self.source, self.target
        lo, hi = min(X.lo, Y.lo) - 1, max(X.hi, Y.hi) + 1
        return all(np.array_equal(f.matmul(self.at(i + 1), X.diff(i)), f.matmul(Y.diff(i), self.at(i)))
                   for i in range(lo, hi + 1))

    def then(self, g: "ChainMap") -> "ChainMap":
        f = self.source.field
        degs = set(self.maps) & set(g.maps)
        return ChainMap(self.source, g.target, {i: f.matmul(g.maps[i], self.maps[i]) for i in degs})


def identity_map(X: Complex) -> ChainMap:
    return ChainMap(X, X, {i: X.field.eye(X.term(i).dim) for i in X.degrees()})


def _window(X: Complex, Y: Complex):
    if X.is_zero or Y.is_zero:
        return range(0)
    return range(min(X.lo, Y.lo), max(X.hi, Y.hi) + 1)


def cone(fmap: ChainMap) -> Complex:
    X, Y = fmap.source, fmap.target
    A, f = X.algebra, X.field
    if X.is_zero:
        return Y
    lo = min(X.lo - 1, Y.lo) if not Y.is_zero else X.lo - 1
    hi = max(X.hi - 1, Y.hi) if not Y.is_zero else X.hi - 1
    tagged = X.tagged and Y.tagged
    terms, tags, diffs = [], [], []
    for i in range(lo, hi + 1):
        if tagged:
            t = X.tag(i + 1) + Y.tag(i)
            tags.append(t)
            terms.append(term(A, t).module)
        else:
            parts = [m for m in (X.term(i + 1), Y.term(i)) if m.dim]
            terms.append(direct_sum(parts) if parts else _zero_module(A))
    for i in range(lo, hi):
        xa, ya = X.term(i + 1).dim, Y.term(i).dim
        xb, yb = X.term(i + 2).dim, Y.term(i + 1).dim
        d = f.zeros((xb + yb, xa + ya))
        d[:xb, :xa] = f.normalize(-X.diff(i + 1))
        d[xb:, :xa] = fmap.at(i + 1)
        d[xb:, xa:] = Y.diff(i)
        diffs.append(d)
    return Complex(A, lo, terms, diffs, tags if tagged else None)


def direct_sum_complex(X: Complex, Y: Complex) -> Complex:
    A, f = X.algebra, X.field
    if X.is_zero:
        return Y
    if Y.is_zero:
        return X
    lo, hi = min(X.lo, Y.lo), max(X.hi, Y.hi)
    tagged = X.tagged and Y.tagged
    terms, tags, diffs = [], [], []
    for i in range(lo, hi + 1):
        if tagged:
            t = X.tag(i) + Y.tag(i)
            tags.append(t)
            terms.append(term(A, t).module)
        else:
            parts = [m for m in (X.term(i), Y.term(i)) if m.dim]
            terms.append(direct_sum(parts) if parts else _zero_module(A))
    for i in range(lo, hi):
        xa, ya, xb, yb = X.term(i).dim, Y.term(i).dim, X.term(i + 1).dim, Y.term(i + 1).dim
        d = f.zeros((xb + yb, xa + ya))
        d[:xb, :xa] = X.diff(i)
        d[xb:, xa:] = Y.diff(i)
        diffs.append(d)
    return Complex(A, lo, terms, diffs, tags if tagged else None)


def sum_injections(X: Complex, Y: Complex):
    """Chain maps ``X -> X+Y``, ``Y -> X+Y`` and the projections back."""
    S = direct_sum_complex(X, Y)
    f = X.field
    inj_x, inj_y, pr_x, pr_y = {}, {}, {}, {}
    for i in S.degrees():
        a, b = X.term(i).dim, Y.term(i).dim
        eye = f.eye(a + b)
        inj_x[i], inj_y[i] = eye[:, :a], eye[:, a:]
        pr_x[i], pr_y[i] = eye[:a, :], eye[a:, :]
    return S, ChainMap(X, S, inj_x), ChainMap(Y, S, inj_y), ChainMap(S, X, pr_x), ChainMap(S, Y, pr_y)


# -- truncations and cohomology -----------------------------------------------------------


def _kernel_sub(X: Complex, n: int):
    ker = exact.kernel_matrix(X.diff(n), X.field) if X.term(n).dim else X.field.zeros((0, 0))
    return ker


def truncate_le(X: Complex, n: int) -> Complex:
    """``... -> X^{n-1} -> Ker d^n -> 0``."""
    f = X.field
    if X.is_zero or n < X.lo:
        return Complex(X.algebra, 0, [], [])
    if n >= X.hi:
        return X
    ker = _kernel_sub(X, n)
    K = submodule(X.term(n), ker)
    terms = [X.term(i) for i in range(X.lo, n)] + [K]
    diffs = [X.diff(i) for i in range(X.lo, n - 1)]
    if n - 1 >= X.lo:
        diffs.append(Coordinates(ker, f).coords(X.diff(n - 1)) if ker.shape[1] else f.zeros((0, X.term(n - 1).dim)))
    return Complex(X.algebra, X.lo, terms, diffs)


def truncate_ge(X: Complex, n: int) -> Complex:
    """``0 -> Coker d^{n-1} -> X^{n+1} -> ...``."""
    f = X.field
    if X.is_zero or n > X.hi:
        return Complex(X.algebra, 0, [], [])
    if n <= X.lo:
        return X
    img = exact.column_basis(X.diff(n - 1), f)
    Q, proj = quotient_module(X.term(n), img)
    section = f.eye(X.term(n).dim)[:, exact.quotient_map(np.ascontiguousarray(img.T), X.term(n).dim, f)[0]]
    terms = [Q] + [X.term(i) for i in range(n + 1, X.hi + 1)]
    diffs = []
    if n < X.hi:
        diffs.append(f.matmul(X.diff(n), section))
    diffs += [X.diff(i) for i in range(n + 1, X.hi)]
    return Complex(X.algebra, n, terms, diffs)


def cohomology(X: Complex, n: int) -> Module:
    f = X.field
    if X.term(n).dim == 0:
        return _zero_module(X.algebra)
    ker = _kernel_sub(X, n)
    K = submodule(X.term(n), ker)
    if ker.shape[1] == 0:
        return K
    img = X.diff(n - 1)
    img_c = Coordinates(ker, f).coords(img) if img.shape[1] else f.zeros((ker.shape[1], 0))
    sub = exact.column_basis(img_c, f) if img_c.shape[1] else f.zeros((ker.shape[1], 0))
    return quotient_module(K, sub)[0]


def cohomology_dims(X: Complex) -> dict:
    return {i: cohomology(X, i).dim for i in X.degrees()}


@dataclass
class XiMap:
    """``X <- tau_{<=0} X -> H^0(X)``; the left arrow is a quasi-isomorphism."""

    truncation: Complex
    inclusion: ChainMap  # tau_{<=0} X -> X
    projection: np.ndarray  # (tau_{<=0} X)^0 -> H^0(X)
    h0_matrix: np.ndarray  # induced automorphism of H^0(X)
    cohomology: Module


def xi_map(X: Complex) -> XiMap:
    f = X.field
    for i in X.degrees():
        if i > 0 and cohomology(X, i).dim:
            raise PositiveCohomology(f"H^{i} is nonzero")
    T = truncate_le(X, 0)
    # inclusion of the truncation, degreewise
    maps = {}
    for i in T.degrees():
        if i < 0:
            maps[i] = f.eye(X.term(i).dim)
        elif i == 0:
            maps[i] = _kernel_sub(X, 0) if X.hi > 0 else f.eye(X.term(0).dim)
    inc = ChainMap(T, X, maps)
    H = cohomology(X, 0)
    # H^0(T) equals T^0 / Im, which is H^0(X) with the same quotient basis
    img_t = T.diff(-1)
    sub = exact.column_basis(img_t, f) if img_t.shape[1] and T.term(0).dim else f.zeros((T.term(0).dim, 0))
    free_t, proj_t = exact.quotient_map(np.ascontiguousarray(sub.T), T.term(0).dim, f)
    # induced map on H^0: T^0/Im -> Ker d^0/Im -> H^0(X)
    ker = _kernel_sub(X, 0) if X.term(0).dim else f.zeros((0, 0))
    img_x = X.diff(-1)
    if X.term(0).dim and ker.shape[1]:
        img_c = Coordinates(ker, f).coords(img_x) if img_x.shape[1] else f.zeros((ker.shape[1], 0))
        subx = exact.column_basis(img_c, f) if img_c.shape[1] else f.zeros((ker.shape[1], 0))
        _, proj_x = exact.quotient_map(np.ascontiguousarray(subx.T), ker.shape[1], f)
        section_t = f.eye(T.term(0).dim)[:, free_t]
        inc0 = inc.at(0)
        in_ker = Coordinates(ker, f).coords(f.matmul(inc0, section_t))
        h0 = f.matmul(proj_x, in_ker)
    else:
        h0 = f.zeros((0, 0))
    if h0.shape[0] != h0.shape[1] or (h0.shape[0] and exact.rank(h0, f) != h0.shape[0]):
        raise AssertionError("H^0(xi) is not an automorphism")
    return XiMap(T, inc, proj_t, h0, H)


# -- Hom in the homotopy category --------------------------------------------------------


def require_projective(X: Complex):
    if X.tagged:
        return
    for i in X.degrees():
        if not is_projective(X.term(i)):
            raise NonProjectiveTerm(f"term in degree {i} is not projective")


class HomK:
    """Chain maps ``P -> Q[n]`` modulo null-homotopic ones."""

    def __init__(self, P: Complex, Q: Complex, n: int):
        require_projective(P)
        require_projective(Q)
        f = P.field
        self.P, self.n = P, n
        self.Qn = Qn = shift(Q, n)
        self.field = f
        degs = [i for i in P.degrees() if Qn.term(i).dim and P.term(i).dim]
        self.degrees = degs
        self.blocks, self.offsets, self.coords = {}, {}, {}
        off = 0
        for i in degs:
            mats = [h.matrix for h in hom_basis(P.term(i), Qn.term(i))]
            self.blocks[i] = mats
            self.offsets[i] = off
            if mats:
                self.coords[i] = Coordinates(np.stack([m.reshape(-1) for m in mats], axis=1), f)
            off += len(mats)
        self.vdim = off
        self._solve()

    def _solve(self):
        f, P, Qn = self.field, self.P, self.Qn
        V = self.vdim
        if V == 0:
            self.Z = f.zeros((0, 0))
            self.B = f.zeros((0, 0))
            self.dim = 0
            self.free, self.proj = [], f.zeros((0, 0))
            return
        rows = []
        for i in range(P.lo - 1, P.hi + 1):
            tgt, src = Qn.term(i + 1).dim, P.term(i).dim
            if not tgt or not src:
                continue
            cols = []
            for j in range(V):
                cols.append(self._chain_defect(j, i).reshape(-1))
            rows.append(np.stack(cols, axis=1))
        if rows:
            self.Z = exact.kernel_matrix(np.concatenate(rows, axis=0), f)
        else:
            self.Z = f.eye(V)
        # null-homotopic maps: F^i = d_Qn^{i-1} H^i + H^{i+1} d_P^i
        bcols = []
        for j in P.degrees():
            if not Qn.term(j - 1).dim or not P.term(j).dim:
                continue
            for h in hom_basis(P.term(j), Qn.term(j - 1)):
                vec = f.zeros(V)
                if j in self.coords:
                    vec = vec + self._embed(j, f.matmul(Qn.diff(j - 1), h.matrix))
                if j - 1 in self.coords:
                    vec = vec + self._embed(j - 1, f.matmul(h.matrix, P.diff(j - 1)))
                bcols.append(f.normalize(vec))
        self.B = exact.column_basis(np.stack(bcols, axis=1), f) if bcols else f.zeros((V, 0))
        zc = Coordinates(self.Z, f) if self.Z.shape[1] else None
        if self.Z.shape[1] == 0:
            self.dim, self.free, self.proj = 0, [], f.zeros((0, 0))
            self._zc = None
            return
        bz = zc.coords(self.B) if self.B.shape[1] else f.zeros((self.Z.shape[1], 0))
        self.free, self.proj = exact.quotient_map(np.ascontiguousarray(bz.T), self.Z.shape[1], f)
        self.dim = len(self.free)
        self._zc = zc

    def _embed(self, i, mat):
        f = self.field
        vec = f.zeros(self.vdim)
        c = self.coords[i].coords(mat.reshape(-1))
        vec[self.offsets[i]:self.offsets[i] + len(c)] = c
        return vec

    def _component(self, vec, i):
        f = self.field
        P, Qn = self.P, self.Qn
        out = f.zeros((Qn.term(i).dim, P.term(i).dim))
        if i not in self.blocks:
            return out
        off = self.offsets[i]
        for k, m in enumerate(self.blocks[i]):
            c = vec[off + k]
            if c != 0:
                out = out + c * m
        return f.normalize(out)

    def _chain_defect(self, j, i):
        """Contribution of unknown j to ``F^{i+1} d_P^i - d_Qn^i F^i``."""
        f = self.field
        unit = f.zeros(self.vdim)
        unit[j] = f.one
        lhs = f.matmul(self._component(unit, i + 1), self.P.diff(i))
        rhs = f.matmul(self.Qn.diff(i), self._component(unit, i))
        return f.normalize(lhs - rhs)

    def chain_map(self, vec) -> ChainMap:
        return ChainMap(self.P, self.Qn, {i: self._component(vec, i) for i in self.degrees})

    def representative(self, k: int) -> ChainMap:
        """Chain map representing the k-th basis class."""
        return self.chain_map(self.Z[:, self.free[k]])

    def representatives(self) -> list:
        return [self.representative(k) for k in range(self.dim)]

    def class_of(self, fmap: ChainMap) -> np.ndarray:
        f = self.field
        if self.dim == 0:
            return f.zeros(0)
        vec = f.zeros(self.vdim)
        for i in self.degrees:
            m = fmap.at(i)
            if not is_zero(m):
                vec = vec + self._embed(i, m)
        vec = f.normalize(vec)
        return f.matmul(self.proj, self._zc.coords(vec))

    def combination(self, coeffs) -> ChainMap:
        f = self.field
        vec = f.zeros(self.vdim)
        for c, k in zip(coeffs, range(self.dim)):
            if c != 0:
                vec = vec + c * self.Z[:, self.free[k]]
        return self.chain_map(f.normalize(vec))


def hom_homotopy(P: Complex, Q: Complex, n: int) -> HomK:
    return HomK(P, Q, n)


def shift_window(P: Complex, Q: Complex) -> range:
    """Shifts ``n`` with possibly nonzero ``Hom(P, Q[n])``."""
    if P.is_zero or Q.is_zero:
        return range(0)
    return range(P.lo - Q.hi, P.hi - Q.lo + 1)


def is_selforthogonal(P: Complex):
    """``(True, None)`` or ``(False, n)`` with the first failing shift."""
    for n in shift_window(P, P):
        if n != 0 and HomK(P, P, n).dim:
            return False, n
    return True, None


def end_algebra_complex(P: Complex):
    """``End_K(P)`` with product "x then y"; returns ``(algebra, HomK)``."""
    H = HomK(P, P, 0)
    f = P.field
    reps = H.representatives()
    k = H.dim
    struct = f.zeros((k, k, k))
    for i, x in enumerate(reps):
        for j, y in enumerate(reps):
            struct[i, j] = H.class_of(x.then(y))
    unit = H.class_of(identity_map(P)) if k else f.zeros(0)
    return Algebra(f, struct, unit, name="End_K"), H


def is_contractible(X: Complex) -> bool:
    return X.is_zero or HomK(X, X, 0).dim == 0


# -- minimal complexes ------------------------------------------------------------------


def minimize(X: Complex) -> Complex:
    """Remove contractible summands ``A e -> A e`` (isomorphism components of the
    differential) by Gaussian elimination; the result is homotopy equivalent."""
    if not X.tagged:
        raise NonProjectiveTerm("minimize needs tagged projective terms")
    A, f = X.algebra, X.field
    lo = X.lo
    tags = [list(t) for t in X.tags]
    diffs = [d.copy() for d in X.diffs]
    changed = True
    while changed:
        changed = False
        for k in range(len(diffs)):
            S, T = term(A, tags[k]), term(A, tags[k + 1])
            for a in range(len(tags[k])):
                for b in range(len(tags[k + 1])):
                    ra = slice(S.offsets[a], S.offsets[a] + S.bases[a].shape[1])
                    rb = slice(T.offsets[b], T.offsets[b] + T.bases[b].shape[1])
                    blk = diffs[k][rb, ra]
                    if blk.shape[0] != blk.shape[1] or exact.rank(blk, f) != blk.shape[0]:
                        continue
                    inv = exact.inverse(blk, f)
                    keep_s = [j for j in range(diffs[k].shape[1]) if not ra.start <= j < ra.stop]
                    keep_t = [j for j in range(diffs[k].shape[0]) if not rb.start <= j < rb.stop]
                    d = diffs[k]
                    new = f.normalize(d[np.ix_(keep_t, keep_s)]
                                      - f.matmul(d[np.ix_(keep_t, list(range(ra.start, ra.stop)))],
                                                 f.matmul(inv, d[np.ix_(list(range(rb.start, rb.stop)), keep_s)])))
                    diffs[k] = new
                    if k > 0:
                        diffs[k - 1] = diffs[k - 1][keep_s, :]
                    if k + 1 < len(diffs):
                        diffs[k + 1] = diffs[k + 1][:, keep_t]
                    tags[k].pop(a)
                    tags[k + 1].pop(b)
                    changed = True
                    break
                if changed:
                    break
            if changed:
                break
    return tagged_complex(A, lo, tags, diffs)


# -- duality -------------------------------------------------------------------------------


def dualize(P: Complex) -> Complex:
    """``Hom_A(P, A)`` as a complex over the opposite algebra.

    ``(P^*)^{-i} = (P^i)^*``; an element matrix ``U`` becomes ``U^T`` with sign
    ``(-1)^(i+1)`` on the differential leaving degree ``-i-1``."""
    if not P.tagged:
        raise NonProjectiveTerm("dualize needs tagged projective terms")
    A = P.algebra
    f = A.field
    Aop = A.opposite()
    frame(A)
    frame(Aop)
    if P.is_zero:
        return Complex(Aop, 0, [], [])
    tags = [P.tag(i) for i in range(P.hi, P.lo - 1, -1)]
    mats = []
    for i in range(P.hi - 1, P.lo - 1, -1):
        U = element_matrix(A, P.tag(i), P.tag(i + 1), P.diff(i))
        sign = -1 if (i + 1) % 2 else 1
        mats.append([[f.normalize(sign * U[k][l]) for k in range(len(U))] for l in range(len(P.tag(i + 1)))])
    return from_element_matrices(Aop, -P.hi, tags, mats)


# -- summands and K0 --------------------------------------------------------------------------


def _chain_compose_power(c: ChainMap, k: int) -> ChainMap:
    out = c
    for _ in range(k - 1):
        out = out.then(c)
    return out


def strictify(P: Complex, c: ChainMap, max_iter: int = 64) -> ChainMap:
    """Lift a homotopy idempotent to an idempotent chain map by ``3c^2 - 2c^3``."""
    f = P.field
    for _ in range(max_iter):
        c2 = c.then(c)
        if all(np.array_equal(c2.at(i), c.at(i)) for i in P.degrees()):
            return c
        c3 = c2.then(c)
        c = ChainMap(P, P, {i: f.normalize(3 * c2.at(i) - 2 * c3.at(i)) for i in P.degrees()})
    raise StrictificationFailed("Newton lifting of the idempotent did not stabilise")


def image_complex(P: Complex, c: ChainMap) -> Complex:
    """Image of an idempotent chain map, retagged through projective covers."""
    A, f = P.algebra, P.field
    tags, isos, degs = [], [], list(P.degrees())
    for i in degs:
        img = exact.column_basis(c.at(i), f) if P.term(i).dim else f.zeros((0, 0))
        if img.shape[1] == 0:
            tags.append(())
            isos.append((img, f.zeros((0, 0))))
            continue
        sub = submodule(P.term(i), img)
        cov = projective_cover(sub)
        # cover summands use the decomposition idempotents, which form the frame
        tg = tuple(_frame_index(A, e) for e in cov.idempotents)
        T = term(A, tg)
        phi = cov.map  # T -> sub, in image coordinates
        if T.module.dim != sub.dim:
            raise StrictificationFailed("image term is not projective")
        tags.append(tg)
        isos.append((img, phi))
    diffs = []
    for k in range(len(degs) - 1):
        img0, phi0 = isos[k]
        img1, phi1 = isos[k + 1]
        if img0.shape[1] == 0 or img1.shape[1] == 0:
            diffs.append(f.zeros((term(A, tags[k + 1]).module.dim, term(A, tags[k]).module.dim)))
            continue
        d = f.matmul(P.diff(degs[k]), f.matmul(img0, phi0))
        d_img = Coordinates(img1, f).coords(d)
        diffs.append(f.matmul(exact.inverse(phi1, f), d_img))
    return tagged_complex(A, P.lo, tags, diffs)


def _frame_index(A: Algebra, e: np.ndarray) -> int:
    for k, g in enumerate(frame(A).idempotents):
        if np.array_equal(g, e):
            return k
    raise StrictificationFailed("projective cover used an idempotent outside the frame")


def strict_summands(P: Complex, seed: int = DEFAULT_SEED) -> list:
    """Indecomposable summands of a complex of projectives, as minimal
    tagged complexes."""
    P = minimize(P)
    if P.is_zero:
        return []
    E, H = end_algebra_complex(P)
    if E.dim == 0:
        return []
    out = []
    for eps in primitive_idempotents(E, seed=seed):
        rep = H.combination(eps)
        c = strictify(P, ChainMap(P, P, {i: rep.at(i) for i in P.degrees()}))
        out.append(minimize(image_complex(P, c)))
    return out


def k0_class(X: Complex) -> list:
    """Euler characteristic in ``K_0``: one integer per isomorphism class of
    indecomposable projectives."""
    fr = frame(X.algebra)
    vec = [0] * len(fr.representatives)
    for i in X.degrees():
        for t in X.tag(i):
            vec[fr.classes[t]] += -1 if i % 2 else 1
    return vec


@dataclass
class K0Check:
    passed: bool
    classes: list
    snf: list
    detail: str = ""

    def __bool__(self):
        return self.passed


def k0_generation_check(P: Complex, targets=None, summands=None) -> K0Check:
    """Do the K_0 classes of the indecomposable summands span the targets
    (default: the whole lattice spanned by the projectives)?"""
    fr = frame(P.algebra)
    n = len(fr.representatives)
    summands = strict_summands(P) if summands is None else summands
    rows = [k0_class(S) for S in summands]
    if targets is None:
        targets = [[int(i == j) for j in range(n)] for i in range(n)]
    else:
        targets = [k0_class(T) if isinstance(T, Complex) else list(T) for T in targets]
    if not rows:
        return K0Check(all(not any(t) for t in targets), [], [], "no summands")
    diag, _, _ = exact.smith_normal_form(rows)
    ok = all(exact.lattice_contains(rows, t) for t in targets)
    return K0Check(ok, rows, diag, "" if ok else "summand classes do not span the targets")


# -- generation witnesses ---------------------------------------------------------------------------


@dataclass
class Step:
    op: str  # START | SHIFT | CONE | SUMMAND
    args: tuple

    def __str__(self):
        return f"{self.op}({', '.join(str(a) for a in self.args)})"


@dataclass
class GenerationWitness:
    steps: list = dc_field(default_factory=list)
    reach: dict = dc_field(default_factory=dict)  # target index -> object index

    def __str__(self):
        body = "; ".join(str(s) for s in self.steps)
        tail = ", ".join(f"T{t}=O{o}" for t, o in sorted(self.reach.items()))
        return f"{body} | {tail}"


def homotopy_equivalence(X: Complex, Y: Complex, seed: int = DEFAULT_SEED, trials: int = 16,
                         budget: int = 1 << 10):
    """A chain map X -> Y whose cone is contractible, or None."""
    f = X.field
    if X.is_zero or Y.is_zero:
        return ChainMap(X, Y, {}) if X.is_zero and Y.is_zero else None
    if k0_class(X) != k0_class(Y):
        return None
    H = HomK(X, Y, 0)
    if H.dim == 0 or H.dim != HomK(X, X, 0).dim or H.dim != HomK(Y, Y, 0).dim:
        return None
    rng = np.random.default_rng(seed)
    candidates = []
    if f.is_finite and f.p ** H.dim <= budget:
        candidates = itertools.product(range(f.p), repeat=H.dim)
    else:
        candidates = ([int(c) for c in (f.random_array(rng, H.dim) if f.is_finite
                                         else rng.integers(-3, 4, size=H.dim))] for _ in range(trials))
    for coeffs in candidates:
        if not any(coeffs):
            continue
        fm = H.combination([f.scalar(c) for c in coeffs])
        if is_contractible(cone(fm)):
            return fm
    return None


def replay(generators: list, witness: GenerationWitness) -> list:
    objects = []
    for step in witness.steps:
        try:
            if step.op == "START":
                objects.append(generators[step.args[0]])
            elif step.op == "SHIFT":
                objects.append(shift(objects[step.args[0]], step.args[1]))
            elif step.op == "CONE":
                src, tgt, coeffs = step.args
                X, Y = objects[src], objects[tgt]
                H = HomK(X, Y, 0)
                if len(coeffs) != H.dim:
                    raise MalformedWitness(f"{step}: expected {H.dim} coefficients")
                fm = H.combination([X.field.scalar(c) for c in coeffs])
                objects.append(minimize(cone(fm)))
            elif step.op == "SUMMAND":
                src, coeffs = step.args
                X = objects[src]
                E, H = end_algebra_complex(X)
                eps = E.field.array([E.field.scalar(c) for c in coeffs])
                if len(eps) != E.dim or not E.is_idempotent(eps):
                    raise MalformedWitness(f"{step}: not an idempotent class")
                c = strictify(X, H.combination(eps))
                objects.append(minimize(image_complex(X, c)))
            else:
                raise MalformedWitness(f"unknown step {step.op}")
        except (IndexError, TypeError, ValueError) as exc:
            if isinstance(exc, MalformedWitness):
                raise
            raise MalformedWitness(f"{step}: {exc}") from None
    return objects


@dataclass
class GenerationResult:
    verified: bool
    detail: str = ""

    def __bool__(self):
        return self.verified


def generation_check(generators: list, targets: list, witness: GenerationWitness,
                     seed: int = DEFAULT_SEED) -> GenerationResult:
    objects = replay(generators, witness)
    for t, T in enumerate(targets):
        if t not in witness.reach:
            return GenerationResult(False, f"target {t} not reached")
        o = witness.reach[t]
        if not 0 <= o < len(objects):
            raise MalformedWitness(f"target {t} refers to missing object {o}")
        if homotopy_equivalence(objects[o], T, seed=seed) is None:
            return GenerationResult(False, f"object {o} is not homotopy equivalent to target {t}")
    return GenerationResult(True, "all targets reached")


def find_witness(generators: list, targets: list, budget: int = 64, seed: int = DEFAULT_SEED):
    """Breadth-first search over cones of Hom-basis maps between generated
    objects (and their shifts); returns a witness or None."""
    witness = GenerationWitness()
    objects = []
    for k, G in enumerate(generators):
        witness.steps.append(Step("START", (k,)))
        objects.append(G)

    def try_reach(o):
        X = objects[o]
        for t, T in enumerate(targets):
            if t in witness.reach:
                continue
            for m in shift_window(X, T):
                Xm = shift(X, m)
                if k0_class(Xm) != k0_class(T):
                    continue
                if homotopy_equivalence(Xm, T, seed=seed) is not None:
                    if m:
                        witness.steps.append(Step("SHIFT", (o, m)))
                        objects.append(Xm)
                        witness.reach[t] = len(objects) - 1
                    else:
                        witness.reach[t] = o
                    break

    for o in range(len(objects)):
        try_reach(o)
    if len(witness.reach) == len(targets):
        return witness
    spent = 0
    frontier = 0
    while spent < budget:
        count = len(objects)
        progressed = False
        for a in range(count):
            for b in range(count):
                if max(a, b) < frontier:
                    continue
                X, Y = objects[a], objects[b]
                for m in shift_window(X, Y):
                    H = HomK(X, Y, m)
                    for k in range(H.dim):
                        if spent >= budget:
                            return None
                        spent += 1
                        coeffs = [int(k == j) for j in range(H.dim)]
                        if m:
                            witness.steps.append(Step("SHIFT", (b, m)))
                            objects.append(shift(Y, m))
                            tgt = len(objects) - 1
                        else:
                            tgt = b
                        witness.steps.append(Step("CONE", (a, tgt, tuple(coeffs))))
                        fm = H.combination(coeffs)
                        objects.append(minimize(cone(ChainMap(X, objects[tgt], fm.maps))))
                        progressed = True
                        try_reach(len(objects) - 1)
                        if len(witness.reach) == len(targets):
                            return witness
        frontier = count
        if not progressed:
            return None
    return None


def projective_targets(A: Algebra) -> list:
    fr = frame(A)
    return [stalk(A, (r,)) for r in fr.representatives]


@dataclass
class TiltingVerdict:
    status: str  # Verified | K0PassUnverified | Fail
    reason: str = ""
    selforthogonal: bool = False
    k0: bool = False
    witness: GenerationWitness | None = None
    summands: list = dc_field(default_factory=list)

    def __str__(self):
        return self.status if self.status != "Fail" else f"Fail({self.reason})"


def is_tilting(P: Complex, auto_witness_budget: int = 64, seed: int = DEFAULT_SEED) -> TiltingVerdict:
    require_projective(P)
    ok, n = is_selforthogonal(P)
    if not ok:
        return TiltingVerdict("Fail", "self-orthogonality", False)
    summands = strict_summands(P, seed=seed)
    k0 = k0_generation_check(P, summands=summands)
    if not k0:
        return TiltingVerdict("Fail", "K0 classes do not generate", True, False, summands=summands)
    targets = projective_targets(P.algebra)
    w = find_witness(summands, targets, auto_witness_budget, seed=seed)
    if w is None:
        return TiltingVerdict("K0PassUnverified", "no witness within budget", True, True, summands=summands)
    if not generation_check(summands, targets, w, seed=seed):
        return TiltingVerdict("K0PassUnverified", "witness failed replay", True, True, summands=summands)
    return TiltingVerdict("Verified", "", True, True, w, summands)


# -- pair equivalence ---------------------------------------------------------------------------------


@dataclass
class PairReport:
    invariants_match: bool
    explicit_iso: bool | None
    p1_in_add_ae: bool
    p1_generates: bool
    split_matches: bool | None
    end_invariants: object
    target_invariants: object
    detail: str = ""

    @property
    def status(self) -> str:
        if not (self.invariants_match and self.p1_in_add_ae and self.p1_generates):
            return "Fail"
        if self.explicit_iso and self.split_matches:
            return "Pass"
        return "Inconclusive"


def pair_equiv_check(A: Algebra, e: np.ndarray, B: Algebra, f_idem: np.ndarray, P1: Complex, P2: Complex,
                     presentation=None, seed: int = DEFAULT_SEED, budget: int = 64) -> PairReport:
    """Check the pair conditions for ``P = P1 + P2`` against ``(B, f)``.

    With a quiver presentation of B an explicit isomorphism ``B -> End_K(P)``
    is searched, and the split idempotent is compared with the image of f up
    to conjugacy."""
    from .modrep import left_ideal_module as lim
    P, _, _, pr1, _ = sum_injections(P1, P2)
    E, H = end_algebra_complex(P)
    inv_e, inv_b = invariants(E), invariants(B)
    inv_ok = inv_e.fingerprint() == inv_b.fingerprint() and inv_e.cartan_det == inv_b.cartan_det
    fr = frame(A)
    cov = projective_cover(lim(A, e)[0])
    ae_classes = {fr.classes[_frame_index(A, g)] for g in cov.idempotents}
    in_add = all(fr.classes[t] in ae_classes for i in P1.degrees() for t in P1.tag(i))
    targets = [stalk(A, (fr.representatives[c],)) for c in sorted(ae_classes)]
    gens = strict_summands(P1, seed=seed)
    w = find_witness(gens, targets, budget, seed=seed) if gens else None
    generates = w is not None and bool(generation_check(gens, targets, w, seed=seed))
    explicit, split = None, None
    if presentation is not None:
        from .quiverlang import verify_presentation
        match = verify_presentation(E, presentation)
        explicit = match.ok
        if match.ok:
            vnames = list(presentation.vertices)
            fimg = E.zero()
            # f is written in the vertex idempotents of B's presentation
            for k, v in enumerate(vnames):
                if B.vertex_idempotents is not None and not is_zero(B.mul(f_idem, B.vertex_idempotents[k])):
                    fimg = E.field.normalize(fimg + np.asarray(match.assignment[v], dtype=E.field.dtype))
            proj1 = ChainMap(P, P, {i: P.field.matmul(np.eye(P.term(i).dim, dtype=P.field.dtype)[:, :P1.term(i).dim],
                                                      pr1.at(i)) for i in P.degrees()})
            eps = H.class_of(proj1)
            split = bool(module_isomorphic(lim(E, eps)[0], lim(E, fimg)[0], seed=seed))
    return PairReport(inv_ok, explicit, in_add, generates, split, inv_e, inv_b)


# -- search --------------------------------------------------------------------------------------------


@dataclass
class SearchHit:
    complex: Complex
    verdict: TiltingVerdict
    invariants: object


@dataclass
class SearchResult:
    hits: list
    examined: int
    presilting: int
    budget_exceeded: bool


def _radical_slices(A: Algebra):
    """Basis (A-columns) of ``e_s rad e_t`` for all frame pairs."""
    f = A.field
    fr = frame(A)
    rad = decompose(A).radical
    out = {}
    for s, es in enumerate(fr.idempotents):
        for t, et in enumerate(fr.idempotents):
            proj = f.matmul(A.left_matrix(es), A.right_matrix(et))
            out[(s, t)] = exact.column_basis(f.matmul(proj, rad), f) if rad.shape[1] else f.zeros((A.dim, 0))
    return out


def _shapes(nreps: int, max_mult: int):
    shapes = []
    for lower in itertools.product(range(max_mult + 1), repeat=nreps):
        for upper in itertools.product(range(max_mult + 1), repeat=nreps):
            if sum(lower) + sum(upper) == 0:
                continue
            shapes.append((sum(lower) + sum(upper), lower, upper))
    shapes.sort()
    return [(lo, up) for _, lo, up in shapes]


def presilting_two_term(A: Algebra, src_tags, tgt_tags, d: np.ndarray) -> bool:
    """``Hom_K(P, P[1]) = 0`` for ``P = (src -> tgt)`` in degrees -1, 0:
    every map src -> tgt factors as ``d a + b d``."""
    f = A.field
    S, T = term(A, src_tags).module, term(A, tgt_tags).module
    if S.dim == 0 or T.dim == 0:
        return True
    hom = hom_basis(S, T)
    if not hom:
        return True
    vecs = [f.matmul(d, h.matrix).reshape(-1) for h in hom_basis(S, S)]
    vecs += [f.matmul(h.matrix, d).reshape(-1) for h in hom_basis(T, T)]
    return exact.rank(np.stack(vecs), f) == len(hom)


def tilting_search(A: Algebra, max_mult: int = 2, span=(-1, 0), seed: int = DEFAULT_SEED,
                   budget: int = 10 ** 6, witness_budget: int = 64, max_hits: int | None = None,
                   stop=None) -> SearchResult:
    """Enumerate two-term complexes of projectives with radical differentials.

    Terms range over sums of the indecomposable projectives (one per class)
    with multiplicities up to ``max_mult``; shapes go by total size.  Within a
    shape differentials run over all F_p-combinations of radical basis
    elements, with rows (columns) of equal summands kept in sorted order.
    Survivors of the cheap ``Hom(P, P[1]) = 0`` test are deduplicated by the
    invariant fingerprint of ``End_K(P)`` and classified by ``is_tilting``.
    The search ends early after ``max_hits`` hits or once ``stop(hit)`` holds."""
    f = A.field
    if not f.is_finite:
        raise ValueError("tilting search needs a finite ground field")
    if tuple(span) != (-1, 0):
        raise ValueError("only two-term shapes in degrees -1, 0 are supported")
    fr = frame(A)
    reps = fr.representatives
    slices = _radical_slices(A)
    hits, seen = [], set()
    examined = presilting = 0
    for lower, upper in _shapes(len(reps), max_mult):
        src = tuple(r for r, m in zip(reps, lower) for _ in range(m))
        tgt = tuple(r for r, m in zip(reps, upper) for _ in range(m))
        cells = [(k, l, slices[(s, t)]) for k, s in enumerate(src) for l, t in enumerate(tgt)]
        sizes = [c[2].shape[1] for c in cells]
        for coeffs in itertools.product(range(f.p), repeat=sum(sizes)):
            examined += 1
            if examined > budget:
                return SearchResult(hits, examined - 1, presilting, True)
            U = [[A.zero() for _ in tgt] for _ in src]
            pos = 0
            for (k, l, basis), sz in zip(cells, sizes):
                if sz:
                    U[k][l] = f.normalize(f.matmul(basis, f.array(coeffs[pos:pos + sz])))
                pos += sz
            if not _canonical(U, src, tgt, f):
                continue
            d = element_block_matrix(A, src, tgt, U) if src and tgt else f.zeros((term(A, tgt).module.dim, term(A, src).module.dim))
            if not presilting_two_term(A, src, tgt, d):
                continue
            presilting += 1
            P = tagged_complex(A, -1, [src, tgt], [d])
            E, _ = end_algebra_complex(P)
            inv = invariants(E)
            key = inv.fingerprint()
            if key in seen:
                continue
            seen.add(key)
            verdict = is_tilting(P, witness_budget, seed)
            if verdict.status != "Fail":
                hit = SearchHit(P, verdict, inv)
                hits.append(hit)
                if (max_hits is not None and len(hits) >= max_hits) or (stop is not None and stop(hit)):
                    return SearchResult(hits, examined, presilting, False)
    return SearchResult(hits, examined, presilting, False)


def _canonical(U, src, tgt, f) -> bool:
    """Rows for equal source summands (columns for equal targets) weakly decreasing."""
    def key(vecs):
        return tuple(int(x) for v in vecs for x in v)
    for k in range(1, len(src)):
        if src[k] == src[k - 1] and key(U[k]) > key(U[k - 1]):
            return False
    for l in range(1, len(tgt)):
        if tgt[l] == tgt[l - 1]:
            a = key([U[k][l] for k in range(len(src))])
            b = key([U[k][l - 1] for k in range(len(src))])
            if a > b:
                return False
    return True


# -- complex files ---------------------------------------------------------------------------------------


def parse_complex(text: str, A: Algebra, presentation) -> Complex:
    """Read a complex file over an algebra compiled from ``presentation``."""
    from .quiverlang import ParseError, evaluate_poly, parse_poly
    names = list(presentation.vertices)
    fr = frame(A)
    if A.vertex_idempotents is None or any(
            not np.array_equal(a, b) for a, b in zip(A.vertex_idempotents, fr.idempotents)):
        raise ComplexError("algebra frame does not match the presentation's vertices")
    images = {f"[{v}]": A.vertex_idempotents[k] for k, v in enumerate(names)}
    images.update(A.arrow_elements)
    lines = [(n, raw.split("#", 1)[0].strip()) for n, raw in enumerate(text.splitlines(), start=1)]
    lines = [(n, s) for n, s in lines if s]
    if not lines or lines[0][1] != "complex":
        raise ParseError("expected 'complex'", lines[0][0] if lines else 1, 1)
    terms, diffs = {}, {}
    idx = 1
    done = False
    while idx < len(lines):
        n, s = lines[idx]
        idx += 1
        if s == "end":
            done = True
            break
        parts = s.split(None, 2)
        if parts[0] == "term":
            m = re.fullmatch(r"term\s+(-?\d+)\s*(.*)", s)
            if not m:
                raise ParseError("expected 'term <degree> <vertex:mult,...>'", n, 1)
            deg = int(m.group(1))
            tags = []
            spec = m.group(2).strip()
            for item in filter(None, (x.strip() for x in spec.split(","))):
                mm = re.fullmatch(r"([A-Za-z0-9_]+)\s*:\s*(\d+)", item)
                if not mm or mm.group(1) not in names:
                    raise ParseError(f"bad term entry {item!r}", n, s.index(item) + 1)
                tags += [names.index(mm.group(1))] * int(mm.group(2))
            terms[deg] = tuple(tags)
        elif parts[0] == "diff":
            m = re.fullmatch(r"diff\s+(-?\d+)\s+(\d+)x(\d+)", s)
            if not m:
                raise ParseError("expected 'diff <degree> <rows>x<cols>'", n, 1)
            deg, r, c = int(m.group(1)), int(m.group(2)), int(m.group(3))
            rows = []
            for _ in range(r):
                if idx >= len(lines):
                    raise ParseError("missing differential rows", n, 1)
                rn, rs = lines[idx]
                idx += 1
                entries = [x.strip() for x in rs.split(",")]
                if len(entries) != c:
                    raise ParseError(f"expected {c} entries", rn, 1)
                row = []
                for ent in entries:
                    if ent == "0":
                        row.append(A.zero())
                    else:
                        poly = parse_poly(ent, presentation, rn, rs.index(ent) + 1)
                        row.append(evaluate_poly(A, poly, images))
                rows.append(row)
            diffs[deg] = rows
        else:
            raise ParseError(f"unexpected {parts[0]!r}", n, 1)
    if not done:
        raise ParseError("missing 'end'", lines[-1][0], 1)
    if not terms:
        return Complex(A, 0, [], [])
    lo, hi = min(terms), max(terms)
    tag_list = [terms.get(i, ()) for i in range(lo, hi + 1)]
    mats = []
    for i in range(lo, hi):
        src, tgt = tag_list[i - lo], tag_list[i + 1 - lo]
        U = diffs.get(i)
        if U is None:
            U = [[A.zero() for _ in tgt] for _ in src]
        if len(U) != len(src) or any(len(row) != len(tgt) for row in U):
            raise ComplexError(f"differential {i} must be {len(src)}x{len(tgt)}")
        mats.append(U)
    X = from_element_matrices(A, lo, tag_list, mats)
    chk = check_complex(X)
    if not chk:
        raise ComplexError(chk.message)
    return X


def complex_to_text(X: Complex, presentation) -> str:
    """Serialise a tagged complex over a compiled presentation (entries are
    written in the path basis)."""
    A = X.algebra
    names = list(presentation.vertices)
    lines = ["complex"]
    for i in X.degrees():
        counts = {}
        for t in X.tag(i):
            counts[names[t]] = counts.get(names[t], 0) + 1
        lines.append(f"term {i} " + ",".join(f"{v}:{m}" for v, m in counts.items()))
    for i in range(X.lo, X.hi):
        U = element_matrix(A, X.tag(i), X.tag(i + 1), X.diff(i))
        lines.append(f"diff {i} {len(U)}x{len(X.tag(i + 1))}")
        for row in U:
            lines.append(", ".join(_path_expr(A, u) for u in row))
    lines.append("end")
    return "\n".join(lines) + "\n"


def _path_expr(A: Algebra, u) -> str:
    f = A.field
    out = ""
    for c, lab in zip(u, A.labels):
        if c == 0:
            continue
        word = lab if not lab.startswith("e_") else f"[{lab[2:]}]"
        s = f.fmt(c)
        if "/" in s:
            raise ValueError("complex files hold integer coefficients only")
        neg = s.startswith("-")
        mag = s.lstrip("-")
        body = word if mag == "1" else f"{mag} {word}"
        if not out:
            out = f"-{body}" if neg else body
        else:
            out += f" - {body}" if neg else f" + {body}"
    return out or "0"
