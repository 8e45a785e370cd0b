"""Mirror-reflective algebras ``R(A, e, lam) = A + Ae (x)_{eAe} eA``.

The ideal part ``X = Ae (x) eA`` is written in the pure-tensor basis chosen by
``tensor_over_corner``.  On X the product is

    (x (x) y) * (x' (x) y') = x (y x' lam) (x) y'

and A acts on X through the bimodule structure.  ``lam`` must be central in
the corner algebra ``eAe``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np
import sympy

from . import exact
from .algebra import Algebra, DEFAULT_SEED, center_basis, check_algebra, corner, is_local
from .exact import Coordinates, is_zero
from .modrep import CornerTensor, Module, hom_basis, tensor_over_corner, tensor_relations


class LevelNotCentral(ValueError):
    pass


class SearchBudgetExceeded(RuntimeError):
    pass


@dataclass
class Level:
    """A central element of ``eAe``, in A-coordinates."""

    element: np.ndarray
    e: np.ndarray

    @classmethod
    def make(cls, A: Algebra, e: np.ndarray, lam: np.ndarray) -> "Level":
        f = A.field
        lam = np.asarray(lam, dtype=f.dtype)
        if not np.array_equal(A.mul(A.mul(e, lam), e), lam):
            raise LevelNotCentral("level does not lie in the corner eAe")
        _, incl = corner(A, e)
        for k in range(incl.shape[1]):
            if not A.commutes(lam, incl[:, k]):
                raise LevelNotCentral(f"level does not commute with corner element {A.fmt(incl[:, k])}")
        return cls(lam, np.asarray(e, dtype=f.dtype))


def is_unit_in_corner(A: Algebra, e: np.ndarray, lam: np.ndarray) -> bool:
    f = A.field
    C, incl = corner(A, e)
    if C.dim == 0:
        return True
    c = Coordinates(incl, f).coords(lam)
    return exact.rank(C.left_matrix(c), f) == C.dim


@dataclass
class OmegaMap:
    """``table[i, j]`` is the product of Delta0 basis vectors i and j."""

    table: np.ndarray
    delta: CornerTensor
    level: Level

    def as_matrix(self) -> np.ndarray:
        """Matrix of the induced linear map ``Delta0 (x)_k Delta0 -> Delta0``."""
        d = self.delta.dim
        return np.ascontiguousarray(self.table.reshape(d * d, d).T)


def omega_map(A: Algebra, e: np.ndarray, lam, delta: CornerTensor | None = None) -> OmegaMap:
    level = lam if isinstance(lam, Level) else Level.make(A, e, lam)
    ct = delta or tensor_over_corner(A, e)
    f = A.field
    d = ct.dim
    table = f.zeros((d, d, d))
    for i in range(d):
        p, q = ct.pure_tensor(i)
        x, y = ct.ae_basis[:, p], ct.ea_basis[:, q]
        for j in range(d):
            p2, q2 = ct.pure_tensor(j)
            x2, y2 = ct.ae_basis[:, p2], ct.ea_basis[:, q2]
            inner = A.mul(A.mul(y, x2), level.element)
            table[i, j] = ct.pair(A.mul(x, inner), y2)
    return OmegaMap(table, ct, level)


def displayed_product(A: Algebra, ct: CornerTensor, lam: np.ndarray) -> np.ndarray:
    """The X*X table from the element formula ``(x y x') (x) (lam y')``.

    Independent of ``omega_map``: here the level sits in the right factor."""
    f = A.field
    d = ct.dim
    table = f.zeros((d, d, d))
    for i in range(d):
        p, q = ct.pure_tensor(i)
        for j in range(d):
            p2, q2 = ct.pure_tensor(j)
            left = A.mul(A.mul(ct.ae_basis[:, p], ct.ea_basis[:, q]), ct.ae_basis[:, p2])
            table[i, j] = ct.pair(left, A.mul(lam, ct.ea_basis[:, q2]))
    return table


def rho_endo(A: Algebra, e: np.ndarray, lam, delta: CornerTensor | None = None) -> np.ndarray:
    """Matrix of ``x (x) y -> x lam (x) y`` on Delta0."""
    level = lam if isinstance(lam, Level) else Level.make(A, e, lam)
    ct = delta or tensor_over_corner(A, e)
    f = A.field
    cols = []
    for j in range(ct.dim):
        p, q = ct.pure_tensor(j)
        cols.append(ct.pair(A.mul(ct.ae_basis[:, p], level.element), ct.ea_basis[:, q]))
    if not cols:
        return f.zeros((0, 0))
    return np.stack(cols, axis=1)


def omega_rank(om: OmegaMap) -> tuple:
    """``(dim Delta0 (x)_A Delta0, rank of the induced map to Delta0)``."""
    A = om.delta.bimodule.left_alg
    bm = om.delta.bimodule
    f = A.field
    d = bm.dim
    if d == 0:
        return 0, 0
    right = Module(A.opposite(), bm.right)
    left = Module(A, bm.left)
    rel = tensor_relations(right, left)
    mat = om.as_matrix()
    if rel.shape[0] and not is_zero(f.matmul(mat, np.ascontiguousarray(rel.T))):
        raise AssertionError("omega is not balanced over A")
    tdim = d * d - (exact.rank(rel, f) if rel.shape[0] else 0)
    return tdim, exact.rank(mat, f)


def omega_invertible(om: OmegaMap) -> bool:
    tdim, rk = omega_rank(om)
    return tdim == om.delta.dim and rk == om.delta.dim


@dataclass
class RhoCheck:
    center_dim: int
    end_dim: int
    linear: bool
    multiplicative: bool
    unital: bool
    injective: bool
    surjective: bool
    bimodule_maps: bool
    omega_factorizes: bool

    @property
    def ok(self) -> bool:
        return all([self.linear, self.multiplicative, self.unital, self.injective,
                    self.surjective, self.bimodule_maps, self.omega_factorizes])

    def __bool__(self):
        return self.ok


def rho_iso_check(A: Algebra, e: np.ndarray, extra_levels=(), delta: CornerTensor | None = None) -> RhoCheck:
    """Check that ``lam -> rho_lam`` is an algebra isomorphism from the
    centre of eAe onto the bimodule endomorphisms of Delta0, and that
    ``omega_lam`` is ``omega_e`` followed by ``rho_lam``."""
    f = A.field
    ct = delta or tensor_over_corner(A, e)
    C, incl = corner(A, e)
    zs = [f.matmul(incl, z) for z in center_basis(C)] if C.dim else []
    ends = hom_basis(ct.bimodule, ct.bimodule)
    d = ct.dim
    rhos = [rho_endo(A, e, Level(z, e), ct) for z in zs]
    flat = lambda m: m.reshape(-1)
    end_flat = np.stack([flat(h.matrix) for h in ends], axis=1) if ends else f.zeros((d * d, 0))
    end_c = Coordinates(end_flat, f) if ends else None
    bimodule_maps = all(end_c is not None and end_c.contains(flat(r)) for r in rhos) if rhos else d == 0
    rho_flat = np.stack([flat(r) for r in rhos], axis=1) if rhos else f.zeros((d * d, 0))
    rk = exact.rank(rho_flat, f) if rhos else 0
    injective = rk == len(zs)
    surjective = rk == len(ends)
    # linearity: rho of a combination is the combination of rhos
    rng = np.random.default_rng(DEFAULT_SEED)
    linear = True
    if zs:
        coeffs = [f.scalar(int(c)) for c in rng.integers(0, 5, size=len(zs))]
        z = f.normalize(sum(c * v for c, v in zip(coeffs, zs)))
        lhs = rho_endo(A, e, Level(z, e), ct)
        rhs = f.normalize(sum(c * r for c, r in zip(coeffs, rhos)))
        linear = np.array_equal(lhs, rhs)
    multiplicative = all(
        np.array_equal(rho_endo(A, e, Level(A.mul(zs[i], zs[j]), e), ct), f.matmul(rhos[j], rhos[i]))
        for i in range(len(zs)) for j in range(len(zs)))
    unital = np.array_equal(rho_endo(A, e, Level(np.asarray(e, dtype=f.dtype), e), ct), f.eye(d))
    om_e = omega_map(A, e, Level(np.asarray(e, dtype=f.dtype), e), ct)
    factor = True
    for lam in list(zs) + [np.asarray(x, dtype=f.dtype) for x in extra_levels]:
        lev = Level(lam, e)
        om = omega_map(A, e, lev, ct)
        r = rho_endo(A, e, lev, ct)
        for i in range(d):
            for j in range(d):
                if not np.array_equal(om.table[i, j], f.matmul(r, om_e.table[i, j])):
                    factor = False
    return RhoCheck(len(zs), len(ends), linear, multiplicative, unital, injective, surjective,
                    bimodule_maps, factor)


@dataclass
class MirrorAlgebra:
    algebra: Algebra
    base: Algebra
    delta: CornerTensor
    level: Level
    omega: OmegaMap

    @property
    def base_dim(self) -> int:
        return self.base.dim

    def embed(self, a: np.ndarray) -> np.ndarray:
        f = self.base.field
        return np.concatenate([np.asarray(a, dtype=f.dtype), f.zeros(self.delta.dim)])

    def project(self, r: np.ndarray) -> np.ndarray:
        return r[:self.base.dim]

    def x_element(self, v: np.ndarray) -> np.ndarray:
        f = self.base.field
        return np.concatenate([f.zeros(self.base.dim), np.asarray(v, dtype=f.dtype)])


def build_mirror(A: Algebra, e: np.ndarray, lam) -> MirrorAlgebra:
    f = A.field
    e = np.asarray(e, dtype=f.dtype)
    level = lam if isinstance(lam, Level) else Level.make(A, e, lam)
    ct = tensor_over_corner(A, e)
    om = omega_map(A, e, level, ct)
    n, d = A.dim, ct.dim
    m = n + d
    struct = f.zeros((m, m, m))
    struct[:n, :n, :n] = A.struct
    bm = ct.bimodule
    for i in range(n):
        struct[i, n:, n:] = bm.left[i].T
        struct[n:, i, n:] = bm.right[i].T
    struct[n:, n:, n:] = om.table
    unit = np.concatenate([A.unit, f.zeros(d)])
    labels = list(A.labels) + [f"[{_short(A, ct.ae_basis[:, p])}|{_short(A, ct.ea_basis[:, q])}]"
                               for p, q in (ct.pure_tensor(j) for j in range(d))]
    R = Algebra(f, struct, unit, labels=labels, name="R")
    gens = [np.concatenate([g, f.zeros(d)]) for g in A.generators]
    if d:
        gens.append(np.concatenate([f.zeros(n), ct.pair(e, e)]))
    R._generators = gens
    _attach_vertex_hints(R, A, ct, e)
    return MirrorAlgebra(R, A, ct, level, om)


def _short(A, v):
    s = A.fmt(v)
    return s if len(s) <= 24 else "..."


def _attach_vertex_hints(R: Algebra, A: Algebra, ct: CornerTensor, e: np.ndarray):
    """Split each vertex idempotent v <= e of A as (v - v(x)v) + v(x)v; keep the
    hint only if it is a complete orthogonal set of local idempotents."""
    if A.vertex_idempotents is None or ct.dim == 0:
        return
    f = A.field
    n = A.dim
    names = getattr(A, "vertex_names", [str(i) for i in range(len(A.vertex_idempotents))])
    hints, hint_names = [], []
    for name, v in zip(names, A.vertex_idempotents):
        emb = np.concatenate([v, f.zeros(ct.dim)])
        if np.array_equal(A.mul(v, e), v) and np.array_equal(A.mul(e, v), v):
            eps = np.concatenate([f.zeros(n), ct.pair(v, v)])
            hints += [f.normalize(emb - eps), eps]
            hint_names += [name, name + "bar"]
        else:
            hints.append(emb)
            hint_names.append(name)
    from .algebra import _is_complete_orthogonal
    if _is_complete_orthogonal(R, hints) and all(is_local(corner(R, h)[0]) for h in hints):
        R.vertex_idempotents = hints
        R.vertex_names = hint_names


@dataclass
class IdealizedCheck:
    ok: bool
    failures: list = dc_field(default_factory=list)
    x_square_zero: bool = False

    def __bool__(self):
        return self.ok


def check_idealized_extension(R, base: Algebra | None = None, base_dim: int | None = None) -> IdealizedCheck:
    """Check A is a unital subalgebra (first block), X is an ideal, and the
    projection onto A is an algebra map splitting the inclusion.

    Accepts a MirrorAlgebra, or an Algebra together with the base algebra."""
    if isinstance(R, MirrorAlgebra):
        base, alg = R.base, R.algebra
    else:
        alg = R
        if base is None:
            raise ValueError("base algebra required")
    f = alg.field
    n = base.dim
    m = alg.dim
    c = alg.struct
    fails = []
    if not check_algebra(alg).ok:
        fails.append("not associative")
    if not np.array_equal(alg.unit[:n], base.unit) or not is_zero(alg.unit[n:]):
        fails.append("identity differs from the identity of A")
    if not is_zero(c[:n, :n, n:]) or not np.array_equal(c[:n, :n, :n], base.struct):
        fails.append("A is not a subalgebra")
    if not (is_zero(c[:, n:, :n]) and is_zero(c[n:, :, :n])):
        fails.append("X is not an ideal")
    # projection is multiplicative and splits the inclusion
    proj = f.eye(m)[:n]
    incl = np.ascontiguousarray(proj.T)
    if not np.array_equal(f.matmul(proj, incl), f.eye(n)):
        fails.append("projection does not split the inclusion")
    for i in range(m):
        for j in range(m):
            lhs = c[i, j, :n]
            rhs = base.mul(proj[:, i], proj[:, j])
            if not np.array_equal(lhs, rhs):
                fails.append("projection onto A is not multiplicative")
                break
        else:
            continue
        break
    xsq = is_zero(c[n:, n:, :]) if m > n else True
    return IdealizedCheck(not fails, fails, xsq)


def mirror_isomorphism(A: Algebra, e: np.ndarray, lam: np.ndarray, mu: np.ndarray):
    """``diag(1, rho_mu)`` from ``R(A,e,lam*mu)`` to ``R(A,e,lam)``; returns
    ``(matrix, ok)`` where ok certifies a bijective unital algebra map."""
    f = A.field
    R1 = build_mirror(A, e, A.mul(lam, mu)).algebra
    R2 = build_mirror(A, e, lam)
    rho = rho_endo(A, e, Level.make(A, e, mu), R2.delta)
    n, d = A.dim, R2.delta.dim
    phi = f.zeros((n + d, n + d))
    phi[:n, :n] = f.eye(n)
    phi[n:, n:] = rho
    return phi, is_algebra_isomorphism(R1, R2.algebra, phi)


def is_algebra_isomorphism(R1: Algebra, R2: Algebra, phi: np.ndarray) -> bool:
    f = R1.field
    if R1.dim != R2.dim or exact.rank(phi, f) != R1.dim:
        return False
    if not np.array_equal(f.matmul(phi, R1.unit), R2.unit):
        return False
    for i in range(R1.dim):
        for j in range(R1.dim):
            lhs = f.matmul(phi, R1.struct[i, j])
            rhs = R2.mul(phi[:, i], phi[:, j])
            if not np.array_equal(lhs, rhs):
                return False
    return True


@dataclass
class LevelEquivalence:
    equivalent: bool
    mu: np.ndarray | None = None
    detail: str = ""

    def __bool__(self):
        return self.equivalent


def levels_isomorphic(A: Algebra, e: np.ndarray, lam1, lam2, budget: int = 1 << 16) -> LevelEquivalence:
    """Is ``lam1 = lam2 * mu`` for a unit ``mu`` of the centre of eAe?"""
    f = A.field
    l1 = Level.make(A, e, lam1).element
    l2 = Level.make(A, e, lam2).element
    C, incl = corner(A, e)
    if C.dim == 0:
        return LevelEquivalence(True, A.zero(), "zero corner")
    zs = [f.matmul(incl, z) for z in center_basis(C)]
    mat = np.stack([A.mul(l2, z) for z in zs], axis=1)
    base = exact.solve_linear(mat, l1, f)
    if base is None:
        return LevelEquivalence(False, None, "lam1 is not a central multiple of lam2")
    ker = exact.kernel_basis(mat, f)
    cc = Coordinates(incl, f)

    def element(coeffs):
        return f.normalize(sum((c * z for c, z in zip(coeffs, zs)), A.zero()))

    def unit(coeffs):
        mu = element(coeffs)
        return exact.rank(C.left_matrix(cc.coords(mu)), f) == C.dim, mu

    k = len(ker)
    if f.is_finite:
        # units are dense among solutions when any exist, so sample first
        rng = np.random.default_rng(DEFAULT_SEED)
        for _ in range(256 if k else 0):
            ts = rng.integers(0, f.p, size=k)
            coeffs = f.normalize(base + sum((f.scalar(int(t)) * v for t, v in zip(ts, ker)), f.zeros(len(zs))))
            ok, mu = unit(coeffs)
            if ok:
                return LevelEquivalence(True, mu, "unit found")
        if f.p ** k > budget:
            raise SearchBudgetExceeded("unit search space exceeds budget")
        for ts in itertools.product(range(f.p), repeat=k):
            coeffs = f.normalize(base + sum((t * v for t, v in zip(ts, ker)), f.zeros(len(zs))))
            ok, mu = unit(coeffs)
            if ok:
                return LevelEquivalence(True, mu, "unit found")
        return LevelEquivalence(False, None, "exhaustive: no unit solution")
    # over Q: det of the generic solution is a polynomial in the kernel parameters
    ts = sympy.symbols(f"t0:{k}") if k else ()
    coeffs = [sympy.Rational(int(b.numerator), int(b.denominator)) + sum(
        t * sympy.Rational(int(v[i].numerator), int(v[i].denominator)) for t, v in zip(ts, ker))
        for i, b in enumerate(base)]
    mats = [C.left_matrix(cc.coords(z)) for z in zs]
    gm = sympy.zeros(C.dim, C.dim)
    for c, mm in zip(coeffs, mats):
        gm += c * sympy.Matrix(C.dim, C.dim, [sympy.Rational(int(x.numerator), int(x.denominator)) for x in mm.flat])
    det = sympy.expand(gm.det())
    if det == 0:
        return LevelEquivalence(False, None, "generic determinant vanishes")
    deg = sympy.Poly(det, *ts).total_degree() if ts else 0
    # a nonzero polynomial of degree deg cannot vanish on a grid of side deg + 1
    for point in itertools.product(range(deg + 1), repeat=k):
        if det.subs(dict(zip(ts, point))) != 0:
            vals = [f.scalar(0) + base[i] + sum((p * v[i] for p, v in zip(point, ker)), f.scalar(0))
                    for i in range(len(zs))]
            ok, mu = unit(vals)
            if ok:
                return LevelEquivalence(True, mu, "unit found")
    raise SearchBudgetExceeded("no unit found on the evaluation grid")  # pragma: no cover
