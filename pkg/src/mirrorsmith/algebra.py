"""Finite-dimensional associative unital algebras given by structure constants.

An algebra with basis ``b_0..b_{n-1}`` stores ``struct[i, j, :]``, the
coordinate vector of ``b_i * b_j``.  Elements are coordinate vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property

import numpy as np
import sympy

from . import exact
from .exact import Coordinates, Field, is_zero

DEFAULT_SEED = 0xA1B2


class NotIdempotent(ValueError):
    pass


class UnsupportedCharacteristic(ValueError):
    pass


class DecompositionFailed(RuntimeError):
    """Idempotent splitting gave up (only possible for non-split algebras over Q)."""


@dataclass
class AlgebraCheck:
    ok: bool
    message: str = "ok"
    triple: tuple | None = None

    def __bool__(self):
        return self.ok


class Algebra:
    def __init__(self, field: Field, struct: np.ndarray, unit: np.ndarray, labels=None,
                 generators=None, vertex_idempotents=None, name: str = ""):
        self.field = field
        self.struct = field.normalize(np.asarray(struct, dtype=field.dtype)) if field.is_finite \
            else np.asarray(struct, dtype=object)
        n = self.struct.shape[0]
        if self.struct.shape != (n, n, n):
            raise ValueError("structure constants must have shape (n, n, n)")
        self.dim = n
        self.unit = np.asarray(unit, dtype=field.dtype)
        self.labels = list(labels) if labels is not None else [f"b{i}" for i in range(n)]
        self._generators = generators
        # hint: known complete orthogonal idempotents (e.g. vertices of a quiver)
        self.vertex_idempotents = vertex_idempotents
        self.name = name
        self._opposite = None

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<Algebra{label} dim={self.dim} over {self.field}>"

    # -- elements ---------------------------------------------------------

    def zero(self) -> np.ndarray:
        return self.field.zeros(self.dim)

    def basis_vector(self, i: int) -> np.ndarray:
        v = self.zero()
        v[i] = self.field.one
        return v

    def element(self, coeffs) -> np.ndarray:
        return self.field.array(coeffs)

    def mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        if x.ndim == 1:
            flat = self.__dict__.get("_flat_struct")
            if flat is None:
                flat = self._flat_struct = self.struct.reshape(self.dim, -1)
            t = (x @ flat).reshape(self.dim, -1)
        else:
            t = np.tensordot(x, self.struct, axes=(0, 0))
        if self.field.is_finite:
            return self.field.matmul(y, t % self.field.p)
        return y @ t

    def power(self, x: np.ndarray, k: int) -> np.ndarray:
        result = self.unit.copy()
        base = x
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def add(self, *xs):
        total = sum(xs[1:], xs[0])
        return self.field.normalize(total)

    def scale(self, c, x):
        return self.field.normalize(self.field.scalar(c) * x)

    def left_matrix(self, x: np.ndarray) -> np.ndarray:
        """Matrix of ``y -> x*y`` acting on column vectors."""
        t = np.tensordot(x, self.struct, axes=(0, 0))
        return self.field.normalize(np.ascontiguousarray(t.T))

    def right_matrix(self, y: np.ndarray) -> np.ndarray:
        """Matrix of ``x -> x*y`` acting on column vectors."""
        t = np.tensordot(self.struct, y, axes=(1, 0))
        return self.field.normalize(np.ascontiguousarray(t.T))

    @cached_property
    def left_basis_matrices(self) -> list[np.ndarray]:
        return [np.ascontiguousarray(self.struct[i].T) for i in range(self.dim)]

    @cached_property
    def right_basis_matrices(self) -> list[np.ndarray]:
        return [np.ascontiguousarray(self.struct[:, j, :].T) for j in range(self.dim)]

    def is_idempotent(self, e: np.ndarray) -> bool:
        return np.array_equal(self.mul(e, e), e)

    def commutes(self, x, y) -> bool:
        return np.array_equal(self.mul(x, y), self.mul(y, x))

    def fmt(self, x: np.ndarray) -> str:
        out = ""
        for c, lab in zip(x, self.labels):
            if c == 0:
                continue
            s = self.field.fmt(c)
            neg = s.startswith("-")
            mag = s.lstrip("-")
            body = lab if mag == "1" else f"{mag}*{lab}"
            if not out:
                out = f"-{body}" if neg else body
            else:
                out += f" - {body}" if neg else f" + {body}"
        return out or "0"

    # -- subspaces ----------------------------------------------------------

    def span_closure(self, vectors: list[np.ndarray], left=(), right=()) -> np.ndarray:
        """Smallest subspace containing ``vectors`` and closed under left
        multiplication by ``left`` and right multiplication by ``right``.
        Returns a basis as columns."""
        f = self.field
        if not vectors:
            return f.zeros((self.dim, 0))
        basis = exact.column_basis(np.stack(vectors, axis=1), f)
        lmats = [self.left_matrix(g) for g in left]
        rmats = [self.right_matrix(g) for g in right]
        while True:
            new = [basis] + [f.matmul(m, basis) for m in lmats + rmats]
            grown = exact.column_basis(np.concatenate(new, axis=1), f)
            if grown.shape[1] == basis.shape[1]:
                return basis
            basis = grown

    def subalgebra(self, gens: list[np.ndarray]) -> np.ndarray:
        return self.span_closure([self.unit] + list(gens), right=gens)

    def ideal(self, gens: list[np.ndarray]) -> np.ndarray:
        g = self.generators
        return self.span_closure(list(gens), left=g, right=g)

    @property
    def generators(self) -> list[np.ndarray]:
        if self._generators is None:
            self._generators = self._greedy_generators()
        return self._generators

    def _greedy_generators(self) -> list[np.ndarray]:
        gens: list[np.ndarray] = []
        current = self.subalgebra([])
        for i in range(self.dim):
            if current.shape[1] == self.dim:
                break
            b = self.basis_vector(i)
            if exact.rank(np.concatenate([current, b[:, None]], axis=1), self.field) > current.shape[1]:
                gens.append(b)
                current = self.subalgebra(gens)
        return gens

    def ideal_product(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        """Column basis of the span of products ``u_i * v_j``."""
        f = self.field
        if u.shape[1] == 0 or v.shape[1] == 0:
            return f.zeros((self.dim, 0))
        prods = [self.mul(u[:, i], v[:, j]) for i in range(u.shape[1]) for j in range(v.shape[1])]
        return exact.column_basis(np.stack(prods, axis=1), f)

    def is_nilpotent_ideal(self, ideal: np.ndarray) -> bool:
        power = ideal
        for _ in range(self.dim + 1):
            if power.shape[1] == 0:
                return True
            power = self.ideal_product(power, ideal)
        return power.shape[1] == 0

    # -- derived algebras ---------------------------------------------------

    def opposite(self) -> "Algebra":
        if self._opposite is None:
            op = Algebra(self.field, self.struct.transpose(1, 0, 2), self.unit, self.labels,
                         generators=self._generators, vertex_idempotents=self.vertex_idempotents,
                         name=f"{self.name}^op" if self.name else "")
            op._opposite = self
            self._opposite = op
        return self._opposite

    def same_structure(self, other: "Algebra") -> bool:
        return (self.field == other.field and self.dim == other.dim
                and np.array_equal(self.struct, other.struct)
                and np.array_equal(self.unit, other.unit))


def check_algebra(A: Algebra) -> AlgebraCheck:
    """Verify associativity on all basis triples and the two-sided unit."""
    f = A.field
    c = A.struct
    if f.is_finite:
        c64 = c.astype(np.int64)
        lhs = np.einsum("ijk,klm->ijlm", c64, c64) % f.p
        rhs = np.einsum("jlk,ikm->ijlm", c64, c64) % f.p
    else:
        lhs = np.einsum("ijk,klm->ijlm", c, c)
        rhs = np.einsum("jlk,ikm->ijlm", c, c)
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        i, j, l, _ = (int(t) for t in bad[0])
        names = (A.labels[i], A.labels[j], A.labels[l])
        return AlgebraCheck(False, f"associativity fails at {names}", (i, j, l))
    for i in range(A.dim):
        b = A.basis_vector(i)
        if not np.array_equal(A.mul(A.unit, b), b):
            return AlgebraCheck(False, f"unit fails on the left at {A.labels[i]}", (i,))
        if not np.array_equal(A.mul(b, A.unit), b):
            return AlgebraCheck(False, f"unit fails on the right at {A.labels[i]}", (i,))
    return AlgebraCheck(True)


def multiply(A: Algebra, x, y) -> np.ndarray:
    return A.mul(np.asarray(x, dtype=A.field.dtype), np.asarray(y, dtype=A.field.dtype))


def algebra_from_basis(A: Algebra, basis: np.ndarray, unit: np.ndarray, labels=None, name="") -> Algebra:
    """Subalgebra (or corner) spanned by the columns of ``basis``, with its own unit."""
    f = A.field
    coords = Coordinates(basis, f)
    m = basis.shape[1]
    struct = f.zeros((m, m, m))
    for i in range(m):
        left = A.left_matrix(basis[:, i])
        prods = f.matmul(left, basis)
        struct[i] = coords.coords(prods).T
    return Algebra(f, struct, coords.coords(unit), labels=labels, name=name)


def center_basis(A: Algebra) -> list[np.ndarray]:
    f = A.field
    blocks = [f.normalize(A.right_matrix(g) - A.left_matrix(g)) for g in A.generators]
    if not blocks:
        return [A.basis_vector(i) for i in range(A.dim)]
    return exact.kernel_basis(np.concatenate(blocks, axis=0), f)


def corner(A: Algebra, e: np.ndarray):
    """The corner algebra ``eAe`` (unit ``e``) and its inclusion matrix into A."""
    f = A.field
    e = np.asarray(e, dtype=f.dtype)
    if not A.is_idempotent(e):
        raise NotIdempotent("element is not idempotent")
    proj = f.matmul(A.left_matrix(e), A.right_matrix(e))
    basis = exact.column_basis(proj, f)
    if basis.shape[1] == 0:
        return Algebra(f, f.zeros((0, 0, 0)), f.zeros(0), name="0"), basis
    labels = [A.fmt(basis[:, i]) for i in range(basis.shape[1])]
    C = algebra_from_basis(A, basis, e, labels=labels)
    return C, basis


def opposite(A: Algebra) -> Algebra:
    return A.opposite()


def tensor_product(A: Algebra, B: Algebra) -> Algebra:
    if A.field != B.field:
        raise ValueError("tensor product over different fields")
    f = A.field
    n, m = A.dim, B.dim
    if f.is_finite:
        st = np.einsum("ikr,jls->ijklrs", A.struct, B.struct) % f.p
    else:
        st = np.einsum("ikr,jls->ijklrs", A.struct, B.struct)
    st = st.transpose(0, 1, 2, 3, 4, 5).reshape(n, m, n, m, n * m).reshape(n * m, n * m, n * m)
    unit = f.normalize(np.outer(A.unit, B.unit).reshape(-1))
    labels = [f"{a}(x){b}" for a in A.labels for b in B.labels]
    gens = [f.normalize(np.outer(g, B.unit).reshape(-1)) for g in A.generators]
    gens += [f.normalize(np.outer(A.unit, h).reshape(-1)) for h in B.generators]
    return Algebra(f, st, unit, labels=labels, generators=gens,
                   name=f"{A.name}(x){B.name}" if A.name or B.name else "")


def enveloping(A: Algebra) -> Algebra:
    return tensor_product(A, A.opposite())


def ground_field_algebra(f: Field) -> Algebra:
    return Algebra(f, f.array([[[1]]]), f.array([1]), labels=["1"], name="k")


def quotient_algebra(A: Algebra, ideal: np.ndarray):
    """``A / I`` for a two-sided ideal ``I`` (columns).  Returns
    ``(Q, section, projection)``: ``section`` lifts Q-coordinates to A,
    ``projection`` maps A-coordinates onto Q."""
    f = A.field
    n = A.dim
    k = ideal.shape[1]
    full = np.concatenate([ideal, f.eye(n)], axis=1)
    _, pivots, _ = exact.rref(full, f)
    comp_idx = [p - k for p in pivots if p >= k]
    section = f.eye(n)[:, comp_idx]
    coords = Coordinates(full[:, pivots], f)
    projection = _full_coords(coords, full[:, pivots], f)[k:]
    m = len(comp_idx)
    struct = f.zeros((m, m, m))
    for i in range(m):
        prods = f.matmul(A.left_matrix(section[:, i]), section)
        struct[i] = f.matmul(projection, prods).T
    Q = Algebra(f, struct, f.matmul(projection, A.unit), labels=[A.labels[i] for i in comp_idx])
    return Q, section, projection


# -- minimal polynomials and splitting -----------------------------------------


def minimal_polynomial(A: Algebra, x: np.ndarray) -> list:
    """Monic minimal polynomial of ``x``, coefficients from the constant term up."""
    f = A.field
    powers = [A.unit]
    while True:
        nxt = A.mul(powers[-1], x)
        mat = np.stack(powers, axis=1)
        sol = exact.solve_linear(mat, nxt, f)
        if sol is not None:
            coeffs = [f.normalize(-c) if f.is_finite else -c for c in sol]
            return [int(c) if f.is_finite else c for c in coeffs] + [f.one]
        powers.append(nxt)


def _sympy_poly(coeffs, f: Field):
    t = sympy.Symbol("t")
    if f.is_finite:
        return sympy.Poly(list(reversed([int(c) for c in coeffs])), t, modulus=f.p), t
    rat = [sympy.Rational(int(c.numerator), int(c.denominator)) for c in coeffs]
    return sympy.Poly(list(reversed(rat)), t, domain=sympy.QQ), t


def _eval_poly(A: Algebra, poly: sympy.Poly, x: np.ndarray) -> np.ndarray:
    f = A.field
    result = A.zero()
    for c in poly.all_coeffs():
        if f.is_finite:
            c = int(c) % f.p
        else:
            c = f.scalar(sympy.Rational(c).p) / f.scalar(sympy.Rational(c).q)
        result = f.normalize(A.mul(result, x) + c * A.unit)
    return result


def _crt_idempotents(A: Algebra, x: np.ndarray, minpoly: list):
    """Orthogonal idempotents of k[x] from the coprime factorization of the
    minimal polynomial, or ``None`` if it is a power of one irreducible."""
    f = A.field
    m, t = _sympy_poly(minpoly, f)
    _, factors = m.factor_list()
    if len(factors) < 2:
        return None
    idems = []
    for fac, mult in factors:
        g = fac ** mult
        h = sympy.div(m, g)[0]
        s, _, one = sympy.gcdex(h, g)
        if one.degree() != 0:
            raise ArithmeticError("factors not coprime")
        s = sympy.div(s, one)[0]
        poly = sympy.rem(s * h, m)
        idems.append(_eval_poly(A, sympy.Poly(poly, t, **_domain_kw(f)), x))
    return idems


def _domain_kw(f: Field):
    return {"modulus": f.p} if f.is_finite else {"domain": sympy.QQ}


def _candidates(A: Algebra, rng: np.random.Generator, trials: int):
    for i in range(A.dim):
        yield A.basis_vector(i)
    for _ in range(trials):
        if A.field.is_finite:
            yield A.field.random_array(rng, A.dim)
        else:
            yield A.field.random_array(rng, A.dim, span=4)


def _frobenius_power_matrix(A: Algebra, k: int) -> np.ndarray:
    """Matrix of x -> x^(p^k) on a commutative algebra over F_p (linear there)."""
    f = A.field
    q = f.p ** k
    cols = [A.power(A.basis_vector(i), q) for i in range(A.dim)]
    return np.stack(cols, axis=1) if cols else f.zeros((0, 0))


def _commutative_nilradical(A: Algebra) -> np.ndarray:
    """Nilradical of a commutative algebra over F_p: kernel of a high Frobenius power."""
    f = A.field
    k = 1
    while f.p ** k < max(A.dim, 2):
        k += 1
    return exact.kernel_matrix(_frobenius_power_matrix(A, k), f)


def _local_radical_small_char(C: Algebra):
    """Radical of C assuming C/rad is commutative: preimage of the nilradical of
    C modulo its commutator ideal.  Returns ``None`` if the commutator ideal is
    not nilpotent (then C/rad is not commutative)."""
    f = C.field
    comms = [f.normalize(C.mul(C.basis_vector(i), C.basis_vector(j)) - C.mul(C.basis_vector(j), C.basis_vector(i)))
             for i in range(C.dim) for j in range(i + 1, C.dim)]
    comms = [c for c in comms if not is_zero(c)]
    comm_ideal = C.ideal(comms) if comms else f.zeros((C.dim, 0))
    if not C.is_nilpotent_ideal(comm_ideal):
        return None
    if comm_ideal.shape[1] == 0:
        nil = _commutative_nilradical(C)
        return nil
    Q, section, projection = quotient_algebra(C, comm_ideal)
    nil = _commutative_nilradical(Q)
    lifted = [section @ nil[:, i] for i in range(nil.shape[1])]
    cols = [comm_ideal] + ([f.normalize(np.stack(lifted, axis=1))] if lifted else [])
    return exact.column_basis(np.concatenate(cols, axis=1), f)


def _trace_radical(A: Algebra) -> np.ndarray:
    """Dickson's criterion: rad = {x : Tr(L_{xy}) = 0 for all y}; valid in
    characteristic 0 and characteristic p > dim."""
    f = A.field
    n = A.dim
    if n == 0:
        return f.zeros((0, 0))
    # tr[k] = trace of left multiplication by b_k
    tr = np.array([sum(A.struct[k, j, j] for j in range(n)) for k in range(n)], dtype=f.dtype)
    tr = f.normalize(tr)
    # gram[i, j] = Tr(L_{b_i b_j}) = sum_k struct[i,j,k] tr[k]
    gram = np.tensordot(A.struct, tr, axes=(2, 0))
    gram = f.normalize(gram)
    return exact.kernel_matrix(np.ascontiguousarray(gram.T), f)


def _trace_valid(A: Algebra) -> bool:
    c = A.field.characteristic
    return c == 0 or c > A.dim


def is_local(C: Algebra) -> bool:
    """Whether C/rad(C) is a division algebra (decided exactly for
    commutative residue algebras; non-commutative residues report False)."""
    f = C.field
    if C.dim == 0:
        return False
    if C.dim == 1:
        return True
    if f.is_finite:
        rad = _local_radical_small_char(C)
        if rad is None:
            return False
    else:
        rad = _trace_radical(C)
    Q, _, _ = quotient_algebra(C, rad)
    for i in range(Q.dim):
        for j in range(Q.dim):
            if not Q.commutes(Q.basis_vector(i), Q.basis_vector(j)):
                return False
    if f.is_finite:
        # components of a commutative semisimple F_p-algebra = dim of Frobenius fixed points
        frob = _frobenius_power_matrix(Q, 1)
        fixed = exact.kernel_basis(f.normalize(frob - f.eye(Q.dim)), f)
        return len(fixed) == 1
    rng = np.random.default_rng(DEFAULT_SEED)
    for x in _candidates(Q, rng, 16):
        mp = minimal_polynomial(Q, x)
        poly, _ = _sympy_poly(mp, f)
        if poly.degree() == Q.dim:
            return poly.is_irreducible
    raise DecompositionFailed("could not certify the residue algebra is a field")


def _split(A: Algebra, e: np.ndarray, rng, trials: int) -> list[np.ndarray]:
    C, incl = corner(A, e)
    if C.dim == 1:
        return [e]
    for x in _candidates(C, rng, trials):
        mp = minimal_polynomial(C, x)
        if len(mp) <= 2:
            continue
        idems = _crt_idempotents(C, x, mp)
        if idems is None:
            continue
        out = []
        for idem in idems:
            out.extend(_split(A, A.field.normalize(A.field.matmul(incl, idem)), rng, trials))
        return out
    if is_local(C):
        return [e]
    raise DecompositionFailed("no splitting element found for a non-local corner")


def primitive_idempotents(A: Algebra, seed: int = DEFAULT_SEED, trials: int = 64) -> list[np.ndarray]:
    """Complete set of orthogonal primitive idempotents summing to 1.

    Vertex idempotents attached to the algebra are used when they are verified
    to be orthogonal, complete and primitive.  Otherwise idempotents are split
    off with minimal polynomials of (seeded random) corner elements; each leaf
    is certified local.
    """
    hint = A.vertex_idempotents
    if hint is not None and _is_complete_orthogonal(A, hint):
        if all(is_local(corner(A, e)[0]) for e in hint):
            return [np.array(e, copy=True) for e in hint]
    rng = np.random.default_rng(seed)
    if A.dim == 0:
        return []
    return _split(A, A.unit.copy(), rng, trials)


def _is_complete_orthogonal(A: Algebra, idems) -> bool:
    if not idems:
        return False
    total = A.field.normalize(sum(idems[1:], idems[0]))
    if not np.array_equal(total, A.unit):
        return False
    for i, e in enumerate(idems):
        if is_zero(e) or not A.is_idempotent(e):
            return False
        for j, g in enumerate(idems):
            if i != j and not is_zero(A.mul(e, g)):
                return False
    return True


def peirce_basis(A: Algebra, e: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Column basis of ``e A g``."""
    f = A.field
    proj = f.matmul(A.left_matrix(e), A.right_matrix(g))
    return exact.column_basis(proj, f)


@dataclass
class Decomposition:
    """Primitive idempotents grouped into isomorphism classes, with the radical."""

    idempotents: list
    classes: list  # class index per idempotent
    representatives: list  # index of the first idempotent in each class
    radical: np.ndarray
    local_radicals: list = dc_field(default_factory=list)

    @property
    def simples(self) -> int:
        return len(self.representatives)


def _radical_from_idempotents(A: Algebra, idems):
    f = A.field
    n = len(idems)
    corners = [corner(A, e) for e in idems]
    local_rads = []
    for C, incl in corners:
        if _trace_valid(C):
            r = _trace_radical(C)
        else:
            r = _local_radical_small_char(C)
            if r is None:
                raise DecompositionFailed("corner of a primitive idempotent is not local")
        local_rads.append(f.normalize(f.matmul(incl, r)) if r.shape[1] else f.zeros((A.dim, 0)))
    blocks = {(i, j): peirce_basis(A, idems[i], idems[j]) for i in range(n) for j in range(n)}

    def in_local_rad(i, v):
        if local_rads[i].shape[1] == 0:
            return is_zero(v)
        return Coordinates(local_rads[i], f).contains(v)

    # isomorphism classes: e_i ~ e_j iff e_i A e_j * e_j A e_i is not inside rad(e_i A e_i)
    classes = [-1] * n
    reps = []
    for i in range(n):
        if classes[i] >= 0:
            continue
        classes[i] = len(reps)
        reps.append(i)
        for j in range(i + 1, n):
            if classes[j] >= 0:
                continue
            x, y = blocks[(i, j)], blocks[(j, i)]
            iso = any(not in_local_rad(i, A.mul(x[:, a], y[:, b]))
                      for a in range(x.shape[1]) for b in range(y.shape[1]))
            if iso:
                classes[j] = classes[i]
    pieces = []
    for i in range(n):
        for j in range(n):
            blk = blocks[(i, j)]
            if blk.shape[1] == 0:
                continue
            if i == j:
                pieces.append(local_rads[i])
            elif classes[i] != classes[j]:
                pieces.append(blk)
            else:
                # x in e_i A e_j lies in rad iff x * e_j A e_i lands in rad(e_i A e_i)
                other = blocks[(j, i)]
                eqs = []
                comp = _complement_functionals(corners[i][1], local_rads[i], f)
                for b in range(other.shape[1]):
                    cols = [A.mul(blk[:, a], other[:, b]) for a in range(blk.shape[1])]
                    img = np.stack(cols, axis=1)
                    eqs.append(f.matmul(comp, img))
                ker = exact.kernel_matrix(np.concatenate(eqs, axis=0), f)
                if ker.shape[1]:
                    pieces.append(f.matmul(blk, ker))
    pieces = [p for p in pieces if p.shape[1]]
    if not pieces:
        rad = f.zeros((A.dim, 0))
    else:
        rad = exact.column_basis(np.concatenate(pieces, axis=1), f)
    return rad, classes, reps, local_rads


def _complement_functionals(corner_basis: np.ndarray, sub: np.ndarray, f: Field) -> np.ndarray:
    """Functionals (rows) on the span of ``corner_basis`` whose common kernel there is ``sub``."""
    coords = Coordinates(corner_basis, f)
    full = _full_coords(coords, corner_basis, f)
    if sub.shape[1] == 0:
        return full
    sub_c = f.matmul(full, sub)
    ann = exact.kernel_matrix(np.ascontiguousarray(sub_c.T), f)
    return f.matmul(np.ascontiguousarray(ann.T), full)


def _full_coords(coords: Coordinates, basis: np.ndarray, f: Field) -> np.ndarray:
    """Matrix sending an ambient vector in the span to its coordinates."""
    n, m = basis.shape
    out = f.zeros((m, n))
    out[:, coords._rows] = coords._left
    return out


def decompose(A: Algebra, seed: int = DEFAULT_SEED) -> Decomposition:
    """Primitive idempotents, their isomorphism classes and the radical.
    Cached per algebra and seed (algebras are treated as immutable)."""
    cache = A.__dict__.setdefault("_decompositions", {})
    if seed not in cache:
        idems = primitive_idempotents(A, seed=seed)
        rad, classes, reps, local = _radical_from_idempotents(A, idems)
        if _trace_valid(A):
            rad = _trace_radical(A)
        cache[seed] = Decomposition(idems, classes, reps, rad, local)
    return cache[seed]


def radical_basis(A: Algebra, method: str = "auto") -> list[np.ndarray]:
    """Basis of the Jacobson radical.

    ``method="trace"`` uses the trace-form kernel, which is only valid in
    characteristic 0 or p > dim A.  ``method="idempotents"`` assembles the
    radical Peirce-block by block from a primitive decomposition and works in
    any characteristic.  ``auto`` picks the trace form where it is valid.
    """
    if method == "trace" or (method == "auto" and _trace_valid(A)):
        if not _trace_valid(A):
            raise UnsupportedCharacteristic(
                f"trace-form radical needs char 0 or p > {A.dim}, got p = {A.field.characteristic}")
        rad = _trace_radical(A)
    else:
        rad, *_ = _radical_from_idempotents(A, primitive_idempotents(A))
    return [rad[:, i] for i in range(rad.shape[1])]


def radical_matrix(A: Algebra) -> np.ndarray:
    vecs = radical_basis(A)
    if not vecs:
        return A.field.zeros((A.dim, 0))
    return np.stack(vecs, axis=1)


def cartan_matrix(A: Algebra, dec: Decomposition | None = None) -> list[list[int]]:
    """``C[i][j]`` = multiplicity of the j-th simple in the i-th indecomposable
    projective ``A e_i``, i.e. ``dim e_j A e_i / dim End(S_j)``."""
    dec = dec or decompose(A)
    reps = [dec.idempotents[r] for r in dec.representatives]
    ends = []
    for r in dec.representatives:
        C, _ = corner(A, dec.idempotents[r])
        ends.append(C.dim - dec.local_radicals[r].shape[1])
    return [[peirce_basis(A, reps[j], reps[i]).shape[1] // ends[j] for j in range(len(reps))]
            for i in range(len(reps))]


@dataclass
class Invariants:
    dim: int
    simples: int
    center_dim: int
    radical_dim: int
    cartan: list
    cartan_det: int
    cartan_snf: list

    def fingerprint(self) -> tuple:
        return (self.dim, self.center_dim, tuple(self.cartan_snf), self.simples)


def invariants(A: Algebra) -> Invariants:
    dec = decompose(A)
    cart = cartan_matrix(A, dec)
    diag, _, _ = exact.smith_normal_form(cart)
    return Invariants(A.dim, dec.simples, len(center_basis(A)), dec.radical.shape[1],
                      cart, exact.int_det(cart), diag)


@dataclass
class SymmetricCheck:
    is_symmetric: bool
    functional: np.ndarray | None = None
    gram: np.ndarray | None = None
    space_dim: int = 0
    detail: str = ""

    def __bool__(self):
        return self.is_symmetric


def is_symmetric_algebra(A: Algebra, seed: int = DEFAULT_SEED, budget: int = 1 << 16) -> SymmetricCheck:
    """Search for a nondegenerate symmetric associative form.

    Associative forms are ``<a, b> = t(ab)``; symmetry means ``t`` kills all
    commutators, a linear condition.  Nondegeneracy is then searched on that
    solution space.
    """
    f = A.field
    n = A.dim
    # t . (b_i b_j - b_j b_i) = 0
    comm = f.normalize(A.struct - A.struct.transpose(1, 0, 2)).reshape(n * n, n)
    space = exact.kernel_basis(comm, f)
    s = len(space)
    if s == 0:
        return SymmetricCheck(False, space_dim=0, detail="no symmetric associative forms")
    grams = [f.normalize(np.tensordot(A.struct, t, axes=(2, 0))) for t in space]

    def try_coeffs(coeffs):
        t = f.normalize(sum(c * v for c, v in zip(coeffs, space)))
        g = f.normalize(sum(c * m for c, m in zip(coeffs, grams)))
        if exact.det(g, f) != 0:
            return SymmetricCheck(True, t, g, s)
        return None

    rng = np.random.default_rng(seed)
    if f.is_finite:
        total = f.p ** s
        if s <= 4 and total <= budget:
            for idx in range(total):
                coeffs = [(idx // f.p ** k) % f.p for k in range(s)]
                hit = try_coeffs(coeffs)
                if hit:
                    return hit
            return SymmetricCheck(False, space_dim=s, detail="exhaustive: every form degenerate")
        for _ in range(64):
            hit = try_coeffs([int(c) for c in f.random_array(rng, s)])
            if hit:
                return hit
        if total <= budget:
            for idx in range(total):
                coeffs = [(idx // f.p ** k) % f.p for k in range(s)]
                hit = try_coeffs(coeffs)
                if hit:
                    return hit
            return SymmetricCheck(False, space_dim=s, detail="exhaustive: every form degenerate")
        raise RuntimeError("symmetric-form search space exceeds budget")
    for coeffs in ([1] * s,) + tuple(tuple(int(c) for c in rng.integers(-50, 51, size=s)) for _ in range(64)):
        hit = try_coeffs([f.scalar(c) for c in coeffs])
        if hit:
            return hit
    # decide exactly: determinant of the generic combination as a polynomial
    syms = sympy.symbols(f"c0:{s}")
    gm = sympy.zeros(n, n)
    for c, m in zip(syms, grams):
        gm += c * sympy.Matrix(n, n, [sympy.Rational(int(x.numerator), int(x.denominator)) for x in m.flat])
    if sympy.expand(gm.det()) == 0:
        return SymmetricCheck(False, space_dim=s, detail="generic determinant vanishes identically")
    raise RuntimeError("generic determinant nonzero but no witness found")  # pragma: no cover


def idempotent_from_vertices(A: Algebra, names: list[str]) -> np.ndarray:
    """Sum of the named vertex idempotents of a compiled quiver algebra."""
    if A.vertex_idempotents is None or not hasattr(A, "vertex_names"):
        raise ValueError("algebra carries no vertex idempotents")
    f = A.field
    e = A.zero()
    for name in names:
        if name not in A.vertex_names:
            raise KeyError(f"unknown vertex {name!r}")
        e = f.normalize(e + A.vertex_idempotents[A.vertex_names.index(name)])
    return e
