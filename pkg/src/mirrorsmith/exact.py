"""Exact dense linear algebra over Q and prime fields, and integer Smith normal form.

Matrices are plain numpy arrays.  Over F_p they have dtype int64 with entries
in ``0..p-1``; over Q they are object arrays of ``gmpy2.mpq``.  Every routine
takes the field explicitly, so the arrays themselves stay lightweight.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import gmpy2
import numpy as np
from sympy import isprime


class FieldMismatch(ValueError):
    """An array does not hold canonical elements of the expected field."""


class Field:
    characteristic: int
    dtype: object

    def array(self, data) -> np.ndarray:
        raise NotImplementedError

    def zeros(self, shape) -> np.ndarray:
        raise NotImplementedError

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.one
        return out

    def scalar(self, x):
        raise NotImplementedError

    def normalize(self, arr: np.ndarray) -> np.ndarray:
        return arr

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def fmt(self, x) -> str:
        raise NotImplementedError

    def check(self, m: np.ndarray) -> None:
        raise NotImplementedError

    @property
    def is_finite(self) -> bool:
        return self.characteristic != 0


@dataclass(frozen=True)
class PrimeField(Field):
    p: int

    def __post_init__(self):
        if not isprime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.p >= 2**31:
            raise ValueError("prime fields are limited to p < 2^31")

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def dtype(self):
        return np.int64

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    @property
    def size(self) -> int:
        return self.p

    def __str__(self) -> str:
        return f"F{self.p}"

    def scalar(self, x) -> int:
        if isinstance(x, (Fraction, type(gmpy2.mpq()))):
            num, den = int(x.numerator), int(x.denominator)
            if den % self.p == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return num * pow(den, -1, self.p) % self.p
        return int(x) % self.p

    def array(self, data) -> np.ndarray:
        arr = np.array(data, dtype=object)
        if arr.size and any(isinstance(v, (Fraction, type(gmpy2.mpq()))) for v in arr.flat):
            arr = np.vectorize(self.scalar, otypes=[object])(arr)
        return np.array(arr, dtype=np.int64) % self.p

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64)

    def normalize(self, arr: np.ndarray) -> np.ndarray:
        return np.asarray(arr, dtype=np.int64) % self.p

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        inner = a.shape[-1] if a.ndim else 1
        if inner * (self.p - 1) ** 2 < 2**62:
            return (a @ b) % self.p
        return np.asarray((a.astype(object) @ b.astype(object)) % self.p, dtype=np.int64)

    def inv(self, x) -> int:
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, self.p - 2, self.p)

    def fmt(self, x) -> str:
        return str(int(x) % self.p)

    def check(self, m: np.ndarray) -> None:
        if m.dtype.kind not in "iu":
            raise FieldMismatch(f"expected integer residues for {self}, got dtype {m.dtype}")
        if m.size and (m.min() < 0 or m.max() >= self.p):
            raise FieldMismatch(f"entries outside 0..{self.p - 1}")

    def elements(self):
        return range(self.p)

    def random_array(self, rng: np.random.Generator, shape) -> np.ndarray:
        return rng.integers(0, self.p, size=shape, dtype=np.int64)


class RationalField(Field):
    characteristic = 0
    dtype = object
    zero = gmpy2.mpq(0)
    one = gmpy2.mpq(1)
    size = None

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"

    def __str__(self):
        return "Q"

    def scalar(self, x):
        if isinstance(x, str):
            return gmpy2.mpq(Fraction(x))
        if isinstance(x, Fraction):
            return gmpy2.mpq(x.numerator, x.denominator)
        return gmpy2.mpq(x)

    def array(self, data) -> np.ndarray:
        arr = np.array(data, dtype=object)
        flat = [self.scalar(v) for v in arr.flat]
        out = np.empty(arr.shape, dtype=object)
        if flat:
            out.flat[:] = flat
        return out

    def zeros(self, shape) -> np.ndarray:
        out = np.empty(shape, dtype=object)
        out.fill(self.zero)
        return out

    def matmul(self, a, b):
        return a @ b

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / gmpy2.mpq(x)

    def fmt(self, x) -> str:
        q = gmpy2.mpq(x)
        if q.denominator == 1:
            return str(q.numerator)
        return f"{q.numerator}/{q.denominator}"

    def check(self, m: np.ndarray) -> None:
        if m.dtype != object:
            raise FieldMismatch(f"expected rational object array, got dtype {m.dtype}")

    def random_array(self, rng: np.random.Generator, shape, span: int = 3) -> np.ndarray:
        ints = rng.integers(-span, span + 1, size=shape)
        return self.array(ints)


QQ = RationalField()


def field_from_name(name: str) -> Field:
    """Parse ``Q`` or ``F<p>`` (also accepts ``GF<p>``)."""
    name = name.strip()
    if name in ("Q", "QQ"):
        return QQ
    for prefix in ("GF", "F"):
        if name.startswith(prefix) and name[len(prefix):].isdigit():
            return PrimeField(int(name[len(prefix):]))
    raise ValueError(f"unknown field {name!r}; use Q or F<p>")


def is_zero(m: np.ndarray) -> bool:
    return not np.any(m != 0)


def rref(m: np.ndarray, field: Field):
    """Reduced row echelon form.

    Returns ``(R, pivots, rank)``.  The pivot in each column is taken from the
    first row at or below the current one with a nonzero entry, so the result
    is a deterministic function of the input.
    """
    field.check(m)
    a = np.array(m, dtype=field.dtype, copy=True)
    if a.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    finite = field.is_finite
    p = field.characteristic
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        piv = a[r, c]
        if piv != 1:
            a[r] = a[r] * field.inv(piv)
            if finite:
                a[r] %= p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            a[hit] = a[hit] - np.outer(col[hit], a[r])
            if finite:
                a[hit] %= p
        pivots.append(c)
        r += 1
    return a, pivots, r


def rank(m: np.ndarray, field: Field) -> int:
    if m.size == 0:
        return 0
    return rref(m, field)[2]


def kernel_basis(m: np.ndarray, field: Field) -> list[np.ndarray]:
    """Basis of the right null space ``{v : m v = 0}``, one vector per free column."""
    rows, cols = m.shape
    if rows == 0:
        return [field.eye(cols)[:, j] for j in range(cols)]
    red, pivots, _ = rref(m, field)
    pivset = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivset:
            continue
        v = field.zeros(cols)
        v[free] = field.one
        for row, pc in enumerate(pivots):
            v[pc] = -red[row, free]
        basis.append(field.normalize(v))
    return basis


def kernel_matrix(m: np.ndarray, field: Field) -> np.ndarray:
    """Kernel basis stacked as columns (shape ``cols x nullity``)."""
    basis = kernel_basis(m, field)
    if not basis:
        return field.zeros((m.shape[1], 0))
    return np.stack(basis, axis=1)


def solve_linear(m: np.ndarray, b: np.ndarray, field: Field):
    """One solution of ``m x = b`` with free variables set to zero, or ``None``."""
    rows, cols = m.shape
    b = np.asarray(b, dtype=field.dtype).reshape(rows, -1)
    aug = np.concatenate([m, b], axis=1)
    red, pivots, rk = rref(aug, field)
    if any(pc >= cols for pc in pivots):
        return None
    x = field.zeros((cols, b.shape[1]))
    for row, pc in enumerate(pivots):
        x[pc] = red[row, cols:]
    return x[:, 0] if b.shape[1] == 1 else x


def column_basis(m: np.ndarray, field: Field) -> np.ndarray:
    """Columns of ``m`` at the pivot positions: a basis of its column space."""
    if m.shape[1] == 0:
        return m
    _, pivots, _ = rref(m, field)
    return m[:, pivots]


def row_space(m: np.ndarray, field: Field) -> np.ndarray:
    """Nonzero rows of the rref: a canonical basis of the row space."""
    if m.shape[0] == 0:
        return m
    red, _, rk = rref(m, field)
    return red[:rk]


def inverse(m: np.ndarray, field: Field) -> np.ndarray:
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    red, pivots, rk = rref(np.concatenate([m, field.eye(n)], axis=1), field)
    if rk < n or pivots[n - 1] != n - 1:
        raise ZeroDivisionError("matrix is singular")
    return red[:, n:]


def det(m: np.ndarray, field: Field):
    """Determinant by elimination, tracking swaps and scalings."""
    a = np.array(m, dtype=field.dtype, copy=True)
    n = a.shape[0]
    result = field.one
    finite = field.is_finite
    p = field.characteristic
    for c in range(n):
        nz = np.nonzero(a[c:, c])[0]
        if nz.size == 0:
            return field.zero
        i = c + int(nz[0])
        if i != c:
            a[[c, i]] = a[[i, c]]
            result = -result
        piv = a[c, c]
        result = result * piv
        inv = field.inv(piv)
        below = a[c + 1:, c] * inv
        if finite:
            below %= p
        a[c + 1:] = a[c + 1:] - np.outer(below, a[c])
        if finite:
            a[c + 1:] %= p
    if finite:
        return int(result) % p
    return result


class Coordinates:
    """Coordinates with respect to a fixed set of independent column vectors.

    ``coords(v)`` returns ``x`` with ``basis @ x == v``; membership in the span
    is checked unless ``check=False``.
    """

    def __init__(self, basis: np.ndarray, field: Field):
        self.basis = basis
        self.field = field
        n, r = basis.shape
        self.dim = r
        if r == 0:
            self._rows = []
            self._left = field.zeros((0, 0))
            return
        _, rows, rk = rref(np.ascontiguousarray(basis.T), field)
        if rk != r:
            raise ValueError("basis vectors are linearly dependent")
        self._rows = rows
        self._left = inverse(basis[rows, :], field)

    def coords(self, v: np.ndarray, check: bool = True) -> np.ndarray:
        f = self.field
        if self.dim == 0:
            if check and not is_zero(v):
                raise ValueError("vector is not in the span")
            shape = (0,) + tuple(np.shape(v)[1:])
            return f.zeros(shape)
        x = f.matmul(self._left, v[self._rows])
        if check and not np.array_equal(f.matmul(self.basis, x), np.asarray(v, dtype=f.dtype)):
            raise ValueError("vector is not in the span")
        return x

    def contains(self, v: np.ndarray) -> bool:
        try:
            self.coords(v)
        except ValueError:
            return False
        return True


# --- integers -----------------------------------------------------------------


def _int_matrix(m) -> list[list[int]]:
    return [[int(x) for x in row] for row in m]


def _matmul_int(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]) if b else 0)]
            for i in range(len(a))]


def smith_normal_form(m):
    """Smith normal form of an integer matrix.

    Returns ``(diag, L, R)`` with ``L @ m @ R`` equal to the diagonal matrix,
    ``L`` and ``R`` unimodular, and ``diag`` a list of nonnegative invariant
    factors with each dividing the next.
    """
    a = _int_matrix(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    left = [[int(i == j) for j in range(rows)] for i in range(rows)]
    right = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):
        # row dst += k * row src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        left[dst] = [x + k * y for x, y in zip(left[dst], left[src])]

    def add_col(src, dst, k):
        for row in a:
            row[dst] += k * row[src]
        for row in right:
            row[dst] += k * row[src]

    t = 0
    while t < min(rows, cols):
        entries = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(t, i, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(t, j, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # pivot must divide the whole remaining block
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]
        t += 1
    diag = [a[i][i] for i in range(min(rows, cols))]
    return diag, left, right


def lattice_contains(rows, t) -> bool:
    """Is the integer vector ``t`` an integer combination of ``rows``?"""
    t = [int(v) for v in t]
    rows = _int_matrix(rows)
    if not rows:
        return not any(t)
    kt = [list(col) for col in zip(*rows)]  # columns of K as rows
    diag, left, _ = smith_normal_form(kt)
    lt = [sum(l * v for l, v in zip(row, t)) for row in left]
    for i, v in enumerate(lt):
        d = diag[i] if i < len(diag) else 0
        if (d == 0 and v != 0) or (d != 0 and v % d):
            return False
    return True


def int_det(m) -> int:
    """Exact integer determinant (Bareiss)."""
    a = _int_matrix(m)
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def quotient_map(sub_rows: np.ndarray, n: int, field: Field, order=None):
    """Projection of ``k^n`` onto ``k^n / span(sub_rows)``.

    Returns ``(free, P)``: ``free`` lists the coordinates whose unit vectors
    form the quotient basis, and ``P`` (shape ``len(free) x n``) maps a vector
    to its coordinates on that basis.  ``order`` ranks coordinates; pivots are
    taken greedily in that order, so late coordinates tend to survive.
    """
    f = field
    order = list(range(n)) if order is None else list(order)
    if sub_rows.shape[0] == 0:
        return list(range(n)), f.eye(n)
    perm = np.asarray(order)
    red, piv, rk = rref(sub_rows[:, perm], f)
    pivots = sorted(int(perm[p]) for p in piv)
    rows = f.zeros((rk, n))
    rows[:, perm] = red[:rk]
    full = f.eye(n)
    sel = f.zeros((rk, n))
    for r, p in enumerate(piv):
        sel[r, perm[p]] = f.one
    proj = f.normalize(full - f.matmul(np.ascontiguousarray(rows.T), sel))
    pivset = set(pivots)
    free = [j for j in range(n) if j not in pivset]
    return free, np.ascontiguousarray(proj[free, :])

