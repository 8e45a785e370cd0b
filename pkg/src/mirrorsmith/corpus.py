"""Random test material: small admissible quiver algebras with idempotents
and central levels, and random bounded complexes of projectives.

Every instance is drawn from its own ``numpy`` generator, seeded from a root
seed and the instance index, so instance ``k`` never depends on how many
others were drawn before it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import exact
from .algebra import DEFAULT_SEED, Algebra, center_basis, corner
from .exact import Field, field_from_name
from .quiverlang import (Arrow, NcPoly, NotFiniteDimensional, QuiverPresentation,
                         build_path_algebra)


@dataclass
class CorpusInstance:
    index: int
    presentation: QuiverPresentation
    algebra: Algebra
    e: np.ndarray
    levels: list  # central elements of eAe, in A-coordinates
    units: list  # central units of eAe


def instance_rng(root: int, index: int) -> np.random.Generator:
    return np.random.default_rng([root, index])


def _paths(pres: QuiverPresentation, length: int) -> list:
    out = []
    for word in itertools.product([a.name for a in pres.arrows], repeat=length):
        try:
            pres.endpoints(word)
        except ValueError:
            continue
        out.append(word)
    return out


def random_presentation(rng: np.random.Generator, field: Field, max_vertices: int = 4,
                        max_arrows: int = 6) -> QuiverPresentation:
    """Random quiver with relations killing every path of length three and a
    few random combinations of length-two paths (so the ideal is admissible)."""
    nv = int(rng.integers(1, max_vertices + 1))
    na = int(rng.integers(0, max_arrows + 1))
    verts = [str(i + 1) for i in range(nv)]
    arrows = [Arrow(f"a{k}", verts[int(rng.integers(nv))], verts[int(rng.integers(nv))])
              for k in range(na)]
    pres = QuiverPresentation(field, verts, arrows, [])
    rels = [NcPoly([(1, w)]) for w in _paths(pres, 3)]
    # group length-two paths by endpoints; a relation must be homogeneous in them
    by_ends = {}
    for w in _paths(pres, 2):
        by_ends.setdefault(pres.endpoints(w), []).append(w)
    p = field.p if field.is_finite else 7
    for _, words in sorted(by_ends.items()):
        if rng.random() < 0.5:
            terms = [(int(rng.integers(1, p)), w) for w in words if rng.random() < 0.7]
            if terms:
                rels.append(NcPoly(terms))
    pres.relations = rels
    return pres


def random_central(rng: np.random.Generator, A: Algebra, e: np.ndarray) -> np.ndarray:
    f = A.field
    C, incl = corner(A, e)
    if C.dim == 0:
        return A.zero()
    zs = center_basis(C)
    p = f.p if f.is_finite else 5
    coeffs = [f.scalar(int(c)) for c in rng.integers(0, p, size=len(zs))]
    z = f.normalize(sum((c * v for c, v in zip(coeffs, zs)), f.zeros(C.dim)))
    return f.normalize(f.matmul(incl, z))


def _corner_unit(A: Algebra, e: np.ndarray, lam: np.ndarray) -> bool:
    from .mirror import is_unit_in_corner
    return is_unit_in_corner(A, e, lam)


def random_instance(root: int, index: int, field: Field | str = "F5", max_dim: int = 12,
                    levels: int = 3, tries: int = 64) -> CorpusInstance:
    """One corpus instance.  Algebras above ``max_dim`` are redrawn."""
    f = field_from_name(field) if isinstance(field, str) else field
    rng = instance_rng(root, index)
    for _ in range(tries):
        pres = random_presentation(rng, f)
        try:
            A, _ = build_path_algebra(pres, length_bound=4)
        except NotFiniteDimensional:
            continue
        if A.dim <= max_dim:
            break
    else:
        raise RuntimeError("could not draw a small enough algebra")
    verts = A.vertex_idempotents
    mask = [bool(rng.random() < 0.5) for _ in verts]
    if not any(mask):
        mask[int(rng.integers(len(verts)))] = True
    e = f.normalize(sum((v for v, m in zip(verts, mask) if m), A.zero()))
    lams = [random_central(rng, A, e) for _ in range(levels)]
    lams.append(np.asarray(e, dtype=f.dtype))
    lams.append(A.zero())
    units = [lam for lam in lams if _corner_unit(A, e, lam)]
    for _ in range(8):
        if len(units) >= 2:
            break
        lam = random_central(rng, A, e)
        if _corner_unit(A, e, lam):
            units.append(lam)
    return CorpusInstance(index, pres, A, e, lams, units)


def corpus(n: int, root: int = DEFAULT_SEED, field: Field | str = "F5", max_dim: int = 12):
    for k in range(n):
        yield random_instance(root, k, field, max_dim)


# -- random complexes --------------------------------------------------------------


def random_complex(rng: np.random.Generator, A: Algebra, length: int | None = None,
                   max_mult: int = 2, top: int = 0):
    """Random bounded complex of projectives ending in degree ``top``.

    Differentials are random combinations of radical element matrices,
    each constrained to compose to zero with its predecessor.
    """
    from .homotopy import frame, tagged_complex, term
    from .modrep import hom_basis

    f = A.field
    fr = frame(A)
    reps = fr.representatives
    length = int(rng.integers(1, 4)) if length is None else length
    tags = []
    for _ in range(length):
        mults = rng.integers(0, max_mult + 1, size=len(reps))
        if not mults.any():
            mults[int(rng.integers(len(reps)))] = 1
        tags.append(tuple(r for r, m in zip(reps, mults) for _ in range(int(m))))
    p = f.p if f.is_finite else 3
    diffs = []
    prev = None
    for k in range(length - 1):
        S, T = term(A, tags[k]).module, term(A, tags[k + 1]).module
        homs = [h.matrix for h in hom_basis(S, T)]
        if not homs:
            d = f.zeros((T.dim, S.dim))
        else:
            if prev is not None and prev.size:
                cons = np.stack([f.matmul(h, prev).reshape(-1) for h in homs], axis=1)
                ker = exact.kernel_basis(cons, f)
            else:
                ker = [f.eye(len(homs))[i] for i in range(len(homs))]
            d = f.zeros((T.dim, S.dim))
            for v in ker:
                c = f.scalar(int(rng.integers(0, p)))
                if c != 0:
                    d = d + c * f.normalize(sum((x * h for x, h in zip(v, homs)), f.zeros((T.dim, S.dim))))
            d = f.normalize(d)
        diffs.append(d)
        prev = d
    return tagged_complex(A, top - length + 1, tags, diffs)


def random_chain_map(rng: np.random.Generator, X, Y):
    """Random chain map ``X -> Y`` drawn from a basis of all chain maps."""
    from .homotopy import HomK

    H = HomK(X, Y, 0)
    f = X.field
    p = f.p if f.is_finite else 3
    vec = f.zeros(H.vdim)
    for k in range(H.Z.shape[1]):
        c = f.scalar(int(rng.integers(0, p)))
        if c != 0:
            vec = vec + c * H.Z[:, k]
    return H.chain_map(f.normalize(vec))


def named_field(name: str) -> Field:
    return field_from_name(name)
