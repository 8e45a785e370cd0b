"""Independent reference computations used to freeze expected values.

Nothing here calls into the package's linear algebra: quotients of path
algebras are computed by brute-force path enumeration with sympy matrices,
and module data over k[x]/(x^n) uses the closed forms for uniserial modules.
"""

import itertools
import re

import sympy


def _parse(text):
    verts, arrows, rels = [], {}, []
    state = "head"
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line or line.startswith("field"):
            continue
        if state == "rels":
            if line == "end":
                break
            rels.append(line)
        elif line.startswith("vertex"):
            verts.append(line.split()[1])
        elif line.startswith("arrow"):
            _, name, s, t = line.split()
            arrows[name] = (s, t)
        elif line == "relations":
            state = "rels"
    return verts, arrows, rels


def _expand_word(word):
    out = []
    for factor in word.split("*"):
        factor = factor.strip()
        m = re.fullmatch(r"([A-Za-z][A-Za-z0-9_]*)(?:\^(\d+))?", factor)
        out += [m.group(1)] * int(m.group(2) or 1)
    return tuple(out)


def _relation_terms(rel):
    terms = []
    for sign, body in re.findall(r"([+-]?)\s*([^+-]+)", rel):
        body = body.strip()
        m = re.fullmatch(r"(\d+)\s*\*?\s*(.*)", body)
        coef, word = (int(m.group(1)), m.group(2)) if m else (1, body)
        terms.append((-coef if sign == "-" else coef, _expand_word(word)))
    return terms


def path_algebra_oracle(text, max_len=8):
    """Dimension and ``dim e_i A e_j`` (paths from i to j) of ``kQ/I`` over Q,
    computed in the truncation by paths of length ``max_len``; the ideal is
    assumed to contain every path of that length."""
    verts, arrows, rels = _parse(text)

    def ends(w):
        return arrows[w[0]][0], arrows[w[-1]][1]

    words = []
    for n in range(1, max_len + 1):
        for w in itertools.product(arrows, repeat=n):
            if all(arrows[w[k]][1] == arrows[w[k + 1]][0] for k in range(n - 1)):
                words.append(w)
    index = {("e", v): k for k, v in enumerate(verts)}
    for w in words:
        index[w] = len(index)
    rows = []
    rel_terms = [_relation_terms(r) for r in rels]
    for terms in rel_terms:
        s, t = ends(terms[0][1])
        left = [()] + [w for w in words if arrows[w[-1]][1] == s]
        right = [()] + [w for w in words if arrows[w[0]][0] == t]
        for p in left:
            for q in right:
                vec = {}
                for c, w in terms:
                    full = p + w + q
                    if len(full) > max_len:
                        continue
                    vec[index[full]] = vec.get(index[full], 0) + c
                if any(vec.values()):
                    rows.append(vec)
    # every path of length max_len must be killed
    top = [w for w in words if len(w) == max_len]
    n = len(index)
    M = sympy.zeros(len(rows), n)
    for i, vec in enumerate(rows):
        for j, c in vec.items():
            M[i, j] = c
    rref, pivots = M.rref() if rows else (M, ())
    rank = len(pivots)
    assert all(index[w] in pivots for w in top) or not top, "truncation too short"
    dim = n - rank
    # per vertex pair: restrict to paths between fixed endpoints
    cartan = {}
    for a in verts:
        for b in verts:
            cols = [index[("e", a)]] if a == b else []
            cols += [index[w] for w in words if ends(w) == (a, b)]
            sub_rows = [r for r in rows if all(j in cols for j in r)]
            S = sympy.zeros(len(sub_rows), len(cols))
            for i, vec in enumerate(sub_rows):
                for j, c in vec.items():
                    S[i, cols.index(j)] = c
            cartan[(a, b)] = len(cols) - (S.rank() if sub_rows else 0)
    return dim, [[cartan[(a, b)] for b in verts] for a in verts]


def uniserial_hom(a, b):
    """dim Hom(k[x]/x^a, k[x]/x^b) over k[x]/(x^n), n >= a, b."""
    return min(a, b)


def end_uniserial_sum(lengths):
    """Cartan matrix of End(sum of uniserial k[x]/x^l): entry (i, j) is
    dim Hom(M_i, M_j)."""
    return [[uniserial_hom(a, b) for b in lengths] for a in lengths]


def sympy_rank_mod(rows, p=None):
    M = sympy.Matrix(rows)
    if p is None:
        return M.rank()
    from sympy.polys.matrices import DomainMatrix
    from sympy import GF
    dm = DomainMatrix.from_Matrix(M).convert_to(GF(p))
    return dm.rank()
