"""Integer simplicial homology via Smith normal form.

Homology isomorphism of a map is decided exactly through its mapping cone;
this is a necessary condition for a weak equivalence, never a sufficient one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from ._util import vertex_key
from .complexes import Complex, VertexMap


def _basis(K: Complex, n: int):
    return [tuple(sorted(s, key=vertex_key)) for s in K.faces_of_dim(n)]


@dataclass
class ChainData:
    """Ordered bases and sparse boundary matrices of the simplicial chain complex.

    ``boundaries[n]`` maps column index (an n-face) to {row index: coefficient}
    over the (n-1)-faces; ``boundaries[0]`` is empty.
    """

    bases: list
    boundaries: list

    def rank(self, n: int) -> int:
        return len(self.bases[n]) if 0 <= n < len(self.bases) else 0

    def matrix(self, n: int):
        rows = self.rank(n - 1)
        cols = self.rank(n)
        M = [[0] * cols for _ in range(rows)]
        if 0 < n < len(self.bases):
            for j, col in self.boundaries[n].items():
                for i, v in col.items():
                    M[i][j] = v
        return M


def chain_complex(K: Complex) -> ChainData:
    bases = [_basis(K, n) for n in range(K.dim + 1)] if not K.is_empty() else []
    index = [{s: i for i, s in enumerate(b)} for b in bases]
    boundaries = [{}]
    for n in range(1, len(bases)):
        cols = {}
        for j, s in enumerate(bases[n]):
            cols[j] = {index[n - 1][s[:k] + s[k + 1:]]: (-1) ** k for k in range(len(s))}
        boundaries.append(cols)
    return ChainData(bases, boundaries)


# -- Smith normal form ---------------------------------------------------------


def _pick(M, t):
    best = None
    for i in range(t, len(M)):
        row = M[i]
        for j in range(t, len(row)):
            v = row[j]
            if v:
                key = (abs(v), i, j)
                if best is None or key < best:
                    best = key
    return best


def smith_normal_form(M):
    """Return (D, P, Q) with P * M * Q = D, D diagonal and d_i | d_{i+1}.

    P and Q are unimodular integer matrices. Pivots are chosen by smallest
    magnitude, ties broken by (row, column).
    """
    m = len(M)
    n = len(M[0]) if m else 0
    A = [list(map(int, r)) for r in M]
    P = [[int(i == j) for j in range(m)] for i in range(m)]
    Q = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(a, b):
        A[a], A[b] = A[b], A[a]
        P[a], P[b] = P[b], P[a]

    def swap_cols(a, b):
        for r in A:
            r[a], r[b] = r[b], r[a]
        for r in Q:
            r[a], r[b] = r[b], r[a]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        A[dst] = [x - q * y for x, y in zip(A[dst], A[src])]
        P[dst] = [x - q * y for x, y in zip(P[dst], P[src])]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for r in A:
            r[dst] -= q * r[src]
        for r in Q:
            r[dst] -= q * r[src]

    for t in range(min(m, n)):
        pick = _pick(A, t)
        if pick is None:
            break
        _, i, j = pick
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, A[i][t] // p)
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, A[t][j] // p)
                    dirty = dirty or A[t][j] != 0
            if dirty:
                # a smaller remainder appeared in row/column t; move it to the pivot
                cands = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
                cands += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
                _, i, j = min(cands)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, -1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            P[t] = [-x for x in P[t]]
    return A, P, Q


def _normalize(diag):
    """Turn any diagonal into invariant factors (each divides the next)."""
    d = sorted(abs(x) for x in diag if x)
    changed = True
    while changed:
        changed = False
        for a in range(len(d)):
            for b in range(a + 1, len(d)):
                g = gcd(d[a], d[b])
                if g != d[a]:
                    d[a], d[b] = g, d[a] * d[b] // g
                    changed = True
        d.sort()
    return d


def elementary_divisors(columns):
    """Nonzero invariant factors of a sparse matrix {col: {row: value}}."""
    rows = {}
    for j, col in columns.items():
        for i, v in col.items():
            if v:
                rows.setdefault(i, {})[j] = v
    cols = {}
    for i, r in rows.items():
        for j in r:
            cols.setdefault(j, set()).add(i)
    diag = []

    def row_sub(dst, src, q):
        rd, rs = rows[dst], rows[src]
        for j, v in rs.items():
            nv = rd.get(j, 0) - q * v
            if nv:
                if j not in rd:
                    cols[j].add(dst)
                rd[j] = nv
            elif j in rd:
                del rd[j]
                cols[j].discard(dst)
        if not rd:
            del rows[dst]

    while rows:
        best = None
        for i, r in rows.items():
            for j, v in r.items():
                key = (abs(v), i, j)
                if best is None or key < best:
                    best = key
        _, pi, pj = best
        p = rows[pi][pj]
        clean = True
        for i in sorted(cols[pj] - {pi}):
            q = rows[i][pj] // p
            row_sub(i, pi, q)
            if i in rows and pj in rows[i]:
                clean = False
        if not clean:
            continue
        # column pj now holds only the pivot; column ops touch only row pi
        r = rows[pi]
        for j in [c for c in r if c != pj]:
            nv = r[j] - (r[j] // p) * p
            if nv:
                r[j] = nv
                clean = False
            else:
                del r[j]
                cols[j].discard(pi)
        if not clean:
            continue
        diag.append(p)
        del rows[pi]
        cols[pj].discard(pi)
    return _normalize(diag)


# -- homology --------------------------------------------------------------------


@dataclass
class HomologyResult:
    betti: list = field(default_factory=list)
    torsion: list = field(default_factory=list)

    def to_json(self):
        return {"betti": list(self.betti), "torsion": [list(t) for t in self.torsion]}


def homology(K: Complex) -> HomologyResult:
    C = chain_complex(K)
    top = len(C.bases)
    divisors = [[] for _ in range(top + 1)]
    for n in range(1, top):
        divisors[n] = elementary_divisors(C.boundaries[n])
    betti, torsion = [], []
    for n in range(top):
        rank_out = len(divisors[n])
        rank_in = len(divisors[n + 1])
        betti.append(C.rank(n) - rank_out - rank_in)
        torsion.append([d for d in divisors[n + 1] if d > 1])
    return HomologyResult(betti, torsion)


def components(K: Complex) -> int:
    parent = {v: v for v in K.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for f in K.facets:
        it = iter(f)
        a = find(next(it))
        for b in it:
            rb = find(b)
            if rb != a:
                parent[rb] = a
    return sum(1 for v in K.vertices if find(v) == v)


def _perm_sign(seq):
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        while seq[i] != i:
            j = seq[i]
            seq[i], seq[j] = seq[j], seq[i]
            sign = -sign
    return sign


def _chain_map(f: VertexMap, CK: ChainData, CL: ChainData):
    """Sparse chain map: degree -> {col: {row: coefficient}}."""
    out = []
    for n, basis in enumerate(CK.bases):
        index = {s: i for i, s in enumerate(CL.bases[n])} if n < len(CL.bases) else {}
        cols = {}
        for j, s in enumerate(basis):
            img = [f(v) for v in s]
            if len(set(img)) < len(img):
                continue
            order = sorted(range(len(img)), key=lambda k: vertex_key(img[k]))
            target = tuple(img[k] for k in order)
            cols[j] = {index[target]: _perm_sign(order)}
        out.append(cols)
    return out


def induced_map(f: VertexMap):
    """Dense chain-map matrices, one per degree of the source."""
    CK, CL = chain_complex(f.source), chain_complex(f.target)
    sparse = _chain_map(f, CK, CL)
    mats = []
    for n, cols in enumerate(sparse):
        M = [[0] * CK.rank(n) for _ in range(CL.rank(n))]
        for j, col in cols.items():
            for i, v in col.items():
                M[i][j] = v
        mats.append(M)
    return mats


def homology_iso_report(f: VertexMap) -> dict:
    """Decide whether f induces isomorphisms on all integral homology groups.

    Uses the mapping cone: f_* is an isomorphism in every degree exactly when
    the cone has vanishing homology, torsion included.
    """
    CK, CL = chain_complex(f.source), chain_complex(f.target)
    F = _chain_map(f, CK, CL)
    top = max(len(CK.bases), len(CL.bases))
    # cone degree n = C_{n-1}(K) + C_n(L); K-part indices come first
    sizes = [CK.rank(n - 1) + CL.rank(n) for n in range(top + 2)]

    def d(n):
        cols = {}
        offK = CK.rank(n - 1)  # start of L-block in degree n
        offK_low = CK.rank(n - 2)  # start of L-block in degree n-1
        for j in range(CK.rank(n - 1)):
            col = {}
            if n - 1 >= 1:
                for i, v in CK.boundaries[n - 1].get(j, {}).items():
                    col[i] = -v
            if n - 1 < len(F):
                for i, v in F[n - 1].get(j, {}).items():
                    col[offK_low + i] = col.get(offK_low + i, 0) + v
            cols[j] = {i: v for i, v in col.items() if v}
        for j in range(CL.rank(n)):
            col = {}
            if n >= 1:
                for i, v in CL.boundaries[n].get(j, {}).items():
                    col[offK_low + i] = v
            cols[offK + j] = col
        return cols

    acyclic = True
    divs = [elementary_divisors(d(n)) if n >= 1 else [] for n in range(top + 2)]
    for n in range(top + 1):
        if sizes[n] != len(divs[n]) + len(divs[n + 1]) or any(x > 1 for x in divs[n + 1]):
            acyclic = False
            break
    degrees = max(f.source.dim, f.target.dim) + 1
    return {"homology_iso": acyclic, "degrees_checked": max(degrees, 0)}


def is_homology_iso(f: VertexMap) -> bool:
    return homology_iso_report(f)["homology_iso"]
