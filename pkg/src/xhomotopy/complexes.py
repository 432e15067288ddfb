"""Finite simplicial complexes, simplicial maps and the basic (co)limits.

Faces are frozensets of vertex labels; the empty set is never stored as a face.
A complex keeps its facets and computes the full face set on demand.
"""

from __future__ import annotations

from functools import cached_property
from itertools import combinations, product as iproduct

import networkx as nx

from ._util import EXPONENTIAL_BUDGET, Budget, BudgetExceeded, as_budget, sorted_vertices, vertex_key


def _maximal(sets):
    """Drop every set that is contained in another one."""
    ordered = sorted(set(sets), key=len, reverse=True)
    kept = []
    by_vertex = {}
    for s in ordered:
        if s:
            bucket = min((by_vertex.get(v, ()) for v in s), key=len)
            if any(s <= t for t in bucket):
                continue
        elif kept:
            continue
        kept.append(s)
        for v in s:
            by_vertex.setdefault(v, []).append(s)
    return frozenset(kept)


def face_key(face):
    """Canonical sort key for a face: lexicographic on its sorted vertices."""
    return tuple(vertex_key(v) for v in sorted(face, key=vertex_key))


class Complex:
    """A finite simplicial complex given by vertices and facets."""

    def __init__(self, vertices, facets=()):
        vset = frozenset(vertices)
        fs = [frozenset(f) for f in facets if len(f)]
        for f in fs:
            if not f <= vset:
                raise ValueError(f"facet {sorted_vertices(f)} uses undeclared vertices")
        covered = frozenset().union(*fs) if fs else frozenset()
        fs.extend(frozenset([v]) for v in vset - covered)
        self._vset = vset
        self.vertices = sorted_vertices(vset)
        self.facets = _maximal(fs)

    # -- basic queries -------------------------------------------------

    @cached_property
    def faces(self) -> frozenset:
        out = set()
        for f in self.facets:
            if len(f) > 20:
                raise ValueError("facet too large to enumerate all faces")
            items = tuple(f)
            for r in range(1, len(items) + 1):
                out.update(frozenset(c) for c in combinations(items, r))
        return frozenset(out)

    @cached_property
    def _facets_by_vertex(self):
        table = {v: [] for v in self.vertices}
        for f in self.facets:
            for v in f:
                table[v].append(f)
        return table

    def facets_containing(self, v):
        return self._facets_by_vertex[v]

    def is_face(self, s) -> bool:
        s = frozenset(s)
        if not s:
            return True
        if "faces" in self.__dict__:
            return s in self.faces
        v = next(iter(s))
        if v not in self._vset:
            return False
        return any(s <= f for f in self._facets_by_vertex[v])

    def __contains__(self, s):
        return self.is_face(s)

    @property
    def vertex_set(self) -> frozenset:
        return self._vset

    @property
    def dim(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    def f_vector(self):
        counts = [0] * (self.dim + 1)
        for s in self.faces:
            counts[len(s) - 1] += 1
        return counts

    def faces_of_dim(self, d):
        return sorted((s for s in self.faces if len(s) == d + 1), key=face_key)

    def sorted_facets(self):
        return [tuple(sorted(f, key=vertex_key)) for f in sorted(self.facets, key=face_key)]

    def is_empty(self) -> bool:
        return not self.vertices

    def __len__(self):
        return len(self.vertices)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Complex):
            return NotImplemented
        return self._vset == other._vset and self.facets == other.facets

    def __hash__(self):
        return hash((self._vset, self.facets))

    def __repr__(self):
        return f"Complex(vertices={list(self.vertices)!r}, facets={self.sorted_facets()!r})"


class OrderedComplex:
    """A complex together with a partial order that is total on every face.

    ``less`` is the set of strict pairs (a, b) with a < b.
    """

    def __init__(self, base: Complex, less):
        self.base = base
        self.less = frozenset(less)
        for f in base.facets:
            for a, b in combinations(f, 2):
                if (a, b) not in self.less and (b, a) not in self.less:
                    raise ValueError(f"order is not total on face {sorted_vertices(f)}")

    @classmethod
    def from_key(cls, base: Complex, key=vertex_key):
        """Order every face by a global total order given as a sort key."""
        less = set()
        for f in base.facets:
            for a, b in combinations(sorted(f, key=key), 2):
                less.add((a, b))
        return cls(base, less)

    def leq(self, a, b) -> bool:
        return a == b or (a, b) in self.less

    def sort_face(self, face):
        """Vertices of a face in increasing order."""
        from functools import cmp_to_key

        def cmp(a, b):
            if a == b:
                return 0
            return -1 if (a, b) in self.less else 1

        return tuple(sorted(face, key=cmp_to_key(cmp)))

    def maximum(self, face):
        return self.sort_face(face)[-1]

    def __eq__(self, other):
        if not isinstance(other, OrderedComplex):
            return NotImplemented
        return self.base == other.base and self.less == other.less

    def __hash__(self):
        return hash((self.base, self.less))

    def __repr__(self):
        return f"OrderedComplex({self.base!r})"


class NotSimplicial(ValueError):
    pass


class VertexMap:
    """A simplicial map, checked on construction."""

    def __init__(self, source: Complex, target: Complex, mapping, check: bool = True):
        self.source = source
        self.target = target
        self.mapping = dict(mapping)
        if check:
            missing = [v for v in source.vertices if v not in self.mapping]
            if missing:
                raise NotSimplicial(f"assignment undefined on {missing[:5]}")
            extra = set(self.mapping) - source.vertex_set
            if extra:
                raise NotSimplicial(f"assignment defined on non-vertices {sorted_vertices(extra)[:5]}")
            for f in source.facets:
                img = self.image(f)
                if not target.is_face(img):
                    raise NotSimplicial(
                        f"image of facet {sorted_vertices(f)} is {sorted_vertices(img)}, not a face"
                    )

    def __call__(self, v):
        return self.mapping[v]

    def image(self, face):
        return frozenset(self.mapping[v] for v in face)

    def as_tuple(self):
        return tuple(self.mapping[v] for v in self.source.vertices)

    def is_injective(self) -> bool:
        return len(set(self.mapping.values())) == len(self.mapping)

    def then(self, g: "VertexMap") -> "VertexMap":
        """The composite g . self."""
        if g.source != self.target:
            raise ValueError("maps are not composable")
        return VertexMap(self.source, g.target, {v: g(w) for v, w in self.mapping.items()}, check=False)

    def __eq__(self, other):
        if not isinstance(other, VertexMap):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.mapping == other.mapping

    def __hash__(self):
        return hash((self.source, self.target, self.as_tuple()))

    def __repr__(self):
        pairs = ", ".join(f"{v!r}->{self.mapping[v]!r}" for v in self.source.vertices)
        return f"VertexMap({pairs})"


def compose(g: VertexMap, f: VertexMap) -> VertexMap:
    return f.then(g)


def identity(K: Complex) -> VertexMap:
    return VertexMap(K, K, {v: v for v in K.vertices}, check=False)


def inclusion(K: Complex, L: Complex) -> VertexMap:
    if not is_subcomplex(K, L):
        raise ValueError("not a subcomplex")
    return VertexMap(K, L, {v: v for v in K.vertices}, check=False)


def constant_map(K: Complex, L: Complex, w) -> VertexMap:
    return VertexMap(K, L, {v: w for v in K.vertices})


# -- constructors --------------------------------------------------------


def make_complex(vertices=(), generators=()) -> Complex:
    vertices = list(vertices)
    if len(set(vertices)) != len(vertices):
        raise ValueError("duplicate vertex ids")
    gens = [frozenset(g) for g in generators]
    allv = set(vertices).union(*gens) if gens else set(vertices)
    return Complex(allv, gens)


def empty_complex() -> Complex:
    return Complex((), ())


def point(v=0) -> Complex:
    return Complex([v], [[v]])


def delta(n: int) -> Complex:
    if n < 0:
        raise ValueError("n must be non-negative")
    return Complex(range(n + 1), [range(n + 1)])


def boundary(n: int) -> Complex:
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return empty_complex()
    return Complex(range(n + 1), [set(c) for c in combinations(range(n + 1), n)])


def horn(n: int, k: int) -> Complex:
    if n < 1:
        raise ValueError("horns need n >= 1")
    if not 0 <= k <= n:
        raise ValueError(f"horn index {k} out of range 0..{n}")
    facets = [set(c) for c in combinations(range(n + 1), n) if k in c]
    return make_complex((), facets)


def path_complex(n: int) -> Complex:
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return point(0)
    return Complex(range(n + 1), [{i, i + 1} for i in range(n)])


def cycle_complex(n: int) -> Complex:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return Complex(range(n), [{i, (i + 1) % n} for i in range(n)])


# -- subcomplexes --------------------------------------------------------


def is_subcomplex(K: Complex, L: Complex) -> bool:
    return K.vertex_set <= L.vertex_set and all(L.is_face(f) for f in K.facets)


def induced_subcomplex(K: Complex, S) -> Complex:
    S = frozenset(S)
    if not S <= K.vertex_set:
        raise ValueError("vertex set is not contained in the complex")
    return Complex(S, [f & S for f in K.facets if f & S])


def _require_face(K, sigma):
    sigma = frozenset(sigma)
    if not sigma or not K.is_face(sigma):
        raise ValueError(f"{sorted_vertices(sigma)} is not a face")
    return sigma


def star(K: Complex, sigma) -> Complex:
    """Closed star: faces tau with tau | sigma a face."""
    sigma = _require_face(K, sigma)
    fs = [f for f in K.facets if sigma <= f]
    return make_complex((), fs)


def deletion(K: Complex, sigma) -> Complex:
    """Faces disjoint from sigma."""
    sigma = _require_face(K, sigma)
    keep = K.vertex_set - sigma
    return Complex(keep, [f - sigma for f in K.facets if f - sigma])


def neighborhood(L: Complex, K: Complex) -> Complex:
    """Union of the closed stars in L of the vertices of K."""
    if not is_subcomplex(K, L):
        raise ValueError("not a subcomplex")
    fs = {f for v in K.vertices for f in L.facets_containing(v)}
    return make_complex(K.vertices, fs)


def is_flag(K: Complex) -> bool:
    g = nx.Graph()
    g.add_nodes_from(K.vertices)
    for f in K.facets:
        g.add_edges_from(combinations(f, 2))
    return all(K.is_face(c) for c in nx.find_cliques(g))


# -- limits and colimits -------------------------------------------------


def product(K: Complex, L: Complex) -> Complex:
    verts = [(a, b) for a in K.vertices for b in L.vertices]
    facets = [{(a, b) for a in s for b in t} for s in K.facets for t in L.facets]
    return Complex(verts, facets)


def projection(P: Complex, K: Complex, L: Complex, which: int) -> VertexMap:
    target = K if which == 0 else L
    return VertexMap(P, target, {v: v[which] for v in P.vertices}, check=False)


def coproduct(K: Complex, L: Complex) -> Complex:
    verts = [(0, v) for v in K.vertices] + [(1, v) for v in L.vertices]
    facets = [{(0, v) for v in f} for f in K.facets] + [{(1, v) for v in f} for f in L.facets]
    return Complex(verts, facets)


def simplicial_maps(K: Complex, L: Complex, fixed=None, candidates=None, budget=None):
    """Yield every simplicial map K -> L as a dict, in deterministic order.

    ``fixed`` pins some vertices; ``candidates`` maps a vertex to its allowed images.
    """
    budget = as_budget(budget) if budget is not None else None
    order = list(K.vertices)
    pos = {v: i for i, v in enumerate(order)}
    # facets to check once vertex i is assigned: those whose latest vertex is i
    checks = [[] for _ in order]
    for f in K.facets:
        checks[max(pos[v] for v in f)].append(tuple(f))
    fixed = dict(fixed or {})
    assign = {}

    def rec(i):
        if i == len(order):
            yield dict(assign)
            return
        v = order[i]
        cands = [fixed[v]] if v in fixed else (candidates[v] if candidates and v in candidates else L.vertices)
        for w in cands:
            if budget is not None:
                budget.tick()
            assign[v] = w
            if all(L.is_face({assign[x] for x in f}) for f in checks[i]):
                yield from rec(i + 1)
            del assign[v]

    yield from rec(0)


def count_maps(K: Complex, L: Complex) -> int:
    return sum(1 for _ in simplicial_maps(K, L))


def exponential(L: Complex, K: Complex, budget: int = EXPONENTIAL_BUDGET) -> Complex:
    """Internal hom L^K.

    Vertices are the simplicial maps K -> L, written as tuples of images in the
    vertex order of K. A family of maps is a face when, for each facet sigma of K,
    the union of the images f(sigma) over the family is a face of L.
    """
    n_funcs = len(L.vertices) ** len(K.vertices)
    if n_funcs > budget:
        raise BudgetExceeded(f"{n_funcs} candidate functions exceed budget {budget}")
    maps = [tuple(m[v] for v in K.vertices) for m in simplicial_maps(K, L)]
    if not maps:
        return empty_complex()
    idx = {v: i for i, v in enumerate(K.vertices)}
    kfacets = sorted(K.facets, key=face_key)
    lfacets = list(L.facets)
    # for each K-facet, which L-facets hold the image of each map
    holders = []
    for s in kfacets:
        row = []
        for m in maps:
            img = frozenset(m[idx[v]] for v in s)
            row.append(frozenset(j for j, t in enumerate(lfacets) if img <= t))
        holders.append(row)

    counter = Budget(budget)
    found = set()

    def rec(i, alive):
        counter.tick()
        if i == len(kfacets):
            found.add(frozenset(alive))
            return
        options = set().union(*(holders[i][m] for m in alive))
        for j in sorted(options):
            nxt = [m for m in alive if j in holders[i][m]]
            if nxt:
                rec(i + 1, nxt)

    rec(0, list(range(len(maps))))
    facets = _maximal(found)
    return Complex(maps, [{maps[m] for m in f} for f in facets])


def evaluation(L: Complex, K: Complex, E: Complex | None = None) -> VertexMap:
    """The evaluation map L^K x K -> L."""
    E = exponential(L, K) if E is None else E
    idx = {v: i for i, v in enumerate(K.vertices)}
    P = product(E, K)
    return VertexMap(P, L, {(f, x): f[idx[x]] for f, x in P.vertices})


def pushout_mono(i: VertexMap, u: VertexMap, names=None):
    """Pushout of u : K -> A along an injective i : K -> L.

    Returns (B, v, f) with v : L -> B and f : A -> B. Vertices of A keep their
    names in B; ``names`` may rename the new vertices coming from L.
    """
    if i.source != u.source:
        raise ValueError("i and u must share a source")
    if not i.is_injective():
        raise ValueError("i must be injective on vertices")
    K, L, A = i.source, i.target, u.target
    glued = {i(k): u(k) for k in K.vertices}
    used = set(A.vertices)
    vmap = {}
    for l in L.vertices:
        if l in glued:
            vmap[l] = glued[l]
            continue
        name = names[l] if names and l in names else l
        while name in used:
            name = ("+", name)
        used.add(name)
        vmap[l] = name
    facets = [frozenset(vmap[x] for x in s) for s in L.facets] + list(A.facets)
    B = Complex(used, facets)
    v = VertexMap(L, B, vmap, check=False)
    f = VertexMap(A, B, {a: a for a in A.vertices}, check=False)
    return B, v, f


def iter_complexes(n_vertices: int):
    """All complexes on the vertex set {0..n-1} (every vertex present)."""
    vs = list(range(n_vertices))
    cand = [frozenset(c) for r in range(2, n_vertices + 1) for c in combinations(vs, r)]
    seen = set()
    for bits in iproduct((0, 1), repeat=len(cand)):
        gens = [c for c, b in zip(cand, bits) if b]
        K = Complex(vs, gens)
        if K not in seen:
            seen.add(K)
            yield K
