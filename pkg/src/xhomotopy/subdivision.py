"""Face posets, order complexes and barycentric subdivision.

A vertex of sd K is a face of K, named by the tuple of its vertices in
increasing order. A vertex of sd2 K is therefore a tuple of such tuples
listed along inclusion.
"""

from __future__ import annotations

from itertools import combinations

from ._util import vertex_key
from .complexes import Complex, OrderedComplex, VertexMap, delta


class Poset:
    """A finite poset given by its elements and the pairs (a, b) with a <= b."""

    def __init__(self, elements, relation, check: bool = True):
        self.elements = tuple(elements)
        less = {(a, b) for a, b in relation if a != b}
        self.less = frozenset(less)
        if check:
            elems = set(self.elements)
            for a, b in less:
                if a not in elems or b not in elems:
                    raise ValueError("relation mentions unknown elements")
                if (b, a) in less:
                    raise ValueError(f"antisymmetry fails for {a!r}, {b!r}")
            above = {}
            for a, b in less:
                above.setdefault(a, set()).add(b)
            for a, b in less:
                for c in above.get(b, ()):
                    if (a, c) not in less:
                        raise ValueError(f"transitivity fails: {a!r} < {b!r} < {c!r}")

    def leq(self, a, b) -> bool:
        return a == b or (a, b) in self.less

    def covers(self):
        """Pairs (a, b) with a < b and nothing strictly between."""
        above = {a: set() for a in self.elements}
        for a, b in self.less:
            above[a].add(b)
        out = {}
        for a in self.elements:
            ups = above[a]
            out[a] = [b for b in ups if not any((c, b) in self.less for c in ups if c != b)]
        return out

    def __len__(self):
        return len(self.elements)


def chain_poset(n: int) -> Poset:
    """The chain 0 < 1 < ... < n."""
    return Poset(range(n + 1), [(a, b) for a in range(n + 1) for b in range(a + 1, n + 1)])


def antichain(n: int) -> Poset:
    return Poset(range(n), [])


def _name_face(K, face):
    if isinstance(K, OrderedComplex):
        return K.sort_face(face)
    return tuple(sorted(face, key=vertex_key))


def face_poset(K) -> Poset:
    """Faces of K ordered by inclusion; each face named by its sorted vertex tuple."""
    base = K.base if isinstance(K, OrderedComplex) else K
    faces = sorted(base.faces, key=lambda s: (len(s), vertex_key(_name_face(K, s))))
    names = {s: _name_face(K, s) for s in faces}
    rel = []
    for t in faces:
        items = tuple(t)
        for r in range(1, len(items)):
            for c in combinations(items, r):
                rel.append((names[frozenset(c)], names[t]))
    return Poset([names[s] for s in faces], rel, check=False)


def order_complex(P: Poset) -> OrderedComplex:
    """Chains of P as faces; facets are the maximal chains."""
    covers = P.covers()
    has_lower = {b for a, b in P.less}
    facets = []

    def walk(chain):
        top = chain[-1]
        nxt = covers[top]
        if not nxt:
            facets.append(chain)
            return
        for b in nxt:
            walk(chain + [b])

    for a in P.elements:
        if a not in has_lower:
            walk([a])
    return OrderedComplex(Complex(P.elements, facets), P.less)


def sd(K) -> OrderedComplex:
    return order_complex(face_poset(K))


def sd2(K) -> OrderedComplex:
    return sd(sd(K))


def _base(K):
    return K.base if isinstance(K, OrderedComplex) else K


def last_vertex_map(K) -> VertexMap:
    """sd K -> K sending each face to its largest vertex.

    An unordered K is ordered by the global vertex order.
    """
    S = sd(K).base
    return VertexMap(S, _base(K), {name: name[-1] for name in S.vertices}, check=False)


def sd_map(f: VertexMap, source=None, target=None) -> VertexMap:
    """Sd applied to a map: a face goes to (the name of) its image."""
    source = sd(f.source) if source is None else source
    target = sd(f.target) if target is None else target
    tb = _base(target)
    lookup = {frozenset(v): v for v in tb.vertices}
    mapping = {v: lookup[frozenset(f(x) for x in v)] for v in _base(source).vertices}
    return VertexMap(_base(source), tb, mapping, check=False)


def iterated_last_vertex_map(K) -> VertexMap:
    """lambda o Sd(lambda) : sd2 K -> K."""
    S1 = sd(K)
    S2 = sd(S1)
    lam = last_vertex_map(K)
    # Sd of lambda, with sd2 K computed from the ordered sd K
    sd_lam = sd_map(lam, source=S2, target=S1)
    return sd_lam.then(lam)


def staircase_inclusion(n: int) -> VertexMap:
    """Delta^n -> sd(Delta^n), m |-> {0..m}."""
    S = sd(delta(n)).base
    return VertexMap(delta(n), S, {m: tuple(range(m + 1)) for m in range(n + 1)})


def sd_inclusion(n: int) -> VertexMap:
    """Delta^n -> sd2(Delta^n), m |-> ({0}, {0,1}, ..., {0..m})."""
    if n < 0:
        raise ValueError("n must be non-negative")
    S = sd2(delta(n)).base
    return VertexMap(delta(n), S, {m: tuple(tuple(range(j + 1)) for j in range(m + 1)) for m in range(n + 1)})
