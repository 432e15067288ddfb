"""Contiguity, x-homotopy search and deformation-retract certificates."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from ._util import DEFAULT_BUDGET, Budget, as_budget
from .complexes import Complex, VertexMap, identity, is_subcomplex, path_complex, product, simplicial_maps


def _same_ends(f: VertexMap, g: VertexMap):
    if f.source != g.source or f.target != g.target:
        raise ValueError("maps must share source and target")


def is_contiguous(f: VertexMap, g: VertexMap) -> bool:
    _same_ends(f, g)
    L = f.target
    return all(L.is_face(f.image(s) | g.image(s)) for s in f.source.facets)


def is_one_homotopic(f: VertexMap, g: VertexMap) -> bool:
    """Whether (f at level 0, g at level 1) is a simplicial map K x I_1 -> L."""
    _same_ends(f, g)
    P = product(f.source, path_complex(1))
    H = {(x, t): (f(x) if t == 0 else g(x)) for x, t in P.vertices}
    L = f.target
    return all(L.is_face({H[v] for v in s}) for s in P.facets)


@dataclass
class ContiguityChain:
    """f_0 ~ f_1 ~ ... ~ f_n, each step a contiguity."""

    maps: list

    def __post_init__(self):
        if not self.maps:
            raise ValueError("a chain needs at least one map")

    @property
    def start(self) -> VertexMap:
        return self.maps[0]

    @property
    def end(self) -> VertexMap:
        return self.maps[-1]

    def __len__(self):
        return len(self.maps) - 1

    def reverse(self) -> "ContiguityChain":
        return ContiguityChain(self.maps[::-1])

    def is_valid(self) -> bool:
        try:
            for a, b in zip(self.maps, self.maps[1:]):
                if not is_contiguous(a, b):
                    return False
        except ValueError:
            return False
        return True


def chain_concat(c1: ContiguityChain, c2: ContiguityChain) -> ContiguityChain:
    if c1.end != c2.start:
        raise ValueError("end of the first chain must be the start of the second")
    return ContiguityChain(c1.maps + c2.maps[1:])


def chain_compose(c_left: ContiguityChain, c_right: ContiguityChain) -> ContiguityChain:
    """From f ~ f' (K -> L) and g ~ g' (L -> M) build g f ~ g' f'.

    Step i uses g_{min(i, n')} o f_{min(i, n)}.
    """
    if c_left.start.target != c_right.start.source:
        raise ValueError("chains are not composable")
    n, m = len(c_left), len(c_right)
    N = max(n, m)
    maps = [c_left.maps[min(i, n)].then(c_right.maps[min(i, m)]) for i in range(N + 1)]
    return ContiguityChain(maps)


# -- search ------------------------------------------------------------------


class _MoveGraph:
    """Simplicial maps K -> L as tuples; a move re-targets one vertex."""

    def __init__(self, K: Complex, L: Complex, frozen=()):
        self.K, self.L = K, L
        self.order = list(K.vertices)
        self.pos = {v: i for i, v in enumerate(self.order)}
        self.facets_at = [
            [tuple(self.pos[x] for x in s) for s in K.facets_containing(v)] for v in self.order
        ]
        frozen = set(frozen)
        self.movable = [i for i, v in enumerate(self.order) if v not in frozen]

    def encode(self, f: VertexMap):
        return tuple(f(v) for v in self.order)

    def decode(self, t) -> VertexMap:
        return VertexMap(self.K, self.L, dict(zip(self.order, t)), check=False)

    def moves(self, state, budget: Budget):
        L = self.L
        for i in self.movable:
            cur = state[i]
            for w in L.vertices:
                if w == cur:
                    continue
                budget.tick()
                if all(L.is_face({state[j] for j in s} | {w}) for s in self.facets_at[i]):
                    yield state[:i] + (w,) + state[i + 1:]


def _bfs(graph: _MoveGraph, start, goal, budget: Budget):
    """Breadth-first search; ``goal`` is a predicate on states."""
    parent = {start: None}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        if goal(s):
            path = []
            while s is not None:
                path.append(s)
                s = parent[s]
            return path[::-1]
        for t in graph.moves(s, budget):
            if t not in parent:
                parent[t] = s
                queue.append(t)
    return None


def x_homotopic(f: VertexMap, g: VertexMap, budget=DEFAULT_BUDGET):
    """A contiguity chain from f to g, or None when none exists.

    Raises BudgetExceeded when the reachable set is not exhausted in time.
    """
    _same_ends(f, g)
    graph = _MoveGraph(f.source, f.target)
    target = graph.encode(g)
    path = _bfs(graph, graph.encode(f), lambda s: s == target, as_budget(budget))
    if path is None:
        return None
    return ContiguityChain([graph.decode(s) for s in path])


def reachable_maps(f: VertexMap, budget=DEFAULT_BUDGET):
    """Every map reachable from f by contiguous single-vertex moves (as tuples)."""
    graph = _MoveGraph(f.source, f.target)
    budget = as_budget(budget)
    start = graph.encode(f)
    seen = {start}
    queue = deque([start])
    while queue:
        for t in graph.moves(queue.popleft(), budget):
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return seen


def contiguity_classes(K: Complex, L: Complex):
    """Brute-force oracle: classes of the transitive closure of contiguity.

    Returns a dict from map tuples (over K.vertices) to a class representative.
    """
    maps = [VertexMap(K, L, m, check=False) for m in simplicial_maps(K, L)]
    keys = [m.as_tuple() for m in maps]
    parent = list(range(len(maps)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(maps)):
        for j in range(i + 1, len(maps)):
            if find(i) != find(j) and is_contiguous(maps[i], maps[j]):
                parent[find(j)] = find(i)
    return {keys[i]: keys[find(i)] for i in range(len(maps))}


# -- deformation retracts -------------------------------------------------------


@dataclass
class Retraction:
    """K as a deformation retract of L: r i = 1_K and a chain 1_L ~ i r fixing K."""

    inclusion: VertexMap
    retraction: VertexMap
    chain: ContiguityChain


def verify_retraction(cert: Retraction) -> bool:
    i, r, chain = cert.inclusion, cert.retraction, cert.chain
    K, L = i.source, i.target
    if r.source != L or r.target != K:
        return False
    if not is_subcomplex(K, L) or any(i(v) != v for v in K.vertices):
        return False
    try:
        VertexMap(K, L, i.mapping)
        VertexMap(L, K, r.mapping)
        for h in chain.maps:
            VertexMap(L, L, h.mapping)
    except ValueError:
        return False
    if any(r(i(v)) != v for v in K.vertices):
        return False
    if chain.start != identity(L) or chain.end != r.then(i):
        return False
    if any(h(v) != v for h in chain.maps for v in K.vertices):
        return False
    return chain.is_valid()


def find_deformation_retract(L: Complex, K: Complex, budget=DEFAULT_BUDGET):
    """Search for a Retraction of L onto K.

    Tries a strong collapse first, then a breadth-first search over maps
    L -> L fixing K, starting at the identity. Returns None when the search
    space is exhausted; raises BudgetExceeded otherwise.
    """
    from .collapse import collapses_to, retraction_from_collapse

    if not is_subcomplex(K, L):
        raise ValueError("K must be a subcomplex of L")
    budget = as_budget(budget)
    seq = collapses_to(L, K, budget)
    if seq is not None:
        return retraction_from_collapse(L, K, seq)
    if K.is_empty():
        # no map from a nonempty complex to the empty one
        return None
    graph = _MoveGraph(L, L, frozen=K.vertices)
    kset = K.vertex_set

    def lands_in_k(state):
        if not set(state) <= kset:
            return False
        img = dict(zip(graph.order, state))
        return all(K.is_face({img[x] for x in s}) for s in L.facets)

    path = _bfs(graph, graph.encode(identity(L)), lands_in_k, budget)
    if path is None:
        return None
    chain = ContiguityChain([graph.decode(s) for s in path])
    r = VertexMap(L, K, chain.end.mapping, check=False)
    i = VertexMap(K, L, {v: v for v in K.vertices}, check=False)
    return Retraction(i, r, chain)
