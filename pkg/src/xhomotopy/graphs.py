"""Reflexive and loop graphs, the functors relating them to complexes,
graph exponentials and Hom complexes.

A reflexive graph never stores loops: every vertex is implicitly looped.
A loop graph stores its loops explicitly as one-element edges.
"""

from __future__ import annotations

from itertools import combinations, product as iproduct

import networkx as nx

from ._util import EXPONENTIAL_BUDGET, Budget, BudgetExceeded, sorted_vertices
from .complexes import Complex, make_complex

REFLEXIVE = "reflexive"
LOOP = "loop"


class Graph:
    def __init__(self, vertices, edges=(), mode=REFLEXIVE):
        if mode not in (REFLEXIVE, LOOP):
            raise ValueError(f"unknown graph mode {mode!r}")
        vset = frozenset(vertices)
        es = set()
        for e in edges:
            e = frozenset(e)
            if not e <= vset:
                raise ValueError(f"edge {sorted_vertices(e)} uses undeclared vertices")
            if not 1 <= len(e) <= 2:
                raise ValueError("edges join one or two vertices")
            if len(e) == 1 and mode == REFLEXIVE:
                continue
            es.add(e)
        self.mode = mode
        self.vertices = sorted_vertices(vset)
        self.vertex_set = vset
        self.edges = frozenset(es)
        self._adj = {v: set() for v in self.vertices}
        for e in self.edges:
            a, b = (tuple(e) * 2)[:2]
            self._adj[a].add(b)
            self._adj[b].add(a)
        if mode == REFLEXIVE:
            for v in self.vertices:
                self._adj[v].add(v)

    @property
    def reflexive(self) -> bool:
        return self.mode == REFLEXIVE

    def has_edge(self, u, v) -> bool:
        return v in self._adj[u]

    def looped(self, v) -> bool:
        return v in self._adj[v]

    def neighbors(self, v):
        return self._adj[v]

    def proper_edges(self):
        return sorted((tuple(sorted_vertices(e)) for e in self.edges if len(e) == 2))

    def loops(self):
        return [v for v in self.vertices if self.looped(v)]

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.mode == other.mode and self.vertex_set == other.vertex_set and self.edges == other.edges

    def __hash__(self):
        return hash((self.mode, self.vertex_set, self.edges))

    def __repr__(self):
        return f"Graph({self.mode}, vertices={list(self.vertices)!r}, edges={self.proper_edges()!r}, loops={self.loops() if self.mode == LOOP else 'all'})"


class GraphMap:
    """An edge-preserving vertex function."""

    def __init__(self, source: Graph, target: Graph, mapping, check: bool = True):
        self.source = source
        self.target = target
        self.mapping = dict(mapping)
        if check:
            if set(self.mapping) != source.vertex_set:
                raise ValueError("assignment must be total on the source vertices")
            for x in source.vertices:
                for y in source.neighbors(x):
                    if not target.has_edge(self.mapping[x], self.mapping[y]):
                        raise ValueError(f"edge {x!r}{y!r} is not preserved")

    def __call__(self, v):
        return self.mapping[v]

    def as_tuple(self):
        return tuple(self.mapping[v] for v in self.source.vertices)

    def __eq__(self, other):
        if not isinstance(other, GraphMap):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.mapping == other.mapping

    def __hash__(self):
        return hash(self.as_tuple())

    def __repr__(self):
        return "GraphMap(" + ", ".join(f"{v!r}->{self.mapping[v]!r}" for v in self.source.vertices) + ")"


# -- standard graphs -------------------------------------------------------


def complete_graph(n: int, mode=REFLEXIVE) -> Graph:
    """K^n; in loop mode every vertex is looped."""
    edges = [set(c) for c in combinations(range(n), 2)]
    if mode == LOOP:
        edges += [{v} for v in range(n)]
    return Graph(range(n), edges, mode)


def unlooped_complete(n: int) -> Graph:
    """K^n_u: complete loop graph without loops."""
    return Graph(range(n), [set(c) for c in combinations(range(n), 2)], LOOP)


def discrete_graph(n: int, mode=REFLEXIVE) -> Graph:
    return Graph(range(n), [{v} for v in range(n)] if mode == LOOP else [], mode)


def path_graph(n: int) -> Graph:
    return Graph(range(n + 1), [{i, i + 1} for i in range(n)])


def cycle_graph(n: int) -> Graph:
    return Graph(range(n), [{i, (i + 1) % n} for i in range(n)])


def graph_coproduct(G: Graph, H: Graph) -> Graph:
    if G.mode != H.mode:
        raise ValueError("mode mismatch")
    vs = [(0, v) for v in G.vertices] + [(1, v) for v in H.vertices]
    es = [{(0, v) for v in e} for e in G.edges] + [{(1, v) for v in e} for e in H.edges]
    return Graph(vs, es, G.mode)


def iter_graphs(n: int, mode=REFLEXIVE):
    """Every graph of the given mode on the vertex set {0..n-1}."""
    pairs = [set(c) for c in combinations(range(n), 2)]
    loops = [{v} for v in range(n)] if mode == LOOP else []
    cand = pairs + loops
    for bits in iproduct((0, 1), repeat=len(cand)):
        yield Graph(range(n), [c for c, b in zip(cand, bits) if b], mode)


# -- functors ----------------------------------------------------------------


def clique_complex(G: Graph) -> Complex:
    if not G.reflexive:
        raise ValueError("clique_complex needs a reflexive graph; apply max_reflexive first")
    g = nx.Graph()
    g.add_nodes_from(G.vertices)
    g.add_edges_from(G.proper_edges())
    return make_complex(G.vertices, [frozenset(c) for c in nx.find_cliques(g)])


def skeleton1(K: Complex) -> Graph:
    """Underlying reflexive graph of a complex."""
    edges = {frozenset(c) for f in K.facets for c in combinations(f, 2)}
    return Graph(K.vertices, edges, REFLEXIVE)


def graph_as_complex(G: Graph) -> Complex:
    """The inclusion of reflexive graphs into complexes (edges as 1-simplices)."""
    if not G.reflexive:
        raise ValueError("only reflexive graphs are complexes")
    return make_complex(G.vertices, [e for e in G.edges])


def max_reflexive(G: Graph) -> Graph:
    """Induced subgraph on the looped vertices."""
    if G.reflexive:
        raise ValueError("max_reflexive expects a loop graph")
    keep = {v for v in G.vertices if G.looped(v)}
    return Graph(keep, [e for e in G.edges if len(e) == 2 and e <= keep], REFLEXIVE)


def add_loops(G: Graph) -> Graph:
    """Loop graph made reflexive by looping every vertex."""
    if G.reflexive:
        raise ValueError("add_loops expects a loop graph")
    return Graph(G.vertices, [e for e in G.edges if len(e) == 2], REFLEXIVE)


def as_loop(G: Graph) -> Graph:
    """Reflexive graph viewed as a loop graph with every loop explicit."""
    if not G.reflexive:
        raise ValueError("as_loop expects a reflexive graph")
    return Graph(G.vertices, list(G.edges) + [{v} for v in G.vertices], LOOP)


def graph_product(G: Graph, H: Graph) -> Graph:
    if G.mode != H.mode:
        raise ValueError("mode mismatch")
    vs = [(g, h) for g in G.vertices for h in H.vertices]
    es = []
    for i, a in enumerate(vs):
        for b in vs[i:]:
            if G.has_edge(a[0], b[0]) and H.has_edge(a[1], b[1]):
                es.append({a, b})
    return Graph(vs, es, G.mode)


# -- homomorphisms and exponentials -----------------------------------------


def _check_budget(G: Graph, H: Graph, budget):
    n = len(H.vertices) ** len(G.vertices)
    if n > budget:
        raise BudgetExceeded(f"{n} candidate functions exceed budget {budget}")


def _directed_edges(G: Graph):
    return [(x, y) for x in G.vertices for y in G.neighbors(x)]


def iter_homs(G: Graph, H: Graph, budget=EXPONENTIAL_BUDGET):
    """Edge-preserving vertex functions G -> H as tuples over G.vertices."""
    if G.mode != H.mode:
        raise ValueError("mode mismatch")
    _check_budget(G, H, budget)
    order = list(G.vertices)
    pos = {v: i for i, v in enumerate(order)}
    earlier = [[pos[y] for y in G.neighbors(x) if pos[y] <= pos[x]] for x in order]
    assign = [None] * len(order)
    counter = Budget(budget)

    def rec(i):
        if i == len(order):
            yield tuple(assign)
            return
        for w in H.vertices:
            counter.tick()
            assign[i] = w
            if all(H.has_edge(w, assign[j]) for j in earlier[i]):
                yield from rec(i + 1)
        assign[i] = None

    yield from rec(0)


def enumerate_homs(G: Graph, H: Graph, budget=EXPONENTIAL_BUDGET):
    return [GraphMap(G, H, dict(zip(G.vertices, t)), check=False) for t in iter_homs(G, H, budget)]


def _adjacent(f, g, darts, idx, H):
    return all(H.has_edge(f[idx[x]], g[idx[y]]) for x, y in darts)


def exponential_loop(H: Graph, G: Graph, budget=EXPONENTIAL_BUDGET) -> Graph:
    """H^G in loop graphs: all functions, looped exactly at the homomorphisms."""
    if H.reflexive:
        H = as_loop(H)
    if G.reflexive:
        G = as_loop(G)
    _check_budget(G, H, budget)
    funcs = list(iproduct(H.vertices, repeat=len(G.vertices)))
    idx = {v: i for i, v in enumerate(G.vertices)}
    darts = _directed_edges(G)
    edges = []
    for i, f in enumerate(funcs):
        for g in funcs[i:]:
            if _adjacent(f, g, darts, idx, H):
                edges.append({f, g})
    return Graph(funcs, edges, LOOP)


def exponential_reflexive(H: Graph, G: Graph, budget=EXPONENTIAL_BUDGET) -> Graph:
    """Internal hom in reflexive graphs; vertices are the homomorphisms G -> H."""
    if not (H.reflexive and G.reflexive):
        raise ValueError("exponential_reflexive expects reflexive graphs")
    homs = list(iter_homs(G, H, budget))
    idx = {v: i for i, v in enumerate(G.vertices)}
    darts = _directed_edges(G)
    edges = []
    for i, f in enumerate(homs):
        for g in homs[i + 1:]:
            if _adjacent(f, g, darts, idx, H):
                edges.append({f, g})
    return Graph(homs, edges, REFLEXIVE)


def hom_complex(G: Graph, H: Graph, budget=EXPONENTIAL_BUDGET) -> Complex:
    """Clique complex of the looped part of H^G (a model of Hom(G, H))."""
    if G.reflexive:
        G = as_loop(G)
    if H.reflexive:
        H = as_loop(H)
    homs = list(iter_homs(G, H, budget))
    idx = {v: i for i, v in enumerate(G.vertices)}
    darts = _directed_edges(G)
    edges = [{f, g} for i, f in enumerate(homs) for g in homs[i + 1:] if _adjacent(f, g, darts, idx, H)]
    return clique_complex(Graph(homs, edges, REFLEXIVE))
