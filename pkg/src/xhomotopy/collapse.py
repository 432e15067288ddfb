"""Dominated vertices, strong collapses, cores and strong NDR witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field

from ._util import DEFAULT_BUDGET, as_budget, vertex_key
from .complexes import Complex, VertexMap, deletion, induced_subcomplex, is_subcomplex, neighborhood
from .homotopy import ContiguityChain, Retraction


def dominators(K: Complex, v):
    """Vertices v' != v lying in every facet that contains v."""
    if v not in K.vertex_set:
        raise ValueError(f"{v!r} is not a vertex")
    common = frozenset.intersection(*K.facets_containing(v))
    return sorted(common - {v}, key=vertex_key)


def dominated(K: Complex, v):
    """The least vertex dominating v, or None."""
    d = dominators(K, v)
    return d[0] if d else None


@dataclass
class CollapseSequence:
    """Elementary strong collapses as (deleted vertex, dominating vertex) pairs."""

    steps: list = field(default_factory=list)

    def __len__(self):
        return len(self.steps)


class CollapseError(ValueError):
    pass


def elementary_collapse(K: Complex, v) -> Complex:
    if dominated(K, v) is None:
        raise CollapseError(f"{v!r} is not dominated")
    return deletion(K, {v})


def replay(K: Complex, seq: CollapseSequence) -> Complex:
    for v, w in seq.steps:
        if v not in K.vertex_set or w not in dominators(K, v):
            raise CollapseError(f"step ({v!r}, {w!r}) is not an elementary strong collapse")
        K = deletion(K, {v})
    return K


def core(K: Complex):
    """Greedy strong collapse, always removing the least dominated vertex."""
    steps = []
    while True:
        for v in K.vertices:
            w = dominated(K, v)
            if w is not None:
                steps.append((v, w))
                K = deletion(K, {v})
                break
        else:
            return K, CollapseSequence(steps)


def collapses_to(L: Complex, K: Complex, budget=DEFAULT_BUDGET):
    """A strong collapse of L onto the subcomplex K, or None if none exists.

    Only vertices outside K are deleted. Greedy order is tried first and the
    search backtracks over the other dominated vertices, memoising dead ends.
    Raises BudgetExceeded when the search is cut off.
    """
    if not is_subcomplex(K, L):
        raise ValueError("K must be a subcomplex of L")
    budget = as_budget(budget)
    keep = K.vertex_set
    if induced_subcomplex(L, keep) != K:
        return None
    dead = set()
    steps = []

    def rec(M: Complex):
        budget.tick()
        if M.vertex_set == keep:
            return True
        if M.vertex_set in dead:
            return False
        for v in M.vertices:
            if v in keep:
                continue
            w = dominated(M, v)
            if w is None:
                continue
            steps.append((v, w))
            if rec(deletion(M, {v})):
                return True
            steps.pop()
        dead.add(M.vertex_set)
        return False

    return CollapseSequence(list(steps)) if rec(L) else None


def retraction_from_collapse(L: Complex, K: Complex, seq: CollapseSequence) -> Retraction:
    """Deformation retraction of L onto K built step by step from a collapse.

    Each step v -> v' contributes a map contiguous to the previous one.
    """
    current = {v: v for v in L.vertices}
    maps = [VertexMap(L, L, current, check=False)]
    for v, w in seq.steps:
        current = {x: (w if y == v else y) for x, y in current.items()}
        maps.append(VertexMap(L, L, current, check=False))
    inc = VertexMap(K, L, {v: v for v in K.vertices}, check=False)
    r = VertexMap(L, K, current, check=False)
    return Retraction(inc, r, ContiguityChain(maps))


@dataclass
class NdrWitness:
    L: Complex
    K: Complex
    L_prime: Complex
    collapse: CollapseSequence


def ndr_witness(L: Complex, K: Complex, budget=DEFAULT_BUDGET):
    """Look for L' with n_L(K) in L' and a strong collapse of L' onto K.

    L' starts as the subcomplex induced on the neighborhood of K and grows one
    vertex at a time (least id among vertices adjacent to L', else least id).
    Returns None once L' = L fails; that is not a proof that no witness exists
    among non-induced candidates.
    """
    if not is_subcomplex(K, L):
        raise ValueError("K must be a subcomplex of L")
    budget = as_budget(budget)
    verts = set(neighborhood(L, K).vertices) | set(K.vertices)
    while True:
        Lp = induced_subcomplex(L, verts)
        seq = collapses_to(Lp, K, budget)
        if seq is not None:
            return NdrWitness(L, K, Lp, seq)
        rest = [v for v in L.vertices if v not in verts]
        if not rest:
            return None
        near = [v for v in rest if any(f & verts for f in L.facets_containing(v))]
        verts.add((near or rest)[0])


def verify_ndr(w: NdrWitness) -> bool:
    L, K, Lp = w.L, w.K, w.L_prime
    if not (is_subcomplex(K, L) and is_subcomplex(Lp, L)):
        return False
    nb = neighborhood(L, K)
    if not is_subcomplex(nb, Lp):
        return False
    if any(v in K.vertex_set for v, _ in w.collapse.steps):
        return False
    try:
        end = replay(Lp, w.collapse)
    except CollapseError:
        return False
    return end == K
