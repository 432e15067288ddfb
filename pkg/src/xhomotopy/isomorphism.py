"""Backtracking isomorphism search between small complexes."""

from __future__ import annotations

from collections import Counter

from ._util import DEFAULT_BUDGET, Budget, vertex_key
from .complexes import Complex


def _neighbors(K: Complex):
    nb = {v: set() for v in K.vertices}
    for f in K.facets:
        for v in f:
            nb[v] |= f
    for v in nb:
        nb[v].discard(v)
    return nb


def _signatures(K: Complex, nb):
    sig = {}
    for v in K.vertices:
        sizes = tuple(sorted(len(f) for f in K.facets_containing(v)))
        sig[v] = (len(nb[v]), sizes)
    return sig


def isomorphic(K: Complex, L: Complex, budget: int = DEFAULT_BUDGET):
    """Return a vertex bijection K -> L carrying facets onto facets, or None.

    Raises BudgetExceeded when the search is cut off before a verdict.
    """
    if len(K.vertices) != len(L.vertices) or len(K.facets) != len(L.facets):
        return None
    if Counter(len(f) for f in K.facets) != Counter(len(f) for f in L.facets):
        return None
    nbK, nbL = _neighbors(K), _neighbors(L)
    sigK, sigL = _signatures(K, nbK), _signatures(L, nbL)
    if Counter(sigK.values()) != Counter(sigL.values()):
        return None

    by_sig = {}
    for w in L.vertices:
        by_sig.setdefault(sigL[w], []).append(w)
    class_size = Counter(sigK.values())

    # rarest class first, then stay connected to what is already placed
    order = []
    placed = set()
    remaining = sorted(K.vertices, key=lambda v: (class_size[sigK[v]], vertex_key(v)))
    while remaining:
        nxt = next((v for v in remaining if nbK[v] & placed), remaining[0])
        remaining.remove(nxt)
        order.append(nxt)
        placed.add(nxt)

    counter = Budget(budget)
    phi = {}
    used = set()
    target_facets = L.facets

    def rec(i):
        if i == len(order):
            return frozenset(frozenset(phi[v] for v in f) for f in K.facets) == target_facets
        v = order[i]
        cands = by_sig[sigK[v]]
        if v in L.vertex_set and sigL.get(v) == sigK[v]:
            cands = [v] + [w for w in cands if w != v]
        for w in cands:
            if w in used:
                continue
            counter.tick()
            ok = all((u in nbK[v]) == (phi[u] in nbL[w]) for u in phi)
            if not ok:
                continue
            phi[v] = w
            used.add(w)
            if rec(i + 1):
                return True
            del phi[v]
            used.discard(w)
        return False

    return dict(phi) if rec(0) else None
