"""The regression suite of combinatorial facts, shared by the tests and the CLI.

Each check returns a CheckResult; ``run_all`` runs them in order.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import chain

from ._util import BudgetExceeded
from .cells import (
    LiftingProblem,
    cycle_cell_structure,
    gen_cofibration,
    gen_trivial_cofibration,
    is_trivial_fibration_up_to,
    path_retraction,
    random_simplicial_map,
    solve_lifting,
    tree_cell_structure,
    verify_cell_structure,
    verify_path_retraction,
    Attachment,
    CellStructure,
)
from .collapse import core, ndr_witness, verify_ndr
from .complexes import (
    VertexMap,
    boundary,
    constant_map,
    delta,
    empty_complex,
    exponential,
    horn,
    is_flag,
    iter_complexes,
    make_complex,
    path_complex,
    point,
    product,
    simplicial_maps,
)
from .corpus import corpus
from .graphs import (
    LOOP,
    REFLEXIVE,
    Graph,
    add_loops,
    as_loop,
    clique_complex,
    complete_graph,
    enumerate_homs,
    exponential_loop,
    exponential_reflexive,
    graph_as_complex,
    graph_coproduct,
    hom_complex,
    iter_graphs,
    iter_homs,
    max_reflexive,
    skeleton1,
    unlooped_complete,
)
from .homology import components, homology, is_homology_iso
from .homotopy import contiguity_classes, find_deformation_retract, is_contiguous, is_one_homotopic, reachable_maps, verify_retraction
from .isomorphism import isomorphic
from .subdivision import iterated_last_vertex_map, last_vertex_map, sd, sd2


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    elapsed: float
    limit: float
    details: list = field(default_factory=list)

    @property
    def in_time(self) -> bool:
        return self.elapsed < self.limit

    def line(self) -> str:
        verdict = "PASS" if self.passed and self.in_time else "FAIL"
        return f"[{verdict}] {self.number:2d} {self.name} ({self.elapsed:.2f}s, limit {self.limit:g}s)"

    def to_json(self):
        return {
            "number": self.number,
            "name": self.name,
            "passed": self.passed and self.in_time,
            "elapsed": round(self.elapsed, 3),
            "limit": self.limit,
            "details": self.details,
        }


class _Checker:
    def __init__(self):
        self.ok = True
        self.details = []

    def expect(self, cond, what):
        if not cond:
            self.ok = False
            self.details.append(f"failed: {what}")

    def note(self, what):
        self.details.append(what)


CHECKS = []


def _check(number, name, limit):
    def deco(fn):
        def run():
            c = _Checker()
            t = time.perf_counter()
            try:
                fn(c)
            except BudgetExceeded as e:
                c.ok = False
                c.details.append(f"unknown: {e}")
            return CheckResult(number, name, c.ok, time.perf_counter() - t, limit, c.details)

        run.number = number
        run.name = name
        CHECKS.append(run)
        return run

    return deco


@_check(1, "subdivision of paths and of the 2-simplex", 1.0)
def check_subdivision(c):
    for n in range(1, 5):
        c.expect(isomorphic(sd(path_complex(n)).base, path_complex(2 * n)) is not None, f"sd I_{n} = I_{2 * n}")
    S = sd(delta(2)).base
    c.expect(len(S.vertices) == 7 and len(S.facets) == 6, "sd Delta^2 has 7 vertices and 6 facets")
    c.note(f"sd Delta^2: {len(S.vertices)} vertices, {len(S.facets)} facets")


@_check(2, "product of two 1-simplices", 1.0)
def check_product(c):
    P = product(delta(1), delta(1))
    c.expect(isomorphic(P, delta(3)) is not None, "Delta^1 x Delta^1 = Delta^3")


@_check(3, "strong collapse cores", 30.0)
def check_cores(c):
    for n in range(5):
        c.expect(len(core(delta(n))[0].vertices) == 1, f"core Delta^{n} is a point")
    for n in range(1, 5):
        for k in range(n + 1):
            c.expect(len(core(horn(n, k))[0].vertices) == 1, f"core horn({n},{k}) is a point")
        B = boundary(n)
        c.expect(core(B)[0] == B, f"boundary of Delta^{n} is its own core")
    for n in range(1, 4):
        c.expect(len(core(sd2(horn(n, 0)).base)[0].vertices) == 1, f"core sd2 horn({n},0) is a point")


@_check(4, "strong NDR witnesses for subdivided boundaries and horns", 600.0)
def check_ndr(c):
    for n in range(4):
        L = sd2(delta(n)).base
        pairs = [("boundary", sd2(boundary(n)).base)]
        if n >= 1:
            pairs.append(("horn", sd2(horn(n, 0)).base))
        for label, K in pairs:
            w = ndr_witness(L, K)
            c.expect(w is not None and verify_ndr(w), f"NDR witness for sd2 {label} in sd2 Delta^{n}")
            if w is not None:
                c.note(f"n={n} {label}: L' has {len(w.L_prime.vertices)} of {len(L.vertices)} vertices, {len(w.collapse)} collapses")


def cofibration_structures(seed: int = 0, count: int = 6, steps: int = 4):
    """Deterministic cell structures from the empty complex with random attaching maps."""
    rng = random.Random(seed)
    out = [cycle_cell_structure(1), cycle_cell_structure(2)]
    for s in range(count):
        cs = CellStructure(empty_complex(), [Attachment(("I", 0), {}, names={((0,),): ("p", s, 0)})])
        for step in range(steps):
            stage = cs.final()
            n = rng.choice([0, 1, 1, 2, 2, 3]) if step else 1
            gen = gen_cofibration(n)
            # attach through sd2(boundary) -> boundary so the search stays small
            small = random_simplicial_map(boundary(n), stage, rng)
            att = iterated_last_vertex_map(boundary(n)).then(small)
            names = {v: ("c", s, step, v) for v in gen.target.vertices}
            cs.attachments.append(Attachment(("I", n), dict(att.mapping), names))
        out.append(cs)
    return out


@_check(5, "flag complexes: subdivisions and cell structures", 60.0)
def check_flag(c):
    for name, K in corpus():
        c.expect(is_flag(sd(K).base), f"sd of corpus complex {name} is flag")
    structures = cofibration_structures()
    for i, cs in enumerate(structures):
        ok = verify_cell_structure(cs)
        c.expect(ok, f"cell structure {i} replays")
        stages, _ = cs.stages()
        c.expect(all(is_flag(S) for S in stages), f"every stage of cell structure {i} is flag")
    c.note(f"{len(corpus())} corpus complexes, {len(structures)} cell structures")


@_check(6, "homology oracle", 60.0)
def check_homology(c):
    for n in range(2, 5):
        expected = [1] + [0] * (n - 2) + [1]
        c.expect(homology(boundary(n)).betti == expected, f"boundary of Delta^{n} is a {n - 1}-sphere")
    C4 = clique_complex(Graph(range(4), [{0, 1}, {1, 2}, {2, 3}, {3, 0}]))
    c.expect(homology(C4).betti == [1, 1], "clique complex of C_4 is a circle")
    for name, K in corpus():
        c.expect(is_homology_iso(last_vertex_map(K)), f"last vertex map of {name} is a homology iso")


def small_complexes(max_vertices: int = 3):
    return list(chain.from_iterable(iter_complexes(n) for n in range(max_vertices + 1)))


@_check(7, "x-homotopy search agrees with the contiguity closure", 120.0)
def check_homotopy(c):
    cs = small_complexes(3)
    pairs = maps = 0
    for K in cs:
        for L in cs:
            pairs += 1
            classes = contiguity_classes(K, L)
            ms = [VertexMap(K, L, dict(zip(K.vertices, t)), check=False) for t in classes]
            for f in ms:
                maps += 1
                reach = reachable_maps(f)
                same = {t for t, r in classes.items() if r == classes[f.as_tuple()]}
                c.expect(reach == same, f"reachability from {f!r}")
            for f in ms:
                for g in ms:
                    c.expect(is_one_homotopic(f, g) == is_contiguous(f, g), f"1-homotopy vs contiguity {f!r}, {g!r}")
    c.note(f"{pairs} pairs of complexes, {maps} maps")


def small_graphs(mode, max_vertices: int = 3):
    return list(chain.from_iterable(iter_graphs(n, mode) for n in range(max_vertices + 1)))


def _count(G, H):
    return sum(1 for _ in iter_homs(G, H))


@_check(8, "graph functor adjunctions and the exponential comparison", 120.0)
def check_graph_functors(c):
    refl = small_graphs(REFLEXIVE)
    loop = small_graphs(LOOP)
    cpx = small_complexes(3)
    for G in loop:
        for H in refl:
            c.expect(_count(add_loops(G), H) == _count(G, as_loop(H)), "add_loops -| as_loop")
    for G in refl:
        for H in loop:
            c.expect(_count(as_loop(G), H) == _count(G, max_reflexive(H)), "as_loop -| max_reflexive")
    for G in refl:
        for K in cpx:
            lhs = sum(1 for _ in simplicial_maps(graph_as_complex(G), K))
            c.expect(lhs == _count(G, skeleton1(K)), "graph_as_complex -| skeleton1")
    for K in cpx:
        for H in refl:
            rhs = sum(1 for _ in simplicial_maps(K, clique_complex(H)))
            c.expect(_count(skeleton1(K), H) == rhs, "skeleton1 -| clique_complex")
    for G in refl:
        for H in refl:
            lhs = clique_complex(exponential_reflexive(H, G))
            rhs = exponential(clique_complex(H), clique_complex(G))
            c.expect(isomorphic(lhs, rhs) is not None, f"exponential comparison for {G!r}, {H!r}")
    c.note(f"{len(refl)} reflexive graphs, {len(loop)} loop graphs, {len(cpx)} complexes")


@_check(9, "Hom complex versus the derived mapping space", 1.0)
def check_hom_counterexample(c):
    H = graph_coproduct(complete_graph(1, LOOP), complete_graph(1, LOOP))
    G = unlooped_complete(2)
    hc = hom_complex(G, H)
    c.expect(components(hc) == 2, "Hom(K2u, K1 + K1) has two components")
    c.expect(homology(hc).betti == [2], "Hom(K2u, K1 + K1) has two points of homology")
    # derived side: the maximal reflexive part of K2u is empty
    Gc = max_reflexive(G)
    c.expect(len(Gc.vertices) == 0, "max_reflexive(K2u) is empty")
    E = exponential_loop(max_reflexive(H), Gc)
    pts = enumerate_homs(complete_graph(1, LOOP), E)
    c.expect(len(pts) == 1, "one looped vertex in (H°)^(G°)")
    derived = clique_complex(max_reflexive(E))
    c.expect(homology(derived).betti == [1], "derived side is a point up to homology")
    E_full = exponential_loop(H, G)
    c.note(f"H^G has {len(E_full.vertices)} vertices, {len(E_full.loops())} looped; Hom complex components: {components(hc)}")


@_check(10, "cofibrancy certificates for paths, trees and 4n-cycles", 60.0)
def check_cofibrancy(c):
    for n in (1, 2):
        pr = path_retraction(n)
        c.expect(verify_path_retraction(pr), f"I_{n} is a retract of sd2 I_{n}")
        c.expect(is_homology_iso(pr.r), f"retraction for I_{n} is a homology iso")
    trees = [
        path_complex(2),
        make_complex(range(5), [(0, 1), (1, 2), (1, 3), (3, 4)]),
        make_complex(range(4), [(0, 1), (0, 2), (0, 3)]),
    ]
    for T in trees:
        cs = tree_cell_structure(T)
        c.expect(verify_cell_structure(cs, T), f"tree structure for {T!r}")
        stages, _ = cs.stages()
        for a, b in zip(stages, stages[1:]):
            r = find_deformation_retract(b, a)
            c.expect(r is not None and verify_retraction(r), "tree stage is a deformation retract of the next")
    for n in (1, 2):
        cs = cycle_cell_structure(n)
        F = cs.final()
        c.expect(verify_cell_structure(cs), f"C_{4 * n} structure replays")
        c.expect(len(F.vertices) == 4 * n and homology(F).betti == [1, 1], f"C_{4 * n} structure is a {4 * n}-cycle")
        stages, _ = cs.stages()
        for a, b in zip(stages, stages[1:]):
            w = ndr_witness(b, a)
            c.expect(w is not None and verify_ndr(w), f"C_{4 * n} stage inclusion is a strong NDR pair")


def sampled_extensions(seed: int = 0, per_m: int = 10):
    """Random maps sd2(horn(2,0)) -> Delta^m, m <= 2, as extension problems."""
    rng = random.Random(seed)
    j = gen_trivial_cofibration(2, 0)
    out = []
    for m in range(3):
        X = delta(m)
        p = constant_map(X, point(), 0)
        for _ in range(per_m):
            top = random_simplicial_map(j.source, X, rng)
            out.append(LiftingProblem(j, p, top, constant_map(j.target, point(), 0)))
    return out


@_check(11, "lifting against generating cofibrations", 300.0)
def check_lifting(c):
    s = VertexMap(delta(2), delta(1), {0: 0, 1: 0, 2: 1})
    c.expect(is_trivial_fibration_up_to(s, 2), "surjection Delta^2 -> Delta^1 lifts up to n = 2")
    for n in (1, 2):
        q = constant_map(path_complex(n), point(), 0)
        c.expect(is_trivial_fibration_up_to(q, 2), f"I_{n} -> point lifts up to n = 2")
    problems = sampled_extensions()
    solved = 0
    for lp in problems:
        h = solve_lifting(lp)
        ok = h is not None and all(h(lp.i(a)) == lp.top(a) for a in lp.i.source.vertices)
        solved += ok
        c.expect(ok, "sampled extension along sd2 horn(2,0)")
    c.note(f"{solved}/{len(problems)} sampled extensions solved")


def run_all(numbers=None):
    return [run() for run in CHECKS if numbers is None or run.number in numbers]
