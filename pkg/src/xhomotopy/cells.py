"""Generating cofibrations, finite cell structures, retract certificates and
a brute-force lifting solver."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from ._util import DEFAULT_BUDGET, Budget, BudgetExceeded, as_budget, vertex_key
from .complexes import (
    Complex,
    VertexMap,
    boundary,
    delta,
    empty_complex,
    horn,
    induced_subcomplex,
    inclusion,
    path_complex,
    point,
    pushout_mono,
    simplicial_maps,
)
from .subdivision import sd2

MAX_GENERATOR_DIM = 4


def _check_n(n):
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > MAX_GENERATOR_DIM:
        raise BudgetExceeded(f"generator dimension {n} exceeds the limit {MAX_GENERATOR_DIM}")


def gen_cofibration(n: int) -> VertexMap:
    """sd2(boundary of Delta^n) -> sd2(Delta^n)."""
    _check_n(n)
    return inclusion(sd2(boundary(n)).base, sd2(delta(n)).base)


def gen_trivial_cofibration(n: int, k: int) -> VertexMap:
    """sd2(horn(n, k)) -> sd2(Delta^n)."""
    _check_n(n)
    return inclusion(sd2(horn(n, k)).base, sd2(delta(n)).base)


def endpoint_inclusion(n: int) -> VertexMap:
    """The point 0 into I_n."""
    return inclusion(point(0), path_complex(n))


def generator(tag) -> VertexMap:
    """Resolve a generator tag: ("I", n), ("J", n, k) or ("endpoint", n)."""
    kind = tag[0]
    if kind == "I":
        return gen_cofibration(tag[1])
    if kind == "J":
        return gen_trivial_cofibration(tag[1], tag[2])
    if kind == "endpoint":
        return endpoint_inclusion(tag[1])
    raise ValueError(f"unknown generator tag {tag!r}")


# -- cell structures ---------------------------------------------------------------


def attach(stage: Complex, gen: VertexMap, attaching: VertexMap, names=None):
    """Glue gen's target onto ``stage`` along ``attaching`` (defined on gen's source).

    Returns (new stage, inclusion of the old stage).
    """
    if attaching.source != gen.source or attaching.target != stage:
        raise ValueError("attaching map must go from the generator's source to the stage")
    VertexMap(attaching.source, attaching.target, attaching.mapping)
    B, _, f = pushout_mono(gen, attaching, names=names)
    return B, f


@dataclass
class Attachment:
    tag: tuple
    assignment: dict
    names: dict | None = None


@dataclass
class CellStructure:
    base: Complex
    attachments: list = field(default_factory=list)

    def stages(self):
        """Replay the attachments; yields (stage, inclusion into next stage)."""
        stage = self.base
        out = [stage]
        incs = []
        for a in self.attachments:
            gen = generator(a.tag)
            att = VertexMap(gen.source, stage, a.assignment)
            stage, inc = attach(stage, gen, att, names=a.names)
            out.append(stage)
            incs.append(inc)
        return out, incs

    def final(self) -> Complex:
        return self.stages()[0][-1]


def verify_cell_structure(cs: CellStructure, expected: Complex | None = None) -> bool:
    try:
        stages, incs = cs.stages()
    except ValueError:
        return False
    for inc in incs:
        if not inc.is_injective():
            return False
    return expected is None or stages[-1] == expected


def tree_cell_structure(T: Complex) -> CellStructure:
    """Grow a tree from its least vertex, gluing one edge at a time along an endpoint."""
    if T.is_empty() or T.dim > 1:
        raise ValueError("a tree is a nonempty complex of dimension at most 1")
    adj = {v: set() for v in T.vertices}
    for f in T.facets:
        if len(f) == 2:
            a, b = tuple(f)
            adj[a].add(b)
            adj[b].add(a)
    root = T.vertices[0]
    seen = {root}
    atts = []
    frontier = [root]
    while frontier:
        nxt = []
        for v in frontier:
            for w in sorted(adj[v] - seen, key=vertex_key):
                seen.add(w)
                atts.append(Attachment(("endpoint", 1), {0: v}, names={1: w}))
                nxt.append(w)
        frontier = nxt
    if seen != set(T.vertices):
        raise ValueError("not connected")
    cs = CellStructure(point(root), atts)
    if cs.final() != T:
        raise ValueError("not a tree")
    return cs


def cycle_cell_structure(n: int = 1) -> CellStructure:
    """C_{4n} from the empty complex: n points, then n copies of sd2(Delta^1).

    Arc m runs from point m to point m+1 (mod n); for n = 1 both ends of the
    single arc go to the same point.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    pt_name = ((0,),)
    atts = [Attachment(("I", 0), {}, names={pt_name: ("p", m)}) for m in range(n)]
    ends = gen_cofibration(1).source.vertices  # ((0,),) and ((1,),)
    for m in range(n):
        atts.append(
            Attachment(
                ("I", 1),
                {ends[0]: ("p", m), ends[1]: ("p", (m + 1) % n)},
                names={v: ("arc", m, v) for v in gen_cofibration(1).target.vertices},
            )
        )
    return CellStructure(empty_complex(), atts)


# -- retract certificate for paths ---------------------------------------------------


@dataclass
class PathRetraction:
    """I_n as a retract of sd2(I_n) = I_4n, compatible with the endpoint inclusion."""

    n: int
    endpoint: VertexMap  # K^1 -> I_n
    sd2_endpoint: VertexMap  # K^1 -> sd2(I_n)
    j: VertexMap  # I_n -> sd2(I_n)
    r: VertexMap  # sd2(I_n) -> I_n
    walk: list  # vertices of sd2(I_n) in path order


def _path_order(P: Complex, start):
    adj = {v: set() for v in P.vertices}
    for f in P.facets:
        if len(f) == 2:
            a, b = tuple(f)
            adj[a].add(b)
            adj[b].add(a)
    walk = [start]
    prev = None
    while True:
        nxt = [w for w in adj[walk[-1]] if w != prev]
        if not nxt:
            return walk
        prev = walk[-1]
        walk.append(nxt[0])


def path_retraction(n: int) -> PathRetraction:
    if n < 1:
        raise ValueError("n must be at least 1")
    In = path_complex(n)
    S = sd2(In).base
    start = ((0,),)
    walk = _path_order(S, start)
    j = VertexMap(In, S, {m: walk[m] for m in range(n + 1)})
    r = VertexMap(S, In, {v: min(m, n) for m, v in enumerate(walk)})
    pt = point(0)
    return PathRetraction(n, VertexMap(pt, In, {0: 0}), VertexMap(pt, S, {0: start}), j, r, walk)


def verify_path_retraction(c: PathRetraction) -> bool:
    In = path_complex(c.n)
    try:
        for m in (c.j, c.r, c.endpoint, c.sd2_endpoint):
            VertexMap(m.source, m.target, m.mapping)
    except ValueError:
        return False
    if len(c.walk) != 4 * c.n + 1 or len(c.j.target.vertices) != 4 * c.n + 1:
        return False
    if any(c.r(c.j(m)) != m for m in In.vertices):
        return False
    # the retract diagram commutes: j i = sd2(i), r sd2(i) = i
    if c.j(c.endpoint(0)) != c.sd2_endpoint(0) or c.r(c.sd2_endpoint(0)) != c.endpoint(0):
        return False
    return True


# -- lifting ---------------------------------------------------------------------------


@dataclass
class LiftingProblem:
    """A commuting square i : A -> B (left), p : X -> Y (right), top : A -> X, bottom : B -> Y."""

    i: VertexMap
    p: VertexMap
    top: VertexMap
    bottom: VertexMap

    def __post_init__(self):
        if self.top.source != self.i.source or self.top.target != self.p.source:
            raise ValueError("top must go from A to X")
        if self.bottom.source != self.i.target or self.bottom.target != self.p.target:
            raise ValueError("bottom must go from B to Y")
        for a in self.i.source.vertices:
            if self.p(self.top(a)) != self.bottom(self.i(a)):
                raise ValueError("square does not commute")


def _fibers(p: VertexMap):
    fib = {y: [] for y in p.target.vertices}
    for x in p.source.vertices:
        fib[p(x)].append(x)
    return fib


def solve_lifting(lp: LiftingProblem, budget=DEFAULT_BUDGET):
    """A lift h : B -> X with h i = top and p h = bottom, or None.

    Vertices of B outside i(A) are assigned in id order with candidates in id order.
    """
    budget = as_budget(budget)
    B, X = lp.i.target, lp.p.source
    fixed = {}
    for a in lp.i.source.vertices:
        b = lp.i(a)
        if b in fixed and fixed[b] != lp.top(a):
            return None
        fixed[b] = lp.top(a)
    fib = _fibers(lp.p)
    cands = {b: fib[lp.bottom(b)] for b in B.vertices if b not in fixed}
    for h in simplicial_maps(B, X, fixed=fixed, candidates=cands, budget=budget):
        return VertexMap(B, X, h, check=False)
    return None


def cone_section(i: VertexMap, p: VertexMap, budget=DEFAULT_BUDGET):
    """A section c of p that solves every square against i at once, or None.

    Needs i(A) to be a full subcomplex of B and c : Y -> X with p c = 1 such
    that sigma + c(tau) is a face of X whenever sigma is a face of X, tau a face
    of Y and p(sigma) lies in tau. Then h = top on i(A) and c bottom elsewhere
    is a lift of any square, since every face of B splits into a part in i(A)
    and a part outside it. Returns None when no such c exists (which decides
    nothing about the squares).
    """
    A, B = i.source, i.target
    if not i.is_injective():
        return None
    img = {i(a) for a in A.vertices}
    if induced_subcomplex(B, img) != Complex(img, [i.image(s) for s in A.facets]):
        return None
    X, Y = p.source, p.target
    fib = _fibers(p)
    if any(not xs for xs in fib.values()):
        return None
    y_faces = list(Y.faces)
    x_faces = list(X.faces)
    budget = as_budget(budget)
    for c in simplicial_maps(Y, X, candidates=fib, budget=budget):
        ok = True
        for sigma in x_faces:
            ps = {p(x) for x in sigma}
            for tau in y_faces:
                budget.tick()
                if ps <= tau and not X.is_face(sigma | {c[y] for y in tau}):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return VertexMap(Y, X, c, check=False)
    return None


def lifting_squares(i: VertexMap, p: VertexMap, budget: Budget):
    """Enumerate every commuting square from i to p as (top, bottom)."""
    A, B = i.source, i.target
    X, Y = p.source, p.target
    fib = _fibers(p)
    for bot in simplicial_maps(B, Y, budget=budget):
        cands = {a: fib[bot[i(a)]] for a in A.vertices}
        for top in simplicial_maps(A, X, candidates=cands, budget=budget):
            yield top, bot


def has_rlp(i: VertexMap, p: VertexMap, budget=DEFAULT_BUDGET) -> bool:
    """Whether p lifts against i in every commuting square.

    A cone section (see cone_section) settles this at once; otherwise every
    square is enumerated and solved. Raises BudgetExceeded when cut off.
    """
    budget = as_budget(budget)
    if cone_section(i, p, budget) is not None:
        return True
    A, B, X, Y = i.source, i.target, p.source, p.target
    for top, bot in lifting_squares(i, p, budget):
        lp = LiftingProblem(i, p, VertexMap(A, X, top, check=False), VertexMap(B, Y, bot, check=False))
        if solve_lifting(lp, budget) is None:
            return False
    return True


def is_trivial_fibration_up_to(p: VertexMap, n_max: int, budget=DEFAULT_BUDGET) -> bool:
    """p lifts against sd2(boundary Delta^n) -> sd2(Delta^n) for every n <= n_max.

    A finite check: passing says nothing about n > n_max.
    """
    budget = as_budget(budget)
    for n in range(n_max + 1):
        if not has_rlp(gen_cofibration(n), p, budget):
            return False
    return True


def random_simplicial_map(K: Complex, L: Complex, rng: random.Random, fixed=None, budget=DEFAULT_BUDGET):
    """A simplicial map found by backtracking with shuffled candidate order."""
    cands = {}
    for v in K.vertices:
        vs = list(L.vertices)
        rng.shuffle(vs)
        cands[v] = vs
    for m in simplicial_maps(K, L, fixed=fixed, candidates=cands, budget=as_budget(budget)):
        return VertexMap(K, L, m, check=False)
    return None
