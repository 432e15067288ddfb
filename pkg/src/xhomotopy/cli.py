"""Command-line interface.

Exit status: 0 success, 1 negative verdict, 2 unknown (budget exhausted),
3 input error.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import formats as fm
from ._util import DEFAULT_BUDGET, BudgetExceeded
from .cells import gen_cofibration, gen_trivial_cofibration, is_trivial_fibration_up_to
from .collapse import collapses_to, core, ndr_witness
from .complexes import exponential, is_flag, product, pushout_mono
from .graphs import clique_complex, hom_complex, skeleton1
from .homology import components, homology, homology_iso_report
from .homotopy import find_deformation_retract, x_homotopic
from .subdivision import sd, sd2

OK, NO, UNKNOWN, BAD_INPUT = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(path):
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None


def _complex(path):
    try:
        return fm.parse_complex(_read(path))
    except ValueError as e:
        raise InputError(f"{path}: {e}") from None


def _graph(path):
    try:
        return fm.parse_graph(_read(path))
    except ValueError as e:
        raise InputError(f"{path}: {e}") from None


def _map(path, source, target):
    try:
        return fm.parse_map(_read(path), source, target)
    except ValueError as e:
        raise InputError(f"{path}: {e}") from None


class Output:
    def __init__(self, fmt, stream):
        self.json = fmt == "json"
        self.stream = stream

    def emit(self, payload: dict, text: str):
        self.stream.write(fm.dumps(payload) + "\n" if self.json else text)


def _steps_text(seq):
    return "".join(f"remove {fm.format_vertex(v)} (dominated by {fm.format_vertex(w)})\n" for v, w in seq.steps)


def _chain_text(chain):
    parts = []
    for k, m in enumerate(chain.maps):
        parts.append(f"# map {k}\n" + fm.serialize_map(m))
    return "".join(parts)


# -- subcommands -------------------------------------------------------------------


def cmd_sd(a, out):
    K = _complex(a.complex)
    S = (sd2(K) if a.command == "sd2" else sd(K)).base
    out.emit({"complex": fm.complex_json(S)}, fm.serialize_complex(S))
    return OK


def cmd_clique(a, out):
    K = clique_complex(_graph(a.graph))
    out.emit({"complex": fm.complex_json(K)}, fm.serialize_complex(K))
    return OK


def cmd_skeleton(a, out):
    G = skeleton1(_complex(a.complex))
    edges = [[fm.vertex_json(x) for x in e] for e in G.proper_edges()]
    out.emit({"mode": G.mode, "vertices": [fm.vertex_json(v) for v in G.vertices], "edges": edges}, fm.serialize_graph(G))
    return OK


def cmd_flag(a, out):
    flag = is_flag(_complex(a.complex))
    out.emit({"flag": flag}, f"flag: {'yes' if flag else 'no'}\n")
    return OK if flag else NO


def cmd_product(a, out):
    P = product(_complex(a.first), _complex(a.second))
    out.emit({"complex": fm.complex_json(P)}, fm.serialize_complex(P))
    return OK


def cmd_exp(a, out):
    L, K = _complex(a.base), _complex(a.exponent)
    E = exponential(L, K, budget=a.budget if a.budget_given else 10 * DEFAULT_BUDGET)
    out.emit({"complex": fm.complex_json(E)}, fm.serialize_complex(E))
    return OK


def cmd_pushout(a, out):
    K, L, A = _complex(a.shared), _complex(a.along), _complex(a.target)
    i = _map(a.i, K, L)
    u = _map(a.u, K, A)
    try:
        B, v, f = pushout_mono(i, u)
    except ValueError as e:
        raise InputError(str(e)) from None
    out.emit({"complex": fm.complex_json(B), "v": fm.map_json(v)}, fm.serialize_complex(B))
    return OK


def cmd_core(a, out):
    C, seq = core(_complex(a.complex))
    out.emit(
        {"core": fm.complex_json(C), "steps": fm.collapse_json(seq)},
        fm.serialize_complex(C) + "# collapses\n" + "".join("# " + ln + "\n" for ln in _steps_text(seq).splitlines()),
    )
    return OK


def cmd_collapses_to(a, out):
    L, K = _complex(a.big), _complex(a.small)
    seq = collapses_to(L, K, a.budget)
    if seq is None:
        out.emit({"collapses": False}, "collapses: no\n")
        return NO
    out.emit({"collapses": True, "steps": fm.collapse_json(seq)}, "collapses: yes\n" + _steps_text(seq))
    return OK


def cmd_ndr(a, out):
    L, K = _complex(a.big), _complex(a.small)
    w = ndr_witness(L, K, a.budget)
    if w is None:
        out.emit({"ndr": None}, "ndr: no witness found among induced candidates\n")
        return NO
    out.emit(
        {"ndr": fm.ndr_json(w)},
        "ndr: yes\n# L'\n" + fm.serialize_complex(w.L_prime) + "# collapse of L' onto K\n" + _steps_text(w.collapse),
    )
    return OK


def cmd_homotopic(a, out):
    K, L = _complex(a.source), _complex(a.target)
    f, g = _map(a.f, K, L), _map(a.g, K, L)
    chain = x_homotopic(f, g, a.budget)
    if chain is None:
        out.emit({"homotopic": False}, "homotopic: no\n")
        return NO
    out.emit({"homotopic": True, "chain": fm.chain_json(chain)}, "homotopic: yes\n" + _chain_text(chain))
    return OK


def cmd_retract(a, out):
    L, K = _complex(a.big), _complex(a.small)
    r = find_deformation_retract(L, K, a.budget)
    if r is None:
        out.emit({"retract": False}, "retract: no\n")
        return NO
    out.emit(
        {"retract": True, "retraction": fm.map_json(r.retraction), "chain": fm.chain_json(r.chain)},
        "retract: yes\n# retraction\n" + fm.serialize_map(r.retraction) + _chain_text(r.chain),
    )
    return OK


def cmd_homology(a, out):
    K = _complex(a.complex)
    if a.map:
        if not a.to:
            raise InputError("--map needs --to")
        L = _complex(a.to)
        rep = homology_iso_report(_map(a.map, K, L))
        out.emit(rep, f"homology_iso: {'yes' if rep['homology_iso'] else 'no'}\ndegrees_checked: {rep['degrees_checked']}\n")
        return OK if rep["homology_iso"] else NO
    h = homology(K)
    out.emit(h.to_json(), f"betti: {h.betti}\ntorsion: {h.torsion}\n")
    return OK


def cmd_hom_complex(a, out):
    G, H = _graph(a.source), _graph(a.target)
    kw = {"budget": a.budget} if a.budget_given else {}
    X = hom_complex(G, H, **kw)
    h = homology(X)
    out.emit(
        {"components": components(X), "homology": h.to_json(), "complex": fm.complex_json(X)},
        f"components: {components(X)}\nbetti: {h.betti}\n" + fm.serialize_complex(X),
    )
    return OK


def cmd_gen_cofib(a, out):
    i = gen_trivial_cofibration(a.n, a.horn) if a.horn is not None else gen_cofibration(a.n)
    out.emit(
        {"source": fm.complex_json(i.source), "target": fm.complex_json(i.target)},
        "# source\n" + fm.serialize_complex(i.source) + "# target\n" + fm.serialize_complex(i.target),
    )
    return OK


def cmd_lift(a, out):
    X, Y = _complex(a.source), _complex(a.target)
    p = _map(a.p, X, Y)
    ok = is_trivial_fibration_up_to(p, a.n_max, a.budget)
    out.emit({"lifts": ok, "n_max": a.n_max}, f"lifts against generators up to n={a.n_max}: {'yes' if ok else 'no'}\n")
    return OK if ok else NO


def cmd_verify_paper(a, out):
    from .acceptance import run_all

    results = run_all(set(a.only) if a.only else None)
    passed = all(r.passed and r.in_time for r in results)
    text = "".join(r.line() + "\n" + "".join(f"    {d}\n" for d in r.details) for r in results)
    out.emit({"passed": passed, "checks": [r.to_json() for r in results]}, text)
    return OK if passed else NO


# -- parser ----------------------------------------------------------------------------


def _positive(s):
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{s!r} is not an integer") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("budget must be positive")
    return v


def _nonneg(s):
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--budget", type=_positive, default=None, help="search step budget")

    p = argparse.ArgumentParser(prog="xho", description="x-homotopy and model-structure tools for simplicial complexes and graphs")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, *args, help=None):
        s = sub.add_parser(name, parents=[common], help=help)
        for arg in args:
            s.add_argument(arg)
        s.set_defaults(func=fn)
        return s

    add("sd", cmd_sd, "complex", help="barycentric subdivision")
    add("sd2", cmd_sd, "complex", help="second barycentric subdivision")
    add("clique", cmd_clique, "graph", help="clique complex of a reflexive graph")
    add("skeleton", cmd_skeleton, "complex", help="1-skeleton as a reflexive graph")
    add("flag", cmd_flag, "complex", help="flag complex test")
    add("product", cmd_product, "first", "second", help="categorical product")
    add("exp", cmd_exp, "base", "exponent", help="exponential base^exponent")
    add("pushout", cmd_pushout, "shared", "along", "target", "i", "u", help="pushout of u along an injective i")
    add("core", cmd_core, "complex", help="core by greedy strong collapse")
    add("collapses-to", cmd_collapses_to, "big", "small", help="strong collapse of big onto a subcomplex")
    add("ndr", cmd_ndr, "big", "small", help="strong NDR witness")
    add("homotopic", cmd_homotopic, "source", "target", "f", "g", help="x-homotopy between two maps")
    add("retract", cmd_retract, "big", "small", help="deformation retraction onto a subcomplex")
    h = add("homology", cmd_homology, "complex", help="integral homology, or homology iso test of a map")
    h.add_argument("--map", default=None)
    h.add_argument("--to", default=None)
    add("hom-complex", cmd_hom_complex, "source", "target", help="Hom complex of two graphs")
    g = add("gen-cofib", cmd_gen_cofib, help="generating (trivial) cofibration")
    g.add_argument("n", type=_nonneg)
    g.add_argument("--horn", type=_nonneg, default=None, help="use the horn missing face k")
    lf = add("lift", cmd_lift, "source", "target", "p", help="lifting against generating cofibrations")
    lf.add_argument("--n-max", type=_nonneg, default=2)
    v = add("verify-paper", cmd_verify_paper, help="run the regression suite")
    v.add_argument("--only", type=int, nargs="*", default=None)
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return OK if e.code == 0 else BAD_INPUT
    a.budget_given = a.budget is not None
    if a.budget is None:
        env = os.environ.get("XHO_BUDGET")
        try:
            a.budget = _positive(env) if env else DEFAULT_BUDGET
        except argparse.ArgumentTypeError as e:
            stderr.write(f"error: XHO_BUDGET: {e}\n")
            return BAD_INPUT
        a.budget_given = bool(env)
    out = Output(a.format, stdout)
    try:
        return a.func(a, out)
    except InputError as e:
        stderr.write(f"error: {e}\n")
        return BAD_INPUT
    except BudgetExceeded as e:
        out.emit({"unknown": True, "reason": str(e)}, f"unknown: {e}\n")
        return UNKNOWN
    except ValueError as e:
        stderr.write(f"error: {e}\n")
        return BAD_INPUT


def main():
    sys.exit(run())
