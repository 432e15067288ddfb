"""A fixed corpus of 50 small complexes used by the regression suite."""

from __future__ import annotations

from .complexes import (
    boundary,
    coproduct,
    cycle_complex,
    delta,
    empty_complex,
    horn,
    iter_complexes,
    make_complex,
    path_complex,
    point,
    product,
)

CORPUS_SIZE = 50


def _named():
    yield "empty", empty_complex()
    for n in range(4):
        yield f"delta{n}", delta(n)
    for n in range(1, 5):
        yield f"boundary{n}", boundary(n)
    for n in range(1, 4):
        for k in range(n + 1):
            yield f"horn{n}_{k}", horn(n, k)
    for n in range(1, 5):
        yield f"path{n}", path_complex(n)
    for n in range(3, 7):
        yield f"cycle{n}", cycle_complex(n)
    yield "two_points", coproduct(point(), point())
    yield "edge_plus_point", coproduct(delta(1), point())
    yield "square", product(delta(1), delta(1))
    yield "triangle_times_point", product(boundary(2), point())
    yield "bowtie", make_complex(range(5), [(0, 1, 2), (2, 3, 4)])
    yield "cone_on_cycle4", make_complex(range(5), [(0, 1, 4), (1, 2, 4), (2, 3, 4), (3, 0, 4)])
    yield "two_triangles_edge", make_complex(range(4), [(0, 1, 2), (1, 2, 3)])
    yield "hollow_and_filled", make_complex(range(5), [(0, 1), (1, 2), (0, 2), (2, 3, 4)])
    yield "tree5", make_complex(range(5), [(0, 1), (1, 2), (1, 3), (3, 4)])
    yield "star4", make_complex(range(5), [(0, 1), (0, 2), (0, 3), (0, 4)])
    yield "wedge_of_circles", make_complex(range(5), [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])
    yield "octahedron_half", make_complex(range(5), [(0, 1, 4), (1, 2, 4), (2, 3, 4)])
    yield "strings", make_complex(["a", "b", "c"], [("a", "b"), ("b", "c")])


def corpus():
    """Return [(name, complex)], exactly CORPUS_SIZE entries, in a fixed order."""
    out = []
    seen = set()
    for name, K in _named():
        if K not in seen:
            seen.add(K)
            out.append((name, K))
    # pad with the complexes on four vertices, in generation order
    for i, K in enumerate(iter_complexes(4)):
        if len(out) >= CORPUS_SIZE:
            break
        if K not in seen:
            seen.add(K)
            out.append((f"four_vertices_{i}", K))
    return out[:CORPUS_SIZE]
