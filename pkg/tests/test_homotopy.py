from itertools import chain

import pytest

from xhomotopy import BudgetExceeded
from xhomotopy.complexes import (
    VertexMap,
    boundary,
    constant_map,
    cycle_complex,
    delta,
    empty_complex,
    identity,
    iter_complexes,
    make_complex,
    path_complex,
    point,
)
from xhomotopy.homotopy import (
    ContiguityChain,
    Retraction,
    chain_compose,
    chain_concat,
    contiguity_classes,
    find_deformation_retract,
    is_contiguous,
    is_one_homotopic,
    reachable_maps,
    verify_retraction,
    x_homotopic,
)


def small():
    return list(chain.from_iterable(iter_complexes(k) for k in range(4)))


def test_contiguity_examples():
    f = constant_map(delta(2), delta(2), 0)
    assert is_contiguous(f, identity(delta(2)))
    g = constant_map(boundary(2), boundary(2), 0)
    assert not is_contiguous(g, identity(boundary(2)))


def test_one_homotopy_is_contiguity():
    for K in small()[::2]:
        for L in small()[::3]:
            classes = contiguity_classes(K, L)
            ms = [VertexMap(K, L, dict(zip(K.vertices, t)), check=False) for t in classes]
            for f in ms:
                for g in ms:
                    assert is_one_homotopic(f, g) == is_contiguous(f, g)


def test_reachability_matches_oracle_on_bigger_targets():
    for K in [path_complex(2), boundary(2)]:
        for L in [cycle_complex(4), cycle_complex(5), make_complex(range(4), [(0, 1, 2), (2, 3)])]:
            classes = contiguity_classes(K, L)
            for t, rep in classes.items():
                f = VertexMap(K, L, dict(zip(K.vertices, t)), check=False)
                assert reachable_maps(f) == {s for s, r in classes.items() if r == rep}


def test_x_homotopic_returns_a_valid_chain():
    K = delta(3)
    f = constant_map(K, K, 0)
    c = x_homotopic(f, identity(K))
    assert c.is_valid() and c.start == f and c.end == identity(K)
    assert len(c) == 3


def test_circle_rotation_is_not_homotopic_to_identity():
    # C_5 is a core, so its automorphisms are pairwise non-homotopic
    C = cycle_complex(5)
    rot = VertexMap(C, C, {i: (i + 1) % 5 for i in range(5)})
    assert x_homotopic(rot, identity(C)) is None


def test_budget():
    C = cycle_complex(7)
    K = path_complex(6)
    f = VertexMap(K, C, {i: i for i in range(7)})
    g = constant_map(K, C, 0)
    with pytest.raises(BudgetExceeded):
        x_homotopic(f, g, budget=5)


def test_chain_operations():
    K = delta(2)
    c0, c1 = constant_map(K, K, 0), identity(K)
    mid = VertexMap(K, K, {0: 0, 1: 1, 2: 0})
    a = ContiguityChain([c0, mid])
    b = ContiguityChain([mid, c1])
    ab = chain_concat(a, b)
    assert ab.is_valid() and len(ab) == 2
    assert ab.reverse().start == c1
    with pytest.raises(ValueError):
        chain_concat(b, a)
    g = ContiguityChain([identity(K), constant_map(K, K, 2)])
    comp = chain_compose(ab, g)
    assert comp.is_valid()
    assert comp.start == c0.then(identity(K)) and comp.end == c1.then(constant_map(K, K, 2))


def test_deformation_retracts():
    r = find_deformation_retract(delta(3), point(0))
    assert r is not None and verify_retraction(r)
    assert find_deformation_retract(boundary(2), point(0)) is None
    r = find_deformation_retract(path_complex(3), path_complex(1))
    assert verify_retraction(r)
    assert find_deformation_retract(point(0), empty_complex()) is None


def test_deformation_retract_without_strong_collapse():
    # a deformation retraction may need a move the collapse search cannot make;
    # either way the certificate must verify
    L = make_complex(range(5), [(0, 1, 2), (1, 2, 3), (2, 3, 4)])
    K = make_complex([0])
    r = find_deformation_retract(L, K)
    assert r is not None and verify_retraction(r)


def test_verify_rejects_bad_certificates():
    L, K = delta(1), point(0)
    inc = VertexMap(K, L, {0: 0})
    bad = Retraction(inc, VertexMap(L, K, {0: 0, 1: 0}), ContiguityChain([identity(L)]))
    assert not verify_retraction(bad)
