import pytest

from xhomotopy import BudgetExceeded
from xhomotopy.collapse import (
    CollapseError,
    CollapseSequence,
    NdrWitness,
    collapses_to,
    core,
    dominated,
    dominators,
    elementary_collapse,
    ndr_witness,
    replay,
    retraction_from_collapse,
    verify_ndr,
)
from xhomotopy.complexes import boundary, cycle_complex, delta, empty_complex, horn, make_complex, path_complex, point
from xhomotopy.homology import homology
from xhomotopy.homotopy import find_deformation_retract, verify_retraction
from xhomotopy.subdivision import sd2


def test_dominators():
    K = horn(2, 0)
    assert dominators(K, 1) == [0]
    assert dominated(K, 0) is None
    assert dominated(boundary(2), 0) is None
    with pytest.raises(ValueError):
        dominators(K, 7)


def test_elementary_collapse():
    assert elementary_collapse(delta(2), 0) == make_complex([1, 2], [(1, 2)])
    with pytest.raises(CollapseError):
        elementary_collapse(boundary(2), 0)


@pytest.mark.parametrize("n", range(5))
def test_cores_of_simplices_and_spheres(n):
    assert len(core(delta(n))[0].vertices) == 1
    if n:
        assert core(boundary(n))[0] == boundary(n)
        for k in range(n + 1):
            assert len(core(horn(n, k))[0].vertices) == 1


def test_core_sequence_replays():
    K = sd2(horn(2, 0)).base
    C, seq = core(K)
    assert len(C.vertices) == 1
    assert replay(K, seq) == C


def test_core_is_a_deformation_retract():
    K = make_complex(range(6), [(0, 1, 2), (2, 3), (3, 4), (4, 5), (5, 3)])
    C, seq = core(K)
    bc, bk = homology(C).betti, homology(K).betti
    assert bk == bc + [0] * (len(bk) - len(bc))
    r = retraction_from_collapse(K, C, seq)
    assert verify_retraction(r)


def test_replay_rejects_invalid_steps():
    with pytest.raises(CollapseError):
        replay(boundary(2), CollapseSequence([(0, 1)]))


def test_collapses_to():
    seq = collapses_to(path_complex(4), path_complex(1))
    assert seq is not None and replay(path_complex(4), seq) == path_complex(1)
    assert collapses_to(delta(2), boundary(2)) is None
    assert collapses_to(cycle_complex(4), make_complex([0])) is None
    with pytest.raises(ValueError):
        collapses_to(path_complex(2), make_complex([9]))


def test_collapses_to_budget():
    L = sd2(delta(2)).base
    K = sd2(horn(2, 0)).base
    with pytest.raises(BudgetExceeded):
        collapses_to(L, K, budget=2)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_ndr_for_subdivided_boundaries(n):
    L, K = sd2(delta(n)).base, sd2(boundary(n)).base
    w = ndr_witness(L, K)
    assert w is not None and verify_ndr(w)


@pytest.mark.parametrize("n", [1, 2])
def test_ndr_for_subdivided_horns(n):
    w = ndr_witness(sd2(delta(n)).base, sd2(horn(n, 0)).base)
    assert w is not None and verify_ndr(w)


def test_unsubdivided_boundary_has_no_witness():
    assert ndr_witness(delta(2), boundary(2)) is None


def test_verify_ndr_rejects_tampering():
    L, K = sd2(delta(1)).base, sd2(boundary(1)).base
    w = ndr_witness(L, K)
    assert not verify_ndr(NdrWitness(L, K, K, w.collapse))
    assert not verify_ndr(NdrWitness(L, K, w.L_prime, CollapseSequence(w.collapse.steps[:-1])))


def test_empty_subcomplex():
    w = ndr_witness(point(0), empty_complex())
    assert w is not None and verify_ndr(w)
    assert find_deformation_retract(point(0), empty_complex()) is None
