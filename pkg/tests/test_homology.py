import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from xhomotopy.complexes import VertexMap, boundary, constant_map, cycle_complex, delta, empty_complex, make_complex, point
from xhomotopy.homology import (
    chain_complex,
    components,
    elementary_divisors,
    homology,
    homology_iso_report,
    induced_map,
    is_homology_iso,
    smith_normal_form,
)

# six-vertex real projective plane
RP2 = make_complex(
    range(6),
    [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1), (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)],
)


def matmul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]


def sympy_diagonal(M):
    if not M or not M[0]:
        return []
    D = sympy_snf(Matrix(M), domain=ZZ)
    return sorted(abs(int(D[i, i])) for i in range(min(D.shape)) if D[i, i] != 0)


matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


@given(matrices)
@settings(max_examples=150, deadline=None)
def test_snf_matches_sympy(M):
    D, P, Q = smith_normal_form(M)
    assert matmul(matmul(P, M), Q) == D
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)
    assert sorted(nz) == sympy_diagonal(M)


@given(matrices)
@settings(max_examples=150, deadline=None)
def test_sparse_divisors_match_sympy(M):
    cols = {j: {i: M[i][j] for i in range(len(M)) if M[i][j]} for j in range(len(M[0]))}
    assert elementary_divisors(cols) == sympy_diagonal(M)


def test_transforms_are_unimodular():
    from sympy import Matrix as Mx

    D, P, Q = smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert abs(Mx(P).det()) == 1 and abs(Mx(Q).det()) == 1
    assert [D[i][i] for i in range(3)] == [2, 6, 12]


def test_boundary_squares_to_zero():
    C = chain_complex(delta(4))
    for n in range(2, 5):
        assert all(v == 0 for row in matmul(C.matrix(n - 1), C.matrix(n)) for v in row)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_spheres(n):
    h = homology(boundary(n))
    assert h.betti == [1] + [0] * (n - 2) + [1]
    assert all(t == [] for t in h.torsion)


def test_examples():
    assert homology(cycle_complex(4)).betti == [1, 1]
    assert homology(delta(4)).betti == [1, 0, 0, 0, 0]
    assert homology(make_complex(range(4), [(0, 1), (2, 3)])).betti == [2, 0]
    assert homology(empty_complex()).betti == []


def test_torsion():
    h = homology(RP2)
    assert h.betti == [1, 0, 0]
    assert h.torsion == [[], [2], []]
    assert h.to_json() == {"betti": [1, 0, 0], "torsion": [[], [2], []]}


def test_components():
    assert components(make_complex(range(5), [(0, 1), (2, 3)])) == 3
    assert components(empty_complex()) == 0


def test_homology_iso_detects_torsion():
    # RP2 and a point agree rationally but not integrally
    f = constant_map(RP2, point(), 0)
    assert not is_homology_iso(f)


def test_homology_iso_examples():
    assert is_homology_iso(constant_map(delta(3), point(), 0))
    assert not is_homology_iso(constant_map(cycle_complex(4), point(), 0))
    wrap = VertexMap(cycle_complex(6), cycle_complex(3), {i: i % 3 for i in range(6)})
    assert not is_homology_iso(wrap)  # degree two on H_1
    rot = VertexMap(cycle_complex(5), cycle_complex(5), {i: (i + 1) % 5 for i in range(5)})
    rep = homology_iso_report(rot)
    assert rep == {"homology_iso": True, "degrees_checked": 2}


def test_induced_map_is_a_chain_map():
    fold = VertexMap(delta(3), delta(2), {0: 0, 1: 1, 2: 2, 3: 2})
    mats = induced_map(fold)
    CK, CL = chain_complex(fold.source), chain_complex(fold.target)
    for n in range(1, 3):
        assert matmul(CL.matrix(n), mats[n]) == matmul(mats[n - 1], CK.matrix(n))
    # the degenerate top simplex goes to zero
    assert all(v == 0 for row in mats[3] for v in row)
