import random

import pytest

from xhomotopy import BudgetExceeded
from xhomotopy._util import Budget
from xhomotopy.acceptance import cofibration_structures
from xhomotopy.cells import (
    Attachment,
    CellStructure,
    LiftingProblem,
    attach,
    cone_section,
    cycle_cell_structure,
    endpoint_inclusion,
    gen_cofibration,
    gen_trivial_cofibration,
    generator,
    has_rlp,
    is_trivial_fibration_up_to,
    lifting_squares,
    path_retraction,
    random_simplicial_map,
    solve_lifting,
    tree_cell_structure,
    verify_cell_structure,
    verify_path_retraction,
)
from xhomotopy.collapse import core, ndr_witness, verify_ndr
from xhomotopy.complexes import (
    Complex,
    VertexMap,
    constant_map,
    cycle_complex,
    delta,
    identity,
    is_flag,
    make_complex,
    path_complex,
    point,
)
from xhomotopy.homology import homology, is_homology_iso
from xhomotopy.homotopy import find_deformation_retract, verify_retraction
from xhomotopy.isomorphism import isomorphic


def brute_rlp(i, p, budget=10**7):
    """Every commuting square has a lift, by enumeration only."""
    b = Budget(budget)
    A, B, X, Y = i.source, i.target, p.source, p.target
    for top, bot in lifting_squares(i, p, b):
        lp = LiftingProblem(i, p, VertexMap(A, X, top, check=False), VertexMap(B, Y, bot, check=False))
        if solve_lifting(lp, b) is None:
            return False
    return True


class TestGenerators:
    def test_dimension_zero(self):
        g = gen_cofibration(0)
        assert g.source.is_empty() and len(g.target.vertices) == 1

    def test_dimension_one(self):
        g = gen_cofibration(1)
        assert len(g.source.vertices) == 2 and g.source.dim == 0
        assert isomorphic(g.target, path_complex(4)) is not None
        assert g.is_injective()

    def test_horn_source_collapses_to_a_point(self):
        j = gen_trivial_cofibration(2, 0)
        assert len(core(j.source)[0].vertices) == 1

    def test_size_limit(self):
        with pytest.raises(BudgetExceeded):
            gen_cofibration(5)
        with pytest.raises(ValueError):
            gen_cofibration(-1)

    def test_tags(self):
        assert generator(("I", 1)) == gen_cofibration(1)
        assert generator(("J", 2, 1)) == gen_trivial_cofibration(2, 1)
        assert generator(("endpoint", 2)) == endpoint_inclusion(2)
        with pytest.raises(ValueError):
            generator(("X", 0))


class TestCellStructures:
    def test_attach_an_edge_to_a_point(self):
        gen = endpoint_inclusion(1)
        B, inc = attach(point(5), gen, VertexMap(gen.source, point(5), {0: 5}))
        assert isomorphic(B, delta(1)) is not None
        assert inc(5) == 5

    def test_attach_rejects_wrong_maps(self):
        gen = endpoint_inclusion(1)
        with pytest.raises(ValueError):
            attach(point(5), gen, VertexMap(gen.source, point(0), {0: 0}))

    def test_tree_of_three_vertices(self):
        T = path_complex(2)
        cs = tree_cell_structure(T)
        assert len(cs.attachments) == 2
        assert verify_cell_structure(cs, T)

    def test_tree_rejects_cycles(self):
        with pytest.raises(ValueError):
            tree_cell_structure(cycle_complex(4))
        with pytest.raises(ValueError):
            tree_cell_structure(make_complex(range(3), [(0, 1)]))

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_cycles(self, n):
        cs = cycle_cell_structure(n)
        F = cs.final()
        assert verify_cell_structure(cs)
        assert isomorphic(F, cycle_complex(4 * n)) is not None

    def test_single_point_cycle_from_a_point(self):
        ends = gen_cofibration(1).source.vertices
        cs = CellStructure(point(0), [Attachment(("I", 1), {ends[0]: 0, ends[1]: 0})])
        assert isomorphic(cs.final(), cycle_complex(4)) is not None

    def test_bad_attachment_fails_verification(self):
        ends = gen_cofibration(1).source.vertices
        cs = CellStructure(point(0), [Attachment(("I", 1), {ends[0]: 0, ends[1]: 9})])
        assert not verify_cell_structure(cs)

    def test_cell_structures_are_flag(self):
        for cs in cofibration_structures(seed=7):
            stages, _ = cs.stages()
            assert all(is_flag(S) for S in stages)

    def test_stage_inclusions_are_ndr_pairs(self):
        for cs in cofibration_structures(seed=1, count=3, steps=3):
            stages, _ = cs.stages()
            for a, b in zip(stages, stages[1:]):
                if len(b.vertices) > 60:
                    continue
                w = ndr_witness(b, a)
                assert w is not None and verify_ndr(w)

    def test_tree_stages_are_deformation_retracts(self):
        T = make_complex(range(5), [(0, 1), (1, 2), (1, 3), (3, 4)])
        stages, _ = tree_cell_structure(T).stages()
        for a, b in zip(stages, stages[1:]):
            r = find_deformation_retract(b, a)
            assert r is not None and verify_retraction(r)


class TestPathRetraction:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_retraction(self, n):
        c = path_retraction(n)
        assert verify_path_retraction(c)
        assert c.j.then(c.r) == identity(path_complex(n))
        assert is_homology_iso(c.r)
        assert homology(c.j.target).betti == [1, 0]

    def test_n_must_be_positive(self):
        with pytest.raises(ValueError):
            path_retraction(0)

    def test_tampered_retraction_fails(self):
        c = path_retraction(1)
        c.r.mapping[c.walk[1]] = 0
        assert not verify_path_retraction(c)


class TestLifting:
    def test_identity_always_lifts(self):
        i = gen_cofibration(1)
        X = delta(1)
        p = identity(X)
        bot = VertexMap(i.target, X, {v: 0 for v in i.target.vertices})
        top = VertexMap(i.source, X, {v: 0 for v in i.source.vertices})
        h = solve_lifting(LiftingProblem(i, p, top, bot))
        assert h == bot

    def test_disconnected_fiber_obstruction(self):
        two = Complex([0, 1])
        i = VertexMap(Complex([0, 1]), delta(1), {0: 0, 1: 1})
        p = constant_map(two, point(), 0)
        top = VertexMap(i.source, two, {0: 0, 1: 1})
        bot = constant_map(delta(1), point(), 0)
        assert solve_lifting(LiftingProblem(i, p, top, bot)) is None
        assert not has_rlp(i, p)

    def test_non_commuting_square_rejected(self):
        i = gen_cofibration(1)
        top = VertexMap(i.source, delta(1), {v: 0 for v in i.source.vertices})
        bot = constant_map(i.target, delta(1), 1)
        with pytest.raises(ValueError):
            LiftingProblem(i, identity(delta(1)), top, bot)

    def test_non_surjective_fails_at_dimension_zero(self):
        p = VertexMap(point(0), delta(1), {0: 0})
        assert not is_trivial_fibration_up_to(p, 0)

    def test_surjections_of_simplices(self):
        s = VertexMap(delta(2), delta(1), {0: 0, 1: 0, 2: 1})
        assert is_trivial_fibration_up_to(s, 2)
        for n in (2, 3):
            for m in range(n):
                p = VertexMap(delta(n), delta(m), {v: min(v, m) for v in range(n + 1)})
                assert is_trivial_fibration_up_to(p, 2)

    def test_cone_shortcut_agrees_with_enumeration(self):
        cases = [
            VertexMap(delta(2), delta(1), {0: 0, 1: 0, 2: 1}),
            constant_map(path_complex(1), point(), 0),
            constant_map(path_complex(2), point(), 0),
            VertexMap(delta(1), delta(1), {0: 0, 1: 1}),
        ]
        for p in cases:
            for n in (0, 1):
                i = gen_cofibration(n)
                assert cone_section(i, p) is not None
                assert brute_rlp(i, p)

    def test_cone_shortcut_absent_when_enumeration_fails(self):
        p = constant_map(path_complex(5), point(), 0)
        i = gen_cofibration(1)
        assert cone_section(i, p) is None
        assert not brute_rlp(i, p)

    def test_paths_to_a_point(self):
        for n in (1, 2):
            assert is_trivial_fibration_up_to(constant_map(path_complex(n), point(), 0), 2)
        # I_5 cannot be spanned by the four edges of sd2(Delta^1)
        assert not is_trivial_fibration_up_to(constant_map(path_complex(5), point(), 0), 1)
        # for I_3 the n = 1 squares all lift
        assert is_trivial_fibration_up_to(constant_map(path_complex(3), point(), 0), 1)

    def test_sampled_extensions_into_simplices(self):
        rng = random.Random(11)
        j = gen_trivial_cofibration(2, 0)
        for m in range(3):
            X = delta(m)
            p = constant_map(X, point(), 0)
            for _ in range(5):
                top = random_simplicial_map(j.source, X, rng)
                h = solve_lifting(LiftingProblem(j, p, top, constant_map(j.target, point(), 0)))
                assert h is not None
                assert all(h(v) == top(v) for v in j.source.vertices)

    def test_budget(self):
        p = constant_map(path_complex(3), point(), 0)
        with pytest.raises(BudgetExceeded):
            is_trivial_fibration_up_to(p, 2, budget=1000)
