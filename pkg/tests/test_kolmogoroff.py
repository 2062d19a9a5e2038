import json
import random

import pytest

from tauthom.complexes import CertificateFailure, CoefficientComplex
from tauthom.groups import GroupMap, PresentedGroup
from tauthom.kolmogoroff import (BlockMismatch, ConditionViolated, FiniteModel,
                                 KolmogoroffChain, NerveComplex, NotACover,
                                 NotARefinement, Partition, arc_circle,
                                 free_colimit_basis, kolmogoroff_homology,
                                 kolmogoroff_uct_check, model_preset, mosaic,
                                 octahedron, projective_plane, random_chain,
                                 refinement_map, regularize)
from tauthom.limits import Telescope
from tauthom.matrices import IntMatrix
from tauthom.randomgen import seeded

from oracles import (expected_mosaic_blocks, mosaic_conditions_hold,
                     occurrence_systems)

Z = PresentedGroup(1, ())
Z2 = PresentedGroup(0, (2,))
Z4 = PresentedGroup(0, (4,))


class TestMosaic:
    def test_overlapping_pair(self):
        blocks = mosaic([{1, 2}, {2, 3}])
        assert sorted(sorted(b) for b in blocks) == [[1], [2], [3]]

    def test_disjoint_preserved(self):
        blocks = mosaic([{1, 2}, {3, 4}])
        assert sorted(sorted(b) for b in blocks) == [[1, 2], [3, 4]]

    def test_nested(self):
        blocks = mosaic([{1, 2, 3, 4}, {2, 3}])
        assert sorted(sorted(b) for b in blocks) == [[1, 4], [2, 3]]

    def test_small_systems_exhaustively(self):
        # one canonical system per occurrence-set of membership patterns
        for sets, _ in occurrence_systems(3, 7):
            got = mosaic(sets)
            assert mosaic_conditions_hold(sets, got)
            assert sorted(map(sorted, got)) == \
                sorted(map(sorted, expected_mosaic_blocks(sets)))

    def test_multiplicity_invariance(self):
        # duplicating an atom's membership pattern never breaks the conditions
        rng = random.Random(41)
        for _ in range(200):
            sets = [frozenset(a for a in range(6) if rng.random() < 0.4)
                    for _ in range(3)]
            doubled = [frozenset(s | {a + 6 for a in s}) for s in sets]
            assert mosaic_conditions_hold(doubled, mosaic(doubled))

    def test_regularize(self):
        # disjointified in input order, empty residues dropped
        p = regularize([{0, 1, 2}, {2, 3}, {1, 2}, {3, 4}], 5)
        assert p.blocks == ((0, 1, 2), (3,), (4,))

    def test_regularize_rejects_non_cover(self):
        with pytest.raises(NotACover):
            regularize([{0, 1}], 3)


class TestModelAndPartition:
    def test_faces_downward_closed(self):
        m = FiniteModel(3, [(0, 1, 2)])
        assert m.closure_meets({0, 1})
        assert m.closure_meets({2})
        assert m.dimension == 2

    def test_singletons_always_present(self):
        m = FiniteModel(4, [])
        assert all(m.closure_meets({a}) for a in range(4))

    def test_face_bounds_checked(self):
        with pytest.raises(ValueError):
            FiniteModel(2, [(0, 5)])

    def test_partition_canonicalization(self):
        p = Partition([[2, 1], [0]])
        assert p.blocks == ((0,), (1, 2))
        assert p.block_of[2] == 1

    def test_refines(self):
        fine = Partition.singletons(4)
        coarse = Partition([[0, 1], [2, 3]])
        assert fine.refines(coarse)
        assert not coarse.refines(fine)
        assert coarse.refines(Partition.one_block(4))

    def test_model_json_round_trip(self):
        m = projective_plane()
        assert FiniteModel.from_json(json.loads(json.dumps(m.to_json()))) == m

    def test_preset_errors(self):
        with pytest.raises(ValueError):
            model_preset("arc-circle:2")
        with pytest.raises(ValueError):
            model_preset("torus")


class TestNerve:
    def test_circle_nerve_counts(self):
        nerve = NerveComplex(arc_circle(5), Partition.singletons(5))
        assert [nerve.count(n) for n in (0, 1)] == [5, 5]
        assert nerve.dimension == 1

    def test_coarsening_collapses(self):
        # grouping opposite arcs of a hexagonal circle gives a 3-block nerve
        nerve = NerveComplex(arc_circle(6), Partition([[0, 3], [1, 4], [2, 5]]))
        assert nerve.count(0) == 3

    def test_partition_must_cover(self):
        with pytest.raises(ValueError):
            NerveComplex(arc_circle(4), Partition([[0, 1]]))

    def test_boundary_squares_to_zero(self):
        nerve = NerveComplex(projective_plane(), Partition.singletons(6))
        d1, d2 = nerve.boundary_matrix(1), nerve.boundary_matrix(2)
        assert (d1 * d2).is_zero()

    def test_chain_vs_cochain_transpose(self):
        nerve = NerveComplex(octahedron(), Partition.singletons(6))
        co = nerve.cochain_complex()
        for n in range(1, nerve.dimension + 1):
            assert co.diff(n - 1) == nerve.boundary_matrix(n).transpose()


def make_nerve(name):
    m = model_preset(name)
    return NerveComplex(m, Partition.singletons(m.atoms))


class TestKolmogoroffChains:
    def test_alternation_and_repeats(self):
        nerve = make_nerve("arc-circle:4")
        f = KolmogoroffChain(nerve, 1, Z4, {(0, 1): (1,)})
        assert f.evaluate_blocks((1, 0)) == (3,)  # sign flip mod 4
        assert f.evaluate_blocks((1, 1)) == (0,)  # repeated argument
        assert f.evaluate_blocks((2, 3)) == (0,)

    def test_off_nerve_values_rejected(self):
        nerve = make_nerve("arc-circle:4")
        with pytest.raises(ValueError):
            KolmogoroffChain(nerve, 1, Z4, {(0, 2): (1,)})

    def test_additivity_on_block_unions(self):
        nerve = make_nerve("arc-circle:5")
        f = KolmogoroffChain(nerve, 1, Z4, {(0, 1): (1,), (1, 2): (2,)})
        # evaluating on {0}u{2} against {1} sums the matching tuples:
        # f(0,1) + f(2,1) = 1 - 2 = -1
        val = f.evaluate_sets((frozenset({0, 2}), frozenset({1})))
        assert val == (3,)

    def test_unsaturated_set_rejected(self):
        nerve = NerveComplex(arc_circle(6), Partition([[0, 1], [2, 3], [4, 5]]))
        f = KolmogoroffChain(nerve, 0, Z4, {(0,): (1,)})
        with pytest.raises(BlockMismatch):
            f.evaluate_sets((frozenset({0}),))  # half of a block

    def test_mosaic_consistency(self):
        nerve = make_nerve("arc-circle:5")
        rng = seeded(42)
        for _ in range(10):
            f = random_chain(rng, nerve, 1, Z4)
            args = (frozenset({0, 1}), frozenset({2, 3}))
            assert f.evaluate_sets(args) == f.evaluate_via_mosaic(args)

    def test_boundary_star_support(self):
        nerve = make_nerve("arc-circle:6")
        f = KolmogoroffChain(nerve, 1, Z4, {(0, 1): (1,)})
        # the star of {0} within the nerve is an admissible support
        star = frozenset({5, 0, 1})
        v1 = f.boundary_value((0,), star)
        v2 = f.boundary_value((0,))
        assert v1 == v2
        with pytest.raises(ValueError):
            f.boundary_value((0,), frozenset({0, 1}))  # misses block 5

    def test_double_boundary_vanishes(self):
        # the degree-0 boundary is the identically-zero degree -1 function
        rng = seeded(43)
        for name in ("arc-circle:5", "octahedron", "rp2-6vertex"):
            nerve = make_nerve(name)
            for deg in range(1, nerve.dimension + 1):
                f = random_chain(rng, nerve, deg, Z4)
                assert f.boundary().boundary().is_zero()

    def test_round_trips_and_naturality(self):
        rng = seeded(44)
        for name in ("arc-circle:5", "octahedron", "rp2-6vertex"):
            nerve = make_nerve(name)
            for g in (Z, Z2, Z4):
                for deg in range(nerve.dimension + 1):
                    f = random_chain(rng, nerve, deg, g)
                    eta = f.to_nerve_chain()
                    assert KolmogoroffChain.from_nerve_chain(eta) == f
                    if deg >= 1:
                        assert f.boundary().to_nerve_chain().coords == \
                            eta.boundary().coords


class TestHomology:
    def test_circle_over_z(self):
        m = arc_circle(4)
        hom = kolmogoroff_homology(m, Partition.singletons(4), Z)
        assert hom == {0: Z, 1: Z}

    def test_octahedron_over_z2(self):
        hom = kolmogoroff_homology(octahedron(), Partition.singletons(6), Z2)
        assert hom == {0: Z2, 1: PresentedGroup(0, ()), 2: Z2}

    def test_projective_plane_values(self):
        m = projective_plane()
        p = Partition.singletons(6)
        assert kolmogoroff_homology(m, p, Z) == \
            {0: Z, 1: Z2, 2: PresentedGroup(0, ())}
        assert kolmogoroff_homology(m, p, Z4) == {0: Z4, 1: Z2, 2: Z2}

    def test_single_atom(self):
        hom = kolmogoroff_homology(FiniteModel(1, []), Partition.singletons(1), Z4)
        assert hom == {0: Z4}

    def test_matches_dual_nerve_pipeline(self):
        # same values out of the independently assembled coefficient complex
        for name in ("arc-circle:6", "octahedron"):
            m = model_preset(name)
            p = Partition.singletons(m.atoms)
            nerve = NerveComplex(m, p)
            for g in (Z2, Z4):
                hom = kolmogoroff_homology(m, p, g)
                dual = CoefficientComplex(nerve.cochain_complex(), g)
                assert hom == dual.homology_all()


class TestRefinements:
    def test_pushforward_commutes(self):
        m = arc_circle(8)
        fine = NerveComplex(m, Partition.singletons(8))
        coarse = NerveComplex(m, Partition([[0, 1], [2, 3], [4, 5], [6, 7]]))
        r = refinement_map(fine, coarse)
        for n in range(1, fine.dimension + 1):
            lhs = coarse.boundary_matrix(n) * r.chain_matrix(n)
            rhs = r.chain_matrix(n - 1) * fine.boundary_matrix(n)
            assert lhs == rhs

    def test_functoriality(self):
        m = arc_circle(8)
        n2 = NerveComplex(m, Partition.singletons(8))
        n1 = NerveComplex(m, Partition([[0, 1], [2, 3], [4, 5], [6, 7]]))
        n0 = NerveComplex(m, Partition([[0, 1, 2, 3], [4, 5, 6, 7]]))
        r21 = refinement_map(n2, n1)
        r10 = refinement_map(n1, n0)
        r20 = refinement_map(n2, n0)
        composed = r10.compose(r21)
        for n in range(n2.dimension + 1):
            assert composed.chain_matrix(n) == r20.chain_matrix(n)

    def test_not_a_refinement(self):
        m = arc_circle(8)
        fine = NerveComplex(m, Partition.singletons(8))
        coarse = NerveComplex(m, Partition([[0, 1], [2, 3], [4, 5], [6, 7]]))
        with pytest.raises(NotARefinement):
            refinement_map(coarse, fine)


class TestFreeColimit:
    def test_conforming_certificate(self):
        z1, z2 = PresentedGroup(1, ()), PresentedGroup(2, ())
        f = GroupMap(z1, z2, IntMatrix.from_columns([[1, 1]], 2))
        cert = free_colimit_basis(Telescope((z1, z2), (f,)))
        assert cert.group == z2
        assert cert.basis is not None and cert.basis.is_identity()

    def test_entry_violation_witnessed(self):
        z1 = PresentedGroup(1, ())
        f = GroupMap(z1, z1, IntMatrix.from_rows([[2]]))
        with pytest.raises(ConditionViolated) as e:
            free_colimit_basis(Telescope((z1, z1), (f,)))
        assert "entry 2" in str(e.value)

    def test_shared_row_violation_witnessed(self):
        z2, z1 = PresentedGroup(2, ()), PresentedGroup(1, ())
        f = GroupMap(z2, z1, IntMatrix.from_rows([[1, 1]]))
        with pytest.raises(ConditionViolated) as e:
            free_colimit_basis(Telescope((z2, z1), (f,)))
        assert "shared" in str(e.value)

    def test_torsion_stage_rejected(self):
        with pytest.raises(ValueError):
            free_colimit_basis(Telescope.periodic(GroupMap.identity(Z4)))

    def test_tail_stabilized_to_quotient_stage(self):
        # killing one generator forever: stable quotient is free of rank 1
        z2 = PresentedGroup(2, ())
        kill = GroupMap(z2, z2, IntMatrix.from_rows([[1, 0], [0, 0]]))
        cert = free_colimit_basis(Telescope.periodic(kill))
        assert cert.group == PresentedGroup(1, ())
        assert "tail" in cert.stage


class TestUctBridge:
    def test_single_partition(self):
        m = projective_plane()
        certs = kolmogoroff_uct_check(m, [Partition.singletons(6)], Z)
        assert certs[1].ext_term == Z2
        assert certs[1].hom_term.is_trivial

    def test_refinement_chain(self):
        m = arc_circle(8)
        chain = [Partition([[0, 1, 2, 3], [4, 5, 6, 7]]),
                 Partition([[0, 1], [2, 3], [4, 5], [6, 7]]),
                 Partition.singletons(8)]
        certs = kolmogoroff_uct_check(m, chain, Z)
        assert certs[1].middle == Z

    def test_unordered_chain_rejected(self):
        m = arc_circle(8)
        with pytest.raises(NotARefinement):
            kolmogoroff_uct_check(m, [Partition.singletons(8),
                                      Partition([[0, 1], [2, 3], [4, 5], [6, 7]])],
                                  Z)
