import random

import pytest
from hypothesis import given, settings, strategies as st

from tauthom.groups import (GroupMap, GroupParseError, IllFormedMap,
                            PresentedGroup, Subquotient, cokernel, ext_group,
                            hom_group, image, inverse, is_injective,
                            is_isomorphism, is_surjective, kernel,
                            kernel_lattice, parse_group, tensor_identity)
from tauthom.matrices import IntMatrix
from tauthom.randomgen import random_finite_group, random_group, seeded

from oracles import all_finite_groups_to, ext_oracle, hom_oracle

Z = PresentedGroup(1, ())
Z2 = PresentedGroup(0, (2,))
Z4 = PresentedGroup(0, (4,))


def groups_strategy():
    return st.tuples(st.integers(0, 2),
                     st.lists(st.integers(2, 12), max_size=3)).map(
        lambda t: PresentedGroup.from_orders([0] * t[0] + sorted(t[1])))


class TestPresentedGroup:
    def test_normalization(self):
        g = PresentedGroup.from_orders([6, 4])
        assert g.torsion == (2, 12)
        assert str(g) == "Z/2 + Z/12"
        assert PresentedGroup.from_orders([0, 3, 2]).describe() == "Z + Z/6"

    def test_divisor_chain_enforced(self):
        with pytest.raises(ValueError):
            PresentedGroup(0, (4, 2))
        with pytest.raises(ValueError):
            PresentedGroup(0, (3, 4))

    def test_cardinality_and_elements(self):
        g = PresentedGroup(0, (2, 4))
        assert g.cardinality() == 8
        assert len(list(g.elements())) == 8
        assert Z.cardinality() is None

    def test_element_order(self):
        g = PresentedGroup(0, (2, 4))
        assert g.element_order((1, 0)) == 2
        assert g.element_order((0, 1)) == 4
        assert g.element_order((1, 1)) == 4
        assert g.element_order((0, 0)) == 1

    def test_parse(self):
        assert parse_group("Z") == Z
        assert parse_group("Z/2+Z/4").torsion == (2, 4)
        assert parse_group("Z/6+Z/4").torsion == (2, 12)
        assert parse_group("Z + Z/2") == PresentedGroup(1, (2,))
        assert parse_group("0").is_trivial

    def test_parse_errors_carry_position(self):
        with pytest.raises(GroupParseError) as e:
            parse_group("Z/2+Q/3")
        assert e.value.position == 4
        with pytest.raises(GroupParseError):
            parse_group("Z/0")
        with pytest.raises(GroupParseError):
            parse_group("")

    def test_json_round_trip(self):
        g = PresentedGroup(2, (3, 9))
        assert PresentedGroup.from_json(g.to_json()) == g


class TestGroupMap:
    def test_well_defined_enforced(self):
        # Z/2 -> Z/3 sending the generator to 1 is not a homomorphism
        with pytest.raises(IllFormedMap):
            GroupMap(Z2, PresentedGroup(0, (3,)), IntMatrix.from_rows([[1]]))
        # but the zero map is
        GroupMap.zero(Z2, PresentedGroup(0, (3,)))

    def test_entries_canonicalized(self):
        f = GroupMap(Z, Z4, IntMatrix.from_rows([[7]]))
        assert f.matrix.data == ((3,),)

    def test_composition_and_identity(self):
        f = GroupMap(Z, Z, IntMatrix.from_rows([[2]]))
        g = GroupMap(Z, Z4, IntMatrix.from_rows([[1]]))
        h = g @ f
        assert h((1,)) == (2,)
        assert (GroupMap.identity(Z) @ f) == f

    def test_mismatched_composition(self):
        f = GroupMap(Z, Z, IntMatrix.from_rows([[2]]))
        g = GroupMap(Z2, Z2, IntMatrix.from_rows([[1]]))
        with pytest.raises(IllFormedMap):
            g @ f


class TestSubquotient:
    def test_circle_style_quotient(self):
        # Z^2 / <(2,0),(0,3)> = Z/2 + Z/3 = Z/6
        den = IntMatrix.from_rows([[2, 0], [0, 3]])
        sq = Subquotient(IntMatrix.identity(2), den)
        assert sq.group == PresentedGroup(0, (6,))

    def test_coords_rejects_non_members(self):
        num = IntMatrix.from_rows([[2], [0]])  # subgroup 2Z x 0 of Z^2
        sq = Subquotient(num, IntMatrix.zeros(2, 0))
        sq.coords((4, 0))
        with pytest.raises(ValueError):
            sq.coords((1, 0))
        with pytest.raises(ValueError):
            sq.coords((0, 1))

    def test_lifts_land_in_numerator(self):
        rng = seeded(11)
        for _ in range(40):
            g = random_finite_group(rng, max_order=16)
            rel = g.relation_matrix()
            sq = Subquotient(IntMatrix.identity(g.n_gens), rel)
            assert sq.group == g


class TestKernelImageCokernel:
    def test_times_two_on_z4(self):
        f = GroupMap(Z4, Z4, IntMatrix.from_rows([[2]]))
        assert kernel(f)[0] == Z2
        assert image(f)[0] == Z2
        assert cokernel(f)[0] == Z2

    def test_kernel_lattice_annihilates(self):
        f = IntMatrix.from_rows([[2, 1], [0, 2]])
        lat = kernel_lattice(f, (4, 8))
        for j in range(lat.cols):
            v = f.apply(lat.column(j))
            assert v[0] % 4 == 0 and v[1] % 8 == 0

    def test_order_balance(self):
        rng = seeded(12)
        for _ in range(60):
            a = random_finite_group(rng, max_order=24)
            b = random_finite_group(rng, max_order=24)
            if a.n_gens == 0 or b.n_gens == 0:
                continue
            cols = [list(x) for x in
                    (b.elements() if b.cardinality() < 200 else [b.zero()])]
            f = None
            for _ in range(20):
                pick = [list(rng.choice(cols)) for _ in range(a.n_gens)]
                try:
                    f = GroupMap(a, b, IntMatrix.from_columns(pick, b.n_gens))
                    break
                except IllFormedMap:
                    continue
            if f is None:
                continue
            k, _ = kernel(f)
            im, _ = image(f)
            assert k.cardinality() * im.cardinality() == a.cardinality()
            assert cokernel(f)[0].cardinality() * im.cardinality() == b.cardinality()

    def test_inverse_round_trip(self):
        f = GroupMap(PresentedGroup(0, (6,)), PresentedGroup(0, (6,)),
                     IntMatrix.from_rows([[5]]))
        assert is_isomorphism(f)
        g = inverse(f)
        assert (g @ f).is_identity and (f @ g).is_identity

    def test_injective_surjective_predicates(self):
        f = GroupMap(Z, Z, IntMatrix.from_rows([[2]]))
        assert is_injective(f) and not is_surjective(f)
        p = GroupMap(Z, Z2, IntMatrix.from_rows([[1]]))
        assert is_surjective(p) and not is_injective(p)


class TestTensorIdentity:
    def test_block_structure(self):
        mat = IntMatrix.from_rows([[1, 2], [3, 4]])
        t = tensor_identity(mat, 3)
        assert (t.rows, t.cols) == (6, 6)
        assert t.data[0][0] == 1 and t.data[0][3] == 2
        assert t.data[1][1] == 1 and t.data[4][1] == 3

    def test_multiplicativity(self):
        rng = random.Random(13)
        a = IntMatrix.from_rows([[rng.randint(-3, 3) for _ in range(2)]
                                 for _ in range(3)])
        b = IntMatrix.from_rows([[rng.randint(-3, 3) for _ in range(4)]
                                 for _ in range(2)])
        assert tensor_identity(a * b, 2) == tensor_identity(a, 2) * tensor_identity(b, 2)


class TestHomExt:
    def test_known_values(self):
        assert hom_group(Z, Z4).group == Z4
        assert hom_group(Z4, Z).group.is_trivial
        assert ext_group(Z4, Z).group == Z4
        assert ext_group(Z, Z4).group.is_trivial
        assert hom_group(Z2, Z4).group == Z2
        assert ext_group(PresentedGroup(0, (6,)), Z4).group == Z2

    def test_oracle_sample(self):
        rng = seeded(14)
        chains = all_finite_groups_to(24)
        for _ in range(80):
            a = PresentedGroup(0, tuple(rng.choice(chains)))
            g = PresentedGroup(0, tuple(rng.choice(chains)))
            assert hom_group(a, g).group.torsion == hom_oracle(a.torsion, g.torsion)
            assert ext_group(a, g).group.torsion == ext_oracle(a.torsion, g.torsion)

    def test_hom_to_map_round_trip(self):
        h = hom_group(PresentedGroup(1, (4,)), PresentedGroup(0, (2, 8)))
        seen = set()
        for coords in h.group.elements():
            f = h.to_map(coords)
            back = h.from_map(f)
            assert tuple(h.group.reduce(back)) == coords
            seen.add(tuple(f.matrix.data))
        assert len(seen) == h.group.cardinality()

    def test_pullback_contravariant(self):
        rng = seeded(15)
        a = PresentedGroup(0, (4,))
        b = PresentedGroup(0, (2, 4))
        c = PresentedGroup(0, (8,))
        g0 = PresentedGroup(0, (2, 8))
        f = GroupMap(a, b, IntMatrix.from_columns([[1, 2]], 2))
        g = GroupMap(b, c, IntMatrix.from_columns([[4], [2]], 1))
        for functor in (hom_group, ext_group):
            fa, fb, fc = functor(a, g0), functor(b, g0), functor(c, g0)
            lhs = fc.pullback(g @ f, fa)
            rhs = fb.pullback(f, fa) @ fc.pullback(g, fb)
            assert lhs == rhs

    def test_hom_functor_identity(self):
        a = PresentedGroup(0, (4,))
        h = hom_group(a, Z4)
        assert h.pullback(GroupMap.identity(a), h).is_identity


@given(groups_strategy(), groups_strategy())
@settings(max_examples=60, deadline=None)
def test_hom_ext_of_finite_parts_match_formula(a, g):
    # free parts: Hom(Z^r, G) adds G^r; Ext(Z^r, -) adds nothing;
    # torsion parts must match the enumeration oracles
    hom = hom_group(a, g).group
    expected_free = a.free_rank * g.free_rank
    assert hom.free_rank == expected_free
    if a.free_rank == 0 and g.free_rank == 0:
        assert hom.torsion == hom_oracle(a.torsion, g.torsion)
        assert ext_group(a, g).group.torsion == ext_oracle(a.torsion, g.torsion)
    # Ext(A, G) of finitely generated groups is always finite
    assert ext_group(a, g).group.free_rank == 0
