"""Catalog soundness, the splitting classifier, and the classification table."""

import random
from itertools import combinations

import pytest

from fatpoints.core import (DivisorClass, LinearSystem, expected_dim, intersect,
                            parse_system, virtual_dim)
from fatpoints.neg_curves import (SplittingWitness, _split_chain, catalog,
                                  configuration_total, find_splittings,
                                  generate_classification, hh_dimension,
                                  is_minus_one_class, is_minus_one_special)
from fatpoints.verdict import EMPTY, REGULAR, SPECIAL


def L(text):
    return parse_system(text)


class TestMinusOneClass:
    def test_line_through_p0(self):
        assert is_minus_one_class(L("L(1,1,1)"))

    def test_plain_line_is_not(self):
        assert not is_minus_one_class(L("L(1,0)"))

    def test_degree_family(self):
        for e in range(1, 11):
            assert is_minus_one_class(LinearSystem(e, (e - 1,) + (1,) * (2 * e)))


class TestCatalog:
    def test_five_points_cap_one(self):
        labels = {entry.label for entry in catalog(5, 1)}
        assert labels == {"L(2,0,1^5)", "L(1,1,1)", "L(1,0,1^2)", "L(2,1,1^4)",
                          "L(5,5,1^5)", "L(4,4,1^4)", "L(3,3,1^3)", "L(2,2,1^2)"}

    def test_seven_points_cap_two(self):
        labels = {entry.label for entry in catalog(7, 2)}
        assert "L(6,3,2^7)" in labels and "L(3,0,2^3)" in labels
        assert "L(12,8,3^9)" not in labels

    def test_one_point(self):
        assert [entry.label for entry in catalog(1, 1)] == ["L(1,1,1)"]

    def test_cap_validation(self):
        with pytest.raises(ValueError):
            catalog(5, 4)

    def test_soundness(self):
        # every simple instantiation is a (-1)-class; every compound is a sum
        # of pairwise disjoint (-1)-classes
        for entry in catalog(20, 3):
            if entry.kind == "simple":
                assert is_minus_one_class(entry.instantiate(20))
            else:
                parts = entry.constituents(20)
                total = entry.instantiate(20)
                assert all(is_minus_one_class(p) for p in parts)
                for a, b in combinations(parts, 2):
                    assert intersect(a, b) == 0
                assert intersect(total, total) == -len(parts)
                summed = [sum(p.mults[i] for p in parts) for i in range(21)]
                assert (total.degree, tuple(summed)) == (
                    sum(p.degree for p in parts), total.mults)


class TestConfigurationTotal:
    def test_lines_through_p0(self):
        assert configuration_total(L("L(1,1,1)"), 4) == DivisorClass(4, (4, 1, 1, 1, 1))
        assert configuration_total(L("L(1,1,1)"), 2) == DivisorClass(2, (2, 1, 1))

    def test_triangle(self):
        assert configuration_total(L("L(1,0,1^2)"), 3) == DivisorClass(3, (0, 2, 2, 2))

    def test_rejects_wrong_shapes(self):
        with pytest.raises(ValueError):
            configuration_total(L("L(1,1,1)"), 1)  # single tail value
        with pytest.raises(ValueError):
            configuration_total(L("L(6,3,2^7)"), 8)  # values differ by two
        with pytest.raises(ValueError):
            configuration_total(L("L(1,0,1^2)"), 5)  # neither value is a singleton
        with pytest.raises(ValueError):
            configuration_total(L("L(2,0,1^4)"), 5)  # not a (-1)-class


def _brute_splittings(sys):
    """All negative catalog intersections, enumerated independently."""
    base = sys.normalize()
    t = len(base.tail)
    out = set()
    for entry in catalog(t, 3) if t else ():
        for placement in combinations(range(t), entry.tail_points):
            tail = [0] * t
            for s in placement:
                tail[s] = entry.tail_mult
            val = (entry.degree * base.degree - entry.m0 * base.m0
                   - sum(a * b for a, b in zip(tail, base.tail)))
            if val <= -1:
                out.add((entry.degree, (entry.m0,) + tuple(tail), val))
    return out


class TestFindSplittings:
    def test_small_special_system(self):
        found = find_splittings(L("L(10,8,6^2)"))
        as_set = {(s.curve.degree, s.curve.mults, s.intersection) for s in found}
        assert as_set == _brute_splittings(L("L(10,8,6^2)"))
        head = [(str(s.curve), s.intersection) for s in found[:3]]
        assert head == [("L(1,1,1,0)", -4), ("L(1,1,0,1)", -4), ("L(1,0,1^2)", -2)]

    def test_conic_case(self):
        found = find_splittings(L("L(14,0,6^5)"))
        assert [(str(s.curve), s.intersection) for s in found] == [("L(2,0,1^5)", -2)]

    def test_empty(self):
        assert find_splittings(L("L(5,0,1^2)")) == ()

    def test_regime_enforced(self):
        with pytest.raises(ValueError):
            find_splittings(L("L(9,1,7^3)"))
        with pytest.raises(ValueError):
            find_splittings(L("L(9,1,6,5)"))

    def test_matches_brute_force(self):
        rng = random.Random(17)
        for _ in range(50):
            d = rng.randint(0, 18)
            n = rng.randint(1, 7)
            m = rng.randint(1, 6)
            m0 = rng.randint(0, d) if d else 0
            sys = LinearSystem(d, (m0,) + (m,) * n)
            got = {(s.curve.degree, s.curve.mults, s.intersection)
                   for s in find_splittings(sys)}
            assert got == _brute_splittings(sys)


class TestIsMinusOneSpecial:
    def test_triangle_witness(self):
        special, witness = is_minus_one_special(L("L(10,2,6^3)"))
        assert special
        assert witness.residual == L("L(4,2,2^3)")
        assert virtual_dim(witness.residual) == 2
        assert sorted(n for _, n in witness.entries) == [2, 2, 2]
        verdict = hh_dimension(L("L(10,2,6^3)"))
        assert any(step["unit"] == "L(3,0,2^3)" for step in verdict.trace["steps"])

    def test_sporadic(self):
        assert is_minus_one_special(L("L(14,5,6^5)"))[0]

    def test_plain_regular(self):
        assert is_minus_one_special(L("L(7,0,1^3)")) == (False, None)

    def test_witness_validation(self):
        _, witness = is_minus_one_special(L("L(10,2,6^3)"))
        with pytest.raises(ValueError):
            SplittingWitness(witness.system, witness.entries,
                             L("L(4,2,2,2,1)"))
        with pytest.raises(ValueError):
            SplittingWitness(witness.system, witness.entries[:-1], witness.residual)


class TestHHDimension:
    @pytest.mark.parametrize("name,ell", [
        ("L(10,8,6^2)", 0),
        ("L(9,0,6^3)", 0),
        ("L(14,0,6^5)", 15),
        ("L(24,16,6^9)", 0),
        ("L(18,9,6^7)", 0),
        ("L(13,2,6^5)", 2),
    ])
    def test_table_values(self, name, ell):
        assert hh_dimension(L(name)).ell == ell

    def test_statuses(self):
        assert hh_dimension(L("L(10,2,6^3)")).status == SPECIAL
        assert hh_dimension(L("L(7,0,1^3)")).status == REGULAR
        assert hh_dimension(L("L(6,6,6^2)")).status == EMPTY

    def test_conjecture_opt_in(self):
        with pytest.raises(ValueError):
            hh_dimension(L("L(20,3,7^4)"))
        assert hh_dimension(L("L(20,3,7^4)"), conjecture=True).ell >= -1

    def test_bound_and_equality_law(self):
        rng = random.Random(23)
        for _ in range(500):
            d = rng.randint(0, 26)
            n = rng.randint(0, 9)
            m = rng.randint(1, 6)
            m0 = rng.randint(0, d) if d else 0
            sys = LinearSystem(d, (m0,) + (m,) * n)
            ell = hh_dimension(sys).ell
            special, witness = is_minus_one_special(sys)
            assert ell >= expected_dim(sys)
            assert (ell > expected_dim(sys)) == special
            if special:
                # a multiple (-1)-part strictly raises the residual dimension
                assert virtual_dim(witness.residual) > virtual_dim(sys)

    def test_order_independence(self):
        rng = random.Random(29)
        for _ in range(500):
            d = rng.randint(0, 28)
            n = rng.randint(0, 10)
            m = rng.randint(1, 6)
            m0 = rng.randint(0, d) if d else 0
            sys = LinearSystem(d, (m0,) + (m,) * n)
            fwd = _split_chain(sys, reverse=False)
            rev = _split_chain(sys, reverse=True)
            fr = fwd.residual_system()
            rr = rev.residual_system()
            assert (fr is None) == (rr is None)
            if fr is not None:
                assert fr.normalize() == rr.normalize()


@pytest.fixture(scope="module")
def rows():
    return generate_classification(4)


class TestGenerateClassification:
    def test_row_count_and_layout(self, rows):
        assert len(rows) == 46
        assert [r.offset for r in rows] == sorted(r.offset for r in rows)

    def test_offset_five_block_at_e_one(self, rows):
        block = [r for r in rows if r.offset == 5]
        got = [(str(inst[0]), inst[2]) for r in block
               for inst in r.instances(e_limit=1)]
        assert got == [("L(7,2,6^2)", 0), ("L(8,3,6^2)", 2),
                       ("L(9,4,6^2)", 5), ("L(10,5,6^2)", 9)]

    def test_sporadic_block(self, rows):
        match = [r for r in rows if r.system == "L(18,9,6^7)"]
        assert len(match) == 1
        assert (match[0].v, match[0].ell) == ("-3", "0")

    def test_equal_multiplicity_block(self, rows):
        row = next(r for r in rows if r.system == "L(d,d,6^n)")
        inst = [(sys, v, ell) for sys, v, ell, _ in row.instances(e_limit=1, d_cap=6)]
        assert (str(inst[0][0]), inst[0][1], inst[0][2]) == ("L(6,6,6)", -15, 0)

    def test_family_validity_ranges(self, rows):
        by_system = {r.system: r for r in rows}
        assert by_system["L(5e+5,5e-2,6^2e)"].range == "10 >= e >= 1"
        assert by_system["L(4e+6,4e-2,6^2e)"].range == "4 >= e >= 1"
        assert by_system["L(10e,10e-2,6^2e)"].range == "e >= 1"
        # the range of this family follows from its residual L(e+5,e,3^2e),
        # whose virtual dimension -6e+20 stays nonnegative up to e = 3
        assert by_system["L(4e+5,4e-3,6^2e)"].range == "3 >= e >= 1"

    def test_boundary_flags(self, rows):
        flagged = {r.system: r.boundary_case for r in rows if r.boundary_case}
        assert flagged == {"L(d,d-3,6^n)": "d = 9n/2+1, n even",
                           "L(d,d-4,6^n)": "d = 4n+2, n even"}

    def test_instances_are_special_with_exact_v(self, rows):
        for row in rows:
            for sys, v, ell, boundary in row.instances(e_limit=3, d_cap=30):
                assert virtual_dim(sys) == v
                special, _ = is_minus_one_special(sys)
                assert special, f"{sys} from row {row.system}"
                if not boundary:
                    assert hh_dimension(sys).ell == ell
                else:
                    assert hh_dimension(sys).ell > ell
