"""Quadratic transformations, line splitting, reduction transcripts."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fatpoints.core import LinearSystem, intersect, parse_system, virtual_dim
from fatpoints.cremona import (Move, NegativeEntryError, NotFixedError, cremona,
                               cremona_vector, is_standard, replay_transcript,
                               split_fixed_line, standard_reduce,
                               transcript_from_jsonl, transcript_to_jsonl)


def L(text):
    return parse_system(text)


class TestCremona:
    def test_p0_and_two_sixes(self):
        out = cremona(L("L(20,12,6^4)"), 0, 1, 2)
        assert out.normalize() == L("L(16,8,6^2,2^2)").normalize()

    def test_three_sixes(self):
        out = cremona(L("L(14,5,6^5)"), 1, 2, 3)
        assert out.normalize() == L("L(10,5,6^2,2^3)").normalize()

    def test_negative_entry(self):
        with pytest.raises(NegativeEntryError):
            cremona(L("L(10,2,6^3)"), 1, 2, 3)

    def test_bad_slots(self):
        with pytest.raises(ValueError):
            cremona(L("L(5,1,1,1)"), 0, 0, 1)
        with pytest.raises(ValueError):
            cremona(L("L(5,1,1,1)"), 0, 1, 5)


class TestSplitFixedLine:
    def test_through_p0(self):
        assert split_fixed_line(L("L(11,6,6,3^2)"), 0, 1) == L("L(10,5,5,3^2)")

    def test_direct(self):
        assert split_fixed_line(L("L(10,8,6,6)"), 0, 1) == L("L(9,7,5,6)")

    def test_not_fixed(self):
        with pytest.raises(NotFixedError):
            split_fixed_line(L("L(5,2,2)"), 0, 1)

    def test_v_change_identity(self):
        rng = random.Random(11)
        for _ in range(300):
            d = rng.randint(1, 25)
            mults = tuple(rng.randint(1, d + 3) for _ in range(rng.randint(2, 6)))
            sys = LinearSystem(d, mults)
            i, j = rng.sample(range(len(mults)), 2)
            if d - mults[i] - mults[j] >= 0:
                continue
            try:
                out = split_fixed_line(sys, i, j)
            except NegativeEntryError:
                continue
            delta = virtual_dim(out) - virtual_dim(sys)
            assert delta == mults[i] + mults[j] - d - 1
            assert delta >= 0


def _random_valid_move(rng):
    """A system together with slots for which the transformation is legal."""
    while True:
        d = rng.randint(3, 30)
        k = rng.randint(3, 8)
        mults = tuple(rng.randint(0, d) for _ in range(k))
        slots = tuple(rng.sample(range(k), 3))
        w = d - sum(mults[s] for s in slots)
        if d + w >= 0 and all(mults[s] + w >= 0 for s in slots):
            return LinearSystem(d, mults), slots


class TestCremonaProperties:
    def test_virtual_dim_preserved_and_involution(self):
        rng = random.Random(5)
        for _ in range(1000):
            sys, slots = _random_valid_move(rng)
            d2, m2 = cremona_vector(sys.degree, sys.mults, *slots)
            assert virtual_dim(LinearSystem(d2, m2)) == virtual_dim(sys)
            d3, m3 = cremona_vector(d2, m2, *slots)
            assert (d3, m3) == (sys.degree, sys.mults)

    def test_intersection_pairing_preserved(self):
        rng = random.Random(6)
        for _ in range(500)          :
            a, slots = _random_valid_move(rng)
            # second class on the same slots, adjusted until the move is legal
            for _ in range(50):
                b = LinearSystem(rng.randint(3, 30),
                                 tuple(rng.randint(0, 8) for _ in range(a.npoints)))
                w = b.degree - sum(b.mults[s] for s in slots)
                if b.degree + w >= 0 and all(b.mults[s] + w >= 0 for s in slots):
                    break
            else:
                continue
            ta = LinearSystem(*cremona_vector(a.degree, a.mults, *slots))
            tb = LinearSystem(*cremona_vector(b.degree, b.mults, *slots))
            assert intersect(ta, tb) == intersect(a, b)


class TestStandardReduce:
    def test_already_standard(self):
        final, moves = standard_reduce(L("L(7,0,2^5)"))
        assert moves == ()
        assert final == L("L(7,0,2^5)")
        assert is_standard(final)

    def test_full_collapse(self):
        sys = L("L(10,8,6^2)")
        final, moves = standard_reduce(sys)
        assert final.degree == 0 and all(m == 0 for m in final.mults)
        assert max(-1, virtual_dim(final)) == 0
        assert replay_transcript(moves, sys) == final
        assert all(m.kind == "line" for m in moves)

    def test_cone_of_lines(self):
        final, moves = standard_reduce(L("L(6,6,6)"))
        assert final.degree == 0 and all(m == 0 for m in final.mults)
        assert virtual_dim(final) == 0
        assert len(moves) == 6

    def test_stops_when_multiplicity_exceeds_degree(self):
        final, _ = standard_reduce(L("L(13,5,6^5)"))
        assert any(m > final.degree for m in final.mults)

    def test_transcript_jsonl_round_trip(self):
        sys = L("L(14,0,6^6)")
        final, moves = standard_reduce(sys)
        text = transcript_to_jsonl(moves)
        assert transcript_from_jsonl(text) == moves
        assert replay_transcript(transcript_from_jsonl(text), sys) == final
        assert all(isinstance(m, Move) for m in moves)

    def test_replay_detects_tampering(self):
        sys = L("L(10,8,6^2)")
        _, moves = standard_reduce(sys)
        broken = (Move(moves[0].kind, moves[0].slots, moves[0].before, "L(5,1)"),) + moves[1:]
        with pytest.raises(ValueError):
            replay_transcript(broken, sys)
