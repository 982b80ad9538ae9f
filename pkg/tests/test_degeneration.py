"""Degeneration splits, the limit combiner, criteria, and the recursive prover."""

import json
import random

import pytest

from fatpoints.core import LinearSystem, expected_dim, parse_system, virtual_dim
from fatpoints.degeneration import (Budget, CertificateError, check_certificate,
                                    degenerate, limit_dimension, limit_value,
                                    prove_empty, prove_nonspecial, recursive_dim)
from fatpoints.oracle import dimension_char_p
from fatpoints.verdict import EMPTY, REGULAR, SPECIAL, UNKNOWN


def L(text):
    return parse_system(text)


class TestDegenerate:
    def test_large_example(self):
        s = degenerate(L("L(141,100,6^50)"), 5, 13)
        assert s.plane == L("L(136,100,6^37)")
        assert s.ruled == L("L(141,136,6^13)")
        assert s.plane_kernel == L("L(135,100,6^37)")
        assert s.ruled_kernel == L("L(141,137,6^13)")

    def test_small_example(self):
        s = degenerate(L("L(14,0,6^6)"), 5, 3)
        assert (s.plane, s.ruled) == (L("L(9,0,6^3)"), L("L(14,9,6^3)"))
        assert (s.plane_kernel, s.ruled_kernel) == (L("L(8,0,6^3)"), L("L(14,10,6^3)"))
        assert s.v_plane + s.v_ruled_kernel == virtual_dim(L("L(14,0,6^6)")) - 1

    def test_range_validation(self):
        with pytest.raises(ValueError):
            degenerate(L("L(14,0,6^6)"), 14, 3)
        with pytest.raises(ValueError):
            degenerate(L("L(14,0,6^6)"), 5, 7)
        with pytest.raises(ValueError):
            degenerate(L("L(14,0,6,5)"), 5, 1)

    def test_v_identity_on_randoms(self):
        rng = random.Random(31)
        for _ in range(1000):
            d = rng.randint(2, 30)
            n = rng.randint(0, 10)
            m = rng.randint(1, 6)
            m0 = rng.randint(0, d)
            sys = LinearSystem(d, (m0,) + (m,) * n)
            k = rng.randint(1, d - 1)
            b = rng.randint(0, n)
            s = degenerate(sys, k, b)  # identity asserted inside
            assert s.v_plane + s.v_ruled_kernel == virtual_dim(sys) - 1


class TestLimitValue:
    def test_empty_kernels_transversal(self):
        # r_plane + r_ruled = (3+1) + (2+1) = 7 <= d-k-1
        assert limit_value(10, 3, 2, -1, -1) == -1

    def test_overlap_identity(self):
        rng = random.Random(37)
        for _ in range(2000):
            dk = rng.randint(1, 40)
            lkp, lkf = rng.randint(-1, 20), rng.randint(-1, 20)
            rp = rng.randint(0, dk - 1)
            rf = dk - 1 - rp
            lp, lf = rp + lkp + 1, rf + lkf + 1
            assert limit_value(dk, lp, lf, lkp, lkf) == lkp + lkf + 1 == lp + lf - dk

    def test_combined_with_oracle_values(self):
        # the four restricted dimensions of the (5,3)-degeneration, computed
        # by the rank oracle, give a limit far above the true dimension -1:
        # this split does not settle L(14,0,6^6)
        s = degenerate(L("L(14,0,6^6)"), 5, 3)
        ells = [dimension_char_p(x)
                for x in (s.plane, s.ruled, s.plane_kernel, s.ruled_kernel)]
        assert ells == [0, 11, -1, 4]
        assert limit_dimension(s, *ells) == 4
        assert limit_dimension(s, *ells) >= dimension_char_p(L("L(14,0,6^6)"))


class TestProveEmpty:
    def test_success(self):
        assert prove_empty(L("L(12,0,6^10)"), 5, 3)

    def test_failure_all_small_splits(self):
        # every (k, b) fails here: the plane restriction L(9,0,6^3) is special
        # for b = 3, and other choices break a kernel or restriction condition
        for k in (5, 6):
            for b in range(6):
                assert not prove_empty(L("L(14,0,6^6)"), k, b)

    def test_nonempty_system_never_certified(self):
        for k in (2, 5, 6):
            for b in range(2):
                assert not prove_empty(L("L(10,8,6^2)"), k, b)

    def test_precondition(self):
        with pytest.raises(ValueError):
            prove_empty(L("L(5,0,1^2)"), 2, 1)


class TestProveNonspecial:
    def test_successes(self):
        assert prove_nonspecial(L("L(19,0,6^9)"), 5, 5)
        assert prove_nonspecial(L("L(18,0,6^8)"), 5, 4)
        assert prove_nonspecial(L("L(6,0,1^3)"), 1, 1)

    def test_special_system_never_certified(self):
        for k in (2, 5, 6):
            for b in range(2):
                assert not prove_nonspecial(L("L(10,8,6^2)"), k, b)

    def test_below_range_is_inconclusive(self):
        assert not prove_nonspecial(L("L(10,8,6^2,6)"), 5, 1)  # v = -34

    def test_never_both_true(self):
        a, b = L("L(12,0,6^10)"), L("L(19,0,6^9)")
        assert virtual_dim(a) < -1 and virtual_dim(b) > -1
        assert prove_empty(a, 5, 3) and not prove_nonspecial(a, 5, 3)
        assert prove_nonspecial(b, 5, 5)
        with pytest.raises(ValueError):
            prove_empty(b, 5, 5)


class TestRecursiveDim:
    def test_special(self):
        v = recursive_dim(L("L(10,2,6^3)"))
        assert (v.status, v.ell) == (SPECIAL, 2)

    def test_regular_via_oracle(self):
        v = recursive_dim(L("L(19,5,6^9)"))
        assert (v.status, v.ell) == (REGULAR, 5)
        assert v.trace["kind"] == "rank_oracle"

    def test_regular_via_degeneration(self):
        v = recursive_dim(L("L(21,0,6^10)"))
        assert (v.status, v.ell) == (REGULAR, 42)
        assert v.trace["kind"] == "degeneration"

    def test_empty(self):
        assert recursive_dim(L("L(14,0,6^6)")).status == EMPTY

    def test_trivial(self):
        v = recursive_dim(L("L(0)"))
        assert (v.status, v.ell) == (REGULAR, 0)

    def test_budget_exhaustion_is_unknown(self):
        lean = Budget(use_oracle=False, scan_depth=0)
        v = recursive_dim(L("L(19,5,6^9)"), lean)
        assert v.status == UNKNOWN and v.ell is None

    def test_regime_enforced(self):
        with pytest.raises(ValueError):
            recursive_dim(L("L(20,1,7^5)"))


class TestCertificates:
    @pytest.mark.parametrize("name", [
        "L(10,2,6^3)",    # fixed-part removal
        "L(14,0,6^6)",    # reduction to a small standard system
        "L(21,0,6^10)",   # degeneration rule
        "L(19,5,6^9)",    # rank oracle leaf
        "L(46,36,6^22)",  # reduction landing in a bounded-tail base case
    ])
    def test_round_trip(self, name):
        verdict = recursive_dim(L(name))
        cert = json.loads(verdict.dumps())
        check_certificate(cert)

    def test_tampered_ell_detected(self):
        cert = json.loads(recursive_dim(L("L(10,2,6^3)")).dumps())
        cert["ell"] += 1
        with pytest.raises(CertificateError):
            check_certificate(cert)

    def test_tampered_trace_detected(self):
        cert = json.loads(recursive_dim(L("L(21,0,6^10)")).dumps())
        cert["trace"]["b"] += 1
        with pytest.raises(CertificateError):
            check_certificate(cert)

    def test_unknown_has_no_certificate(self):
        lean = Budget(use_oracle=False, scan_depth=0)
        cert = json.loads(recursive_dim(L("L(19,5,6^9)"), lean).dumps())
        with pytest.raises(CertificateError):
            check_certificate(cert)
