import math
import random
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from octabraid import models
from octabraid.models import (
    HALF_RT2,
    ONE,
    Q_I,
    Q_J,
    Q_K,
    Q_ONE,
    U1,
    U2,
    DyadicRt2,
    Mat2,
    generate_closure,
    mat_mul,
    quat,
    quat_mul,
    stem_test,
)


class TestDyadicRt2:
    def test_normalization(self):
        assert DyadicRt2(2, 4, 1) == DyadicRt2(1, 2, 0)
        assert DyadicRt2(0, 0, 5) == DyadicRt2(0, 0, 0)

    def test_half_sqrt2_squares_to_half(self):
        assert HALF_RT2 * HALF_RT2 == DyadicRt2(1, 0, 1)

    def test_sqrt2_value(self):
        assert DyadicRt2(0, 1, 0) * DyadicRt2(0, 1, 0) == DyadicRt2(2, 0, 0)

    def test_rejects_negative_k(self):
        with pytest.raises(ValueError):
            DyadicRt2(1, 0, -1)

    def test_float_agreement_random(self):
        # sanity cross-check only; exactness is the contract
        rng = random.Random(12345)
        for _ in range(10_000):
            x = DyadicRt2(rng.randint(-20, 20), rng.randint(-20, 20), rng.randint(0, 4))
            y = DyadicRt2(rng.randint(-20, 20), rng.randint(-20, 20), rng.randint(0, 4))
            assert abs(float(x + y) - (float(x) + float(y))) < 1e-12
            assert abs(float(x - y) - (float(x) - float(y))) < 1e-12
            assert abs(float(x * y) - float(x) * float(y)) < 1e-10


def dyadics():
    return st.builds(DyadicRt2, st.integers(-50, 50), st.integers(-50, 50),
                     st.integers(0, 6))


class TestDyadicRingLaws:
    @given(dyadics(), dyadics(), dyadics())
    def test_mul_associative(self, x, y, z):
        assert (x * y) * z == x * (y * z)

    @given(dyadics(), dyadics(), dyadics())
    def test_distributive(self, x, y, z):
        assert x * (y + z) == x * y + x * z

    @given(dyadics(), dyadics())
    def test_commutative(self, x, y):
        assert x * y == y * x and x + y == y + x

    @given(dyadics())
    def test_additive_inverse(self, x):
        assert (x + (-x)).is_zero()

    @given(dyadics())
    def test_normalized(self, x):
        assert x.k == 0 or x.a % 2 != 0 or x.b % 2 != 0


class TestQuaternions:
    def test_u1_squared_is_minus_k(self):
        assert quat_mul(U1, U1) == -Q_K

    def test_braid_relation(self):
        assert quat_mul(quat_mul(U2, U1), U2) == quat_mul(quat_mul(U1, U2), U1)

    def test_unit_neutral(self):
        for q in (U1, U2, Q_I, Q_J, Q_K):
            assert quat_mul(Q_ONE, q) == q
            assert quat_mul(q, Q_ONE) == q

    def test_anticommutation(self):
        assert quat_mul(Q_I, Q_J) == -quat_mul(Q_J, Q_I)
        assert quat_mul(Q_J, Q_K) == -quat_mul(Q_K, Q_J)
        assert quat_mul(Q_K, Q_I) == -quat_mul(Q_I, Q_K)

    def test_squares_minus_one(self):
        for q in (Q_I, Q_J, Q_K):
            assert quat_mul(q, q) == -Q_ONE

    def test_ij_is_k(self):
        assert quat_mul(Q_I, Q_J) == Q_K

    def test_norm_multiplicative(self):
        p = quat_mul(U1, Q_J)
        assert p.norm2() == ONE


class TestClosures:
    def test_2o_closure_48(self):
        closure = generate_closure([U1, U2], quat_mul, Q_ONE, max_size=100)
        assert len(closure) == 48

    def test_hurwitz_closed_24(self):
        hur = models.hurwitz_units()
        closure = generate_closure(sorted(hur, key=str), quat_mul, Q_ONE, 100)
        assert set(closure) == hur

    def test_gl23_closure_is_full(self):
        identity = Mat2(1, 0, 0, 1, 3)
        closure = generate_closure([models.GL23_R1, models.GL23_R2], mat_mul,
                                   identity, 100)
        assert len(closure) == 48
        assert set(closure) == models.gl23_all()

    def test_gl23_brute_force_count(self):
        # |GL(2,3)| = (9-1)(9-3)
        assert len(models.gl23_all()) == 48

    def test_sl24_brute_force_count(self):
        assert len(models.sl24_all()) == 48

    def test_closure_deterministic(self):
        a = generate_closure([U1, U2], quat_mul, Q_ONE, 100)
        b = generate_closure([U1, U2], quat_mul, Q_ONE, 100)
        assert a == b

    def test_closure_size_guard(self):
        with pytest.raises(RuntimeError):
            generate_closure([U1, U2], quat_mul, Q_ONE, max_size=10)


class TestReports:
    def test_verify_2o(self, ctx3):
        report = models.verify_2O(ctx3)
        assert report.passed, report.to_text()

    @pytest.mark.parametrize("which", ["gl23", "sl24"])
    def test_verify_matrix_models(self, which):
        report = models.verify_matrix_model(which)
        assert report.passed, report.to_text()

    def test_unknown_model(self):
        with pytest.raises(ValueError):
            models.verify_matrix_model("psl27")

    def test_report_text_format(self):
        report = models.verify_matrix_model("gl23")
        for check, line in zip(report.checks, report.to_text().splitlines()[1:]):
            assert line.startswith(f"CHECK {check.name}: ")
            assert ("PASS" in line) == check.passed

    def test_report_json_twin(self):
        import json

        report = models.verify_matrix_model("sl24")
        payload = json.loads(report.to_json())
        assert payload["passed"] is True
        assert len(payload["checks"]) == len(report.checks)


class TestStem:
    def test_stem_results(self):
        report = models.stem_report()
        results = {c.name: c.passed for c in report.checks}
        assert results == {"2o-stem": True, "gl23-stem": True, "sl24-not-stem": True}

    def test_stem_rejects_noncentral(self):
        closure = generate_closure([U1, U2], quat_mul, Q_ONE, 100)
        with pytest.raises(ValueError, match="not central"):
            stem_test(closure, quat_mul, Q_ONE, U1)

    def test_sl24_center_generator(self):
        # (R1 R2)^3 commutes with the generators but is not a commutator product
        identity = Mat2(1, 0, 0, 1, 4)
        closure = generate_closure([models.SL24_R1, models.SL24_R2], mat_mul,
                                   identity, 100)
        z = identity
        for _ in range(3):
            z = mat_mul(z, mat_mul(models.SL24_R1, models.SL24_R2))
        assert z != identity
        assert stem_test(closure, mat_mul, identity, z) is False


class TestExtensionFingerprints:
    def test_all_orders_48(self):
        for which in ("2o", "gl23", "sl24"):
            assert sum(models.order_multiset(which).values()) == 48

    def test_multisets_pairwise_distinct(self):
        q = models.order_multiset("2o")
        g = models.order_multiset("gl23")
        s = models.order_multiset("sl24")
        assert q != g and q != s and g != s

    def test_max_generator_orders(self):
        assert max(models.order_multiset("2o")) == 8
        assert max(models.order_multiset("gl23")) == 8
        assert max(models.order_multiset("sl24")) == 6  # R1 itself has order 4

    def test_standard_group_matches_2o(self, ctx3):
        assert Counter(ctx3.order_profile()) == models.order_multiset("2o")

    def test_twisted_group_matches_gl23(self, ctx3_twisted):
        assert Counter(ctx3_twisted.order_profile()) == models.order_multiset("gl23")

    def test_extension_report_passes(self):
        assert models.extension_report().passed
