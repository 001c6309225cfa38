"""Acceptance suite: one test and one printed pass/fail line per criterion.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
"""

import math
import random
import time
from collections import Counter

import numpy as np
import pytest

from octabraid import hyperocta, models, rewrite, sopath
from octabraid.cosets import enumerate_cosets, group_order
from octabraid.quotient import GroupCtx, expand
from octabraid.words import PlaneLetter, gen, parse_word, presentation_for


@pytest.fixture(scope="module")
def ctx6():
    return GroupCtx.build(6)


def _criterion(num: int, name: str, failures: list) -> None:
    status = "PASS" if not failures else "FAIL"
    detail = f"  ({'; '.join(str(f) for f in failures)})" if failures else ""
    print(f"criterion {num:02d} [{name}]: {status}{detail}")
    assert not failures, f"criterion {num} [{name}]: {failures}"


def test_criterion_01_group_orders():
    failures = []
    expected = {3: 48, 4: 384, 5: 3840, 6: 46080}
    for n, want in expected.items():
        start = time.monotonic()
        got = group_order(presentation_for(n))
        elapsed = time.monotonic() - start
        if got != want:
            failures.append(f"order n={n}: got {got}, want {want}")
        if elapsed >= 30.0:
            failures.append(f"n={n} enumeration took {elapsed:.1f}s")
    _criterion(1, "group orders 48/384/3840/46080", failures)


def test_criterion_02_order_formula(ctx3, ctx4, ctx5, ctx6):
    failures = []
    for ctx in (ctx3, ctx4, ctx5, ctx6):
        want = 2 ** ctx.rank * math.factorial(ctx.rank)
        if ctx.order != want:
            failures.append(f"n={ctx.rank}: {ctx.order} != 2^n n! = {want}")
    _criterion(2, "order equals 2^N N!", failures)


def test_criterion_03_kernel(ctx3, ctx4, ctx5, ctx6):
    failures = []
    for ctx in (ctx3, ctx4, ctx5, ctx6):
        start = time.monotonic()
        ker = hyperocta.kernel(ctx)
        elapsed = time.monotonic() - start
        z = ctx.element_from_word(gen(1, ctx.rank, 4))
        if ker != [1, z]:
            failures.append(f"n={ctx.rank}: kernel {ker} != [1, {z}]")
        if ctx.rank == 6 and elapsed >= 60.0:
            failures.append(f"n=6 kernel scan took {elapsed:.1f}s")
    _criterion(3, "kernel is {identity, R1^4}", failures)


def test_criterion_04_generator_orders(ctx3, ctx4, ctx5, ctx6):
    failures = []
    for ctx in (ctx3, ctx4, ctx5, ctx6):
        n = ctx.rank
        z = ctx.element_from_word(gen(1, n, 4))
        for i in range(1, n):
            if ctx.element_order(ctx.generator(i)) != 8:
                failures.append(f"n={n}: R{i} order != 8")
            if ctx.element_from_word(gen(i, n, 4)) != z:
                failures.append(f"n={n}: R{i}^4 != R1^4")
        for i in range(1, n):
            col = 2 * (i - 1)
            if ctx.table.apply_col(z, col) != ctx._apply_rep(z, ctx.generator(i)):
                failures.append(f"n={n}: R1^4 does not commute with R{i}")
    _criterion(4, "all generators have order 8, R1^4 central", failures)


def test_criterion_05_canonical_bijection(ctx3, ctx4):
    failures = []
    for ctx in (ctx3, ctx4):
        decode = ctx.canonical_table()
        for e, cf in decode.items():
            if ctx.element_from_word(expand(cf)) != e:
                failures.append(f"n={ctx.rank}: decode/encode mismatch at {e}")
                break
        if len(decode) != ctx.order:
            failures.append(f"n={ctx.rank}: {len(decode)} forms != {ctx.order}")
    sizes3 = [c for _, c in ctx3.family_sizes()]
    if sizes3 != [32, 8, 8]:
        failures.append(f"n=3 family sizes {sizes3}")
    sizes4 = [c for _, c in ctx4.family_sizes()]
    want4 = [128, 32, 32, 32, 32, 32, 8, 8, 8, 8, 32, 8, 8, 8, 8]
    if sizes4 != want4:
        failures.append(f"n=4 family sizes {sizes4}")
    if sum(sizes4) != 384:
        failures.append("n=4 family sizes do not sum to 384")
    _criterion(5, "canonical-form bijection and family sizes", failures)


def test_criterion_06_quotient_structure(ctx3):
    failures = []
    z = ctx3.element_from_word(gen(1, 3, 4))
    profile = ctx3.quotient_order_profile(z)
    if sum(profile.values()) != 24:
        failures.append(f"quotient order {sum(profile.values())}")
    want = {1: 1, 2: 9, 3: 8, 4: 6}
    if profile != want:
        failures.append(f"profile {profile} != {want}")
    _criterion(6, "quotient by R1^4 is S4-profiled of order 24", failures)


def test_criterion_07_center_structure(ctx3, ctx4, ctx5, ctx6):
    failures = []
    if ctx3.center() != [1, ctx3.element_from_word(gen(1, 3, 4))]:
        failures.append("n=3 center")
    center4 = ctx4.center()
    if len(center4) != 4:
        failures.append(f"n=4 center size {len(center4)}")
    lhs = ctx4.element_from_word(parse_word(" ".join(["R1 R2 R3"] * 4), 4))
    rhs = ctx4.element_from_word(parse_word("R1 R1 R3^-1 R3^-1", 4))
    if lhs != rhs or lhs not in center4:
        failures.append("n=4: (R1R2R3)^4 != R1^2 R3^-2 or not central")
    if ctx5.center() != [1, ctx5.element_from_word(gen(1, 5, 4))]:
        failures.append("n=5 center not {1, R1^4}")
    even_word = parse_word("R1 R1 R3 R3 R5 R5", 6)
    if ctx6.element_from_word(even_word) not in ctx6.center():
        failures.append("n=6: R1^2 R3^2 R5^2 not central")
    _criterion(7, "center structure at N=3,4,5,6", failures)


def test_criterion_08_binary_octahedral_model(ctx3):
    failures = []
    start = time.monotonic()
    report = models.verify_2O(ctx3)
    elapsed = time.monotonic() - start
    for check in report.checks:
        if not check.passed:
            failures.append(f"{check.name}: {check.detail}")
    if elapsed >= 5.0:
        failures.append(f"took {elapsed:.1f}s")
    _criterion(8, "quaternion model: 48 elements, relations, isomorphism", failures)


def test_criterion_09_matrix_models():
    failures = []
    for which in ("gl23", "sl24"):
        report = models.verify_matrix_model(which)
        for check in report.checks:
            if not check.passed:
                failures.append(f"{which}/{check.name}")
    stem = models.stem_report()
    results = {c.name: c.passed for c in stem.checks}
    if results != {"2o-stem": True, "gl23-stem": True, "sl24-not-stem": True}:
        failures.append(f"stem results {results}")
    _criterion(9, "matrix models and stem tests true/true/false", failures)


def test_criterion_10_twisted_series(ctx3_twisted):
    failures = []
    if ctx3_twisted.order != 48:
        failures.append(f"twisted n=3 order {ctx3_twisted.order}")
    twisted_profile = Counter(ctx3_twisted.order_profile())
    gl23 = models.order_multiset("gl23")
    if twisted_profile != gl23:
        failures.append(f"twisted profile {dict(twisted_profile)} != GL(2,3)")
    reported = {}
    for n in (4, 5):
        reported[n] = group_order(presentation_for(n, "twisted"))
    print(f"twisted orders (reported, not asserted): n=4 -> {reported[4]}, "
          f"n=5 -> {reported[5]}")
    _criterion(10, "twisted n=3 is the GL(2,3) cover; higher orders reported",
               failures)


def test_criterion_11_theta_homomorphism(ctx3, ctx4, ctx5, ctx6):
    failures = []
    for n in (3, 4, 5, 6):
        for variant in ("standard", "twisted"):
            for rel in presentation_for(n, variant).relators:
                if not hyperocta.theta_word(rel, n).is_identity():
                    failures.append(f"relator not in kernel at n={n} {variant}")
    images3 = hyperocta.theta_images(ctx3)
    for a in range(1, 49):
        for b in range(1, 49):
            if images3[ctx3.compose_ids(a, b)] != hyperocta.compose(
                    images3[a], images3[b]):
                failures.append(f"homomorphism fails at n=3 ({a},{b})")
                break
    rng = random.Random(11)
    for ctx in (ctx4, ctx5):
        images = hyperocta.theta_images(ctx)
        for _ in range(10_000):
            a = rng.randint(1, ctx.order)
            b = rng.randint(1, ctx.order)
            if images[ctx.compose_ids(a, b)] != hyperocta.compose(images[a], images[b]):
                failures.append(f"homomorphism fails at n={ctx.rank}")
                break
    for ctx in (ctx3, ctx4, ctx5):
        n = ctx.rank
        image = hyperocta.rotation_image(ctx)
        if len(image) != 2 ** (n - 1) * math.factorial(n):
            failures.append(f"image size at n={n}: {len(image)}")
        if any(hyperocta.determinant(p) != 1 for p in image):
            failures.append(f"non-rotation image at n={n}")
    _criterion(11, "theta is onto the rotation group with determinant +1",
               failures)


def test_criterion_12_flow_contraction():
    failures = []
    start = time.monotonic()
    for idx, w in enumerate(rewrite.axis_triangle_words()):
        path = sopath.compile_path(w, 3)
        if sopath.distance(path.endpoint(), np.eye(3)) > 1e-10:
            failures.append(f"word {idx} not closed")
        if not sopath.is_local(path):
            failures.append(f"word {idx} not local")
        res = sopath.contract(path)
        if res.verdict != "contracted" or res.final_max_d >= 1e-6:
            failures.append(f"word {idx}: {res.verdict} at {res.final_max_d:.2e}")
    four_pi = sopath.compile_path([PlaneLetter(1, 2)] * 8, 3)
    res = sopath.contract(four_pi, jitter_retries=10, seed=0)
    if res.verdict != "contracted":
        failures.append(f"4pi path with jitter: {res.verdict}")
    two_pi = sopath.compile_path([PlaneLetter(1, 2)] * 4, 3)
    witness = sopath.stall_witness(two_pi)
    if witness.verdict != "stalled" or witness.final_max_d < 4.0 - 1e-3:
        failures.append(f"2pi witness: {witness.verdict} at {witness.final_max_d}")
    # As specified, the 2pi path must remain stalled at max-D >= 4 - 1e-3
    # even with seeded jitter retries.  A pointwise sample flow cannot
    # deliver this: the pinned half-turn matrix is the same fixed point the
    # 4pi clause requires jitter to free, so the seeded runs contract
    # instead.  See the decisions ledger; this sub-check fails honestly.
    for seed in range(10):
        res = sopath.contract(two_pi, jitter_retries=10, seed=seed)
        if res.verdict != "stalled" or res.final_max_d < 4.0 - 1e-3:
            failures.append(
                f"2pi with jitter seed {seed}: {res.verdict} at "
                f"{res.final_max_d:.2e} (expected stalled >= {4.0 - 1e-3})")
    elapsed = time.monotonic() - start
    if elapsed >= 120.0:
        failures.append(f"criterion took {elapsed:.0f}s")
    _criterion(12, "flow contraction and stall behavior", failures)


def test_criterion_13_word_reduction():
    failures = []
    for idx, w in enumerate(rewrite.axis_triangle_words()):
        trace = rewrite.reduce_local_word(w)
        if rewrite.replay_trace(trace) != ():
            failures.append(f"word {idx} did not reduce/replay")
    rng = random.Random(20260809)
    for k in range(100):
        w = rewrite.random_local_closed_word(rng)
        trace = rewrite.reduce_local_word(w)
        if rewrite.replay_trace(trace) != ():
            failures.append(f"random word {k} did not reduce/replay")
    _criterion(13, "local word reduction with replayable traces", failures)


def test_criterion_14_oracle_equivalence(ctx3, ctx4, ctx5):
    failures = []
    for a in range(1, 49):
        for b in range(1, 49):
            if ctx3.multiply(a, b) != ctx3.compose_ids(a, b):
                failures.append(f"n=3 mismatch at ({a},{b})")
                break
    rng = random.Random(14)
    for ctx in (ctx4, ctx5):
        ctx.canonical_table()
        for _ in range(10_000):
            a = rng.randint(1, ctx.order)
            b = rng.randint(1, ctx.order)
            if ctx.multiply(a, b) != ctx.compose_ids(a, b):
                failures.append(f"n={ctx.rank} mismatch at ({a},{b})")
                break
    _criterion(14, "canonical multiplication equals table composition", failures)
