"""End-to-end acceptance checks, one per headline claim.

Each test prints a single PASS/FAIL line (visible with pytest -s) and
asserts the same condition, with the runtime budgets enforced where the
claim carries one.
"""

import json
import subprocess
import sys
import time

import numpy as np

from cmfields.cartan import CartanParams, normalizer_group
from cmfields.classifier import J1728, JZero, classify, fourth_power_free, is_cyclotomic
from cmfields.modmat import (
    Mat2,
    group_closure,
    is_abelian,
    is_isomorphic_s3,
    project_group,
)
from cmfields.oracle import cyclotomic_consistency_test
from cmfields.verifier import (
    expectation_table,
    verify_corollary_nonabelian,
    verify_fixtures,
    verify_lemma_commutation,
    verify_lemma_n2,
    verify_prop_images,
    verify_theorem_normalizer,
)

# --- Helpers --------------------------------------------------------------------


def _report(number, ok, detail):
    status = "PASS" if ok else "FAIL"
    print(f"{status}: criterion {number} - {detail}")
    assert ok, f"criterion {number}: {detail}"


# --- Criteria --------------------------------------------------------------------


def test_criterion_1_normalizer_sweep():
    """Abelian normalizers at levels 2..30 occur exactly at the known parities."""
    start = time.monotonic()
    result = verify_theorem_normalizer(n_max=30)
    elapsed = time.monotonic() - start
    ok = result.passed and elapsed < 60
    _report(
        1,
        ok,
        f"normalizer sweep n in [2,30], {result.cases_run} cases, "
        f"{elapsed:.1f}s ({result.first_failure or 'no exceptions'})",
    )


def test_criterion_2_level_two_parities():
    result = verify_lemma_n2()
    s3 = normalizer_group(CartanParams(1, 1, 1), 2)
    others = [
        normalizer_group(CartanParams(d, 1, f), 2)
        for d, f in [(0, 0), (1, 0), (0, 1)]
    ]
    ok = (
        result.passed
        and is_isomorphic_s3(s3)
        and all(g.order == 2 and is_abelian(g) for g in others)
    )
    _report(2, ok, "level-2 parity classes: S3 once, Z/2 three times")


def test_criterion_3_commutation_sweeps():
    lemma = verify_lemma_commutation(n_max=20)
    corollary = verify_corollary_nonabelian(n_max=20)
    ok = (
        lemma.passed
        and corollary.passed
        and lemma.cases_run > 10**5
        and corollary.cases_run > 10**5
    )
    _report(
        3,
        ok,
        f"commutation sweeps at n <= 20: {lemma.cases_run} + {corollary.cases_run} "
        "cases, zero counterexamples",
    )


def test_criterion_4_named_image_table():
    result = verify_prop_images()
    rows = expectation_table()
    lifts = [r for r in rows if r.image is not None and r.image.level == 8]
    primes = {r.image.p or r.image.level for r in rows if r.image is not None and r.image.label.startswith("P42")}
    ok = result.passed and len(lifts) == 48 and primes == {5, 7, 11, 13}
    _report(
        4,
        ok,
        f"named-image expectation table: {result.cases_run} rows exact, "
        "including all sixteen mod-8 reflection lifts",
    )


def test_criterion_5_fixture_curves():
    result = verify_fixtures()
    ok = result.passed and result.cases_run == 11
    _report(5, ok, "fixture curves E1-E11 reproduced exactly")


def test_criterion_6_oracle_agreement():
    start = time.monotonic()
    failures = []
    for make in (JZero, J1728):
        for coeff in range(-50, 51):
            if coeff == 0:
                continue
            curve = make(coeff)
            for ell in (2, 3):
                verdict = cyclotomic_consistency_test(curve, ell, p_max=500)
                if verdict.consistent != is_cyclotomic(curve, ell):
                    failures.append((curve, ell, "verdict"))
                if verdict.law_witness is not None:
                    failures.append((curve, ell, "law"))
    flagship_ok = (
        cyclotomic_consistency_test(JZero(16), 3).consistent
        and not cyclotomic_consistency_test(JZero(2), 3).consistent
    )
    elapsed = time.monotonic() - start
    ok = not failures and flagship_ok and elapsed < 60
    _report(
        6,
        ok,
        f"oracle agreement for |d|,|A| <= 50 at levels 2,3 with p <= 500, "
        f"{elapsed:.1f}s ({len(failures)} disagreements)",
    )


def test_criterion_7_property_suite():
    problems = []

    # closure idempotence
    for gens in (
        [Mat2(0, 1, 1, 0, 8), Mat2(3, 0, 0, 3, 8)],
        [Mat2(1, 1, 0, 1, 6)],
        [Mat2(2, 1, 1, 1, 5), Mat2(0, 4, 1, 0, 5)],
    ):
        once = group_closure(gens)
        if group_closure(list(once.sorted_elements())).elements != once.elements:
            problems.append("closure idempotence")

    # projection / closure commutation
    for n, d, gens in (
        (8, 4, [Mat2(1, 2, 0, 1, 8), Mat2(5, 0, 0, 5, 8)]),
        (9, 3, [Mat2(1, 1, 0, 1, 9)]),
        (12, 6, [Mat2(5, 0, 0, 7, 12), Mat2(1, 4, 0, 1, 12)]),
    ):
        after = project_group(group_closure(gens), d)
        first = group_closure([Mat2(*g.encode(), d) for g in gens])
        if after.elements != first.elements:
            problems.append(f"projection commutation mod {n}->{d}")

    # determinant multiplicativity, exhaustive n <= 8
    for n in range(2, 9):
        r = np.arange(n, dtype=np.int64)
        grids = np.meshgrid(r, r, r, r, indexing="ij")
        flat = [v.ravel() for v in grids]
        dets = (flat[0] * flat[3] - flat[1] * flat[2]) % n
        chunk = max(1, 2**20 // n**4)
        for startrow in range(0, n**4, chunk):
            sl = slice(startrow, startrow + chunk)
            x = [v[sl, None] for v in flat]
            y = [v[None, :] for v in flat]
            prod_det = (
                (x[0] * y[0] + x[1] * y[2]) * (x[2] * y[1] + x[3] * y[3])
                - (x[0] * y[1] + x[1] * y[3]) * (x[2] * y[0] + x[3] * y[2])
            ) % n
            if not (prod_det == (dets[sl, None] * dets[None, :]) % n).all():
                problems.append(f"det multiplicativity mod {n}")
                break

    # quartic-twist stability at level 4
    for coeff in [c for c in range(-30, 31) if c != 0]:
        base = classify(J1728(coeff), 4)
        for t in (2, 3):
            twisted = classify(J1728(coeff * t**4), 4)
            if (twisted.structure, twisted.cyclotomic) != (base.structure, base.cyclotomic):
                problems.append(f"quartic twist A={coeff} t={t}")
        if fourth_power_free(coeff * 16) != fourth_power_free(coeff):
            problems.append(f"fourth_power_free A={coeff}")

    # divisor monotonicity of abelianness
    curves = [JZero(16), JZero(2), JZero(-1), J1728(-1), J1728(9), J1728(2)]
    for curve in curves:
        for n in (2, 3, 4, 6, 12):
            if classify(curve, n).abelian:
                for m in range(2, n):
                    if n % m == 0 and not classify(curve, m).abelian:
                        problems.append(f"monotonicity {curve} {n}->{m}")

    ok = not problems
    _report(7, ok, f"property suites clean ({', '.join(problems) or 'zero exceptions'})")


def test_criterion_8_full_run_exits_zero():
    start = time.monotonic()
    proc = subprocess.run(
        [sys.executable, "-m", "cmfields", "verify", "--suite", "all"],
        capture_output=True,
        text=True,
        timeout=240,
    )
    elapsed = time.monotonic() - start
    ok = proc.returncode == 0 and elapsed < 120 and "FAIL" not in proc.stdout
    _report(8, ok, f"verify --suite all exit {proc.returncode} in {elapsed:.1f}s")
