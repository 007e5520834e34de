"""Acceptance criteria 1-10.

Each test prints one ``[PASS]`` or ``[FAIL]`` line; the lines are repeated
in the pytest terminal summary.  Run ``python3 tests/test_acceptance.py``
for the lines alone.
"""

from __future__ import annotations

import sys
import time
from pathlib import Path

import numpy as np

from quadcodes import gf
from quadcodes.funcodes import (
    build_code,
    canonical_code,
    expected_params,
    weight_distribution,
    weight_hierarchy,
)
from quadcodes.intersections import bound_suite, common_lines, intersection_count, spectrum
from quadcodes.parse import parse_form
from quadcodes.quadrics import (
    SURFACES,
    QuadricType,
    canonical_form,
    classify4,
    random_invertible,
    transform_form,
)
from quadcodes.wordgeom import theorem_check

sys.path.insert(0, str(Path(__file__).parent))
from conftest import ACCEPTANCE_LINES  # noqa: E402

HYP, ELL, CONE = QuadricType.HYPERBOLIC, QuadricType.ELLIPTIC, QuadricType.CONE


def record(num: int, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num:2d}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def params(q: int, label: QuadricType, workers: int = 1):
    code = canonical_code(gf.field_of_order(q), label)
    dist = weight_distribution(code, workers=workers)
    h = weight_hierarchy(dist)
    return (code.n, code.k, h.w1, h.w2, h.w3), dist


def table_i(label: QuadricType, q: int) -> int:
    return {
        QuadricType.REPEATED_PLANE: q * q + q + 1,
        QuadricType.PLANE_PAIR: 2 * q * q + q + 1,
        QuadricType.LINE: q + 1,
        CONE: q * q + q + 1,
        HYP: (q + 1) ** 2,
        ELL: q * q + 1,
    }[label]


def test_criterion_01_table_counts():
    t0 = time.perf_counter()
    bad = []
    checked = 0
    for q in (3, 4, 5, 7):
        spec = gf.field_of_order(q)
        for label in SURFACES:
            cls = classify4(spec, canonical_form(spec, label))
            checked += 1
            if cls.label is not label or cls.point_count != table_i(label, q):
                bad.append((q, str(label), cls.point_count))
    dt = time.perf_counter() - t0
    record(1, not bad and checked == 24 and dt < 5, f"{checked} Table I counts, mismatches {bad}, {dt:.2f}s")


def test_criterion_02_hyperbolic_code():
    t0 = time.perf_counter()
    got = {q: params(q, HYP)[0] for q in (3, 4, 5)}
    dt = time.perf_counter() - t0
    ok = all(got[q] == expected_params(HYP, q) for q in got) and dt < 60
    record(2, ok, f"hyperbolic (n,k,d,w2,w3) {got}, {dt:.1f}s")


def test_criterion_03_elliptic_code():
    t0 = time.perf_counter()
    got = {q: params(q, ELL)[0] for q in (3, 4, 5)}
    dt = time.perf_counter() - t0
    want = {3: (10, 9, 2, 3, 4), 4: (17, 9, 7, 8, 9), 5: (26, 9, 14, 15, 16)}
    ok = got == want and all(got[q] == expected_params(ELL, q) for q in got) and dt < 60
    record(3, ok, f"elliptic (n,k,d,w2,w3) {got}, {dt:.1f}s")


def test_criterion_04_cone_code():
    got = {q: params(q, CONE)[0] for q in (4, 5)}
    ok = all(got[q] == expected_params(CONE, q) for q in got)
    c3 = canonical_code(gf.make_field(3), CONE)
    ok = ok and c3.n == 13 and c3.k == 8
    record(4, ok, f"cone {got}; q=3 measured k={c3.k} (theorem states 9, documented deviation)")


def test_criterion_05_exhaustive_spectrum():
    t0 = time.perf_counter()
    spec = gf.make_field(3)
    certs = {lab: spectrum(spec, canonical_form(spec, lab), mode="exhaustive") for lab in (HYP, ELL, CONE)}
    dt = time.perf_counter() - t0
    h, e, c = certs[HYP], certs[ELL], certs[CONE]
    ok = (
        all(x.ok for x in certs.values())
        and (h.max1, h.max2) == (12, 10)
        and h.max3 <= 9
        and (e.max1, e.max2) == (8, 7)
        and e.max3 <= 6
        and dt < 120
    )
    detail = (
        f"hyperbolic max {h.max1},{h.max2},{h.max3}; elliptic max {e.max1},{e.max2},{e.max3}; "
        f"cone max {c.max1},{c.max2} ({'; '.join(c.notes)}); {dt:.1f}s"
    )
    record(5, ok, detail)


def test_criterion_06_bound_suite():
    reports = [bound_suite(gf.make_field(3))]
    reports += [bound_suite(gf.field_of_order(q), mode="sample", seed=0) for q in (4, 5)]
    structural = {
        r.q: {c.case: c.violation_count.get("structure", 0) for c in r.checks if c.violation_count.get("structure")}
        for r in reports
    }
    ceilings = all(r.bounds_ok for r in reports)
    ok = all(r.ok for r in reports)
    detail = (
        f"numeric ceilings {'hold' if ceilings else 'VIOLATED'} at q=3,4,5; "
        f"structural violations (three common lines, size 3q+1) {structural}"
    )
    record(6, ok, detail)


def test_criterion_07_witness_pairs():
    sizes, lines = {}, {}
    for q in (3, 4, 5):
        spec = gf.field_of_order(q)
        # (x0 + x1) x2 + x2^2 expanded
        f1 = parse_form("x0*x2+x1*x2+x2^2", spec)
        r = intersection_count(spec, f1, parse_form("x0*x1", spec))
        sizes[q] = r.size
    for q in (3, 5):
        spec = gf.field_of_order(q)
        f, g = parse_form("x0*x1+x2*x3", spec), parse_form("x3*x0+x1*x2", spec)
        lines[q] = (len(common_lines(spec, f, g)), intersection_count(spec, f, g).size)
    ok = all(sizes[q] == 4 * q + 1 for q in sizes) and all(lines[q] == (4, 4 * q) for q in lines)
    record(7, ok, f"concurrent-line pair sizes {sizes}; hyperbolic pair (lines, size) {lines}")


def test_criterion_08_word_census():
    t0 = time.perf_counter()
    runs = [(q, HYP, "w1") for q in (3, 4, 5)] + [(q, ELL, "w1") for q in (3, 4, 5)]
    runs += [(q, HYP, "w2") for q in (3, 4, 5)] + [(q, CONE, "w2") for q in (4, 5)]
    failed = []
    for q, lab, tier in runs:
        res = theorem_check(gf.field_of_order(q), lab, tier)
        if not res.passed:
            c = res.census
            missing = [t.value for t in c.expected_types if t.value not in c.attained]
            failed.append(f"{lab} q={q} {tier}: unmatched {len(c.unmatched)}, not attained {missing}")
    census_only = [theorem_check(gf.field_of_order(q), ELL, "w2") for q in (3, 4, 5)]
    emitted = all(r.passed is None and r.census.classes > 0 for r in census_only)
    dt = time.perf_counter() - t0
    ok = not failed and emitted and dt < 300
    record(8, ok, f"{len(runs) - len(failed)}/{len(runs)} theorem censuses pass; failures {failed}; elliptic w2 emitted; {dt:.0f}s")


def test_criterion_09_determinism():
    same = []
    for q in (3, 4, 5):
        for lab in (HYP, ELL):
            code = canonical_code(gf.field_of_order(q), lab)
            same.append(weight_distribution(code, workers=4) == weight_distribution(code, workers=1))
    t0 = time.perf_counter()
    p7, _ = params(7, ELL)
    dt = time.perf_counter() - t0
    ok = all(same) and p7[:3] == (50, 9, 34) and dt < 600
    record(9, ok, f"4 vs 1 workers identical on {sum(same)}/{len(same)} codes; q=7 elliptic {p7} in {dt:.1f}s")


def test_criterion_10_properties():
    problems = []
    # field axioms, exhaustive
    for q in (3, 4, 5, 7, 8, 9):
        f = gf.field_of_order(q)
        add, mul = f.add_table.astype(int), f.mul_table.astype(int)
        e = np.arange(q)
        a, b, c = np.meshgrid(e, e, e, indexing="ij")
        if not (
            (add[add[a, b], c] == add[a, add[b, c]]).all()
            and (mul[mul[a, b], c] == mul[a, mul[b, c]]).all()
            and (mul[a, add[b, c]] == add[mul[a, b], mul[a, c]]).all()
            and (add == add.T).all()
            and (mul == mul.T).all()
            and all(mul[x, f.inv_table[x]] == 1 for x in e[1:])
            and all(add[x, f.neg_table[x]] == 0 for x in e)
        ):
            problems.append(f"field axioms GF({q})")
    # scalar and projective invariance, sampled
    rng = np.random.default_rng(2024)
    for q in (3, 4, 5):
        spec = gf.field_of_order(q)
        for lab in SURFACES:
            for _ in range(4):
                g = transform_form(spec, canonical_form(spec, lab), random_invertible(spec, rng))
                g = g.scaled(spec, int(rng.integers(1, q)))
                if classify4(spec, g).label is not lab:
                    problems.append(f"classification {lab} q={q}")
    for q in (3, 4):
        spec = gf.field_of_order(q)
        for lab in (HYP, ELL, CONE):
            base = weight_distribution(canonical_code(spec, lab))
            g = transform_form(spec, canonical_form(spec, lab), random_invertible(spec, rng))
            if weight_distribution(build_code(spec, g.scaled(spec, int(rng.integers(1, q))))) != base:
                problems.append(f"distribution {lab} q={q}")
    # spectrum and weights determine each other at q=3
    spec = gf.make_field(3)
    for lab in (HYP, ELL, CONE):
        code = canonical_code(spec, lab)
        cert = spectrum(spec, code, mode="exhaustive")
        weights = weight_distribution(code).nonzero_weights()
        if sorted(code.n - s for s in cert.attained) != weights:
            problems.append(f"duality {lab}")
    record(10, not problems, f"field axioms q<=9, invariance and spectrum-weight duality; problems {problems}")


if __name__ == "__main__":
    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failures += 1
    sys.exit(1 if failures else 0)
