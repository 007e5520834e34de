import itertools

import numpy as np
from hypothesis import given, settings, strategies as st

from quadcodes import gf
from quadcodes.pgspace import (
    ProjPoint,
    enumerate_lines,
    enumerate_planes,
    enumerate_points,
    line_through,
    normalize,
    plane_from_dual,
    restrict_form,
    space,
)
from quadcodes.quadrics import QuadraticForm, evaluate_vector


def test_normalize_examples(f5):
    assert normalize(f5, (0, 3, 1, 2)).coords == (0, 1, 2, 4)
    assert normalize(f5, (1, 0, 0, 0)).coords == (1, 0, 0, 0)
    assert normalize(f5, (0, 0, 0, 4)).coords == (0, 0, 0, 1)


def test_point_counts(f3, f4, f5):
    assert len(enumerate_points(3, f3)) == 40
    assert len(enumerate_points(2, f4)) == 21
    assert len(enumerate_points(3, f5)) == 156


def test_point_order_blocks(f3):
    w = [p.w_index for p in enumerate_points(3, f3)]
    assert w == sorted(w)


def test_line_through_example(f3, f5):
    line = line_through(f3, ProjPoint((1, 0, 0, 0)), ProjPoint((0, 1, 0, 0)))
    want = {(1, t, 0, 0) for t in range(3)} | {(0, 1, 0, 0)}
    assert {p.coords for p in line.points} == want
    assert len(line_through(f5, ProjPoint((1, 0, 0, 0)), ProjPoint((0, 0, 1, 0))).points) == 6


def brute_lines(spec):
    pts = [p.coords for p in enumerate_points(3, spec)]
    lines = set()
    for a, b in itertools.combinations(pts, 2):
        span = set()
        for s, t in itertools.product(range(spec.q), repeat=2):
            if s or t:
                v = [gf.add(spec, gf.mul(spec, s, x), gf.mul(spec, t, y)) for x, y in zip(a, b)]
                span.add(normalize(spec, v).coords)
        lines.add(frozenset(span))
    return lines


def test_line_counts_against_brute_force(f3, f4):
    for spec, want in ((f3, 130), (f4, 357)):
        got = {frozenset(p.coords for p in ln.points) for ln in enumerate_lines(spec)}
        assert len(got) == want
        assert got == brute_lines(spec)


def test_plane_counts(f3, f5):
    assert len(enumerate_planes(f3)) == 40
    assert len(enumerate_planes(f5)) == 156


def test_incidence(f4):
    sp = space(f4, 3)
    n = sp.n_points
    assert sp.lines.shape[1] == 5
    # every pair of distinct points is on exactly one line
    counts = np.zeros((n, n), dtype=int)
    for ln in sp.lines:
        for a, b in itertools.combinations(ln, 2):
            counts[a, b] += 1
            counts[b, a] += 1
    assert (counts[~np.eye(n, dtype=bool)] == 1).all()
    assert (sp.plane_mask.sum(axis=1) == 21).all()


def test_restrict_examples(f3):
    h = plane_from_dual(f3, (0, 0, 0, 1))
    g = restrict_form(f3, QuadraticForm((0, 1, 0, 0, 0, 0, 0, 0, 1, 0)), h, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)])
    assert g.coeffs == (0, 1, 0, 0, 0, 0)
    h0 = plane_from_dual(f3, (1, 0, 0, 0))
    assert restrict_form(f3, QuadraticForm((1,) + (0,) * 9), h0).is_zero()


@settings(max_examples=60, deadline=None)
@given(
    q=st.sampled_from([3, 4, 5]),
    data=st.data(),
)
def test_restrict_form_agrees_with_substitution(q, data):
    spec = gf.field_of_order(q)
    coeffs = tuple(data.draw(st.lists(st.integers(0, q - 1), min_size=10, max_size=10)))
    plane = enumerate_planes(spec)[data.draw(st.integers(0, space(spec, 3).n_points - 1))]
    f = QuadraticForm(coeffs)
    g = restrict_form(spec, f, plane)
    basis = [p.coords for p in plane.basis]
    u = data.draw(st.lists(st.integers(0, q - 1), min_size=3, max_size=3))
    x = [0, 0, 0, 0]
    for ui, e in zip(u, basis):
        x = [gf.add(spec, xi, gf.mul(spec, ui, ei)) for xi, ei in zip(x, e)]
    assert evaluate_vector(spec, g, u) == evaluate_vector(spec, f, x)
