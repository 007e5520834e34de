import json

import pytest

from quadcodes import gf
from quadcodes.intersections import (
    bound_suite,
    common_lines,
    find_four_line_cone_pair,
    intersection_count,
    spectrum,
)
from quadcodes.parse import parse_form
from quadcodes.quadrics import QuadraticForm, QuadricType, canonical_form, classify4


@pytest.mark.parametrize("q", [3, 4, 5])
def test_concurrent_four_lines(q):
    spec = gf.field_of_order(q)
    r = intersection_count(spec, parse_form("x0*x2+x1*x2+x2^2", spec), parse_form("x0*x1", spec))
    assert r.size == 4 * q + 1


@pytest.mark.parametrize("q", [3, 5])
def test_hyperbolic_pair_four_lines(q):
    spec = gf.field_of_order(q)
    f, g = parse_form("x0*x1+x2*x3", spec), parse_form("x3*x0+x1*x2", spec)
    assert len(common_lines(spec, f, g)) == 4
    assert intersection_count(spec, f, g).size == 4 * q


def test_identical_and_proportional(f3):
    f = canonical_form(f3, QuadricType.HYPERBOLIC)
    assert intersection_count(f3, f, f).size == 16
    with pytest.raises(ValueError):
        common_lines(f3, f, f.scaled(f3, 2))


def test_elliptic_pairs_share_no_line(f3):
    e = canonical_form(f3, QuadricType.ELLIPTIC)
    other = parse_form("x0*x1+x2^2+x2*x3+2*x3^2", f3)
    assert classify4(f3, other).label is QuadricType.ELLIPTIC
    assert common_lines(f3, e, other) == []


def test_spectrum_q3():
    spec = gf.make_field(3)
    ell = spectrum(spec, canonical_form(spec, QuadricType.ELLIPTIC))
    assert (ell.max1, ell.max2) == (8, 7) and ell.max3 <= 6 and ell.ok
    hyp = spectrum(spec, canonical_form(spec, QuadricType.HYPERBOLIC))
    assert hyp.max1 == 12 and hyp.ok
    cone = spectrum(spec, canonical_form(spec, QuadricType.CONE))
    assert cone.ok and cone.notes
    json.dumps(cone.to_dict())


def test_spectrum_sample_reproducible(f5):
    a = spectrum(f5, canonical_form(f5, QuadricType.ELLIPTIC), mode="sample", samples=3000, seed=7)
    b = spectrum(f5, canonical_form(f5, QuadricType.ELLIPTIC), mode="sample", samples=3000, seed=7)
    assert a.to_dict() == b.to_dict() and a.max1 <= 12


def test_spectrum_exhaustive_guard(f4):
    with pytest.raises(ValueError):
        spectrum(f4, canonical_form(f4, QuadricType.ELLIPTIC), mode="exhaustive")


def test_bound_suite_q3_ceilings():
    rep = bound_suite(gf.make_field(3))
    assert rep.bounds_ok
    for case in ("A", "B.hyperbolic", "B.elliptic", "C", "D.1", "D.2", "D.3", "E.2", "nondegenerate-4q", "Bezout"):
        assert rep.check(case).ok, case
    assert max(rep.check("E.2").attained) <= 8
    assert max(rep.check("nondegenerate-4q").attained) <= 12
    json.loads(rep.to_json())


def test_three_common_lines_occur(f3):
    # two cones through three common generators, tangent along one of them
    cone = canonical_form(f3, QuadricType.CONE)
    g = QuadraticForm((1, 0, 1, 0, 0, 1, 0, 2, 0, 0))
    assert classify4(f3, g).label is QuadricType.CONE
    r = intersection_count(f3, cone, g)
    assert len(r.common_lines) == 3 and r.size == 10 and r.shared_plane is None


def test_four_line_cone_partner():
    assert find_four_line_cone_pair(gf.make_field(3)) is None
    for q in (4, 5):
        spec = gf.field_of_order(q)
        g = find_four_line_cone_pair(spec)
        cone = canonical_form(spec, QuadricType.CONE)
        assert classify4(spec, g).label is QuadricType.CONE
        r = intersection_count(spec, cone, g)
        assert len(r.common_lines) == 4 and r.size == 4 * q + 1
