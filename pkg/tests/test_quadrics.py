import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from quadcodes import gf
from quadcodes.pgspace import ProjPoint, line_through, plane_from_dual
from quadcodes.quadrics import (
    SURFACES,
    LineClass,
    PlaneType,
    QuadraticForm,
    QuadricType,
    canonical_form,
    classify3,
    classify4,
    evaluate,
    line_class,
    plane_class,
    random_invertible,
    reguli,
    singular_points,
    surface_context,
    table_count,
    transform_form,
    zero_set,
)

HYP = QuadraticForm((0, 1, 0, 0, 0, 0, 0, 0, 1, 0))
CONE = QuadraticForm((0, 1, 0, 0, 0, 0, 0, 1, 0, 0))


def form(**terms):
    order = ["x0x0", "x0x1", "x0x2", "x0x3", "x1x1", "x1x2", "x1x3", "x2x2", "x2x3", "x3x3"]
    return QuadraticForm(tuple(terms.get(k, 0) for k in order))


def table_i(label, q):
    return {
        QuadricType.REPEATED_PLANE: q * q + q + 1,
        QuadricType.PLANE_PAIR: 2 * q * q + q + 1,
        QuadricType.LINE: q + 1,
        QuadricType.CONE: q * q + q + 1,
        QuadricType.HYPERBOLIC: (q + 1) ** 2,
        QuadricType.ELLIPTIC: q * q + 1,
    }[label]


@pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9])
def test_canonical_forms_match_table(q):
    spec = gf.field_of_order(q)
    for label in SURFACES:
        cls = classify4(spec, canonical_form(spec, label))
        assert cls.label is label
        assert cls.point_count == table_i(label, q) == table_count(label, q)


def test_evaluate_examples(f5):
    assert evaluate(f5, HYP, ProjPoint((1, 1, 1, 4))) == 0
    assert evaluate(f5, form(x0x0=1), ProjPoint((0, 1, 0, 0))) == 0


def test_classify_examples(f3, f4):
    assert classify4(f3, HYP).point_count == 16
    assert classify4(f3, form(x0x0=1)).point_count == 13
    ell = form(x2x3=1, x0x0=1, x0x1=1, x1x1=2)
    assert classify4(f3, ell).label is QuadricType.ELLIPTIC and len(zero_set(f3, ell)) == 10
    assert classify4(f4, form(x0x0=1)).label is QuadricType.REPEATED_PLANE
    line = classify4(f3, form(x0x0=1, x0x1=1, x1x1=2))
    assert line.label is QuadricType.LINE and line.point_count == 4


def test_classify3_examples(f3):
    assert classify3(f3, QuadraticForm((0, 1, 0, 0, 0, 0))).label is QuadricType.LINE_PAIR
    assert classify3(f3, QuadraticForm((0, 1, 0, 0, 0, 0))).point_count == 7
    assert classify3(f3, QuadraticForm((1, 0, 0, 0, 0, 0))).label is QuadricType.REPEATED_LINE
    conic = QuadraticForm((0, 0, 1, 1, 0, 0))  # u0u2 + u1^2
    assert classify3(f3, conic).label is QuadricType.CONIC


def test_zero_form_rejected(f3):
    with pytest.raises(ValueError):
        classify4(f3, QuadraticForm((0,) * 10))


def test_singular_points(f3):
    assert [p.coords for p in singular_points(f3, CONE)] == [(0, 0, 0, 1)]
    assert singular_points(f3, HYP) == []
    sing = singular_points(f3, form(x0x1=1))
    assert len(sing) == 4 and all(p.coords[0] == p.coords[1] == 0 for p in sing)


def test_plane_and_line_classes(f3):
    assert plane_class(f3, plane_from_dual(f3, (0, 1, 0, 0)), HYP) is PlaneType.TANGENT
    assert plane_class(f3, plane_from_dual(f3, (0, 0, 1, 0)), CONE) is PlaneType.GENERATOR_PAIR
    l = line_through(f3, ProjPoint((1, 0, 0, 0)), ProjPoint((0, 1, 0, 0)))
    assert line_class(f3, l, HYP) is LineClass.BISECANT
    ctx = surface_context(f3, HYP)
    assert len(ctx.generators) == 8


def test_cone_vertex_lines_q3(f3):
    labels = list(surface_context(f3, CONE).line_labels)
    assert labels.count(LineClass.EXTERNAL_VERTEX_TANGENT) == 6
    assert labels.count(LineClass.INTERNAL_VERTEX_TANGENT) == 3
    assert labels.count(LineClass.GENERATOR) == 4


def test_cone_vertex_lines_q4(f4):
    labels = list(surface_context(f4, canonical_form(f4, QuadricType.CONE)).line_labels)
    assert labels.count(LineClass.NUCLEAR_LINE) == 1
    assert labels.count(LineClass.THROUGH_VERTEX_OTHER) == 21 - 5 - 1


@pytest.mark.parametrize("q", [3, 4, 5])
def test_reguli(q):
    spec = gf.field_of_order(q)
    r1, r2 = reguli(spec, HYP)
    assert len(r1.lines) == len(r2.lines) == q + 1
    pts = lambda ln: {p.coords for p in ln.points}
    for a in r1.lines:
        assert all(not (pts(a) & pts(b)) for b in r1.lines if b != a)
        assert all(len(pts(a) & pts(b)) == 1 for b in r2.lines)


@settings(max_examples=40, deadline=None)
@given(q=st.sampled_from([3, 4, 5]), seed=st.integers(0, 2**32 - 1), label=st.sampled_from(SURFACES))
def test_classification_projective_invariance(q, seed, label):
    spec = gf.field_of_order(q)
    rng = np.random.default_rng(seed)
    f = canonical_form(spec, label)
    g = transform_form(spec, f, random_invertible(spec, rng))
    lam = int(rng.integers(1, q))
    assert classify4(spec, g).label is label
    assert classify4(spec, g.scaled(spec, lam)).label is label
    assert g.scaled(spec, lam).normalized(spec) == g.normalized(spec)


@settings(max_examples=30, deadline=None)
@given(q=st.sampled_from([3, 5]), seed=st.integers(0, 2**32 - 1))
def test_transform_moves_zero_set(q, seed):
    spec = gf.field_of_order(q)
    rng = np.random.default_rng(seed)
    m = random_invertible(spec, rng)
    g = transform_form(spec, HYP, m)
    # g(x) = f(M x): so M maps Z(g) onto Z(f)
    for p in zero_set(spec, g):
        image = gf.matmul(spec, m, np.array(p.coords)[:, None])[:, 0]
        from quadcodes.quadrics import evaluate_vector

        assert evaluate_vector(spec, HYP, image) == 0
