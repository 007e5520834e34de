import numpy as np
import pytest

from quadcodes import gf
from quadcodes.funcodes import (
    WeightDistribution,
    build_code,
    canonical_code,
    expected_params,
    weight_distribution,
    weight_hierarchy,
    weight_of,
)
from quadcodes.pgspace import gf_rank
from quadcodes.quadrics import QuadraticForm, QuadricType, canonical_form

HYP = QuadraticForm((0, 1, 0, 0, 0, 0, 0, 0, 1, 0))


def test_sizes(f3, f4):
    c = canonical_code(f4, QuadricType.ELLIPTIC)
    assert (c.n, c.k) == (17, 9)
    c = canonical_code(f3, QuadricType.HYPERBOLIC)
    assert (c.n, c.k) == (16, 9)


def test_cone_q3_rank(f3):
    c = canonical_code(f3, QuadricType.CONE)
    assert c.n == 13
    # rank oracle: independent of the tracked reduction
    assert gf_rank(f3, c.monomial_rows) == c.k == 8
    assert c.kernel_dim == 2


def test_rejects_degenerate(f3):
    with pytest.raises(ValueError):
        build_code(f3, QuadraticForm((0, 1) + (0,) * 8))


def test_generator_rows_are_form_evaluations(f4):
    c = canonical_code(f4, QuadricType.HYPERBOLIC)
    for row, coeffs in zip(c.gen, c.gen_forms):
        assert (c.evaluate(QuadraticForm(tuple(int(x) for x in coeffs))) == row).all()
    for coeffs in c.kernel_forms:
        assert not c.evaluate(QuadraticForm(tuple(int(x) for x in coeffs))).any()


def test_weight_of_examples(f3):
    c = build_code(f3, HYP)
    assert weight_of(c, HYP) == 0
    assert weight_of(c, QuadraticForm((0, 1) + (0,) * 8)) == 4


def test_full_weight_word(f3):
    from quadcodes.intersections import scalar_class_forms
    from quadcodes.quadrics import zero_mask

    c = canonical_code(f3, QuadricType.ELLIPTIC)
    xmask = zero_mask(f3, c.surface)
    for row in scalar_class_forms(f3):
        g = QuadraticForm(tuple(int(v) for v in row))
        if not (zero_mask(f3, g) & xmask).any():
            assert weight_of(c, g) == c.n
            return
    pytest.fail("no quadric disjoint from the elliptic quadric")


@pytest.mark.parametrize(
    "q,label,want",
    [(4, QuadricType.HYPERBOLIC, (9, 12, 13)), (5, QuadricType.ELLIPTIC, (14, 15, 16)), (5, QuadricType.CONE, (10, 15, 16))],
)
def test_hierarchy_examples(q, label, want):
    spec = gf.field_of_order(q)
    h = weight_hierarchy(weight_distribution(canonical_code(spec, label)))
    assert (h.w1, h.w2, h.w3) == want


def test_expected_params():
    assert expected_params(QuadricType.ELLIPTIC, 7) == (50, 9, 34, 35, 36)
    assert expected_params(QuadricType.HYPERBOLIC, 3) == (16, 9, 4, 6, 7)
    assert expected_params(QuadricType.CONE, 3)[2] == 0
    with pytest.raises(ValueError):
        expected_params(QuadricType.PLANE_PAIR, 3)


def test_distribution_csv_and_total(f3):
    d = weight_distribution(canonical_code(f3, QuadricType.HYPERBOLIC))
    assert d.total == 3 ** 9
    text = d.to_csv()
    assert text.splitlines()[0] == "weight,count"
    assert WeightDistribution.from_array(np.array([1, 0, 2])).counts == {0: 1, 2: 2}


def test_weight_distribution_projective_invariance(f3):
    from quadcodes.quadrics import random_invertible, transform_form

    rng = np.random.default_rng(11)
    base = weight_distribution(canonical_code(f3, QuadricType.ELLIPTIC))
    for _ in range(3):
        f = transform_form(f3, canonical_form(f3, QuadricType.ELLIPTIC), random_invertible(f3, rng))
        f = f.scaled(f3, int(rng.integers(1, 3)))
        assert weight_distribution(build_code(f3, f)) == base
