"""The functional codes C_2(X) on quadric surfaces and their weights."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from quadcodes.enumeration import weight_counts
from quadcodes.gf import FieldSpec
from quadcodes.linalg import rref
from quadcodes.pgspace import ProjPoint, space
from quadcodes.quadrics import (
    CODE_SURFACES,
    QuadraticForm,
    QuadricClass,
    QuadricType,
    canonical_form,
    classify4,
    form_values,
    zero_mask,
)


@dataclass
class FunctionalCode:
    """C_2(X): evaluations of all quadratic forms at the points of X.

    ``gen`` is the reduced row-echelon generator matrix.  Row i of ``gen``
    is the evaluation of the form whose coefficients are ``gen_forms[i]``;
    ``kernel_forms`` spans the forms vanishing on all of X.
    """

    spec: FieldSpec
    surface: QuadraticForm
    surface_class: QuadricClass
    point_indices: np.ndarray
    monomial_rows: np.ndarray
    gen: np.ndarray
    gen_forms: np.ndarray
    kernel_forms: np.ndarray
    _points: list[ProjPoint] | None = field(default=None, repr=False)

    @property
    def q(self) -> int:
        return self.spec.q

    @property
    def n(self) -> int:
        return len(self.point_indices)

    @property
    def k(self) -> int:
        return self.gen.shape[0]

    @property
    def kernel_dim(self) -> int:
        return 10 - self.k

    @property
    def points(self) -> list[ProjPoint]:
        if self._points is None:
            sp = space(self.spec, 3)
            self._points = [sp.point(i) for i in self.point_indices]
        return self._points

    def form_of_message(self, message) -> QuadraticForm:
        """The form sum(m_i * gen_forms[i]) encoded by a message vector."""
        add, mul = self.spec.add_table, self.spec.mul_table
        acc = np.zeros(10, dtype=np.uint8)
        for m, row in zip(message, self.gen_forms):
            if m:
                acc = add[acc, mul[m, row]]
        return QuadraticForm(tuple(int(c) for c in acc))

    def evaluate(self, g: QuadraticForm) -> np.ndarray:
        return form_values(self.spec, np.array(g.coeffs))[0][self.point_indices]


def build_code(spec: FieldSpec, f: QuadraticForm) -> FunctionalCode:
    cls = classify4(spec, f)
    if cls.label not in CODE_SURFACES:
        raise ValueError(f"C_2(X) is built on cones and non-degenerate quadrics, not {cls.label}")
    sp = space(spec, 3)
    idx = np.nonzero(zero_mask(spec, f))[0]
    rows = np.ascontiguousarray(sp.monomials[idx].T)
    reduced, pivots, transform = rref(spec, rows, track=True)
    k = len(pivots)
    return FunctionalCode(
        spec=spec,
        surface=f,
        surface_class=cls,
        point_indices=idx,
        monomial_rows=rows,
        gen=reduced[:k].copy(),
        gen_forms=transform[:k].copy(),
        kernel_forms=transform[k:].copy(),
    )


def canonical_code(spec: FieldSpec, label: QuadricType | str) -> FunctionalCode:
    return build_code(spec, canonical_form(spec, label))


def weight_of(code: FunctionalCode, g: QuadraticForm) -> int:
    return int(np.count_nonzero(code.evaluate(g)))


@dataclass(frozen=True)
class WeightDistribution:
    n: int
    counts: dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def nonzero_weights(self) -> list[int]:
        return sorted(w for w, c in self.counts.items() if w and c)

    def to_csv(self) -> str:
        lines = ["weight,count"] + [f"{w},{c}" for w, c in sorted(self.counts.items())]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_array(cls, arr: np.ndarray) -> WeightDistribution:
        return cls(len(arr) - 1, {int(w): int(c) for w, c in enumerate(arr) if c})


def weight_distribution(code: FunctionalCode, workers: int = 1, force: bool = False) -> WeightDistribution:
    arr = weight_counts(code.spec, code.gen, workers=workers, force=force)
    return WeightDistribution.from_array(arr)


@dataclass(frozen=True)
class WeightHierarchy:
    w1: int
    w2: int
    w3: int

    @property
    def d(self) -> int:
        return self.w1


def weight_hierarchy(dist: WeightDistribution) -> WeightHierarchy:
    ws = dist.nonzero_weights()
    if len(ws) < 3:
        raise ValueError(f"need three distinct nonzero weights, found {ws}")
    return WeightHierarchy(*ws[:3])


def expected_params(label: QuadricType | str, q: int) -> tuple[int, int, int, int, int]:
    """(n, k, d, w2, w3) as stated in the closed-form theorems."""
    label = QuadricType(label)
    if label is QuadricType.CONE:
        return (q * q + q + 1, 9, q * (q - 3), q * (q - 2), (q - 1) ** 2)
    if label is QuadricType.HYPERBOLIC:
        return ((q + 1) ** 2, 9, (q - 1) ** 2, q * (q - 1), q * q - q + 1)
    if label is QuadricType.ELLIPTIC:
        return (q * q + 1, 9, q * q - 2 * q - 1, q * (q - 2), (q - 1) ** 2)
    raise ValueError(f"no code parameters for {label}")
