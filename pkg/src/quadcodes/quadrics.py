"""Quadratic forms, their zero sets, and the orbit classification of quadrics.

Orbits are recognised from point counts plus collinearity/coplanarity
tests rather than from the rank of a symmetric matrix, so the same code
path works in characteristic 2.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from quadcodes import gf
from quadcodes.gf import FieldSpec
from quadcodes.pgspace import Line, Plane, ProjPoint, space


@lru_cache(maxsize=None)
def monomial_pairs(nvars: int) -> tuple[tuple[int, int], ...]:
    """Index pairs (i, j), i <= j, in lexicographic order: x0^2, x0x1, ..."""
    return tuple((i, j) for i in range(nvars) for j in range(i, nvars))


MONOMIALS4 = monomial_pairs(4)
MONOMIALS3 = monomial_pairs(3)


class QuadricType(str, Enum):
    REPEATED_PLANE = "RepeatedPlane"
    PLANE_PAIR = "PlanePair"
    LINE = "LineRank2"
    CONE = "Cone"
    HYPERBOLIC = "Hyperbolic"
    ELLIPTIC = "Elliptic"
    # plane quadrics
    REPEATED_LINE = "RepeatedLine"
    LINE_PAIR = "LinePair"
    SINGLE_POINT = "SinglePoint"
    CONIC = "Conic"
    WHOLE_PLANE = "WholePlane"

    def __str__(self) -> str:
        return self.value


SURFACES = (
    QuadricType.REPEATED_PLANE,
    QuadricType.PLANE_PAIR,
    QuadricType.LINE,
    QuadricType.CONE,
    QuadricType.HYPERBOLIC,
    QuadricType.ELLIPTIC,
)
CODE_SURFACES = (QuadricType.CONE, QuadricType.HYPERBOLIC, QuadricType.ELLIPTIC)


def table_count(label: QuadricType, q: int) -> int:
    """Number of rational points of a quadric of the given type."""
    return {
        QuadricType.REPEATED_PLANE: q * q + q + 1,
        QuadricType.PLANE_PAIR: 2 * q * q + q + 1,
        QuadricType.LINE: q + 1,
        QuadricType.CONE: q * q + q + 1,
        QuadricType.HYPERBOLIC: (q + 1) ** 2,
        QuadricType.ELLIPTIC: q * q + 1,
        QuadricType.REPEATED_LINE: q + 1,
        QuadricType.LINE_PAIR: 2 * q + 1,
        QuadricType.SINGLE_POINT: 1,
        QuadricType.CONIC: q + 1,
        QuadricType.WHOLE_PLANE: q * q + q + 1,
    }[label]


class PlaneType(str, Enum):
    TANGENT = "Tangent"
    NON_TANGENT = "NonTangent"
    # cone
    TANGENT_PLANE = "TangentPlane"
    GENERATOR_PAIR = "GeneratorPair"
    VERTEX_ONLY = "VertexOnly"
    CONIC_SECTION = "ConicSection"

    def __str__(self) -> str:
        return self.value


class LineClass(str, Enum):
    GENERATOR = "Generator"
    SIMPLE_TANGENT = "SimpleTangent"
    EXTERNAL_VERTEX_TANGENT = "ExternalVertexTangent"
    INTERNAL_VERTEX_TANGENT = "InternalVertexTangent"
    NUCLEAR_LINE = "NuclearLine"
    THROUGH_VERTEX_OTHER = "ThroughVertexOther"
    BISECANT = "Bisecant"
    SKEW = "Skew"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class QuadraticForm:
    """Coefficients of a degree-2 form in the fixed monomial order.

    Ten coefficients for quaternary forms (x0^2, x0x1, x0x2, x0x3, x1^2,
    x1x2, x1x3, x2^2, x2x3, x3^2), six for ternary ones.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) not in (6, 10):
            raise ValueError(f"expected 6 or 10 coefficients, got {len(self.coeffs)}")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @property
    def nvars(self) -> int:
        return 4 if len(self.coeffs) == 10 else 3

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def scaled(self, spec: FieldSpec, lam: int) -> QuadraticForm:
        return QuadraticForm(tuple(int(spec.mul_table[lam, c]) for c in self.coeffs))

    def normalized(self, spec: FieldSpec) -> QuadraticForm:
        """Scalar multiple whose first nonzero coefficient is 1."""
        lead = next((c for c in self.coeffs if c), 0)
        if lead == 0:
            return self
        return self.scaled(spec, int(spec.inv_table[lead]))

    def to_expr(self, spec: FieldSpec) -> str:
        var = "x" if self.nvars == 4 else "u"
        pairs = monomial_pairs(self.nvars)
        terms = []
        for c, (i, j) in zip(self.coeffs, pairs):
            if not c:
                continue
            mono = f"{var}{i}^2" if i == j else f"{var}{i}*{var}{j}"
            if c == 1:
                terms.append(mono)
            elif spec.is_prime_field:
                terms.append(f"{c}*{mono}")
            else:
                terms.append(f"({spec.element_str(c)})*{mono}")
        return "+".join(terms) if terms else "0"


QuadraticForm4 = QuadraticForm
QuadraticForm3 = QuadraticForm


def add_forms(spec: FieldSpec, f: QuadraticForm, g: QuadraticForm) -> QuadraticForm:
    return QuadraticForm(tuple(int(spec.add_table[a, b]) for a, b in zip(f.coeffs, g.coeffs)))


def evaluate_vector(spec: FieldSpec, f: QuadraticForm, x: Sequence[int]) -> int:
    add, mul = spec.add_table, spec.mul_table
    acc = 0
    for c, (i, j) in zip(f.coeffs, monomial_pairs(f.nvars)):
        if c:
            acc = add[acc, mul[c, mul[x[i], x[j]]]]
    return int(acc)


def evaluate(spec: FieldSpec, f: QuadraticForm, x: ProjPoint) -> int:
    """Value of f at the W_i representative of ``x``."""
    if len(x.coords) != f.nvars:
        raise ValueError("point and form dimensions differ")
    return evaluate_vector(spec, f, x.coords)


def form_values(spec: FieldSpec, coeffs: np.ndarray, dim: int = 3) -> np.ndarray:
    """Values of many forms (S x 10 coefficient rows) at every point (S x N)."""
    sp = space(spec, dim)
    coeffs = np.atleast_2d(np.asarray(coeffs, dtype=np.uint8))
    return gf.matmul(spec, coeffs, sp.monomials.T)


def zero_mask(spec: FieldSpec, f: QuadraticForm) -> np.ndarray:
    return form_values(spec, np.array(f.coeffs), f.nvars - 1)[0] == 0


def _require_nonzero(f: QuadraticForm) -> None:
    if f.is_zero():
        raise ValueError("the zero form does not define a quadric")


def zero_set(spec: FieldSpec, f: QuadraticForm) -> list[ProjPoint]:
    _require_nonzero(f)
    sp = space(spec, f.nvars - 1)
    return [sp.point(i) for i in np.nonzero(zero_mask(spec, f))[0]]


@dataclass(frozen=True)
class QuadricClass:
    label: QuadricType
    point_count: int


def _line_containment(spec: FieldSpec, masks: np.ndarray, dim: int) -> np.ndarray:
    """For each mask row, whether some line has all of its points in it."""
    sp = space(spec, dim)
    out = np.zeros(len(masks), dtype=bool)
    for start in range(0, len(masks), 2048):
        chunk = masks[start:start + 2048]
        out[start:start + 2048] = chunk[:, sp.lines].all(axis=2).any(axis=1)
    return out


def classify_masks(spec: FieldSpec, masks: np.ndarray) -> np.ndarray:
    """Vectorised orbit labels for zero-set masks (S x N) of nonzero
    quaternary forms, returned as an object array of QuadricType."""
    q = spec.q
    sp = space(spec, 3)
    masks = np.atleast_2d(masks)
    counts = masks.sum(axis=1)
    out = np.empty(len(masks), dtype=object)
    by_count = {
        2 * q * q + q + 1: QuadricType.PLANE_PAIR,
        (q + 1) ** 2: QuadricType.HYPERBOLIC,
        q * q + 1: QuadricType.ELLIPTIC,
    }
    for n, label in by_count.items():
        out[counts == n] = label
    sel = np.nonzero(counts == q * q + q + 1)[0]
    if len(sel):
        in_plane = (masks[sel].astype(np.int32) @ sp.plane_mask.T.astype(np.int32)).max(axis=1) == q * q + q + 1
        out[sel[in_plane]] = QuadricType.REPEATED_PLANE
        out[sel[~in_plane]] = QuadricType.CONE
    sel = np.nonzero(counts == q + 1)[0]
    if len(sel):
        collinear = _line_containment(spec, masks[sel], 3)
        if not collinear.all():
            raise AssertionError("q+1 non-collinear zeros: not a quadric of PG(3,q)")
        out[sel] = QuadricType.LINE
    missing = np.array([o is None for o in out])
    if missing.any():
        bad = counts[missing][0]
        raise AssertionError(f"zero-set size {bad} matches no orbit of quadrics in PG(3,{q})")
    return out


def classify4(spec: FieldSpec, f: QuadraticForm) -> QuadricClass:
    _require_nonzero(f)
    if f.nvars != 4:
        raise ValueError("classify4 needs a quaternary form")
    mask = zero_mask(spec, f)
    return QuadricClass(classify_masks(spec, mask[None, :])[0], int(mask.sum()))


def classify3(spec: FieldSpec, g: QuadraticForm) -> QuadricClass:
    """Orbit of a plane quadric; the zero form is labelled WholePlane."""
    if g.nvars != 3:
        raise ValueError("classify3 needs a ternary form")
    q = spec.q
    if g.is_zero():
        return QuadricClass(QuadricType.WHOLE_PLANE, q * q + q + 1)
    mask = zero_mask(spec, g)
    n = int(mask.sum())
    if n == 1:
        label = QuadricType.SINGLE_POINT
    elif n == 2 * q + 1:
        label = QuadricType.LINE_PAIR
    elif n == q + 1:
        collinear = _line_containment(spec, mask[None, :], 2)[0]
        label = QuadricType.REPEATED_LINE if collinear else QuadricType.CONIC
    else:
        raise AssertionError(f"zero-set size {n} matches no orbit of conics in PG(2,{q})")
    return QuadricClass(label, n)


def singular_points(spec: FieldSpec, f: QuadraticForm) -> list[ProjPoint]:
    """Points of Z(f) through which no line meets Z(f) in exactly two points."""
    _require_nonzero(f)
    sp = space(spec, 3)
    mask = zero_mask(spec, f)
    line_counts = mask[sp.lines].sum(axis=1)
    secant_through = (line_counts[sp.point_lines] == 2).any(axis=1)
    return [sp.point(i) for i in np.nonzero(mask & ~secant_through)[0]]


def smallest_irreducible_constant(spec: FieldSpec) -> int:
    """Smallest c with u^2 + u + c irreducible over GF(q)."""
    add, mul = spec.add_table, spec.mul_table
    for c in range(spec.q):
        roots = [u for u in range(spec.q) if add[add[mul[u, u], u], c] == 0]
        if not roots:
            return c
    raise ArithmeticError("no irreducible u^2+u+c")


def _form_from_terms(terms: dict[tuple[int, int], int], nvars: int = 4) -> QuadraticForm:
    pairs = monomial_pairs(nvars)
    return QuadraticForm(tuple(terms.get(pr, 0) for pr in pairs))


def canonical_form(spec: FieldSpec, label: QuadricType | str) -> QuadraticForm:
    """Fixed representative of each orbit of quadrics in PG(3,q)."""
    label = QuadricType(label)
    c = smallest_irreducible_constant(spec)
    terms = {
        QuadricType.REPEATED_PLANE: {(0, 0): 1},
        QuadricType.PLANE_PAIR: {(0, 1): 1},
        QuadricType.LINE: {(0, 0): 1, (0, 1): 1, (1, 1): c},
        QuadricType.CONE: {(0, 1): 1, (2, 2): 1},
        QuadricType.HYPERBOLIC: {(0, 1): 1, (2, 3): 1},
        QuadricType.ELLIPTIC: {(2, 3): 1, (0, 0): 1, (0, 1): 1, (1, 1): c},
    }[label]
    return _form_from_terms(terms)


def transform_form(spec: FieldSpec, f: QuadraticForm, mat: np.ndarray) -> QuadraticForm:
    """The form x -> f(M x) for an invertible 4x4 matrix M over GF(q)."""
    add, mul = spec.add_table, spec.mul_table
    mat = np.asarray(mat, dtype=np.uint8)
    n = f.nvars
    pairs = monomial_pairs(n)
    index = {pr: k for k, pr in enumerate(pairs)}
    out = [0] * len(pairs)
    # (sum_a M[i,a] x_a)(sum_b M[j,b] x_b) expanded monomial by monomial
    for c, (i, j) in zip(f.coeffs, pairs):
        if not c:
            continue
        for a in range(n):
            for b in range(n):
                coef = mul[c, mul[mat[i, a], mat[j, b]]]
                if coef:
                    k = index[(min(a, b), max(a, b))]
                    out[k] = int(add[out[k], coef])
    return QuadraticForm(tuple(out))


def random_invertible(spec: FieldSpec, rng: np.random.Generator, n: int = 4) -> np.ndarray:
    from quadcodes.linalg import rref

    while True:
        m = rng.integers(0, spec.q, size=(n, n)).astype(np.uint8)
        if len(rref(spec, m)[1]) == n:
            return m


# -- geometry relative to a fixed surface ------------------------------------

class SurfaceContext:
    """Precomputed line and plane taxonomy of one surface X = Z(f).

    Holds the zero mask, per-line and per-plane section sizes and labels,
    and for cones the vertex, for hyperbolic quadrics the reguli.  Index
    conventions follow :class:`quadcodes.pgspace.ProjectiveSpace`.
    """

    def __init__(self, spec: FieldSpec, f: QuadraticForm) -> None:
        _require_nonzero(f)
        self.spec = spec
        self.form = f
        self.space = sp = space(spec, 3)
        self.q = spec.q
        self.mask = zero_mask(spec, f)
        self.mask.setflags(write=False)
        self.kind = classify_masks(spec, self.mask[None, :])[0]
        self.n = int(self.mask.sum())
        self.line_counts = self.mask[sp.lines].sum(axis=1)
        self.plane_counts = (sp.plane_mask & self.mask[None, :]).sum(axis=1)

    @cached_property
    def generators(self) -> np.ndarray:
        return np.nonzero(self.line_counts == self.q + 1)[0]

    @cached_property
    def vertex(self) -> int | None:
        if self.kind is not QuadricType.CONE:
            return None
        sp = self.space
        secant_through = (self.line_counts[sp.point_lines] == 2).any(axis=1)
        (sing,) = np.nonzero(self.mask & ~secant_through)
        if len(sing) != 1:
            raise AssertionError("a cone has exactly one singular point")
        return int(sing[0])

    @cached_property
    def plane_generator_counts(self) -> np.ndarray:
        out = np.zeros(self.space.n_points, dtype=np.int64)
        for li in self.generators:
            out[self.space.line_planes[li]] += 1
        return out

    @cached_property
    def plane_labels(self) -> np.ndarray:
        q, kind = self.q, self.kind
        cnt, gens = self.plane_counts, self.plane_generator_counts
        out = np.empty(len(cnt), dtype=object)
        if kind in (QuadricType.HYPERBOLIC, QuadricType.ELLIPTIC):
            degenerate = 2 * q + 1 if kind is QuadricType.HYPERBOLIC else 1
            out[:] = PlaneType.NON_TANGENT
            out[cnt == degenerate] = PlaneType.TANGENT
            if not np.isin(cnt, (degenerate, q + 1)).all():
                raise AssertionError("plane section of a non-degenerate quadric is not a conic or tangent section")
        elif kind is QuadricType.CONE:
            out[cnt == 1] = PlaneType.VERTEX_ONLY
            out[cnt == 2 * q + 1] = PlaneType.GENERATOR_PAIR
            sel = cnt == q + 1
            out[sel & (gens >= 1)] = PlaneType.TANGENT_PLANE
            out[sel & (gens == 0)] = PlaneType.CONIC_SECTION
            if any(o is None for o in out):
                raise AssertionError("unexpected plane section of a cone")
        else:
            raise ValueError(f"plane taxonomy is defined for cones and non-degenerate quadrics, not {kind}")
        return out

    @cached_property
    def tangent_planes(self) -> np.ndarray:
        labels = self.plane_labels
        return np.array([lab in (PlaneType.TANGENT, PlaneType.TANGENT_PLANE) for lab in labels])

    @cached_property
    def line_labels(self) -> np.ndarray:
        q, kind, sp = self.q, self.kind, self.space
        if kind not in CODE_SURFACES:
            raise ValueError(f"line taxonomy is defined for cones and non-degenerate quadrics, not {kind}")
        cnt = self.line_counts
        out = np.empty(len(cnt), dtype=object)
        out[cnt == q + 1] = LineClass.GENERATOR
        out[cnt == 2] = LineClass.BISECANT
        out[cnt == 0] = LineClass.SKEW
        out[cnt == 1] = LineClass.SIMPLE_TANGENT
        if kind is QuadricType.CONE:
            through_s = np.nonzero((sp.lines == self.vertex).any(axis=1) & (cnt == 1))[0]
            t = self.tangent_planes[sp.line_planes[through_s]].sum(axis=1)
            for li, tv in zip(through_s, t):
                if q % 2:
                    out[li] = LineClass.EXTERNAL_VERTEX_TANGENT if tv >= 1 else LineClass.INTERNAL_VERTEX_TANGENT
                else:
                    out[li] = LineClass.NUCLEAR_LINE if tv == q + 1 else LineClass.THROUGH_VERTEX_OTHER
        if any(o is None for o in out):
            raise AssertionError("line section of a quadric outside {0, 1, 2, q+1}")
        return out

    @cached_property
    def regulus_of_line(self) -> dict[int, int]:
        """Generator index -> 0 or 1 for the two reguli of a hyperbolic X."""
        if self.kind is not QuadricType.HYPERBOLIC:
            raise ValueError("reguli exist only on hyperbolic quadrics")
        return _two_colour_generators(self.space, self.generators)


def _lines_meet(sp, a: int, b: int) -> bool:
    return bool(np.intersect1d(sp.lines[a], sp.lines[b]).size)


def _two_colour_generators(sp, gens: np.ndarray) -> dict[int, int]:
    gens = list(int(g) for g in gens)
    if not gens:
        raise AssertionError("no generators to colour")
    order = sorted(gens, key=lambda li: sorted(tuple(sp.points[p]) for p in sp.lines[li])[:2])
    colour = {order[0]: 0}
    todo = deque([order[0]])
    while todo:
        a = todo.popleft()
        for b in gens:
            if b == a or not _lines_meet(sp, a, b):
                continue
            if b not in colour:
                colour[b] = 1 - colour[a]
                todo.append(b)
            elif colour[b] == colour[a]:
                raise AssertionError("generator intersection graph is not bipartite")
    if len(colour) != len(gens):
        raise AssertionError("generator intersection graph is disconnected")
    for a in gens:
        for b in gens:
            if a < b and _lines_meet(sp, a, b) != (colour[a] != colour[b]):
                raise AssertionError("generators do not split into two reguli")
    return colour


@lru_cache(maxsize=256)
def surface_context(spec: FieldSpec, f: QuadraticForm) -> SurfaceContext:
    return SurfaceContext(spec, f)


@dataclass(frozen=True)
class Regulus:
    lines: frozenset[Line]


def reguli(spec: FieldSpec, f: QuadraticForm) -> tuple[Regulus, Regulus]:
    ctx = surface_context(spec, f)
    if ctx.kind is not QuadricType.HYPERBOLIC:
        raise ValueError(f"reguli need a hyperbolic quadric, got {ctx.kind}")
    colour = ctx.regulus_of_line
    sides: tuple[list[Line], list[Line]] = ([], [])
    for li, c in colour.items():
        sides[c].append(ctx.space.line_value(li))
    return Regulus(frozenset(sides[0])), Regulus(frozenset(sides[1]))


def _context_for(spec: FieldSpec, f: QuadraticForm) -> SurfaceContext:
    ctx = surface_context(spec, f)
    if ctx.kind not in CODE_SURFACES:
        raise ValueError(f"unsupported surface class {ctx.kind}")
    return ctx


def plane_class(spec: FieldSpec, plane: Plane, f: QuadraticForm) -> PlaneType:
    """Position of a plane relative to a cone or non-degenerate quadric,
    decided from the orbit of the restricted ternary form."""
    from quadcodes.pgspace import restrict_form

    ctx = _context_for(spec, f)
    section = classify3(spec, restrict_form(spec, f, plane)).label
    if ctx.kind is QuadricType.CONE:
        return {
            QuadricType.REPEATED_LINE: PlaneType.TANGENT_PLANE,
            QuadricType.LINE_PAIR: PlaneType.GENERATOR_PAIR,
            QuadricType.SINGLE_POINT: PlaneType.VERTEX_ONLY,
            QuadricType.CONIC: PlaneType.CONIC_SECTION,
        }[section]
    return PlaneType.NON_TANGENT if section is QuadricType.CONIC else PlaneType.TANGENT


def line_class(spec: FieldSpec, line: Line, f: QuadraticForm) -> LineClass:
    ctx = _context_for(spec, f)
    return ctx.line_labels[ctx.space.line_index(line)]


def weil_ceiling(q: int) -> int:
    """Integer part of 1 + q + 2*sqrt(q)."""
    return 1 + q + math.isqrt(4 * q)
