"""Geometric types of the quadrics behind low-weight codewords of C_2(X).

A codeword of C_2(X) is the restriction to X of a whole coset g + K, where
K is the space of forms vanishing on X.  Every member of the coset cuts X
in the same point set, so a codeword is said to have a type when at least
one member of its coset has it.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from quadcodes.enumeration import messages_of_weight, message_digits
from quadcodes.funcodes import (
    FunctionalCode,
    canonical_code,
    expected_params,
    weight_distribution,
    weight_of,
)
from quadcodes.gf import FieldSpec
from quadcodes.intersections import factor_plane_pair
from quadcodes.quadrics import (
    LineClass,
    PlaneType,
    QuadraticForm,
    QuadricType,
    SurfaceContext,
    _two_colour_generators,
    surface_context,
)


class WordType(str, Enum):
    TANGENT_PAIR_BISECANT_AXIS = "TangentPlanePair_BisecantAxis"
    TANGENT_PAIR_GENERATOR_AXIS = "TangentPlanePair_GeneratorAxis"
    TANGENT_NONTANGENT_TANGENT_AXIS = "TangentNonTangentPair_TangentAxis"
    NONTANGENT_PAIR_SKEW_AXIS = "NonTangentPair_SkewAxis"
    GENERATOR_PAIR_POINT_AXIS = "GeneratorPairPlanes_PointAxis"
    GENERATOR_PAIR_GENERATOR_AXIS = "GeneratorPairPlanes_GeneratorAxis"
    TANGENT_AND_GENERATOR_PAIR_SPECIAL_AXIS = "TangentAndGeneratorPairPlanes_SpecialAxis"
    FOUR_LINES_TWO_PER_REGULUS = "QuadricWith4CommonLines_2per_regulus"
    TWO_GENERATORS_REGULUS_BISECANTS = "HyperbolicTwoGenerators_RegulusBisecants"
    CONE_ALL_BISECANTS = "ConeAllBisecants"
    HYPERBOLIC_REGULUS_ALL_BISECANTS = "HyperbolicRegulusAllBisecants"
    CONE_WITH_FOUR_LINES = "ConeWith4CommonLines"
    OTHER = "Other"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class GeometricType:
    label: WordType
    description: str = ""

    def __str__(self) -> str:
        if self.label is WordType.OTHER:
            return f"Other({self.description})"
        return self.label.value


# Type lists of the classification theorems, in the order they are stated.
THEOREM_TYPES: dict[tuple[QuadricType, str], tuple[WordType, ...]] = {
    (QuadricType.CONE, "w1"): (WordType.GENERATOR_PAIR_POINT_AXIS, WordType.CONE_WITH_FOUR_LINES),
    (QuadricType.CONE, "w2"): (
        WordType.GENERATOR_PAIR_GENERATOR_AXIS,
        WordType.TANGENT_AND_GENERATOR_PAIR_SPECIAL_AXIS,
    ),
    (QuadricType.HYPERBOLIC, "w1"): (
        WordType.TANGENT_PAIR_BISECANT_AXIS,
        WordType.FOUR_LINES_TWO_PER_REGULUS,
    ),
    (QuadricType.HYPERBOLIC, "w2"): (
        WordType.TANGENT_PAIR_GENERATOR_AXIS,
        WordType.TANGENT_NONTANGENT_TANGENT_AXIS,
        WordType.TWO_GENERATORS_REGULUS_BISECANTS,
    ),
    (QuadricType.ELLIPTIC, "w1"): (
        WordType.NONTANGENT_PAIR_SKEW_AXIS,
        WordType.CONE_ALL_BISECANTS,
        WordType.HYPERBOLIC_REGULUS_ALL_BISECANTS,
    ),
}

TIERS = ("w1", "w2")


def _other(text: str) -> GeometricType:
    return GeometricType(WordType.OTHER, text)


def _common_lines(x: SurfaceContext, gmask: np.ndarray) -> np.ndarray:
    """Generators of X lying on Z(g)."""
    sp = x.space
    gens = x.generators
    return gens[gmask[sp.lines[gens]].all(axis=1)]


def _plane_pair_type(x: SurfaceContext, g: QuadraticForm) -> GeometricType:
    h1, h2, li = factor_plane_pair(x.spec, g)
    pa, pb = sorted((x.plane_labels[h1], x.plane_labels[h2]))
    lc = x.line_labels[li]
    desc = f"PlanePair[{pa},{pb};{lc}]"
    T, N = PlaneType.TANGENT, PlaneType.NON_TANGENT
    if x.kind is QuadricType.HYPERBOLIC:
        if (pa, pb) == (T, T) and lc is LineClass.BISECANT:
            return GeometricType(WordType.TANGENT_PAIR_BISECANT_AXIS)
        if (pa, pb) == (T, T) and lc is LineClass.GENERATOR:
            return GeometricType(WordType.TANGENT_PAIR_GENERATOR_AXIS)
        if (pa, pb) == (N, T) and lc is LineClass.SIMPLE_TANGENT:
            return GeometricType(WordType.TANGENT_NONTANGENT_TANGENT_AXIS)
    elif x.kind is QuadricType.ELLIPTIC:
        if (pa, pb) == (N, N) and lc is LineClass.SKEW:
            return GeometricType(WordType.NONTANGENT_PAIR_SKEW_AXIS)
    elif x.kind is QuadricType.CONE:
        gp, tp = PlaneType.GENERATOR_PAIR, PlaneType.TANGENT_PLANE
        special = LineClass.EXTERNAL_VERTEX_TANGENT if x.q % 2 else LineClass.THROUGH_VERTEX_OTHER
        if (pa, pb) == (gp, gp) and x.line_counts[li] == 1:
            return GeometricType(WordType.GENERATOR_PAIR_POINT_AXIS)
        if (pa, pb) == (gp, gp) and lc is LineClass.GENERATOR:
            return GeometricType(WordType.GENERATOR_PAIR_GENERATOR_AXIS)
        if {pa, pb} == {gp, tp} and lc is special:
            return GeometricType(WordType.TANGENT_AND_GENERATOR_PAIR_SPECIAL_AXIS)
    return _other(desc)


def _hyperbolic_type(x: SurfaceContext, gx: SurfaceContext) -> GeometricType:
    sp = x.space
    common = _common_lines(x, gx.mask) if x.kind is not QuadricType.ELLIPTIC else np.zeros(0, dtype=int)
    if x.kind is QuadricType.HYPERBOLIC:
        reg = x.regulus_of_line
        per = [sum(1 for li in common if reg[int(li)] == r) for r in (0, 1)]
        if per == [2, 2]:
            return GeometricType(WordType.FOUR_LINES_TWO_PER_REGULUS)
        if per == [1, 1]:
            g_reg = _two_colour_generators(sp, gx.generators)
            for r in (0, 1):
                lines = [li for li, c in g_reg.items() if c == r]
                rest = [li for li in lines if li not in set(int(c) for c in common)]
                if len(rest) == x.q and all(x.line_counts[li] == 2 for li in rest):
                    return GeometricType(WordType.TWO_GENERATORS_REGULUS_BISECANTS)
        return _other(f"Hyperbolic[common={per[0]}+{per[1]}]")
    if x.kind is QuadricType.ELLIPTIC:
        g_reg = _two_colour_generators(sp, gx.generators)
        for r in (0, 1):
            lines = [li for li, c in g_reg.items() if c == r]
            if all(x.line_counts[li] == 2 for li in lines):
                return GeometricType(WordType.HYPERBOLIC_REGULUS_ALL_BISECANTS)
        return _other("Hyperbolic")
    return _other(f"Hyperbolic[common={len(common)}]")


def _cone_type(x: SurfaceContext, gx: SurfaceContext) -> GeometricType:
    if x.kind is QuadricType.ELLIPTIC:
        if not x.mask[gx.vertex] and all_bisecant(x, gx):
            return GeometricType(WordType.CONE_ALL_BISECANTS)
        return _other("Cone")
    common = _common_lines(x, gx.mask)
    if x.kind is QuadricType.CONE and len(common) == 4:
        return GeometricType(WordType.CONE_WITH_FOUR_LINES)
    return _other(f"Cone[common={len(common)}]")


def all_bisecant(x: SurfaceContext, gx: SurfaceContext) -> bool:
    """Every generator of the cone Z(g) meets X in exactly two points."""
    return len(gx.generators) == x.q + 1 and bool((x.line_counts[gx.generators] == 2).all())


def _in_kernel(x: SurfaceContext, g: QuadraticForm) -> bool:
    from quadcodes.quadrics import form_values

    vals = form_values(x.spec, np.array(g.coeffs))[0]
    return not vals[x.mask].any()


def word_type(spec: FieldSpec, X: QuadraticForm, g: QuadraticForm) -> GeometricType:
    """Geometric type of the quadric Z(g) relative to the surface X."""
    x = surface_context(spec, X)
    if g.is_zero() or _in_kernel(x, g):
        raise ValueError("form vanishes on X and gives the zero codeword")
    gx = SurfaceContext(spec, g)
    kind = gx.kind
    if kind is QuadricType.PLANE_PAIR:
        return _plane_pair_type(x, g)
    if kind is QuadricType.HYPERBOLIC:
        return _hyperbolic_type(x, gx)
    if kind is QuadricType.CONE:
        return _cone_type(x, gx)
    return _other(str(kind))


def four_common_lines(spec: FieldSpec, X: QuadraticForm, g: QuadraticForm) -> bool:
    """Z(g) contains exactly four lines of X, whatever the class of g."""
    x = surface_context(spec, X)
    gx = SurfaceContext(spec, g)
    return len(_common_lines(x, gx.mask)) == 4


# -- census -------------------------------------------------------------------

@dataclass
class WordCensus:
    surface: QuadricType
    q: int
    tier: str
    tier_weight: int
    total: int
    classes: int
    types: dict[str, int]
    coset_types: dict[str, int]
    unmatched: list[list[int]]
    expected_types: tuple[WordType, ...] | None
    readings: dict[str, int] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def census_only(self) -> bool:
        return self.expected_types is None

    @property
    def attained(self) -> set[str]:
        return {k for k, v in self.coset_types.items() if v}

    def passed(self) -> bool | None:
        if self.expected_types is None:
            return None
        return not self.unmatched and all(t.value in self.attained for t in self.expected_types)

    def to_dict(self) -> dict:
        return {
            "surface": str(self.surface),
            "q": self.q,
            "tier": self.tier,
            "tier_weight": self.tier_weight,
            "total": self.total,
            "scalar_classes": self.classes,
            "types": dict(sorted(self.types.items())),
            "coset_types": dict(sorted(self.coset_types.items())),
            "unmatched": self.unmatched,
            "expected_types": [t.value for t in self.expected_types] if self.expected_types else None,
            "census_only": self.census_only,
            "passed": self.passed(),
            "readings": self.readings,
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _coset(code: FunctionalCode, g: QuadraticForm) -> list[QuadraticForm]:
    spec = code.spec
    add, mul = spec.add_table, spec.mul_table
    base = np.array(g.coeffs, dtype=np.uint8)
    out = []
    for lam in itertools.product(range(spec.q), repeat=code.kernel_dim):
        acc = base.copy()
        for c, row in zip(lam, code.kernel_forms):
            if c:
                acc = add[acc, mul[c, row]]
        out.append(QuadraticForm(tuple(int(v) for v in acc)))
    return out


def tier_weight(code: FunctionalCode, tier: str, dist=None, workers: int = 1) -> int:
    if tier not in TIERS:
        raise ValueError(f"tier must be one of {TIERS}")
    dist = dist if dist is not None else weight_distribution(code, workers=workers)
    ws = dist.nonzero_weights()
    pos = TIERS.index(tier)
    if len(ws) <= pos:
        raise ValueError(f"tier {tier} absent from the weight distribution")
    return ws[pos]


def census(code: FunctionalCode, tier: str, workers: int = 1, dist=None) -> WordCensus:
    spec, q, k = code.spec, code.q, code.k
    label = code.surface_class.label
    w = tier_weight(code, tier, dist, workers)
    expected = THEOREM_TYPES.get((label, tier))
    order = expected or ()
    idx = messages_of_weight(spec, code.gen, w, workers=workers)
    types: dict[str, int] = {}
    coset_types: dict[str, int] = {}
    unmatched: list[list[int]] = []
    readings = {"cone_with_four_lines": 0, "any_quadric_with_four_lines": 0}
    classes = 0
    for index in idx:
        msg = message_digits(q, k, int(index))
        first = next(d for d in msg if d)
        if first != 1:
            continue
        classes += 1
        g0 = code.form_of_message(msg)
        found: dict[str, GeometricType] = {}
        four_any = False
        for g in _coset(code, g0):
            if weight_of(code, g) != w:
                raise AssertionError(f"form {g.coeffs} does not have weight {w}")
            t = word_type(spec, code.surface, g)
            found.setdefault(str(t), t)
            if label is QuadricType.CONE and not four_any:
                four_any = four_common_lines(spec, code.surface, g)
            if t.label is WordType.CONE_ALL_BISECANTS:
                _recheck_cone_all_bisecants(code, g)
        for name in found:
            coset_types[name] = coset_types.get(name, 0) + 1
        primary = next((t.value for t in order if t.value in found), None)
        if primary is None:
            unmatched.append(list(g0.coeffs))
            primary = min(found)
        types[primary] = types.get(primary, 0) + 1
        if label is QuadricType.CONE:
            readings["cone_with_four_lines"] += WordType.CONE_WITH_FOUR_LINES.value in found
            readings["any_quadric_with_four_lines"] += four_any
    notes = []
    if expected is None:
        notes.append("no type list for this surface and tier; census is descriptive")
    if label is not QuadricType.CONE:
        readings = {}
    return WordCensus(
        surface=label,
        q=q,
        tier=tier,
        tier_weight=w,
        total=classes * (q - 1),
        classes=classes,
        types=types,
        coset_types=coset_types,
        unmatched=unmatched,
        expected_types=expected,
        readings=readings,
        notes=notes,
    )


def _recheck_cone_all_bisecants(code: FunctionalCode, g: QuadraticForm) -> None:
    x = surface_context(code.spec, code.surface)
    gx = SurfaceContext(code.spec, g)
    if x.mask[gx.vertex]:
        raise AssertionError("cone vertex lies on X")
    if not all_bisecant(x, gx):
        raise AssertionError("a cone line is not bisecant to X")


@dataclass
class TheoremCheck:
    census: WordCensus
    weight_matches: bool | None

    @property
    def passed(self) -> bool | None:
        p = self.census.passed()
        if p is None:
            return None
        return p and self.weight_matches is not False


def theorem_check(
    spec: FieldSpec, surface: QuadricType | str, tier: str, workers: int = 1
) -> TheoremCheck:
    """Census of one tier compared with the classification theorem.

    The cone at q = 3 falls outside the theorem's parameters and is run as
    a census only.
    """
    label = QuadricType(surface)
    code = canonical_code(spec, label)
    c = census(code, tier, workers=workers)
    _, _, d, w2, _ = expected_params(label, spec.q)
    if label is QuadricType.CONE and spec.q < 4:
        c.expected_types = None
        c.notes.append("cone code at q=3 lies outside the theorem's parameters")
        return TheoremCheck(c, None)
    matches = c.tier_weight == (d if tier == "w1" else w2)
    return TheoremCheck(c, matches if c.expected_types is not None else None)
