"""Intersections of pairs of quadrics in PG(3,q) and certificates for the
bounds on their sizes.

Every check compares a fixed canonical surface X against a pool of forms
g.  Because each surface class is a single projective orbit, pairing the
canonical X with every g is exhaustive over pairs up to projectivity.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Iterable

import numpy as np

from quadcodes import gf
from quadcodes.enumeration import span_table, weight_counts
from quadcodes.funcodes import FunctionalCode, build_code
from quadcodes.gf import FieldSpec
from quadcodes.linalg import rref
from quadcodes.pgspace import Line, Plane, space
from quadcodes.quadrics import (
    CODE_SURFACES,
    SURFACES,
    LineClass,
    PlaneType,
    QuadraticForm,
    QuadricType,
    SurfaceContext,
    canonical_form,
    classify4,
    classify_masks,
    form_values,
    random_invertible,
    surface_context,
    transform_form,
    weil_ceiling,
    zero_mask,
)

EXHAUSTIVE_LIMIT = 10 ** 8


def _coeff_list(f: QuadraticForm | np.ndarray | Iterable[int]) -> list[int]:
    if isinstance(f, QuadraticForm):
        return list(f.coeffs)
    return [int(c) for c in f]


def proportional(spec: FieldSpec, f: QuadraticForm, g: QuadraticForm) -> bool:
    return f.normalized(spec) == g.normalized(spec)


# -- single pairs -------------------------------------------------------------

@dataclass
class IntersectionReport:
    f: QuadraticForm
    g: QuadraticForm
    size: int
    common_lines: list[Line]
    shared_plane: Plane | None
    case_label: str

    def to_dict(self) -> dict:
        return {
            "f": list(self.f.coeffs),
            "g": list(self.g.coeffs),
            "size": self.size,
            "common_lines": [[str(p) for p in line.points] for line in self.common_lines],
            "shared_plane": str(self.shared_plane.dual) if self.shared_plane else None,
            "case": self.case_label,
        }


def contained_planes(spec: FieldSpec, mask: np.ndarray) -> np.ndarray:
    """Indices of planes all of whose points lie in ``mask``."""
    pm = space(spec, 3).plane_mask
    return np.nonzero((pm & ~mask[None, :]).sum(axis=1) == 0)[0]


def factor_plane_pair(spec: FieldSpec, g: QuadraticForm) -> tuple[int, int, int]:
    """Planes H1, H2 with Z(g) = H1 u H2 and the index of their common line."""
    planes = contained_planes(spec, zero_mask(spec, g))
    if len(planes) != 2:
        raise ValueError("form is not a product of two distinct planes")
    return int(planes[0]), int(planes[1]), axis_line(spec, int(planes[0]), int(planes[1]))


def axis_line(spec: FieldSpec, h1: int, h2: int) -> int:
    sp = space(spec, 3)
    both = np.nonzero(sp.plane_mask[h1] & sp.plane_mask[h2])[0]
    return int(sp.pair_line[both[0], both[1]])


def case_label(spec: FieldSpec, f: QuadraticForm, g: QuadraticForm) -> str:
    cf = classify4(spec, f).label
    cg = classify4(spec, g).label
    label = f"{cf}|{cg}"
    if cf in CODE_SURFACES and cg is QuadricType.PLANE_PAIR:
        surface, pair = f, g
    elif cg in CODE_SURFACES and cf is QuadricType.PLANE_PAIR:
        surface, pair = g, f
    else:
        return label
    ctx = surface_context(spec, surface)
    h1, h2, li = factor_plane_pair(spec, pair)
    kinds = sorted(str(ctx.plane_labels[h]) for h in (h1, h2))
    return label + f"[{kinds[0]},{kinds[1]};{ctx.line_labels[li]}]"


def common_lines(spec: FieldSpec, f: QuadraticForm, g: QuadraticForm) -> list[Line]:
    """Lines contained in both zero sets.

    With no shared plane there are at most four; a shared plane is reported
    by :func:`intersection_count` and the count is then not bounded.
    """
    if f.is_zero() or g.is_zero():
        raise ValueError("the zero form does not define a quadric")
    if proportional(spec, f, g):
        raise ValueError("identical quadrics share every line of the surface")
    sp = space(spec, 3)
    inter = zero_mask(spec, f) & zero_mask(spec, g)
    idx = np.nonzero(inter[sp.lines].all(axis=1))[0]
    if len(contained_planes(spec, inter)) == 0 and len(idx) > 4:
        raise AssertionError(f"{len(idx)} common lines without a common plane")
    return [sp.line_value(li) for li in idx]


def intersection_count(spec: FieldSpec, f: QuadraticForm, g: QuadraticForm) -> IntersectionReport:
    if f.is_zero() or g.is_zero():
        raise ValueError("the zero form does not define a quadric")
    sp = space(spec, 3)
    inter = zero_mask(spec, f) & zero_mask(spec, g)
    planes = contained_planes(spec, inter)
    lines = np.nonzero(inter[sp.lines].all(axis=1))[0]
    return IntersectionReport(
        f=f,
        g=g,
        size=int(inter.sum()),
        common_lines=[sp.line_value(li) for li in lines],
        shared_plane=sp.plane_value(int(planes[0])) if len(planes) else None,
        case_label=case_label(spec, f, g),
    )


# -- spectra of codes ---------------------------------------------------------

def _class_pattern(label: QuadricType, q: int) -> tuple[int, int, int]:
    """(largest, second, ceiling of the rest) for intersection sizes."""
    if label is QuadricType.CONE:
        return 4 * q + 1, 3 * q + 1, 3 * q
    if label is QuadricType.HYPERBOLIC:
        return 4 * q, 3 * q + 1, 3 * q
    if label is QuadricType.ELLIPTIC:
        return 2 * (q + 1), 2 * q + 1, 2 * q
    raise ValueError(f"no intersection pattern for {label}")


@dataclass
class SpectrumCertificate:
    surface: str
    q: int
    mode: str
    attained: list[int]
    counts: dict[int, int]
    pattern: tuple[int, int, int]
    seed: int | None = None
    samples: int | None = None
    witnesses: dict[int, list[int]] = field(default_factory=dict)
    violations: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def max1(self) -> int | None:
        return self.attained[-1] if self.attained else None

    @property
    def max2(self) -> int | None:
        return self.attained[-2] if len(self.attained) > 1 else None

    @property
    def max3(self) -> int | None:
        return self.attained[-3] if len(self.attained) > 2 else None

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        top, second, rest = self.pattern
        out = {
            "case": f"spectrum:{self.surface}",
            "q": self.q,
            "mode": self.mode,
            "attained": self.attained,
            "counts": {str(k): v for k, v in sorted(self.counts.items())},
            "max": [self.max1, self.max2, self.max3],
            "ceiling": {"largest": top, "second": second, "rest": rest},
            "witnesses": [{"size": s, "form": w} for s, w in sorted(self.witnesses.items())],
            "violations": self.violations,
            "notes": self.notes,
            "ok": self.ok,
        }
        if self.seed is not None:
            out["seed"] = self.seed
            out["samples"] = self.samples
        return out


def _all_form_weights(code: FunctionalCode) -> np.ndarray:
    """Weight of the codeword of every form, indexed like the odometer over
    the ten monomials (x0^2 most significant)."""
    spec = code.spec
    rows = code.monomial_rows
    j = 6 if spec.q ** 10 > 10 ** 6 else 10
    inner = span_table(spec, rows[10 - j:])
    outer = span_table(spec, rows[: 10 - j])
    n = code.n
    out = np.empty(spec.q ** 10, dtype=np.int16)
    step = len(inner)
    for i, v in enumerate(outer):
        out[i * step:(i + 1) * step] = n - (inner == spec.neg_table[v][None, :]).sum(axis=1)
    return out


def _index_to_coeffs(q: int, index: int) -> list[int]:
    return [(index // q ** (9 - i)) % q for i in range(10)]


def spectrum(
    spec: FieldSpec,
    surface: QuadraticForm | FunctionalCode,
    mode: str = "exhaustive",
    samples: int = 100_000,
    seed: int = 0,
    force: bool = False,
) -> SpectrumCertificate:
    """Intersection sizes |X n Z(g)| over forms g outside the kernel of C_2(X)."""
    code = surface if isinstance(surface, FunctionalCode) else build_code(spec, surface)
    q, n = spec.q, code.n
    label = code.surface_class.label
    pattern = _class_pattern(label, q)
    witnesses: dict[int, list[int]] = {}
    if mode == "exhaustive":
        if q > 3 and not force:
            raise ValueError("exhaustive spectrum is limited to q = 3 without force")
        if q ** 10 > EXHAUSTIVE_LIMIT and not force:
            raise ValueError(f"{q}^10 forms exceed the exhaustive limit")
        weights = _all_form_weights(code)
        hist = np.bincount(weights, minlength=n + 1)
        counts = {n - w: int(c) for w, c in enumerate(hist) if w and c}
        for size in counts:
            witnesses[size] = _index_to_coeffs(q, int(np.argmax(weights == n - size)))
        seed_used = None
        samples_used = None
    elif mode == "sample":
        rng = np.random.default_rng(seed)
        counts = {}
        left = samples
        while left > 0:
            batch = rng.integers(0, q, size=(min(left, 20_000), 10)).astype(np.uint8)
            left -= len(batch)
            vals = gf.matmul(spec, batch, code.monomial_rows)
            sizes = (vals == 0).sum(axis=1)
            keep = sizes < n
            for s in np.unique(sizes[keep]):
                s = int(s)
                counts[s] = counts.get(s, 0) + int((sizes[keep] == s).sum())
                if s not in witnesses:
                    witnesses[s] = [int(c) for c in batch[keep][np.argmax(sizes[keep] == s)]]
        seed_used, samples_used = seed, samples
    else:
        raise ValueError(f"unknown mode {mode!r}")

    attained = sorted(counts)
    top, second, rest = pattern
    violations = []
    for s in attained:
        if s > top or (s not in (top, second) and s > rest):
            violations.append({"size": s, "form": witnesses[s], "reason": "size outside the allowed pattern"})
    notes = []
    if mode == "exhaustive":
        for want in (top, second):
            if want in counts:
                continue
            if label is QuadricType.CONE and want == n:
                notes.append(
                    f"{want} = n is reached only by kernel forms: the cone is the union of its "
                    f"{q + 1} generators and extra forms vanish on it (k = {code.k})"
                )
            else:
                violations.append({"size": want, "form": None, "reason": "pattern value not attained"})
    return SpectrumCertificate(
        surface=str(label),
        q=q,
        mode=mode,
        attained=attained,
        counts=counts,
        pattern=pattern,
        seed=seed_used,
        samples=samples_used,
        witnesses=witnesses,
        violations=violations,
        notes=notes,
    )


# -- the bound suite ------------------------------------------------------------

@dataclass
class BoundCheck:
    case: str
    description: str
    checked: int = 0
    attained: set[int] = field(default_factory=set)
    violations: list[dict] = field(default_factory=list)
    ceiling: str = ""
    details: dict = field(default_factory=dict)
    violation_count: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violation_count

    def violate(
        self,
        f: QuadraticForm | np.ndarray,
        g: QuadraticForm | np.ndarray,
        size: int,
        reason: str,
        kind: str = "bound",
    ) -> None:
        """Record a witness pair.  ``kind`` is ``bound`` when a size ceiling
        or exact value fails and ``structure`` when a configuration claimed
        impossible occurs."""
        self.violation_count[kind] = self.violation_count.get(kind, 0) + 1
        if len(self.violations) < 20:
            self.violations.append(
                {"f": _coeff_list(f), "g": _coeff_list(g), "size": int(size), "reason": reason, "kind": kind}
            )

    @property
    def bounds_ok(self) -> bool:
        return not self.violation_count.get("bound", 0)

    def to_dict(self) -> dict:
        return {
            "case": self.case,
            "description": self.description,
            "ceiling": self.ceiling,
            "checked": self.checked,
            "attained": sorted(self.attained),
            "violation_count": self.violation_count,
            "violations": self.violations,
            "details": self.details,
            "ok": self.ok,
        }


@dataclass
class BoundReport:
    q: int
    mode: str
    seed: int | None
    checks: list[BoundCheck]
    pool_size: int

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def bounds_ok(self) -> bool:
        """No size ceiling or exact value fails (structural claims aside)."""
        return all(c.bounds_ok for c in self.checks)

    def check(self, case: str) -> BoundCheck:
        return next(c for c in self.checks if c.case == case)

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "mode": self.mode,
            "seed": self.seed,
            "pool_size": self.pool_size,
            "ok": self.ok,
            "bounds_ok": self.bounds_ok,
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def scalar_class_forms(spec: FieldSpec, nvars: int = 4) -> np.ndarray:
    """One coefficient row per scalar class of nonzero forms (leading coefficient 1)."""
    q = spec.q
    nmon = nvars * (nvars + 1) // 2
    rows = []
    for lead in range(nmon):
        free = nmon - lead - 1
        block = span_table(spec, np.eye(free, dtype=np.uint8)) if free else np.zeros((1, 0), dtype=np.uint8)
        part = np.zeros((len(block), nmon), dtype=np.uint8)
        part[:, lead] = 1
        part[:, lead + 1:] = block
        rows.append(part)
    return np.concatenate(rows)


def _normalize_rows(spec: FieldSpec, rows: np.ndarray) -> np.ndarray:
    rows = rows[(rows != 0).any(axis=1)]
    lead = rows[np.arange(len(rows)), (rows != 0).argmax(axis=1)]
    return spec.mul_table[spec.inv_table[lead][:, None], rows]


def _dedupe(rows: np.ndarray) -> np.ndarray:
    return np.unique(rows, axis=0)


def _forms_vanishing_on(spec: FieldSpec, point_idx: np.ndarray) -> np.ndarray:
    """Basis (r x 10) of the forms vanishing at the given points."""
    sp = space(spec, 3)
    rows = sp.monomials[point_idx].T
    reduced, pivots, transform = rref(spec, np.ascontiguousarray(rows), track=True)
    return transform[len(pivots):]


def sample_pool(spec: FieldSpec, samples: int, seed: int) -> np.ndarray:
    """Structured sample of forms for q > 3.

    Mixes uniform random forms, projective images of the three code
    surfaces, forms through random sets of generators of the canonical cone
    and hyperbolic quadric, and every form in x0, x1, x2 alone (cones and
    plane pairs through the canonical cone's vertex).
    """
    q = spec.q
    rng = np.random.default_rng(seed)
    parts = [rng.integers(0, q, size=(samples, 10)).astype(np.uint8)]
    per = max(1, samples // 10)
    for label in CODE_SURFACES:
        base = canonical_form(spec, label)
        imgs = [transform_form(spec, base, random_invertible(spec, rng)).coeffs for _ in range(per)]
        parts.append(np.array(imgs, dtype=np.uint8))
    sp = space(spec, 3)
    for label in (QuadricType.CONE, QuadricType.HYPERBOLIC):
        ctx = surface_context(spec, canonical_form(spec, label))
        gens = ctx.generators
        rows = []
        for _ in range(per):
            size = int(rng.integers(1, 5))
            chosen = rng.choice(gens, size=min(size, len(gens)), replace=False)
            basis = _forms_vanishing_on(spec, np.unique(sp.lines[chosen].ravel()))
            if len(basis) == 0:
                continue
            coef = rng.integers(0, q, size=len(basis)).astype(np.uint8)
            rows.append(gf.matmul(spec, coef[None, :], basis)[0])
        if rows:
            parts.append(np.array(rows, dtype=np.uint8))
    parts.append(_ternary_lift(spec))
    return _dedupe(_normalize_rows(spec, np.concatenate(parts)))


def _ternary_lift(spec: FieldSpec) -> np.ndarray:
    """Every scalar class of nonzero forms in x0, x1, x2 as a quaternary form."""
    ternary = scalar_class_forms(spec, 3)
    lift = np.zeros((len(ternary), 10), dtype=np.uint8)
    for t_idx, m_idx in enumerate((0, 1, 2, 4, 5, 7)):  # x0^2 x0x1 x0x2 x1^2 x1x2 x2^2
        lift[:, m_idx] = ternary[:, t_idx]
    return lift


class _Pool:
    """Zero masks and orbit labels of a pool of forms, computed once."""

    def __init__(self, spec: FieldSpec, coeffs: np.ndarray) -> None:
        self.spec = spec
        self.coeffs = coeffs
        self.masks = form_values(spec, coeffs) == 0
        self.labels = classify_masks(spec, self.masks)

    def __len__(self) -> int:
        return len(self.coeffs)

    def where(self, *labels: QuadricType) -> np.ndarray:
        return np.nonzero(np.isin(self.labels, labels))[0]


def _pair_stats(spec: FieldSpec, xmask: np.ndarray, gmasks: np.ndarray):
    """Sizes, common-line boolean matrix and shared-plane flags."""
    sp = space(spec, 3)
    inter = gmasks & xmask[None, :]
    sizes = inter.sum(axis=1)
    common = np.zeros((len(gmasks), len(sp.lines)), dtype=bool)
    for start in range(0, len(gmasks), 4096):
        common[start:start + 4096] = inter[start:start + 4096][:, sp.lines].all(axis=2)
    plane_hits = inter.astype(np.int32) @ sp.plane_mask.T.astype(np.int32)
    shared = plane_hits.max(axis=1) == spec.q ** 2 + spec.q + 1 if len(gmasks) else np.zeros(0, dtype=bool)
    return sizes, common, shared


def _plane_pair_checks(spec: FieldSpec, checks: dict[str, BoundCheck]) -> None:
    q = spec.q
    sp = space(spec, 3)
    nplanes = sp.n_points
    pm = sp.plane_mask
    hyp = surface_context(spec, canonical_form(spec, QuadricType.HYPERBOLIC))
    ell = surface_context(spec, canonical_form(spec, QuadricType.ELLIPTIC))
    cone = surface_context(spec, canonical_form(spec, QuadricType.CONE))
    T, N = PlaneType.TANGENT, PlaneType.NON_TANGENT
    hyp_table = {
        (T, T, LineClass.BISECANT): 4 * q,
        (T, T, LineClass.GENERATOR): 3 * q + 1,
        (N, T, LineClass.SIMPLE_TANGENT): 3 * q + 1,
        (N, T, LineClass.BISECANT): 3 * q,
        (N, N, LineClass.SIMPLE_TANGENT): 2 * q + 1,
        (N, N, LineClass.BISECANT): 2 * q,
        (N, N, LineClass.SKEW): 2 * (q + 1),
    }
    c_hyp, c_ell, c_cone = checks["B.hyperbolic"], checks["B.elliptic"], checks["C"]
    c_hyp.details["by_case"] = {}
    c_ell.details["by_case"] = {}
    c_cone.details["by_case"] = {}
    odd = q % 2 == 1
    for a in range(nplanes):
        for b in range(a + 1, nplanes):
            union = pm[a] | pm[b]
            li = axis_line(spec, a, b)
            g = _plane_pair_form(spec, a, b)

            # hyperbolic X
            size = int((union & hyp.mask).sum())
            pa, pb = sorted((hyp.plane_labels[a], hyp.plane_labels[b]))
            key = (pa, pb, hyp.line_labels[li])
            c_hyp.checked += 1
            c_hyp.attained.add(size)
            name = f"{pa},{pb};{key[2]}"
            c_hyp.details["by_case"].setdefault(name, set()).add(size)
            if key not in hyp_table:
                c_hyp.violate(hyp.form, g, size, f"configuration {name} should not occur", "structure")
            elif size != hyp_table[key]:
                c_hyp.violate(hyp.form, g, size, f"{name}: expected {hyp_table[key]}")

            # elliptic X
            size = int((union & ell.mask).sum())
            pa, pb = sorted((ell.plane_labels[a], ell.plane_labels[b]))
            lc = ell.line_labels[li]
            name = f"{pa},{pb};{lc}"
            c_ell.checked += 1
            c_ell.attained.add(size)
            c_ell.details["by_case"].setdefault(name, set()).add(size)
            if (pa, pb) == (T, T):
                if lc is not LineClass.SKEW or size != 2:
                    c_ell.violate(ell.form, g, size, f"{name}: two tangent planes must meet in a skew line, 2 points")
            elif (pa, pb) == (N, T):
                if lc not in (LineClass.SIMPLE_TANGENT, LineClass.SKEW):
                    c_ell.violate(ell.form, g, size, f"{name}: axis must be tangent or skew", "structure")
                if size > q + 2:
                    c_ell.violate(ell.form, g, size, f"{name}: expected at most q+2")
            else:
                want = {LineClass.SIMPLE_TANGENT: 2 * q + 1, LineClass.BISECANT: 2 * q, LineClass.SKEW: 2 * (q + 1)}
                if size != want.get(lc, -1):
                    c_ell.violate(ell.form, g, size, f"{name}: expected {want.get(lc)}")

            # cone X
            size = int((union & cone.mask).sum())
            pa, pb = sorted((cone.plane_labels[a], cone.plane_labels[b]))
            lc = cone.line_labels[li]
            name = f"{pa},{pb};{lc}"
            c_cone.checked += 1
            c_cone.attained.add(size)
            c_cone.details["by_case"].setdefault(name, set()).add(size)
            gp, tp = PlaneType.GENERATOR_PAIR, PlaneType.TANGENT_PLANE
            vertex_axis = (
                (LineClass.EXTERNAL_VERTEX_TANGENT, LineClass.INTERNAL_VERTEX_TANGENT)
                if odd
                else (LineClass.THROUGH_VERTEX_OTHER,)
            )
            special = LineClass.EXTERNAL_VERTEX_TANGENT if odd else LineClass.THROUGH_VERTEX_OTHER
            if (pa, pb) == (gp, gp) and lc in vertex_axis:
                want, rule = 4 * q + 1, "(i)"
            elif ((pa, pb) == (gp, gp) and lc is LineClass.GENERATOR) or (
                {pa, pb} == {gp, tp} and lc is special
            ):
                want, rule = 3 * q + 1, "(ii)"
            else:
                want, rule = None, "(iii)"
            c_cone.details["by_case"].setdefault(f"rule {rule}", set()).add(size)
            if want is not None and size != want:
                c_cone.violate(cone.form, g, size, f"{name}: case {rule} expects {want}")
            if want is None and size > 3 * q:
                c_cone.violate(cone.form, g, size, f"{name}: case (iii) expects at most 3q")
    for c in (c_hyp, c_ell, c_cone):
        c.details["by_case"] = {k: sorted(v) for k, v in sorted(c.details["by_case"].items())}
    expected = {4 * q, 3 * q + 1, 3 * q, 2 * q + 1, 2 * q, 2 * (q + 1)}
    missing = expected - c_hyp.attained
    if missing:
        c_hyp.violate(hyp.form, np.zeros(10, dtype=int), -1, f"values {sorted(missing)} not realised")


def _plane_pair_form(spec: FieldSpec, a: int, b: int) -> np.ndarray:
    """Coefficients of the product of two linear forms given by dual points."""
    sp = space(spec, 3)
    u, v = sp.points[a], sp.points[b]
    add, mul = spec.add_table, spec.mul_table
    out = np.zeros(10, dtype=np.uint8)
    k = 0
    for i in range(4):
        for j in range(i, 4):
            if i == j:
                out[k] = mul[u[i], v[i]]
            else:
                out[k] = add[mul[u[i], v[j]], mul[u[j], v[i]]]
            k += 1
    return out


def plane_pair_form(spec: FieldSpec, h1: Plane, h2: Plane) -> QuadraticForm:
    sp = space(spec, 3)
    return QuadraticForm(tuple(int(c) for c in _plane_pair_form(spec, sp.plane_index(h1), sp.plane_index(h2))))


def _pencil_subcase(spec: FieldSpec, ctx: SurfaceContext, g: np.ndarray) -> tuple[str, int]:
    """Decomposition type of X n Z(g) read from the rational members of the
    pencil spanned by X and g, with the matching ceiling."""
    q = spec.q
    xf = np.array(ctx.form.coeffs, dtype=np.uint8)
    members = np.array([spec.add_table[g, spec.mul_table[lam, xf]] for lam in range(q)], dtype=np.uint8)
    members = members[(members != 0).any(axis=1)]
    labels = classify_masks(spec, form_values(spec, members) == 0)
    if QuadricType.LINE in labels:
        return "conic pair over GF(q^2)", q + 1
    if QuadricType.REPEATED_PLANE in labels:
        return "double conic", q + 1
    if QuadricType.PLANE_PAIR in labels:
        pp = members[list(labels).index(QuadricType.PLANE_PAIR)]
        planes = contained_planes(spec, form_values(spec, pp[None, :])[0] == 0)
        tangent = int(sum(ctx.plane_labels[h] is PlaneType.TANGENT for h in planes))
        return {0: ("two conics", 2 * (q + 1)), 1: ("two lines and a conic", q + 3), 2: ("four lines", 4)}[tangent]
    return "irreducible quartic", weil_ceiling(q)


def bound_suite(
    spec: FieldSpec,
    mode: str | None = None,
    samples: int = 20_000,
    seed: int = 0,
    force: bool = False,
) -> BoundReport:
    """Run every intersection bound against a pool of forms.

    ``mode`` defaults to ``exhaustive`` at q = 3 (every scalar class of
    forms) and ``sample`` otherwise (see :func:`sample_pool`).  Plane-pair
    cases always scan all pairs of distinct planes.
    """
    q = spec.q
    if mode is None:
        mode = "exhaustive" if q == 3 else "sample"
    if mode == "exhaustive":
        if q > 3 and not force:
            raise ValueError("exhaustive bound suite is limited to q = 3 without force")
        coeffs = scalar_class_forms(spec)
        seed_used = None
    elif mode == "sample":
        coeffs = sample_pool(spec, samples, seed)
        seed_used = seed
    else:
        raise ValueError(f"unknown mode {mode!r}")
    pool = _Pool(spec, coeffs)

    checks = {
        "A": BoundCheck("A", "plane sections of cones and non-degenerate quadrics", ceiling="<= 2q+1"),
        "B.hyperbolic": BoundCheck(
            "B.hyperbolic", "hyperbolic quadric vs pairs of distinct planes", ceiling="4q | 3q+1 | 3q | 2q+1 | 2q | 2(q+1) by case"
        ),
        "B.elliptic": BoundCheck(
            "B.elliptic", "elliptic quadric vs pairs of distinct planes", ceiling="2 for two tangent planes; <= q+2; 2q+1 | 2q | 2(q+1)"
        ),
        "C": BoundCheck("C", "cone vs pairs of distinct planes", ceiling="(i) 4q+1, (ii) 3q+1, (iii) <= 3q"),
        "D.1": BoundCheck("D.1", "rank-2 line quadric vs any quadric", ceiling="<= q+1"),
        "D.2": BoundCheck("D.2", "elliptic quadric vs cones and hyperbolic quadrics", ceiling="<= 2(q+1)"),
        "D.3": BoundCheck("D.3", "cone vs hyperbolic quadric", ceiling="no common line <= 2(q+1); common line <= 3q"),
        "D.4": BoundCheck(
            "D.4", "pairs of cones", ceiling="0 lines <= 2(q+1); 1 <= 2q+1; 2 <= 3q; otherwise 4 lines and 4q+1"
        ),
        "E.1": BoundCheck(
            "E.1",
            "pairs of hyperbolic quadrics",
            ceiling="<= 1 line <= 2(q+1); 2 lines same regulus = 2(q+1); 2 lines opposite <= 3q+1; 4 lines (2+2) = 4q",
        ),
        "E.2": BoundCheck(
            "E.2",
            "pairs of elliptic quadrics",
            ceiling="<= 2(q+1); irreducible quartic <= 1+q+floor(2 sqrt q); GF(q^2) conic pair <= q+1; "
            "two lines and a conic <= q+3; four lines <= 4",
        ),
        "nondegenerate-4q": BoundCheck(
            "nondegenerate-4q", "non-degenerate quadric vs any form not vanishing on it", ceiling="<= 4q"
        ),
        "Bezout": BoundCheck("Bezout", "common lines of two quadrics without a common plane", ceiling="<= 4"),
    }

    # A: plane sections
    for label in CODE_SURFACES:
        ctx = surface_context(spec, canonical_form(spec, label))
        c = checks["A"]
        c.checked += len(ctx.plane_counts)
        c.attained.update(int(v) for v in np.unique(ctx.plane_counts))
        c.details[str(label)] = int(ctx.plane_counts.max())
        for pi in np.nonzero(ctx.plane_counts > 2 * q + 1)[0]:
            c.violate(ctx.form, np.zeros(10, dtype=int), int(ctx.plane_counts[pi]), f"plane {pi} section too large")

    _plane_pair_checks(spec, checks)

    stats = {}
    for label in SURFACES:
        xf = canonical_form(spec, label)
        ctx = surface_context(spec, xf)
        xrow = np.array(xf.normalized(spec).coeffs, dtype=np.uint8)
        same = (pool.coeffs == xrow[None, :]).all(axis=1)
        stats[label] = (ctx, same, *_pair_stats(spec, ctx.mask, pool.masks))

    # D.1
    ctx, same, sizes, common, shared = stats[QuadricType.LINE]
    c = checks["D.1"]
    c.checked = len(pool)
    c.attained.update(int(s) for s in np.unique(sizes))
    for i in np.nonzero(sizes > q + 1)[0]:
        c.violate(ctx.form, pool.coeffs[i], sizes[i], "exceeds q+1")

    # Bezout for every surface class
    c = checks["Bezout"]
    for label, (ctx, same, sizes, common, shared) in stats.items():
        ncommon = common.sum(axis=1)
        sel = ~same & ~shared
        c.checked += int(sel.sum())
        c.attained.update(int(v) for v in np.unique(ncommon[sel]))
        for i in np.nonzero(sel & (ncommon > 4))[0]:
            c.violate(ctx.form, pool.coeffs[i], ncommon[i], f"{ncommon[i]} common lines with {label}")

    # ceiling for non-degenerate surfaces
    c = checks["nondegenerate-4q"]
    for label in (QuadricType.HYPERBOLIC, QuadricType.ELLIPTIC):
        ctx, same, sizes, common, shared = stats[label]
        sel = sizes < ctx.n
        c.checked += int(sel.sum())
        c.attained.update(int(v) for v in np.unique(sizes[sel]))
        c.details[str(label)] = int(sizes[sel].max())
        for i in np.nonzero(sel & (sizes > 4 * q))[0]:
            c.violate(ctx.form, pool.coeffs[i], sizes[i], "exceeds 4q")

    # D.2
    ctx, same, sizes, common, shared = stats[QuadricType.ELLIPTIC]
    c = checks["D.2"]
    sel = pool.where(QuadricType.CONE, QuadricType.HYPERBOLIC)
    c.checked = len(sel)
    c.attained.update(int(v) for v in np.unique(sizes[sel]))
    for i in sel[sizes[sel] > 2 * (q + 1)]:
        c.violate(ctx.form, pool.coeffs[i], sizes[i], "exceeds 2(q+1)")

    # D.3 and D.4
    ctx, same, sizes, common, shared = stats[QuadricType.CONE]
    ncommon = common.sum(axis=1)
    c = checks["D.3"]
    sel = pool.where(QuadricType.HYPERBOLIC)
    c.checked = len(sel)
    c.attained.update(int(v) for v in np.unique(sizes[sel]))
    for i in sel:
        limit = 2 * (q + 1) if ncommon[i] == 0 else 3 * q
        if sizes[i] > limit:
            c.violate(ctx.form, pool.coeffs[i], sizes[i], f"{ncommon[i]} common lines, limit {limit}")
    c.details["common_line_counts"] = sorted({int(v) for v in ncommon[sel]})

    c = checks["D.4"]
    sel = pool.where(QuadricType.CONE)
    sel = sel[~same[sel]]
    c.checked = len(sel)
    c.attained.update(int(v) for v in np.unique(sizes[sel]))
    by_lines: dict[int, set[int]] = {}
    for i in sel:
        nl, s = int(ncommon[i]), int(sizes[i])
        by_lines.setdefault(nl, set()).add(s)
        limit = {0: 2 * (q + 1), 1: 2 * q + 1, 2: 3 * q}.get(nl)
        if limit is not None:
            if s > limit:
                c.violate(ctx.form, pool.coeffs[i], s, f"{nl} common lines, limit {limit}")
        elif nl != 4:
            c.violate(ctx.form, pool.coeffs[i], s, f"{nl} common lines: only 0, 1, 2 or 4 are possible", "structure")
        elif s != 4 * q + 1:
            c.violate(ctx.form, pool.coeffs[i], s, "four common lines must give 4q+1 points")
    c.details["sizes_by_common_lines"] = {str(k): sorted(v) for k, v in sorted(by_lines.items())}

    # E.1
    ctx, same, sizes, common, shared = stats[QuadricType.HYPERBOLIC]
    colour = np.full(common.shape[1], -1)
    for li, col in ctx.regulus_of_line.items():
        colour[li] = col
    c = checks["E.1"]
    sel = pool.where(QuadricType.HYPERBOLIC)
    sel = sel[~same[sel]]
    c.checked = len(sel)
    c.attained.update(int(v) for v in np.unique(sizes[sel]))
    by_config: dict[str, set[int]] = {}
    for i in sel:
        lines = np.nonzero(common[i])[0]
        r0 = int((colour[lines] == 0).sum())
        r1 = int((colour[lines] == 1).sum())
        s = int(sizes[i])
        cfg = f"{r0}+{r1}"
        by_config.setdefault(cfg, set()).add(s)
        if len(lines) <= 1:
            ok, rule = s <= 2 * (q + 1), "<= 2(q+1)"
        elif len(lines) == 2 and (r0 == 2 or r1 == 2):
            ok, rule = s == 2 * (q + 1), "= 2(q+1)"
        elif len(lines) == 2:
            ok, rule = s <= 3 * q + 1, "<= 3q+1"
        elif len(lines) == 4 and r0 == 2 and r1 == 2:
            ok, rule = s == 4 * q, "= 4q"
        else:
            ok, rule = False, "three or more common lines must be four, two per regulus"
        if not ok:
            kind = "structure" if rule.startswith("three") else "bound"
            c.violate(ctx.form, pool.coeffs[i], s, f"common lines {cfg}: {rule}", kind)
    c.details["sizes_by_regulus_split"] = {k: sorted(v) for k, v in sorted(by_config.items())}

    # E.2
    ctx, same, sizes, common, shared = stats[QuadricType.ELLIPTIC]
    c = checks["E.2"]
    sel = pool.where(QuadricType.ELLIPTIC)
    sel = sel[~same[sel]]
    c.checked = len(sel)
    c.attained.update(int(v) for v in np.unique(sizes[sel]))
    by_sub: dict[str, set[int]] = {}
    for i in sel:
        s = int(sizes[i])
        sub, limit = _pencil_subcase(spec, ctx, pool.coeffs[i])
        by_sub.setdefault(sub, set()).add(s)
        if s > 2 * (q + 1):
            c.violate(ctx.form, pool.coeffs[i], s, "exceeds 2(q+1)")
        elif s > limit:
            c.violate(ctx.form, pool.coeffs[i], s, f"{sub}: exceeds {limit}")
        if common[i].any():
            c.violate(ctx.form, pool.coeffs[i], s, "elliptic quadrics contain no lines")
    c.details["sizes_by_subcase"] = {k: sorted(v) for k, v in sorted(by_sub.items())}

    return BoundReport(q=q, mode=mode, seed=seed_used, checks=list(checks.values()), pool_size=len(pool))


# -- named witness pairs -------------------------------------------------------

def find_four_line_cone_pair(spec: FieldSpec) -> QuadraticForm | None:
    """A cone g, not proportional to the canonical cone X and sharing no
    plane with it, that contains exactly four lines of X.

    Four concurrent lines force g to have the vertex (0:0:0:1) of X, so
    scanning every form in x0, x1, x2 is an exhaustive search.
    """
    xf = canonical_form(spec, QuadricType.CONE)
    ctx = surface_context(spec, xf)
    pool = _Pool(spec, _ternary_lift(spec))
    sel = pool.where(QuadricType.CONE)
    sizes, common, shared = _pair_stats(spec, ctx.mask, pool.masks[sel])
    xrow = np.array(xf.normalized(spec).coeffs, dtype=np.uint8)
    for j, i in enumerate(sel):
        if (pool.coeffs[i] == xrow).all() or shared[j]:
            continue
        if common[j].sum() == 4:
            return QuadraticForm(tuple(int(c) for c in pool.coeffs[i]))
    return None
