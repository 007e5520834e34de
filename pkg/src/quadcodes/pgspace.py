"""Points, lines and planes of PG(2,q) and PG(3,q).

Every point is stored by its W_i representative: the first nonzero
coordinate is 1.  The global point order lists the W_0 block first (free
coordinates counting up like an odometer), then W_1, W_2, W_3.  That order
is the column order of every generator matrix built by this package.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product
from typing import TYPE_CHECKING, Iterable, Sequence

import numpy as np

from quadcodes import gf
from quadcodes.gf import FieldSpec

if TYPE_CHECKING:
    from quadcodes.quadrics import QuadraticForm


@dataclass(frozen=True, order=True)
class ProjPoint:
    coords: tuple[int, ...]

    @property
    def w_index(self) -> int:
        for i, c in enumerate(self.coords):
            if c:
                return i
        raise ValueError("zero vector is not a projective point")

    def __str__(self) -> str:
        return "(" + ":".join(str(c) for c in self.coords) + ")"

    def __iter__(self):
        return iter(self.coords)


def normalize(spec: FieldSpec, coords: Sequence[int]) -> ProjPoint:
    """Scale ``coords`` so the first nonzero entry is 1."""
    coords = tuple(int(c) for c in coords)
    for c in coords:
        gf._check(spec, c)
    lead = next((c for c in coords if c), 0)
    if lead == 0:
        raise ValueError("all-zero coordinates do not define a point")
    s = int(spec.inv_table[lead])
    return ProjPoint(tuple(int(spec.mul_table[s, c]) for c in coords))


def _point_array(q: int, dim: int) -> np.ndarray:
    rows = []
    for i in range(dim + 1):
        for free in product(range(q), repeat=dim - i):
            rows.append((0,) * i + (1,) + free)
    return np.array(rows, dtype=np.uint8)


def point_key(coords: Sequence[int], q: int) -> int:
    """Integer key of a normalised coordinate tuple, used for table lookup."""
    k = 0
    for c in coords:
        k = k * q + int(c)
    return k


def normalize_rows(spec: FieldSpec, vecs: np.ndarray) -> np.ndarray:
    """Vectorised :func:`normalize`; rows must be nonzero."""
    vecs = np.asarray(vecs, dtype=np.uint8)
    nz = vecs != 0
    if not nz.any(axis=1).all():
        raise ValueError("all-zero row")
    lead = vecs[np.arange(len(vecs)), nz.argmax(axis=1)]
    return spec.mul_table[spec.inv_table[lead][:, None], vecs]


@dataclass(frozen=True)
class Line:
    """A line of PG(3,q) given by its q+1 points (global point order)."""

    points: tuple[ProjPoint, ...]

    @property
    def basis(self) -> tuple[ProjPoint, ProjPoint]:
        a, b = sorted(self.points)[:2]
        return a, b

    def __contains__(self, pt: ProjPoint) -> bool:
        return pt in self.points

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class Plane:
    """A plane stored by its normalised dual coordinates."""

    dual: ProjPoint
    basis: tuple[ProjPoint, ProjPoint, ProjPoint]

    def contains(self, spec: FieldSpec, pt: ProjPoint) -> bool:
        acc = 0
        for a, b in zip(self.dual.coords, pt.coords):
            acc = int(spec.add_table[acc, spec.mul_table[a, b]])
        return acc == 0


class ProjectiveSpace:
    """Cached incidence structure of PG(dim, q).

    Points, lines and planes are held as index arrays into ``points`` so
    that whole-space scans stay vectorised.
    """

    def __init__(self, spec: FieldSpec, dim: int = 3) -> None:
        if dim not in (2, 3):
            raise ValueError(f"unsupported dimension {dim}")
        self.spec = spec
        self.dim = dim
        self.q = spec.q
        self.points = _point_array(spec.q, dim)
        self.points.setflags(write=False)
        self.n_points = len(self.points)
        keys = np.array([point_key(r, self.q) for r in self.points], dtype=np.int64)
        self._key_to_index = np.full(self.q ** (dim + 1), -1, dtype=np.int64)
        self._key_to_index[keys] = np.arange(self.n_points)

    def index_of(self, coords: Sequence[int]) -> int:
        pt = normalize(self.spec, coords)
        return int(self._key_to_index[point_key(pt.coords, self.q)])

    def indices_of_rows(self, vecs: np.ndarray) -> np.ndarray:
        norm = normalize_rows(self.spec, vecs).astype(np.int64)
        keys = np.zeros(len(norm), dtype=np.int64)
        for j in range(norm.shape[1]):
            keys = keys * self.q + norm[:, j]
        return self._key_to_index[keys]

    def point(self, idx: int) -> ProjPoint:
        return ProjPoint(tuple(int(c) for c in self.points[idx]))

    @cached_property
    def monomials(self) -> np.ndarray:
        """Evaluation of the degree-2 monomials at every point (N x 10 or N x 6)."""
        from quadcodes.quadrics import monomial_pairs

        mul = self.spec.mul_table
        cols = [mul[self.points[:, i], self.points[:, j]] for i, j in monomial_pairs(self.dim + 1)]
        out = np.stack(cols, axis=1)
        out.setflags(write=False)
        return out

    # -- lines -------------------------------------------------------------

    def span_indices(self, i: int, j: int) -> np.ndarray:
        """Point indices of the line through points ``i`` and ``j``, sorted."""
        q = self.q
        a, b = self.points[i], self.points[j]
        mul, add = self.spec.mul_table, self.spec.add_table
        ts = np.arange(q, dtype=np.uint8)
        vecs = add[a[None, :], mul[ts[:, None], b[None, :]]]
        idx = np.concatenate([self.indices_of_rows(vecs), [j]])
        return np.sort(idx)

    @cached_property
    def _line_data(self) -> tuple[np.ndarray, np.ndarray]:
        n = self.n_points
        pair_line = np.full((n, n), -1, dtype=np.int32)
        lines = []
        for i in range(n):
            for j in range(i + 1, n):
                if pair_line[i, j] >= 0:
                    continue
                pts = self.span_indices(i, j)
                li = len(lines)
                lines.append(pts)
                pair_line[np.ix_(pts, pts)] = li
        np.fill_diagonal(pair_line, -1)
        arr = np.array(lines, dtype=np.int32)
        arr.setflags(write=False)
        pair_line.setflags(write=False)
        return arr, pair_line

    @property
    def lines(self) -> np.ndarray:
        """(L x q+1) point indices, one row per line."""
        return self._line_data[0]

    @property
    def pair_line(self) -> np.ndarray:
        """``pair_line[i, j]`` is the index of the line through points i != j."""
        return self._line_data[1]

    @cached_property
    def point_lines(self) -> np.ndarray:
        """(N x q^2+q+1) indices of the lines through each point (dim 3)."""
        n_through = (self.q ** self.dim - 1) // (self.q - 1)
        out = np.zeros((self.n_points, n_through), dtype=np.int32)
        fill = np.zeros(self.n_points, dtype=np.int64)
        for li, pts in enumerate(self.lines):
            for pt in pts:
                out[pt, fill[pt]] = li
                fill[pt] += 1
        out.setflags(write=False)
        return out

    # -- planes (dim 3) / the whole plane (dim 2) --------------------------

    @cached_property
    def plane_mask(self) -> np.ndarray:
        """(P x N) boolean incidence of planes and points."""
        if self.dim != 3:
            raise ValueError("planes are only enumerated in PG(3,q)")
        dots = gf.matmul(self.spec, self.points, self.points.T)
        out = dots == 0
        out.setflags(write=False)
        return out

    @cached_property
    def line_planes(self) -> np.ndarray:
        """(L x q+1) indices of the planes through each line."""
        pm = self.plane_mask
        first_two = self.lines[:, :2]
        both = pm[:, first_two[:, 0]] & pm[:, first_two[:, 1]]
        out = np.array([np.nonzero(both[:, li])[0] for li in range(len(self.lines))], dtype=np.int32)
        out.setflags(write=False)
        return out

    def plane_lines(self, plane: int) -> np.ndarray:
        pm = self.plane_mask[plane]
        return np.nonzero(pm[self.lines].all(axis=1))[0]

    def line_of_points(self, idx: Iterable[int]) -> int | None:
        """Index of the line containing all the given points, or None."""
        idx = list(idx)
        if len(idx) < 2:
            return None
        li = int(self.pair_line[idx[0], idx[1]])
        if set(idx) <= set(self.lines[li].tolist()):
            return li
        return None

    # -- conversions to value types ---------------------------------------

    def line_value(self, li: int) -> Line:
        return Line(tuple(self.point(i) for i in self.lines[li]))

    def plane_value(self, pi: int) -> Plane:
        dual = self.point(pi)
        members = sorted(self.point(i) for i in np.nonzero(self.plane_mask[pi])[0])
        e0, e1 = members[0], members[1]
        on_line = set(self.lines[self.pair_line[self.index_of(e0.coords), self.index_of(e1.coords)]].tolist())
        e2 = next(pt for pt in members if self.index_of(pt.coords) not in on_line)
        return Plane(dual, (e0, e1, e2))

    def plane_index(self, plane: Plane) -> int:
        return self.index_of(plane.dual.coords)

    def line_index(self, line: Line) -> int:
        a, b = line.points[0], line.points[1]
        return int(self.pair_line[self.index_of(a.coords), self.index_of(b.coords)])


@lru_cache(maxsize=None)
def space(spec: FieldSpec, dim: int = 3) -> ProjectiveSpace:
    return ProjectiveSpace(spec, dim)


def enumerate_points(dim: int, spec: FieldSpec) -> list[ProjPoint]:
    sp = space(spec, dim)
    return [sp.point(i) for i in range(sp.n_points)]


def line_through(spec: FieldSpec, p1: ProjPoint, p2: ProjPoint) -> Line:
    if p1 == p2:
        raise ValueError("a line needs two distinct points")
    sp = space(spec, len(p1.coords) - 1)
    i, j = sp.index_of(p1.coords), sp.index_of(p2.coords)
    if i == j:
        raise ValueError("a line needs two distinct points")
    return Line(tuple(sp.point(k) for k in sp.span_indices(i, j)))


def enumerate_lines(spec: FieldSpec) -> list[Line]:
    sp = space(spec, 3)
    return [sp.line_value(li) for li in range(len(sp.lines))]


def enumerate_planes(spec: FieldSpec) -> list[Plane]:
    sp = space(spec, 3)
    return [sp.plane_value(pi) for pi in range(sp.n_points)]


def plane_from_dual(spec: FieldSpec, dual: Sequence[int]) -> Plane:
    sp = space(spec, 3)
    return sp.plane_value(sp.index_of(dual))


def restrict_form(
    spec: FieldSpec,
    f: QuadraticForm,
    plane: Plane,
    basis: Sequence[Sequence[int]] | None = None,
) -> QuadraticForm:
    """Ternary form g(u) = f(u0*e0 + u1*e1 + u2*e2) for a basis of ``plane``.

    Cross terms come from the polar form f(ei + ej) - f(ei) - f(ej), which
    is valid in every characteristic.
    """
    from quadcodes.quadrics import QuadraticForm, evaluate_vector

    es = [tuple(int(c) for c in e) for e in (basis if basis is not None else plane.basis)]
    if len(es) != 3:
        raise ValueError("a plane basis needs three vectors")
    for e in es:
        if not plane.contains(spec, normalize(spec, e)):
            raise ValueError(f"basis vector {e} is not on the plane")
    if gf_rank(spec, np.array(es, dtype=np.uint8)) != 3:
        raise ValueError("basis vectors do not span the plane")
    add, neg = spec.add_table, spec.neg_table
    fe = [evaluate_vector(spec, f, e) for e in es]
    coeffs = []
    for i in range(3):
        for j in range(i, 3):
            if i == j:
                coeffs.append(fe[i])
            else:
                s = tuple(int(add[a, b]) for a, b in zip(es[i], es[j]))
                val = add[evaluate_vector(spec, f, s), neg[fe[i]]]
                coeffs.append(int(add[val, neg[fe[j]]]))
    return QuadraticForm(tuple(coeffs))


def gf_rank(spec: FieldSpec, mat: np.ndarray) -> int:
    from quadcodes.linalg import rref

    return len(rref(spec, mat)[1])
