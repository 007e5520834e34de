"""Row reduction over GF(q)."""

from __future__ import annotations

import numpy as np

from quadcodes.gf import FieldSpec


def rref(spec: FieldSpec, mat: np.ndarray, track: bool = False):
    """Reduced row-echelon form of ``mat`` over GF(q).

    Returns ``(reduced, pivots)``, or ``(reduced, pivots, transform)`` when
    ``track`` is set, where ``transform @ mat == reduced`` row by row.  The
    rows of ``reduced`` past ``len(pivots)`` are zero, and the matching rows
    of ``transform`` span the left kernel.
    """
    add, mul, neg, inv = spec.add_table, spec.mul_table, spec.neg_table, spec.inv_table
    a = np.array(mat, dtype=np.uint8, copy=True)
    rows, cols = a.shape
    t = np.eye(rows, dtype=np.uint8)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if len(nz) == 0:
            continue
        s = r + int(nz[0])
        if s != r:
            a[[r, s]] = a[[s, r]]
            t[[r, s]] = t[[s, r]]
        scale = inv[a[r, c]]
        a[r] = mul[scale, a[r]]
        t[r] = mul[scale, t[r]]
        for i in range(rows):
            if i != r and a[i, c]:
                factor = neg[a[i, c]]
                a[i] = add[a[i], mul[factor, a[r]]]
                t[i] = add[t[i], mul[factor, t[r]]]
        pivots.append(c)
        r += 1
    if track:
        return a, pivots, t
    return a, pivots
