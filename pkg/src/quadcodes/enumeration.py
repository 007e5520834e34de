"""Exhaustive enumeration of the row space of a matrix over GF(q).

Messages are ordered like an odometer over the rows, first row most
significant.  The last ``j`` rows are expanded once into an inner table of
all q^j combinations; the outer loop walks the remaining prefixes.  A word
``v + t`` is zero in a coordinate exactly where ``t == -v``, so weights come
from one comparison per entry and no field addition in the hot loop.

Work splits over disjoint prefix ranges; every worker returns a local
tally and the merge is a plain sum, so results do not depend on the split.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from quadcodes.gf import FieldSpec, make_field

INNER_LIMIT = 1 << 17
SIZE_GUARD = 10 ** 10


class SizeGuardError(RuntimeError):
    """Raised when an enumeration would exceed the configured size guard."""


def span_table(spec: FieldSpec, rows: np.ndarray) -> np.ndarray:
    """All q^r combinations of ``rows`` (r x n), first row most significant."""
    rows = np.asarray(rows, dtype=np.uint8)
    n = rows.shape[1]
    table = np.zeros((1, n), dtype=np.uint8)
    elems = np.arange(spec.q, dtype=np.uint8)
    for r in rows:
        scaled = spec.mul_table[elems[:, None], r[None, :]]
        table = spec.add_table[table[:, None, :], scaled[None, :, :]].reshape(-1, n)
    return table


def _split(spec: FieldSpec, k: int) -> int:
    j = 0
    while j < k and spec.q ** (j + 1) <= INNER_LIMIT:
        j += 1
    return j


def default_workers() -> int:
    env = os.environ.get("QCL_WORKERS")
    return max(1, int(env)) if env else 1


def _chunks(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total))
    bounds = np.linspace(0, total, parts + 1).astype(np.int64)
    return [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]


def _prefix_vectors(spec: FieldSpec, rows: np.ndarray, start: int, stop: int) -> np.ndarray:
    """Codeword prefixes for outer message indices in [start, stop)."""
    q = spec.q
    r, n = rows.shape
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.zeros((len(idx), n), dtype=np.uint8)
    for i in range(r):
        digit = (idx // q ** (r - 1 - i)) % q
        out = spec.add_table[out, spec.mul_table[digit[:, None].astype(np.uint8), rows[i][None, :]]]
    return out


def _tally_range(p: int, m: int, gen: np.ndarray, j: int, start: int, stop: int) -> np.ndarray:
    spec = make_field(p, m)
    k, n = gen.shape
    inner = span_table(spec, gen[k - j:])
    counts = np.zeros(n + 1, dtype=np.int64)
    for lo in range(start, stop, 64):
        hi = min(stop, lo + 64)
        for v in _prefix_vectors(spec, gen[: k - j], lo, hi):
            zeros = (inner == spec.neg_table[v][None, :]).sum(axis=1)
            counts += np.bincount(n - zeros, minlength=n + 1)
    return counts


def _find_range(p: int, m: int, gen: np.ndarray, j: int, start: int, stop: int, weights: tuple[int, ...]) -> np.ndarray:
    spec = make_field(p, m)
    k, n = gen.shape
    inner = span_table(spec, gen[k - j:])
    found = []
    wanted = np.array(weights)
    for lo in range(start, stop, 64):
        hi = min(stop, lo + 64)
        for off, v in enumerate(_prefix_vectors(spec, gen[: k - j], lo, hi)):
            w = n - (inner == spec.neg_table[v][None, :]).sum(axis=1)
            hits = np.nonzero(np.isin(w, wanted))[0]
            if len(hits):
                found.append((lo + off) * spec.q ** j + hits)
    return np.concatenate(found) if found else np.zeros(0, dtype=np.int64)


def _check_guard(spec: FieldSpec, k: int, force: bool) -> None:
    if spec.q ** k > SIZE_GUARD and not force:
        raise SizeGuardError(f"{spec.q}^{k} codewords exceed the enumeration guard of {SIZE_GUARD:.0e}")


def _run(fn, spec: FieldSpec, gen: np.ndarray, workers: int, extra: tuple = ()) -> list:
    gen = np.ascontiguousarray(gen, dtype=np.uint8)
    k = gen.shape[0]
    j = _split(spec, k)
    outer = spec.q ** (k - j)
    if workers <= 1:
        return [fn(spec.p, spec.m, gen, j, 0, outer, *extra)]
    ranges = _chunks(outer, workers * 4)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, spec.p, spec.m, gen, j, a, b, *extra) for a, b in ranges]
        return [f.result() for f in futures]


def weight_counts(spec: FieldSpec, gen: np.ndarray, workers: int = 1, force: bool = False) -> np.ndarray:
    """Number of row-space vectors of each Hamming weight 0..n."""
    gen = np.asarray(gen, dtype=np.uint8)
    _check_guard(spec, gen.shape[0], force)
    parts = _run(_tally_range, spec, gen, workers)
    return np.sum(parts, axis=0)


def messages_of_weight(
    spec: FieldSpec, gen: np.ndarray, weights: int | tuple[int, ...], workers: int = 1, force: bool = False
) -> np.ndarray:
    """Sorted message indices whose codeword weight is in ``weights``."""
    gen = np.asarray(gen, dtype=np.uint8)
    _check_guard(spec, gen.shape[0], force)
    if isinstance(weights, int):
        weights = (weights,)
    parts = _run(_find_range, spec, gen, workers, (tuple(weights),))
    return np.sort(np.concatenate(parts))


def message_digits(q: int, k: int, index: int) -> list[int]:
    return [(index // q ** (k - 1 - i)) % q for i in range(k)]
