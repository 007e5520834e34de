import itertools

import numpy as np
import pytest

from quadcodes import gf
from quadcodes import enumeration as en


def brute_counts(spec, gen):
    k, n = gen.shape
    counts = np.zeros(n + 1, dtype=int)
    found = {}
    for idx, msg in enumerate(itertools.product(range(spec.q), repeat=k)):
        word = np.zeros(n, dtype=int)
        for m, row in zip(msg, gen):
            word = gf.vadd(spec, word, gf.vmul(spec, np.full(n, m), row))
        w = int(np.count_nonzero(word))
        counts[w] += 1
        found.setdefault(w, []).append(idx)
    return counts, found


@pytest.mark.parametrize("q,k,n", [(3, 4, 7), (4, 3, 6), (5, 3, 5)])
def test_weight_counts_match_brute_force(q, k, n):
    spec = gf.field_of_order(q)
    gen = np.random.default_rng(q).integers(0, q, (k, n)).astype(np.uint8)
    want, found = brute_counts(spec, gen)
    assert (en.weight_counts(spec, gen) == want).all()
    w = int(np.nonzero(want[1:])[0][0]) + 1
    assert list(en.messages_of_weight(spec, gen, w)) == found[w]


def test_split_inner_table_limit(monkeypatch):
    spec = gf.make_field(3)
    gen = np.random.default_rng(0).integers(0, 3, (6, 8)).astype(np.uint8)
    full = en.weight_counts(spec, gen)
    monkeypatch.setattr(en, "INNER_LIMIT", 9)
    assert (en.weight_counts(spec, gen) == full).all()


def test_workers_identical():
    spec = gf.make_field(5)
    gen = np.random.default_rng(3).integers(0, 5, (6, 12)).astype(np.uint8)
    assert (en.weight_counts(spec, gen, workers=3) == en.weight_counts(spec, gen, workers=1)).all()


def test_size_guard():
    spec = gf.make_field(7)
    gen = np.zeros((12, 3), dtype=np.uint8)
    with pytest.raises(en.SizeGuardError):
        en.weight_counts(spec, gen)


def test_default_workers(monkeypatch):
    monkeypatch.setenv("QCL_WORKERS", "3")
    assert en.default_workers() == 3
    monkeypatch.delenv("QCL_WORKERS")
    assert en.default_workers() == 1


def test_message_digits():
    assert en.message_digits(3, 3, 5) == [0, 1, 2]
