from __future__ import annotations

import random

from qvariety.harness import CHECKS, grassmannian_point, milnor_pair, rand_map, rand_set, run_selftest
from qvariety.generators import grassmannian


def test_selftest_passes_for_several_seeds():
    for seed in (1, 2, 7):
        report = run_selftest(seed)
        assert [r["name"] for r in report] == [name for name, _, _ in CHECKS]
        assert all(r["verdict"] and r["passed"] == r["total"] for r in report), report


def test_selftest_subset_and_determinism():
    a = run_selftest(4, ["parse-print", "serialization"])
    assert [r["name"] for r in a] == ["parse-print", "serialization"]
    assert a == run_selftest(4, ["parse-print", "serialization"])


def test_generators_are_seeded():
    assert rand_set(random.Random(3)) == rand_set(random.Random(3))
    assert rand_map(random.Random(3)) == rand_map(random.Random(3))


def test_sample_points_are_members():
    rng = random.Random(0)
    assert grassmannian(3, 2).contains(grassmannian_point(rng, 3, 2))
    x, y = milnor_pair(rng, 2, 3)
    assert len(x) == 3 and len(y) == 4
    assert sum(a * b for a, b in zip(x, y)) == 0
