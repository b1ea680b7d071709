"""Fixtures, random module generation, theorem suites."""

import pytest

from koszulkit.corpus import (
    FIXTURE_NAMES,
    build_fixture,
    module_killed_by,
    random_module,
    theorem_suite,
)
from koszulkit.filtration import LinearIdeal
from koszulkit.resolution import resolve
from koszulkit.quotient import hilbert_series


def test_fixture_catalog():
    for name in FIXTURE_NAMES:
        f = build_fixture(name)
        assert f.name == name
        assert f.note
    with pytest.raises(ValueError, match="unknown fixture"):
        build_fixture("nope")


def test_crv26_expansion():
    f = build_fixture("crv26")
    h = hilbert_series(f.ring, 6)
    assert list(h.expansion) == [1, 3, 2, 1, 1, 1, 1]


def test_ci2_tags():
    f = build_fixture("ci2")
    assert f.tags["koszul"] and f.tags["fitzgerald"]
    assert f.tags["conca"] == (1, 0)


def test_nk3_tag():
    assert build_fixture("nk3").tags["non_koszul"]


def test_random_module_deterministic():
    ring = build_fixture("ci2").ring
    m1 = random_module(ring, 2, 2, 17)
    m2 = random_module(ring, 2, 2, 17)
    assert m1.shifts == m2.shifts
    assert [
        [c.terms for c in col.components] for col in m1.columns
    ] == [[c.terms for c in col.components] for col in m2.columns]
    m3 = random_module(ring, 2, 2, 18)
    assert (
        [[c.terms for c in col.components] for col in m1.columns]
        != [[c.terms for c in col.components] for col in m3.columns]
        or m1.shifts != m3.shifts
    )


def test_random_module_rank_validation():
    ring = build_fixture("ci2").ring
    with pytest.raises(ValueError):
        random_module(ring, 0, 2, 1)


def test_random_modules_feed_resolve():
    # fuzz invariant: every sampled presentation resolves without errors
    ring = build_fixture("ci2").ring
    for seed in range(50):
        m = random_module(ring, 1 + seed % 3, 2, seed)
        res = resolve(m, 3, 5)
        assert len(res.steps) == 3
        assert m.generation_degrees() in ((), (0,))


def test_module_killed_by_kills():
    ring = build_fixture("ci2").ring
    x_ideal = LinearIdeal.from_vectors([(1, 0)], 2, 5)
    for seed in range(5):
        m = module_killed_by(ring, x_ideal, 2, 2, seed)
        if m.is_zero():
            continue
        assert m.annihilated_by(ring.linear_form((1, 0)))


def test_suite_reg_ci2():
    rep = theorem_suite("reg", "ci2", 1)
    assert rep.passed
    assert rep.suite == "reg" and rep.fixture == "ci2"
    ids = [a.id for a in rep.assertions]
    assert sum(i.startswith("xM0-koszul") for i in ids) == 10
    assert sum(i.startswith("reg-le-1") for i in ids) == 10
    assert sum(i.startswith("mM-1-linear") for i in ids) == 3
    assert sum(i.startswith("quotient-koszul") for i in ids) == 5


def test_suite_minmult_mm1():
    rep = theorem_suite("minmult", "mm1", 1)
    assert rep.passed
    ids = [a.id for a in rep.assertions]
    assert "reduction-clause" in ids and "flag-valid" in ids
    assert sum(i.startswith("JM0-koszul") for i in ids) == 5


def test_suite_fitz_both_fixtures():
    for fixture in ("ci2", "fitz3"):
        rep = theorem_suite("fitz", fixture, 1)
        assert rep.passed, [a.id for a in rep.assertions if not a.passed]
        ids = [a.id for a in rep.assertions]
        assert sum(i.startswith("annx-killed-koszul") for i in ids) == 10
        assert sum(i.startswith("xM-1-linear") for i in ids) == 10
        assert sum(i.startswith("reg-le-1") for i in ids) == 10


def test_suite_hypothesis_mismatch():
    with pytest.raises(ValueError, match="no Conca-generator tag"):
        theorem_suite("reg", "nk3", 1)
    with pytest.raises(ValueError, match="no Fitzgerald tag"):
        theorem_suite("fitz", "nk3", 1)
    with pytest.raises(ValueError, match="unknown suite"):
        theorem_suite("bogus", "ci2", 1)


def test_suite_report_json_schema():
    rep = theorem_suite("minmult", "mm1", 3)
    doc = rep.to_json()
    assert set(doc) == {"suite", "fixture", "seed", "bounds", "assertions"}
    assert doc["bounds"] == {"imax": 5, "dmax": 8}
    for a in doc["assertions"]:
        assert set(a) <= {"id", "pass", "witness"}


def test_suite_reproducible():
    a = theorem_suite("reg", "ci2", 5).to_json()
    b = theorem_suite("reg", "ci2", 5).to_json()
    assert a == b
