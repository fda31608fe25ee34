import pytest

from olpkit import io
from olpkit.core import PreconditionError, validate_olg
from olpkit.gen import FAMILIES, MAX_VERTICES, PM3SAT_POOL, gen_corpus, showcase_layout
from olpkit.satgadget import ClauseShape, sat_brute_force, validate_representation


def test_family_listing():
    assert FAMILIES == ("olp-random", "olp-proper", "olp-deg1", "pm3sat-tiny")


def test_unknown_family_rejected():
    with pytest.raises(PreconditionError):
        gen_corpus("olp-giant", 0, 1)
    with pytest.raises(PreconditionError):
        gen_corpus("olp-random", 0, -1)
    with pytest.raises(PreconditionError):
        gen_corpus("olp-random", 0, 1, max_width=0)


def test_empty_corpus():
    assert gen_corpus("olp-random", 0, 0) == []
    assert gen_corpus("pm3sat-tiny", 0, 0) == []


def test_determinism_per_seed():
    for family in FAMILIES[:3]:
        first = [io.emit_olg(g) for g in gen_corpus(family, 42, 12)]
        again = [io.emit_olg(g) for g in gen_corpus(family, 42, 12)]
        assert first == again
    assert gen_corpus("pm3sat-tiny", 42, 12) == gen_corpus("pm3sat-tiny", 42, 12)
    a = [io.emit_olg(g) for g in gen_corpus("olp-random", 1, 20)]
    b = [io.emit_olg(g) for g in gen_corpus("olp-random", 2, 20)]
    assert a != b


def test_olp_random_instances_are_valid_and_small():
    for seed in range(6):
        for g in gen_corpus("olp-random", seed, 15):
            assert validate_olg(g).ok
            assert 1 <= g.num_levels <= 4
            assert len(g.vertices) <= MAX_VERTICES
            assert g.max_width() <= 3
            assert g.max_degree() <= 3


def test_olp_random_respects_caps():
    for g in gen_corpus("olp-random", 5, 25, max_width=2, max_degree=2):
        assert g.max_width() <= 2
        assert g.max_degree() <= 2


def test_olp_proper_spans_one():
    hits = 0
    for g in gen_corpus("olp-proper", 9, 25):
        assert validate_olg(g).ok
        assert g.is_proper()
        hits += len(g.edges)
    assert hits > 0


def test_olp_deg1_degrees():
    hits = 0
    for g in gen_corpus("olp-deg1", 4, 25):
        assert validate_olg(g).ok
        assert all(d <= 1 for d in g.in_degrees().values())
        assert all(d <= 1 for d in g.out_degrees().values())
        hits += len(g.edges)
    assert hits > 0


def test_pm3sat_pool_members_are_valid():
    for inst in PM3SAT_POOL:
        assert validate_representation(inst).ok
        assert len(inst.variables) <= 2
        assert len(inst.clauses) <= 3


def test_pm3sat_tiny_cycles_whole_pool():
    corpus = gen_corpus("pm3sat-tiny", 11, len(PM3SAT_POOL))
    assert sorted(map(repr, corpus)) == sorted(map(repr, PM3SAT_POOL))
    contradiction = next(
        inst for inst in PM3SAT_POOL
        if inst.clauses == (ClauseShape(1, (1,)), ClauseShape(-1, (2,))))
    assert sat_brute_force(contradiction) is None
    assert corpus.count(contradiction) == 1
    longer = gen_corpus("pm3sat-tiny", 11, 20)
    assert longer.count(contradiction) >= 2


def test_showcase_layout_shape():
    inst = showcase_layout()
    assert validate_representation(inst).ok
    assert len(inst.variables) == 5
    assert len(inst.clauses) == 5
    assert all(len(c.legs) == 3 for c in inst.clauses)
    assert {c.y > 0 for c in inst.clauses} == {True, False}
    assert sat_brute_force(inst) is not None
