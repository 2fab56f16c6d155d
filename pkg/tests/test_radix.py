"""
Radix-2L rank/select sorters.
"""
import numpy as np
import pytest

from metsort._util import NetworkError, StructuredContractError
from metsort.metrics import MetricEntry, make_structured, structured_batch
from metsort.oracle import select_L_smallest_oracle
from metsort import radix


@pytest.mark.parametrize(
    'L, full, pruned',
    [
        (2, 6, 1),
        (4, 28, 9),
        (8, 120, 49),
        (16, 496, 225),
        (32, 2016, 961),
    ],
)
def test_comparator_counts(L, full, pruned):
    assert radix.plan_full(L).num_comparators == full
    assert radix.plan_pruned(L).num_comparators == pruned
    assert radix.plan_cost(radix.plan_pruned(L)).matches


def test_pruned_pairs_l4():
    plan = radix.plan_pruned(4)
    assert set(plan.pairs) == {
        (1, 2), (1, 3), (1, 4), (1, 5), (1, 6),
        (3, 4), (3, 5), (3, 6),
        (5, 6),
    }
    assert plan.candidates == tuple(range(7))
    assert plan.mux_sizes == [1, 6, 6, 6]
    assert all(i % 2 == 0 for i, _ in plan.known_table)


def test_pruned_pairs_l2():
    assert radix.plan_pruned(2).pairs == ((1, 2),)


def test_select_worked_example(worked_example):
    out = radix.select(radix.plan_pruned(4), worked_example.entries)
    assert [e.key for e in out] == [1, 2, 2, 3]
    assert [e.payload for e in out] == [0, 2, 3, 4]

    assert radix.select(radix.plan_full(4), worked_example.entries) == out


def test_full_plan_arbitrary_keys():
    entries = [
        MetricEntry(k, w) for w, k in enumerate([9, 1, 4, 4, 0, 3, 7, 2])]
    out = radix.select(radix.plan_full(4), entries)
    assert [e.key for e in out] == [0, 1, 2, 3]


def test_all_equal_keys_tie_break():
    sl = make_structured([5] * 4, [0] * 4)
    for plan in (radix.plan_full(4), radix.plan_pruned(4)):
        out = radix.select(plan, sl.entries)
        assert [e.payload for e in out] == [0, 1, 2, 3]


def test_ranks_are_a_permutation(worked_example):
    ranks = radix.rank_vector(radix.plan_full(4), worked_example.entries)
    assert sorted(ranks) == list(range(8))

    ranks = radix.rank_vector(radix.plan_pruned(4), worked_example.entries)
    assert sorted(ranks) == list(range(7))
    assert ranks[0] == 0


def test_pruned_plan_requires_structure():
    bad = [MetricEntry(k, w) for w, k in enumerate([3, 1, 4, 5])]
    with pytest.raises(StructuredContractError):
        radix.select(radix.plan_pruned(2), bad)
    assert radix.select(radix.plan_full(2), bad) == (
        select_L_smallest_oracle(bad))


def test_width_mismatch(worked_example):
    with pytest.raises(NetworkError):
        radix.select(radix.plan_full(2), worked_example.entries)
    with pytest.raises(NetworkError):
        radix.rank_vector(radix.plan_full(2), worked_example.entries)


@pytest.mark.parametrize('L', [4, 8, 16])
def test_full_and_pruned_agree(L):
    rng = np.random.default_rng(L)
    mu = np.sort(rng.integers(0, 255, size=(1000, L), endpoint=True), axis=1)
    a = rng.integers(0, 16, size=(1000, L), endpoint=True)
    batch = structured_batch(mu, a)

    full = radix.select_batch(radix.plan_full(L), batch)
    pruned = radix.select_batch(radix.plan_pruned(L), batch)
    assert (full == pruned).all()
    assert radix.audit_known_table(radix.plan_pruned(L), batch) == 0


def test_audit_catches_broken_contract():
    bad = np.array([[3, 1, 4, 5]], dtype=np.int64)
    assert radix.audit_known_table(radix.plan_pruned(2), bad) > 0
    assert radix.audit_known_table(radix.plan_full(2), bad) == 0


def test_plan_json_round_trip():
    for arch, tag in radix.PLAN_TAGS.items():
        plan = radix.get_plan(arch, 4)
        text = radix.export_plan(plan)
        assert f'"{tag}"' in text
        assert radix.import_plan(text) is plan


@pytest.mark.parametrize(
    'text',
    [
        '{"arch": "bitonic", "L": 4, "pairs": []}',
        '{"arch": "radix-pruned", "L": 2, "pairs": [[0, 1]]}',
        '{"arch": "radix", "L": 2}',
    ],
)
def test_import_plan_rejects(text):
    with pytest.raises(NetworkError):
        radix.import_plan(text)


def test_unknown_plan():
    with pytest.raises(NetworkError):
        radix.get_plan('bubble', 4)
    with pytest.raises(NetworkError):
        radix.plan_full(1)
