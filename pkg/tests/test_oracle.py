"""
Oracles, input grids and the equivalence suite.
"""
from itertools import product

import numpy as np
import pytest

from metsort._util import GridError, UnknownArchitecture, WireIndexError
from metsort.metrics import MetricEntry, KeyFormat, validate_batch
from metsort.oracle import (
    EXHAUSTIVE_LIMIT,
    InputGrid,
    full_sort_oracle,
    select_L_smallest_oracle,
    sort_batch,
    select_batch,
    sort_arbitrary_via_sorter,
    parse_profile,
    default_sigma,
    draw_increments,
    equivalence_suite,
)
from metsort.sorters import (
    __archs__, __pruned__, get_sorter, iter_sorters, from_network)
from metsort.sortnet import SortNetwork, Stage, build_pruned_bitonic


def test_select_worked_example(worked_example):
    out = select_L_smallest_oracle(worked_example.entries)
    assert [e.key for e in out] == [1, 2, 2, 3]
    assert [e.payload for e in out] == [0, 2, 3, 4]


def test_oracle_self_consistency():
    rng = np.random.default_rng(0)
    for _ in range(200):
        keys = rng.integers(0, 5, size=8)
        entries = [MetricEntry(int(k), w) for w, k in enumerate(keys)]
        out = select_L_smallest_oracle(entries)
        assert all(a <= b for a, b in zip(out, out[1:]))
        assert set(out) <= set(entries)
        assert full_sort_oracle(entries) == sorted(entries)


def test_oracle_rejects_duplicate_payloads():
    with pytest.raises(WireIndexError):
        full_sort_oracle([MetricEntry(1, 0), MetricEntry(0, 0)])


def test_sort_batch_matches_scalar_oracle():
    grid = InputGrid.random(4, trials=300, seed=2)
    for batch in grid.batches():
        got = sort_batch(batch)
        for row, sorted_row in zip(batch, got):
            assert (np.sort(row) == sorted_row).all()
        assert select_batch(batch).shape == (len(batch), 4)


def test_sort_batch_copies():
    batch = np.array([[3, 1, 2, 0]], dtype=np.int64)
    sort_batch(batch)
    assert batch.tolist() == [[3, 1, 2, 0]]


@pytest.mark.parametrize(
    'L, size',
    [
        (2, 36 * 64),
        (3, 20 * 64),
        (4, 8960),
        (8, 9 * 256),
    ],
)
def test_exhaustive_grid_sizes(L, size):
    grid = InputGrid.exhaustive(L)
    assert grid.size() == size
    assert sum(len(b) for b in grid.batches()) == size
    assert all(validate_batch(b).all() for b in grid.batches())


def test_exhaustive_grid_needs_documented_domain():
    with pytest.raises(GridError):
        InputGrid.exhaustive(16)
    assert InputGrid.exhaustive(16, key_max=0).size() == 1


@pytest.mark.parametrize('L, key_max', [(32, 1), (8, 3), (4, 40)])
def test_exhaustive_grid_limit(L, key_max):
    with pytest.raises(GridError):
        InputGrid.exhaustive(L, key_max=key_max)


def test_exhaustive_grid_streams_in_chunks():
    grid = InputGrid.exhaustive(2)
    sizes = [len(b) for b in grid.batches()]
    assert max(sizes) <= grid.chunk
    assert sum(sizes) == grid.size() <= EXHAUSTIVE_LIMIT

    # mu outermost, increments innermost
    first = next(iter(grid))
    assert first.keys == [0, 0, 0, 0]


def test_random_grid_is_seeded():
    one = np.vstack(list(InputGrid.random(8, trials=100, seed=4).batches()))
    two = np.vstack(list(InputGrid.random(8, trials=100, seed=4).batches()))
    other = np.vstack(list(InputGrid.random(8, trials=100, seed=5).batches()))
    assert one.shape == (100, 16)
    assert (one == two).all()
    assert not (one == other).all()


def test_grid_iterates_structured_lists():
    grid = InputGrid.random(2, trials=5, seed=0)
    lists = list(grid)
    assert len(lists) == 5
    assert all(sl.list_size == 2 for sl in lists)


@pytest.mark.parametrize(
    'profile, parsed',
    [
        ('uniform_full', ('uniform_full', None)),
        ('uniform_small:3', ('uniform_small', 3.0)),
        ('quantized_half_normal:2.5', ('quantized_half_normal', 2.5)),
    ],
)
def test_parse_profile(profile, parsed):
    assert parse_profile(profile) == parsed


@pytest.mark.parametrize(
    'profile',
    ['gaussian', 'uniform_small:x', 'uniform_small:1.5',
     'quantized_half_normal:0'],
)
def test_parse_profile_rejects(profile):
    with pytest.raises(GridError):
        parse_profile(profile)


def test_draw_increments_ranges():
    rng = np.random.default_rng(0)
    fmt = KeyFormat(8)

    small = draw_increments(rng, 'uniform_small:3', (1000,), fmt)
    assert small.min() >= 0 and small.max() <= 3

    zero = draw_increments(rng, 'uniform_small:0', (10,), fmt)
    assert (zero == 0).all()

    half = draw_increments(rng, 'quantized_half_normal', (20_000,), fmt)
    assert half.min() >= 0 and half.max() <= fmt.max
    # mean lands near 2 ** (Q - 3)
    assert abs(half.mean() - 32) < 2
    assert default_sigma(fmt) == pytest.approx(32 * 1.2533, rel=1e-3)


def test_equivalence_exhaustive_l4():
    sorters = list(iter_sorters(4))
    report = equivalence_suite(sorters, InputGrid.exhaustive(4))

    assert report.cases == 8960
    assert report.passed, report.first_mismatch
    assert report.mismatches == {arch: 0 for arch in __archs__}
    assert set(report.exclusion_violations) == set(__archs__) | {'oracle'}
    assert not any(report.exclusion_violations.values())
    assert report.known_table_violations == 0


def test_equivalence_l2_pruned_identity():
    """At L=2 the three pruned sorters agree with each other and the
    oracle on the whole grid.
    """
    grid = InputGrid.exhaustive(2)
    sorters = list(iter_sorters(2, __pruned__))
    report = equivalence_suite(sorters, grid)
    assert report.passed

    for batch in grid.batches():
        outs = [s.select_batch(batch) for s in sorters]
        assert all((out == outs[0]).all() for out in outs[1:])


def test_equivalence_random_l8():
    sorters = list(iter_sorters(8))
    grid = InputGrid.random(8, trials=2000, seed=7)
    report = equivalence_suite(sorters, grid)
    assert report.passed
    assert report.seed == 7


@pytest.mark.slow
@pytest.mark.parametrize('L', [8, 16, 32])
def test_equivalence_random_full_size(L):
    sorters = list(iter_sorters(L))
    report = equivalence_suite(sorters, InputGrid.random(L, 10_000, seed=L))
    assert report.passed


def test_equivalence_catches_broken_network():
    good = build_pruned_bitonic(4)
    # drop the last stage
    broken = SortNetwork(
        good.arch, good.list_size, good.wires, good.stages[:-1])
    report = equivalence_suite(
        [from_network(broken)], InputGrid.exhaustive(4))

    assert not report.passed
    assert report.mismatches['pruned-bitonic'] > 0
    mismatch = report.first_mismatch
    assert mismatch.arch == 'pruned-bitonic'
    assert mismatch.expected == select_L_smallest_oracle(mismatch.input)
    assert mismatch.got != mismatch.expected


def test_equivalence_empty_network_fails():
    net = SortNetwork('custom', 2, 4, (Stage(),))
    report = equivalence_suite([from_network(net)], InputGrid.exhaustive(2))
    assert not report.passed


def test_suite_reports_merge():
    sorters = [get_sorter('radix', 2)]
    one = equivalence_suite(sorters, InputGrid.random(2, 10, seed=0))
    two = equivalence_suite(sorters, InputGrid.random(2, 15, seed=1))
    merged = one.merge(two)
    assert merged.cases == 25
    assert merged.mismatches == {'radix': 0}


def test_iter_sorters_registry_order():
    sorters = list(iter_sorters(4))
    assert [s.arch for s in sorters] == __archs__
    assert all(s is get_sorter(s.arch, 4) for s in sorters)

    picked = list(iter_sorters(8, ['pruned-radix', 'bubble']))
    assert [(s.arch, s.list_size) for s in picked] == [
        ('pruned-radix', 8), ('bubble', 8)]

    with pytest.raises(UnknownArchitecture):
        list(iter_sorters(4, ['odd-even-merge']))


@pytest.mark.parametrize('arch', __pruned__)
def test_sort_arbitrary_via_sorter_exhaustive(arch):
    """Full sort of every 4 value tuple over 1..6 using only an L=4
    smallest-L sorter.
    """
    sorter = get_sorter(arch, 4)
    cases = 0
    for values in product(range(1, 7), repeat=4):
        assert sort_arbitrary_via_sorter(values, sorter, 4) == sorted(values)
        cases += 1
    assert cases == 1296


def test_sort_arbitrary_fewer_values():
    sorter = get_sorter('pruned-radix', 4)
    assert sort_arbitrary_via_sorter([9, 3], sorter, 4) == [3, 9]
    assert sort_arbitrary_via_sorter([5], sorter, 4) == [5]
