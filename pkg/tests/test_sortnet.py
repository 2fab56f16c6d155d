"""
Network builders, evaluation, cost and export.
"""
import json
import re
from itertools import product

import numpy as np
import pandas as pd
import pytest

from metsort._util import NetworkError, StructuredContractError
from metsort.metrics import MetricEntry, make_structured, pack, to_row
from metsort.oracle import (
    InputGrid,
    full_sort_oracle,
    select_L_smallest_oracle,
    select_batch,
    sort_batch,
)
from metsort.sortnet import (
    CasUnit,
    Direction,
    SortNetwork,
    Stage,
    build_bitonic,
    build_pruned_bitonic,
    build_full_bubble,
    build_simplified_bubble,
    build_network,
    check_network,
    evaluate,
    evaluate_batch,
    cost,
    cost_table,
    format_table,
    export_network,
    import_network,
    to_dot,
)

SIZES = [2, 4, 8, 16, 32]

COUNTS = {
    'bitonic': (build_bitonic, [3, 6, 10, 15, 21], [6, 24, 80, 240, 672]),
    'pruned-bitonic': (
        build_pruned_bitonic, [2, 5, 9, 14, 20], [1, 9, 46, 169, 526]),
    'bubble': (build_full_bubble, [2, 6, 14, 30, 62], [2, 12, 56, 240, 992]),
    'simplified-bubble': (
        build_simplified_bubble, [1, 3, 7, 15, 31], [1, 6, 28, 120, 496]),
}


@pytest.mark.parametrize('arch', list(COUNTS))
def test_count_identities(arch):
    builder, stages, cas = COUNTS[arch]
    for L, s, c in zip(SIZES, stages, cas):
        net = builder(L)
        assert (net.num_stages, net.num_cas) == (s, c), (arch, L)

        report = cost(net)
        assert report.matches
        assert (report.formula_stages, report.formula_cas) == (s, c)


@pytest.mark.parametrize('builder', [build_bitonic, build_pruned_bitonic])
def test_bitonic_needs_power_of_two(builder):
    with pytest.raises(NetworkError):
        builder(3)
    with pytest.raises(NetworkError):
        builder(1)


@pytest.mark.parametrize('L', [2, 4, 8, 16, 32])
def test_stages_are_wire_disjoint(L):
    for arch in COUNTS:
        net = build_network(arch, L)
        check_network(net)
        for stage in net.stages:
            touched = [w for u in stage.cas for w in u[:2]]
            assert len(touched) == len(set(touched))


def test_bubble_stage_locality():
    L = 8
    for t, stage in enumerate(build_full_bubble(L).stages, start=1):
        assert all(u.lo >= t for u in stage.cas)
    for t, stage in enumerate(build_simplified_bubble(L).stages, start=1):
        assert all(t <= u.lo and u.hi <= 2 * L - 1 - t for u in stage.cas)


def _entry_path(net, wire):
    '''Stage by stage position of the entry entering on ``wire`` as
    long as no unit compares it.

    '''
    pos = wire
    for index, stage in enumerate(net.stages):
        for a, b in stage.route:
            if pos in (a, b):
                pos = b if pos == a else a
        yield index, stage, pos


@pytest.mark.parametrize('L', SIZES)
def test_pruned_bitonic_never_compares_edge_entries(L):
    net = build_pruned_bitonic(L)
    for wire in (0, 2 * L - 1):
        for index, stage, pos in _entry_path(net, wire):
            assert all(pos not in (u.lo, u.hi) for u in stage.cas), \
                (wire, index)


@pytest.mark.parametrize('L', SIZES)
def test_pruned_bitonic_routes_are_disjoint_swaps(L):
    net = build_pruned_bitonic(L)
    for stage in net.stages:
        mentioned = [w for u in stage.cas for w in u[:2]]
        mentioned += [w for pair in stage.route for w in pair]
        assert len(mentioned) == len(set(mentioned))


def test_pruned_bitonic_export_matches_oracle():
    '''The exported network, read back with routes as swaps, selects
    the ``L`` smallest on the whole exhaustive grid.
    '''
    net = import_network(export_network(build_pruned_bitonic(4), 'json'))
    for batch in InputGrid.exhaustive(4).batches():
        out = evaluate_batch(net, batch)[:, :4]
        assert (out == select_batch(batch)).all()


def test_bitonic_worked_example(worked_example):
    out = evaluate(build_bitonic(4), worked_example.entries)
    assert [e.key for e in out] == [1, 2, 2, 3, 4, 4, 6, 6]
    assert out == full_sort_oracle(worked_example.entries)


@pytest.mark.parametrize(
    'builder', [build_pruned_bitonic, build_simplified_bubble])
def test_partial_worked_example(builder, worked_example):
    out = evaluate(builder(4), worked_example.entries)[:4]
    assert [e.key for e in out] == [1, 2, 2, 3]
    assert [e.payload for e in out] == [0, 2, 3, 4]


def test_full_bubble_sorts_structured(worked_example):
    out = evaluate(build_full_bubble(4), worked_example.entries)
    assert out == full_sort_oracle(worked_example.entries)


def test_bitonic_sorts_arbitrary_input():
    rng = np.random.default_rng(3)
    for L in (2, 4, 8):
        net = build_bitonic(L)
        for _ in range(200):
            keys = rng.integers(0, 8, size=2 * L)
            entries = [MetricEntry(int(k), w) for w, k in enumerate(keys)]
            assert evaluate(net, entries) == full_sort_oracle(entries)


FULL_SORTERS = ['bitonic', 'bubble']


@pytest.mark.parametrize('arch', FULL_SORTERS)
def test_full_sort_exhaustive_l4(arch):
    net = build_network(arch, 4)
    cases = 0
    for batch in InputGrid.exhaustive(4).batches():
        assert (evaluate_batch(net, batch) == sort_batch(batch)).all()
        cases += len(batch)
    assert cases == 8960


@pytest.mark.parametrize('L', [8, 16, 32])
@pytest.mark.parametrize('arch', FULL_SORTERS)
def test_full_sort_random(arch, L):
    net = build_network(arch, L)
    for batch in InputGrid.random(L, trials=10_000, seed=L).batches():
        assert (evaluate_batch(net, batch) == sort_batch(batch)).all()


def test_bitonic_sorts_every_l2_input():
    keys = np.array(list(product(range(4), repeat=4)))
    batch = pack(keys, np.broadcast_to(np.arange(4), keys.shape))
    out = evaluate_batch(build_bitonic(2), batch)
    assert len(out) == 256
    assert (out == sort_batch(batch)).all()


@pytest.mark.parametrize('L', [8, 16, 32])
def test_bitonic_sorts_random_unstructured(L):
    rng = np.random.default_rng(L)
    keys = rng.integers(0, 255, size=(10_000, 2 * L), endpoint=True)
    batch = pack(keys, np.broadcast_to(np.arange(2 * L), keys.shape))
    out = evaluate_batch(build_bitonic(L), batch)
    assert (out == sort_batch(batch)).all()


def test_sorted_input_passes_through():
    L = 4
    entries = [MetricEntry(k, k) for k in range(2 * L)]
    for arch in COUNTS:
        out = evaluate(build_network(arch, L), entries)
        assert out[:L] == entries[:L]


def test_evaluate_preserves_payloads(worked_example):
    for arch in COUNTS:
        out = evaluate(build_network(arch, 4), worked_example.entries)
        assert sorted(e.payload for e in out) == list(range(8))


def test_evaluate_rejects_unstructured_for_pruned():
    bad = [MetricEntry(k, w) for w, k in enumerate([3, 1, 4, 5])]
    with pytest.raises(StructuredContractError):
        evaluate(build_pruned_bitonic(2), bad)

    # full bitonic does not care
    assert evaluate(build_bitonic(2), bad) == full_sort_oracle(bad)

    # unless checks are off
    out = evaluate_batch(build_pruned_bitonic(2), to_row(bad), check=False)
    assert out.shape == (1, 4)


def test_evaluate_rejects_wrong_width(worked_example):
    with pytest.raises(NetworkError):
        evaluate(build_bitonic(2), worked_example.entries)


def test_stage_snapshot_semantics():
    # units and swaps of a stage all read the stage input
    net = SortNetwork(
        arch='custom', list_size=2, wires=4,
        stages=(
            Stage(cas=(CasUnit(0, 1, Direction.DESC),), route=((2, 3),)),
            Stage(cas=(CasUnit(0, 2), CasUnit(1, 3, Direction.DESC))),
        ),
    )
    check_network(net)
    entries = [MetricEntry(k, w) for w, k in enumerate([1, 3, 4, 2])]
    out = evaluate(net, entries)
    # [3, 1, 2, 4] after the first stage
    assert [e.key for e in out] == [2, 4, 3, 1]
    assert [e.payload for e in out] == [3, 2, 1, 0]


@pytest.mark.parametrize(
    'stage',
    [
        Stage(cas=(CasUnit(0, 1), CasUnit(1, 2))),
        Stage(cas=(CasUnit(2, 1),)),
        Stage(cas=(CasUnit(0, 4),)),
        Stage(route=((0, 1), (1, 2))),
        Stage(route=((1, 1),)),
        Stage(route=((3, 4),)),
        Stage(cas=(CasUnit(0, 1),), route=((1, 2),)),
    ],
)
def test_check_network_rejects(stage):
    net = SortNetwork('custom', 2, 4, (stage,))
    with pytest.raises(NetworkError):
        check_network(net)


def test_random_partial_equivalence():
    rng = np.random.default_rng(11)
    for L in (4, 8):
        for _ in range(100):
            mu = np.sort(rng.integers(0, 20, size=L))
            a = rng.integers(0, 6, size=L)
            sl = make_structured(mu.tolist(), a.tolist())
            expect = select_L_smallest_oracle(sl.entries)
            for arch in COUNTS:
                out = evaluate(build_network(arch, L), sl.entries)
                assert out[:L] == expect, arch


def test_cost_table_crossover_and_reduction():
    df = cost_table(SIZES)
    assert df['match'].all()

    simplified = df[df.arch == 'simplified-bubble'].set_index('L')
    assert simplified.loc[[2, 4, 8], 'crossover'].tolist() == ['<'] * 3
    assert simplified.loc[[16, 32], 'crossover'].tolist() == ['>='] * 2

    rows = df.set_index(['arch', 'L'])
    assert rows.loc[('pruned-bitonic', 32), 'stages'] == 20
    assert rows.loc[('pruned-bitonic', 32), 'cas'] == 526
    assert rows.loc[('radix', 16), 'cas'] == 496
    assert rows.loc[('simplified-bubble', 16), 'stages'] == 15
    assert rows.loc[('simplified-bubble', 16), 'cas'] == 120
    assert rows.loc[('pruned-radix', 4), 'reduction'] == round(9 / 28, 4)
    assert rows.loc[('pruned-bitonic', 4), 'stage_reduction'] == round(5 / 6, 4)
    assert pd.isna(rows.loc[('pruned-radix', 4), 'stage_reduction'])


def test_cost_table_skips_bitonic_at_odd_sizes():
    df = cost_table([3], ['bitonic', 'bubble'])
    assert df.arch.tolist() == ['bubble']

    with pytest.raises(NetworkError):
        cost_table([3], ['bitonic'])


def test_format_table_markdown():
    text = format_table(cost_table([2], ['bubble']), 'md')
    lines = text.splitlines()
    assert lines[0].startswith('| arch | L | stages | cas |')
    assert lines[2].startswith('| bubble | 2 | 2 | 2 |')


def test_cost_unknown_arch_is_measured_only():
    net = SortNetwork('custom', 2, 4, (Stage(cas=(CasUnit(0, 1),)),))
    report = cost(net)
    assert not report.known
    assert report.matches
    assert report.measured_cas == 1


@pytest.mark.parametrize('arch', list(COUNTS))
def test_json_round_trip(arch):
    net = build_network(arch, 4)
    assert import_network(export_network(net, 'json')) == net


def test_json_schema_pruned_l2():
    doc = json.loads(export_network(build_pruned_bitonic(2), 'json'))
    assert doc['arch'] == 'pruned-bitonic'
    assert doc['L'] == 2
    assert doc['wires'] == 4
    assert len(doc['stages']) == 2
    assert sum(len(s['cas']) for s in doc['stages']) == 1


@pytest.mark.parametrize(
    'text',
    [
        'not json',
        '{"arch": "bitonic", "L": 2, "wires": 4}',
        '{"arch": "x", "L": 2, "wires": 4,'
        ' "stages": [{"cas": [{"lo": 0, "hi": 9}]}]}',
    ],
)
def test_import_network_rejects(text):
    with pytest.raises(NetworkError):
        import_network(text)


def test_dot_export():
    dot = to_dot(build_simplified_bubble(32))
    assert dot.startswith('digraph "simplified-bubble_L32" {')
    assert dot.rstrip().endswith('}')
    assert len(re.findall(r'subgraph cluster_stage_\d+ \{', dot)) == 31
    assert dot.count('{') == dot.count('}')

    with pytest.raises(NetworkError):
        export_network(build_bitonic(2), 'svg')
