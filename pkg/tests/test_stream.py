"""
Closed loop metric stream.
"""
import numpy as np
import pytest
from pydantic import ValidationError

from metsort.sorters import __pruned__
from metsort.stream import (
    StreamConfig,
    StreamState,
    apply_increments,
    step,
    run_stream,
    trajectory_frame,
)


def test_worked_example_step():
    config = StreamConfig(list_size=4)
    state = StreamState(step=0, mu=(1, 2, 3, 4), lineage=((),) * 4)
    new, check = apply_increments(state, [5, 0, 1, 2], config)

    assert new.mu == (1, 2, 2, 3)
    assert new.step == 1
    assert check.ok
    # survivors came from wires 0, 2, 3, 4
    assert new.lineage == (((0, 0),), ((0, 2),), ((0, 3),), ((0, 4),))


def test_zero_increments_from_start():
    config = StreamConfig(list_size=4, profile='uniform_small:0')
    new, check = apply_increments(StreamState.initial(4), [0] * 4, config)
    assert new.mu == (0, 0, 0, 0)
    assert check.ok
    # ties resolve by wire index
    assert [path[-1][1] for path in new.lineage] == [0, 1, 2, 3]


def test_saturated_state_stays_saturated():
    config = StreamConfig(list_size=4)
    state = StreamState(step=0, mu=(255,) * 4, lineage=((),) * 4)
    new, check = apply_increments(state, [7] * 4, config)
    assert new.mu == (255,) * 4
    assert check.ok


def test_lineage_follows_parent_paths():
    config = StreamConfig(list_size=2)
    state = StreamState.initial(2)

    # both survivors extend path 0, path 1 dies
    state, _ = apply_increments(state, [0, 9], config)
    assert state.lineage == (((0, 0),), ((0, 1),))

    state, _ = apply_increments(state, [1, 5], config)
    # wires 0 and 2 survive: one child of each previous path
    assert state.mu == (0, 0)
    assert state.lineage == (
        ((0, 0), (1, 0)),
        ((0, 1), (1, 2)),
    )


def test_single_step_equals_run():
    config = StreamConfig(list_size=4, steps=1, seed=3)
    summary = run_stream(config)

    state = step(StreamState.initial(4), config, np.random.default_rng(3))
    assert summary.final_mu == list(state.mu)
    assert summary.steps_run == 1


def test_run_stream_is_deterministic():
    config = StreamConfig(list_size=8, steps=200, seed=11)
    one = run_stream(config)
    two = run_stream(config)
    assert one == two
    assert one.passed


@pytest.mark.parametrize('L', [4, 8, 16])
def test_stream_closure_and_interchangeability(L):
    summaries = [
        run_stream(
            StreamConfig(list_size=L, steps=1000, seed=L, arch=arch),
            record=True,
        )
        for arch in __pruned__
    ]
    for summary in summaries:
        assert summary.passed
        assert all(summary.structured)
        assert all(summary.oracle_agrees)
        assert summary.min_mu_monotone

    first = summaries[0]
    for other in summaries[1:]:
        assert other.trajectory == first.trajectory
        assert other.lineage_digest == first.lineage_digest


def test_no_check_skips_oracle():
    summary = run_stream(StreamConfig(list_size=4, steps=20, check=False))
    assert summary.oracle_agrees == []
    assert len(summary.structured) == 20
    assert summary.passed


def test_trajectory_frame():
    summary = run_stream(StreamConfig(list_size=4, steps=5), record=True)
    df = trajectory_frame(summary)
    assert list(df.columns) == ['step', 'mu_0', 'mu_1', 'mu_2', 'mu_3']
    assert len(df) == 6
    assert df.iloc[0].tolist() == [0, 0, 0, 0, 0]

    with pytest.raises(ValueError):
        trajectory_frame(run_stream(StreamConfig(list_size=4, steps=1)))


@pytest.mark.parametrize(
    'kwargs',
    [
        {'list_size': 1},
        {'list_size': 4, 'steps': 0},
        {'list_size': 4, 'profile': 'gaussian'},
        {'list_size': 4, 'arch': 'quicksort'},
    ],
)
def test_config_validation(kwargs):
    with pytest.raises(ValidationError):
        StreamConfig(**kwargs)
