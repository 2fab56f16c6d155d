# metsort: metric sorting gear for list decoders
# Copyright (C) 2024-present  metsort contributors

# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU Affero General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.

# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU Affero General Public License for more details.

# You should have received a copy of the GNU Affero General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.

"""
Closed loop metric stream: extend every surviving path two ways, sort,
keep the ``L`` best, repeat.

"""
import hashlib
import json
from typing import Optional, Sequence

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field, field_validator

from ..log import get_logger
from .._profile import timeit
from .._util import GridError
from ..metrics import (
    KeyFormat,
    make_structured,
    validate_structured,
)
from ..oracle import draw_increments, parse_profile, select_L_smallest_oracle
from ..sorters import __archs__, get_sorter

log = get_logger(__name__)

# (step, payload) per surviving decision
Lineage = tuple[tuple[int, int], ...]


class StreamConfig(BaseModel):
    list_size: int = Field(ge=2)
    q_bits: int = Field(default=8, ge=1, le=32)
    steps: int = Field(default=1000, ge=1)
    profile: str = 'uniform_small:3'
    seed: int = 0
    arch: str = 'pruned-bitonic'

    # cross check every step against the oracle
    check: bool = True

    @field_validator('profile')
    @classmethod
    def _known_profile(cls, value: str) -> str:
        try:
            parse_profile(value)
        except GridError as err:
            raise ValueError(str(err))
        return value

    @field_validator('arch')
    @classmethod
    def _known_arch(cls, value: str) -> str:
        if value not in __archs__:
            raise ValueError(f'unknown architecture {value!r}')
        return value

    @property
    def fmt(self) -> KeyFormat:
        return KeyFormat(self.q_bits)


class StreamState(BaseModel):
    step: int = 0
    mu: tuple[int, ...]
    lineage: tuple[Lineage, ...]

    @classmethod
    def initial(cls, list_size: int) -> 'StreamState':
        '''Decoder start: every path at metric zero, no history.

        '''
        return cls(mu=(0,) * list_size, lineage=((),) * list_size)


class StepCheck(BaseModel):
    structured: bool
    mu_sorted: bool
    oracle_agrees: Optional[bool] = None

    @property
    def ok(self) -> bool:
        return (
            self.structured
            and self.mu_sorted
            and self.oracle_agrees is not False
        )


def apply_increments(
    state: StreamState,
    a: Sequence[int],
    config: StreamConfig,
) -> tuple[StreamState, StepCheck]:
    '''Extend, sort and keep the survivors for given increments.

    '''
    fmt = config.fmt
    sorter = get_sorter(config.arch, config.list_size)
    candidates = make_structured(state.mu, a, fmt)
    structured = bool(validate_structured(candidates.entries))

    survivors = sorter(candidates.entries)
    agrees = None
    if config.check:
        agrees = survivors == select_L_smallest_oracle(candidates.entries)

    mu = tuple(e.key for e in survivors)
    lineage = tuple(
        # payload 2l / 2l + 1 extends old path l
        state.lineage[e.payload // 2] + ((state.step, e.payload),)
        for e in survivors
    )
    check = StepCheck(
        structured=structured,
        mu_sorted=all(x <= y for x, y in zip(mu, mu[1:])),
        oracle_agrees=agrees,
    )
    # lineages only ever grow, skip re-validating them
    new = StreamState.model_construct(
        step=state.step + 1, mu=mu, lineage=lineage)
    return new, check


def _advance(
    state: StreamState,
    config: StreamConfig,
    rng: np.random.Generator,
) -> tuple[StreamState, StepCheck]:
    a = draw_increments(rng, config.profile, (config.list_size,), config.fmt)
    return apply_increments(state, a.tolist(), config)


def step(
    state: StreamState,
    config: StreamConfig,
    rng: np.random.Generator,
) -> StreamState:
    '''One metric update and sort.

    '''
    new, _ = _advance(state, config, rng)
    return new


def lineage_digest(lineage: tuple[Lineage, ...]) -> str:
    blob = json.dumps([list(map(list, path)) for path in lineage])
    return hashlib.sha256(blob.encode()).hexdigest()


class StreamSummary(BaseModel):
    config: StreamConfig
    steps_run: int = 0

    # per step
    structured: list[bool] = []
    oracle_agrees: list[bool] = []

    mu_sorted: bool = True
    min_mu_monotone: bool = True
    final_mu: list[int] = []
    lineage_digest: str = ''

    # mu after each step, step 0 being the initial state
    trajectory: Optional[list[list[int]]] = None

    @property
    def violations(self) -> int:
        return (
            self.structured.count(False)
            + self.oracle_agrees.count(False)
        )

    @property
    def passed(self) -> bool:
        return (
            not self.violations
            and self.mu_sorted
            and self.min_mu_monotone
        )


@timeit
def run_stream(
    config: StreamConfig,
    record: bool = False,
) -> StreamSummary:
    rng = np.random.default_rng(config.seed)
    state = StreamState.initial(config.list_size)
    summary = StreamSummary(config=config)
    trajectory = [list(state.mu)] if record else None

    for _ in range(config.steps):
        prev_min = state.mu[0]
        state, check = _advance(state, config, rng)

        summary.structured.append(check.structured)
        if check.oracle_agrees is not None:
            summary.oracle_agrees.append(check.oracle_agrees)
        summary.mu_sorted &= check.mu_sorted
        summary.min_mu_monotone &= min(state.mu) >= prev_min

        if not check.ok:
            log.warning(f'Step {state.step}: {check}')
        if trajectory is not None:
            trajectory.append(list(state.mu))

    summary.steps_run = state.step
    summary.final_mu = list(state.mu)
    summary.lineage_digest = lineage_digest(state.lineage)
    summary.trajectory = trajectory

    log.info(
        f'{config.arch} L={config.list_size}: {summary.steps_run} steps,'
        f' {summary.violations} violations, final mu {summary.final_mu}')
    return summary


def trajectory_frame(summary: StreamSummary) -> pd.DataFrame:
    if summary.trajectory is None:
        raise ValueError('Stream was run without recording a trajectory')

    L = summary.config.list_size
    df = pd.DataFrame(
        summary.trajectory,
        columns=[f'mu_{l}' for l in range(L)],
    )
    df.insert(0, 'step', range(len(df)))
    return df
