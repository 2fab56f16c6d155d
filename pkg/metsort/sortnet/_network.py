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
Sorting network IR and the stage parallel evaluator.

A network is an ordered list of stages over ``W = 2L`` wires. Each
stage holds compare-and-select units and an optional static route of
unconditional wire swaps. No wire appears in more than one unit or
swap of a stage so everything in a stage reads the same snapshot and
the evaluation order inside a stage is irrelevant.

"""
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple, Sequence

import numpy as np

from ..log import get_logger
from .._util import NetworkError
from ..metrics import (
    MetricEntry,
    to_row,
    to_entries,
    require_structured,
)

log = get_logger(__name__)


class Direction(str, Enum):
    ASC = 'asc'  # smaller entry -> lo
    DESC = 'desc'  # smaller entry -> hi


class CasUnit(NamedTuple):
    lo: int
    hi: int
    direction: Direction = Direction.ASC


# disjoint wire pairs exchanged unconditionally
Route = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class Stage:
    cas: tuple[CasUnit, ...] = ()
    route: Route = ()

    @property
    def wires(self) -> set[int]:
        touched = set()
        for unit in self.cas:
            touched.update((unit.lo, unit.hi))
        for pair in self.route:
            touched.update(pair)
        return touched

    def permutation(self, wires: int) -> np.ndarray:
        '''Gather index array: ``routed = x[..., perm]``.

        '''
        perm = np.arange(wires)
        for a, b in self.route:
            perm[a], perm[b] = b, a
        return perm


# architectures whose inputs must satisfy the structured contract
STRUCTURED_ARCHS = {
    'pruned-bitonic',
    'bubble',
    'simplified-bubble',
}

# architectures which only guarantee the first ``L`` output wires
PARTIAL_ARCHS = {
    'pruned-bitonic',
    'simplified-bubble',
}


@dataclass(frozen=True)
class SortNetwork:
    arch: str
    list_size: int
    wires: int
    stages: tuple[Stage, ...] = field(default_factory=tuple)

    @property
    def num_stages(self) -> int:
        return len(self.stages)

    @property
    def num_cas(self) -> int:
        return sum(len(stage.cas) for stage in self.stages)

    @property
    def requires_structured(self) -> bool:
        return self.arch in STRUCTURED_ARCHS

    @property
    def partial(self) -> bool:
        return self.arch in PARTIAL_ARCHS

    def units(self):
        '''Iterate ``(stage_index, CasUnit)`` over the whole network.

        '''
        for index, stage in enumerate(self.stages):
            for unit in stage.cas:
                yield index, unit


def check_network(net: SortNetwork) -> None:
    '''Raise ``NetworkError`` unless every stage is wire disjoint across
    its units and route swaps and every wire index is in range.

    '''
    if net.wires != 2 * net.list_size:
        raise NetworkError(
            f'{net.arch}: {net.wires} wires for L={net.list_size}')

    for index, stage in enumerate(net.stages):
        seen = set()
        for unit in stage.cas:
            lo, hi, direction = unit
            if not 0 <= lo < hi < net.wires:
                raise NetworkError(
                    f'Stage {index}: bad CAS wires ({lo}, {hi})')
            if lo in seen or hi in seen:
                raise NetworkError(
                    f'Stage {index}: wire touched twice by ({lo}, {hi})')
            if not isinstance(direction, Direction):
                raise NetworkError(
                    f'Stage {index}: bad CAS direction {direction!r}')
            seen.update((lo, hi))

        for a, b in stage.route:
            if a == b or not (0 <= a < net.wires and 0 <= b < net.wires):
                raise NetworkError(f'Stage {index}: bad swap ({a}, {b})')
            if a in seen or b in seen:
                raise NetworkError(
                    f'Stage {index}: wire touched twice by swap ({a}, {b})')
            seen.update((a, b))


def evaluate_batch(
    net: SortNetwork,
    packed: np.ndarray,
    check: bool = True,
) -> np.ndarray:
    '''Run the network over a ``(n, W)`` batch of packed entries.

    Returns a new array with the final wire contents per row.

    '''
    x = np.array(np.atleast_2d(packed), dtype=np.int64)
    if x.shape[1] != net.wires:
        raise NetworkError(
            f'{net.arch} has {net.wires} wires, input rows have'
            f' {x.shape[1]} entries')

    if check and net.requires_structured:
        require_structured(x)

    for stage in net.stages:
        if stage.route:
            x = x[:, stage.permutation(net.wires)]

        if not stage.cas:
            continue

        lo = np.array([u.lo for u in stage.cas])
        hi = np.array([u.hi for u in stage.cas])
        desc = np.array([u.direction is Direction.DESC for u in stage.cas])

        a, b = x[:, lo], x[:, hi]
        small = np.minimum(a, b)
        large = np.maximum(a, b)
        x[:, lo] = np.where(desc, large, small)
        x[:, hi] = np.where(desc, small, large)

    return x


def evaluate(
    net: SortNetwork,
    entries: Sequence[MetricEntry],
) -> list[MetricEntry]:
    '''Run the network on a single ``2L`` entry list.

    '''
    row = to_row(entries)
    out = evaluate_batch(net, row)
    return to_entries(out[0])
