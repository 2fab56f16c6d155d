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
Sorter registry: one calling convention over every architecture.
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence, Union

import numpy as np

from ._util import UnknownArchitecture, NetworkError
from .metrics import MetricEntry, to_row, to_entries
from .sortnet import (
    SortNetwork,
    CostReport,
    build_network,
    evaluate_batch,
    export_network,
    cost as network_cost,
)
from . import radix

__archs__ = [
    'bitonic',
    'pruned-bitonic',
    'bubble',
    'simplified-bubble',
    'radix',
    'pruned-radix',
]

# the three architectures which exploit the structured contract to
# select the ``L`` smallest only
__pruned__ = [
    'pruned-bitonic',
    'simplified-bubble',
    'pruned-radix',
]


@dataclass(frozen=True)
class Sorter:
    arch: str
    list_size: int
    impl: Union[SortNetwork, radix.RankSelectPlan]

    @property
    def is_network(self) -> bool:
        return isinstance(self.impl, SortNetwork)

    @property
    def requires_structured(self) -> bool:
        return self.impl.requires_structured

    def select_batch(
        self,
        packed: np.ndarray,
        check: bool = True,
    ) -> np.ndarray:
        '''First ``L`` outputs for every row of a packed batch.

        '''
        if self.is_network:
            out = evaluate_batch(self.impl, packed, check=check)
            return out[:, :self.list_size]

        return radix.select_batch(self.impl, packed, check=check)

    def __call__(
        self,
        entries: Sequence[MetricEntry],
    ) -> list[MetricEntry]:
        return to_entries(self.select_batch(to_row(entries))[0])

    def cost(self) -> CostReport:
        if self.is_network:
            return network_cost(self.impl)
        return radix.plan_cost(self.impl)

    def export(self, fmt: str = 'json') -> str:
        if self.is_network:
            return export_network(self.impl, fmt)

        if fmt != 'json':
            raise NetworkError(
                f'{self.arch} is a rank/select plan, only JSON export'
                ' is defined')
        return radix.export_plan(self.impl)


@lru_cache(maxsize=None)
def get_sorter(arch: str, list_size: int) -> Sorter:
    '''Build (once) and return the sorter for ``arch`` at list size
    ``list_size``.

    '''
    if arch not in __archs__:
        raise UnknownArchitecture(
            f'No architecture {arch!r}, expected one of {__archs__}')

    if arch.endswith('radix'):
        impl = radix.get_plan(arch, list_size)
    else:
        impl = build_network(arch, list_size)

    return Sorter(arch=arch, list_size=list_size, impl=impl)


def from_network(net: SortNetwork) -> Sorter:
    return Sorter(arch=net.arch, list_size=net.list_size, impl=net)


def iter_sorters(
    list_size: int,
    archs: Sequence[str] = None,
) -> Iterator[Sorter]:
    '''Yield the cached sorter for each of ``archs`` in order, every
    registered architecture by default.

    '''
    for arch in archs or __archs__:
        yield get_sorter(arch, list_size)
