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
Brute force ground truth.

Plain insertion sort under the (key, payload) order; nothing here
shares code with the sorters under test.

"""
from typing import Callable, Sequence

import numpy as np
from numba import njit

from ..log import get_logger
from .._util import WireIndexError
from ..metrics import (
    MetricEntry,
    KeyFormat,
    DEFAULT_FORMAT,
    precedes,
    embed_arbitrary,
)

log = get_logger(__name__)


def _insertion_sort(entries: Sequence[MetricEntry]) -> list[MetricEntry]:
    out = [MetricEntry(*e) for e in entries]

    payloads = [e.payload for e in out]
    if len(set(payloads)) != len(payloads):
        raise WireIndexError(f'Duplicate payloads in {payloads}')

    for i in range(1, len(out)):
        item = out[i]
        j = i - 1
        while j >= 0 and precedes(item, out[j]):
            out[j + 1] = out[j]
            j -= 1
        out[j + 1] = item

    return out


def full_sort_oracle(entries: Sequence[MetricEntry]) -> list[MetricEntry]:
    return _insertion_sort(entries)


def select_L_smallest_oracle(
    entries: Sequence[MetricEntry],
) -> list[MetricEntry]:
    '''The ``L = len(entries) // 2`` smallest entries in order.

    '''
    return _insertion_sort(entries)[:len(entries) // 2]


@njit(nogil=True)
def _insertion_sort_rows(x: np.ndarray) -> np.ndarray:
    n, w = x.shape
    for r in range(n):
        for i in range(1, w):
            item = x[r, i]
            j = i - 1
            while j >= 0 and x[r, j] > item:
                x[r, j + 1] = x[r, j]
                j -= 1
            x[r, j + 1] = item
    return x


def sort_batch(packed: np.ndarray) -> np.ndarray:
    '''Row-wise insertion sort of a packed ``(n, 2L)`` batch (copied).

    '''
    x = np.array(np.atleast_2d(packed), dtype=np.int64, copy=True)
    return _insertion_sort_rows(x)


def select_batch(packed: np.ndarray) -> np.ndarray:
    x = np.atleast_2d(packed)
    return sort_batch(x)[:, :x.shape[1] // 2]


def sort_arbitrary_via_sorter(
    values: Sequence[int],
    sorter: Callable[[Sequence[MetricEntry]], Sequence[MetricEntry]],
    list_size: int,
    fmt: KeyFormat = DEFAULT_FORMAT,
) -> list[int]:
    '''Fully sort up to ``L`` keys using only an ``L``-smallest sorter
    for structured lists.

    Each call sees the remaining values embedded between ``L - 1``
    minimal keys so its output slot ``L - 1`` is their minimum; that is
    taken out and the rest goes round again. ``k`` values take ``k - 1``
    sorter calls.

    '''
    remaining = [fmt.check(v) for v in values]
    out = []
    calls = 0
    while len(remaining) > 1:
        embedded = embed_arbitrary(remaining, list_size, fmt)
        smallest = sorter(embedded.entries)[list_size - 1].key
        calls += 1
        remaining.remove(smallest)
        out.append(smallest)

    out.extend(remaining)
    log.debug(f'Sorted {len(out)} values with {calls} sorter calls')
    return out
