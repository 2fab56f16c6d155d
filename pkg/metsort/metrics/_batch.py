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
numpy batch layout for metric lists.

Each entry is packed into a single ``int64`` as ``key << 16 | payload``
which makes the (key, payload) total order plain integer order; a batch
of lists is a ``(n, 2L)`` array, one list per row.

"""
from typing import Sequence

import numpy as np

from ._entries import (
    MetricEntry,
    KeyFormat,
    DEFAULT_FORMAT,
    Violation,
    validate_structured,
)
from .._util import StructuredContractError

PAYLOAD_BITS = 16
PAYLOAD_MASK = (1 << PAYLOAD_BITS) - 1


def pack(
    keys: np.ndarray,
    payloads: np.ndarray,
) -> np.ndarray:
    keys = np.asarray(keys, dtype=np.int64)
    payloads = np.asarray(payloads, dtype=np.int64)
    return (keys << PAYLOAD_BITS) | payloads


def unpack(packed: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    packed = np.asarray(packed, dtype=np.int64)
    return packed >> PAYLOAD_BITS, packed & PAYLOAD_MASK


def to_row(entries: Sequence[MetricEntry]) -> np.ndarray:
    '''Pack one list of entries into a ``(1, n)`` batch.

    '''
    keys = [e[0] for e in entries]
    payloads = [e[1] for e in entries]
    return pack(keys, payloads).reshape(1, -1)


def to_entries(row: np.ndarray) -> list[MetricEntry]:
    keys, payloads = unpack(row)
    return [
        MetricEntry(int(k), int(p)) for k, p in zip(keys, payloads)
    ]


def structured_batch(
    mu: np.ndarray,
    a: np.ndarray,
    fmt: KeyFormat = DEFAULT_FORMAT,
) -> np.ndarray:
    '''Vectorized ``make_structured()`` over rows of ``mu`` and ``a``
    (both ``(n, L)``), payloads being the wire indices.

    '''
    mu = np.asarray(mu, dtype=np.int64)
    n, list_size = mu.shape
    keys = np.empty((n, 2 * list_size), dtype=np.int64)
    keys[:, 0::2] = mu
    keys[:, 1::2] = fmt.add_array(mu, a)
    payloads = np.broadcast_to(
        np.arange(2 * list_size, dtype=np.int64), keys.shape)
    return pack(keys, payloads)


def validate_batch(packed: np.ndarray) -> np.ndarray:
    '''Row-wise structured contract check under the total order.

    Returns a boolean mask of valid rows. Payload permutation is not
    re-checked here; batches are built by our own generators or from
    entries that went through ``validate_structured()``.

    '''
    packed = np.atleast_2d(packed)
    evens = packed[:, 0::2]
    odds = packed[:, 1::2]
    ok_pair = (evens < odds).all(axis=1)
    ok_even = (evens[:, :-1] < evens[:, 1:]).all(axis=1)
    return ok_even & ok_pair


def require_structured(packed: np.ndarray) -> None:
    '''Raise ``StructuredContractError`` for the first row of ``packed``
    breaking the structured contract.

    '''
    mask = validate_batch(packed)
    if mask.all():
        return

    row = int(np.flatnonzero(~mask)[0])
    check = validate_structured(to_entries(np.atleast_2d(packed)[row]))
    violation = check.violation or Violation(
        rule='even-order', detail='batch check failed')
    raise StructuredContractError(violation, row=row)
