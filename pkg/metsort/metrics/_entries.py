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
Path metric domain types and the structured list contract.

A list decoder holding ``L`` sorted survivor metrics ``mu`` extends
every path two ways per bit decision, producing ``2L`` candidates::

    m[2l]     = mu[l]
    m[2l + 1] = mu[l] + a[l],   a[l] >= 0

which always satisfy

    even-order  m[2l] <= m[2(l + 1)]
    pair-order  m[2l] <= m[2l + 1]

so every even indexed entry is known to precede everything after it.

"""
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional, Sequence

import numpy as np
from pydantic import BaseModel

from .._util import (
    KeyRangeError,
    UnsortedMetricsError,
    SentinelCollisionError,
    StructuredContractError,
    WireIndexError,
)


class MetricEntry(NamedTuple):
    '''A quantized path metric plus the wire (path candidate) it
    originated from.

    Tuple ordering *is* our total order: key first, then payload.

    '''
    key: int
    payload: int


def precedes(a: MetricEntry, b: MetricEntry) -> bool:
    '''Strict total order used by every architecture and the oracle.

    '''
    return (a.key, a.payload) < (b.key, b.payload)


@dataclass(frozen=True)
class KeyFormat:
    '''Unsigned fixed-point key of ``q_bits`` width with saturating
    addition.

    '''
    q_bits: int = 8

    def __post_init__(self) -> None:
        if not 1 <= self.q_bits <= 32:
            raise KeyRangeError(f'Unsupported key width Q={self.q_bits}')

    @property
    def max(self) -> int:
        return (1 << self.q_bits) - 1

    # stand-ins for -inf/+inf when embedding arbitrary values
    @property
    def neg_inf(self) -> int:
        return 0

    @property
    def pos_inf(self) -> int:
        return self.max

    def check(self, value: int) -> int:
        value = int(value)
        if not 0 <= value <= self.max:
            raise KeyRangeError(
                f'Key {value} outside [0, {self.max}] for Q={self.q_bits}')
        return value

    def add(self, a: int, b: int) -> int:
        return min(self.check(a) + self.check(b), self.max)

    def add_array(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.minimum(
            np.asarray(a, dtype=np.int64) + np.asarray(b, dtype=np.int64),
            self.max,
        )


DEFAULT_FORMAT = KeyFormat()


class Relation(str, Enum):
    I_KNOWN_SMALLER = 'i-known-smaller'
    UNKNOWN = 'unknown'


class Violation(BaseModel):
    '''First broken constraint found by ``validate_structured()``.

    '''
    # {'even-order', 'pair-order', 'payload', 'shape'}
    rule: str
    index: int = 0  # the ``l`` of the failing inequality
    # {'key', 'tie'}: a strict key inversion or a payload-order
    # inversion between equal keys
    kind: str = 'key'
    detail: str = ''

    def describe(self) -> str:
        if self.rule in ('even-order', 'pair-order'):
            return (
                f'{self.rule} violated at l={self.index}'
                f' [{self.kind}]: {self.detail}'
            )
        return f'{self.rule} violation: {self.detail}'


class StructureCheck(BaseModel):
    valid: bool
    violation: Optional[Violation] = None

    def __bool__(self) -> bool:
        return self.valid


def _pair_fault(
    lo: MetricEntry,
    hi: MetricEntry,
) -> Optional[str]:
    if lo.key > hi.key:
        return 'key'
    if precedes(hi, lo):
        return 'tie'
    return None


def validate_structured(
    entries: Sequence[MetricEntry],
) -> StructureCheck:
    '''Check a candidate list against the even-order and pair-order
    properties.

    pair-order is checked up to and including the last pair so that the
    entry on the last wire is provably never among the ``L`` smallest.
    Both families are checked under the total order, i.e. on equal
    keys the even side must carry the smaller payload.

    '''
    entries = [MetricEntry(*e) for e in entries]
    n = len(entries)
    if n < 4 or n % 2:
        return StructureCheck(
            valid=False,
            violation=Violation(
                rule='shape',
                detail=f'need an even length >= 4, got {n}',
            ),
        )

    list_size = n // 2
    payloads = sorted(e.payload for e in entries)
    if payloads != list(range(n)):
        return StructureCheck(
            valid=False,
            violation=Violation(
                rule='payload',
                detail=f'payloads are not a permutation of 0..{n - 1}',
            ),
        )

    for l in range(list_size):
        lo = entries[2 * l]

        kind = _pair_fault(lo, entries[2 * l + 1])
        if kind:
            return StructureCheck(
                valid=False,
                violation=Violation(
                    rule='pair-order', index=l, kind=kind,
                    detail=f'm[{2 * l}]={tuple(lo)} > '
                           f'm[{2 * l + 1}]={tuple(entries[2 * l + 1])}',
                ),
            )

        if l < list_size - 1:
            kind = _pair_fault(lo, entries[2 * l + 2])
            if kind:
                return StructureCheck(
                    valid=False,
                    violation=Violation(
                        rule='even-order', index=l, kind=kind,
                        detail=f'm[{2 * l}]={tuple(lo)} > '
                               f'm[{2 * l + 2}]={tuple(entries[2 * l + 2])}',
                    ),
                )

    return StructureCheck(valid=True)


@dataclass(frozen=True)
class StructuredList:
    '''``2L`` metric entries satisfying the structured contract.

    Use ``make_structured()``, ``embed_arbitrary()`` or
    ``StructuredList.from_entries()``; direct construction does not
    validate.

    '''
    entries: tuple[MetricEntry, ...]
    list_size: int
    fmt: KeyFormat = DEFAULT_FORMAT

    @classmethod
    def from_entries(
        cls,
        entries: Sequence[MetricEntry],
        fmt: KeyFormat = DEFAULT_FORMAT,
    ) -> 'StructuredList':
        entries = tuple(MetricEntry(*e) for e in entries)
        for e in entries:
            fmt.check(e.key)

        check = validate_structured(entries)
        if not check:
            raise StructuredContractError(check.violation)

        return cls(entries=entries, list_size=len(entries) // 2, fmt=fmt)

    @property
    def keys(self) -> list[int]:
        return [e.key for e in self.entries]

    @property
    def payloads(self) -> list[int]:
        return [e.payload for e in self.entries]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, index):
        return self.entries[index]


def make_structured(
    mu: Sequence[int],
    a: Sequence[int],
    fmt: KeyFormat = DEFAULT_FORMAT,
) -> StructuredList:
    '''Build the ``2L`` candidate list from ``L`` sorted survivor
    metrics and their nonnegative increments.

    '''
    mu = [fmt.check(v) for v in mu]
    a = [fmt.check(v) for v in a]

    if len(mu) != len(a):
        raise KeyRangeError(
            f'mu and a differ in length: {len(mu)} != {len(a)}')
    if len(mu) < 2:
        raise KeyRangeError(f'List size must be >= 2, got {len(mu)}')

    for l in range(len(mu) - 1):
        if mu[l] > mu[l + 1]:
            raise UnsortedMetricsError(
                f'mu is not non-decreasing at l={l}: {mu[l]} > {mu[l + 1]}')

    entries = []
    for l, (base, inc) in enumerate(zip(mu, a)):
        entries.append(MetricEntry(base, 2 * l))
        entries.append(MetricEntry(fmt.add(base, inc), 2 * l + 1))

    return StructuredList(
        entries=tuple(entries),
        list_size=len(mu),
        fmt=fmt,
    )


def known_relation(
    i: int,
    j: int,
    list_size: int = None,
) -> Relation:
    '''Statically known order between wires ``i < j`` of any
    structured list.

    Every even indexed entry precedes all entries after it; nothing is
    known about an odd indexed one.

    '''
    if i >= j or i < 0:
        raise WireIndexError(f'Need 0 <= i < j, got ({i}, {j})')
    if list_size is not None and j > 2 * list_size - 1:
        raise WireIndexError(
            f'Wire {j} out of range for L={list_size}')

    return Relation.UNKNOWN if i % 2 else Relation.I_KNOWN_SMALLER


def embed_arbitrary(
    values: Sequence[int],
    list_size: int,
    fmt: KeyFormat = DEFAULT_FORMAT,
) -> StructuredList:
    '''Embed up to ``L`` arbitrary keys into a structured list whose
    ``L`` smallest entries end with ``min(values)``.

    Even wires get -inf (key 0), odd wires the values; the second to
    last wire takes the last value and the last wire +inf (the max
    key). Missing values are padded with +inf.

    '''
    values = [fmt.check(v) for v in values]
    k = len(values)
    if not 1 <= k <= list_size:
        raise KeyRangeError(f'Need 1 <= k <= L={list_size}, got k={k}')
    if list_size < 2:
        raise KeyRangeError(f'List size must be >= 2, got {list_size}')

    for v in values:
        if v in (fmt.neg_inf, fmt.pos_inf):
            raise SentinelCollisionError(
                f'Value {v} collides with a sentinel key'
                f' ({fmt.neg_inf} or {fmt.pos_inf})')

    padded = values + [fmt.pos_inf] * (list_size - k)
    keys = []
    for l in range(list_size - 1):
        keys.extend((fmt.neg_inf, padded[l]))
    keys.extend((padded[-1], fmt.pos_inf))

    return StructuredList(
        entries=tuple(MetricEntry(key, w) for w, key in enumerate(keys)),
        list_size=list_size,
        fmt=fmt,
    )
