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
Structured input generators shared by every equivalence suite.

"""
from dataclasses import dataclass
from itertools import combinations_with_replacement, product, islice
from math import comb, pi, sqrt
from typing import Iterator, Optional

import numpy as np

from .._util import GridError
from ..metrics import (
    KeyFormat,
    DEFAULT_FORMAT,
    StructuredList,
    structured_batch,
    to_entries,
)

# per ``L`` the largest key of the documented exhaustive grids
EXHAUSTIVE_DOMAINS = {
    2: 7,
    3: 3,
    4: 3,
    8: 1,
}

# largest exhaustive grid accepted with an explicit ``key_max``
EXHAUSTIVE_LIMIT = 1 << 20

PROFILES = (
    'uniform_full',
    'uniform_small',
    'quantized_half_normal',
)


def parse_profile(profile: str) -> tuple[str, Optional[float]]:
    '''Split ``'<name>[:<param>]'``, e.g. ``'uniform_small:3'``.

    '''
    name, _, param = profile.partition(':')
    if name not in PROFILES:
        raise GridError(
            f'Unknown increment profile {name!r}, expected one of {PROFILES}')

    value = None
    if param:
        try:
            value = float(param)
        except ValueError:
            raise GridError(f'Bad parameter for {name}: {param!r}')

    if name == 'uniform_small' and value is not None and (
        value < 0 or value != int(value)
    ):
        raise GridError(f'uniform_small needs an integer max >= 0: {param}')
    if name == 'quantized_half_normal' and value is not None and value <= 0:
        raise GridError(f'quantized_half_normal needs sigma > 0: {param}')

    return name, value


def default_sigma(fmt: KeyFormat) -> float:
    # mean of |N(0, s)| is s * sqrt(2 / pi); aim it at 2 ** (Q - 3)
    return 2 ** (fmt.q_bits - 3) * sqrt(pi / 2)


def draw_increments(
    rng: np.random.Generator,
    profile: str,
    shape: tuple[int, ...],
    fmt: KeyFormat = DEFAULT_FORMAT,
) -> np.ndarray:
    name, param = parse_profile(profile)

    if name == 'uniform_full':
        return rng.integers(0, fmt.max, size=shape, endpoint=True)

    elif name == 'uniform_small':
        top = min(int(3 if param is None else param), fmt.max)
        return rng.integers(0, top, size=shape, endpoint=True)

    sigma = default_sigma(fmt) if param is None else param
    draws = np.rint(np.abs(rng.normal(0.0, sigma, size=shape)))
    return np.clip(draws, 0, fmt.max).astype(np.int64)


@dataclass(frozen=True)
class InputGrid:
    '''Valid structured lists, either every ``(mu, a)`` over a small key
    domain or seeded random draws.

    Payloads are always the wire indices.

    '''
    list_size: int
    mode: str = 'random'
    fmt: KeyFormat = DEFAULT_FORMAT

    # exhaustive
    key_max: Optional[int] = None

    # random
    trials: int = 10_000
    seed: int = 0
    profile: str = 'uniform_full'

    chunk: int = 4096

    @classmethod
    def exhaustive(
        cls,
        list_size: int,
        key_max: Optional[int] = None,
        fmt: KeyFormat = DEFAULT_FORMAT,
    ) -> 'InputGrid':
        if key_max is None:
            try:
                key_max = EXHAUSTIVE_DOMAINS[list_size]
            except KeyError:
                raise GridError(
                    f'No documented exhaustive grid for L={list_size},'
                    f' have {sorted(EXHAUSTIVE_DOMAINS)}')

        fmt.check(key_max)
        grid = cls(list_size, 'exhaustive', fmt, key_max=key_max)
        if grid.size() > EXHAUSTIVE_LIMIT:
            raise GridError(
                f'Exhaustive L={list_size} keys 0..{key_max} has'
                f' {grid.size()} inputs, limit is {EXHAUSTIVE_LIMIT}')

        return grid

    @classmethod
    def random(
        cls,
        list_size: int,
        trials: int = 10_000,
        seed: int = 0,
        fmt: KeyFormat = DEFAULT_FORMAT,
        profile: str = 'uniform_full',
    ) -> 'InputGrid':
        parse_profile(profile)
        return cls(
            list_size, 'random', fmt,
            trials=trials, seed=seed, profile=profile,
        )

    def __post_init__(self) -> None:
        if self.list_size < 2:
            raise GridError(f'List size must be >= 2, got {self.list_size}')
        if self.mode not in ('exhaustive', 'random'):
            raise GridError(f'Unknown grid mode {self.mode!r}')

    def size(self) -> int:
        if self.mode == 'random':
            return self.trials

        d = self.key_max + 1
        L = self.list_size
        # non-decreasing mu tuples times free increments
        return comb(d + L - 1, L) * d ** L

    def describe(self) -> str:
        if self.mode == 'random':
            return (
                f'random L={self.list_size} Q={self.fmt.q_bits}'
                f' trials={self.trials} seed={self.seed}'
                f' profile={self.profile}'
            )
        return (
            f'exhaustive L={self.list_size} keys 0..{self.key_max}'
            f' ({self.size()} inputs)'
        )

    def _exhaustive_rows(self) -> Iterator[tuple[tuple, tuple]]:
        domain = range(self.key_max + 1)
        for mu in combinations_with_replacement(domain, self.list_size):
            for a in product(domain, repeat=self.list_size):
                yield mu, a

    def _exhaustive_batches(self) -> Iterator[np.ndarray]:
        rows = self._exhaustive_rows()
        while True:
            block = list(islice(rows, self.chunk))
            if not block:
                return

            mu, a = zip(*block)
            yield structured_batch(
                np.array(mu, dtype=np.int64),
                np.array(a, dtype=np.int64),
                self.fmt,
            )

    def _random_batches(self) -> Iterator[np.ndarray]:
        rng = np.random.default_rng(self.seed)
        L = self.list_size
        left = self.trials
        while left > 0:
            n = min(left, self.chunk)
            mu = np.sort(
                rng.integers(0, self.fmt.max, size=(n, L), endpoint=True),
                axis=1,
            )
            a = draw_increments(rng, self.profile, (n, L), self.fmt)
            yield structured_batch(mu, a, self.fmt)
            left -= n

    def batches(self) -> Iterator[np.ndarray]:
        '''Packed ``(n, 2L)`` batches covering the grid in order.

        '''
        if self.mode == 'exhaustive':
            return self._exhaustive_batches()
        return self._random_batches()

    def __iter__(self) -> Iterator[StructuredList]:
        for batch in self.batches():
            for row in batch:
                yield StructuredList(
                    entries=tuple(to_entries(row)),
                    list_size=self.list_size,
                    fmt=self.fmt,
                )
