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
Instrumented sequential bubble sort over structured lists.

Each round walks ``l = 2L - 1 ... 1`` swapping ``m[l - 1]`` and ``m[l]``
whenever ``m[l].key < m[l - 1].key``, on the live list. On structured
input the swaps of a round are exactly the strict inversions present at
its start (``B_t``), these never touch adjacent positions and they
shift right by one each round, which is what lets every round run as a
single parallel network stage.

"""
from typing import Iterable, Optional, Sequence

import numpy as np
from pydantic import BaseModel

from .log import get_logger
from ._util import AdjacentSwapError, StructuredContractError
from .metrics import (
    MetricEntry,
    validate_structured,
    to_entries,
)

log = get_logger(__name__)

MODES = ('full', 'first-l')


class RoundTrace(BaseModel):
    t: int
    snapshot: list[MetricEntry]
    b_set: list[int]

    # in loop order, i.e. descending
    swaps_executed: list[int]

    # list contents at the end of the round
    result: list[MetricEntry]


def b_set(snapshot: Sequence[MetricEntry]) -> list[int]:
    '''Positions holding a strictly smaller key than their left
    neighbour.

    '''
    return [
        l for l in range(1, len(snapshot))
        if snapshot[l][0] < snapshot[l - 1][0]
    ]


def _unsorted(m: list[MetricEntry], upto: int) -> bool:
    return any(m[l + 1][0] < m[l][0] for l in range(upto))


def run_bubble_traced(
    entries: Sequence[MetricEntry],
    mode: str = 'full',
) -> tuple[list[MetricEntry], list[RoundTrace]]:
    '''Run the sequential algorithm and record every round.

    ``mode='first-l'`` only keeps going while an inversion remains among
    positions ``0 ... L``, i.e. until the ``L`` smallest are in place.

    '''
    if mode not in MODES:
        raise ValueError(f'mode must be one of {MODES}, got {mode!r}')

    m = [MetricEntry(*e) for e in entries]
    check = validate_structured(m)
    if not check:
        raise StructuredContractError(check.violation)

    n = len(m)
    upto = n - 1 if mode == 'full' else n // 2

    traces = []
    t = 0
    while _unsorted(m, upto):
        t += 1
        snapshot = list(m)
        swaps = []
        for l in range(n - 1, 0, -1):
            if m[l].key < m[l - 1].key:
                m[l - 1], m[l] = m[l], m[l - 1]
                swaps.append(l)

        # trusted data, skip validation
        traces.append(RoundTrace.model_construct(
            t=t,
            snapshot=snapshot,
            b_set=b_set(snapshot),
            swaps_executed=swaps,
            result=list(m),
        ))

    return m, traces


def parallel_round(
    snapshot: Sequence[MetricEntry],
    b: Iterable[int],
) -> list[MetricEntry]:
    '''Apply all swaps in ``b`` at once::

        m'[l] = m[l - 1]  if l in b
                m[l + 1]  if l + 1 in b
                m[l]      otherwise

    '''
    b = sorted(set(b))
    for prev, nxt in zip(b, b[1:]):
        if nxt - prev == 1:
            raise AdjacentSwapError(
                f'Adjacent swap positions {prev} and {nxt} in {b}')
    for l in b:
        if not 1 <= l < len(snapshot):
            raise AdjacentSwapError(
                f'Swap position {l} out of range for {len(snapshot)} entries')

    out = list(snapshot)
    for l in b:
        out[l - 1], out[l] = snapshot[l], snapshot[l - 1]
    return out


class RoundCheck(BaseModel):
    t: int
    b_matches_snapshot: bool
    no_adjacent: bool
    swaps_match: bool
    shifts_right: bool
    eq9: bool
    parallel_update: bool
    parity: bool

    @property
    def passed(self) -> bool:
        return all((
            self.b_matches_snapshot,
            self.no_adjacent,
            self.swaps_match,
            self.shifts_right,
            self.eq9,
            self.parallel_update,
            self.parity,
        ))

    def failed(self) -> list[str]:
        return [
            name for name, ok in self
            if isinstance(ok, bool) and not ok
        ]


class LemmaReport(BaseModel):
    rounds: int
    checks: list[RoundCheck] = []
    first_round_even: bool = True

    # the whole offending trace when anything failed
    trace: list[RoundTrace] = []

    @property
    def passed(self) -> bool:
        return self.first_round_even and all(c.passed for c in self.checks)

    def describe(self) -> str:
        if self.passed:
            return f'all checks pass over {self.rounds} rounds'
        lines = []
        if not self.first_round_even:
            lines.append('B_1 holds an odd or out of range position')
        for c in self.checks:
            if not c.passed:
                lines.append(f'round {c.t}: {", ".join(c.failed())}')
        return '\n'.join(lines)


def check_lemma(traces: Sequence[RoundTrace]) -> LemmaReport:
    '''Check the round structure of a bubble trace.

    Per round ``t`` with ``B = B_t``:

    - ``B`` equals the strict inversions of the snapshot
    - no two positions in ``B`` are adjacent
    - the executed swaps are exactly ``B``
    - ``B_{t+1}`` is within ``B + 1``
    - ``m[l] >= m[l - 2]`` (keys) for every ``l`` in ``B``, ``l >= 2``
    - swapping all of ``B`` at once reproduces the round's result
    - ``B`` is all even for odd ``t`` and all odd for even ``t``

    and ``B_1`` sits within ``{2, 4, ..., 2L - 2}``.

    '''
    checks = []
    first_round_even = True

    for index, trace in enumerate(traces):
        snap = trace.snapshot
        b = sorted(trace.b_set)
        bs = set(b)
        n = len(snap)

        if index + 1 < len(traces):
            b_next = set(traces[index + 1].b_set)
        else:
            b_next = set(b_set(trace.result))

        try:
            parallel = parallel_round(snap, b) == list(trace.result)
            no_adjacent = True
        except AdjacentSwapError:
            parallel = no_adjacent = False

        want_parity = 0 if trace.t % 2 else 1
        checks.append(RoundCheck(
            t=trace.t,
            b_matches_snapshot=b == b_set(snap),
            no_adjacent=no_adjacent,
            swaps_match=set(trace.swaps_executed) == bs,
            shifts_right=b_next <= {l + 1 for l in bs},
            eq9=all(snap[l][0] >= snap[l - 2][0] for l in b if l >= 2),
            parallel_update=parallel,
            parity=all(l % 2 == want_parity for l in b),
        ))

        if trace.t == 1:
            first_round_even = bs <= set(range(2, n - 1, 2))

    report = LemmaReport(
        rounds=len(traces),
        checks=checks,
        first_round_even=first_round_even,
    )
    if not report.passed:
        report.trace = list(traces)
    return report


def dump_traces(traces: Iterable[RoundTrace]) -> str:
    '''JSON lines, one round per line.

    '''
    return ''.join(trace.model_dump_json() + '\n' for trace in traces)


def load_traces(text: str) -> list[RoundTrace]:
    return [
        RoundTrace.model_validate_json(line)
        for line in text.splitlines()
        if line.strip()
    ]


class LemmaSuiteReport(BaseModel):
    list_size: int
    mode: str
    cases: int = 0
    failed_cases: int = 0
    oracle_mismatches: int = 0
    max_rounds: int = 0
    round_bound: int = 0
    first_failure: Optional[LemmaReport] = None
    first_failure_input: Optional[list[MetricEntry]] = None

    @property
    def within_bound(self) -> bool:
        return self.max_rounds <= self.round_bound

    @property
    def passed(self) -> bool:
        return (
            not self.failed_cases
            and not self.oracle_mismatches
            and self.within_bound
        )

    def merge(self, other: 'LemmaSuiteReport') -> 'LemmaSuiteReport':
        first = self.first_failure or other.first_failure
        first_input = (
            self.first_failure_input if self.first_failure
            else other.first_failure_input
        )
        return LemmaSuiteReport(
            list_size=self.list_size,
            mode=self.mode,
            cases=self.cases + other.cases,
            failed_cases=self.failed_cases + other.failed_cases,
            oracle_mismatches=self.oracle_mismatches + other.oracle_mismatches,
            max_rounds=max(self.max_rounds, other.max_rounds),
            round_bound=max(self.round_bound, other.round_bound),
            first_failure=first,
            first_failure_input=first_input,
        )


def round_bound(list_size: int, mode: str) -> int:
    # ``B_t`` starts at even positions >= 2 and shifts right by one per
    # round so it is empty past round 2L - 2
    return list_size - 1 if mode == 'first-l' else 2 * list_size - 2


def run_lemma_suite(
    batches: Iterable[np.ndarray],
    list_size: int,
    mode: str = 'full',
) -> LemmaSuiteReport:
    '''Trace and check every row of every packed batch, comparing the
    final (or first ``L``) entries to the insertion sort oracle.

    '''
    from .oracle import sort_batch

    report = LemmaSuiteReport(
        list_size=list_size,
        mode=mode,
        round_bound=round_bound(list_size, mode),
    )
    width = 2 * list_size if mode == 'full' else list_size

    for batch in batches:
        expected = sort_batch(batch)
        for row, expect in zip(batch, expected):
            entries = to_entries(row)
            final, traces = run_bubble_traced(entries, mode)
            lemma = check_lemma(traces)

            report.cases += 1
            report.max_rounds = max(report.max_rounds, lemma.rounds)

            if final[:width] != to_entries(expect[:width]):
                report.oracle_mismatches += 1

            if not lemma.passed:
                report.failed_cases += 1
                if report.first_failure is None:
                    log.error(f'Lemma check failed:\n{lemma.describe()}')
                    report.first_failure = lemma
                    report.first_failure_input = entries

    return report
