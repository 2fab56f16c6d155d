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
Differential testing of sorters against the brute force oracle.

"""
from typing import Optional, Sequence

import numpy as np
from pydantic import BaseModel

from ..log import get_logger
from .._profile import timeit
from ..metrics import MetricEntry, unpack, to_entries
from .. import radix
from ._grid import InputGrid
from ._select import select_batch

log = get_logger(__name__)


class Mismatch(BaseModel):
    arch: str
    row: int  # position within the grid
    input: list[MetricEntry]
    expected: list[MetricEntry]
    got: list[MetricEntry]


class SuiteReport(BaseModel):
    '''Outcome of running sorters over an input grid.

    Reports over disjoint parts of a grid merge associatively.

    '''
    grid: str
    list_size: int
    seed: Optional[int] = None
    cases: int = 0
    archs: list[str] = []
    mismatches: dict[str, int] = {}

    # first-L outputs carrying the entry from wire 2L - 1, 'oracle' included
    exclusion_violations: dict[str, int] = {}

    # statically known precedences contradicted by a runtime comparison
    known_table_violations: int = 0

    first_mismatch: Optional[Mismatch] = None

    @property
    def total_mismatches(self) -> int:
        return sum(self.mismatches.values())

    @property
    def passed(self) -> bool:
        return not (
            self.total_mismatches
            or sum(self.exclusion_violations.values())
            or self.known_table_violations
        )

    def merge(self, other: 'SuiteReport') -> 'SuiteReport':
        def add(a: dict, b: dict) -> dict:
            return {k: a.get(k, 0) + b.get(k, 0) for k in {**a, **b}}

        return SuiteReport(
            grid=self.grid,
            list_size=self.list_size,
            seed=self.seed,
            cases=self.cases + other.cases,
            archs=list(dict.fromkeys(self.archs + other.archs)),
            mismatches=add(self.mismatches, other.mismatches),
            exclusion_violations=add(
                self.exclusion_violations, other.exclusion_violations),
            known_table_violations=(
                self.known_table_violations + other.known_table_violations),
            first_mismatch=self.first_mismatch or other.first_mismatch,
        )


def _excluded(out: np.ndarray, top: int) -> int:
    _, payloads = unpack(out)
    return int((payloads == top).any(axis=1).sum())


@timeit
def equivalence_suite(
    sorters: Sequence,
    grid: InputGrid,
) -> SuiteReport:
    '''Compare the first ``L`` outputs of every sorter with the oracle,
    keys and payloads, on every input of ``grid``.

    ``sorters`` are ``metsort.sorters.Sorter`` instances built for the
    grid's list size.

    '''
    L = grid.list_size
    top = 2 * L - 1
    archs = [s.arch for s in sorters]
    plan = radix.plan_pruned(L)

    report = SuiteReport(
        grid=grid.describe(),
        list_size=L,
        seed=grid.seed if grid.mode == 'random' else None,
        archs=archs,
        mismatches={arch: 0 for arch in archs},
        exclusion_violations={arch: 0 for arch in archs + ['oracle']},
    )
    log.info(f'Running {", ".join(archs)} over {grid.describe()}')

    offset = 0
    for batch in grid.batches():
        expected = select_batch(batch)
        report.exclusion_violations['oracle'] += _excluded(expected, top)
        report.known_table_violations += radix.audit_known_table(plan, batch)

        for sorter in sorters:
            got = sorter.select_batch(batch)
            bad = np.flatnonzero((got != expected).any(axis=1))
            report.mismatches[sorter.arch] += len(bad)
            report.exclusion_violations[sorter.arch] += _excluded(got, top)

            if len(bad) and report.first_mismatch is None:
                row = int(bad[0])
                report.first_mismatch = Mismatch(
                    arch=sorter.arch,
                    row=offset + row,
                    input=to_entries(batch[row]),
                    expected=to_entries(expected[row]),
                    got=to_entries(got[row]),
                )
                log.error(
                    f'{sorter.arch} mismatch at grid row {offset + row}:'
                    f' got {report.first_mismatch.got}'
                    f' expected {report.first_mismatch.expected}')

        offset += len(batch)

    report.cases = offset
    log.info(
        f'{report.cases} inputs, {report.total_mismatches} mismatches')
    return report
