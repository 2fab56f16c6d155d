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
Radix-2L rank/select sorters.

Every runtime comparator decides one pair of wires, each wire's rank is
the number of candidates preceding it and output ``k`` muxes out the
candidate of rank ``k``. The pruned plan skips the pairs whose order the
structured contract already fixes and never looks at wire ``2L - 1``.

"""
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Literal, Sequence

import numpy as np
from bidict import bidict
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .log import get_logger
from ._util import NetworkError
from .metrics import (
    MetricEntry,
    Relation,
    known_relation,
    to_row,
    to_entries,
    require_structured,
)
from .sortnet import CostReport, formula

log = get_logger(__name__)

# architecture name <-> plan JSON tag
PLAN_TAGS = bidict({
    'radix': 'radix',
    'pruned-radix': 'radix-pruned',
})


@dataclass(frozen=True)
class RankSelectPlan:
    arch: str
    list_size: int

    # (i, j) decided by a runtime comparator
    pairs: tuple[tuple[int, int], ...]

    # (i, j) where wire i statically precedes wire j
    known_table: frozenset

    # wires taking part in ranking
    candidates: tuple[int, ...]

    # per output the wires its mux selects from; a single wire means the
    # output is hard wired
    output_slots: tuple[tuple[int, ...], ...]

    @property
    def num_comparators(self) -> int:
        return len(self.pairs)

    @property
    def mux_sizes(self) -> list[int]:
        return [len(slot) for slot in self.output_slots]

    @property
    def requires_structured(self) -> bool:
        return self.arch == 'pruned-radix'

    @property
    def wires(self) -> int:
        return 2 * self.list_size


def _check_size(list_size: int) -> None:
    if list_size < 2:
        raise NetworkError(f'List size must be >= 2, got {list_size}')


@lru_cache(maxsize=None)
def plan_full(list_size: int) -> RankSelectPlan:
    _check_size(list_size)
    wires = tuple(range(2 * list_size))
    return RankSelectPlan(
        arch='radix',
        list_size=list_size,
        pairs=tuple(combinations(wires, 2)),
        known_table=frozenset(),
        candidates=wires,
        output_slots=(wires,) * list_size,
    )


@lru_cache(maxsize=None)
def plan_pruned(list_size: int) -> RankSelectPlan:
    '''Only pairs led by an odd wire are compared at runtime; wire
    ``2L - 1`` is dropped and output 0 is wired straight to wire 0.

    '''
    _check_size(list_size)
    candidates = tuple(range(2 * list_size - 1))

    pairs, known = [], set()
    for i, j in combinations(candidates, 2):
        if known_relation(i, j, list_size) is Relation.I_KNOWN_SMALLER:
            known.add((i, j))
        else:
            pairs.append((i, j))

    return RankSelectPlan(
        arch='pruned-radix',
        list_size=list_size,
        pairs=tuple(pairs),
        known_table=frozenset(known),
        candidates=candidates,
        output_slots=((0,),) + (candidates[1:],) * (list_size - 1),
    )


def get_plan(arch: str, list_size: int) -> RankSelectPlan:
    if arch == 'radix':
        return plan_full(list_size)
    elif arch == 'pruned-radix':
        return plan_pruned(list_size)

    raise NetworkError(f'No rank/select plan for {arch!r}')


def _onehot(wires: Sequence[int], width: int) -> np.ndarray:
    mat = np.zeros((len(wires), width), dtype=np.int64)
    mat[np.arange(len(wires)), list(wires)] = 1
    return mat


def rank_batch(
    plan: RankSelectPlan,
    packed: np.ndarray,
) -> np.ndarray:
    '''``(n, C)`` rank of every candidate wire per row.

    '''
    width = len(plan.candidates)
    x = packed[:, :width]
    ranks = np.zeros((x.shape[0], width), dtype=np.int64)

    if plan.pairs:
        lo = [i for i, _ in plan.pairs]
        hi = [j for _, j in plan.pairs]
        # 1 where the lower wire precedes
        first = (x[:, lo] < x[:, hi]).astype(np.int64)
        ranks += first @ _onehot(hi, width)
        ranks += (1 - first) @ _onehot(lo, width)

    if plan.known_table:
        ranks += _onehot([j for _, j in plan.known_table], width).sum(axis=0)

    return ranks


def select_batch(
    plan: RankSelectPlan,
    packed: np.ndarray,
    check: bool = True,
) -> np.ndarray:
    '''Select the ``L`` smallest entries of every row, in order.

    Returns a ``(n, L)`` packed array.

    '''
    x = np.atleast_2d(np.asarray(packed, dtype=np.int64))
    if x.shape[1] != plan.wires:
        raise NetworkError(
            f'{plan.arch} expects {plan.wires} entries per row,'
            f' got {x.shape[1]}')

    if check and plan.requires_structured:
        require_structured(x)

    L = plan.list_size
    ranks = rank_batch(plan, x)
    out = np.full((x.shape[0], L), -1, dtype=np.int64)

    muxed = np.zeros(len(plan.candidates), dtype=bool)
    for k, slot in enumerate(plan.output_slots):
        if len(slot) == 1:
            out[:, k] = x[:, slot[0]]
        else:
            muxed[list(slot)] = True

    rows, cols = np.nonzero((ranks < L) & muxed)
    out[rows, ranks[rows, cols]] = x[rows, cols]
    return out


def select(
    plan: RankSelectPlan,
    entries: Sequence[MetricEntry],
) -> list[MetricEntry]:
    return to_entries(select_batch(plan, to_row(entries))[0])


def rank_vector(
    plan: RankSelectPlan,
    entries: Sequence[MetricEntry],
) -> list[int]:
    row = to_row(entries)
    if row.shape[1] != plan.wires:
        raise NetworkError(
            f'{plan.arch} expects {plan.wires} entries, got {row.shape[1]}')
    return [int(r) for r in rank_batch(plan, row)[0]]


def audit_known_table(
    plan: RankSelectPlan,
    packed: np.ndarray,
) -> int:
    '''Count ``(row, pair)`` cases where a statically known precedence
    disagrees with a runtime comparison.

    '''
    if not plan.known_table:
        return 0

    x = np.atleast_2d(packed)
    lo = [i for i, _ in plan.known_table]
    hi = [j for _, j in plan.known_table]
    return int((x[:, lo] >= x[:, hi]).sum())


def plan_cost(plan: RankSelectPlan) -> CostReport:
    stages, comparators = formula(plan.arch, plan.list_size)
    return CostReport(
        arch=plan.arch,
        list_size=plan.list_size,
        measured_stages=None,
        measured_cas=plan.num_comparators,
        formula_stages=stages,
        formula_cas=comparators,
    )


class PlanModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    arch: Literal['radix', 'radix-pruned']
    list_size: int = Field(alias='L')
    pairs: list[tuple[int, int]]


def export_plan(plan: RankSelectPlan, indent: int = 2) -> str:
    return PlanModel(
        arch=PLAN_TAGS[plan.arch],
        list_size=plan.list_size,
        pairs=list(plan.pairs),
    ).model_dump_json(by_alias=True, indent=indent)


def import_plan(text: str) -> RankSelectPlan:
    '''Load a plan from JSON; the comparator set must be the one the
    architecture prescribes.

    '''
    try:
        model = PlanModel.model_validate_json(text)
    except ValidationError as err:
        raise NetworkError(f'Malformed plan JSON:\n{err}')

    plan = get_plan(PLAN_TAGS.inverse[model.arch], model.list_size)
    if set(map(tuple, model.pairs)) != set(plan.pairs):
        raise NetworkError(
            f'{model.arch} L={model.list_size}: comparator pairs differ'
            ' from the architecture')

    return plan
