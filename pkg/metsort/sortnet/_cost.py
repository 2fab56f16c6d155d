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
Hardware cost model: stage count (critical path) and CAS/comparator
count, measured vs. closed form.

"""
from typing import Iterable, Optional, Sequence

import pandas as pd
from pydantic import BaseModel

from ..log import get_logger
from .._util import NetworkError, is_power_of_two
from ._network import SortNetwork

log = get_logger(__name__)


def _log2(list_size: int) -> int:
    return list_size.bit_length() - 1


def formula(
    arch: str,
    list_size: int,
) -> tuple[Optional[int], Optional[int]]:
    '''Closed form ``(stages, cas)`` for a built-in architecture.

    Radix sorters are not staged and report ``None`` stages with their
    comparator count. Unknown tags (or a bitonic flavour at a non power
    of two ``L``) give ``(None, None)``.

    '''
    L = list_size
    n = _log2(L)

    if arch in ('bitonic', 'pruned-bitonic') and not is_power_of_two(L):
        return None, None

    if arch == 'bitonic':
        return (n + 1) * (n + 2) // 2, L * (n + 1) * (n + 2) // 2
    elif arch == 'pruned-bitonic':
        return (n + 1) * (n + 2) // 2 - 1, (L // 2 - 1) * n * (n + 2) + 1
    elif arch == 'bubble':
        return 2 * L - 2, L * (L - 1)
    elif arch == 'simplified-bubble':
        return L - 1, L * (L - 1) // 2
    elif arch == 'radix':
        return None, L * (2 * L - 1)
    elif arch == 'pruned-radix':
        return None, (L - 1) ** 2

    return None, None


class CostReport(BaseModel):
    arch: str
    list_size: int
    measured_stages: Optional[int] = None
    measured_cas: int
    formula_stages: Optional[int] = None
    formula_cas: Optional[int] = None

    @property
    def known(self) -> bool:
        return self.formula_cas is not None

    @property
    def matches(self) -> bool:
        '''Measured equals closed form; vacuously true for unknown
        architectures (measured-only reports).

        '''
        if not self.known:
            return True
        return (
            self.measured_stages == self.formula_stages
            and self.measured_cas == self.formula_cas
        )


def cost(net: SortNetwork) -> CostReport:
    stages, cas = formula(net.arch, net.list_size)
    return CostReport(
        arch=net.arch,
        list_size=net.list_size,
        measured_stages=net.num_stages,
        measured_cas=net.num_cas,
        formula_stages=stages,
        formula_cas=cas,
    )


# full counterpart of each pruned architecture
_pruned_of = {
    'pruned-bitonic': 'bitonic',
    'simplified-bubble': 'bubble',
    'pruned-radix': 'radix',
}


def cost_table(
    list_sizes: Iterable[int],
    archs: Sequence[str] = None,
) -> pd.DataFrame:
    '''Measured and closed form costs for every architecture and list
    size.

    Extra columns:

    - ``match``: measured equals closed form
    - ``reduction``, ``stage_reduction``: CAS and stage ratios of a
      pruned architecture to its full one
    - ``crossover``: on simplified bubble rows, ``<`` when it needs
      fewer stages than the pruned bitonic sorter and ``>=`` otherwise

    '''
    from ..sorters import __archs__, get_sorter

    archs = list(archs or __archs__)
    list_sizes = list(list_sizes)
    rows = []
    for L in list_sizes:
        for arch in archs:
            if arch.endswith('bitonic') and not is_power_of_two(L):
                log.warning(f'Skipping {arch} for non power of two L={L}')
                continue

            report = get_sorter(arch, L).cost()
            rows.append({
                'arch': arch,
                'L': L,
                'stages': report.measured_stages,
                'cas': report.measured_cas,
                'formula_stages': report.formula_stages,
                'formula_cas': report.formula_cas,
                'match': report.matches,
            })

    if not rows:
        raise NetworkError(
            f'No architecture in {archs} applies to L in {list_sizes}')

    df = pd.DataFrame(rows)
    for col in ('stages', 'formula_stages', 'formula_cas'):
        df[col] = df[col].astype('Int64')

    by_key = df.set_index(['arch', 'L'])

    def ratio(row, col: str) -> Optional[float]:
        full = _pruned_of.get(row['arch'])
        if (full, row['L']) not in by_key.index:
            return None
        full_value = by_key.loc[(full, row['L']), col]
        if pd.isna(row[col]) or pd.isna(full_value):
            return None
        return round(row[col] / full_value, 4)

    def crossover(row) -> str:
        if row['arch'] != 'simplified-bubble':
            return ''
        key = ('pruned-bitonic', row['L'])
        if key not in by_key.index:
            return ''
        return '<' if row['stages'] < by_key.loc[key, 'stages'] else '>='

    df['reduction'] = df.apply(ratio, axis=1, args=('cas',))
    df['stage_reduction'] = df.apply(ratio, axis=1, args=('stages',))
    df['crossover'] = df.apply(crossover, axis=1)
    return df


def format_table(
    df: pd.DataFrame,
    fmt: str = 'csv',
) -> str:
    if fmt == 'csv':
        return df.to_csv(index=False)

    cells = df.astype(object).where(df.notna(), '')
    cols = list(df.columns)
    lines = [
        '| ' + ' | '.join(cols) + ' |',
        '|' + '|'.join('---' for _ in cols) + '|',
    ]
    for record in cells.itertuples(index=False):
        lines.append('| ' + ' | '.join(str(v) for v in record) + ' |')

    return '\n'.join(lines) + '\n'
