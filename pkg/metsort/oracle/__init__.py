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
Brute force oracles, input grids and the equivalence suite.
"""
from ._select import (
    full_sort_oracle,
    select_L_smallest_oracle,
    sort_batch,
    select_batch,
    sort_arbitrary_via_sorter,
)
from ._grid import (
    EXHAUSTIVE_DOMAINS,
    EXHAUSTIVE_LIMIT,
    PROFILES,
    InputGrid,
    parse_profile,
    default_sigma,
    draw_increments,
)
from ._suite import (
    Mismatch,
    SuiteReport,
    equivalence_suite,
)

__all__ = [
    'full_sort_oracle',
    'select_L_smallest_oracle',
    'sort_batch',
    'select_batch',
    'sort_arbitrary_via_sorter',
    'EXHAUSTIVE_DOMAINS',
    'EXHAUSTIVE_LIMIT',
    'PROFILES',
    'InputGrid',
    'parse_profile',
    'default_sigma',
    'draw_increments',
    'Mismatch',
    'SuiteReport',
    'equivalence_suite',
]
