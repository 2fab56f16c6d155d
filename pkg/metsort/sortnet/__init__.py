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
Compare-and-select sorting networks: IR, builders, evaluation, cost
and export.
"""
from ._network import (
    Direction,
    CasUnit,
    Route,
    Stage,
    SortNetwork,
    STRUCTURED_ARCHS,
    PARTIAL_ARCHS,
    check_network,
    evaluate,
    evaluate_batch,
)
from ._cost import (
    CostReport,
    formula,
    cost,
    cost_table,
    format_table,
)
from ._builders import (
    BUILDERS,
    build_bitonic,
    build_pruned_bitonic,
    build_full_bubble,
    build_simplified_bubble,
    build_network,
)
from ._export import (
    export_network,
    import_network,
    to_json,
    to_dot,
)

__all__ = [
    'Direction',
    'CasUnit',
    'Route',
    'Stage',
    'SortNetwork',
    'STRUCTURED_ARCHS',
    'PARTIAL_ARCHS',
    'check_network',
    'evaluate',
    'evaluate_batch',
    'CostReport',
    'formula',
    'cost',
    'cost_table',
    'format_table',
    'BUILDERS',
    'build_bitonic',
    'build_pruned_bitonic',
    'build_full_bubble',
    'build_simplified_bubble',
    'build_network',
    'export_network',
    'import_network',
    'to_json',
    'to_dot',
]
