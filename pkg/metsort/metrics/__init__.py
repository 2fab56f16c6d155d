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
Path metric types, the structured list contract and batch helpers.
"""
from ._entries import (
    MetricEntry,
    KeyFormat,
    DEFAULT_FORMAT,
    Relation,
    Violation,
    StructureCheck,
    StructuredList,
    precedes,
    validate_structured,
    make_structured,
    known_relation,
    embed_arbitrary,
)
from ._batch import (
    pack,
    unpack,
    to_row,
    to_entries,
    structured_batch,
    validate_batch,
    require_structured,
)
from ._text import (
    read_metric_list,
    format_metric_list,
)

__all__ = [
    'MetricEntry',
    'KeyFormat',
    'DEFAULT_FORMAT',
    'Relation',
    'Violation',
    'StructureCheck',
    'StructuredList',
    'precedes',
    'validate_structured',
    'make_structured',
    'known_relation',
    'embed_arbitrary',
    'pack',
    'unpack',
    'to_row',
    'to_entries',
    'structured_batch',
    'validate_batch',
    'require_structured',
    'read_metric_list',
    'format_metric_list',
]
