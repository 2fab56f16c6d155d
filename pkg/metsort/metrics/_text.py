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
Metric list text format::

    L=4 Q=8
    1 0
    6 1
    ...

one ``<key> <payload>`` entry per line after the header.
"""
import re
from typing import Sequence

from ._entries import MetricEntry, KeyFormat
from .._util import KeyRangeError, WireIndexError

_header = re.compile(r'^\s*L\s*=\s*(\d+)\s+Q\s*=\s*(\d+)\s*$')


def read_metric_list(
    text: str,
) -> tuple[int, KeyFormat, list[MetricEntry]]:
    '''Parse the text format into ``(L, fmt, entries)``.

    Blank lines and ``#`` comments are skipped.
    '''
    lines = [
        line.split('#', 1)[0].strip()
        for line in text.splitlines()
    ]
    lines = [line for line in lines if line]
    if not lines:
        raise KeyRangeError('Empty metric list')

    match = _header.match(lines[0])
    if not match:
        raise KeyRangeError(
            f'Expected a `L=<n> Q=<q>` header, got {lines[0]!r}')

    list_size, q_bits = map(int, match.groups())
    fmt = KeyFormat(q_bits)

    entries = []
    for lineno, line in enumerate(lines[1:], start=2):
        fields = line.split()
        if len(fields) != 2:
            raise KeyRangeError(
                f'Line {lineno}: expected `<key> <payload>`, got {line!r}')
        key, payload = map(int, fields)
        entries.append(MetricEntry(fmt.check(key), payload))

    if len(entries) != 2 * list_size:
        raise KeyRangeError(
            f'Header says L={list_size} but {len(entries)} entries follow')

    payloads = sorted(e.payload for e in entries)
    if payloads != list(range(2 * list_size)):
        raise WireIndexError(
            f'Payloads must be the wire indices 0..{2 * list_size - 1}')

    return list_size, fmt, entries


def format_metric_list(
    entries: Sequence[MetricEntry],
    fmt: KeyFormat,
    header: bool = True,
) -> str:
    lines = []
    if header:
        lines.append(f'L={len(entries) // 2} Q={fmt.q_bits}')
    lines.extend(f'{e[0]} {e[1]}' for e in entries)
    return '\n'.join(lines) + '\n'
