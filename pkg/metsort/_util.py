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
Handy utils and the error tree.
"""


class MetsortError(Exception):
    "Generic metsort issue"


class KeyRangeError(MetsortError):
    "Metric key or increment outside the Q-bit domain"


class UnsortedMetricsError(MetsortError):
    "Surviving path metrics are not non-decreasing"


class SentinelCollisionError(MetsortError):
    "Value collides with the domain extremes used as -inf/+inf"


class WireIndexError(MetsortError):
    "Wire pair out of range or not ordered"


class NetworkError(MetsortError):
    "Malformed network, plan or input shape"


class PruningError(NetworkError):
    "Pruned construction does not reproduce its closed form counts"


class AdjacentSwapError(MetsortError):
    "Parallel bubble round requested with adjacent swap positions"


class UnknownArchitecture(MetsortError):
    "No sorter architecture by that name"


class GridError(MetsortError):
    "Unsupported input grid or increment profile"


class ConfigError(MetsortError):
    "Bad config key or an attempt to write an empty config"


class StructuredContractError(MetsortError):
    '''Input handed to a structured-input architecture violates
    the even-order or pair-order property.

    The offending ``Violation`` is kept on ``.violation`` and the
    batch row (if any) on ``.row``.

    '''
    def __init__(self, violation, row: int = None) -> None:
        self.violation = violation
        self.row = row
        where = f' (input row {row})' if row is not None else ''
        super().__init__(f'{violation.describe()}{where}')


def is_power_of_two(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0
