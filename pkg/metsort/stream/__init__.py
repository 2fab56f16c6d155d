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
Closed loop metric update and sort simulation.
"""
from ._sim import (
    StreamConfig,
    StreamState,
    StepCheck,
    StreamSummary,
    apply_increments,
    step,
    lineage_digest,
    run_stream,
    trajectory_frame,
)

__all__ = [
    'StreamConfig',
    'StreamState',
    'StepCheck',
    'StreamSummary',
    'apply_increments',
    'step',
    'lineage_digest',
    'run_stream',
    'trajectory_frame',
]
