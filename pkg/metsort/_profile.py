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
Profiling wrappers for the long running suites.

"""
import time
from functools import wraps

from .log import get_logger

log = get_logger(__name__)


def timeit(fn):
    @wraps(fn)
    def wrapper(*args, **kwargs):
        t = time.perf_counter()
        res = fn(*args, **kwargs)
        log.profile(
            '%s.%s: %.4f sec'
            % (fn.__module__, fn.__qualname__, time.perf_counter() - t)
        )
        return res

    return wrapper
