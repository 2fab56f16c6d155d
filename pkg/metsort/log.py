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
Log like a forester!
"""
import sys
import json
import logging
from typing import Optional, Union

import colorlog
from pygments import highlight, lexers, formatters

# Makes it so we only see the full module name when using ``__name__``
# without the extra "metsort." prefix.
_proj_name = 'metsort'

LOG_FORMAT = (
    "{log_color}{asctime}{reset}"
    " {log_color}[{reset}{bold_log_color}{levelname}{reset}{log_color}]"
    " {log_color}{name}"
    " {thin_white}{filename}{log_color}:{reset}{thin_white}{lineno}{log_color}"
    " {reset}{bold_white}{thin_white}{message}"
)
DATE_FORMAT = '%b %d %H:%M:%S'

# extra levels on top of the stdlib ones
LEVELS = {
    'TRACE': 5,
    'PROFILE': 15,
}

STD_PALETTE = {
    'CRITICAL': 'red',
    'ERROR': 'red',
    'WARNING': 'yellow',
    'INFO': 'green',
    'PROFILE': 'purple',
    'DEBUG': 'white',
    'TRACE': 'cyan',
}

BOLD_PALETTE = {
    'bold': {
        level: f"bold_{color}" for level, color in STD_PALETTE.items()}
}

for _name, _val in LEVELS.items():
    logging.addLevelName(_val, _name)


class _LevelAdapter(logging.LoggerAdapter):
    '''Adapter exposing our custom levels as methods.

    '''
    def trace(self, msg: str, *args, **kwargs) -> None:
        self.log(LEVELS['TRACE'], msg, *args, **kwargs)

    def profile(self, msg: str, *args, **kwargs) -> None:
        self.log(LEVELS['PROFILE'], msg, *args, **kwargs)


def get_logger(name: str = None) -> logging.LoggerAdapter:
    '''Return the package log or a sub-log for `name` if provided.
    '''
    log = rlog = logging.getLogger(_proj_name)
    if name and name != _proj_name:
        # strip our own prefix so ``__name__`` can be passed straight in
        if name.startswith(f'{_proj_name}.'):
            name = name[len(_proj_name) + 1:]
        log = rlog.getChild(name)

    return _LevelAdapter(log, {})


def get_console_log(
    level: Optional[Union[str, int]] = None,
    name: str = None,
) -> logging.LoggerAdapter:
    '''Get the package logger and enable a handler which writes to stderr.

    Yeah yeah, i know we can use ``DictConfig``. You do it...
    '''
    log = get_logger(name)
    if not level:
        return log

    logger = log.logger
    rlog = logging.getLogger(_proj_name)
    rlog.setLevel(level.upper() if isinstance(level, str) else level)

    if not any(
        getattr(handler, 'stream', None) in (sys.stderr, sys.__stderr__)
        for handler in rlog.handlers
    ):
        handler = logging.StreamHandler()
        formatter = colorlog.ColoredFormatter(
            LOG_FORMAT,
            datefmt=DATE_FORMAT,
            log_colors=STD_PALETTE,
            secondary_log_colors=BOLD_PALETTE,
            style='{',
        )
        handler.setFormatter(formatter)
        rlog.addHandler(handler)

    return _LevelAdapter(logger, {})


def colorize_json(data, style='algol_nu'):
    """Colorize json output using ``pygments``.
    """
    formatted_json = json.dumps(data, sort_keys=True, indent=4)
    return highlight(
        formatted_json, lexers.JsonLexer(),
        # likeable styles: algol_nu, tango, monokai
        formatters.TerminalTrueColorFormatter(style=style)
    )
