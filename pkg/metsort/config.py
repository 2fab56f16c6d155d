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
Configuration mgmt.
"""
import os
from os.path import dirname
import shutil

import toml
import click

from .log import get_logger
from ._util import ConfigError
from .metrics import KeyFormat

log = get_logger('config')

_config_dir = click.get_app_dir('metsort')
_file_name = 'metsort.toml'


def _override_config_dir(
    path: str
) -> None:
    global _config_dir
    _config_dir = path


def get_conf_path() -> str:
    """Return the default config path normally under
    ``~/.config/metsort`` on linux.

    """
    return os.path.join(_config_dir, _file_name)


def repodir() -> str:
    """Return the abspath to the repo directory.
    """
    dirpath = os.path.abspath(
        # we're 2 levels down in **this** module file
        dirname(dirname(os.path.realpath(__file__)))
    )
    return dirpath


def load(
    path: str = None
) -> (dict, str):
    """Load the metsort config.

    A missing file is seeded from the repo's ``config/metsort.toml``
    when that template is around, otherwise an empty config is used.
    """
    path = path or get_conf_path()
    if not os.path.isfile(path):
        template = os.path.join(repodir(), 'config', _file_name)
        if os.path.isfile(template):
            os.makedirs(os.path.dirname(path), exist_ok=True)
            log.debug(f"Seeding config file {path} from {template}")
            shutil.copyfile(template, path)
        else:
            log.debug(f"No config file at {path}, using built-in defaults")
            return {}, path

    config = toml.load(path)
    log.debug(f"Read config file {path}")
    return config, path


def write(
    config: dict,  # toml config as dict
    path: str = None,
) -> str:
    """Dump ``config`` to ``path`` (the user config file by default)
    and return the path written.

    """
    if not config:
        raise ConfigError('Refusing to write a blank config')

    path = path or get_conf_path()
    os.makedirs(os.path.dirname(path), exist_ok=True)
    log.info(f"Writing config file {path}")
    with open(path, 'w') as cf:
        toml.dump(config, cf)
    return path


def _split_key(key: str) -> tuple[str, str]:
    section, _, name = key.partition('.')
    if not section or not name or '.' in name:
        raise ConfigError(f'Config keys look like section.name, got {key!r}')
    return section, name


def get_value(config: dict, key: str):
    section, name = _split_key(key)
    try:
        return config[section][name]
    except (KeyError, TypeError):
        raise ConfigError(f'No config entry {key!r}')


def set_value(config: dict, key: str, text: str) -> dict:
    """Set ``section.name`` from its command line text.

    The text is read as a TOML value when it parses as one and kept
    as a plain string otherwise, so ``8`` is an int and ``2,4,8`` a
    string.
    """
    section, name = _split_key(key)
    try:
        value = toml.loads(f'value = {text}')['value']
    except ValueError:  # TomlDecodeError included
        value = text

    if key == 'metric.q_bits':
        if not isinstance(value, int):
            raise ConfigError(f'metric.q_bits must be an int, got {text!r}')
        KeyFormat(value)

    table = config.setdefault(section, {})
    if not isinstance(table, dict):
        raise ConfigError(f'{section!r} is not a config section')
    table[name] = value
    return config


def command_defaults(config: dict) -> dict:
    """Return the per-command sections as a click ``default_map``.

    Only table sections named after sub-commands are passed through;
    ``[metric]`` is consumed by the group itself.
    """
    return {
        name: dict(section)
        for name, section in config.items()
        if isinstance(section, dict) and name != 'metric'
    }
