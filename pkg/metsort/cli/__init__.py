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
CLI commons.
"""
import os

import click
import toml

from ..log import get_console_log, get_logger
from .. import config
from .._util import MetsortError
from ..metrics import KeyFormat


log = get_logger('cli')


class MetsortGroup(click.Group):
    '''Turn any ``MetsortError`` escaping a command into a logged error
    and exit status 1.

    '''
    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except MetsortError as err:
            log.error(f'{type(err).__name__}: {err}')
            ctx.exit(1)


@click.group(cls=MetsortGroup)
@click.option('--loglevel', '-l', default='warning', help='Logging level')
@click.option('--configdir', '-c', help='Configuration directory')
@click.option(
    '--q-bits', '-q',
    type=int,
    default=None,
    help='Metric key width in bits (default from config, else 8)',
)
@click.pass_context
def cli(ctx, loglevel, configdir, q_bits):
    if configdir is not None:
        if not os.path.isdir(configdir):
            raise click.BadParameter(
                f'`{configdir}` is not a valid path', param_hint='configdir')
        config._override_config_dir(configdir)

    log = get_console_log(loglevel)
    conf, path = config.load()

    # per command sections become flag defaults
    ctx.default_map = config.command_defaults(conf)

    if q_bits is None:
        q_bits = conf.get('metric', {}).get('q_bits', 8)

    ctx.ensure_object(dict)
    ctx.obj.update({
        'loglevel': loglevel,
        'log': log,
        'conf': conf,
        'confpath': path,
        'fmt': KeyFormat(q_bits),
    })


@cli.command('config')
@click.argument('key', required=False)
@click.argument('value', required=False)
@click.pass_context
def config_cmd(ctx, key, value):
    """Show the config, one ``section.name`` entry of it, or set that
    entry and save the file.
    """
    conf = ctx.obj['conf']
    if key is None:
        click.echo(toml.dumps(conf), nl=False)
    elif value is None:
        click.echo(config.get_value(conf, key))
    else:
        config.set_value(conf, key, value)
        config.write(conf, ctx.obj['confpath'])


def _load_clis() -> None:
    from ..sortnet import cli  # noqa
    from ..oracle import cli  # noqa
    from ..stream import cli  # noqa


# load downstream cli modules
_load_clis()
