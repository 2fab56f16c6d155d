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
Network generation, cost tables and one-shot sorting.
"""
import click

from ..cli import cli
from ..log import get_logger
from ..metrics import read_metric_list, format_metric_list
from ..sorters import __archs__, get_sorter
from ._cost import cost_table, format_table

log = get_logger(__name__)


def _parse_sizes(ctx, param, value) -> list[int]:
    if isinstance(value, (list, tuple)):
        return [int(v) for v in value]
    try:
        sizes = [int(v) for v in str(value).split(',') if v.strip()]
    except ValueError:
        raise click.BadParameter(f'expected comma separated ints: {value}')
    if not sizes:
        raise click.BadParameter('no list sizes given')
    return sizes


@cli.command()
@click.option('--arch', '-a', type=click.Choice(__archs__), required=True)
@click.option('--list-size', '-L', type=int, required=True)
@click.option(
    '--format', type=click.Choice(['json', 'dot']), default='json',
    help='Export format; plans only export as json',
)
@click.option(
    '--out', '-o', type=click.Path(dir_okay=False), default=None,
    help='Write the export here instead of stdout',
)
@click.pass_obj
def gen(config, arch, list_size, format, out):
    """Build a sorter and export its network or comparator plan.
    """
    sorter = get_sorter(arch, list_size)
    text = sorter.export(format)
    report = sorter.cost()

    if out:
        with open(out, 'w') as f:
            f.write(text)
        log.info(f'Wrote {arch} L={list_size} to {out}')
    else:
        click.echo(text, nl=not text.endswith('\n'))

    stages = '-' if report.measured_stages is None else report.measured_stages
    click.echo(
        f'{arch} L={list_size}: stages={stages} cas={report.measured_cas}',
        err=True,
    )


@cli.command()
@click.option(
    '--list-sizes', default='2,4,8,16,32', callback=_parse_sizes,
    help='Comma separated list sizes',
)
@click.option('--format', type=click.Choice(['csv', 'md']), default='csv')
@click.option(
    '--arch', '-a', type=click.Choice(__archs__), multiple=True,
    help='Restrict to these architectures (repeatable)',
)
@click.pass_context
def cost(ctx, list_sizes, format, arch):
    """Measured vs. closed form stage and CAS counts.

    Exits non-zero if any count diverges from its closed form.
    """
    df = cost_table(list_sizes, arch or None)
    click.echo(format_table(df, format), nl=False)

    bad = df[~df['match'].astype(bool)]
    if len(bad):
        for row in bad.itertuples(index=False):
            log.error(
                f'{row.arch} L={row.L}: measured {row.stages}/{row.cas},'
                f' expected {row.formula_stages}/{row.formula_cas}')
        ctx.exit(1)


@cli.command()
@click.option('--arch', '-a', type=click.Choice(__archs__), required=True)
@click.option(
    '--in', 'infile', type=click.File('r'), default='-',
    help='Metric list file (`L=<n> Q=<q>` header, `<key> <payload>` lines)',
)
@click.pass_obj
def sort(config, arch, infile):
    """Print the L smallest entries of a metric list, in order.
    """
    list_size, fmt, entries = read_metric_list(infile.read())
    sorter = get_sorter(arch, list_size)
    click.echo(format_metric_list(sorter(entries), fmt, header=False), nl=False)
