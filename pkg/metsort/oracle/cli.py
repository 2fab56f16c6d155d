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
Verification commands: oracle equivalence and bubble round checks.
"""
import click

from ..cli import cli
from ..log import get_logger, colorize_json
from .._util import NetworkError, is_power_of_two
from ..sorters import __archs__, iter_sorters, from_network
from ..sortnet import import_network
from .. import bubble
from ._grid import InputGrid
from ._suite import equivalence_suite

log = get_logger(__name__)


def _grid_options(fn):
    for option in reversed([
        click.option('--list-size', '-L', type=int, required=True),
        click.option(
            '--mode', type=click.Choice(['exhaustive', 'random']),
            default='random',
        ),
        click.option('--trials', type=int, default=10_000),
        click.option('--seed', type=int, default=0),
        click.option(
            '--profile', default='uniform_full',
            help='Increment profile for random mode, e.g. uniform_small:3',
        ),
        click.option(
            '--key-max', type=int, default=None,
            help='Largest key of an exhaustive grid (documented default);'
                 ' grids past 2**20 inputs are refused',
        ),
    ]):
        fn = option(fn)
    return fn


def _make_grid(config, list_size, mode, trials, seed, profile, key_max):
    fmt = config['fmt']
    if mode == 'exhaustive':
        return InputGrid.exhaustive(list_size, key_max, fmt)
    return InputGrid.random(list_size, trials, seed, fmt, profile)


@cli.command()
@click.option(
    '--arch', '-a', type=click.Choice(__archs__ + ['all']), default='all')
@_grid_options
@click.option(
    '--net-file', type=click.File('r'), default=None,
    help='Check a network exported with `gen` instead of a built one',
)
@click.option('--json', 'as_json', is_flag=True, help='Machine readable report')
@click.pass_context
def verify(
    ctx, arch, list_size, mode, trials, seed, profile, key_max,
    net_file, as_json,
):
    """Compare sorters against the brute force oracle.
    """
    config = ctx.obj
    grid = _make_grid(config, list_size, mode, trials, seed, profile, key_max)

    if net_file is not None:
        net = import_network(net_file.read())
        if net.list_size != list_size:
            raise NetworkError(
                f'Network file is for L={net.list_size}, not L={list_size}')
        sorters = [from_network(net)]

    else:
        archs = __archs__ if arch == 'all' else [arch]
        if not is_power_of_two(list_size):
            skipped = [a for a in archs if a.endswith('bitonic')]
            if skipped and arch == 'all':
                log.warning(f'Skipping {skipped} for L={list_size}')
                archs = [a for a in archs if a not in skipped]
        sorters = list(iter_sorters(list_size, archs))

    report = equivalence_suite(sorters, grid)

    if as_json:
        click.echo(report.model_dump_json(indent=2))
    else:
        click.echo(colorize_json({
            'grid': report.grid,
            'cases': report.cases,
            'mismatches': report.mismatches,
            'exclusion_violations': report.exclusion_violations,
            'known_table_violations': report.known_table_violations,
            'passed': report.passed,
        }))

    if not report.passed:
        if report.first_mismatch is not None:
            log.error(
                'First mismatch:\n'
                + report.first_mismatch.model_dump_json(indent=2))
        ctx.exit(1)


@cli.command()
@_grid_options
@click.option(
    '--sort-mode', type=click.Choice(['full', 'first-l', 'both']),
    default='both',
    help='Run the bubble sort to completion, up to the first L, or both',
)
@click.option(
    '--dump', type=click.File('w'), default=None,
    help='Write the round traces of the first input as JSON lines',
)
@click.option('--json', 'as_json', is_flag=True, help='Machine readable report')
@click.pass_context
def lemma(
    ctx, list_size, mode, trials, seed, profile, key_max,
    sort_mode, dump, as_json,
):
    """Check the round structure of bubble sort on structured lists.
    """
    config = ctx.obj
    grid = _make_grid(config, list_size, mode, trials, seed, profile, key_max)
    modes = bubble.MODES if sort_mode == 'both' else (sort_mode,)

    reports = [
        bubble.run_lemma_suite(grid.batches(), list_size, m)
        for m in modes
    ]

    if dump is not None:
        first = next(iter(grid))
        _, traces = bubble.run_bubble_traced(first.entries, modes[0])
        dump.write(bubble.dump_traces(traces))

    if as_json:
        click.echo('[' + ','.join(
            r.model_dump_json(indent=2) for r in reports) + ']')
    else:
        click.echo(colorize_json([
            {
                'mode': r.mode,
                'cases': r.cases,
                'failed_cases': r.failed_cases,
                'oracle_mismatches': r.oracle_mismatches,
                'max_rounds': r.max_rounds,
                'round_bound': r.round_bound,
                'passed': r.passed,
            }
            for r in reports
        ]))

    if not all(r.passed for r in reports):
        ctx.exit(1)
