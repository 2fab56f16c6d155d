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
Stream simulation command.
"""
import click
from pydantic import ValidationError

from ..cli import cli
from ..log import get_logger, colorize_json
from ..sorters import __archs__
from ._sim import StreamConfig, run_stream, trajectory_frame

log = get_logger(__name__)


@cli.command()
@click.option('--list-size', '-L', type=int, required=True)
@click.option('--steps', type=int, default=1000)
@click.option('--profile', default='uniform_small:3')
@click.option('--seed', type=int, default=0)
@click.option(
    '--arch', '-a', type=click.Choice(__archs__), default='pruned-bitonic')
@click.option(
    '--check/--no-check', default=True,
    help='Cross check every step against the oracle',
)
@click.option(
    '--csv', 'csv_path', type=click.Path(dir_okay=False), default=None,
    help='Write the per step mu trajectory as csv',
)
@click.option('--json', 'as_json', is_flag=True, help='Machine readable summary')
@click.pass_context
def stream(
    ctx, list_size, steps, profile, seed, arch, check, csv_path, as_json,
):
    """Run metric updates through a sorter step after step.

    Exits non-zero on any structure or oracle violation.
    """
    try:
        config = StreamConfig(
            list_size=list_size,
            q_bits=ctx.obj['fmt'].q_bits,
            steps=steps,
            profile=profile,
            seed=seed,
            arch=arch,
            check=check,
        )
    except ValidationError as err:
        raise click.UsageError(str(err))

    summary = run_stream(config, record=csv_path is not None)

    if csv_path:
        trajectory_frame(summary).to_csv(csv_path, index=False)
        log.info(f'Wrote trajectory to {csv_path}')

    if as_json:
        click.echo(summary.model_dump_json(indent=2, exclude={'trajectory'}))
    else:
        click.echo(colorize_json({
            'arch': arch,
            'L': list_size,
            'steps': summary.steps_run,
            'violations': summary.violations,
            'mu_sorted': summary.mu_sorted,
            'min_mu_monotone': summary.min_mu_monotone,
            'final_mu': summary.final_mu,
            'lineage_digest': summary.lineage_digest,
            'passed': summary.passed,
        }))

    if not summary.passed:
        ctx.exit(1)
