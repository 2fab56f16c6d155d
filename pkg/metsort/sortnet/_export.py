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
Network (de)serialization: JSON schema and graphviz DOT.

"""
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .._util import NetworkError
from ._network import (
    CasUnit,
    Direction,
    Stage,
    SortNetwork,
    check_network,
)


class CasModel(BaseModel):
    lo: int
    hi: int
    dir: Literal['asc', 'desc'] = 'asc'


class StageModel(BaseModel):
    cas: list[CasModel] = []
    route: list[tuple[int, int]] = []


class NetworkModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    arch: str
    list_size: int = Field(alias='L')
    wires: int
    stages: list[StageModel]


def to_model(net: SortNetwork) -> NetworkModel:
    return NetworkModel(
        arch=net.arch,
        list_size=net.list_size,
        wires=net.wires,
        stages=[
            StageModel(
                cas=[
                    CasModel(lo=u.lo, hi=u.hi, dir=u.direction.value)
                    for u in stage.cas
                ],
                route=list(stage.route),
            )
            for stage in net.stages
        ],
    )


def from_model(model: NetworkModel) -> SortNetwork:
    net = SortNetwork(
        arch=model.arch,
        list_size=model.list_size,
        wires=model.wires,
        stages=tuple(
            Stage(
                cas=tuple(
                    CasUnit(c.lo, c.hi, Direction(c.dir))
                    for c in stage.cas
                ),
                route=tuple(tuple(pair) for pair in stage.route),
            )
            for stage in model.stages
        ),
    )
    check_network(net)
    return net


def to_json(net: SortNetwork, indent: int = 2) -> str:
    return to_model(net).model_dump_json(by_alias=True, indent=indent)


def import_network(text: str) -> SortNetwork:
    '''Load a network from its JSON form, validating schema and stage
    contract.

    '''
    try:
        model = NetworkModel.model_validate_json(text)
    except ValidationError as err:
        raise NetworkError(f'Malformed network JSON:\n{err}')

    return from_model(model)


def to_dot(net: SortNetwork) -> str:
    '''Render wires as horizontal rails and each CAS unit as a vertical
    connector, one cluster per stage.

    Column ``c`` holds the wire contents after ``c`` stages; static
    routes show up as dashed rail segments.

    '''
    W = net.wires
    name = f'{net.arch}_L{net.list_size}'
    lines = [
        f'digraph "{name}" {{',
        '  rankdir=LR;',
        '  nodesep=0.15;',
        '  node [shape=point, width=0.06];',
        '  edge [arrowhead=none];',
        '',
        '  subgraph inputs {',
        '    rank=same;',
    ]
    lines.extend(
        f'    w{w}_c0 [shape=plaintext, label="m{w}"];' for w in range(W)
    )
    lines.append('  }')

    for s, stage in enumerate(net.stages):
        c = s + 1
        lines.extend([
            '',
            f'  subgraph cluster_stage_{c} {{',
            f'    label="stage {c}";',
            '    style=dotted;',
            '    rank=same;',
        ])
        lines.extend(f'    w{w}_c{c};' for w in range(W))
        for u in stage.cas:
            # arrow points at the wire receiving the larger entry
            head, tail = (
                (u.hi, u.lo) if u.direction is Direction.ASC
                else (u.lo, u.hi)
            )
            lines.append(
                f'    w{tail}_c{c} -> w{head}_c{c}'
                f' [arrowhead=normal, constraint=false];'
            )
        lines.append('  }')

        perm = stage.permutation(W)
        for dst in range(W):
            src = int(perm[dst])
            style = ', style=dashed' if src != dst else ''
            lines.append(
                f'  w{src}_c{c - 1} -> w{dst}_c{c} [weight=10{style}];')

    lines.append('}')
    return '\n'.join(lines) + '\n'


def export_network(net: SortNetwork, fmt: str = 'json') -> str:
    if fmt == 'json':
        return to_json(net)
    elif fmt == 'dot':
        return to_dot(net)

    raise NetworkError(f'Unknown export format {fmt!r}')
