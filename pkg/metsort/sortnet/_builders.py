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
CAS network builders: bitonic, pruned bitonic, full and simplified
bubble.

"""
from enum import Enum
from typing import Callable, Optional

from ..log import get_logger, LEVELS
from .._util import NetworkError, PruningError, is_power_of_two
from ..metrics import Relation, known_relation
from ._network import (
    CasUnit,
    Direction,
    Stage,
    SortNetwork,
    check_network,
)
from ._cost import formula

log = get_logger(__name__)


def _check_size(arch: str, list_size: int, pow2: bool = False) -> None:
    if list_size < 2:
        raise NetworkError(f'{arch}: list size must be >= 2, got {list_size}')
    if pow2 and not is_power_of_two(list_size):
        raise NetworkError(
            f'{arch}: list size must be a power of two, got {list_size}')


def _batcher(wires: int) -> list[list[CasUnit]]:
    '''Batcher's bitonic sorter over ``wires`` (a power of two) as
    positional stages of ascending/descending units.

    '''
    stages = []
    k = 2
    while k <= wires:
        j = k // 2
        while j >= 1:
            units = []
            for i in range(wires):
                partner = i ^ j
                if partner > i:
                    units.append(CasUnit(
                        i, partner,
                        Direction.ASC if i & k == 0 else Direction.DESC,
                    ))
            stages.append(units)
            j //= 2
        k *= 2

    return stages


def build_bitonic(list_size: int) -> SortNetwork:
    _check_size('bitonic', list_size, pow2=True)
    net = SortNetwork(
        arch='bitonic',
        list_size=list_size,
        wires=2 * list_size,
        stages=tuple(
            Stage(cas=tuple(units))
            for units in _batcher(2 * list_size)
        ),
    )
    check_network(net)
    return net


class _Outcome(Enum):
    DYNAMIC = 'dynamic'
    PASS = 'pass'
    SWAP = 'swap'


def _leading_side(
    a: Optional[int],
    b: Optional[int],
    first_stage: bool,
    top: int,
) -> Optional[str]:
    '''Which input of a unit statically holds the preceding entry.

    ``a`` and ``b`` are the input wires the entries on ``lo`` and
    ``hi`` came from, ``None`` once that is data dependent. The entry
    from wire 0 precedes everything and the one from wire ``2L - 1``
    can be treated as succeeding everything since it never reaches the
    first ``L`` outputs. The first stage only compares ``m[2l]`` with
    ``m[2l + 1]`` which pair-order resolves.

    '''
    if a == 0 or b == top:
        return 'lo'
    if b == 0 or a == top:
        return 'hi'

    if first_stage and a is not None and b is not None:
        i, j = sorted((a, b))
        if known_relation(i, j) is Relation.I_KNOWN_SMALLER:
            return 'lo' if a == i else 'hi'

    return None


def _propagate(
    stages: list[list[CasUnit]],
    wires: int,
) -> list[list[tuple[CasUnit, _Outcome]]]:
    top = wires - 1
    origin: list[Optional[int]] = list(range(wires))
    decided = []

    for index, units in enumerate(stages):
        stage = []
        for unit in units:
            lo, hi, direction = unit
            a, b = origin[lo], origin[hi]
            side = _leading_side(a, b, index == 0, top)

            if side is None:
                origin[lo] = origin[hi] = None
                stage.append((unit, _Outcome.DYNAMIC))
                continue

            want = 'lo' if direction is Direction.ASC else 'hi'
            if side == want:
                stage.append((unit, _Outcome.PASS))
            else:
                origin[lo], origin[hi] = b, a
                stage.append((unit, _Outcome.SWAP))

        decided.append(stage)

    return decided


def _prune_dead(
    decided: list[list[tuple[CasUnit, _Outcome]]],
    list_size: int,
) -> list[tuple[set[CasUnit], bool]]:
    '''Backward liveness from the first ``L`` outputs.

    Returns per stage the dynamic units worth keeping and whether a
    static swap there moves a live entry. Passes vanish and anything
    feeding only "don't care" wires is dropped.

    '''
    live = set(range(list_size))
    kept = [None] * len(decided)

    for index in reversed(range(len(decided))):
        cas, moved = set(), False
        feeding = set(live)

        for unit, outcome in decided[index]:
            lo, hi, _ = unit
            touched = (lo in live, hi in live)
            if not any(touched):
                continue

            if outcome is _Outcome.DYNAMIC:
                cas.add(unit)
                feeding.update((lo, hi))

            elif outcome is _Outcome.SWAP:
                moved = True
                if touched[0] != touched[1]:
                    feeding.symmetric_difference_update((lo, hi))

        kept[index] = (cas, moved)
        live = feeding

    return kept


def _place(unit: CasUnit, wiring: list[int]) -> CasUnit:
    '''Put a unit onto the physical wires holding its two inputs.

    When those are the unit's own wires in crossed order the outputs
    go back onto their own wires.

    '''
    lo, hi, direction = unit
    p, q = wiring[lo], wiring[hi]
    if p == hi or q == lo:
        wiring[lo], wiring[hi] = q, p

    # physical wire receiving the smaller entry
    small = wiring[lo] if direction is Direction.ASC else wiring[hi]
    a, b = sorted((p, q))
    return CasUnit(a, b, Direction.ASC if small == a else Direction.DESC)


def _relabel(
    decided: list[list[tuple[CasUnit, _Outcome]]],
    kept: list[tuple[set[CasUnit], bool]],
    list_size: int,
    wires: int,
) -> list[Stage]:
    '''Absorb every static swap into the wiring.

    ``wiring[l]`` is the physical wire holding what the full network
    keeps at position ``l``; a static swap only exchanges two labels.
    Stages whose only content was static swaps disappear, stages
    emptied by pruning keep their position.

    '''
    wiring = list(range(wires))
    stages = []

    for index, (stage, (cas, moved)) in enumerate(zip(decided, kept)):
        units = []
        for unit, outcome in stage:
            if outcome is _Outcome.SWAP:
                lo, hi, _ = unit
                wiring[lo], wiring[hi] = wiring[hi], wiring[lo]
            elif unit in cas:
                units.append(_place(unit, wiring))

        if moved and not units:
            log.debug(f'Absorbed static stage {index} into the wiring')
            continue

        stages.append(Stage(cas=tuple(units)))

    stray = [l for l in range(list_size) if wiring[l] != l]
    if stray:
        raise PruningError(f'Outputs {stray} do not end on their own wires')

    return stages


def build_pruned_bitonic(list_size: int) -> SortNetwork:
    '''Bitonic sorter with every unit removed whose outcome is implied
    by the structured contract or which only feeds the upper ``L``
    outputs.

    '''
    _check_size('pruned-bitonic', list_size, pow2=True)
    wires = 2 * list_size

    decided = _propagate(_batcher(wires), wires)
    if log.isEnabledFor(LEVELS['TRACE']):
        for index, stage in enumerate(decided):
            log.trace(
                f'stage {index}: '
                + ' '.join(f'{u.lo}-{u.hi}:{o.value}' for u, o in stage)
            )

    stages = _relabel(
        decided, _prune_dead(decided, list_size), list_size, wires)
    net = SortNetwork(
        arch='pruned-bitonic',
        list_size=list_size,
        wires=wires,
        stages=tuple(stages),
    )
    check_network(net)

    expect_stages, expect_cas = formula('pruned-bitonic', list_size)
    if (net.num_stages, net.num_cas) != (expect_stages, expect_cas):
        raise PruningError(
            f'Pruned bitonic L={list_size} built {net.num_stages} stages /'
            f' {net.num_cas} CAS, expected {expect_stages} / {expect_cas}')

    log.debug(
        f'Pruned bitonic L={list_size}: {net.num_stages} stages,'
        f' {net.num_cas} CAS')
    return net


def _bubble(arch: str, list_size: int, simplified: bool) -> SortNetwork:
    # stage ``t`` runs the odd-even transposition round whose swaps sit
    # on even ``l`` for odd ``t`` and odd ``l`` for even ``t``, all with
    # ``l >= t + 1``; the simplified network also stops at ``2L - 1 - t``
    wires = 2 * list_size
    rounds = list_size - 1 if simplified else wires - 2

    stages = []
    for t in range(1, rounds + 1):
        upper = wires - 1 - t if simplified else wires - 1
        stages.append(Stage(cas=tuple(
            CasUnit(l - 1, l)
            for l in range(t + 1, upper + 1)
            if l % 2 != t % 2
        )))

    net = SortNetwork(
        arch=arch,
        list_size=list_size,
        wires=wires,
        stages=tuple(stages),
    )
    check_network(net)
    return net


def build_full_bubble(list_size: int) -> SortNetwork:
    _check_size('bubble', list_size)
    return _bubble('bubble', list_size, simplified=False)


def build_simplified_bubble(list_size: int) -> SortNetwork:
    _check_size('simplified-bubble', list_size)
    return _bubble('simplified-bubble', list_size, simplified=True)


BUILDERS: dict[str, Callable[[int], SortNetwork]] = {
    'bitonic': build_bitonic,
    'pruned-bitonic': build_pruned_bitonic,
    'bubble': build_full_bubble,
    'simplified-bubble': build_simplified_bubble,
}


def build_network(arch: str, list_size: int) -> SortNetwork:
    try:
        builder = BUILDERS[arch]
    except KeyError:
        raise NetworkError(f'No network builder for {arch!r}')

    return builder(list_size)
