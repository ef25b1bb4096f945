###
# (C) Copyright [2024] catmouse contributors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#   http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
##

"""Possible-position dynamics of the invisible mouse game.

The mouse is invisible, so a cat strategy is a fixed schedule of shot sets
and the game state is the set of vertices the mouse could occupy.
"""

import logging

from catmouse import exceptions
from catmouse.graph_core import bipartition

PAPER = 'paper'
SHOOT_THEN_MOVE = 'shoot_then_move'
SEMANTICS = (PAPER, SHOOT_THEN_MOVE)
SEMANTICS_ALIASES = {'paper': PAPER, 'stm': SHOOT_THEN_MOVE, 'shoot_then_move': SHOOT_THEN_MOVE}

ALL_VERTICES = 'all'
CLASS_ONE = 'class1'
DOMAINS = (ALL_VERTICES, CLASS_ONE)

CATS_WIN = 'CatsWin'
MOUSE_SURVIVES = 'MouseSurvives'

logger = logging.getLogger(__name__)


class PositionSet(object):
    """Immutable vertex set stored as an integer bitmask."""

    __slots__ = ('bits',)

    def __init__(self, bits=0):
        self.bits = bits

    @classmethod
    def from_iterable(cls, vertices):
        bits = 0
        for v in vertices:
            bits |= 1 << v
        return cls(bits)

    @classmethod
    def full(cls, n):
        return cls((1 << n) - 1)

    def members(self):
        """Returns the sorted vertex ids of the set."""
        out = []
        bits = self.bits
        while bits:
            low = bits & -bits
            out.append(low.bit_length() - 1)
            bits ^= low
        return out

    @property
    def size(self):
        return bin(self.bits).count('1')

    def __len__(self):
        return self.size

    def __bool__(self):
        return self.bits != 0

    def __contains__(self, v):
        return (self.bits >> v) & 1 == 1

    def __or__(self, other):
        return PositionSet(self.bits | other.bits)

    def __and__(self, other):
        return PositionSet(self.bits & other.bits)

    def __sub__(self, other):
        return PositionSet(self.bits & ~other.bits)

    def __eq__(self, other):
        return isinstance(other, PositionSet) and self.bits == other.bits

    def __hash__(self):
        return hash(self.bits)

    def __repr__(self):
        return 'PositionSet({})'.format(self.members())

    def issubset(self, other):
        return self.bits & ~other.bits == 0

    def neighbourhood(self, t):
        """Vertices adjacent to at least one member of the set."""
        return PositionSet(neighbourhood_bits(t, self.bits))


def neighbourhood_bits(t, bits):
    masks = t.neighbour_masks
    out = 0
    while bits:
        low = bits & -bits
        out |= masks[low.bit_length() - 1]
        bits ^= low
    return out


class GameSemantics(object):
    """Turn-order convention and initial mouse domain.

    Attributes:
        order (str): 'paper' (A' = N(A) minus C) or 'shoot_then_move' (A' = N(A minus C)).
        initial_domain (str): 'all' or 'class1'.
    """

    def __init__(self, order=PAPER, initial_domain=ALL_VERTICES):
        order = SEMANTICS_ALIASES.get(order, order)
        if order not in SEMANTICS:
            raise exceptions.CatMouseInputError('Unknown semantics {}'.format(order))
        if initial_domain not in DOMAINS:
            raise exceptions.CatMouseInputError('Unknown initial domain {}'.format(initial_domain))
        self.order = order
        self.initial_domain = initial_domain

    def __eq__(self, other):
        return isinstance(other, GameSemantics) and \
            (self.order, self.initial_domain) == (other.order, other.initial_domain)

    def __hash__(self):
        return hash((self.order, self.initial_domain))

    def __repr__(self):
        return 'GameSemantics({!r}, {!r})'.format(self.order, self.initial_domain)


class Schedule(object):
    """A cat strategy: a finite sequence of shot sets of size at most r.

    Attributes:
        r (int): Cats per round.
        rounds (tuple): frozensets of vertex ids.
    """

    def __init__(self, r, rounds):
        self.rounds = tuple(frozenset(c) for c in rounds)
        if r < 1:
            raise exceptions.CatMouseInputError('A schedule needs at least one cat, got r = {}'.format(r))
        for index, shot in enumerate(self.rounds):
            if len(shot) > r:
                raise exceptions.CatMouseInputError(
                    'Round {} fires {} shots with only {} cats'.format(index + 1, len(shot), r))
        self.r = r

    @classmethod
    def tight(cls, rounds):
        """Schedule whose r is the largest shot set (at least one)."""
        rounds = [frozenset(c) for c in rounds]
        return cls(max([1] + [len(c) for c in rounds]), rounds)

    def __len__(self):
        return len(self.rounds)

    def __eq__(self, other):
        return isinstance(other, Schedule) and (self.r, self.rounds) == (other.r, other.rounds)

    def __repr__(self):
        return 'Schedule(r={}, rounds={})'.format(self.r, [sorted(c) for c in self.rounds])

    @property
    def cats_used(self):
        return max([0] + [len(c) for c in self.rounds])

    def check_vertices(self, t):
        for index, shot in enumerate(self.rounds):
            for v in shot:
                if not 0 <= v < t.n:
                    raise exceptions.CatMouseInputError(
                        'Round {} shoots vertex {} outside a tree of order {}'.format(index + 1, v, t.n))


class GameTrace(object):
    """Every intermediate possible-position set of a schedule run.

    Attributes:
        initial (PositionSet): A_0.
        steps (list): (round index, shot frozenset, PositionSet) tuples.
        outcome (str): 'CatsWin' or 'MouseSurvives'.
        caught_at (int): Round of the win, or None.
        semantics (GameSemantics): The convention used.
    """

    def __init__(self, initial, steps, semantics):
        self.initial = initial
        self.steps = list(steps)
        self.semantics = semantics
        self.caught_at = None
        for index, _, positions in self.steps:
            if not positions:
                self.caught_at = index
                break
        self.outcome = CATS_WIN if self.caught_at is not None else MOUSE_SURVIVES

    @property
    def cats_win(self):
        return self.outcome == CATS_WIN

    def sets(self):
        return [self.initial] + [positions for _, _, positions in self.steps]


def initial_domain(t, sem, classes=None):
    """A_0 for a semantics: every vertex, or class one of the bipartition."""
    if sem.initial_domain == ALL_VERTICES:
        return PositionSet.full(t.n)
    classes = classes if classes is not None else bipartition(t)
    return PositionSet(classes.mask(1))


def step_bits(bits, shot_bits, t, order):
    if order == PAPER:
        return neighbourhood_bits(t, bits) & ~shot_bits
    return neighbourhood_bits(t, bits & ~shot_bits)


def step(a, c, t, sem):
    """One round of the dynamics.

    Args:
        a: PositionSet before the round.
        c: Iterable of shot vertices.
        t: Tree
        sem: GameSemantics

    Returns:
        PositionSet: N(a) - c under the 'paper' order, N(a - c) when shooting first.
    """
    shot = c if isinstance(c, PositionSet) else PositionSet.from_iterable(c)
    return PositionSet(step_bits(a.bits, shot.bits, t, sem.order))


def run_schedule(t, s, sem, start=None):
    """Runs a schedule and records the full trace.

    Args:
        t: Tree
        s: Schedule
        sem: GameSemantics
        start: Optional PositionSet overriding the semantics' initial domain.

    Returns:
        GameTrace object
    """
    s.check_vertices(t)
    current = start if start is not None else initial_domain(t, sem)
    initial = current
    steps = []
    for index, shot in enumerate(s.rounds, 1):
        current = step(current, shot, t, sem)
        steps.append((index, shot, current))
        if not current:
            break

    trace = GameTrace(initial, steps, sem)
    logger.debug('Schedule of %s rounds on %s vertices: %s', len(s), t.n, trace.outcome)
    return trace


def verify_winning(t, s, sem):
    """True iff the schedule empties the possible-position set."""
    return run_schedule(t, s, sem).cats_win


def shift_schedule(s):
    """Prepends an empty round: (C_1..C_t) -> (empty, C_1..C_t)."""
    return Schedule(s.r, [frozenset()] + list(s.rounds))
