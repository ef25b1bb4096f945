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

"""Exact hunter number by breadth-first search over possible-position sets."""

import logging
from itertools import combinations

from catmouse import exceptions
from catmouse.game_engine import PAPER
from catmouse.game_engine import GameSemantics
from catmouse.game_engine import PositionSet
from catmouse.game_engine import Schedule
from catmouse.game_engine import initial_domain
from catmouse.game_engine import neighbourhood_bits
from catmouse.game_engine import step_bits

DEFAULT_MAX_ORDER = 24
DEFAULT_MAX_CATS = 3

MSG_ORDER_GUARD = 'Tree of order {} exceeds the solver guard of {} vertices'
MSG_CATS_GUARD = '{} cats exceed the solver guard of {} cats'

logger = logging.getLogger(__name__)


class SolveResult(object):
    """Outcome of a hunter number computation.

    Attributes:
        h (int): Minimal cat count.
        witness (Schedule): Shortest winning schedule with h cats.
        explored_states (int): States expanded over every r tried.
        per_r_outcomes (dict): r -> win flag for every r tried.
        semantics (GameSemantics): The convention used.
    """

    def __init__(self, h, witness, explored_states, per_r_outcomes, semantics):
        self.h = h
        self.witness = witness
        self.explored_states = explored_states
        self.per_r_outcomes = dict(per_r_outcomes)
        self.semantics = semantics


def _candidates(bits, t, order):
    if order == PAPER:
        return PositionSet(neighbourhood_bits(t, bits)).members()
    return PositionSet(bits).members()


def pruned_shots(a, t, r, sem=None):
    """Yields the shot sets that can change the successor of a.

    Under the 'paper' order only vertices of N(a) matter, when shooting
    first only vertices of a. Sets come in order of size, then lexicographically.

    Args:
        a: PositionSet
        t: Tree
        r: Maximum shot-set size.
        sem: GameSemantics, 'paper' order by default.
    """
    order = sem.order if sem is not None else PAPER
    candidates = _candidates(a.bits, t, order)
    for size in range(min(r, len(candidates)) + 1):
        for shot in combinations(candidates, size):
            yield frozenset(shot)


def _minimal(states):
    """Drops every state that is a superset of another one."""
    states = sorted(set(states), key=lambda bits: (bin(bits).count('1'), bits))
    kept = []
    for bits in states:
        if not any(other & ~bits == 0 for other in kept):
            kept.append(bits)
    return kept


class Solver(object):
    """Exact solver with capacity guards.

    Args:
        max_order: Largest tree order accepted.
        max_cats: Largest cat count tried.
        prune_dominated: Expand only maximal shots and minimal sibling states.
    """

    def __init__(self, max_order=DEFAULT_MAX_ORDER, max_cats=DEFAULT_MAX_CATS, prune_dominated=True):
        self.max_order = max_order
        self.max_cats = max_cats
        self.prune_dominated = prune_dominated
        self.explored_states = 0

    def _check_capacity(self, t, r):
        if t.n > self.max_order:
            raise exceptions.CatMouseCapacityError({'message': MSG_ORDER_GUARD.format(t.n, self.max_order),
                                                    'order': t.n, 'max_order': self.max_order})
        if r > self.max_cats:
            raise exceptions.CatMouseCapacityError({'message': MSG_CATS_GUARD.format(r, self.max_cats),
                                                    'cats': r, 'max_cats': self.max_cats})

    def _successors(self, bits, t, r, order):
        candidates = _candidates(bits, t, order)
        if self.prune_dominated:
            sizes = [min(r, len(candidates))]
        else:
            sizes = range(min(r, len(candidates)) + 1)

        moves = {}
        for size in sizes:
            for shot in combinations(candidates, size):
                shot_bits = 0
                for v in shot:
                    shot_bits |= 1 << v
                nxt = step_bits(bits, shot_bits, t, order)
                if nxt not in moves or shot < moves[nxt]:
                    moves[nxt] = shot

        keep = _minimal(moves) if self.prune_dominated else sorted(moves, key=lambda b: (bin(b).count('1'), b))
        return [(nxt, moves[nxt]) for nxt in keep]

    def cats_win(self, t, r, sem=None, start=None):
        """Decides whether r cats clean t.

        Args:
            t: Tree
            r: Cat count, r >= 1.
            sem: GameSemantics, 'paper' order from every vertex by default.
            start: Optional PositionSet overriding the initial domain.

        Returns:
            tuple: (win flag, witness Schedule or None). The witness is the lexicographically
            smallest of the shortest winning shot sequences the search expands.

        Raises:
            CatMouseCapacityError: if t or r exceeds the guards.
        """
        sem = sem if sem is not None else GameSemantics()
        if r < 1:
            raise exceptions.CatMouseInputError('At least one cat is needed, got r = {}'.format(r))
        self._check_capacity(t, r)

        origin = (start if start is not None else initial_domain(t, sem)).bits
        parent = {origin: None}
        frontier = [origin]
        layer = 0
        while frontier and 0 not in parent:
            layer += 1
            # frontier stays sorted by the shot sequence reaching each state
            best = {}
            for rank, bits in enumerate(frontier):
                self.explored_states += 1
                for nxt, shot in self._successors(bits, t, r, sem.order):
                    if nxt in parent:
                        continue
                    key = (rank, shot)
                    if nxt not in best or key < best[nxt][0]:
                        best[nxt] = (key, bits, shot)
            frontier = sorted(best, key=lambda state: best[state][0])
            for nxt in frontier:
                parent[nxt] = (best[nxt][1], frozenset(best[nxt][2]))
            logger.debug('r=%s layer %s: %s new states', r, layer, len(frontier))

        if 0 not in parent:
            return False, None

        rounds = []
        bits = 0
        while parent[bits] is not None:
            bits, shot = parent[bits]
            rounds.append(shot)
        rounds.reverse()
        return True, Schedule(r, rounds)

    def hunter_number(self, t, sem=None, start=None):
        """Least r with cats_win true, tried in ascending order.

        Returns:
            SolveResult object

        Raises:
            CatMouseCapacityError: if no r within max_cats wins or t is too large.
        """
        sem = sem if sem is not None else GameSemantics()
        self.explored_states = 0
        outcomes = {}
        for r in range(1, self.max_cats + 1):
            win, witness = self.cats_win(t, r, sem, start)
            outcomes[r] = win
            if win:
                logger.info('Hunter number %s on %s vertices (%s states)', r, t.n, self.explored_states)
                return SolveResult(r, witness, self.explored_states, outcomes, sem)

        raise exceptions.CatMouseCapacityError({'message': 'No win with up to {} cats'.format(self.max_cats),
                                                'per_r_outcomes': outcomes})
