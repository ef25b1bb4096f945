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

"""Constructive cat strategies on trees.

basic_strategy splits at a centre and recurses with one extra cat per
level. improved_strategy plays the variant game where the mouse starts in
class one: since the cats then know the mouse's class before every round,
one guard can protect a vertex of each class by alternating between them,
while the soldiers clean pieces of order at most n/4.
"""

import logging

from catmouse import exceptions
from catmouse.game_engine import CLASS_ONE
from catmouse.game_engine import PAPER
from catmouse.game_engine import GameSemantics
from catmouse.game_engine import Schedule
from catmouse.game_engine import run_schedule
from catmouse.graph_core import bipartition
from catmouse.graph_core import find_centre
from catmouse.graph_core import split
from catmouse.solver import Solver

BASE_ORDER = 9

logger = logging.getLogger(__name__)


def log_bound(n):
    """ceil(log2 n) in integers."""
    return (n - 1).bit_length()


def half_log_bound(n):
    """ceil(log2(n) / 2): the least c with 4^c >= n."""
    c = 0
    while 4 ** c < n:
        c += 1
    return c


def _shots(*vertices):
    return frozenset(v for v in vertices if v is not None)


def _components(t, vertices):
    return [list(mapping) for _, mapping in split(t, vertices)]


class BigComponent(object):
    """A component of T - v of order more than n/4, split at its own centre.

    Attributes:
        vertices (list): Sorted vertex ids.
        centre (int): b, centre of the component.
        entry (int): The neighbour of v inside the component.
        plus (list): Component of B - b holding the entry, empty when entry = b.
        minus (list): The other components of B - b.
        joint (int): Vertex of plus adjacent to b, None when plus is empty.
        star (list): Components of plus - joint.
        hard (bool): True when b lies in the class of v.
    """

    def __init__(self, vertices, centre, entry, plus, minus, joint, star, hard):
        self.vertices = vertices
        self.centre = centre
        self.entry = entry
        self.plus = plus
        self.minus = minus
        self.joint = joint
        self.star = star
        self.hard = hard


class DecompositionPlan(object):
    """Centre split of a tree into big components and small ones.

    Attributes:
        order (int): Order of the decomposed region.
        centre (int): v.
        big (list): BigComponent records, at most three.
        small (list): Components of T - v of order at most n/4.
    """

    def __init__(self, order, centre, big, small):
        self.order = order
        self.centre = centre
        self.big = big
        self.small = small

    def check(self):
        """Raises CatMouseInvariantError when a structural invariant fails."""
        problems = []
        if len(self.big) > 3:
            problems.append('{} big components'.format(len(self.big)))
        for index, comp in enumerate(self.big, 1):
            if 4 * len(comp.vertices) <= self.order:
                problems.append('B{} has order {}'.format(index, len(comp.vertices)))
            pieces = sorted(comp.plus + [w for piece in comp.minus for w in piece] + [comp.centre])
            if pieces != comp.vertices:
                problems.append('B{} is not partitioned by its centre split'.format(index))
        for piece in self.small:
            if 4 * len(piece) > self.order:
                problems.append('small component of order {}'.format(len(piece)))
        if problems:
            raise exceptions.CatMouseInvariantError({'message': 'Invalid decomposition: {}'.format('; '.join(problems)),
                                                     'problems': problems})


class Stage(object):
    """A guarded stretch of an improved schedule.

    The guard shoots guard[1] on rounds where the mouse is in the class
    opposite to the centre and guard[0] on the others. Positions are
    half-open list indices into the schedule.
    """

    def __init__(self, label, start, end, guard):
        self.label = label
        self.start = start
        self.end = end
        self.guard = guard

    def shifted(self, offset):
        return Stage(self.label, self.start + offset, self.end + offset, self.guard)

    def to_dict(self):
        return {'label': self.label, 'start': self.start, 'end': self.end, 'guard': list(self.guard)}


class VariantSchedule(object):
    """Schedule for the game where the mouse starts in class one.

    Attributes:
        schedule (Schedule): The shots.
        stages (list): Stage records of the outermost decomposition.
        origin (int): 1 when an alignment round precedes the stages, else 0.
        plan (DecompositionPlan): Outermost decomposition, None in the base case.
    """

    semantics = GameSemantics(PAPER, CLASS_ONE)

    def __init__(self, schedule, stages=(), origin=0, plan=None):
        self.schedule = schedule
        self.stages = list(stages)
        self.origin = origin
        self.plan = plan

    @property
    def parity_certificate(self):
        return len(self.schedule) % 2 == 0

    def stage_parity_ok(self):
        return all((s.start - self.origin) % 2 == 0 and (s.end - self.origin) % 2 == 0 for s in self.stages)

    def guard_violations(self):
        """Rounds of a stage whose shot misses the guard vertex for the mouse's class."""
        violations = []
        for stage in self.stages:
            x, y = stage.guard
            for j in range(stage.start, stage.end):
                expected = y if (j - self.origin) % 2 == 0 else x
                if expected is not None and expected not in self.schedule.rounds[j]:
                    violations.append({'stage': stage.label, 'round': j + 1, 'expected': expected})
        return violations


class _Stager(object):
    """Accumulates the stages of one decomposition node."""

    def __init__(self, builder, t, target):
        self.builder = builder
        self.t = t
        self.target = target
        self.rounds = []
        self.stages = []
        self.guard = None

    def stage(self, label, guard, pieces):
        x, y = guard
        if self.guard is None:
            self.rounds.extend([_shots(y), _shots(x)])
        else:
            old_x, old_y = self.guard
            self.rounds.extend([_shots(old_y, y), _shots(old_x, x)])
        self.guard = guard

        start = len(self.rounds)
        body = self.builder._plan(self.t, pieces, self.target)
        for j, shot in enumerate(body):
            self.rounds.append(shot | _shots(y if j % 2 == 0 else x))
        self.stages.append(Stage(label, start, len(self.rounds), guard))
        logger.debug('Stage %s guarded by %s: rounds %s..%s', label, guard, start, len(self.rounds))


class StrategyBuilder(object):
    """Generates and certifies cat schedules.

    Base pieces of order at most 9 are cleaned with one-cat witnesses from
    the solver, cached per labelled subtree.

    Args:
        solver: Solver used for base witnesses.
    """

    def __init__(self, solver=None):
        self.solver = solver if solver is not None else Solver()
        self.__witnesses = {}

    def _base_rounds(self, t, region):
        sub, mapping = t.induced(region)
        if sub not in self.__witnesses:
            win, witness = self.solver.cats_win(sub, 1, GameSemantics())
            if not win:
                raise exceptions.CatMouseInvariantError('No one-cat witness on a tree of order {}'.format(sub.n))
            self.__witnesses[sub] = witness.rounds
        return [frozenset(mapping[w] for w in shot) for shot in self.__witnesses[sub]]

    def _basic_region(self, t, region):
        if len(region) == 1:
            return [frozenset(region)]
        if len(region) <= BASE_ORDER:
            return self._base_rounds(t, region)

        sub, mapping = t.induced(region)
        v = mapping[find_centre(sub)]
        rounds = []
        for piece in _components(t, [w for w in region if w != v]):
            rounds.extend(shot | {v} for shot in self._basic_region(t, piece))
        return rounds

    def basic(self, t):
        """Schedule with at most ceil(log2 n) cats for the standard game.

        Args:
            t: Tree

        Returns:
            Schedule object
        """
        rounds = self._basic_region(t, list(range(t.n)))
        schedule = Schedule.tight(rounds)
        logger.info('Basic strategy on %s vertices: %s cats, %s rounds', t.n, schedule.r, len(schedule))
        return schedule

    def decompose(self, t, region=None):
        """Centre split of a region of t (the whole tree by default).

        Args:
            t: Tree
            region: Vertex ids inducing a subtree.

        Returns:
            DecompositionPlan object
        """
        region = sorted(region) if region is not None else list(range(t.n))
        classes = bipartition(t)
        sub, mapping = t.induced(region)
        v = mapping[find_centre(sub)]
        n = len(region)

        big, small = [], []
        for comp in _components(t, [w for w in region if w != v]):
            if 4 * len(comp) <= n:
                small.append(comp)
                continue

            members = set(comp)
            entry = next(w for w in t.neighbours(v) if w in members)
            comp_tree, comp_map = t.induced(comp)
            b = comp_map[find_centre(comp_tree)]
            plus, minus = [], []
            for piece in _components(t, [w for w in comp if w != b]):
                if entry in piece:
                    plus = piece
                else:
                    minus.append(piece)

            joint, star = None, []
            if plus:
                joint = next(w for w in t.neighbours(b) if w in plus)
                star = _components(t, [w for w in plus if w != joint])
            big.append(BigComponent(comp, b, entry, plus, minus, joint, star,
                                    classes.class_of[b] == classes.class_of[v]))

        plan = DecompositionPlan(n, v, big, small)
        plan.check()
        return plan

    def _plan(self, t, pieces, target):
        """Even-length rounds cleaning each piece in turn from any start inside target's class."""
        rounds = []
        for piece in pieces:
            if len(piece) <= BASE_ORDER:
                body = self._base_rounds(t, piece)
            else:
                body = self._node(t, piece, target)[0]
            if len(body) % 2:
                body = body + [frozenset()]
            rounds.extend(body)
        return rounds

    def _node(self, t, region, target):
        """Guard and soldier rounds on one region of order at least 10.

        Returns:
            tuple: (rounds, stages, origin, plan)
        """
        plan = self.decompose(t, region)
        v = plan.centre
        q = bipartition(t).class_of[v]
        hard = [(i, c) for i, c in enumerate(plan.big, 1) if c.hard]
        easy = [(i, c) for i, c in enumerate(plan.big, 1) if not c.hard]
        stager = _Stager(self, t, q)

        if hard:
            i, first = hard[0]
            stager.stage('B{}-'.format(i), (first.centre, first.joint), first.minus)
            stager.stage('B{}*'.format(i), (v, first.joint), first.star)

        for i, comp in easy:
            pieces = sorted(comp.minus + ([comp.plus] if comp.plus else []))
            stager.stage('B{}'.format(i), (v, comp.centre), pieces)

        if len(hard) <= 1:
            stager.stage('U', (v, None), plan.small)
        else:
            i, second = hard[1]
            stager.stage('B{}*+U'.format(i), (v, second.joint), second.star + plan.small)
            third = hard[2][1] if len(hard) > 2 else None
            partner = third.entry if third is not None else second.joint
            stager.stage('B{}-'.format(i), (second.centre, partner), second.minus)
            if third is not None:
                rest = third.minus + _components(t, [w for w in third.plus if w != third.entry])
                stager.stage('B{}'.format(hard[2][0]), (third.centre, third.entry), sorted(rest))

        rounds, stages, origin = stager.rounds, stager.stages, 0
        if q != target:
            rounds = [frozenset()] + rounds + [frozenset()]
            stages = [stage.shifted(1) for stage in stages]
            origin = 1
        return rounds, stages, origin, plan

    def improved(self, t):
        """Variant-game schedule with at most max(1, ceil(log2(n) / 2)) cats.

        Args:
            t: Tree

        Returns:
            VariantSchedule object
        """
        if t.n <= BASE_ORDER:
            rounds = self._plan(t, [list(range(t.n))], 1)
            variant = VariantSchedule(Schedule.tight(rounds))
        else:
            rounds, stages, origin, plan = self._node(t, list(range(t.n)), 1)
            variant = VariantSchedule(Schedule.tight(rounds), stages, origin, plan)
        logger.info('Improved strategy on %s vertices: %s cats, %s rounds', t.n, variant.schedule.r, len(rounds))
        return variant


def variant_to_standard(vs, t):
    """Turns a class-one variant schedule into a standard-game schedule.

    Odd length S becomes S S, even length S becomes S, one idle round, S.

    Args:
        vs: VariantSchedule
        t: Tree the schedule was built for.

    Returns:
        Schedule object
    """
    schedule = vs.schedule
    schedule.check_vertices(t)
    rounds = list(schedule.rounds)
    if len(rounds) % 2:
        return Schedule(schedule.r, rounds + rounds)
    return Schedule(schedule.r, rounds + [frozenset()] + rounds)


def certify(t, s, sem=None):
    """Runs a schedule and raises unless it wins.

    Args:
        t: Tree
        s: Schedule
        sem: GameSemantics, standard game under the 'paper' order by default.

    Returns:
        GameTrace object of the winning run.

    Raises:
        CatMouseInvariantError: if the mouse survives the schedule.
    """
    sem = sem if sem is not None else GameSemantics()
    trace = run_schedule(t, s, sem)
    if not trace.cats_win:
        final = trace.sets()[-1]
        raise exceptions.CatMouseInvariantError({'message': 'Schedule of {} rounds does not win'.format(len(s)),
                                                 'order': t.n, 'rounds': len(s), 'cats': s.r,
                                                 'remaining': final.members()})
    return trace


_default_builder = None


def _builder():
    global _default_builder
    if _default_builder is None:
        _default_builder = StrategyBuilder()
    return _default_builder


def basic_strategy(t):
    return _builder().basic(t)


def improved_strategy(t):
    return _builder().improved(t)


def decompose(t):
    return _builder().decompose(t)
