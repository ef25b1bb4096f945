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

"""Command-line entry point: ``catmouse <command> [options]``.

Payloads go to stdout (or the ``--emit`` file); diagnostics go to stderr.
Exit codes: 0 success, 1 violated invariant, 2 capacity or input error.
"""

import argparse
import csv
import logging
import sys
from fractions import Fraction

from catmouse import exceptions
from catmouse import formats
from catmouse.evasion import ADVERSARIES
from catmouse.evasion import BRUTEFORCE_MAX_N
from catmouse.evasion import GREEDY
from catmouse.evasion import RANDOM
from catmouse.evasion import SWEEP
from catmouse.game_engine import ALL_VERTICES
from catmouse.game_engine import DOMAINS
from catmouse.game_engine import GameSemantics
from catmouse.game_engine import run_schedule
from catmouse.graph_core import canonical_form
from catmouse.graph_core import contains_H
from catmouse.graph_core import enumerate_trees
from catmouse.graph_core import make_h
from catmouse.graph_core import make_path
from catmouse.graph_core import make_spider
from catmouse.graph_core import make_star
from catmouse.graph_core import make_tk
from catmouse.graph_core import random_tree
from catmouse.strategies import certify
from catmouse.strategies import half_log_bound
from catmouse.strategies import log_bound
from catmouse.strategies import variant_to_standard
from catmouse.workbench import Workbench

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_ERROR = 2

FAMILIES = ('path', 'star', 'spider', 'tk', 'random', 'h')
CHECKS = ('arithmetic', 'approximate', 'boundary', 'oracle')
SURVEY_FIELDS = ('id', 'n', 'contains_h', 'h', 'basic', 'improved', 'log_bound', 'half_log_bound', 'violations')
SEMANTICS_CHOICES = ('paper', 'stm', 'shoot_then_move')

logger = logging.getLogger(__name__)


class SurveyRow(object):
    """Solver and strategy results for one isomorphism class of trees.

    Attributes:
        id (str): Canonical form.
        n (int): Order.
        contains_h (bool): Whether the obstruction H embeds.
        h (int): Hunter number, None beyond the solver guards.
        basic (int): Cats of the basic strategy.
        improved (int): Cats of the improved strategy.
        violations (list): Broken invariants, empty when the row is sound.
    """

    def __init__(self, t, h, basic, improved, violations=()):
        self.id = canonical_form(t)
        self.n = t.n
        self.contains_h = contains_H(t)
        self.h = h
        self.basic = basic
        self.improved = improved
        self.log_bound = log_bound(t.n)
        self.half_log_bound = half_log_bound(t.n)
        self.violations = list(violations)
        self.violations.extend(self.__check())

    def __check(self):
        found = []
        if self.basic > max(1, self.log_bound):
            found.append('basic strategy uses {} cats, bound {}'.format(self.basic, self.log_bound))
        if self.improved > max(1, self.half_log_bound):
            found.append('improved strategy uses {} cats, bound {}'.format(self.improved, self.half_log_bound))
        if self.h is not None:
            if self.h > self.improved:
                found.append('hunter number {} above improved count {}'.format(self.h, self.improved))
            if (self.h == 1) == self.contains_h:
                found.append('hunter number {} with contains_h={}'.format(self.h, self.contains_h))
        return found

    def to_dict(self):
        return {field: getattr(self, field) for field in SURVEY_FIELDS}


def _write(args, text):
    if getattr(args, 'emit', None):
        formats.write_text(args.emit, text)
    else:
        sys.stdout.write(text)


def _build_workbench(args):
    if args.config:
        config = Workbench.from_json_file(args.config).config
    else:
        config = Workbench.from_environment_variables().config
    for key in ('max_order', 'max_cats', 'semantics', 'seed'):
        value = getattr(args, key, None)
        if value is not None:
            config[key] = value
    return Workbench(config)


def cmd_solve(workbench, args):
    t = formats.read_tree(args.tree)
    sem = GameSemantics(workbench.config['semantics'], args.initial_domain)
    result = workbench.solver.hunter_number(t, sem)
    _write(args, formats.dumps(formats.solve_result_to_dict(result)))
    return EXIT_OK


def _survey_row(workbench, t):
    violations = []
    try:
        h = workbench.solver.hunter_number(t, workbench.semantics).h
    except exceptions.CatMouseCapacityError as error:
        logger.warning('No hunter number for %s: %s', canonical_form(t), error.msg)
        h = None

    basic = workbench.strategies.basic(t)
    variant = workbench.strategies.improved(t)
    for label, schedule in (('basic', basic), ('improved', variant_to_standard(variant, t))):
        try:
            certify(t, schedule, workbench.semantics)
        except exceptions.CatMouseInvariantError as error:
            violations.append('{} strategy: {}'.format(label, error.msg))
    return SurveyRow(t, h, basic.r, variant.schedule.r, violations)


def cmd_survey(workbench, args):
    """Surveys every tree of the requested orders; CSV to stdout, JSON rows to --emit."""
    high = args.survey_order
    low = args.min_order if args.min_order is not None else high
    if not 1 <= low <= high:
        raise exceptions.CatMouseInputError('Need 1 <= min-order <= max-order, got {} and {}'.format(low, high))

    rows = []
    for n in range(low, high + 1):
        for t in enumerate_trees(n):
            rows.append(_survey_row(workbench, t))
        logger.info('Surveyed order %s: %s trees so far', n, len(rows))

    writer = csv.DictWriter(sys.stdout, fieldnames=SURVEY_FIELDS, lineterminator='\n')
    writer.writeheader()
    for row in rows:
        record = row.to_dict()
        record['violations'] = '; '.join(row.violations)
        writer.writerow(record)
    if args.emit:
        formats.write_text(args.emit, formats.dumps([row.to_dict() for row in rows]))

    bad = [row for row in rows if row.violations]
    for row in bad:
        logger.error('Tree %s: %s', row.id, '; '.join(row.violations))
    return EXIT_VIOLATION if bad else EXIT_OK


def _check_bound(schedule, bound, label):
    if schedule.r > max(1, bound):
        raise exceptions.CatMouseInvariantError({'message': '{} strategy uses {} cats, bound {}'.format(
            label, schedule.r, bound), 'cats': schedule.r, 'bound': bound})


def cmd_strategy(workbench, args):
    """Standard-game schedules are certified and tagged with the configured semantics.

    The improved strategy is built for the class-one variant under the 'paper' order; its
    variant form is always certified that way.
    """
    t = formats.read_tree(args.tree)
    sem = workbench.semantics
    if args.algo == 'basic':
        schedule = workbench.strategies.basic(t)
        if args.certify:
            _check_bound(schedule, log_bound(t.n), 'Basic')
            certify(t, schedule, sem)
        payload = formats.schedule_to_dict(schedule, sem)
    else:
        variant = workbench.strategies.improved(t)
        standard = variant_to_standard(variant, t)
        if args.certify:
            _check_bound(variant.schedule, half_log_bound(t.n), 'Improved')
            certify(t, variant.schedule, variant.semantics)
            certify(t, standard, sem)
        payload = formats.schedule_to_dict(standard, sem) if args.standard else formats.variant_to_dict(variant)

    if args.certify:
        logger.info('Certified %s strategy on %s vertices', args.algo, t.n)
    _write(args, formats.dumps(payload))
    return EXIT_OK


def cmd_verify(workbench, args):
    t = formats.read_tree(args.tree)
    schedule, sem = formats.read_schedule(args.schedule)
    trace = run_schedule(t, schedule, sem)
    if args.trace:
        _write(args, formats.trace_to_text(trace))
    else:
        _write(args, formats.dumps({'outcome': trace.outcome, 'caught_at': trace.caught_at,
                                    'rounds': len(schedule), 'r': schedule.r,
                                    'semantics': sem.order, 'initial_domain': sem.initial_domain}))
    return EXIT_OK if trace.cats_win else EXIT_VIOLATION


def _generate(args):
    if args.family == 'tk':
        return make_tk(args.k)
    if args.family == 'h':
        return make_h()
    if args.family == 'spider':
        try:
            legs = [int(length) for length in args.legs.split(',')]
        except (AttributeError, ValueError):
            raise exceptions.CatMouseInputError('--legs needs comma-separated lengths such as 3,3,3')
        return make_spider(legs)
    if args.n is None or args.n < 1:
        raise exceptions.CatMouseInputError('--n must be a positive order for family {}'.format(args.family))
    if args.family == 'path':
        return make_path(args.n)
    if args.family == 'star':
        return make_star(args.n - 1)
    return random_tree(args.n, args.seed if args.seed is not None else 0)


def cmd_gen(workbench, args):
    generated = _generate(args)
    t = generated.tree if args.family == 'tk' else generated
    if args.format == 'json':
        payload = formats.subdivided_to_dict(generated) if args.family == 'tk' else formats.tree_to_dict(t)
        text = formats.dumps(payload)
    elif args.format == 'dot':
        text = formats.tree_to_dot(t)
    else:
        text = formats.tree_to_text(t)
    _write(args, text)
    return EXIT_OK


def cmd_lowerbound(workbench, args):
    adversaries = tuple(args.adversary) if args.adversary else (RANDOM, GREEDY, SWEEP)
    report = workbench.evasion.campaign(args.k, args.eps, args.schedules, args.audit, args.rounds, adversaries)
    _write(args, formats.dumps(report.to_dict()))
    if report.violated:
        logger.error('Survival campaign on T_%s violated: %s', args.k, report.outcomes)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_arith(workbench, args):
    lab = workbench.evasion
    if args.check == 'arithmetic':
        report = lab.arithmetic(args.limit if args.limit is not None else 2 ** 20)
    elif args.check == 'approximate':
        report = lab.approximate(args.samples if args.samples is not None else 10 ** 5)
    elif args.check == 'oracle':
        report = lab.oracle(args.limit if args.limit is not None else BRUTEFORCE_MAX_N)
    elif args.eps is None:
        report = lab.weak_boundary(args.k, args.samples)
    else:
        report = lab.eps_boundary(args.k, args.eps, args.samples)

    _write(args, formats.dumps(report.to_dict()))
    if report.falsified:
        logger.error('%s check falsified', args.check)
        return EXIT_VIOLATION
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog='catmouse', description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument('--config', default=None, help='JSON configuration file')
    parser.add_argument('-v', '--verbose', action='count', default=0, help='-v for info, -vv for debug')
    commands = parser.add_subparsers(dest='command')
    commands.required = True

    solve = commands.add_parser('solve', help='exact hunter number of a tree')
    solve.add_argument('--tree', required=True)
    solve.add_argument('--max-cats', dest='max_cats', type=int)
    solve.add_argument('--max-order', dest='max_order', type=int)
    solve.add_argument('--semantics', choices=SEMANTICS_CHOICES)
    solve.add_argument('--initial-domain', dest='initial_domain', choices=DOMAINS, default=ALL_VERTICES)
    solve.add_argument('--emit')
    solve.set_defaults(func=cmd_solve)

    survey = commands.add_parser('survey', help='solver and strategies over every small tree')
    survey.add_argument('--max-order', dest='survey_order', type=int, required=True)
    survey.add_argument('--min-order', dest='min_order', type=int)
    survey.add_argument('--semantics', choices=SEMANTICS_CHOICES)
    survey.add_argument('--emit', help='JSON rows file')
    survey.set_defaults(func=cmd_survey)

    strategy = commands.add_parser('strategy', help='generate a cat schedule')
    strategy.add_argument('--algo', choices=('basic', 'improved'), default='improved')
    strategy.add_argument('--tree', required=True)
    strategy.add_argument('--certify', action='store_true')
    strategy.add_argument('--semantics', choices=SEMANTICS_CHOICES)
    strategy.add_argument('--standard', action='store_true', help='emit the standard-game form of improved')
    strategy.add_argument('--emit')
    strategy.set_defaults(func=cmd_strategy)

    verify = commands.add_parser('verify', help='run a schedule file on a tree')
    verify.add_argument('--tree', required=True)
    verify.add_argument('--schedule', required=True)
    verify.add_argument('--trace', action='store_true', help='print every possible-position set')
    verify.add_argument('--emit')
    verify.set_defaults(func=cmd_verify)

    gen = commands.add_parser('gen', help='generate a tree')
    gen.add_argument('--family', choices=FAMILIES, required=True)
    gen.add_argument('--n', type=int)
    gen.add_argument('--k', type=int, default=3)
    gen.add_argument('--legs', default='3,3,3')
    gen.add_argument('--seed', type=int)
    gen.add_argument('--format', choices=('text', 'json', 'dot'), default='text')
    gen.add_argument('--emit')
    gen.set_defaults(func=cmd_gen)

    lowerbound = commands.add_parser('lowerbound', help='survival campaign on T_k')
    lowerbound.add_argument('--k', type=int, required=True)
    lowerbound.add_argument('--eps', type=Fraction, default=Fraction(1, 20))
    lowerbound.add_argument('--schedules', type=int, default=30)
    lowerbound.add_argument('--rounds', type=int, default=32)
    lowerbound.add_argument('--seed', type=int)
    lowerbound.add_argument('--audit', action='store_true')
    lowerbound.add_argument('--adversary', action='append', choices=ADVERSARIES)
    lowerbound.add_argument('--emit')
    lowerbound.set_defaults(func=cmd_lowerbound)

    arith = commands.add_parser('arith', help='arithmetic and boundary checks')
    arith.add_argument('--check', choices=CHECKS, required=True)
    arith.add_argument('--limit', type=int)
    arith.add_argument('--k', type=int, default=3)
    arith.add_argument('--eps', type=Fraction)
    arith.add_argument('--samples', type=int)
    arith.add_argument('--seed', type=int)
    arith.add_argument('--emit')
    arith.set_defaults(func=cmd_arith)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(stream=sys.stderr, level=level, format='%(levelname)s %(name)s: %(message)s')

    try:
        workbench = _build_workbench(args)
        return args.func(workbench, args)
    except exceptions.CatMouseInvariantError as error:
        logger.error('%s', error.msg)
        if error.response:
            sys.stderr.write(formats.dumps(error.response))
        return EXIT_VIOLATION
    except (exceptions.CatMouseCapacityError, exceptions.CatMouseInputError) as error:
        logger.error('%s', error.msg)
        return EXIT_ERROR
    except OSError as error:
        logger.error('%s', error)
        return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
