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

"""Readers and writers for tree files, schedules, traces and reports."""

import json
import logging

import networkx as nx

from catmouse import exceptions
from catmouse.game_engine import GameSemantics
from catmouse.game_engine import Schedule
from catmouse.graph_core import SubdividedTree
from catmouse.graph_core import Tree
from catmouse.graph_core import binary_tree

logger = logging.getLogger(__name__)


def dumps(payload):
    """Deterministic JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(payload, sort_keys=True, indent=2) + '\n'


def _diagnose(n, edges):
    """Explains why an edge list on n vertices is not a tree."""
    graph = nx.Graph()
    graph.add_nodes_from(range(n))
    graph.add_edges_from(edges)
    if graph.number_of_edges() != len(edges):
        return {'message': 'Not a tree: duplicate edges'}
    try:
        cycle = nx.find_cycle(graph)
        return {'message': 'Not a tree: cycle through {}'.format(sorted({u for u, _ in cycle})),
                'cycle': [list(edge) for edge in cycle]}
    except nx.NetworkXNoCycle:
        pass
    components = [sorted(c) for c in nx.connected_components(graph)]
    return {'message': 'Not a tree: {} connected components'.format(len(components)),
            'components': components}


def parse_tree_text(text):
    """Parses the tree text format: a line with n, then n-1 lines 'u v'.

    Blank lines and lines starting with '#' are ignored.

    Args:
        text: File contents.

    Returns:
        Tree object

    Raises:
        CatMouseInputError: with a diagnostic when the content is not a tree.
    """
    lines = [line.split() for line in text.splitlines() if line.strip() and not line.lstrip().startswith('#')]
    if not lines:
        raise exceptions.CatMouseInputError('Empty tree file')
    if len(lines[0]) != 1:
        raise exceptions.CatMouseInputError('First line must hold only the order n, got {!r}'.format(' '.join(lines[0])))
    try:
        n = int(lines[0][0])
        edges = [(int(u), int(v)) for u, v in lines[1:]]
    except ValueError:
        raise exceptions.CatMouseInputError('Tree file must hold n and then one integer pair u v per line')
    if n < 1:
        raise exceptions.CatMouseInputError('Tree order must be positive, got {}'.format(n))
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise exceptions.CatMouseInputError('Edge {} {} leaves the vertex range 0..{}'.format(u, v, n - 1))
    if any(u == v for u, v in edges):
        raise exceptions.CatMouseInputError('Not a tree: self-loop')
    if len(edges) != n - 1:
        details = _diagnose(n, edges) if len(edges) >= n else {}
        details['message'] = 'Expected {} edges, got {}. {}'.format(n - 1, len(edges), details.get('message', ''))
        raise exceptions.CatMouseInputError(details)

    graph = nx.Graph(edges)
    graph.add_nodes_from(range(n))
    if not nx.is_tree(graph):
        raise exceptions.CatMouseInputError(_diagnose(n, edges))
    return Tree.from_edges(n, edges)


def read_tree(file_name):
    with open(file_name) as handle:
        return parse_tree_text(handle.read())


def tree_to_text(t):
    return '{}\n'.format(t.n) + ''.join('{} {}\n'.format(u, v) for u, v in t.edges())


def tree_to_dot(t, name='T'):
    """DOT graph of a tree; labelled vertices get the label as a node attribute."""
    lines = ['graph {} {{'.format(name)]
    for v in range(t.n):
        if t.labels is not None:
            lines.append('  {} [label="{}:{}"];'.format(v, v, t.labels[v]))
        else:
            lines.append('  {};'.format(v))
    lines.extend('  {} -- {};'.format(u, v) for u, v in t.edges())
    lines.append('}')
    return '\n'.join(lines) + '\n'


def tree_to_dict(t):
    return {'n': t.n, 'adjacency': [list(nbrs) for nbrs in t.adjacency],
            'labels': list(t.labels) if t.labels is not None else None}


def tree_from_dict(data):
    try:
        adjacency = data['adjacency']
        if len(adjacency) != data['n']:
            raise exceptions.CatMouseInputError('n = {} but {} adjacency lists'.format(data['n'], len(adjacency)))
        return Tree(adjacency, data.get('labels'))
    except (KeyError, TypeError):
        raise exceptions.CatMouseInputError('Tree JSON needs n and adjacency')


def subdivided_to_dict(st):
    return {'tree': tree_to_dict(st.tree), 'k': st.k, 'important': list(st.important),
            'b_map': {str(v): b for v, b in sorted(st.b_map.items())}}


def subdivided_from_dict(data):
    tree = tree_from_dict(data['tree'])
    b_map = {int(v): b for v, b in data['b_map'].items()}
    return SubdividedTree(tree, data['k'], data['important'], b_map, binary_tree(data['k']))


def schedule_to_dict(s, sem=None):
    sem = sem if sem is not None else GameSemantics()
    return {'r': s.r, 'semantics': sem.order, 'initial_domain': sem.initial_domain,
            'rounds': [sorted(shot) for shot in s.rounds]}


def schedule_from_dict(data):
    """Reads a schedule payload.

    Returns:
        tuple: (Schedule, GameSemantics)

    Raises:
        CatMouseInputError: if fields are missing or malformed.
    """
    try:
        rounds = [[int(v) for v in shot] for shot in data['rounds']]
        r = int(data['r'])
    except (KeyError, TypeError, ValueError):
        raise exceptions.CatMouseInputError('Schedule JSON needs r and a list of integer rounds')
    sem = GameSemantics(data.get('semantics', 'paper'), data.get('initial_domain', 'all'))
    return Schedule(r, rounds), sem


def read_schedule(file_name):
    with open(file_name) as handle:
        try:
            data = json.load(handle)
        except ValueError as error:
            raise exceptions.CatMouseInputError('Invalid schedule JSON: {}'.format(error))
    return schedule_from_dict(data)


def _braces(vertices):
    return '{' + ','.join(str(v) for v in sorted(vertices)) + '}'


def trace_to_text(trace):
    """One line per round: 'round i: shot={...} A={...} (|A|=s)'."""
    lines = ['round 0: shot={{}} A={} (|A|={})'.format(_braces(trace.initial.members()), trace.initial.size)]
    for index, shot, positions in trace.steps:
        lines.append('round {}: shot={} A={} (|A|={})'.format(index, _braces(shot), _braces(positions.members()),
                                                              positions.size))
    lines.append('outcome: {}'.format(trace.outcome))
    return '\n'.join(lines) + '\n'


def solve_result_to_dict(result):
    return {'h': result.h, 'witness': schedule_to_dict(result.witness, result.semantics),
            'explored_states': result.explored_states,
            'per_r_outcomes': {str(r): win for r, win in sorted(result.per_r_outcomes.items())}}


def variant_to_dict(vs):
    payload = schedule_to_dict(vs.schedule, vs.semantics)
    payload.update({'stages': [stage.to_dict() for stage in vs.stages], 'origin': vs.origin,
                    'parity_certificate': vs.parity_certificate})
    return payload


def write_text(file_name, text):
    with open(file_name, 'w') as handle:
        handle.write(text)
    logger.debug('Wrote %s', file_name)
