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

"""Tree representation, structural queries and tree generators."""

import logging
from collections import deque

import networkx as nx
import numpy as np

from catmouse import exceptions

MAX_ENUMERATION_ORDER = 12

IMPORTANT = 'important'
SUBDIVIDING = 'subdividing'

MSG_NOT_A_TREE = 'Not a tree: {}'
MSG_BAD_VERTEX = 'Vertex {} is not in a tree of order {}'

logger = logging.getLogger(__name__)


class Tree(object):
    """Immutable tree on the dense vertex ids 0..n-1.

    Attributes:
        n (int): Vertex count.
        adjacency (tuple): Sorted, duplicate-free neighbour tuples per vertex.
        labels (tuple): Optional per-vertex string tags.
    """

    def __init__(self, adjacency, labels=None):
        """Builds a tree from neighbour lists and validates it.

        Args:
            adjacency: Iterable with the neighbours of every vertex.
            labels: Optional iterable with one string per vertex.

        Raises:
            CatMouseInputError: if the structure is not a tree.
        """
        self.adjacency = tuple(tuple(sorted(set(nbrs))) for nbrs in adjacency)
        self.n = len(self.adjacency)
        self.labels = tuple(labels) if labels is not None else None
        self.__masks = None
        self.__validate()

    @classmethod
    def from_edges(cls, n, edges, labels=None):
        """Builds a tree of order n from an edge list.

        Args:
            n: Vertex count.
            edges: Iterable of (u, v) pairs with 0-based ids.
            labels: Optional per-vertex tags.

        Returns:
            Tree object
        """
        if n < 1:
            raise exceptions.CatMouseInputError(MSG_NOT_A_TREE.format('a tree needs at least one vertex'))

        adjacency = [[] for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise exceptions.CatMouseInputError(MSG_BAD_VERTEX.format(max(u, v), n))
            adjacency[u].append(v)
            adjacency[v].append(u)

        return cls(adjacency, labels)

    @classmethod
    def from_networkx(cls, graph):
        """Builds a tree from a networkx graph, relabelling nodes in sorted order.

        Args:
            graph: networkx.Graph

        Returns:
            Tree object
        """
        nodes = sorted(graph.nodes())
        index = {node: i for i, node in enumerate(nodes)}
        edges = [(index[u], index[v]) for u, v in graph.edges()]
        return cls.from_edges(len(nodes), edges)

    def __validate(self):
        if self.n < 1:
            raise exceptions.CatMouseInputError(MSG_NOT_A_TREE.format('a tree needs at least one vertex'))
        if self.labels is not None and len(self.labels) != self.n:
            raise exceptions.CatMouseInputError('Expected {} labels, got {}'.format(self.n, len(self.labels)))

        degree_sum = 0
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if not 0 <= v < self.n:
                    raise exceptions.CatMouseInputError(MSG_BAD_VERTEX.format(v, self.n))
                if v == u:
                    raise exceptions.CatMouseInputError(MSG_NOT_A_TREE.format('self-loop at {}'.format(u)))
                if u not in self.adjacency[v]:
                    raise exceptions.CatMouseInputError(MSG_NOT_A_TREE.format('asymmetric edge {}-{}'.format(u, v)))
            degree_sum += len(nbrs)

        if degree_sum != 2 * (self.n - 1):
            raise exceptions.CatMouseInputError(
                MSG_NOT_A_TREE.format('{} edges on {} vertices'.format(degree_sum // 2, self.n)))

        if len(bfs_order(self, 0)[0]) != self.n:
            raise exceptions.CatMouseInputError(MSG_NOT_A_TREE.format('disconnected'))

    def __len__(self):
        return self.n

    def __eq__(self, other):
        return isinstance(other, Tree) and self.adjacency == other.adjacency

    def __hash__(self):
        return hash(self.adjacency)

    def __repr__(self):
        return 'Tree(n={}, edges={})'.format(self.n, self.edges())

    def neighbours(self, v):
        """Returns the sorted neighbours of v."""
        return self.adjacency[v]

    def degree(self, v):
        return len(self.adjacency[v])

    def edges(self):
        """Returns the edge list as sorted (u, v) pairs with u < v."""
        return [(u, v) for u, nbrs in enumerate(self.adjacency) for v in nbrs if u < v]

    @property
    def neighbour_masks(self):
        """Per-vertex integer bitmask of the neighbourhood, computed once."""
        if self.__masks is None:
            masks = []
            for nbrs in self.adjacency:
                mask = 0
                for v in nbrs:
                    mask |= 1 << v
                masks.append(mask)
            self.__masks = tuple(masks)
        return self.__masks

    def to_networkx(self):
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges())
        return graph

    def induced(self, vertices):
        """Builds the subtree induced by a connected vertex set.

        Args:
            vertices: Iterable of vertex ids inducing a connected subgraph.

        Returns:
            tuple: (Tree, mapping) where mapping[i] is the original id of new vertex i.
        """
        mapping = tuple(sorted(set(vertices)))
        index = {old: new for new, old in enumerate(mapping)}
        adjacency = [[index[w] for w in self.adjacency[old] if w in index] for old in mapping]
        labels = [self.labels[old] for old in mapping] if self.labels is not None else None
        return Tree(adjacency, labels), mapping


class Forest(object):
    """Components of a tree after deleting vertices.

    Attributes:
        components (list): (Tree, mapping) pairs ordered by smallest original id.
    """

    def __init__(self, components):
        self.components = list(components)

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def orders(self):
        return [tree.n for tree, _ in self.components]

    def vertices(self):
        """Returns the sorted original ids covered by the forest."""
        return sorted(v for _, mapping in self.components for v in mapping)


class Bipartition(object):
    """Two-colouring of a tree with vertex 0 in class 1.

    Attributes:
        class_of (tuple): 1 or 2 per vertex.
    """

    def __init__(self, class_of):
        self.class_of = tuple(class_of)

    def members(self, vertex_class):
        return [v for v, c in enumerate(self.class_of) if c == vertex_class]

    def mask(self, vertex_class):
        """Integer bitmask of one class."""
        mask = 0
        for v, c in enumerate(self.class_of):
            if c == vertex_class:
                mask |= 1 << v
        return mask

    def other(self, vertex_class):
        return 3 - vertex_class


class SubdividedTree(object):
    """The 1-subdivision T_k of the complete binary tree B_k.

    Important vertices carry ids 0..2^(k+1)-2 in heap order (root 0, children
    2i+1 and 2i+2), the same ids they have in B_k. The subdividing vertex of
    the edge between heap vertex c >= 1 and its parent gets id 2^(k+1)-2+c.

    Attributes:
        tree (Tree): T_k.
        k (int): Height of B_k.
        important (tuple): Flag per vertex of T_k.
        b_map (dict): Important vertex of T_k -> vertex of B_k.
        base (Tree): B_k.
    """

    def __init__(self, tree, k, important, b_map, base):
        self.tree = tree
        self.k = k
        self.important = tuple(important)
        self.b_map = dict(b_map)
        self.base = base
        self.t_of_b = {b: t for t, b in self.b_map.items()}
        self.__validate()

    @property
    def important_count(self):
        return 2 ** (self.k + 1) - 1

    def subdivider(self, child):
        """Returns the T_k id of the vertex subdividing the B_k edge (parent(child), child)."""
        return self.important_count - 1 + child

    def important_mask(self):
        mask = 0
        for v, flag in enumerate(self.important):
            if flag:
                mask |= 1 << v
        return mask

    def __validate(self):
        if self.tree.n != 2 ** (self.k + 2) - 3:
            raise exceptions.CatMouseInvariantError('|T_k| = {} for k = {}'.format(self.tree.n, self.k))
        if sum(self.important) != self.important_count:
            raise exceptions.CatMouseInvariantError('Wrong number of important vertices')
        for v in range(self.tree.n):
            if self.important[v]:
                continue
            nbrs = self.tree.neighbours(v)
            if len(nbrs) != 2 or not all(self.important[w] for w in nbrs):
                raise exceptions.CatMouseInvariantError('Subdividing vertex {} is malformed'.format(v))
            a, b = (self.b_map[w] for w in nbrs)
            if b not in self.base.neighbours(a):
                raise exceptions.CatMouseInvariantError('Contraction of {} is not an edge of B_k'.format(v))
        if sorted(self.b_map.values()) != list(range(self.base.n)):
            raise exceptions.CatMouseInvariantError('b_map is not a bijection onto B_k')


def bfs_order(t, root):
    """Breadth-first order and parent array from a root.

    Returns:
        tuple: (order, parent) with parent[root] = -1 and unreached vertices at -2.
    """
    parent = [-2] * t.n
    parent[root] = -1
    order = [root]
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in t.adjacency[u]:
            if parent[w] == -2:
                parent[w] = u
                order.append(w)
                queue.append(w)
    return order, parent


def subtree_sizes(t, root=0):
    """Sizes of the subtrees hanging below every vertex when rooted at root."""
    order, parent = bfs_order(t, root)
    size = [1] * t.n
    for v in reversed(order):
        if parent[v] >= 0:
            size[parent[v]] += size[v]
    return size, parent


def find_centre(t):
    """Returns the smallest vertex whose removal leaves components of order <= ceil((n-1)/2).

    Args:
        t: Tree

    Returns:
        int: vertex id
    """
    size, parent = subtree_sizes(t)
    limit = t.n // 2
    for v in range(t.n):
        largest = t.n - size[v]
        for w in t.adjacency[v]:
            if w != parent[v]:
                largest = max(largest, size[w])
        if largest <= limit:
            return v

    raise exceptions.CatMouseInvariantError('No centre found in {!r}'.format(t))


def split(t, vertices):
    """Components of the subgraph of t induced by a vertex set.

    Args:
        t: Tree
        vertices: Iterable of vertex ids to keep.

    Returns:
        Forest object with components ordered by smallest original id.
    """
    keep = set(vertices)
    seen = set()
    components = []
    for start in sorted(keep):
        if start in seen:
            continue
        seen.add(start)
        members = [start]
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in t.adjacency[u]:
                if w in keep and w not in seen:
                    seen.add(w)
                    members.append(w)
                    queue.append(w)
        components.append(t.induced(members))
    return Forest(components)


def remove_vertex(t, v):
    """Returns the forest t - v.

    Raises:
        CatMouseInputError: if v is not a vertex of t.
    """
    if not 0 <= v < t.n:
        raise exceptions.CatMouseInputError(MSG_BAD_VERTEX.format(v, t.n))
    return split(t, (u for u in range(t.n) if u != v))


def bipartition(t):
    """Two-colours t with vertex 0 in class 1."""
    order, parent = bfs_order(t, 0)
    class_of = [1] * t.n
    for v in order[1:]:
        class_of[v] = 3 - class_of[parent[v]]
    return Bipartition(class_of)


def _branch_depths(t, centre):
    """Longest distance reached from centre through each neighbour."""
    order, parent = bfs_order(t, centre)
    distance = [0] * t.n
    branch = [-1] * t.n
    depths = {w: 1 for w in t.adjacency[centre]}
    for v in order[1:]:
        p = parent[v]
        distance[v] = distance[p] + 1
        branch[v] = v if p == centre else branch[p]
        depths[branch[v]] = max(depths[branch[v]], distance[v])
    return depths


def contains_H(t):
    """True iff t contains the spider with three legs of length 3.

    A vertex with three branches each reaching distance >= 3 carries three
    vertex-disjoint legs, which is exactly an embedding of H.
    """
    for c in range(t.n):
        if t.degree(c) < 3:
            continue
        if sum(1 for depth in _branch_depths(t, c).values() if depth >= 3) >= 3:
            return True
    return False


def binary_tree(k):
    """Complete binary tree B_k of height k in heap order."""
    if k < 0:
        raise exceptions.CatMouseInputError('Height must be non-negative, got {}'.format(k))
    n = 2 ** (k + 1) - 1
    return Tree.from_edges(n, [((c - 1) // 2, c) for c in range(1, n)])


def make_tk(k):
    """Builds T_k, the 1-subdivision of B_k.

    Args:
        k: Height, k >= 1.

    Returns:
        SubdividedTree object

    Raises:
        CatMouseInputError: if k < 1.
    """
    if k < 1:
        raise exceptions.CatMouseInputError('T_k is defined for k >= 1, got {}'.format(k))

    base = binary_tree(k)
    m = base.n
    edges = []
    for c in range(1, m):
        s = m - 1 + c
        edges.append(((c - 1) // 2, s))
        edges.append((s, c))
    n = 2 * m - 1
    labels = [IMPORTANT] * m + [SUBDIVIDING] * (m - 1)
    tree = Tree.from_edges(n, edges, labels)
    important = [v < m for v in range(n)]
    return SubdividedTree(tree, k, important, {v: v for v in range(m)}, base)


def make_path(n):
    return Tree.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def make_star(leaves):
    """Star K_{1,leaves} with hub 0."""
    return Tree.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def make_spider(legs):
    """Spider with body 0 and one path per leg length, ids assigned leg by leg."""
    edges = []
    nxt = 1
    for length in legs:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Tree.from_edges(nxt, edges)


def make_h():
    """The 10-vertex obstruction H: three legs of length 3."""
    return make_spider((3, 3, 3))


def enumerate_trees(n):
    """Yields one tree per isomorphism class of free trees of order n.

    Args:
        n: Order, 1 <= n <= 12.

    Raises:
        CatMouseInputError: if n < 1.
        CatMouseCapacityError: if n > 12.
    """
    if n < 1:
        raise exceptions.CatMouseInputError('Tree order must be positive, got {}'.format(n))
    if n > MAX_ENUMERATION_ORDER:
        raise exceptions.CatMouseCapacityError(
            'Enumeration is limited to order {}, got {}'.format(MAX_ENUMERATION_ORDER, n))

    if n == 1:
        yield Tree([[]])
        return

    for graph in nx.nonisomorphic_trees(n):
        yield Tree.from_networkx(graph)


def random_tree(n, seed):
    """Uniformly random labelled tree decoded from a seeded Pruefer sequence."""
    if n < 1:
        raise exceptions.CatMouseInputError('Tree order must be positive, got {}'.format(n))
    if n == 1:
        return Tree([[]])
    if n == 2:
        return make_path(2)

    rng = np.random.default_rng(seed)
    sequence = [int(x) for x in rng.integers(0, n, size=n - 2)]
    return Tree.from_networkx(nx.from_prufer_sequence(sequence))


def graph_centres(t):
    """The one or two vertices left after repeatedly stripping leaves."""
    degree = [t.degree(v) for v in range(t.n)]
    layer = [v for v in range(t.n) if degree[v] <= 1]
    remaining = t.n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for leaf in layer:
            for w in t.adjacency[leaf]:
                degree[w] -= 1
                if degree[w] == 1:
                    nxt.append(w)
        layer = nxt
    return sorted(layer)


def _encode(t, root):
    order, parent = bfs_order(t, root)
    codes = [[] for _ in range(t.n)]
    encoded = [''] * t.n
    for v in reversed(order):
        encoded[v] = '(' + ''.join(sorted(codes[v])) + ')'
        if parent[v] >= 0:
            codes[parent[v]].append(encoded[v])
    return encoded[root]


def canonical_form(t):
    """Isomorphism-invariant string of a free tree."""
    return min(_encode(t, c) for c in graph_centres(t))
