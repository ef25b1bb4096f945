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

import unittest

from networkx.algorithms.isomorphism import GraphMatcher

from catmouse import exceptions
from catmouse import graph_core
from catmouse.graph_core import Tree


class TreeTest(unittest.TestCase):
    def test_from_edges_sorts_neighbours(self):
        t = Tree.from_edges(4, [(0, 3), (3, 1), (3, 2)])

        self.assertEqual(t.n, 4)
        self.assertEqual(t.neighbours(3), (0, 1, 2))
        self.assertEqual(t.edges(), [(0, 3), (1, 3), (2, 3)])
        self.assertEqual(t.degree(3), 3)

    def test_single_vertex(self):
        t = Tree([[]])

        self.assertEqual(t.n, 1)
        self.assertEqual(t.edges(), [])

    def test_cycle_is_rejected(self):
        with self.assertRaises(exceptions.CatMouseInputError) as error:
            Tree.from_edges(3, [(0, 1), (1, 2), (2, 0)])

        self.assertIn('Not a tree', error.exception.msg)

    def test_disconnected_is_rejected(self):
        with self.assertRaises(exceptions.CatMouseInputError) as error:
            Tree.from_edges(4, [(0, 1), (1, 2), (2, 0)])

        self.assertIn('disconnected', error.exception.msg)

    def test_vertex_out_of_range_is_rejected(self):
        self.assertRaises(exceptions.CatMouseInputError, Tree.from_edges, 3, [(0, 1), (1, 5)])

    def test_neighbour_masks(self):
        t = graph_core.make_path(3)

        self.assertEqual(t.neighbour_masks, (0b010, 0b101, 0b010))

    def test_induced_relabels(self):
        t = graph_core.make_path(5)
        sub, mapping = t.induced([4, 2, 3])

        self.assertEqual(mapping, (2, 3, 4))
        self.assertEqual(sub.edges(), [(0, 1), (1, 2)])

    def test_equal_trees_hash_alike(self):
        self.assertEqual(graph_core.make_path(4), Tree.from_edges(4, [(2, 3), (1, 2), (0, 1)]))
        self.assertEqual(len({graph_core.make_path(4), graph_core.make_path(4)}), 1)


class StructureTest(unittest.TestCase):
    def test_find_centre_of_paths(self):
        self.assertEqual(graph_core.find_centre(graph_core.make_path(5)), 2)
        self.assertEqual(graph_core.find_centre(graph_core.make_path(4)), 1)
        self.assertEqual(graph_core.find_centre(graph_core.make_path(1)), 0)

    def test_find_centre_component_bound(self):
        for seed in range(20):
            t = graph_core.random_tree(40, seed)
            centre = graph_core.find_centre(t)
            orders = graph_core.remove_vertex(t, centre).orders()
            self.assertLessEqual(max(orders), t.n // 2)

    def test_remove_vertex(self):
        forest = graph_core.remove_vertex(graph_core.make_path(5), 2)

        self.assertEqual(forest.orders(), [2, 2])
        self.assertEqual(forest.vertices(), [0, 1, 3, 4])
        self.assertEqual([mapping for _, mapping in forest], [(0, 1), (3, 4)])

    def test_remove_vertex_out_of_range(self):
        self.assertRaises(exceptions.CatMouseInputError, graph_core.remove_vertex, graph_core.make_path(3), 3)

    def test_split_of_star_gives_singletons(self):
        forest = graph_core.split(graph_core.make_star(4), [1, 2, 3, 4])

        self.assertEqual(forest.orders(), [1, 1, 1, 1])

    def test_bipartition(self):
        classes = graph_core.bipartition(graph_core.make_path(4))

        self.assertEqual(classes.class_of, (1, 2, 1, 2))
        self.assertEqual(classes.members(2), [1, 3])
        self.assertEqual(classes.mask(1), 0b0101)
        self.assertEqual(classes.other(1), 2)

    def test_graph_centres(self):
        self.assertEqual(graph_core.graph_centres(graph_core.make_path(4)), [1, 2])
        self.assertEqual(graph_core.graph_centres(graph_core.make_path(5)), [2])


class ContainsHTest(unittest.TestCase):
    def test_h_contains_itself(self):
        h = graph_core.make_h()

        self.assertEqual(h.n, 10)
        self.assertTrue(graph_core.contains_H(h))

    def test_short_leg_spider(self):
        self.assertFalse(graph_core.contains_H(graph_core.make_spider((3, 3, 2))))
        self.assertTrue(graph_core.contains_H(graph_core.make_spider((1, 3, 3, 3))))

    def test_paths_and_stars(self):
        self.assertFalse(graph_core.contains_H(graph_core.make_path(20)))
        self.assertFalse(graph_core.contains_H(graph_core.make_star(12)))

    def test_agrees_with_monomorphism_search(self):
        h = graph_core.make_h().to_networkx()
        for n in (10, 11):
            for t in graph_core.enumerate_trees(n):
                expected = GraphMatcher(t.to_networkx(), h).subgraph_is_monomorphic()
                self.assertEqual(graph_core.contains_H(t), expected, t)


class GeneratorsTest(unittest.TestCase):
    def test_make_tk_sizes(self):
        for k in range(1, 7):
            st = graph_core.make_tk(k)
            self.assertEqual(st.tree.n, 2 ** (k + 2) - 3)
            self.assertEqual(st.important_count, 2 ** (k + 1) - 1)

        self.assertEqual(graph_core.make_tk(3).tree.n, 29)

    def test_make_tk_subdividers(self):
        st = graph_core.make_tk(2)

        self.assertEqual(st.subdivider(1), 7)
        self.assertEqual(st.tree.neighbours(7), (0, 1))
        self.assertEqual(st.tree.neighbours(st.subdivider(6)), (2, 6))
        self.assertFalse(st.important[7])
        self.assertEqual(st.important_mask(), 0b1111111)

    def test_make_tk_rejects_zero(self):
        self.assertRaises(exceptions.CatMouseInputError, graph_core.make_tk, 0)

    def test_binary_tree(self):
        b = graph_core.binary_tree(2)

        self.assertEqual(b.n, 7)
        self.assertEqual(b.neighbours(1), (0, 3, 4))

    def test_enumeration_counts(self):
        counts = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106]
        for n, count in enumerate(counts, 1):
            self.assertEqual(len(list(graph_core.enumerate_trees(n))), count)

    def test_enumeration_classes_are_distinct(self):
        forms = [graph_core.canonical_form(t) for t in graph_core.enumerate_trees(9)]

        self.assertEqual(len(forms), len(set(forms)))

    def test_enumeration_guard(self):
        with self.assertRaises(exceptions.CatMouseCapacityError):
            list(graph_core.enumerate_trees(13))
        with self.assertRaises(exceptions.CatMouseInputError):
            list(graph_core.enumerate_trees(0))

    def test_canonical_form_ignores_labels(self):
        relabelled = Tree.from_edges(4, [(2, 0), (0, 3), (3, 1)])

        self.assertEqual(graph_core.canonical_form(relabelled), graph_core.canonical_form(graph_core.make_path(4)))
        self.assertNotEqual(graph_core.canonical_form(graph_core.make_star(3)),
                            graph_core.canonical_form(graph_core.make_path(4)))

    def test_random_tree_is_seeded(self):
        self.assertEqual(graph_core.random_tree(30, 4), graph_core.random_tree(30, 4))
        self.assertEqual(graph_core.random_tree(30, 4).n, 30)
        self.assertEqual(graph_core.random_tree(1, 0).n, 1)
        self.assertEqual(graph_core.random_tree(2, 0).edges(), [(0, 1)])

    def test_star_and_spider(self):
        self.assertEqual(graph_core.make_star(3).degree(0), 3)
        spider = graph_core.make_spider((1, 2))
        self.assertEqual(spider.edges(), [(0, 1), (0, 2), (2, 3)])


if __name__ == '__main__':
    unittest.main()
