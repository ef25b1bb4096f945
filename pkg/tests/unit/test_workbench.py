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

import io
import sys
import unittest
from unittest import mock

from catmouse import exceptions
from catmouse.evasion import EvasionLab
from catmouse.game_engine import GameSemantics
from catmouse.solver import Solver
from catmouse.strategies import StrategyBuilder
from catmouse.workbench import Workbench

OS_ENVIRON_CONFIG = {
    'CATMOUSE_MAX_ORDER': '16',
    'CATMOUSE_MAX_CATS': '2',
    'CATMOUSE_SEMANTICS': 'stm',
    'CATMOUSE_SEED': '7',
}


def mock_builtin(method_name='open'):
    package_name = 'builtins' if sys.version_info[:3] >= (3,) else '__builtin__'
    return "%s.%s" % (package_name, method_name)


class WorkbenchTest(unittest.TestCase):
    def setUp(self):
        super(WorkbenchTest, self).setUp()

        config = {"max_order": 20,
                  "max_cats": 2,
                  "seed": 3}

        self._workbench = Workbench(config)

    def __mock_file_open(self, json_config_content):
        return io.StringIO(json_config_content)

    def test_defaults(self):
        workbench = Workbench()

        self.assertEqual(workbench.config, {'max_order': 24, 'max_cats': 3, 'semantics': 'paper',
                                            'prune_dominated': True, 'seed': 0})
        self.assertEqual(workbench.semantics, GameSemantics())

    @mock.patch(mock_builtin('open'))
    def test_from_json_file(self, mock_open):
        json_config_content = u"""{
          "max_order": 12,
          "max_cats": 2,
          "semantics": "shoot_then_move",
          "prune_dominated": false
        }"""
        mock_open.return_value = self.__mock_file_open(json_config_content)
        workbench = Workbench.from_json_file("config.json")

        self.assertIsInstance(workbench, Workbench)
        self.assertEqual(workbench.solver.max_order, 12)
        self.assertFalse(workbench.solver.prune_dominated)
        self.assertEqual(workbench.semantics.order, 'shoot_then_move')

    @mock.patch(mock_builtin('open'))
    def test_from_json_file_with_invalid_json(self, mock_open):
        mock_open.return_value = self.__mock_file_open(u'{"max_order": ')

        with self.assertRaises(exceptions.CatMouseInputError) as error:
            Workbench.from_json_file("config.json")

        self.assertIn('config.json', error.exception.msg)

    @mock.patch.dict('os.environ', OS_ENVIRON_CONFIG)
    def test_from_environment_variables(self):
        workbench = Workbench.from_environment_variables()

        self.assertEqual(workbench.config['max_order'], 16)
        self.assertEqual(workbench.config['max_cats'], 2)
        self.assertEqual(workbench.config['semantics'], 'shoot_then_move')
        self.assertEqual(workbench.evasion.seed, 7)

    @mock.patch.dict('os.environ', {'CATMOUSE_MAX_CATS': '3'}, clear=True)
    def test_from_environment_variables_keeps_defaults(self):
        workbench = Workbench.from_environment_variables()

        self.assertEqual(workbench.config['max_order'], 24)
        self.assertEqual(workbench.config['max_cats'], 3)

    @mock.patch.dict('os.environ', {'CATMOUSE_MAX_CATS': 'many'})
    def test_from_environment_variables_with_invalid_value(self):
        with self.assertRaises(exceptions.CatMouseInputError) as error:
            Workbench.from_environment_variables()

        self.assertEqual(error.exception.msg, "max_cats must be an integer, got 'many'")

    def test_unknown_key(self):
        with self.assertRaises(exceptions.CatMouseInputError) as error:
            Workbench({'ip': '127.0.0.1'})

        self.assertEqual(error.exception.msg, 'Unknown configuration keys: ip')

    def test_invalid_values(self):
        self.assertRaises(exceptions.CatMouseInputError, Workbench, {'max_cats': 0})
        self.assertRaises(exceptions.CatMouseInputError, Workbench, {'semantics': 'chess'})
        self.assertRaises(exceptions.CatMouseInputError, Workbench, {'prune_dominated': 'maybe'})
        self.assertFalse(Workbench({'prune_dominated': 'off'}).config['prune_dominated'])

    def test_lazy_loading_solver(self):
        solver = self._workbench.solver

        self.assertIsInstance(solver, Solver)
        self.assertEqual(solver.max_order, 20)
        self.assertEqual(solver.max_cats, 2)
        self.assertEqual(solver, self._workbench.solver)

    def test_lazy_loading_strategies(self):
        strategies = self._workbench.strategies

        self.assertIsInstance(strategies, StrategyBuilder)
        self.assertIs(strategies.solver, self._workbench.solver)
        self.assertEqual(strategies, self._workbench.strategies)

    def test_lazy_loading_evasion(self):
        evasion = self._workbench.evasion

        self.assertIsInstance(evasion, EvasionLab)
        self.assertEqual(evasion.seed, 3)
        self.assertEqual(evasion, self._workbench.evasion)

    def test_config_is_a_copy(self):
        self._workbench.config['max_cats'] = 9

        self.assertEqual(self._workbench.config['max_cats'], 2)


if __name__ == '__main__':
    unittest.main()
