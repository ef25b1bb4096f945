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

"""
This module implements a common entry point holding the catmouse configuration.
"""
import json
import logging
import os

from catmouse import exceptions
from catmouse.evasion import EvasionLab
from catmouse.game_engine import GameSemantics
from catmouse.solver import DEFAULT_MAX_CATS
from catmouse.solver import DEFAULT_MAX_ORDER
from catmouse.solver import Solver
from catmouse.strategies import StrategyBuilder

DEFAULTS = {
    'max_order': DEFAULT_MAX_ORDER,
    'max_cats': DEFAULT_MAX_CATS,
    'semantics': 'paper',
    'prune_dominated': True,
    'seed': 0,
}

ENVIRONMENT = {
    'max_order': 'CATMOUSE_MAX_ORDER',
    'max_cats': 'CATMOUSE_MAX_CATS',
    'semantics': 'CATMOUSE_SEMANTICS',
    'seed': 'CATMOUSE_SEED',
}

TRUE_STRINGS = ('1', 'true', 'yes', 'on')
FALSE_STRINGS = ('0', 'false', 'no', 'off')

logger = logging.getLogger(__name__)


def _as_int(key, value, minimum):
    try:
        number = int(value)
    except (TypeError, ValueError):
        raise exceptions.CatMouseInputError('{} must be an integer, got {!r}'.format(key, value))
    if number < minimum:
        raise exceptions.CatMouseInputError('{} must be at least {}, got {}'.format(key, minimum, number))
    return number


def _as_bool(key, value):
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in TRUE_STRINGS:
        return True
    if text in FALSE_STRINGS:
        return False
    raise exceptions.CatMouseInputError('{} must be a boolean, got {!r}'.format(key, value))


def validate_config(config):
    """Merges a config dictionary over the defaults and normalises every value.

    Raises:
        CatMouseInputError: on unknown keys or invalid values.
    """
    config = dict(config or {})
    unknown = sorted(set(config) - set(DEFAULTS))
    if unknown:
        raise exceptions.CatMouseInputError('Unknown configuration keys: {}'.format(', '.join(unknown)))

    merged = dict(DEFAULTS)
    merged.update({key: value for key, value in config.items() if value is not None})
    merged['max_order'] = _as_int('max_order', merged['max_order'], 1)
    merged['max_cats'] = _as_int('max_cats', merged['max_cats'], 1)
    merged['seed'] = _as_int('seed', merged['seed'], 0)
    merged['prune_dominated'] = _as_bool('prune_dominated', merged['prune_dominated'])
    merged['semantics'] = GameSemantics(merged['semantics']).order
    return merged


class Workbench(object):
    """Entry point for all catmouse operations, built from one config dictionary."""

    def __init__(self, config=None):
        """Initialize Workbench class."""
        self.__config = validate_config(config)
        self.__solver = None
        self.__strategies = None
        self.__evasion = None
        logger.debug('Workbench configured with %s', self.__config)

    @classmethod
    def from_json_file(cls, file_name):
        """
        Construct a Workbench using a json file.

        Args:
            file_name: json full path.

        Returns:
            Workbench object
        """
        with open(file_name) as json_data:
            try:
                config = json.load(json_data)
            except ValueError as error:
                raise exceptions.CatMouseInputError('Invalid configuration file {}: {}'.format(file_name, error))

        return cls(config)

    @classmethod
    def from_environment_variables(cls):
        """
        Construct a Workbench using environment variables.

        Unset variables fall back to the defaults.

        Returns:
            Workbench object
        """
        config = {key: os.environ.get(name) for key, name in ENVIRONMENT.items()}
        return cls(config)

    @property
    def config(self):
        return dict(self.__config)

    @property
    def semantics(self):
        """
        Gets the game semantics for the standard game.

        Returns:
            GameSemantics object
        """
        return GameSemantics(self.__config['semantics'])

    @property
    def solver(self):
        """
        Gets the exact solver.

        Returns:
            Solver object
        """
        if not self.__solver:
            self.__solver = Solver(self.__config['max_order'], self.__config['max_cats'],
                                   self.__config['prune_dominated'])
        return self.__solver

    @property
    def strategies(self):
        """
        Gets the strategy builder, sharing the solver for base witnesses.

        Returns:
            StrategyBuilder object
        """
        if not self.__strategies:
            self.__strategies = StrategyBuilder(self.solver)
        return self.__strategies

    @property
    def evasion(self):
        """
        Gets the lower-bound checks.

        Returns:
            EvasionLab object
        """
        if not self.__evasion:
            self.__evasion = EvasionLab(self.__config['seed'])
        return self.__evasion
