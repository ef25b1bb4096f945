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

"""Module to define catmouse exception classes."""

import logging

logger = logging.getLogger(__name__)


class CatMouseException(Exception):
    """
    catmouse base Exception.

    Attributes:
       msg (str): Exception message.
       response (dict): Structured details (offending records, limits).
   """

    def __init__(self, data):
        self.msg = None
        self.response = None

        if isinstance(data, str):
            self.msg = data
        else:
            self.response = data

            if data and isinstance(data, dict):
                self.msg = data.get('message')

        if self.response:
            Exception.__init__(self, self.msg, self.response)
        else:
            Exception.__init__(self, self.msg)

    def __reduce__(self):
        return self.__class__, (self.response if self.response else self.msg,)


class CatMouseCapacityError(CatMouseException):
    """
    Capacity Exception.
    The exception is raised when an input exceeds a configured size guard
    (solver order, cat count, enumeration range, exhaustive-subset limit).

    Attributes:
       msg (str): Exception message.
    """
    pass


class CatMouseInputError(CatMouseException):
    """
    Input Exception.
    The exception is raised when a tree file, schedule or parameter is malformed.

    Attributes:
       msg (str): Exception message.
    """
    pass


class CatMouseInvariantError(CatMouseException):
    """
    Invariant Exception.
    The exception is raised when a certifying operation finds a violation,
    e.g. a generated schedule that does not win or a falsified inequality.

    Attributes:
       msg (str): Exception message.
       response (dict): The offending records.
    """
    pass
