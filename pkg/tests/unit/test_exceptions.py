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
import os
import tempfile
import pickle

from catmouse import exceptions


class ExceptionsTest(unittest.TestCase):
    def test_exception_constructor_with_string(self):
        exception = exceptions.CatMouseException("A message string")

        self.assertEqual(exception.msg, "A message string")
        self.assertEqual(exception.response, None)
        self.assertEqual(exception.args[0], "A message string")
        self.assertEqual(len(exception.args), 1)

    def test_exception_constructor_with_valid_dict(self):
        exception = exceptions.CatMouseException({'message': "A message string", 'order': 30})

        self.assertEqual(exception.msg, "A message string")
        self.assertEqual(exception.response, {'message': "A message string", 'order': 30})
        self.assertEqual(exception.args[0], "A message string")
        self.assertEqual(exception.args[1]['order'], 30)

    def test_exception_constructor_with_invalid_dict(self):
        exception = exceptions.CatMouseException({'msg': "A message string"})

        self.assertEqual(exception.msg, None)
        self.assertEqual(exception.response, {'msg': "A message string"})
        self.assertEqual(exception.args[0], None)
        self.assertEqual(exception.args[1], {'msg': "A message string"})

    def test_exception_constructor_with_invalid_type(self):
        exception = exceptions.CatMouseException([3, 5, 8])

        self.assertEqual(exception.msg, None)
        self.assertEqual(exception.response, [3, 5, 8])
        self.assertEqual(exception.args[1], [3, 5, 8])

    def test_capacity_error_inheritance(self):
        exception = exceptions.CatMouseCapacityError("Tree too large")

        self.assertIsInstance(exception, exceptions.CatMouseException)
        self.assertEqual(exception.msg, "Tree too large")
        self.assertEqual(exception.response, None)

    def test_input_error_inheritance(self):
        exception = exceptions.CatMouseInputError({'message': "Not a tree", 'cycle': [[0, 1], [1, 2], [2, 0]]})

        self.assertIsInstance(exception, exceptions.CatMouseException)
        self.assertEqual(exception.msg, "Not a tree")
        self.assertEqual(exception.response['cycle'][0], [0, 1])

    def test_invariant_error_carries_records(self):
        exception = exceptions.CatMouseInvariantError({'message': "Schedule does not win", 'remaining': [4]})

        self.assertIsInstance(exception, exceptions.CatMouseException)
        self.assertEqual(exception.response['remaining'], [4])

    def test_pickle_CatMouseException_dict(self):
        message = {"msg": "test message"}
        exception = exceptions.CatMouseException(message)
        tempf = tempfile.NamedTemporaryFile(delete=False)
        with tempf as f:
            pickle.dump(exception, f)

        with open(tempf.name, 'rb') as f:
            exception = pickle.load(f)

        os.remove(tempf.name)
        self.assertEqual('CatMouseException', exception.__class__.__name__)

    def test_pickle_CatMouseInputError_message(self):
        message = "test message"
        exception = exceptions.CatMouseInputError(message)
        tempf = tempfile.NamedTemporaryFile(delete=False)
        with tempf as f:
            pickle.dump(exception, f)

        with open(tempf.name, 'rb') as f:
            exception = pickle.load(f)

        os.remove(tempf.name)
        self.assertEqual('CatMouseInputError', exception.__class__.__name__)
        self.assertEqual(exception.msg, "test message")

    def test_pickle_keeps_response(self):
        exception = exceptions.CatMouseCapacityError({'message': "Tree too large", 'order': 30})

        restored = pickle.loads(pickle.dumps(exception))

        self.assertEqual(restored.msg, "Tree too large")
        self.assertEqual(restored.response, {'message': "Tree too large", 'order': 30})

    def test_constructor_takes_one_argument(self):
        self.assertRaises(TypeError, exceptions.CatMouseException, "A message string", "extra")


if __name__ == '__main__':
    unittest.main()
