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

from setuptools import find_packages
from setuptools import setup

setup(name='catmouse',
      version='1.0.1',
      description='Cats and invisible mouse on trees: hunter number solver, cat strategies and lower-bound checks',
      author='catmouse contributors',
      license='Apache',
      packages=find_packages(exclude=['examples*', 'tests*']),
      keywords=['pursuit-evasion', 'hunter number', 'trees', 'graph searching'],
      install_requires=['networkx>=2.6', 'numpy>=1.20'],
      entry_points={'console_scripts': ['catmouse=catmouse.cli:main']},
      python_requires='>=3.6')
