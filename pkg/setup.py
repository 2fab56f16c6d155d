#!/usr/bin/env python

# metsort: metric sorting gear for list decoders
# Copyright (C) 2024-present  metsort contributors

# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU Affero General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.

# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU Affero General Public License for more details.

# You should have received a copy of the GNU Affero General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.

from setuptools import setup, find_packages

with open('README.rst', encoding='utf-8') as f:
    readme = f.read()


setup(
    name="metsort",
    version='0.1.0.dev0',
    description='metric sorting gear for list decoders.',
    long_description=readme,
    license='AGPLv3',
    author='metsort contributors',
    platforms=['linux'],
    packages=find_packages(exclude=['tests']),
    entry_points={
        'console_scripts': [
            'metsort = metsort.cli:cli',
        ]
    },
    install_requires=[
        'toml',
        'click',
        'colorlog',
        'pygments',
        'pydantic >= 2',  # structured data

        # numerics
        'bidict',  # 2 way map
        'numpy',
        'numba',
        'pandas',
    ],
    tests_require=['pytest'],
    python_requires=">=3.9",
    keywords=["polar codes", "list decoding", "sorting networks", "hardware"],
    classifiers=[
        'Development Status :: 3 - Alpha',
        'License :: OSI Approved :: GNU Affero General Public License v3',
        'Operating System :: POSIX :: Linux',
        "Programming Language :: Python :: Implementation :: CPython",
        "Programming Language :: Python :: 3 :: Only",
        "Programming Language :: Python :: 3.9",
        'Intended Audience :: Science/Research',
        'Intended Audience :: Developers',
        'Intended Audience :: Education',
    ],
)
