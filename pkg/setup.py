# Copyright (C) 2024 Alexandre Mitsuru Kaihara
#
#    This program is free software: you can redistribute it and/or modify
#    it under the terms of the GNU General Public License as published by
#    the Free Software Foundation, either version 3 of the License, or
#    (at your option) any later version.
#
#    This program is distributed in the hope that it will be useful,
#    but WITHOUT ANY WARRANTY; without even the implied warranty of
#    MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
#    GNU General Public License for more details.
#
#    You should have received a copy of the GNU General Public License
#    along with this program.  If not, see <http://www.gnu.org/licenses/>.

# This file is for defining a package in Python
from setuptools import setup, find_packages

setup(
    name='geohom',
    version='1.0.0',
    packages=find_packages(exclude=['experiment', 'results']),
    install_requires=[
        'pandas',
        'sympy>=1.9',
    ],
    extras_require={
        'dev': ['pytest>=7.0.0'],
    },
    author='Alexandre Mitsuru Kaihara',
    author_email='alexandreamk1@gmail.com',
    description='geohom computes, in exact arithmetic, the homology classes of closed geodesics on the modular curve Y0(p) attached to real quadratic narrow ideal classes, their pairing with the Eisenstein class, and the class-genus sums whose concentration toward the Eisenstein direction it measures across discriminants.',
    long_description=open('README.md').read(),
    long_description_content_type='text/markdown',
    classifiers=[
        'Programming Language :: Python :: 3',
        'License :: OSI Approved :: GNU General Public License v3 (GPLv3)',
        'Operating System :: OS Independent',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    python_requires='>=3.9',
    include_package_data=True,
    entry_points={
        'console_scripts': [
            'geohom=geohom.cli:main',
        ],
    }
)
