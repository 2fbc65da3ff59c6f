#!/usr/bin/env python
from setuptools import setup

setup(
    name = 'dglaformal',
    version = '0.1.dev0',
    description = 'Formality checks for finite DG-Lie algebras',
    long_description = open('README.rst').read(),
    license = 'MIT license',
    packages = ['dglaformal'],
    package_data = {'dglaformal': ['data/*.dgla']},
    requires=['sympy', 'toolz'],
    install_requires=[
        'sympy >= 1.9',
        'toolz >= 0.7',
        'tqdm',
        'tabulate',
    ],
    extras_require = {
        'fast':  [
            "cytoolz >= 0.7",
        ],
    },
    entry_points = {
        'console_scripts': ['dglaformal = dglaformal.cli:main'],
    },
    classifiers=[
          'Development Status :: 3 - Alpha',
          'Intended Audience :: Science/Research',
          'License :: OSI Approved :: MIT License',
          'Programming Language :: Python',
          'Programming Language :: Python :: 3',
          'Programming Language :: Python :: Implementation :: CPython',
          'Topic :: Scientific/Engineering :: Mathematics',
    ],
)
