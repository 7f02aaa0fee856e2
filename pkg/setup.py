# -*- coding: utf-8 -*-

import os
from setuptools import setup

BPATH: str = os.path.abspath(os.path.dirname(__file__))

with open(os.path.join(BPATH, 'README.md'), 'r', encoding='utf-8') as f:
    LONG_DESCRIPTION: str = f.read()

def version() -> str:
    from novikov.__version__ import version
    return version

setup(
    name='novikov',
    version=version(),
    description=(
        'Truncated Novikov rings, torsion of Novikov complexes, zeta functions of flows and their bifurcations.'
    ),
    long_description=LONG_DESCRIPTION,
    long_description_content_type='text/markdown',
    python_requires='>=3.9',
    classifiers=[
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Topic :: Utilities',
    ],
    packages=[
        'novikov',
    ],
    install_requires=[
        'colorama',
        'pyfiglet',
        'rich',
        'sympy',
    ],
    extras_require={
        'test': [
            'pytest',
        ],
    },
    entry_points={
        'console_scripts': [
            'novikov=novikov.__main__:run',
        ],
    },
)
