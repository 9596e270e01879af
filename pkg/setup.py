#!/usr/bin/env python
# -*- coding: utf-8 -*-

# This file is part of the
#   RKHS-Controls Project
# Copyright (c) 2022, RKHS-Controls Developers
# License: MIT
# Full Text: see the LICENSE file at the project root.

# =====================================================================
# DOCS
# =====================================================================

"""This file is for distribute and install RKHS-Controls"""

# ======================================================================
# IMPORTS
# ======================================================================

import os
import pathlib

from setuptools import setup  # noqa

# =============================================================================
# CONSTANTS
# =============================================================================

PATH = pathlib.Path(os.path.abspath(os.path.dirname(__file__)))


REQUIREMENTS = [
    "numpy>=1.21.4",
    "scipy>=1.7.3",
    "pandas>=1.3.5",
    "scikit-learn>=1.0.2",
    "matplotlib>=3.5.0",
    "click>=8.0.3",
    "toml>=0.10.2",
]

with open(PATH / "rkhs_controls" / "__init__.py") as fp:
    for line in fp.readlines():
        if line.startswith("__version__ = "):
            VERSION = line.split("=", 1)[-1].replace('"', "").strip()
            break


with open("README.md") as fp:
    LONG_DESCRIPTION = fp.read()


# =============================================================================
# FUNCTIONS
# =============================================================================

setup(
    name="RKHS-Controls",
    version=VERSION,
    description=(
        "Learning functions in a reproducing kernel Hilbert space as "
        "solutions of bilinear control systems"
    ),
    long_description=LONG_DESCRIPTION,
    long_description_content_type="text/markdown",
    author="RKHS-Controls Developers",
    packages=["rkhs_controls"],
    include_package_data=True,
    platforms="any",
    license="The MIT License",
    install_requires=REQUIREMENTS,
    entry_points={
        "console_scripts": ["rkhs-controls=rkhs_controls.cli:main"],
    },
    keywords=["RKHS", "Kernel Methods", "Optimal Control", "Heston"],
    classifiers=[
        "Development Status :: 4 - Beta",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python",
        "Programming Language :: Python :: 3.8",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Topic :: Software Development :: Libraries :: Python Modules",
    ],
)
