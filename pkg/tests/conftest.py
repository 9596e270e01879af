#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# This file is part of the
#   RKHS-Controls Project
# Copyright (c) 2022, RKHS-Controls Developers
# License: MIT
# Full Text: see the LICENSE file at the project root.

import numpy as np

import pytest as pt

from rkhs_controls import costs, operators, rkhs
from rkhs_controls.optimize import ControlSystem


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "slow: experiment-scale tests, deselect with -m 'not slow'"
    )


@pt.fixture
def rng():
    return np.random.default_rng(20220)


@pt.fixture
def scalar_system():
    """m = 1, K = [[1]], one diagonal operator b = (1), h_0 = 1."""

    def make(horizon=2):
        support = rkhs.make_support([[0.0]], rkhs.KernelSpec(1.0))
        bank = operators.OperatorBank(
            (operators.ControlOperator("diagonal", [1.0]),)
        )
        return ControlSystem(bank, support, horizon, 1.0)

    return make


@pt.fixture
def scalar_batch(scalar_system):
    """A single training point at the support point."""

    def make(target=0.0, horizon=2):
        system = scalar_system(horizon)
        batch = costs.make_batch(system.support, [[0.0]], [target])
        return system, batch

    return make


@pt.fixture
def random_instance():
    """Seeded random instance with m = 5, T = 4, q = 2, n = 7 and d = 2."""

    def make(seed, m=5, horizon=4, n=7, binary=False, scale=0.5):
        gen = np.random.default_rng(seed)
        support = rkhs.make_support(
            gen.normal(size=(m, 2)), rkhs.KernelSpec(1.0)
        )
        bank = operators.make_operator_bank(seed, m, 2)
        system = ControlSystem(bank, support, horizon, 1.0)
        control = gen.normal(scale=scale, size=(2, horizon))
        inputs = gen.normal(size=(n, 2))
        if binary:
            targets = (gen.uniform(size=n) < 0.5).astype(float)
        else:
            targets = gen.normal(size=n)
        batch = costs.make_batch(support, inputs, targets)
        return system, control, batch

    return make
