#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# This file is part of the
#   RKHS-Controls Project
# Copyright (c) 2022, RKHS-Controls Developers
# License: MIT
# Full Text: see the LICENSE file at the project root.

# =============================================================================
# TESTS
# =============================================================================


def test_can_fit_and_predict_from_the_package_namespace():
    import numpy as np

    import rkhs_controls as rc
    from rkhs_controls.data import Dataset

    support = rc.make_support([[0.0], [1.0], [2.0]], rc.KernelSpec(1.0))
    bank = rc.make_operator_bank(0, support.size)
    system = rc.ControlSystem(bank, support, horizon=3)
    train = Dataset([[0.0], [1.0], [2.0]], [1.0, 1.5, 2.0])
    config = rc.OptimizerConfig(batch_size=None, max_iterations=2)
    model = rc.fit(config, rc.CostModel(), train, system)
    assert np.isfinite(rc.predict(model, [0.5]))
