#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# This file is part of the
#   RKHS-Controls Project
# Copyright (c) 2022, RKHS-Controls Developers
# License: MIT
# Full Text: see the LICENSE file at the project root.

from rkhs_controls.plots import Plots

import pytest as pt


@pt.fixture
def plots():
    yield Plots()


@pt.fixture
def predictions_file(tmp_path):
    """A small predictions CSV with one feature and binary targets."""
    path = tmp_path / "predictions.csv"
    path.write_text(
        "feature_0,y,prediction,error\n"
        "0.5,1,0.75,-0.25\n"
        "-1.0,0,0.25,0.25\n"
        "2.0,1,1.5,0.5\n"
        "0.0,0,-0.5,-0.5\n"
    )
    return path
