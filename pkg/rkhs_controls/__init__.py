#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# This file is part of the
#   RKHS-Controls Project
# Copyright (c) 2022, RKHS-Controls Developers
# License: MIT
# Full Text: see the LICENSE file at the project root.

# ============================================================================
# DOCS
# ============================================================================

"""RKHS-Controls.

Learning functions in a reproducing kernel Hilbert space as the terminal
state of a bilinear control system.
"""

# ============================================================================
# META
# ============================================================================

__version__ = "0.1.0"

# =============================================================================
# IMPORTS
# =============================================================================

from .costs import Batch, CostModel, TerminalKind  # noqa
from .errors import (  # noqa
    ConfigurationError,
    DivergenceError,
    FittingError,
    InputError,
    PricingError,
    RkhsControlsError,
    SchemaError,
)
from .operators import OperatorBank, OperatorKind, make_operator_bank  # noqa
from .optimize import (  # noqa
    Algorithm,
    ControlSystem,
    FittedModel,
    LinearizedModel,
    OptimizerConfig,
    fit,
    predict,
)
from .propagation import ControlMatrix, forward_solve  # noqa
from .rkhs import KernelSpec, SupportSet, make_support  # noqa
