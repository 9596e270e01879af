#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# This file is part of the
#   RKHS-Controls Project
# Copyright (c) 2022, RKHS-Controls Developers
# License: MIT
# Full Text: see the LICENSE file at the project root.

# =============================================================================
# DOCS
# =============================================================================

"""Exception hierarchy shared by every RKHS-Controls module."""

# =============================================================================
# EXCEPTIONS
# =============================================================================


class RkhsControlsError(Exception):
    """Base class for all the errors raised by RKHS-Controls."""


class InputError(RkhsControlsError, ValueError):
    """Bad shapes, dimensions, time indices or non-finite inputs."""


class SchemaError(InputError):
    """A CSV file does not match the expected schema."""


class ConfigurationError(RkhsControlsError, ValueError):
    """Invalid or unknown configuration values."""


class DivergenceError(RkhsControlsError, ArithmeticError):
    """The forward system blew up.

    Parameters
    ----------
    step : int
        First time index whose state is non-finite or too large.
    """

    def __init__(self, message, step):
        super().__init__(message)
        self.step = step


class FittingError(RkhsControlsError):
    """A fitting run failed.

    Parameters
    ----------
    iteration : int
        Iteration of the optimizer at which the failure happened.
    """

    def __init__(self, message, iteration):
        super().__init__(f"iteration {iteration}: {message}")
        self.iteration = iteration


class PricingError(RkhsControlsError):
    """The Fourier pricer failed for a parameter tuple."""

    def __init__(self, message, params=None):
        if params is not None:
            message = f"{message} for {params}"
        super().__init__(message)
        self.params = params
