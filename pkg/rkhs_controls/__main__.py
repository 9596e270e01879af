#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# This file is part of the
#   RKHS-Controls Project
# Copyright (c) 2022, RKHS-Controls Developers
# License: MIT
# Full Text: see the LICENSE file at the project root.

"""Entry point of ``python -m rkhs_controls``."""

from .cli import main

if __name__ == "__main__":
    main(prog_name="rkhs-controls")
