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

"""Versioned TOML files for fitted models.

A model file stores everything needed to evaluate the model again: the
kernel scale, support points, operator vectors, controls, the final
``beta`` of a linearised model, the offset and the seeds of the run, plus
the data preprocessing (feature statistics and target scale) used to fit
it. Floats are written with ``repr`` precision so that a reloaded model
reproduces the predictions of the saved one.
"""

# =============================================================================
# IMPORTS
# =============================================================================

import dataclasses as dc
import logging
import os
import pathlib
import tempfile
import typing as t

import numpy as np

import toml

from . import propagation
from .costs import TerminalKind
from .data import TARGET_COLUMN, FeatureStats
from .errors import ConfigurationError, InputError
from .operators import ControlOperator, OperatorBank
from .optimize import ControlSystem, FittedModel, LinearizedModel
from .propagation import ControlMatrix
from .rkhs import KernelSpec, make_support

# =============================================================================
# CONSTANTS
# =============================================================================

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1

# =============================================================================
# TYPES
# =============================================================================


@dc.dataclass(frozen=True)
class ModelMetadata:
    """What a model file records besides the model itself."""

    task: str = "custom"
    terminal: TerminalKind = TerminalKind.SQUARED_ERROR
    target_scale: float = 1.0
    feature_stats: t.Optional[FeatureStats] = None
    feature_names: tuple = ()
    target_name: str = TARGET_COLUMN
    positive_label: t.Optional[str] = None
    seeds: dict = dc.field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "terminal", TerminalKind(self.terminal))
        object.__setattr__(self, "feature_names", tuple(self.feature_names))


# =============================================================================
# FILES
# =============================================================================


def _discard(tmp):
    if os.path.exists(tmp):
        os.remove(tmp)


def write_text_atomic(path, text):
    """Write ``text`` to ``path`` through a temporary file and a rename.

    Raises
    ------
    InputError
        When the file or its directory cannot be written.
    """
    path = pathlib.Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    except OSError as err:
        raise InputError(f"cannot write {path}: {err.strerror}") from err
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fp:
            fp.write(text)
        os.replace(tmp, path)
    except OSError as err:
        _discard(tmp)
        raise InputError(f"cannot write {path}: {err.strerror}") from err
    except BaseException:
        _discard(tmp)
        raise
    return path


def model_to_dict(model, metadata=None):
    """Serialisable mapping of a fitted or linearised model."""
    metadata = ModelMetadata() if metadata is None else metadata
    linear = isinstance(model, LinearizedModel)
    base = model.base if linear else model
    data = {
        "format_version": FORMAT_VERSION,
        "kind": "linearized" if linear else "fitted",
        "task": metadata.task,
        "terminal": metadata.terminal.value,
        "target_scale": float(metadata.target_scale),
        "target_name": metadata.target_name,
        "feature_names": list(metadata.feature_names),
        "offset": float(base.offset),
        "kernel": {"scale": base.kernel.scale},
        "support": {"points": base.support.points.tolist()},
        "operators": [
            {"kind": op.kind.value, "vector": op.vector.tolist()}
            for op in base.bank
        ],
        "control": {"entries": base.control.entries.tolist()},
    }
    if linear:
        data["control"]["beta"] = model.beta.tolist()
    if metadata.feature_stats is not None:
        data["feature_stats"] = {
            "mean": metadata.feature_stats.mean.tolist(),
            "std": metadata.feature_stats.std.tolist(),
        }
    if metadata.positive_label is not None:
        data["positive_label"] = str(metadata.positive_label)
    if metadata.seeds:
        data["seeds"] = {k: int(v) for k, v in metadata.seeds.items()}
    return data


def model_from_dict(data):
    """Rebuild ``(model, metadata)`` from :func:`model_to_dict` output."""
    version = data.get("format_version")
    if version != FORMAT_VERSION:
        raise ConfigurationError(
            f"unsupported model format version {version!r}"
        )
    try:
        kernel = KernelSpec(data["kernel"]["scale"])
        support = make_support(np.array(data["support"]["points"]), kernel)
        bank = OperatorBank(
            tuple(
                ControlOperator(op["kind"], op["vector"])
                for op in data["operators"]
            )
        )
        control = ControlMatrix(np.array(data["control"]["entries"]))
        system = ControlSystem(
            bank, support, control.horizon, float(data["offset"])
        )
        model = FittedModel.from_control(control, system)
        if data["kind"] == "linearized":
            bundle = propagation.adjoint_transitions(control, bank, support)
            model = LinearizedModel(
                base=model, beta=data["control"]["beta"], adjoint=bundle
            )
        stats = data.get("feature_stats")
        metadata = ModelMetadata(
            task=data.get("task", "custom"),
            terminal=data.get("terminal", TerminalKind.SQUARED_ERROR.value),
            target_scale=float(data.get("target_scale", 1.0)),
            feature_names=tuple(data.get("feature_names", ())),
            target_name=data.get("target_name", TARGET_COLUMN),
            positive_label=data.get("positive_label"),
            feature_stats=None
            if stats is None
            else FeatureStats(stats["mean"], stats["std"]),
            seeds=dict(data.get("seeds", {})),
        )
    except KeyError as err:
        raise ConfigurationError(f"model file misses key {err}") from err
    return model, metadata


def save_model(path, model, metadata=None):
    """Write a model file.

    Parameters
    ----------
    path : str or path-like
    model : FittedModel or LinearizedModel
    metadata : ModelMetadata, optional

    Returns
    -------
    pathlib.Path
    """
    text = toml.dumps(model_to_dict(model, metadata))
    path = write_text_atomic(path, text)
    logger.info("model written to %s", path)
    return path


def load_model(path):
    """Read a model file written by :func:`save_model`.

    Returns
    -------
    model : FittedModel or LinearizedModel
    metadata : ModelMetadata
    """
    path = pathlib.Path(path)
    try:
        data = toml.load(path)
    except FileNotFoundError as err:
        raise InputError(f"model file {path} does not exist") from err
    except OSError as err:
        raise InputError(f"cannot read {path}: {err.strerror}") from err
    except toml.TomlDecodeError as err:
        raise ConfigurationError(f"{path}: {err}") from err
    return model_from_dict(data)
