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

"""Datasets: toy targets, CSV files, splits and support sampling."""

# =============================================================================
# IMPORTS
# =============================================================================

import dataclasses as dc
import enum
import logging
import pathlib
import typing as t

import numpy as np

import pandas as pd

from scipy.spatial import distance

from .errors import InputError, SchemaError
from .rkhs import DUPLICATE_TOLERANCE, as_points, make_support

# =============================================================================
# CONSTANTS
# =============================================================================

logger = logging.getLogger(__name__)

#: Columns skipped by :func:`load_csv` when no feature list is given.
IGNORED_COLUMNS = ("id", "eventid", "weight")

#: Name of the target column written by :func:`write_csv`.
TARGET_COLUMN = "target"

# =============================================================================
# TYPES
# =============================================================================


class Task(enum.Enum):
    """Learning task of a dataset."""

    REGRESSION = "regression"
    BINARY_CLASSIFICATION = "binary-classification"


@dc.dataclass(frozen=True)
class FeatureStats:
    """Per-feature mean and standard deviation used to standardise inputs."""

    mean: np.ndarray
    std: np.ndarray

    def __post_init__(self):
        mean = np.array(self.mean, dtype=float).ravel()
        std = np.array(self.std, dtype=float).ravel()
        if mean.shape != std.shape:
            raise InputError("mean and std must have the same length")
        if np.any(std <= 0) or not np.all(np.isfinite(std)):
            raise InputError("standard deviations must be finite and > 0")
        mean.flags.writeable = False
        std.flags.writeable = False
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "std", std)

    @classmethod
    def fit(cls, inputs):
        """Statistics of ``inputs``; constant features keep a unit std."""
        inputs = as_points(inputs, "inputs")
        std = inputs.std(axis=0)
        std[std == 0.0] = 1.0
        return cls(inputs.mean(axis=0), std)

    def apply(self, inputs):
        """Standardise ``inputs`` with these statistics."""
        inputs = np.asarray(inputs, dtype=float)
        if inputs.shape[-1] != self.mean.size:
            raise InputError(
                f"inputs have {inputs.shape[-1]} features, statistics have "
                f"{self.mean.size}"
            )
        return (inputs - self.mean) / self.std


@dc.dataclass(frozen=True)
class Dataset:
    """Inputs and targets of a learning problem.

    Parameters
    ----------
    inputs : ndarray of shape (n, d)
    targets : ndarray of shape (n,)
    task : Task
    feature_stats : FeatureStats, optional
        Statistics the inputs were standardised with.
    feature_names : tuple of str, optional
        Column names, ``feature_0``... when omitted.
    target_name : str, default: "target"
    """

    inputs: np.ndarray
    targets: np.ndarray
    task: Task = Task.REGRESSION
    feature_stats: t.Optional[FeatureStats] = None
    feature_names: t.Optional[tuple] = None
    target_name: str = TARGET_COLUMN

    def __post_init__(self):
        inputs = as_points(self.inputs, "inputs")
        targets = np.asarray(self.targets, dtype=float).ravel()
        if targets.shape != (inputs.shape[0],):
            raise InputError(
                f"{inputs.shape[0]} inputs but {targets.size} targets"
            )
        if not np.all(np.isfinite(targets)):
            raise InputError("targets contain non-finite values")
        task = Task(self.task)
        if task is Task.BINARY_CLASSIFICATION and not np.all(
            (targets == 0.0) | (targets == 1.0)
        ):
            raise SchemaError("classification targets must be 0 or 1")
        names = self.feature_names
        if names is None:
            names = tuple(f"feature_{i}" for i in range(inputs.shape[1]))
        names = tuple(names)
        if len(names) != inputs.shape[1]:
            raise InputError("one feature name per input column is needed")
        inputs.flags.writeable = False
        targets.flags.writeable = False
        object.__setattr__(self, "inputs", inputs)
        object.__setattr__(self, "targets", targets)
        object.__setattr__(self, "task", task)
        object.__setattr__(self, "feature_names", names)

    @property
    def size(self):
        """Number of rows."""
        return self.inputs.shape[0]

    @property
    def dim(self):
        """Number of features."""
        return self.inputs.shape[1]

    def take(self, index):
        """Dataset restricted to the rows in ``index``."""
        index = np.asarray(index, dtype=int)
        return dc.replace(
            self, inputs=self.inputs[index], targets=self.targets[index]
        )

    def standardized(self, stats=None):
        """Standardise the inputs.

        Parameters
        ----------
        stats : FeatureStats, optional
            Statistics to apply; fitted on this dataset when omitted.
        """
        stats = FeatureStats.fit(self.inputs) if stats is None else stats
        return dc.replace(
            self, inputs=stats.apply(self.inputs), feature_stats=stats
        )

    def scaled_targets(self, scale):
        """Dataset with its targets divided by ``scale``."""
        if not scale > 0:
            raise InputError(f"target scale must be > 0, got {scale}")
        return dc.replace(self, targets=self.targets / scale)


# =============================================================================
# GENERATORS
# =============================================================================


def _uniform(n, low, high, dim, seed):
    if n < 1:
        raise InputError(f"n must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    return rng.uniform(low, high, size=(n, dim))


def sine_target(x):
    """``sin`` of the first coordinate."""
    return np.sin(np.asarray(x, dtype=float)[..., 0])


def linear3_target(x):
    """``0.5 x_1 - 0.2 x_2 + 0.1 x_3``."""
    x = np.asarray(x, dtype=float)
    return x @ np.array([0.5, -0.2, 0.1])


def toy_sine(n, seed):
    """``n`` uniform points on ``[-pi, pi]`` with the sine as target."""
    x = _uniform(n, -np.pi, np.pi, 1, seed)
    return Dataset(x, sine_target(x))


def toy_linear3(n, seed):
    """``n`` uniform points on ``[-3, 3]^3`` with a linear target."""
    x = _uniform(n, -3.0, 3.0, 3, seed)
    return Dataset(x, linear3_target(x))


def two_gaussians(n, d=5, separation=3.0, seed=0):
    """Balanced two-class Gaussian mixture.

    Class means sit at ``+-separation / 2`` along the normalised all-ones
    direction; both classes have identity covariance.

    Returns
    -------
    Dataset
        Binary-classification dataset with labels in ``{0, 1}``.
    """
    if n < 2 or d < 1:
        raise InputError(f"need n >= 2 and d >= 1, got n={n}, d={d}")
    rng = np.random.default_rng(seed)
    labels = rng.permutation(np.arange(n) % 2).astype(float)
    direction = np.ones(d) / np.sqrt(d)
    centers = np.outer(labels - 0.5, direction) * separation
    x = centers + rng.standard_normal((n, d))
    return Dataset(x, labels, task=Task.BINARY_CLASSIFICATION)


def train_test_split(dataset, train_size, test_size, seed):
    """Disjoint random train and test sets.

    Raises
    ------
    InputError
        When the dataset is smaller than ``train_size + test_size``.
    """
    if train_size < 1 or test_size < 0:
        raise InputError("train_size must be >= 1 and test_size >= 0")
    if train_size + test_size > dataset.size:
        raise InputError(
            f"cannot split {dataset.size} rows into {train_size} train and "
            f"{test_size} test rows"
        )
    order = np.random.default_rng(seed).permutation(dataset.size)
    train = dataset.take(order[:train_size])
    test = dataset.take(order[train_size:train_size + test_size])
    return train, test


def sample_support(train, m, seed, kernel):
    """Draw ``m`` distinct training inputs as the support set.

    Points are visited in a seeded random order and kept when they are
    farther than ``DUPLICATE_TOLERANCE`` from every point already kept.

    Parameters
    ----------
    train : Dataset
    m : int
    seed : int or numpy.random.SeedSequence
    kernel : KernelSpec

    Returns
    -------
    SupportSet
    """
    if m < 1:
        raise InputError(f"m must be >= 1, got {m}")
    points = train.inputs
    order = np.random.default_rng(seed).permutation(points.shape[0])
    chosen = []
    for idx in order:
        if chosen:
            dists = distance.cdist(points[idx][None], points[chosen])
            if dists.min() <= DUPLICATE_TOLERANCE:
                continue
        chosen.append(idx)
        if len(chosen) == m:
            break
    if len(chosen) < m:
        raise InputError(
            f"only {len(chosen)} distinct training inputs, {m} requested"
        )
    return make_support(points[chosen], kernel)


# =============================================================================
# CSV
# =============================================================================


def _binary_labels(values, positive_label, column):
    if positive_label is not None:
        return (values.astype(str) == str(positive_label)).to_numpy(float)
    numeric = pd.to_numeric(values, errors="coerce")
    bad = ~numeric.isin([0, 1])
    if bad.any():
        row = int(np.flatnonzero(bad.to_numpy())[0])
        raise SchemaError(
            f"row {row}: label column {column!r} has value "
            f"{values.iloc[row]!r}, expected 0 or 1"
        )
    return numeric.to_numpy(float)


def load_csv(
    path,
    label_column,
    feature_columns=None,
    *,
    task=Task.REGRESSION,
    standardize=False,
    positive_label=None,
):
    """Read a headered CSV file into a :class:`Dataset`.

    Lines starting with ``#`` are comments.

    Parameters
    ----------
    path : str or path-like
    label_column : str
    feature_columns : list of str, optional
        All the other columns, except id and weight columns, when omitted.
    task : Task, default: Task.REGRESSION
    standardize : bool, default: False
        Z-score the features with statistics of the loaded rows.
    positive_label : str, optional
        Label value mapped to class 1 for textual labels (``"s"`` in the
        Higgs boson data); other values map to 0.

    Raises
    ------
    SchemaError
        Missing column, unparsable numeric cell or non-binary label.
    InputError
        File that cannot be read or has no rows.
    """
    path = pathlib.Path(path)
    task = Task(task)
    try:
        frame = pd.read_csv(path, comment="#", float_precision="round_trip")
    except pd.errors.EmptyDataError as err:
        raise InputError(f"{path} is empty") from err
    except OSError as err:
        raise InputError(f"cannot read {path}: {err.strerror}") from err
    if frame.empty:
        raise InputError(f"{path} has no data rows")

    if feature_columns is None:
        feature_columns = [
            col
            for col in frame.columns
            if col != label_column and col.lower() not in IGNORED_COLUMNS
        ]
    missing = [
        col
        for col in [label_column, *feature_columns]
        if col not in frame.columns
    ]
    if missing:
        raise SchemaError(f"{path}: missing column(s) {missing}")

    features = frame[feature_columns].apply(pd.to_numeric, errors="coerce")
    invalid = features.isna().any(axis=1).to_numpy()
    if invalid.any():
        row = int(np.flatnonzero(invalid)[0])
        raise SchemaError(f"{path}: row {row} has a non-numeric feature")

    labels = frame[label_column]
    if task is Task.BINARY_CLASSIFICATION:
        targets = _binary_labels(labels, positive_label, label_column)
    else:
        numeric = pd.to_numeric(labels, errors="coerce")
        if numeric.isna().any():
            row = int(np.flatnonzero(numeric.isna().to_numpy())[0])
            raise SchemaError(f"{path}: row {row} has a non-numeric target")
        targets = numeric.to_numpy(float)

    dataset = Dataset(
        features.to_numpy(float),
        targets,
        task=task,
        feature_names=tuple(feature_columns),
        target_name=label_column,
    )
    logger.info(
        "loaded %d rows with %d features from %s",
        dataset.size,
        dataset.dim,
        path,
    )
    return dataset.standardized() if standardize else dataset


def write_csv(dataset, path, comments=()):
    """Write a dataset as headered CSV, floats at full precision.

    Parameters
    ----------
    dataset : Dataset
    path : str or path-like
    comments : iterable of str
        Lines written first, each prefixed with ``# ``.
    """
    path = pathlib.Path(path)
    frame = pd.DataFrame(dataset.inputs, columns=list(dataset.feature_names))
    frame[dataset.target_name] = dataset.targets
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as fp:
            for line in comments:
                fp.write(f"# {line}\n")
            frame.to_csv(fp, index=False, float_format="%.17g")
    except OSError as err:
        raise InputError(f"cannot write {path}: {err.strerror}") from err
    return path
