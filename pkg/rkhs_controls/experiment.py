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

"""Experiment configuration, metrics, baselines and the experiment runner.

An experiment is described by a TOML file:

.. code-block:: toml

    task = "sine"
    seed = 0

    [kernel]
    scale = 5.011872336272722

    [system]
    T = 20
    m = 10

    [optimizer]
    algorithm = "iterative-regression"
    max_iterations = 100

    [data]
    train_size = 300

    [output]
    metrics_path = "sine-metrics.toml"
    predictions_path = "sine-predictions.csv"
    model_path = "sine-model.toml"

:func:`run_experiment` splits the data, draws the support set and the
operators, fits the controls and writes the three artifacts.
"""

# =============================================================================
# IMPORTS
# =============================================================================

import dataclasses as dc
import io
import logging
import os
import pathlib
import time
import typing as t

import numpy as np

import pandas as pd

from sklearn.gaussian_process import GaussianProcessRegressor
from sklearn.gaussian_process.kernels import RBF
from sklearn.linear_model import Lasso

import toml

from . import costs, data, heston, persistence
from .costs import CostModel, TerminalKind
from .data import Task
from .errors import ConfigurationError, FittingError, InputError
from .operators import make_operator_bank
from .optimize import (
    Algorithm,
    ControlSystem,
    FittedModel,
    LinearizedModel,
    OptimizerConfig,
    fit,
    predict,
    solve_logistic_subproblem,
    solve_ridge_subproblem,
)
from .rkhs import KernelSpec, gram_matrix

# =============================================================================
# CONSTANTS
# =============================================================================

logger = logging.getLogger(__name__)

TASKS = (
    "sine",
    "linear3",
    "heston",
    "csv-classify",
    "two-gaussians",
    "custom",
)

CLASSIFICATION_TASKS = ("csv-classify", "two-gaussians")

#: Tasks whose features are standardised unless the config says otherwise.
STANDARDIZED_TASKS = ("heston", "csv-classify", "two-gaussians")

#: Tasks read from ``data.path``.
FILE_TASKS = ("csv-classify", "custom")

#: Value of ``optimizer.batch_size`` selecting full-batch iterations.
FULL_BATCH = "full"

#: Smallest ``|y|`` entering the mean absolute percentage error.
MAPE_FLOOR = 1e-12

#: Baselines accepted by :func:`run_baseline`.
BASELINES = ("kernel-ridge", "ridge", "lasso", "gpr", "logit")

# =============================================================================
# CONFIGURATION
# =============================================================================

# dotted key, attribute, coercion
_SCHEMA = (
    ("task", "task", str),
    ("seed", "seed", int),
    ("kernel.scale", "kernel_scale", float),
    ("system.T", "horizon", int),
    ("system.q", "q", int),
    ("system.m", "m", int),
    ("system.offset", "offset", float),
    ("init.mu", "init_mu", float),
    ("init.sigma", "init_sigma", float),
    ("optimizer.algorithm", "algorithm", str),
    ("optimizer.learning_rate", "learning_rate", float),
    ("optimizer.lambda", "ridge", float),
    ("optimizer.batch_size", "batch_size", int),
    ("optimizer.max_iterations", "max_iterations", int),
    ("optimizer.rel_tol", "rel_tol", float),
    ("optimizer.window", "window", int),
    ("optimizer.readout", "readout", str),
    ("cost.terminal", "terminal", str),
    ("cost.running", "running", str),
    ("cost.control_penalty", "control_penalty", float),
    ("data.path", "data_path", str),
    ("data.train_size", "train_size", int),
    ("data.test_size", "test_size", int),
    ("data.standardize", "standardize", bool),
    ("data.target_scale", "target_scale", float),
    ("data.label_column", "label_column", str),
    ("data.feature_columns", "feature_columns", tuple),
    ("data.positive_label", "positive_label", str),
    ("data.dim", "dim", int),
    ("data.separation", "separation", float),
    ("output.metrics_path", "metrics_path", str),
    ("output.predictions_path", "predictions_path", str),
    ("output.model_path", "model_path", str),
)

_REQUIRED = ("task", "kernel.scale", "system.T", "system.m")


def _coerce(key, value, kind):
    if kind is tuple:
        if isinstance(value, str) or not isinstance(value, (list, tuple)):
            raise ConfigurationError(f"{key} must be a list of strings")
        return tuple(str(v) for v in value)
    if kind is bool:
        if not isinstance(value, bool):
            raise ConfigurationError(f"{key} must be true or false")
        return value
    if kind in (int, float) and isinstance(value, bool):
        raise ConfigurationError(f"{key} must be a number, got {value!r}")
    if kind is int and isinstance(value, float) and not value.is_integer():
        raise ConfigurationError(f"{key} must be an integer, got {value!r}")
    try:
        return kind(value)
    except (TypeError, ValueError) as err:
        raise ConfigurationError(
            f"{key} must be {kind.__name__}, got {value!r}"
        ) from err


@dc.dataclass(frozen=True)
class ExperimentConfig:
    """Every setting of an experiment.

    The attributes are the flattened ``section.key`` entries of the TOML
    file; see :data:`_SCHEMA` for the mapping. ``None`` means "not set":
    the value is derived from the task.
    """

    task: str
    kernel_scale: float
    horizon: int
    m: int
    seed: int = 0
    q: int = 2
    offset: float = 1.0
    init_mu: float = 0.0
    init_sigma: float = 1.0
    algorithm: str = Algorithm.ITERATIVE_REGRESSION.value
    learning_rate: float = 0.01
    ridge: float = 1e-3
    batch_size: t.Optional[int] = 300
    max_iterations: int = 100
    rel_tol: float = 1e-8
    window: int = 50
    readout: str = "linear"
    terminal: str = TerminalKind.SQUARED_ERROR.value
    running: str = "none"
    control_penalty: float = 0.0
    data_path: t.Optional[str] = None
    train_size: int = 1000
    test_size: t.Optional[int] = None
    standardize: t.Optional[bool] = None
    target_scale: float = 1.0
    label_column: t.Optional[str] = None
    feature_columns: t.Optional[tuple] = None
    positive_label: t.Optional[str] = None
    dim: int = 5
    separation: float = 3.0
    metrics_path: t.Optional[str] = None
    predictions_path: t.Optional[str] = None
    model_path: t.Optional[str] = None

    def __post_init__(self):
        for key, attr, kind in _SCHEMA:
            value = getattr(self, attr)
            if value is not None:
                object.__setattr__(self, attr, _coerce(key, value, kind))
        self._validate()

    def _validate(self):
        if self.task not in TASKS:
            raise ConfigurationError(
                f"task must be one of {TASKS}, got {self.task!r}"
            )
        checks = (
            ("kernel.scale", self.kernel_scale > 0),
            ("system.T", self.horizon >= 1),
            ("system.m", self.m >= 1),
            ("system.q", self.q in (1, 2)),
            ("init.sigma", self.init_sigma >= 0),
            ("optimizer.learning_rate", self.learning_rate >= 0),
            ("optimizer.lambda", self.ridge >= 0),
            ("optimizer.max_iterations", self.max_iterations >= 0),
            ("optimizer.rel_tol", self.rel_tol >= 0),
            ("optimizer.window", self.window >= 1),
            ("optimizer.readout", self.readout in ("linear", "control")),
            ("cost.running", self.running in ("none", "targets")),
            ("cost.control_penalty", self.control_penalty >= 0),
            ("data.train_size", self.train_size >= 1),
            ("data.target_scale", self.target_scale > 0),
            ("data.dim", self.dim >= 1),
        )
        for key, ok in checks:
            if not ok:
                raise ConfigurationError(
                    f"invalid value {self._get(key)!r} for {key}"
                )
        if self.batch_size is not None and self.batch_size < 1:
            raise ConfigurationError("optimizer.batch_size must be >= 1")
        if self.test_size is not None and self.test_size < 1:
            raise ConfigurationError("data.test_size must be >= 1")
        try:
            Algorithm(self.algorithm)
            terminal = TerminalKind(self.terminal)
        except ValueError as err:
            raise ConfigurationError(str(err)) from err
        cross_entropy = terminal is TerminalKind.CROSS_ENTROPY
        if cross_entropy and not self.is_classification:
            raise ConfigurationError(
                "cost.terminal = 'cross-entropy' needs a classification task"
            )
        if self.task in FILE_TASKS and self.data_path is None:
            raise ConfigurationError(f"task {self.task!r} needs data.path")
        outputs = (self.metrics_path, self.predictions_path, self.model_path)
        if any(p is None for p in outputs) and any(
            p is not None for p in outputs
        ):
            raise ConfigurationError(
                "set all of output.metrics_path, output.predictions_path "
                "and output.model_path, or none of them"
            )

    def _get(self, key):
        attr = {k: a for k, a, _ in _SCHEMA}[key]
        return getattr(self, attr)

    # derived settings

    @property
    def is_classification(self):
        """Whether the task has binary labels."""
        return self.task in CLASSIFICATION_TASKS

    @property
    def data_task(self):
        """The :class:`~rkhs_controls.data.Task` of the dataset."""
        if self.is_classification:
            return Task.BINARY_CLASSIFICATION
        return Task.REGRESSION

    @property
    def resolved_test_size(self):
        """Test-set size, 10000 for ``linear3`` and 1000 otherwise."""
        if self.test_size is not None:
            return self.test_size
        return 10000 if self.task == "linear3" else 1000

    @property
    def resolved_standardize(self):
        """Whether the features are standardised."""
        if self.standardize is not None:
            return self.standardize
        return self.task in STANDARDIZED_TASKS

    @property
    def resolved_label_column(self):
        """Label column of file-based datasets."""
        if self.label_column is not None:
            return self.label_column
        return "price" if self.task == "heston" else data.TARGET_COLUMN

    @property
    def writes_outputs(self):
        """Whether the output paths are set."""
        return self.metrics_path is not None

    def optimizer_config(self, seed):
        """The :class:`OptimizerConfig` of this experiment."""
        return OptimizerConfig(
            algorithm=Algorithm(self.algorithm),
            learning_rate=self.learning_rate,
            ridge=self.ridge,
            batch_size=self.batch_size,
            max_iterations=self.max_iterations,
            rel_tol=self.rel_tol,
            window=self.window,
            init_mean=self.init_mu,
            init_std=self.init_sigma,
            seed=seed,
        )

    def cost_model(self):
        """The :class:`CostModel` of this experiment."""
        running = None
        if self.running == "targets":
            running = costs.track_batch_targets
        return CostModel(
            terminal=TerminalKind(self.terminal),
            running_target=running,
            control_penalty=self.control_penalty,
        )

    # serialisation

    def to_dict(self):
        """Nested mapping, as read from a TOML file; unset values omitted."""
        out = {}
        for key, attr, kind in _SCHEMA:
            value = getattr(self, attr)
            if attr == "batch_size" and value is None:
                value = FULL_BATCH
            if value is None:
                continue
            if kind is tuple:
                value = list(value)
            section, _, name = key.rpartition(".")
            target = out.setdefault(section, {}) if section else out
            target[name] = value
        return out

    @classmethod
    def from_dict(cls, mapping):
        """Build a config from a nested mapping.

        Raises
        ------
        ConfigurationError
            On unknown sections or keys, missing required keys and invalid
            values.
        """
        known = {key: attr for key, attr, _ in _SCHEMA}
        flat = {}
        for name, value in mapping.items():
            if isinstance(value, dict):
                for sub, subvalue in value.items():
                    flat[f"{name}.{sub}"] = subvalue
            else:
                flat[name] = value
        unknown = sorted(set(flat) - set(known))
        if unknown:
            raise ConfigurationError(f"unknown config key {unknown[0]!r}")
        missing = [key for key in _REQUIRED if key not in flat]
        if missing:
            raise ConfigurationError(f"missing config key {missing[0]!r}")
        if flat.get("optimizer.batch_size") == FULL_BATCH:
            flat["optimizer.batch_size"] = None
        return cls(**{known[key]: value for key, value in flat.items()})


def load_config(path):
    """Read an :class:`ExperimentConfig` from a TOML file."""
    path = pathlib.Path(path)
    try:
        mapping = toml.load(path)
    except FileNotFoundError as err:
        raise ConfigurationError(f"config file {path} does not exist") from err
    except OSError as err:
        raise ConfigurationError(
            f"cannot read {path}: {err.strerror}"
        ) from err
    except toml.TomlDecodeError as err:
        raise ConfigurationError(f"{path}: {err}") from err
    return ExperimentConfig.from_dict(mapping)


# =============================================================================
# METRICS
# =============================================================================


@dc.dataclass(frozen=True)
class Scores:
    """Out-of-sample error metrics; ``None`` when not defined for a task."""

    rmse: t.Optional[float] = None
    mape: t.Optional[float] = None
    accuracy: t.Optional[float] = None
    f1: t.Optional[float] = None

    def to_dict(self):
        """The defined metrics."""
        return {k: v for k, v in dc.asdict(self).items() if v is not None}


def compute_metrics(predictions, targets, task, threshold=0.5):
    """Error metrics of predictions against targets.

    Parameters
    ----------
    predictions, targets : array-like of shape (n,)
    task : Task
    threshold : float, default: 0.5
        Predictions at or above it are classified as 1.

    Returns
    -------
    Scores
        ``rmse`` always; ``mape`` for regression (over targets with
        ``|y| > 1e-12``, when any); ``accuracy`` and ``f1`` for
        classification, with ``f1 = 0`` when precision and recall vanish.
    """
    predictions = np.asarray(predictions, dtype=float).ravel()
    targets = np.asarray(targets, dtype=float).ravel()
    if predictions.shape != targets.shape:
        raise InputError(
            f"{predictions.size} predictions for {targets.size} targets"
        )
    if targets.size == 0:
        raise InputError("no predictions to score")
    task = Task(task)
    rmse = float(np.sqrt(np.mean((predictions - targets) ** 2)))
    if task is Task.REGRESSION:
        mask = np.abs(targets) > MAPE_FLOOR
        mape = None
        if mask.any():
            mape = float(
                np.mean(
                    np.abs(predictions[mask] - targets[mask])
                    / np.abs(targets[mask])
                )
            )
        return Scores(rmse=rmse, mape=mape)

    labels = (predictions >= threshold).astype(float)
    accuracy = float(np.mean(labels == targets))
    true_pos = float(np.sum((labels == 1.0) & (targets == 1.0)))
    precision = true_pos / max(np.sum(labels == 1.0), 1)
    recall = true_pos / max(np.sum(targets == 1.0), 1)
    f1 = 0.0
    if precision + recall > 0:
        f1 = 2.0 * precision * recall / (precision + recall)
    return Scores(rmse=rmse, accuracy=accuracy, f1=float(f1))


@dc.dataclass(frozen=True)
class MetricsReport:
    """Result of an experiment.

    Parameters
    ----------
    scores : Scores
        Test metrics of the fitted model.
    naive : Scores
        Test metrics of the model at the initial control.
    naive_cost : float
        Terminal cost of the initial-control model on the test set.
    iterations : int
    wall_time_s : float
        Logged, not written to the metrics file.
    config : ExperimentConfig
    train_costs : tuple of (int, float)
    """

    scores: Scores
    naive: Scores
    naive_cost: float
    iterations: int
    wall_time_s: float
    config: ExperimentConfig
    train_costs: tuple = ()

    @property
    def rmse(self):
        return self.scores.rmse

    @property
    def mape(self):
        return self.scores.mape

    @property
    def accuracy(self):
        return self.scores.accuracy

    @property
    def f1(self):
        return self.scores.f1

    def to_dict(self):
        """Contents of the metrics file."""
        out = {
            "metrics": {
                **self.scores.to_dict(),
                "iterations": self.iterations,
            },
            "naive": {"cost": self.naive_cost, **self.naive.to_dict()},
        }
        if self.train_costs:
            out["history"] = {
                "iterations": [int(i) for i, _ in self.train_costs],
                "train_costs": [float(c) for _, c in self.train_costs],
            }
        out["config"] = self.config.to_dict()
        return out


# =============================================================================
# BASELINES
# =============================================================================


def _with_intercept(features):
    return np.hstack([np.ones((features.shape[0], 1)), features])


def _linear_fit_scores(phi_train, phi_test, train, test, ridge, threshold):
    coef = solve_ridge_subproblem(phi_train, -train.targets, ridge)
    return compute_metrics(phi_test @ coef, test.targets, test.task, threshold)


def kernel_ridge_baseline(train, test, support, ridge=0.0, threshold=0.5):
    """Ridge regression of the targets on the kernel features.

    The features of ``x`` are an intercept and ``k(xi_j, x)`` for the
    ``m`` support points. ``ridge = 0`` gives the minimum-norm least
    squares fit.

    Returns
    -------
    Scores
    """
    spec = support.kernel
    phi_train = _with_intercept(
        gram_matrix(train.inputs, support.points, spec)
    )
    phi_test = _with_intercept(gram_matrix(test.inputs, support.points, spec))
    return _linear_fit_scores(
        phi_train, phi_test, train, test, ridge, threshold
    )


def linear_ridge_baseline(train, test, ridge=0.0, threshold=0.5):
    """Ridge regression of the targets on the raw features."""
    return _linear_fit_scores(
        _with_intercept(train.inputs),
        _with_intercept(test.inputs),
        train,
        test,
        ridge,
        threshold,
    )


def lasso_baseline(train, test, alpha=1e-3, threshold=0.5):
    """L1-penalised least squares on the raw features plus intercept.

    ``alpha`` weighs ``|w|_1`` against ``(1/2n) |y - X w - b|^2``.
    """
    model = Lasso(alpha=alpha, max_iter=10_000, tol=1e-8)
    model.fit(train.inputs, train.targets)
    return compute_metrics(
        model.predict(test.inputs), test.targets, test.task, threshold
    )


def gpr_baseline(train, test, kernel, noise=1e-6, threshold=0.5):
    """Gaussian-process regression with the experiment's kernel.

    The prior has zero mean and the Gaussian covariance of ``kernel`` with
    its scale held fixed; ``noise`` is added to the diagonal of the
    training Gram matrix. The scores are those of the posterior mean
    ``k(x, X) (K + noise I)^{-1} y``.

    Parameters
    ----------
    train, test : Dataset
    kernel : KernelSpec
    noise : float, default: 1e-6
    threshold : float, default: 0.5

    Returns
    -------
    Scores
    """
    if not noise > 0:
        raise ConfigurationError(f"GPR noise must be > 0, got {noise}")
    model = GaussianProcessRegressor(
        kernel=RBF(length_scale=kernel.scale, length_scale_bounds="fixed"),
        alpha=noise,
        optimizer=None,
    )
    model.fit(train.inputs, train.targets)
    return compute_metrics(
        model.predict(test.inputs), test.targets, test.task, threshold
    )


def logit_baseline(train, test, ridge=1e-4):
    """Logistic regression on the raw features, thresholded at 1/2."""
    if train.task is not Task.BINARY_CLASSIFICATION:
        raise ConfigurationError("the logit baseline needs binary labels")
    phi = _with_intercept(train.inputs)
    coef = solve_logistic_subproblem(
        phi, np.zeros(train.size), train.targets, ridge
    )
    logits = _with_intercept(test.inputs) @ coef
    return compute_metrics(logits, test.targets, test.task, threshold=0.0)


# =============================================================================
# RUNNER
# =============================================================================


@dc.dataclass(frozen=True)
class Prepared:
    """Data and system of an experiment, ready to be fitted."""

    train: data.Dataset
    test: data.Dataset
    raw_test: data.Dataset
    system: ControlSystem
    seeds: dict


def _streams(seed):
    names = ("data", "split", "support", "operators", "optimizer")
    children = np.random.SeedSequence(seed).spawn(len(names))
    return {
        name: int(child.generate_state(1)[0])
        for name, child in zip(names, children)
    }


def load_dataset(config, seed):
    """The full dataset of an experiment, before the split."""
    n = config.train_size + config.resolved_test_size
    if config.task == "sine":
        return data.toy_sine(n, seed)
    if config.task == "linear3":
        return data.toy_linear3(n, seed)
    if config.task == "two-gaussians":
        return data.two_gaussians(n, config.dim, config.separation, seed)
    if config.task == "heston" and config.data_path is None:
        return heston.generate_heston_grid(count=n, seed=seed)
    columns = config.feature_columns
    return data.load_csv(
        config.data_path,
        config.resolved_label_column,
        None if columns is None else list(columns),
        task=config.data_task,
        positive_label=config.positive_label,
    )


def prepare(config):
    """Split the data and build the control system of an experiment."""
    seeds = _streams(config.seed)
    dataset = load_dataset(config, seeds["data"])
    train, raw_test = data.train_test_split(
        dataset, config.train_size, config.resolved_test_size, seeds["split"]
    )
    test = raw_test
    if config.resolved_standardize:
        train = train.standardized()
        test = raw_test.standardized(train.feature_stats)
    if not config.is_classification and config.target_scale != 1.0:
        train = train.scaled_targets(config.target_scale)
        test = test.scaled_targets(config.target_scale)

    kernel = KernelSpec(config.kernel_scale)
    support = data.sample_support(train, config.m, seeds["support"], kernel)
    bank = make_operator_bank(seeds["operators"], config.m, config.q)
    system = ControlSystem(bank, support, config.horizon, config.offset)
    return Prepared(train, test, raw_test, system, seeds)


def _predictions_text(raw_test, predictions):
    frame = pd.DataFrame(raw_test.inputs, columns=list(raw_test.feature_names))
    frame["y"] = raw_test.targets
    frame["prediction"] = predictions
    frame["error"] = predictions - raw_test.targets
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, float_format="%.17g")
    return buffer.getvalue()


def _write_artifacts(texts):
    written = []
    try:
        for path, text in texts:
            written.append(persistence.write_text_atomic(path, text))
    except BaseException:
        for path in written:
            if os.path.exists(path):
                os.remove(path)
        raise


def run_experiment(config):
    """Run an experiment end to end.

    Returns
    -------
    MetricsReport

    Raises
    ------
    FittingError
        When the optimizer fails; nothing is written.
    """
    start = time.perf_counter()
    prep = prepare(config)
    cost = config.cost_model()
    opt = config.optimizer_config(prep.seeds["optimizer"])
    logger.info(
        "task %s: n=%d, m=%d, T=%d, algorithm %s",
        config.task,
        prep.train.size,
        config.m,
        config.horizon,
        config.algorithm,
    )
    try:
        model = fit(opt, cost, prep.train, prep.system)
    except FittingError:
        logger.error("fitting failed for config %s", config.to_dict())
        raise

    base = model.base if isinstance(model, LinearizedModel) else model
    iterations = base.iterations
    if isinstance(model, LinearizedModel):
        iterations += 1
        if config.readout == "control":
            model = model.stepped()
    naive_model = FittedModel.from_control(base.initial_control, prep.system)

    scale = 1.0 if config.is_classification else config.target_scale
    threshold = costs.decision_threshold(cost.terminal)
    predictions = predict(model, prep.test.inputs) * scale
    naive_values = predict(naive_model, prep.test.inputs)
    test_batch = costs.make_batch(
        prep.system.support, prep.test.inputs, prep.test.targets
    )
    naive_cost = costs.terminal_cost(cost.terminal, naive_values, test_batch)

    report = MetricsReport(
        scores=compute_metrics(
            predictions, prep.raw_test.targets, config.data_task, threshold
        ),
        naive=compute_metrics(
            naive_values * scale,
            prep.raw_test.targets,
            config.data_task,
            threshold,
        ),
        naive_cost=naive_cost,
        iterations=iterations,
        wall_time_s=time.perf_counter() - start,
        config=config,
        train_costs=base.train_costs,
    )
    logger.info(
        "finished in %.2f s: %s (naive %s)",
        report.wall_time_s,
        report.scores.to_dict(),
        report.naive.to_dict(),
    )

    if config.writes_outputs:
        metadata = persistence.ModelMetadata(
            task=config.task,
            terminal=cost.terminal,
            target_scale=scale,
            feature_stats=prep.train.feature_stats,
            feature_names=prep.raw_test.feature_names,
            target_name=prep.raw_test.target_name,
            positive_label=config.positive_label,
            seeds=prep.seeds,
        )
        _write_artifacts(
            [
                (config.metrics_path, toml.dumps(report.to_dict())),
                (
                    config.predictions_path,
                    _predictions_text(prep.raw_test, predictions),
                ),
                (
                    config.model_path,
                    toml.dumps(persistence.model_to_dict(model, metadata)),
                ),
            ]
        )
    return report


def run_baseline(config, kind="kernel-ridge"):
    """Baseline scores on the data and support set of an experiment.

    Parameters
    ----------
    config : ExperimentConfig
    kind : {"kernel-ridge", "ridge", "lasso", "gpr", "logit"}
    """
    if kind not in BASELINES:
        raise ConfigurationError(f"unknown baseline {kind!r}")
    prep = prepare(config)
    threshold = costs.decision_threshold(TerminalKind.SQUARED_ERROR)
    if kind == "kernel-ridge":
        scores = kernel_ridge_baseline(
            prep.train, prep.test, prep.system.support, threshold=threshold
        )
    elif kind == "ridge":
        scores = linear_ridge_baseline(
            prep.train, prep.test, threshold=threshold
        )
    elif kind == "lasso":
        scores = lasso_baseline(prep.train, prep.test, threshold=threshold)
    elif kind == "gpr":
        scores = gpr_baseline(
            prep.train,
            prep.test,
            prep.system.support.kernel,
            threshold=threshold,
        )
    else:
        scores = logit_baseline(prep.train, prep.test)
    scale = 1.0 if config.is_classification else config.target_scale
    if scores.rmse is not None and scale != 1.0:
        scores = dc.replace(scores, rmse=scores.rmse * scale)
    return scores


def evaluate_model(model_path, data_path):
    """Scores of a saved model on a CSV file.

    The file's features are standardised with the statistics stored in the
    model, and the predictions are brought back to the target scale.
    """
    model, meta = persistence.load_model(model_path)
    task = Task.BINARY_CLASSIFICATION
    if meta.task not in CLASSIFICATION_TASKS:
        task = Task.REGRESSION
    dataset = data.load_csv(
        data_path,
        meta.target_name,
        list(meta.feature_names) or None,
        task=task,
        positive_label=meta.positive_label,
    )
    inputs = dataset.inputs
    if meta.feature_stats is not None:
        inputs = meta.feature_stats.apply(inputs)
    predictions = predict(model, inputs) * meta.target_scale
    return compute_metrics(
        predictions,
        dataset.targets,
        task,
        costs.decision_threshold(meta.terminal),
    )
