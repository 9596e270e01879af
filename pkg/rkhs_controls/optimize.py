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

"""Control-fitting algorithms.

Three algorithms learn the control matrix ``u``:

- gradient descent on the adjoint gradient of the cost;
- iterative regression, which linearises ``h`` around the current control
  and solves a ridge (or logistic) problem for the update ``beta``;
- enhanced iterative regression, which adds a final unregularised step and
  returns the linearised model ``h_T(u) + D_u h_T(u) beta``.
"""

# =============================================================================
# IMPORTS
# =============================================================================

import dataclasses as dc
import enum
import logging
import typing as t

import numpy as np

from scipy import linalg
from scipy.special import expit

from . import costs, propagation
from .costs import TerminalKind
from .errors import (
    ConfigurationError,
    DivergenceError,
    FittingError,
    InputError,
)
from .propagation import ControlMatrix
from .rkhs import split_query

# =============================================================================
# CONSTANTS
# =============================================================================

logger = logging.getLogger(__name__)

#: Relative singular-value cutoff of the minimum-norm least squares.
RCOND = 1e-10

# =============================================================================
# CONFIGURATION
# =============================================================================


class Algorithm(enum.Enum):
    """The available fitting algorithms."""

    GRADIENT_DESCENT = "gradient-descent"
    ITERATIVE_REGRESSION = "iterative-regression"
    ENHANCED_ITERATIVE_REGRESSION = "enhanced-iterative-regression"


@dc.dataclass(frozen=True)
class OptimizerConfig:
    """Hyper-parameters of a fitting run.

    Parameters
    ----------
    algorithm : Algorithm
    learning_rate : float, default: 0.01
        Step ``alpha`` of gradient descent.
    ridge : float, default: 1e-3
        Regulariser ``lambda`` of the regression subproblems.
    batch_size : int or None, default: 300
        Minibatch size; ``None`` iterates on the full training set.
    max_iterations : int, default: 100
    rel_tol : float, default: 1e-8
        Relative change of the windowed training cost that stops the run.
    window : int, default: 50
        Iterations between two evaluations of the full training cost.
    init_mean, init_std : float, default: 0.0, 1.0
        Parameters of the normal draw of the initial control.
    seed : int, default: 0
    """

    algorithm: Algorithm = Algorithm.ITERATIVE_REGRESSION
    learning_rate: float = 0.01
    ridge: float = 1e-3
    batch_size: t.Optional[int] = 300
    max_iterations: int = 100
    rel_tol: float = 1e-8
    window: int = 50
    init_mean: float = 0.0
    init_std: float = 1.0
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "algorithm", Algorithm(self.algorithm))
        if self.learning_rate < 0:
            raise ConfigurationError("learning_rate must be >= 0")
        if self.ridge < 0:
            raise ConfigurationError("ridge must be >= 0")
        if self.rel_tol < 0:
            raise ConfigurationError("rel_tol must be >= 0")
        if self.batch_size is not None and self.batch_size < 1:
            raise ConfigurationError("batch_size must be a positive integer")
        if self.max_iterations < 0:
            raise ConfigurationError("max_iterations must be >= 0")
        if self.window < 1:
            raise ConfigurationError("window must be >= 1")
        if self.init_std < 0:
            raise ConfigurationError("init_std must be >= 0")

    def streams(self):
        """Independent seeds for the initial control and the minibatches."""
        init, batches = np.random.SeedSequence(self.seed).spawn(2)
        return init, batches


@dc.dataclass(frozen=True)
class ControlSystem:
    """The fixed parts of the model.

    Parameters
    ----------
    bank : OperatorBank
    support : SupportSet
    horizon : int
        Number ``T`` of time steps.
    offset : float, default: 1.0
        The constant initial function ``h_0``.
    """

    bank: object
    support: object
    horizon: int
    offset: float = 1.0

    def __post_init__(self):
        if int(self.horizon) < 1:
            raise ConfigurationError(
                f"the horizon must be >= 1, got {self.horizon}"
            )
        object.__setattr__(self, "horizon", int(self.horizon))

    @property
    def kernel(self):
        """Kernel of the support set."""
        return self.support.kernel


# =============================================================================
# MODELS
# =============================================================================


@dc.dataclass(frozen=True)
class FittedModel:
    """A control system with its fitted controls.

    Parameters
    ----------
    control : ControlMatrix
    bank : OperatorBank
    support : SupportSet
    kernel : KernelSpec
    offset : float
    trajectory : Trajectory
        Forward solution at ``control``.
    history : tuple of float
        Cost on each iteration's minibatch.
    train_costs : tuple of (int, float)
        Full training cost at iteration 0 and after every window.
    initial_control : ControlMatrix or None
        The random draw the run started from.
    """

    control: ControlMatrix
    bank: object
    support: object
    kernel: object
    offset: float
    trajectory: object
    history: tuple = ()
    train_costs: tuple = ()
    initial_control: t.Optional[ControlMatrix] = None

    @property
    def iterations(self):
        """Number of iterations performed."""
        return len(self.history)

    @property
    def system(self):
        """The :class:`ControlSystem` of the model."""
        return ControlSystem(
            self.bank, self.support, self.control.horizon, self.offset
        )

    @classmethod
    def from_control(cls, control, system, **kwargs):
        """Solve the forward system at ``control`` and wrap the result."""
        control = ControlMatrix.coerce(control)
        traj = propagation.forward_solve(
            control, system.bank, system.support, system.offset
        )
        return cls(
            control=control,
            bank=system.bank,
            support=system.support,
            kernel=system.kernel,
            offset=system.offset,
            trajectory=traj,
            **kwargs,
        )


@dc.dataclass(frozen=True)
class LinearizedModel:
    """Linearisation ``h_T(u) + D_u h_T(u) beta`` of a fitted model.

    Parameters
    ----------
    base : FittedModel
    beta : ndarray of shape (q, T)
    adjoint : AdjointBundle
        Transitions at ``base.control``.
    final_batch_index : ndarray
        Training rows of the minibatch the final step was solved on.
    """

    base: FittedModel
    beta: np.ndarray
    adjoint: object
    final_batch_index: np.ndarray = dc.field(
        default_factory=lambda: np.zeros(0, dtype=int)
    )

    def __post_init__(self):
        beta = np.array(self.beta, dtype=float).reshape(
            self.base.control.entries.shape
        )
        beta.flags.writeable = False
        object.__setattr__(self, "beta", beta)

    def stepped(self):
        """The control system evaluated at ``u + beta``."""
        return FittedModel.from_control(
            self.base.control.shifted(self.beta),
            self.base.system,
            history=self.base.history,
            train_costs=self.base.train_costs,
            initial_control=self.base.initial_control,
        )


# =============================================================================
# OBJECTIVE
# =============================================================================


def _objective_value(traj, values, cost, batch):
    total = costs.terminal_cost(cost.terminal, values[-1], batch)
    sources, control_grad = None, None
    if cost.has_running:
        horizon, m = traj.horizon, traj.support.size
        sources = np.zeros((horizon, m))
        control_grad = np.zeros((traj.control.q, horizon))
        for step in range(horizon):
            value, src, cgrad = costs.running_cost_and_grads(
                cost, step, values[step], traj.control.column(step), batch
            )
            total += value
            sources[step] = src
            control_grad[:, step] = cgrad
    return total, sources, control_grad


def evaluate_objective(control, system, cost, batch, with_gradient=True):
    """Cost of a control on a batch, optionally with its gradient.

    Parameters
    ----------
    control : ControlMatrix or array-like of shape (q, T)
    system : ControlSystem
    cost : CostModel
    batch : Batch
    with_gradient : bool, default: True

    Returns
    -------
    value : float
        ``F(h_T) + sum_t L_t(h_t, u_t)``.
    gradient : ndarray of shape (q, T) or None
    trajectory : Trajectory
    """
    traj = propagation.forward_solve(
        control, system.bank, system.support, system.offset
    )
    values = traj.values(batch.cross_gram)
    total, sources, control_grad = _objective_value(
        traj, values, cost, batch
    )
    if not with_gradient:
        return total, None, traj
    terminal = costs.terminal_gradient_at_support(
        cost.terminal, values[-1], batch
    )
    costate = propagation.backward_costates(traj, terminal, sources)
    grad = propagation.cost_gradient(traj, costate, system.bank, control_grad)
    return total, grad, traj


# =============================================================================
# SUBPROBLEMS
# =============================================================================


def _check_finite(name, arr):
    if not np.all(np.isfinite(arr)):
        raise InputError(f"{name} contains non-finite values")


def solve_ridge_subproblem(jac, residual, ridge, *, n=None):
    """Minimise ``(1/n) |residual + J beta|^2 + ridge |beta|^2``.

    Parameters
    ----------
    jac : array-like of shape (rows, p)
    residual : array-like of shape (rows,)
    ridge : float
        Non-negative regulariser.
    n : int, optional
        Normalisation of the squared residual; the number of rows when
        omitted.

    Returns
    -------
    ndarray of shape (p,)
        Solved through a Cholesky factorisation of
        ``J^T J / n + ridge I``; with ``ridge = 0`` the minimum-norm
        least-squares solution.
    """
    jac = np.asarray(jac, dtype=float)
    residual = np.asarray(residual, dtype=float).ravel()
    if jac.ndim != 2 or jac.shape[0] != residual.size:
        raise InputError(
            f"Jacobian {jac.shape} does not match residual {residual.shape}"
        )
    _check_finite("Jacobian", jac)
    _check_finite("residual", residual)
    if ridge < 0:
        raise InputError(f"ridge must be >= 0, got {ridge}")
    n = jac.shape[0] if n is None else n

    if ridge > 0:
        normal = jac.T @ jac / n + ridge * np.eye(jac.shape[1])
        factor = linalg.cho_factor(normal)
        return -linalg.cho_solve(factor, jac.T @ residual / n)
    beta, *_ = linalg.lstsq(jac, -residual, cond=RCOND)
    return beta


def _logistic_objective(beta, jac, offsets, labels, ridge):
    z = offsets + jac @ beta
    return float(np.mean(costs.softplus(z) - labels * z)) + ridge * float(
        beta @ beta
    )


def solve_logistic_subproblem(
    jac, offsets, labels, ridge, *, tol=1e-8, max_steps=50
):
    """Minimise the regularised cross entropy of a linearised model.

    The objective is
    ``(1/n) sum [log(1 + exp(a_i + J_i beta)) - y_i (a_i + J_i beta)]
    + ridge |beta|^2``, minimised by damped Newton steps with Armijo
    backtracking.

    Parameters
    ----------
    jac : array-like of shape (n, p)
    offsets : array-like of shape (n,)
        The values ``a_i`` of ``h`` before the update.
    labels : array-like of shape (n,)
        Binary labels.
    ridge : float
    tol : float, default: 1e-8
        Stop when the sup norm of the gradient falls below ``tol``.
    max_steps : int, default: 50

    Returns
    -------
    ndarray of shape (p,)
    """
    jac = np.asarray(jac, dtype=float)
    offsets = np.asarray(offsets, dtype=float).ravel()
    labels = np.asarray(labels, dtype=float).ravel()
    if jac.ndim != 2 or not (jac.shape[0] == offsets.size == labels.size):
        raise InputError("Jacobian, offsets and labels disagree in length")
    for name, arr in (("Jacobian", jac), ("offsets", offsets)):
        _check_finite(name, arr)
    if not np.all((labels == 0.0) | (labels == 1.0)):
        raise InputError("labels must be binary")
    if ridge < 0:
        raise InputError(f"ridge must be >= 0, got {ridge}")

    n, p = jac.shape
    beta = np.zeros(p)
    steps = 0
    for steps in range(1, max_steps + 1):
        prob = expit(offsets + jac @ beta)
        grad = jac.T @ (prob - labels) / n + 2.0 * ridge * beta
        if np.max(np.abs(grad), initial=0.0) < tol:
            break
        weight = prob * (1.0 - prob)
        hess = (jac.T * weight) @ jac / n + 2.0 * ridge * np.eye(p)
        direction, *_ = linalg.lstsq(hess, -grad, cond=1e-12)

        current = _logistic_objective(beta, jac, offsets, labels, ridge)
        slope = float(grad @ direction)
        length = 1.0
        while length > 1e-10:
            candidate = beta + length * direction
            value = _logistic_objective(
                candidate, jac, offsets, labels, ridge
            )
            if value <= current + 1e-4 * length * slope:
                break
            length *= 0.5
        beta = candidate
    logger.debug("logistic subproblem stopped after %d Newton steps", steps)
    return beta


# =============================================================================
# FITTING
# =============================================================================


class MinibatchSampler:
    """Uniform sampling with replacement from the training batch.

    Parameters
    ----------
    full : Batch
        The whole training set.
    batch_size : int or None
        ``None`` returns the full batch on every draw.
    seed : numpy.random.SeedSequence or int
    """

    def __init__(self, full, batch_size, seed):
        self.full = full
        self.batch_size = batch_size
        self.rng = np.random.default_rng(seed)

    def draw(self):
        """Return ``(index, batch)`` for the next iteration."""
        if self.batch_size is None:
            return np.arange(self.full.size), self.full
        index = self.rng.integers(0, self.full.size, size=self.batch_size)
        return index, self.full.subset(index)


def initial_control(config, q, horizon):
    """Draw ``u^(0)`` with i.i.d. ``N(init_mean, init_std^2)`` entries."""
    init_seed, _ = config.streams()
    rng = np.random.default_rng(init_seed)
    draw = rng.normal(config.init_mean, config.init_std, size=(q, horizon))
    return ControlMatrix(draw)


def _check_algorithm(config, expected):
    if config.algorithm is not expected:
        raise ConfigurationError(
            f"expected algorithm {expected.value!r}, "
            f"got {config.algorithm.value!r}"
        )


class _Progress:
    """Windowed training cost and stopping rule."""

    def __init__(self, config, cost, full, system, control):
        self.config = config
        self.cost = cost
        self.full = full
        self.system = system
        self.history = []
        self.train_costs = [(0, self.train_cost(control, 0))]

    def train_cost(self, control, iteration):
        try:
            value, _, _ = evaluate_objective(
                control, self.system, self.cost, self.full, False
            )
        except DivergenceError as err:
            raise FittingError(str(err), iteration) from err
        return value

    def finish(self, control, start):
        """Wrap the final control into a :class:`FittedModel`."""
        try:
            return FittedModel.from_control(
                control,
                self.system,
                history=tuple(self.history),
                train_costs=tuple(self.train_costs),
                initial_control=start,
            )
        except DivergenceError as err:
            raise FittingError(str(err), len(self.history)) from err

    def record(self, iteration, value, control):
        """Store the minibatch cost; return True when the run must stop."""
        if not np.isfinite(value):
            raise FittingError("non-finite cost", iteration)
        self.history.append(float(value))
        done = iteration + 1
        if done % self.config.window:
            return False
        current = self.train_cost(control, done)
        previous = self.train_costs[-1][1]
        self.train_costs.append((done, current))
        change = abs(previous - current) / max(abs(previous), 1e-300)
        logger.debug(
            "iteration %d: minibatch cost %.6g, train cost %.6g",
            done,
            value,
            current,
        )
        if change < self.config.rel_tol:
            logger.info(
                "stopping at iteration %d: relative change %.3g < %.3g",
                done,
                change,
                self.config.rel_tol,
            )
            return True
        return False


def fit_sgd(config, cost, train, system):
    """Fit the controls by (stochastic) gradient descent.

    Parameters
    ----------
    config : OptimizerConfig
        ``algorithm`` must be gradient descent.
    cost : CostModel
    train : Dataset
        Anything with ``inputs`` and ``targets`` arrays.
    system : ControlSystem

    Returns
    -------
    FittedModel
    """
    _check_algorithm(config, Algorithm.GRADIENT_DESCENT)
    full = costs.make_batch(system.support, train.inputs, train.targets)
    control = initial_control(config, system.bank.q, system.horizon)
    start = control
    _, batch_seed = config.streams()
    sampler = MinibatchSampler(full, config.batch_size, batch_seed)
    progress = _Progress(config, cost, full, system, control)

    logger.info(
        "gradient descent: %d iterations, alpha=%g",
        config.max_iterations,
        config.learning_rate,
    )
    for iteration in range(config.max_iterations):
        _, batch = sampler.draw()
        try:
            value, grad, _ = evaluate_objective(control, system, cost, batch)
        except DivergenceError as err:
            raise FittingError(str(err), iteration) from err
        if not np.all(np.isfinite(grad)):
            raise FittingError("non-finite gradient", iteration)
        control = ControlMatrix(control.entries - config.learning_rate * grad)
        if progress.record(iteration, value, control):
            break
    return progress.finish(control, start)


def _regression_step(control, system, cost, batch, ridge, iteration):
    """Linearise around ``control`` and solve for the update ``beta``."""
    try:
        traj = propagation.forward_solve(
            control, system.bank, system.support, system.offset
        )
    except DivergenceError as err:
        raise FittingError(str(err), iteration) from err
    bundle = propagation.adjoint_transitions(
        control, system.bank, system.support
    )
    values = traj.values(batch.cross_gram)
    value, _, _ = _objective_value(traj, values, cost, batch)
    horizon, n = traj.horizon, batch.size

    def jacobian(step):
        return propagation.control_jacobian(
            traj, bundle, system.bank, None, step, sections=batch.cross_gram
        )

    if cost.terminal is TerminalKind.CROSS_ENTROPY:
        beta = solve_logistic_subproblem(
            jacobian(horizon), values[-1], batch.targets, ridge
        )
    else:
        blocks = [jacobian(horizon)]
        residuals = [values[-1] - batch.targets]
        if cost.tracks:
            for step in range(1, horizon):
                blocks.append(jacobian(step))
                residuals.append(
                    values[step] - cost.running_target(step, batch)
                )
        if cost.control_penalty > 0:
            weight = np.sqrt(n * cost.control_penalty)
            blocks.append(weight * np.eye(control.entries.size))
            residuals.append(weight * control.flat())
        beta = solve_ridge_subproblem(
            np.vstack(blocks), np.concatenate(residuals), ridge, n=n
        )
    if not np.all(np.isfinite(beta)):
        raise FittingError("non-finite update", iteration)
    return value, beta, bundle


def _check_regression_cost(cost):
    if cost.terminal is TerminalKind.CROSS_ENTROPY and cost.has_running:
        raise ConfigurationError(
            "the regression algorithms support running costs only with "
            "the squared-error terminal cost"
        )


def _iterate_regression(config, cost, train, system):
    _check_regression_cost(cost)
    full = costs.make_batch(system.support, train.inputs, train.targets)
    control = initial_control(config, system.bank.q, system.horizon)
    start = control
    _, batch_seed = config.streams()
    sampler = MinibatchSampler(full, config.batch_size, batch_seed)
    progress = _Progress(config, cost, full, system, control)

    logger.info(
        "iterative regression: %d iterations, lambda=%g",
        config.max_iterations,
        config.ridge,
    )
    for iteration in range(config.max_iterations):
        _, batch = sampler.draw()
        value, beta, _ = _regression_step(
            control, system, cost, batch, config.ridge, iteration
        )
        control = control.shifted(beta)
        if progress.record(iteration, value, control):
            break
    return progress.finish(control, start), sampler


def fit_iterative_regression(config, cost, train, system):
    """Fit the controls by iterated regularised linearisation.

    Returns
    -------
    FittedModel
    """
    _check_algorithm(config, Algorithm.ITERATIVE_REGRESSION)
    model, _ = _iterate_regression(config, cost, train, system)
    return model


def fit_enhanced(config, cost, train, system):
    """Iterative regression followed by one unregularised step.

    Returns
    -------
    LinearizedModel
        Carries the final ``beta``; its prediction is the linearisation
        around the iterated control, not a new control.
    """
    _check_algorithm(config, Algorithm.ENHANCED_ITERATIVE_REGRESSION)
    base, sampler = _iterate_regression(config, cost, train, system)
    index, batch = sampler.draw()
    _, beta, bundle = _regression_step(
        base.control, system, cost, batch, 0.0, base.iterations
    )
    logger.info("final unregularised step, |beta|_inf=%.3g", abs(beta).max())
    return LinearizedModel(
        base=base, beta=beta, adjoint=bundle, final_batch_index=index
    )


_FITTERS = {
    Algorithm.GRADIENT_DESCENT: fit_sgd,
    Algorithm.ITERATIVE_REGRESSION: fit_iterative_regression,
    Algorithm.ENHANCED_ITERATIVE_REGRESSION: fit_enhanced,
}


def fit(config, cost, train, system):
    """Dispatch to the fitter of ``config.algorithm``."""
    return _FITTERS[config.algorithm](config, cost, train, system)


# =============================================================================
# PREDICTION
# =============================================================================


def predict(model, x):
    """Evaluate a fitted or linearised model.

    Parameters
    ----------
    model : FittedModel or LinearizedModel
    x : array-like of shape (d,) or (n, d)

    Returns
    -------
    float or ndarray of shape (n,)
    """
    base = model.base if isinstance(model, LinearizedModel) else model
    points, single = split_query(x, base.support.dim)
    sections = base.support.sections(points)
    values = base.trajectory.terminal_values(sections)
    if isinstance(model, LinearizedModel):
        jac = propagation.control_jacobian(
            base.trajectory,
            model.adjoint,
            base.bank,
            None,
            base.trajectory.horizon,
            sections=sections,
        )
        values = values + jac @ model.beta.ravel()
    return float(values[0]) if single else values
