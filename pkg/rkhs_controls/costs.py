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

"""Terminal and running costs and their gradients at the support points.

All the costs are empirical averages over a :class:`Batch`. The gradient
of a cost ``F(h)`` with respect to ``h`` is returned pulled down to the
support, i.e. as the vector ``J_M DF(h)`` that seeds the adjoint system.
"""

# =============================================================================
# IMPORTS
# =============================================================================

import dataclasses as dc
import enum
import typing as t

import numpy as np

from scipy.special import expit

from .errors import InputError
from .rkhs import as_points

# =============================================================================
# TYPES
# =============================================================================


class TerminalKind(enum.Enum):
    """Available terminal costs."""

    SQUARED_ERROR = "squared-error"
    CROSS_ENTROPY = "cross-entropy"


@dc.dataclass(frozen=True)
class Batch:
    """A sample of training points with their kernel sections.

    Parameters
    ----------
    inputs : ndarray of shape (n, d)
    targets : ndarray of shape (n,)
    cross_gram : ndarray of shape (m, n)
        ``cross_gram[j, i] = k(xi_j, x_i)``.
    """

    inputs: np.ndarray
    targets: np.ndarray
    cross_gram: np.ndarray

    def __post_init__(self):
        n = self.inputs.shape[0]
        if n < 1 or self.targets.shape != (n,):
            raise InputError(
                f"batch needs n >= 1 inputs and as many targets, got "
                f"{n} inputs and {self.targets.shape[0]} targets"
            )
        if self.cross_gram.shape[1] != n:
            raise InputError("cross Gram matrix does not match the inputs")

    @property
    def size(self):
        """Number ``n`` of points in the batch."""
        return self.inputs.shape[0]

    def subset(self, index):
        """Batch restricted to the rows in ``index`` (repeats allowed)."""
        index = np.asarray(index, dtype=int)
        return Batch(
            inputs=self.inputs[index],
            targets=self.targets[index],
            cross_gram=self.cross_gram[:, index],
        )


@dc.dataclass(frozen=True)
class CostModel:
    """Terminal cost plus optional running costs.

    Parameters
    ----------
    terminal : TerminalKind
    running_target : callable, optional
        ``running_target(t, batch)`` returns the tracked values ``f_t`` at
        the batch inputs; enables the squared tracking term at every step
        ``t = 0, ..., T - 1``.
    control_penalty : float, default: 0.0
        Weight ``lambda_u`` of the running control penalty
        ``lambda_u |u_t|^2``.
    """

    terminal: TerminalKind = TerminalKind.SQUARED_ERROR
    running_target: t.Optional[t.Callable] = None
    control_penalty: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "terminal", TerminalKind(self.terminal))
        if not self.control_penalty >= 0:
            raise InputError(
                f"control penalty must be >= 0, got {self.control_penalty}"
            )

    @property
    def tracks(self):
        """Whether the running tracking term is active."""
        return self.running_target is not None

    @property
    def has_running(self):
        """Whether any running cost is active."""
        return self.tracks or self.control_penalty > 0


# =============================================================================
# HELPERS
# =============================================================================


def make_batch(support, inputs, targets):
    """Build a :class:`Batch` against a support set."""
    inputs = as_points(inputs, "inputs")
    targets = np.asarray(targets, dtype=float).ravel()
    return Batch(
        inputs=inputs, targets=targets, cross_gram=support.sections(inputs)
    )


def track_batch_targets(t, batch):
    """Running target that tracks the batch targets at every step."""
    return batch.targets


def decision_threshold(kind):
    """Threshold on ``h`` separating the two classes.

    ``1/2`` for the squared error (least squares on 0/1 labels) and ``0``
    for the cross entropy (``sigmoid(h) >= 1/2``).
    """
    kind = TerminalKind(kind)
    return 0.5 if kind is TerminalKind.SQUARED_ERROR else 0.0


def _check_values(h_values, batch):
    h_values = np.asarray(h_values, dtype=float)
    if h_values.shape != (batch.size,):
        raise InputError(
            f"expected {batch.size} values of h, got shape {h_values.shape}"
        )
    return h_values


def _check_binary(targets):
    if not np.all((targets == 0.0) | (targets == 1.0)):
        raise InputError("the cross entropy needs targets in {0, 1}")


def softplus(h):
    """Overflow-free ``log(1 + exp(h))``."""
    h = np.asarray(h, dtype=float)
    return np.log1p(np.exp(-np.abs(h))) + np.maximum(h, 0.0)


# =============================================================================
# OPERATIONS
# =============================================================================


def terminal_cost(kind, h_values, batch):
    """Empirical terminal cost.

    Parameters
    ----------
    kind : TerminalKind
    h_values : array-like of shape (n,)
        ``h_T`` at the batch inputs.
    batch : Batch

    Returns
    -------
    float
    """
    kind = TerminalKind(kind)
    h_values = _check_values(h_values, batch)
    y = batch.targets
    if kind is TerminalKind.SQUARED_ERROR:
        return float(np.mean((h_values - y) ** 2))
    _check_binary(y)
    return float(np.mean(softplus(h_values) - y * h_values))


def terminal_gradient_at_support(kind, h_values, batch):
    """Gradient of the terminal cost pulled down to the support.

    Returns
    -------
    ndarray of shape (m,)
        ``(2/n) K_xi_x (h - y)`` for the squared error,
        ``(1/n) K_xi_x (sigmoid(h) - y)`` for the cross entropy.
    """
    kind = TerminalKind(kind)
    h_values = _check_values(h_values, batch)
    y = batch.targets
    if kind is TerminalKind.SQUARED_ERROR:
        return 2.0 * batch.cross_gram @ (h_values - y) / batch.size
    _check_binary(y)
    return batch.cross_gram @ (expit(h_values) - y) / batch.size


def running_cost_and_grads(model, t, h_values, u_t, batch):
    """Running cost ``L_t`` with its two partial gradients.

    Parameters
    ----------
    model : CostModel
    t : int
        Time index.
    h_values : array-like of shape (n,)
        ``h_t`` at the batch inputs.
    u_t : array-like of shape (q,)
        Control at time ``t``.
    batch : Batch

    Returns
    -------
    value : float
        ``(1/n) sum (h - f_t)^2 + lambda_u |u_t|^2``.
    source : ndarray of shape (m,)
        Pulled-down state gradient ``(2/n) K_xi_x (h - f_t)``, the source
        of the adjoint recursion at time ``t``.
    control_grad : ndarray of shape (q,)
        ``2 lambda_u u_t``.
    """
    u_t = np.asarray(u_t, dtype=float).ravel()
    m = batch.cross_gram.shape[0]
    penalty = model.control_penalty
    value = penalty * float(u_t @ u_t)
    control_grad = 2.0 * penalty * u_t
    source = np.zeros(m)
    if model.tracks:
        h_values = _check_values(h_values, batch)
        target = np.asarray(model.running_target(t, batch), dtype=float)
        if target.shape != (batch.size,):
            raise InputError(
                f"running target at t={t} must have {batch.size} values"
            )
        residual = h_values - target
        value += float(np.mean(residual**2))
        source = 2.0 * batch.cross_gram @ residual / batch.size
    return value, source, control_grad
