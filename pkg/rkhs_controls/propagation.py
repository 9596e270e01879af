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

"""Forward and adjoint propagation of the pulled-down control system.

The state ``g_t`` lives in ``R^m`` (the values of ``h_t`` at the support
points) and follows::

    g_{t+1} = g_t + (1/m) K B[u_t] g_t,        g_0 = offset * 1

The costate runs backward with the transition matrices
``M_s = I + (1/m) K B*[u_s]``::

    g*_s = M_s g*_{s+1} + l_s,                 g*_T = terminal

and the gradient of the cost in ``u_{i,t}`` is
``(1/m) g*_{t+1} @ B_i g_t`` plus the running-cost control term.
"""

# =============================================================================
# IMPORTS
# =============================================================================

import dataclasses as dc
import logging

import numpy as np

from . import operators
from .errors import DivergenceError, InputError
from .rkhs import RkhsFunction

# =============================================================================
# CONSTANTS
# =============================================================================

logger = logging.getLogger(__name__)

#: States with a larger sup norm abort the forward solve.
DIVERGENCE_BOUND = 1e12

# =============================================================================
# TYPES
# =============================================================================


@dc.dataclass(frozen=True)
class ControlMatrix:
    """The ``q x T`` control grid; column ``t`` is the control ``u_t``."""

    entries: np.ndarray

    def __post_init__(self):
        entries = np.array(self.entries, dtype=float)
        if entries.ndim != 2 or entries.shape[1] < 1:
            raise InputError(
                f"control must have shape (q, T) with T >= 1, "
                f"got {entries.shape}"
            )
        if not np.all(np.isfinite(entries)):
            raise InputError("control contains non-finite entries")
        entries.flags.writeable = False
        object.__setattr__(self, "entries", entries)

    @classmethod
    def coerce(cls, control):
        """Return ``control`` as a :class:`ControlMatrix`."""
        return control if isinstance(control, cls) else cls(control)

    @classmethod
    def zeros(cls, q, horizon):
        """The all-zero control."""
        return cls(np.zeros((q, horizon)))

    @property
    def q(self):
        """Number of control operators."""
        return self.entries.shape[0]

    @property
    def horizon(self):
        """Number ``T`` of time steps."""
        return self.entries.shape[1]

    def column(self, t):
        """Control ``u_t`` at time ``t``."""
        return self.entries[:, t]

    def flat(self):
        """Row-major flattening; entry ``(i, s)`` lands at ``i * T + s``."""
        return self.entries.ravel()

    def shifted(self, step):
        """New control ``u + step`` (``step`` flat or ``q x T``)."""
        step = np.asarray(step, dtype=float).reshape(self.entries.shape)
        return ControlMatrix(self.entries + step)


@dc.dataclass(frozen=True)
class Trajectory:
    """Solution of the forward system.

    Parameters
    ----------
    states : ndarray of shape (T + 1, m)
        ``states[t]`` is ``g_t``.
    driven : ndarray of shape (T, m)
        ``driven[t]`` is ``B[u_t] g_t``.
    control : ControlMatrix
    bank : OperatorBank
    support : SupportSet
    offset : float
        The constant initial function ``h_0``.
    """

    states: np.ndarray
    driven: np.ndarray
    control: ControlMatrix
    bank: operators.OperatorBank
    support: object
    offset: float

    @property
    def horizon(self):
        """Number ``T`` of time steps."""
        return self.control.horizon

    def weights(self, t):
        """Expansion weights of ``h_t``: ``sum_{s < t} driven[s]``."""
        _check_time(t, self.horizon)
        if t == 0:
            return np.zeros(self.support.size)
        return self.driven[:t].sum(axis=0)

    def values(self, sections):
        """Values of every ``h_t`` at precomputed kernel sections.

        Parameters
        ----------
        sections : ndarray of shape (m, n)
            Kernel sections of ``n`` query points.

        Returns
        -------
        ndarray of shape (T + 1, n)
            Row ``t`` holds ``h_t`` at the query points.
        """
        m = self.support.size
        cumulative = np.vstack(
            [np.zeros((1, m)), np.cumsum(self.driven, axis=0)]
        )
        return self.offset + cumulative @ sections / m

    def terminal_values(self, sections):
        """Values of ``h_T`` at precomputed kernel sections."""
        return self.offset + self.weights(self.horizon) @ sections / (
            self.support.size
        )


@dc.dataclass(frozen=True)
class AdjointBundle:
    """Backward transition matrices and their cached products.

    Parameters
    ----------
    transitions : ndarray of shape (T, m, m)
        ``transitions[s] = I + (1/m) K B*[u_s]``.
    terminal_products : ndarray of shape (T + 1, m, m) or None
        ``terminal_products[s] = M_s M_{s+1} ... M_{T-1}``, identity at
        ``s = T``; None when the products were not requested.
    """

    transitions: np.ndarray
    terminal_products: np.ndarray

    @property
    def horizon(self):
        """Number ``T`` of time steps."""
        return self.transitions.shape[0]


@dc.dataclass(frozen=True)
class CostateTrajectory:
    """Solution ``g*_0, ..., g*_T`` of the adjoint system."""

    costates: np.ndarray

    @property
    def horizon(self):
        """Number ``T`` of time steps."""
        return self.costates.shape[0] - 1


# =============================================================================
# HELPERS
# =============================================================================


def _check_time(t, horizon):
    if not (0 <= t <= horizon):
        raise InputError(f"time index {t} outside [0, {horizon}]")


def _check_system(control, bank, support):
    if control.q != bank.q:
        raise InputError(
            f"control has {control.q} rows, bank has {bank.q} operators"
        )
    if bank.size != support.size:
        raise InputError(
            f"operators act on R^{bank.size}, support has "
            f"{support.size} points"
        )


# =============================================================================
# FORWARD SYSTEM
# =============================================================================


def forward_solve(control, bank, support, offset=1.0):
    """Solve the pulled-down forward system.

    Parameters
    ----------
    control : ControlMatrix or array-like of shape (q, T)
    bank : OperatorBank
    support : SupportSet
    offset : float, default: 1.0
        Constant value of ``h_0``.

    Returns
    -------
    Trajectory

    Raises
    ------
    DivergenceError
        When a state becomes non-finite or exceeds ``DIVERGENCE_BOUND``.
    """
    control = ControlMatrix.coerce(control)
    _check_system(control, bank, support)
    if not np.isfinite(offset):
        raise InputError(f"offset must be finite, got {offset}")

    m, horizon = support.size, control.horizon
    gram = support.gram
    states = np.empty((horizon + 1, m))
    driven = np.empty((horizon, m))
    states[0] = offset
    for t in range(horizon):
        driven[t] = operators.apply_combination(
            bank, control.column(t), states[t]
        )
        states[t + 1] = states[t] + gram @ driven[t] / m
        peak = np.max(np.abs(states[t + 1]))
        if not np.isfinite(peak) or peak > DIVERGENCE_BOUND:
            raise DivergenceError(
                f"forward state diverged at step {t + 1} "
                f"(sup norm {peak:.3g})",
                step=t + 1,
            )
    return Trajectory(
        states=states,
        driven=driven,
        control=control,
        bank=bank,
        support=support,
        offset=float(offset),
    )


def h_function(traj, t):
    """The function ``h_t`` as a kernel expansion over the support.

    Parameters
    ----------
    traj : Trajectory
    t : int
        Time index in ``[0, T]``.

    Returns
    -------
    RkhsFunction
    """
    return RkhsFunction(
        offset=traj.offset, weights=traj.weights(t), support=traj.support
    )


# =============================================================================
# ADJOINT SYSTEM
# =============================================================================


def adjoint_transitions(control, bank, support, *, with_products=True):
    """Backward transition matrices and their right-to-left products.

    Parameters
    ----------
    control : ControlMatrix or array-like of shape (q, T)
    bank : OperatorBank
    support : SupportSet
    with_products : bool, default: True
        Also cache ``P_s = M_s ... M_{T-1}`` (``T`` products of ``m x m``
        matrices).

    Returns
    -------
    AdjointBundle
    """
    control = ControlMatrix.coerce(control)
    _check_system(control, bank, support)

    m, horizon = support.size, control.horizon
    eye = np.eye(m)
    transitions = np.empty((horizon, m, m))
    for s in range(horizon):
        transitions[s] = eye + bank.compose_adjoint_combination(
            support.gram, control.column(s)
        ) / m

    products = None
    if with_products:
        products = np.empty((horizon + 1, m, m))
        products[horizon] = eye
        for s in range(horizon - 1, -1, -1):
            products[s] = transitions[s] @ products[s + 1]
    return AdjointBundle(transitions=transitions, terminal_products=products)


def adjoint_solve(bundle, terminal, sources=None):
    """Backward recursion for the costate.

    Parameters
    ----------
    bundle : AdjointBundle
    terminal : array-like of shape (m,)
        ``g*_T``.
    sources : array-like of shape (T, m), optional
        Running sources ``l_0, ..., l_{T-1}``; zero when omitted.

    Returns
    -------
    CostateTrajectory
    """
    horizon, m = bundle.horizon, bundle.transitions.shape[1]
    terminal = np.asarray(terminal, dtype=float)
    if terminal.shape != (m,):
        raise InputError(f"terminal must have shape ({m},)")
    if sources is not None:
        sources = np.asarray(sources, dtype=float)
        if sources.shape != (horizon, m):
            raise InputError(f"sources must have shape ({horizon}, {m})")

    costates = np.empty((horizon + 1, m))
    costates[horizon] = terminal
    for s in range(horizon - 1, -1, -1):
        costates[s] = bundle.transitions[s] @ costates[s + 1]
        if sources is not None:
            costates[s] += sources[s]
    return CostateTrajectory(costates=costates)


def backward_costates(traj, terminal, sources=None):
    """Matrix-free version of :func:`adjoint_solve` along a trajectory.

    Applies ``M_s g = g + (1/m) K B*[u_s] g`` without forming ``M_s``,
    ``O(T m^2)`` overall. Gradient descent uses it on every iteration.
    """
    horizon, m = traj.horizon, traj.support.size
    terminal = np.asarray(terminal, dtype=float)
    if terminal.shape != (m,):
        raise InputError(f"terminal must have shape ({m},)")
    if sources is not None:
        sources = np.asarray(sources, dtype=float)
        if sources.shape != (horizon, m):
            raise InputError(f"sources must have shape ({horizon}, {m})")

    gram = traj.support.gram
    costates = np.empty((horizon + 1, m))
    costates[horizon] = terminal
    for s in range(horizon - 1, -1, -1):
        nxt = costates[s + 1]
        pulled = np.zeros(m)
        for w, op in zip(traj.control.column(s), traj.bank):
            if w != 0.0:
                pulled += w * operators.apply_adjoint(op, nxt)
        costates[s] = nxt + gram @ pulled / m
        if sources is not None:
            costates[s] += sources[s]
    return CostateTrajectory(costates=costates)


# =============================================================================
# GRADIENTS
# =============================================================================


def cost_gradient(traj, costate, bank, running_control_grad=None):
    """Gradient of the cost with respect to the controls.

    Entry ``(i, t)`` is ``(1/m) g*_{t+1} @ B_i g_t`` plus
    ``running_control_grad[i, t]``.

    Returns
    -------
    ndarray of shape (q, T)
    """
    horizon, m = traj.horizon, traj.support.size
    if costate.horizon != horizon:
        raise InputError(
            f"costate horizon {costate.horizon} != trajectory horizon "
            f"{horizon}"
        )
    grad = np.empty((bank.q, horizon))
    for i, op in enumerate(bank):
        driven = operators.apply(op, traj.states[:-1].T)
        grad[i] = np.einsum("mt,tm->t", driven, costate.costates[1:]) / m
    if running_control_grad is not None:
        running_control_grad = np.asarray(running_control_grad, dtype=float)
        if running_control_grad.shape != grad.shape:
            raise InputError("running control gradient has the wrong shape")
        grad = grad + running_control_grad
    return grad


def jacobian_basis(traj, bundle, bank, t):
    """Per-control directions of the derivative of ``h_t``.

    Column ``i * T + s`` is ``P_{s+1}^T B_i g_s`` where ``P_{s+1}`` is
    the product ``M_{s+1} ... M_{t-1}``; columns with ``s >= t`` are
    zero. The derivative of ``h_t(x)`` in ``u_{i,s}`` is then
    ``(1/m) kappa(x) @ column``, which lets any number of query points
    share the ``m x m`` products.

    Returns
    -------
    ndarray of shape (m, q * T)
    """
    horizon, m = traj.horizon, traj.support.size
    _check_time(t, horizon)
    basis = np.zeros((m, bank.q, horizon))
    drivers = [operators.apply(op, traj.states[:-1].T) for op in bank]

    if t == horizon and bundle.terminal_products is not None:
        for s in range(t):
            product = bundle.terminal_products[s + 1]
            for i in range(bank.q):
                basis[:, i, s] = product.T @ drivers[i][:, s]
    else:
        product = np.eye(m)
        for s in range(t - 1, -1, -1):
            for i in range(bank.q):
                basis[:, i, s] = product.T @ drivers[i][:, s]
            product = bundle.transitions[s] @ product
    return basis.reshape(m, bank.q * horizon)


def control_jacobian(traj, bundle, bank, query_points, t, *, sections=None):
    """Jacobian of ``h_t`` at the query points with respect to ``u``.

    Parameters
    ----------
    traj : Trajectory
    bundle : AdjointBundle
    bank : OperatorBank
    query_points : array-like of shape (n, d)
        Ignored when ``sections`` is given.
    t : int
        Time index in ``[0, T]``.
    sections : ndarray of shape (m, n), optional
        Precomputed kernel sections of the query points.

    Returns
    -------
    ndarray of shape (n, q * T)
        Row-major in ``(i, s)``; columns with ``s >= t`` are exactly 0.
    """
    if sections is None:
        sections = traj.support.sections(query_points)
    basis = jacobian_basis(traj, bundle, bank, t)
    return sections.T @ basis / traj.support.size
