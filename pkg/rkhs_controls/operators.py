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

"""Control operators acting on the pulled-down space ``R^m``.

Two kinds are provided, both with unit operator norm on ``L^2`` of the
empirical measure:

- ``Diagonal``: ``B g = b * g`` with ``max |b_j| = 1``.
- ``RankOne``: ``B g = (beta @ g / m) beta`` with ``mean(beta ** 2) = 1``.
"""

# =============================================================================
# IMPORTS
# =============================================================================

import dataclasses as dc
import enum

import numpy as np

from .errors import InputError

# =============================================================================
# TYPES
# =============================================================================


class OperatorKind(enum.Enum):
    """The available control operator kinds."""

    DIAGONAL = "diagonal"
    RANK_ONE = "rank-one"


@dc.dataclass(frozen=True)
class ControlOperator:
    """A single control operator ``B_i``.

    Parameters
    ----------
    kind : OperatorKind
        Diagonal or rank-one.
    vector : ndarray of shape (m,)
        ``b`` for diagonal operators, ``beta`` for rank-one operators.
    """

    kind: OperatorKind
    vector: np.ndarray

    def __post_init__(self):
        kind = OperatorKind(self.kind)
        vector = np.array(self.vector, dtype=float)
        if vector.ndim != 1 or vector.size == 0:
            raise InputError("operator vector must be a non-empty 1D array")
        if not np.all(np.isfinite(vector)):
            raise InputError("operator vector contains non-finite values")
        vector.flags.writeable = False
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "vector", vector)

    @property
    def size(self):
        """Dimension ``m`` of the space the operator acts on."""
        return self.vector.size

    @property
    def norm(self):
        """Operator norm on ``L^2`` of the empirical measure."""
        if self.kind is OperatorKind.DIAGONAL:
            return float(np.max(np.abs(self.vector)))
        return float(np.mean(self.vector**2))

    def matrix(self):
        """Dense ``m x m`` matrix of the operator."""
        if self.kind is OperatorKind.DIAGONAL:
            return np.diag(self.vector)
        return np.outer(self.vector, self.vector) / self.size

    def adjoint_matrix(self):
        """Dense matrix of the adjoint under ``<a, b> = a @ b / m``.

        The weighted inner product is a multiple of the Euclidean one, so
        the adjoint is the plain transpose.
        """
        return self.matrix().T


@dc.dataclass(frozen=True)
class OperatorBank:
    """Ordered collection of the ``q`` control operators."""

    ops: tuple

    def __post_init__(self):
        ops = tuple(self.ops)
        if not ops:
            raise InputError("an operator bank needs at least one operator")
        sizes = {op.size for op in ops}
        if len(sizes) != 1:
            raise InputError(f"operators have mixed dimensions {sizes}")
        object.__setattr__(self, "ops", ops)

    def __len__(self):
        return len(self.ops)

    def __iter__(self):
        return iter(self.ops)

    def __getitem__(self, idx):
        return self.ops[idx]

    @property
    def q(self):
        """Number of control operators."""
        return len(self.ops)

    @property
    def size(self):
        """Dimension ``m`` shared by all the operators."""
        return self.ops[0].size

    def combination_matrix(self, u_t):
        """Dense matrix of ``B[u_t] = sum_i u_t[i] B_i``."""
        u_t = _check_control_column(self, u_t)
        return sum(w * op.matrix() for w, op in zip(u_t, self.ops))

    def adjoint_combination_matrix(self, u_t):
        """Dense matrix of ``B*[u_t] = sum_i u_t[i] B*_i``."""
        u_t = _check_control_column(self, u_t)
        return sum(w * op.adjoint_matrix() for w, op in zip(u_t, self.ops))

    def compose_adjoint_combination(self, left, u_t):
        """``left @ B*[u_t]`` without forming ``B*[u_t]``."""
        u_t = _check_control_column(self, u_t)
        out = np.zeros_like(np.asarray(left, dtype=float))
        for w, op in zip(u_t, self.ops):
            if w != 0.0:
                out += w * compose_adjoint(op, left)
        return out


# =============================================================================
# OPERATIONS
# =============================================================================


def _check_state(op, g):
    g = np.asarray(g, dtype=float)
    if g.shape[0] != op.size:
        raise InputError(
            f"state has dimension {g.shape[0]}, operator expects {op.size}"
        )
    return g


def _check_control_column(bank, u_t):
    u_t = np.asarray(u_t, dtype=float).ravel()
    if u_t.size != bank.q:
        raise InputError(
            f"control column has {u_t.size} entries, bank has {bank.q}"
        )
    return u_t


def _apply_structured(op, g):
    g = _check_state(op, g)
    vec = op.vector if g.ndim == 1 else op.vector[:, None]
    if op.kind is OperatorKind.DIAGONAL:
        return vec * g
    return vec * (op.vector @ g / op.size)


def apply(op, g):
    """Apply a control operator.

    Parameters
    ----------
    op : ControlOperator
    g : array-like of shape (m,) or (m, k)
        One state or ``k`` states stacked as columns.

    Returns
    -------
    ndarray
        Same shape as ``g``.
    """
    return _apply_structured(op, g)


def apply_adjoint(op, g):
    """Apply the adjoint of a control operator.

    Both kinds are self-adjoint for the weighted inner product, so the
    adjoint shares the action of :func:`apply`.
    """
    return _apply_structured(op, g)


def compose_adjoint(op, left):
    """Right-multiply a matrix by the adjoint: ``left @ B*``.

    Uses the structure of the operator, ``O(k m)`` for a ``k x m`` left
    factor.
    """
    left = np.asarray(left, dtype=float)
    if left.shape[-1] != op.size:
        raise InputError(
            f"left factor has {left.shape[-1]} columns, operator expects "
            f"{op.size}"
        )
    if op.kind is OperatorKind.DIAGONAL:
        return left * op.vector
    return np.outer(left @ op.vector, op.vector) / op.size


def apply_combination(bank, u_t, g):
    """Apply ``B[u_t] = sum_i u_t[i] B_i`` to ``g``."""
    u_t = _check_control_column(bank, u_t)
    out = np.zeros_like(_check_state(bank[0], g))
    for w, op in zip(u_t, bank):
        if w != 0.0:
            out += w * apply(op, g)
    return out


def normalized_operator(kind, raw):
    """Scale ``raw`` so that the resulting operator has unit norm."""
    raw = np.asarray(raw, dtype=float)
    kind = OperatorKind(kind)
    if kind is OperatorKind.DIAGONAL:
        peak = np.max(np.abs(raw))
        if peak == 0.0:
            raise InputError("cannot normalize a zero diagonal")
        return ControlOperator(kind, raw / peak)
    rms = np.sqrt(np.mean(raw**2))
    if rms == 0.0:
        raise InputError("cannot normalize a zero rank-one vector")
    return ControlOperator(kind, raw / rms)


def make_operator_bank(seed, m, q=2):
    """Draw the default bank of unit-norm operators.

    The first operator is diagonal, the second one (when ``q = 2``) is
    rank-one. Raw vectors are i.i.d. standard normal draws.

    Parameters
    ----------
    seed : int or numpy.random.SeedSequence
        Seed of the generator.
    m : int
        Number of support points.
    q : int, default: 2
        Number of operators, 1 or 2. Larger banks must be built from an
        explicit operator list.

    Returns
    -------
    OperatorBank
    """
    if m < 1 or q < 1:
        raise InputError(f"need m >= 1 and q >= 1, got m={m}, q={q}")
    if q > 2:
        raise InputError(
            "the default bank has one diagonal and one rank-one operator; "
            "build an OperatorBank explicitly for q > 2"
        )
    rng = np.random.default_rng(seed)
    kinds = [OperatorKind.DIAGONAL, OperatorKind.RANK_ONE][:q]
    ops = [normalized_operator(k, rng.standard_normal(m)) for k in kinds]
    return OperatorBank(tuple(ops))
