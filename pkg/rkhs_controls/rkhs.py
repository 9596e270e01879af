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

"""Gaussian kernel, Gram matrices and kernel expansions.

Functions of the reproducing-kernel Hilbert space are represented through
the empirical measure on a finite support set ``(xi_1, ..., xi_m)``. The
empirical inner product is ``<f, g> = f @ g / m``, so every expansion
carries a ``1 / m`` factor when it is evaluated.
"""

# =============================================================================
# IMPORTS
# =============================================================================

import dataclasses as dc

import numpy as np

from scipy.spatial import distance

from .errors import InputError

# =============================================================================
# CONSTANTS
# =============================================================================

#: Two support points closer than this are considered equal.
DUPLICATE_TOLERANCE = 1e-12

# =============================================================================
# HELPERS
# =============================================================================


def as_points(points, name="points"):
    """Convert ``points`` to a finite 2D float array of shape ``(n, d)``.

    One-dimensional input is read as ``n`` scalar points.
    """
    arr = np.asarray(points, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise InputError(f"{name} must be a 2D array, got ndim={arr.ndim}")
    if arr.shape[0] == 0:
        raise InputError(f"{name} is empty")
    if not np.all(np.isfinite(arr)):
        raise InputError(f"{name} contains non-finite values")
    return arr


def split_query(x, dim):
    """Read ``x`` as one point or a batch of points of dimension ``dim``.

    Returns
    -------
    points : ndarray of shape (n, d)
    single : bool
        Whether ``x`` was a single point.
    """
    arr = np.asarray(x, dtype=float)
    single = arr.ndim == 0 or (arr.ndim == 1 and arr.size == dim)
    if single or (arr.ndim == 1 and dim > 1):
        arr = arr.reshape(1, -1)
    return as_points(arr, "query points"), single


def _freeze(arr):
    arr = np.array(arr, dtype=float)
    arr.flags.writeable = False
    return arr


# =============================================================================
# TYPES
# =============================================================================


@dc.dataclass(frozen=True)
class KernelSpec:
    """Gaussian kernel ``k(x, y) = exp(-|x - y|^2 / (2 s^2))``.

    Parameters
    ----------
    scale : float
        The width ``s`` of the kernel, strictly positive.
    """

    scale: float

    def __post_init__(self):
        if not (np.isfinite(self.scale) and self.scale > 0):
            raise InputError(f"kernel scale must be > 0, got {self.scale}")
        object.__setattr__(self, "scale", float(self.scale))


@dc.dataclass(frozen=True)
class SupportSet:
    """The ``m`` support points and their Gram matrix.

    Use :func:`make_support` to build one; the constructor trusts its input.

    Parameters
    ----------
    points : ndarray of shape (m, d)
        The pairwise distinct support points ``xi_j``.
    gram : ndarray of shape (m, m)
        ``gram[i, j] = k(xi_i, xi_j)``.
    kernel : KernelSpec
        Kernel used to build ``gram``.
    """

    points: np.ndarray
    gram: np.ndarray
    kernel: KernelSpec

    @property
    def size(self):
        """Number ``m`` of support points."""
        return self.points.shape[0]

    @property
    def dim(self):
        """Dimension ``d`` of the input space."""
        return self.points.shape[1]

    def sections(self, x):
        """Kernel sections of the query points against the support.

        Parameters
        ----------
        x : array-like of shape (n, d) or (d,)
            Query points.

        Returns
        -------
        ndarray of shape (m, n)
            Column ``i`` is ``(k(x_i, xi_1), ..., k(x_i, xi_m))``.
        """
        x = np.asarray(x, dtype=float)
        if x.ndim == 1 and self.dim > 1:
            x = x.reshape(1, -1)
        x = as_points(x, "query points")
        if x.shape[1] != self.dim:
            raise InputError(
                f"query points have dimension {x.shape[1]}, "
                f"support has dimension {self.dim}"
            )
        return gram_matrix(self.points, x, self.kernel)


@dc.dataclass(frozen=True)
class RkhsFunction:
    """Kernel expansion ``h(x) = offset + (1/m) sum_j k(x, xi_j) w_j``.

    Parameters
    ----------
    offset : float
        The constant part of the function.
    weights : ndarray of shape (m,)
        Expansion weights, one per support point.
    support : SupportSet
        Support carrying the expansion (and the kernel).
    """

    offset: float
    weights: np.ndarray
    support: SupportSet

    def __post_init__(self):
        weights = np.asarray(self.weights, dtype=float)
        if weights.shape != (self.support.size,):
            raise InputError(
                f"weights must have shape ({self.support.size},), "
                f"got {weights.shape}"
            )
        object.__setattr__(self, "weights", _freeze(weights))

    @property
    def scale(self):
        """The kernel of the expansion."""
        return self.support.kernel

    def __call__(self, x):
        return eval_function(self, x)


# =============================================================================
# OPERATIONS
# =============================================================================


def kernel_eval(x, y, spec):
    """Evaluate the Gaussian kernel on a pair of points.

    Parameters
    ----------
    x, y : array-like of shape (d,)
        The two points.
    spec : KernelSpec
        Kernel to use.

    Returns
    -------
    float
        ``exp(-|x - y|^2 / (2 s^2))``, a value in ``(0, 1]``.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    y = np.atleast_1d(np.asarray(y, dtype=float))
    if x.shape != y.shape or x.ndim != 1:
        raise InputError(f"dimension mismatch: {x.shape} vs {y.shape}")
    diff = x - y
    return float(np.exp(-np.dot(diff, diff) / (2.0 * spec.scale**2)))


def gram_matrix(x, y, spec):
    """Cross-Gram matrix ``G[i, j] = k(x_i, y_j)``.

    Parameters
    ----------
    x : array-like of shape (n, d)
    y : array-like of shape (p, d)
    spec : KernelSpec

    Returns
    -------
    ndarray of shape (n, p)
    """
    same = x is y
    x = as_points(x, "x")
    y = x if same else as_points(y, "y")
    if x.shape[1] != y.shape[1]:
        raise InputError(
            f"dimension mismatch: {x.shape[1]} vs {y.shape[1]}"
        )
    sq = distance.cdist(x, y, metric="sqeuclidean")
    gram = np.exp(-sq / (2.0 * spec.scale**2))
    if same:
        gram = 0.5 * (gram + gram.T)
        np.fill_diagonal(gram, 1.0)
    return gram


def make_support(points, spec):
    """Build a :class:`SupportSet`, rejecting duplicated points.

    Raises
    ------
    InputError
        If two points are within ``DUPLICATE_TOLERANCE`` of each other.
    """
    points = as_points(points, "support points")
    if points.shape[0] > 1:
        dists = distance.pdist(points)
        if np.min(dists) <= DUPLICATE_TOLERANCE:
            raise InputError("support points must be pairwise distinct")
    gram = gram_matrix(points, points, spec)
    return SupportSet(points=_freeze(points), gram=_freeze(gram), kernel=spec)


def eval_function(f, x):
    """Evaluate a kernel expansion.

    Parameters
    ----------
    f : RkhsFunction
        Function to evaluate.
    x : array-like of shape (d,) or (n, d)
        One point or a batch of points.

    Returns
    -------
    float or ndarray of shape (n,)
        A float for a single point, an array for a batch.
    """
    points, single = split_query(x, f.support.dim)
    sections = f.support.sections(points)
    values = f.offset + sections.T @ f.weights / f.support.size
    return float(values[0]) if single else values
