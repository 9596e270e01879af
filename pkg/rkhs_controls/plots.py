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

"""Figures of experiment results.

All the figures are built on a :class:`matplotlib.figure.Figure` passed by
the caller; pyplot is never used.
"""

# =============================================================================
# IMPORTS
# =============================================================================

import base64
import io
import pathlib

import numpy as np

import pandas as pd

import toml

from .errors import InputError, SchemaError

# =============================================================================
# CONSTANTS
# =============================================================================

#: Columns every predictions file carries after the feature columns.
PREDICTION_COLUMNS = ("y", "prediction", "error")

# =============================================================================
# HELPERS
# =============================================================================


def read_predictions(path):
    """Load a predictions CSV written by an experiment run.

    Raises
    ------
    SchemaError
        If one of the ``y``, ``prediction`` and ``error`` columns is
        missing.
    """
    frame = pd.read_csv(pathlib.Path(path), float_precision="round_trip")
    missing = [col for col in PREDICTION_COLUMNS if col not in frame.columns]
    if missing:
        raise SchemaError(f"{path}: missing column(s) {missing}")
    return frame


def read_history(path):
    """Training-cost history stored in a metrics file.

    Returns
    -------
    iterations, costs : ndarray
        The iterations at which the full training cost was evaluated and
        its values.

    Raises
    ------
    InputError
        If the file cannot be read.
    SchemaError
        If the file is not TOML or has no ``[history]`` section.
    """
    path = pathlib.Path(path)
    try:
        history = toml.load(path).get("history", {})
    except OSError as err:
        raise InputError(f"cannot read {path}: {err.strerror}") from err
    except toml.TomlDecodeError as err:
        raise SchemaError(f"{path}: {err}") from err
    if "iterations" not in history or "train_costs" not in history:
        raise SchemaError(f"{path}: no [history] section")
    return (
        np.asarray(history["iterations"], dtype=float),
        np.asarray(history["train_costs"], dtype=float),
    )


# =============================================================================
# PLOTS
# =============================================================================


class Plots:
    """Plotting helpers for fitted control systems."""

    def get_data(self, fig, fmt="png", decode="ascii"):
        """
        Encode a figure for embedding in text documents.

        Parameters
        ----------
        fig : matplotlib.figure.Figure
            A instance of Figure Object.

        fmt : str, default: "png"
            A extension type for the images.

        decode : str, default: "ascii"
            A buffer decode.

        Returns
        -------
        str
            The base64 encoded image.
        """
        buf = io.BytesIO()
        fig.savefig(buf, format=fmt)
        return base64.b64encode(buf.getbuffer()).decode(decode)

    def save(self, fig, path, fmt=None):
        """Write the figure to ``path``; the format follows the suffix."""
        path = pathlib.Path(path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            fig.savefig(path, format=fmt)
        except OSError as err:
            raise InputError(f"cannot write {path}: {err.strerror}") from err
        return path

    def error_hist(self, fig, errors, ax=None, hist_kws=None):
        """
        Histogram of the prediction errors.

        Parameters
        ----------
        fig : matplotlib.figure.Figure
            A instance of Figure Object.

        errors : (n,) array-like
            Prediction minus target.

        ax : matplotlib.axes.Axes, (optional)
            A matplotlib axis.

        hist_kws : ``dict`` or ``None`` (optional)
            The parameters to send to the data plot.

        Returns
        -------
        ax : matplotlib.axes.Axes
            A matplotlib axis.
        """
        ax = fig.gca() if ax is None else ax
        hist_kws = {"bins": 50} if hist_kws is None else hist_kws
        ax.hist(np.asarray(errors, dtype=float), **hist_kws)
        ax.set_xlabel("prediction error")
        ax.set_ylabel("count")
        return ax

    def values_hist(self, fig, values, labels, ax=None, hist_kws=None):
        """
        Histograms of the fitted values, one per class.

        Parameters
        ----------
        fig : matplotlib.figure.Figure
            A instance of Figure Object.

        values : (n,) array-like
            Fitted values ``h_T(x)``.

        labels : (n,) array-like
            Binary class labels.

        ax : matplotlib.axes.Axes, (optional)
            A matplotlib axis.

        hist_kws : ``dict`` or ``None`` (optional)
            The parameters to send to the data plot.

        Returns
        -------
        ax : matplotlib.axes.Axes
            A matplotlib axis.
        """
        values = np.asarray(values, dtype=float)
        labels = np.asarray(labels, dtype=float)
        if values.shape != labels.shape:
            raise InputError("one label per fitted value is needed")
        ax = fig.gca() if ax is None else ax
        hist_kws = {"bins": 50, "alpha": 0.6} if hist_kws is None else hist_kws
        for label in (0.0, 1.0):
            ax.hist(
                values[labels == label], label=f"class {label:g}", **hist_kws
            )
        ax.set_xlabel("fitted value")
        ax.legend()
        return ax

    def fit_curve(self, fig, x, y, prediction, ax=None, plot_kws=None):
        """
        Fitted values against the targets of a one-dimensional problem.

        Parameters
        ----------
        fig : matplotlib.figure.Figure
            A instance of Figure Object.

        x, y, prediction : (n,) array-like
            Inputs, targets and fitted values.

        ax : matplotlib.axes.Axes, (optional)
            A matplotlib axis.

        plot_kws : ``dict`` or ``None`` (optional)
            The parameters to send to the fitted curve.

        Returns
        -------
        ax : matplotlib.axes.Axes
            A matplotlib axis.
        """
        x = np.asarray(x, dtype=float).ravel()
        order = np.argsort(x, kind="stable")
        ax = fig.gca() if ax is None else ax
        plot_kws = {} if plot_kws is None else plot_kws
        ax.scatter(x[order], np.asarray(y)[order], s=4, label="target")
        ax.plot(
            x[order], np.asarray(prediction)[order], label="fit", **plot_kws
        )
        ax.legend()
        return ax

    def cost_history(self, fig, iterations, costs, ax=None, plot_kws=None):
        """
        Training cost against the iteration on a log scale.

        Parameters
        ----------
        fig : matplotlib.figure.Figure
            A instance of Figure Object.

        iterations, costs : (k,) array-like
            Iterations at which the training cost was evaluated.

        ax : matplotlib.axes.Axes, (optional)
            A matplotlib axis.

        plot_kws : ``dict`` or ``None`` (optional)
            The parameters to send to the data plot.

        Returns
        -------
        ax : matplotlib.axes.Axes
            A matplotlib axis.
        """
        ax = fig.gca() if ax is None else ax
        plot_kws = {} if plot_kws is None else plot_kws
        ax.plot(iterations, costs, **plot_kws)
        ax.set_yscale("log")
        ax.set_xlabel("iteration")
        ax.set_ylabel("training cost")
        return ax

    def from_predictions(self, fig, frame, kind="error"):
        """
        Draw one of the standard figures from a predictions table.

        Parameters
        ----------
        fig : matplotlib.figure.Figure
            A instance of Figure Object.

        frame : pandas.DataFrame
            As returned by :func:`read_predictions`.

        kind : {"error", "values", "fit"}, default: "error"
            ``values`` needs binary targets, ``fit`` a single feature.
        """
        if kind == "error":
            return self.error_hist(fig, frame["error"])
        if kind == "values":
            return self.values_hist(fig, frame["prediction"], frame["y"])
        if kind == "fit":
            features = frame.columns[: -len(PREDICTION_COLUMNS)]
            if len(features) != 1:
                raise InputError(
                    f"the fit curve needs one feature, got {len(features)}"
                )
            return self.fit_curve(
                fig, frame[features[0]], frame["y"], frame["prediction"]
            )
        raise InputError(f"unknown plot kind {kind!r}")
