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

"""Command-line interface of RKHS-Controls.

Every command exits with status 0 on success. Library errors and files
that cannot be read or written are reported as one
``<ErrorClass>: <message>`` line on stderr with status 2.
"""

# =============================================================================
# IMPORTS
# =============================================================================

import functools
import logging

import click

from matplotlib.figure import Figure

import toml

from . import __version__, data, experiment, heston
from .errors import RkhsControlsError
from .plots import Plots, read_history, read_predictions

# =============================================================================
# CONSTANTS
# =============================================================================

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

ERROR_EXIT_CODE = 2

LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")

# =============================================================================
# HELPERS
# =============================================================================


def _reports_errors(command):
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except (RkhsControlsError, OSError) as err:
            click.echo(f"{type(err).__name__}: {err}", err=True)
            raise SystemExit(ERROR_EXIT_CODE)

    return wrapper


def _echo_toml(mapping):
    click.echo(toml.dumps(mapping), nl=False)


# =============================================================================
# COMMANDS
# =============================================================================


@click.group()
@click.version_option(__version__, prog_name="rkhs-controls")
@click.option("-v", "--verbose", is_flag=True, help="Log at DEBUG level.")
@click.option(
    "--log-level",
    type=click.Choice(LEVELS, case_sensitive=False),
    default=None,
    help="Explicit log level (default WARNING).",
)
def main(verbose, log_level):
    """Learn functions as solutions of controlled difference equations."""
    level = "DEBUG" if verbose else (log_level or "WARNING")
    logging.basicConfig(level=level.upper(), format=LOG_FORMAT, force=True)


@main.command()
@click.option(
    "--config",
    "config_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
    help="Experiment TOML file.",
)
@_reports_errors
def run(config_path):
    """Run an experiment and write its metrics, predictions and model."""
    config = experiment.load_config(config_path)
    report = experiment.run_experiment(config)
    summary = report.to_dict()
    summary.pop("config")
    _echo_toml(summary)


@main.group()
def generate():
    """Generate datasets."""


@generate.command("heston")
@click.option("--count", type=click.IntRange(min=1), default=1000)
@click.option("--seed", type=int, default=0)
@click.option("--spot", type=float, default=heston.DEFAULT_SPOT)
@click.option(
    "--out",
    "out_path",
    required=True,
    type=click.Path(dir_okay=False, writable=True),
)
@_reports_errors
def generate_heston(count, seed, spot, out_path):
    """Price random Heston parameter tuples into a CSV file."""
    dataset = heston.generate_heston_grid(count=count, seed=seed, spot=spot)
    data.write_csv(
        dataset, out_path, comments=heston.grid_header(seed, spot=spot)
    )
    click.echo(f"wrote {dataset.size} rows to {out_path}")


@main.command()
@click.argument(
    "kind",
    type=click.Choice(experiment.BASELINES),
    default="kernel-ridge",
)
@click.option(
    "--config",
    "config_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
)
@_reports_errors
def baseline(kind, config_path):
    """Score a baseline on the data of an experiment."""
    config = experiment.load_config(config_path)
    scores = experiment.run_baseline(config, kind)
    _echo_toml({"baseline": {"kind": kind, **scores.to_dict()}})


@main.command("eval")
@click.option(
    "--model",
    "model_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
)
@click.option(
    "--data",
    "data_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
)
@_reports_errors
def evaluate(model_path, data_path):
    """Score a saved model on a CSV file."""
    scores = experiment.evaluate_model(model_path, data_path)
    _echo_toml({"metrics": scores.to_dict()})


@main.command()
@click.option(
    "--predictions",
    "predictions_path",
    type=click.Path(exists=True, dir_okay=False),
    help="Predictions CSV, for the error, values and fit kinds.",
)
@click.option(
    "--metrics",
    "metrics_path",
    type=click.Path(exists=True, dir_okay=False),
    help="Metrics TOML, for the history kind.",
)
@click.option(
    "--out",
    "out_path",
    required=True,
    type=click.Path(dir_okay=False, writable=True),
)
@click.option(
    "--kind",
    type=click.Choice(["error", "values", "fit", "history"]),
    default="error",
)
@_reports_errors
def plot(predictions_path, metrics_path, out_path, kind):
    """Draw a figure from a predictions or metrics file."""
    fig = Figure()
    plots = Plots()
    if kind == "history":
        if metrics_path is None:
            raise click.UsageError("--kind history needs --metrics")
        plots.cost_history(fig, *read_history(metrics_path))
    else:
        if predictions_path is None:
            raise click.UsageError(f"--kind {kind} needs --predictions")
        plots.from_predictions(fig, read_predictions(predictions_path), kind)
    plots.save(fig, out_path)
    click.echo(f"wrote {out_path}")
