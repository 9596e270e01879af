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

"""European call prices under the Heston stochastic-volatility model.

The asset follows ``dS = S (r dt + sqrt(V) dW1)`` with the variance
``dV = kappa (theta - V) dt + sigma_v sqrt(V) dW2`` and
``corr(dW1, dW2) = rho``.

- :func:`heston_fft_price` is the damped Fourier-transform pricer driven
  by the characteristic function.
- :func:`heston_mc_price` is a Monte Carlo estimator used to check it.
- :func:`generate_heston_grid` prices random parameter tuples to build
  the regression dataset.
"""

# =============================================================================
# IMPORTS
# =============================================================================

import dataclasses as dc
import logging

import numpy as np

from scipy.interpolate import CubicSpline
from scipy.special import ndtr

from .data import Dataset, Task
from .errors import ConfigurationError, InputError, PricingError

# =============================================================================
# CONSTANTS
# =============================================================================

logger = logging.getLogger(__name__)

DEFAULT_SPOT = 100.0

#: Box the training tuples are drawn from, one ``(low, high)`` per field.
DEFAULT_RANGES = {
    "strike": (50.0, 150.0),
    "maturity": (11.0 / 12.0, 1.0),
    "rate": (0.015, 0.025),
    "kappa": (1.5, 2.5),
    "theta": (0.5, 0.7),
    "rho": (-0.7, -0.5),
    "sigma_v": (0.02, 0.1),
    "v0": (0.02, 0.1),
}

FEATURES = tuple(f"feature_{name}" for name in DEFAULT_RANGES)

#: Half-width, in grid nodes, of the spline window around a strike.
_SPLINE_HALF_WIDTH = 8

# =============================================================================
# TYPES
# =============================================================================


@dc.dataclass(frozen=True)
class HestonParams:
    """Model and contract parameters of a call option."""

    strike: float
    maturity: float
    rate: float
    kappa: float
    theta: float
    rho: float
    sigma_v: float
    v0: float
    spot: float = DEFAULT_SPOT

    def __post_init__(self):
        for name in ("strike", "maturity", "sigma_v", "v0", "spot"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise InputError(f"{name} must be > 0, got {value}")
        if not abs(self.rho) <= 1:
            raise InputError(f"rho must lie in [-1, 1], got {self.rho}")
        if not (np.isfinite(self.kappa) and np.isfinite(self.theta)):
            raise InputError("kappa and theta must be finite")
        if not self.feller:
            logger.warning(
                "Feller condition violated: 2 kappa theta = %g < sigma_v^2 "
                "= %g",
                2.0 * self.kappa * self.theta,
                self.sigma_v**2,
            )

    @property
    def feller(self):
        """Whether ``2 kappa theta >= sigma_v^2`` (variance stays > 0)."""
        return 2.0 * self.kappa * self.theta >= self.sigma_v**2

    def as_row(self):
        """The eight feature values, in :data:`FEATURES` order."""
        return np.array([getattr(self, name) for name in DEFAULT_RANGES])


@dc.dataclass(frozen=True)
class FftSettings:
    """Grid of the Fourier pricer.

    Parameters
    ----------
    alpha : float, default: 1.5
        Damping exponent of the call price.
    n : int, default: 4096
        Number of grid nodes.
    eta : float, default: 0.25
        Spacing of the frequency grid; the log-strike spacing is
        ``2 pi / (n eta)``.
    """

    alpha: float = 1.5
    n: int = 4096
    eta: float = 0.25

    def __post_init__(self):
        if not self.alpha > 0:
            raise ConfigurationError(f"alpha must be > 0, got {self.alpha}")
        if not self.eta > 0:
            raise ConfigurationError(f"eta must be > 0, got {self.eta}")
        if self.n < 4 or self.n % 2:
            raise ConfigurationError(f"n must be even and >= 4, got {self.n}")

    @property
    def log_strike_step(self):
        """Spacing of the log-strike grid."""
        return 2.0 * np.pi / (self.n * self.eta)

    @property
    def log_strike_grid(self):
        """The ``n`` log-strikes priced by one transform."""
        half = 0.5 * self.n * self.log_strike_step
        return -half + self.log_strike_step * np.arange(self.n)


# =============================================================================
# PRICERS
# =============================================================================


def characteristic_function(u, p):
    """Characteristic function of ``ln S_T``.

    Written in the branch-cut free form with ``g = (b - d) / (b + d)``.
    """
    u = np.asarray(u, dtype=complex)
    iu = 1j * u
    beta = p.kappa - p.rho * p.sigma_v * iu
    d = np.sqrt(beta**2 + p.sigma_v**2 * (iu + u**2))
    g = (beta - d) / (beta + d)
    decay = np.exp(-d * p.maturity)
    c = p.rate * iu * p.maturity + p.kappa * p.theta / p.sigma_v**2 * (
        (beta - d) * p.maturity - 2.0 * np.log((1.0 - g * decay) / (1.0 - g))
    )
    dv = (beta - d) / p.sigma_v**2 * (1.0 - decay) / (1.0 - g * decay)
    return np.exp(c + dv * p.v0 + iu * np.log(p.spot))


def _simpson_weights(n):
    weights = np.ones(n)
    weights[0] = weights[-1] = 1.0 / 3.0
    weights[1:-1:2] = 4.0 / 3.0
    weights[2:-1:2] = 2.0 / 3.0
    return weights


def fft_call_curve(p, settings=None):
    """Call prices on the whole log-strike grid.

    Returns
    -------
    log_strikes : ndarray of shape (n,)
    prices : ndarray of shape (n,)
        ``p.strike`` is ignored; every other field is used.
    """
    settings = FftSettings() if settings is None else settings
    n, eta, alpha = settings.n, settings.eta, settings.alpha
    k = settings.log_strike_grid
    v = eta * np.arange(n)

    phi = characteristic_function(v - (alpha + 1.0) * 1j, p)
    denominator = alpha**2 + alpha - v**2 + 1j * (2.0 * alpha + 1.0) * v
    integrand = (
        np.exp(-p.rate * p.maturity)
        * phi
        / denominator
        * np.exp(-1j * v * k[0])
        * eta
        * _simpson_weights(n)
    )
    transformed = np.real(np.fft.fft(integrand))
    return k, np.exp(-alpha * k) / np.pi * transformed


def heston_fft_price(p, settings=None):
    """Price a European call with the damped Fourier transform.

    The transform prices the whole log-strike grid at once; the price at
    ``ln K`` is read from a cubic spline through the nearest nodes.

    Parameters
    ----------
    p : HestonParams
    settings : FftSettings, optional

    Returns
    -------
    float

    Raises
    ------
    ConfigurationError
        When ``ln K`` is outside the log-strike grid.
    PricingError
        When the transform returns a non-finite price.
    """
    settings = FftSettings() if settings is None else settings
    k, prices = fft_call_curve(p, settings)
    log_strike = np.log(p.strike)
    pos = int(np.searchsorted(k, log_strike))
    if pos - _SPLINE_HALF_WIDTH < 0 or pos + _SPLINE_HALF_WIDTH > k.size:
        raise ConfigurationError(
            f"log-strike {log_strike:.4g} is outside the FFT grid "
            f"[{k[0]:.4g}, {k[-1]:.4g}]; increase n or decrease eta"
        )
    window = slice(pos - _SPLINE_HALF_WIDTH, pos + _SPLINE_HALF_WIDTH)
    price = float(CubicSpline(k[window], prices[window])(log_strike))
    if not np.isfinite(price):
        raise PricingError("non-finite FFT price", params=p)
    return price


def heston_mc_price(p, paths, steps, seed):
    """Monte Carlo price with full-truncation Euler variance.

    The variance is advanced with ``V+ = max(V, 0)`` in the drift and the
    diffusion, the log-price with the exact log-Euler step, which keeps
    ``exp(-r t) S_t`` a martingale.

    Returns
    -------
    price : float
    standard_error : float
    """
    if paths < 1 or steps < 1:
        raise InputError(
            f"need paths >= 1 and steps >= 1, got {paths} and {steps}"
        )
    rng = np.random.default_rng(seed)
    dt = p.maturity / steps
    sqrt_dt = np.sqrt(dt)
    mix = np.sqrt(1.0 - p.rho**2)

    log_s = np.full(paths, np.log(p.spot))
    var = np.full(paths, p.v0)
    for _ in range(steps):
        z1, z2 = rng.standard_normal((2, paths))
        pos = np.maximum(var, 0.0)
        vol = np.sqrt(pos)
        log_s += (p.rate - 0.5 * pos) * dt + vol * sqrt_dt * z1
        var += p.kappa * (p.theta - pos) * dt + p.sigma_v * vol * sqrt_dt * (
            p.rho * z1 + mix * z2
        )

    payoff = np.exp(-p.rate * p.maturity) * np.maximum(
        np.exp(log_s) - p.strike, 0.0
    )
    error = payoff.std(ddof=1) / np.sqrt(paths) if paths > 1 else np.inf
    return float(payoff.mean()), float(error)


def black_scholes_call(spot, strike, maturity, rate, variance):
    """Closed-form call price with constant variance."""
    total = np.sqrt(variance * maturity)
    d1 = (np.log(spot / strike) + rate * maturity) / total + 0.5 * total
    d2 = d1 - total
    return float(
        spot * ndtr(d1) - strike * np.exp(-rate * maturity) * ndtr(d2)
    )


# =============================================================================
# GRID
# =============================================================================


def _check_ranges(ranges):
    unknown = set(ranges) - set(DEFAULT_RANGES)
    if unknown:
        raise ConfigurationError(
            f"unknown Heston parameters {sorted(unknown)}"
        )
    merged = {**DEFAULT_RANGES, **ranges}
    for name, (low, high) in merged.items():
        if not low <= high:
            raise ConfigurationError(
                f"empty range for {name}: [{low}, {high}]"
            )
    return merged


def generate_heston_grid(
    ranges=None, count=1000, seed=0, *, spot=DEFAULT_SPOT, settings=None
):
    """Price ``count`` uniform parameter tuples.

    Parameters
    ----------
    ranges : dict, optional
        ``name -> (low, high)`` overriding :data:`DEFAULT_RANGES`.
    count : int
    seed : int or numpy.random.SeedSequence
    spot : float, default: 100.0
    settings : FftSettings, optional

    Returns
    -------
    Dataset
        Eight features named as :data:`FEATURES` and the target ``price``.

    Raises
    ------
    PricingError
        Carrying the tuple whose price is not a valid call price, or whose
        strike falls outside the FFT grid.
    """
    if count < 1:
        raise InputError(f"count must be >= 1, got {count}")
    merged = _check_ranges(ranges or {})
    settings = FftSettings() if settings is None else settings
    rng = np.random.default_rng(seed)
    low = np.array([lo for lo, _ in merged.values()])
    high = np.array([hi for _, hi in merged.values()])
    draws = rng.uniform(low, high, size=(count, len(merged)))

    prices = np.empty(count)
    for row, values in enumerate(draws):
        params = HestonParams(**dict(zip(merged, values)), spot=spot)
        try:
            price = heston_fft_price(params, settings)
        except PricingError:
            raise
        except (ConfigurationError, ArithmeticError, ValueError) as err:
            raise PricingError(str(err), params=params) from err
        if not 0.0 < price <= spot:
            raise PricingError(
                f"price {price:.6g} outside (0, {spot}]", params=params
            )
        prices[row] = price
    logger.info("priced %d Heston tuples", count)
    return Dataset(
        draws,
        prices,
        task=Task.REGRESSION,
        feature_names=FEATURES,
        target_name="price",
    )


def grid_header(seed, spot=DEFAULT_SPOT, settings=None):
    """Comment lines recorded at the top of a generated grid file."""
    settings = FftSettings() if settings is None else settings
    return (
        f"spot = {spot!r}",
        f"seed = {seed!r}",
        f"fft.alpha = {settings.alpha!r}",
        f"fft.n = {settings.n!r}",
        f"fft.eta = {settings.eta!r}",
    )
