#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# This file is part of the
#   RKHS-Controls Project
# Copyright (c) 2022, RKHS-Controls Developers
# License: MIT
# Full Text: see the LICENSE file at the project root.

# =============================================================================
# IMPORTS
# =============================================================================

import logging

import numpy as np

import pytest as pt

from rkhs_controls import heston
from rkhs_controls.errors import ConfigurationError, InputError, PricingError

# =============================================================================
# CONSTANTS
# =============================================================================

MID_RANGE = dict(
    strike=100.0,
    maturity=1.0,
    rate=0.02,
    kappa=2.0,
    theta=0.6,
    rho=-0.6,
    sigma_v=0.06,
    v0=0.06,
)

#: Allowance for the time discretisation of the Euler scheme.
EULER_BIAS = 0.02


def params(**kwargs):
    return heston.HestonParams(**{**MID_RANGE, **kwargs})


# =============================================================================
# TESTS
# =============================================================================


class TestParams:
    @pt.mark.parametrize(
        "kwargs",
        [{"strike": 0.0}, {"maturity": -1.0}, {"v0": 0.0}, {"rho": 1.5}],
    )
    def test_invalid(self, kwargs):
        with pt.raises(InputError):
            params(**kwargs)

    def test_feller_warning(self, caplog):
        with caplog.at_level(logging.WARNING, logger="rkhs_controls.heston"):
            p = params(kappa=0.1, theta=0.01, sigma_v=1.0)
        assert not p.feller
        assert "Feller" in caplog.text

    def test_row_order(self):
        row = params().as_row()
        assert row.shape == (8,)
        assert row[0] == 100.0 and row[-1] == 0.06

    @pt.mark.parametrize(
        "kwargs", [{"alpha": 0.0}, {"eta": -0.1}, {"n": 7}, {"n": 2}]
    )
    def test_invalid_fft_settings(self, kwargs):
        with pt.raises(ConfigurationError):
            heston.FftSettings(**kwargs)


class TestBlackScholes:
    def test_at_the_money(self):
        price = heston.black_scholes_call(100.0, 100.0, 1.0, 0.0, 0.04)
        np.testing.assert_allclose(price, 7.965567455405804, rtol=1e-12)


class TestFftPrice:
    def test_deep_in_the_money(self):
        price = heston.heston_fft_price(params(strike=0.01))
        assert abs(price - 100.0) / 100.0 < 1e-3

    def test_deterministic_variance(self):
        p = params(theta=0.04, v0=0.04, sigma_v=1e-3, rho=0.0)
        expected = heston.black_scholes_call(100.0, 100.0, 1.0, 0.02, 0.04)
        assert abs(heston.heston_fft_price(p) - expected) < 1e-4

    def test_decreasing_in_strike(self):
        prices = [
            heston.heston_fft_price(params(strike=k))
            for k in np.linspace(50.0, 150.0, 50)
        ]
        assert np.all(np.diff(prices) < 1e-6)
        assert np.all(np.array(prices) > 0)

    def test_strike_outside_grid(self):
        with pt.raises(ConfigurationError):
            heston.heston_fft_price(params(strike=1e-7))

    def test_curve_shape(self):
        settings = heston.FftSettings(n=1024)
        k, prices = heston.fft_call_curve(params(), settings)
        assert k.shape == prices.shape == (1024,)
        np.testing.assert_allclose(np.diff(k), settings.log_strike_step)

    @pt.mark.slow
    def test_matches_monte_carlo(self):
        p = params()
        price, error = heston.heston_mc_price(p, 200_000, 500, seed=1)
        fft = heston.heston_fft_price(p)
        assert abs(fft - price) < 3 * error + EULER_BIAS


class TestMonteCarlo:
    def test_deterministic_variance(self):
        p = params(theta=0.04, v0=0.04, sigma_v=1e-4, rho=0.0)
        price, error = heston.heston_mc_price(p, 50_000, 20, seed=2)
        expected = heston.black_scholes_call(100.0, 100.0, 1.0, 0.02, 0.04)
        assert abs(price - expected) < 3 * error

    def test_martingale(self):
        p = params(rate=0.0, strike=1e-8)
        price, error = heston.heston_mc_price(p, 50_000, 50, seed=3)
        assert abs(price - 100.0) < 3 * error

    def test_error_scaling(self):
        p = params()
        _, single = heston.heston_mc_price(p, 20_000, 20, seed=4)
        _, double = heston.heston_mc_price(p, 40_000, 20, seed=4)
        ratio = double / single * np.sqrt(2.0)
        assert 0.8 <= ratio <= 1.2

    def test_reproducible(self):
        first = heston.heston_mc_price(params(), 1000, 10, seed=5)
        assert first == heston.heston_mc_price(params(), 1000, 10, seed=5)

    def test_invalid_sizes(self):
        with pt.raises(InputError):
            heston.heston_mc_price(params(), 0, 10, seed=0)


class TestGrid:
    def test_inside_box(self):
        dataset = heston.generate_heston_grid(count=40, seed=6)
        assert dataset.inputs.shape == (40, 8)
        assert dataset.feature_names == heston.FEATURES
        assert dataset.target_name == "price"
        for col, (low, high) in enumerate(heston.DEFAULT_RANGES.values()):
            assert np.all(dataset.inputs[:, col] >= low)
            assert np.all(dataset.inputs[:, col] <= high)
        assert np.all(dataset.targets > 0)
        assert np.all(dataset.targets <= heston.DEFAULT_SPOT)

    def test_reproducible(self):
        first = heston.generate_heston_grid(count=5, seed=7)
        second = heston.generate_heston_grid(count=5, seed=7)
        np.testing.assert_array_equal(first.targets, second.targets)

    def test_ranges_override(self):
        dataset = heston.generate_heston_grid(
            {"strike": (100.0, 100.0)}, count=3, seed=8
        )
        np.testing.assert_array_equal(dataset.inputs[:, 0], 100.0)

    def test_unknown_range(self):
        with pt.raises(ConfigurationError):
            heston.generate_heston_grid({"volatility": (0, 1)}, count=1)

    def test_pricing_error_carries_params(self, monkeypatch):
        def broken(p, settings=None):
            raise FloatingPointError("overflow")

        monkeypatch.setattr(heston, "heston_fft_price", broken)
        with pt.raises(PricingError) as err:
            heston.generate_heston_grid(count=2, seed=9)
        assert isinstance(err.value.params, heston.HestonParams)
        assert "overflow" in str(err.value)

    def test_off_grid_strike_carries_params(self):
        with pt.raises(PricingError) as err:
            heston.generate_heston_grid(
                {"strike": (1e-7, 1e-7)}, count=1, seed=12
            )
        assert err.value.params.strike == 1e-7
        assert "outside the FFT grid" in str(err.value)
        assert isinstance(err.value.__cause__, ConfigurationError)

    def test_header(self):
        lines = heston.grid_header(3)
        assert "spot = 100.0" in lines
        assert "seed = 3" in lines

    @pt.mark.slow
    def test_rows_match_monte_carlo(self):
        dataset = heston.generate_heston_grid(count=10, seed=10)
        for row, price in zip(dataset.inputs, dataset.targets):
            p = heston.HestonParams(*row)
            mc, error = heston.heston_mc_price(p, 200_000, 500, seed=11)
            assert abs(mc - price) < 3 * error + EULER_BIAS
