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

import numpy as np

import pytest as pt

from rkhs_controls import costs, propagation
from rkhs_controls.errors import DivergenceError, InputError
from rkhs_controls.optimize import evaluate_objective
from rkhs_controls.propagation import ControlMatrix

# =============================================================================
# HELPERS
# =============================================================================


def numeric_gradient(control, system, cost, batch, step=1e-5):
    control = np.asarray(control, dtype=float)
    grad = np.zeros_like(control)
    for idx in np.ndindex(*control.shape):
        shift = np.zeros_like(control)
        shift[idx] = step
        plus, _, _ = evaluate_objective(
            control + shift, system, cost, batch, False
        )
        minus, _, _ = evaluate_objective(
            control - shift, system, cost, batch, False
        )
        grad[idx] = (plus - minus) / (2 * step)
    return grad


def numeric_jacobian(control, system, batch, t, step=1e-5):
    control = np.asarray(control, dtype=float)
    q, horizon = control.shape
    jac = np.zeros((batch.size, q * horizon))
    for i in range(q):
        for s in range(horizon):
            shift = np.zeros_like(control)
            shift[i, s] = step
            values = [
                propagation.forward_solve(
                    control + sign * shift,
                    system.bank,
                    system.support,
                    system.offset,
                ).values(batch.cross_gram)[t]
                for sign in (1, -1)
            ]
            jac[:, i * horizon + s] = (values[0] - values[1]) / (2 * step)
    return jac


# =============================================================================
# TESTS
# =============================================================================


class TestControlMatrix:
    def test_flat_is_row_major(self):
        control = ControlMatrix([[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]])
        np.testing.assert_array_equal(control.flat(), [1, 2, 3, 4, 5, 6])
        assert control.q == 2 and control.horizon == 3

    def test_shifted(self):
        control = ControlMatrix.zeros(2, 2).shifted([1.0, 2.0, 3.0, 4.0])
        np.testing.assert_array_equal(control.entries, [[1, 2], [3, 4]])

    def test_non_finite_rejected(self):
        with pt.raises(InputError):
            ControlMatrix([[0.0, np.inf]])

    def test_empty_horizon_rejected(self):
        with pt.raises(InputError):
            ControlMatrix(np.zeros((2, 0)))


class TestForward:
    def test_scalar_example(self, scalar_system):
        system = scalar_system()
        traj = propagation.forward_solve(
            [[0.5, 0.5]], system.bank, system.support
        )
        np.testing.assert_allclose(traj.states.ravel(), [1.0, 1.5, 2.25])
        h_final = propagation.h_function(traj, 2)
        np.testing.assert_allclose(h_final(0.0), 2.25)

    def test_zero_control_is_constant(self, random_instance):
        system, control, batch = random_instance(1)
        traj = propagation.forward_solve(
            np.zeros_like(control), system.bank, system.support, 0.7
        )
        np.testing.assert_array_equal(traj.states, 0.7)
        np.testing.assert_array_equal(traj.values(batch.cross_gram), 0.7)

    def test_states_are_values_at_support(self, random_instance):
        system, control, _ = random_instance(2)
        traj = propagation.forward_solve(control, system.bank, system.support)
        values = traj.values(system.support.gram)
        np.testing.assert_allclose(values, traj.states, rtol=1e-12)
        for t in range(traj.horizon + 1):
            np.testing.assert_allclose(
                propagation.h_function(traj, t)(system.support.points),
                traj.states[t],
                rtol=1e-12,
            )

    def test_product_form(self, random_instance):
        system, control, _ = random_instance(3)
        bank, support = system.bank, system.support
        traj = propagation.forward_solve(control, bank, support)
        m = support.size
        expected = np.ones(m)
        for t in range(control.shape[1]):
            step = np.eye(m) + support.gram @ bank.combination_matrix(
                control[:, t]
            ) / m
            expected = step @ expected
        np.testing.assert_allclose(traj.states[-1], expected, rtol=1e-11)

    def test_divergence(self, scalar_system):
        system = scalar_system(3)
        with pt.raises(DivergenceError) as err:
            propagation.forward_solve(
                [[1e7, 1e7, 1e7]], system.bank, system.support
            )
        assert err.value.step == 2

    def test_bank_mismatch(self, random_instance):
        system, _, _ = random_instance(4)
        with pt.raises(InputError):
            propagation.forward_solve(
                np.zeros((3, 4)), system.bank, system.support
            )


class TestAdjoint:
    def test_product_representation(self, random_instance, rng):
        system, control, _ = random_instance(5, m=4)
        bundle = propagation.adjoint_transitions(
            control, system.bank, system.support
        )
        horizon, m = control.shape[1], system.support.size
        terminal = rng.normal(size=m)
        sources = rng.normal(size=(horizon, m))
        costate = propagation.adjoint_solve(bundle, terminal, sources)

        for t in range(horizon + 1):
            expected = bundle.terminal_products[t] @ terminal
            partial = np.eye(m)
            for s in range(t, horizon):
                expected = expected + partial @ sources[s]
                partial = partial @ bundle.transitions[s]
            np.testing.assert_allclose(
                costate.costates[t], expected, rtol=1e-10, atol=1e-12
            )

    def test_inverted_product_representation(self, random_instance, rng):
        system, control, _ = random_instance(8, m=3, horizon=4)
        bundle = propagation.adjoint_transitions(
            control, system.bank, system.support
        )
        horizon, m = control.shape[1], system.support.size
        terminal = rng.normal(size=m)
        sources = rng.normal(size=(horizon, m))
        costate = propagation.adjoint_solve(bundle, terminal, sources)

        for t in range(horizon + 1):
            inner = terminal.copy()
            for s in range(t, horizon):
                inner = inner + np.linalg.solve(
                    bundle.terminal_products[s], sources[s]
                )
            np.testing.assert_allclose(
                costate.costates[t],
                bundle.terminal_products[t] @ inner,
                rtol=1e-8,
                atol=1e-9,
            )

    def test_matrix_free_agrees(self, random_instance, rng):
        system, control, _ = random_instance(6)
        traj = propagation.forward_solve(control, system.bank, system.support)
        bundle = propagation.adjoint_transitions(
            control, system.bank, system.support, with_products=False
        )
        assert bundle.terminal_products is None
        m, horizon = system.support.size, control.shape[1]
        terminal = rng.normal(size=m)
        sources = rng.normal(size=(horizon, m))
        np.testing.assert_allclose(
            propagation.backward_costates(traj, terminal, sources).costates,
            propagation.adjoint_solve(bundle, terminal, sources).costates,
            rtol=1e-12,
            atol=1e-13,
        )

    def test_terminal_shape(self, random_instance):
        system, control, _ = random_instance(7)
        bundle = propagation.adjoint_transitions(
            control, system.bank, system.support
        )
        with pt.raises(InputError):
            propagation.adjoint_solve(bundle, np.zeros(2))


class TestGradient:
    @pt.mark.parametrize("seed", range(10, 15))
    @pt.mark.parametrize("running", [False, True])
    def test_squared_error(self, random_instance, seed, running):
        system, control, batch = random_instance(seed)
        cost = costs.CostModel(
            "squared-error",
            running_target=costs.track_batch_targets if running else None,
            control_penalty=0.3 if running else 0.0,
        )
        _, grad, _ = evaluate_objective(control, system, cost, batch)
        np.testing.assert_allclose(
            grad,
            numeric_gradient(control, system, cost, batch),
            rtol=1e-5,
            atol=1e-8,
        )

    @pt.mark.parametrize("seed", range(20, 25))
    @pt.mark.parametrize("running", [False, True])
    def test_cross_entropy(self, random_instance, seed, running):
        system, control, batch = random_instance(seed, binary=True)
        cost = costs.CostModel(
            "cross-entropy",
            running_target=costs.track_batch_targets if running else None,
            control_penalty=0.3 if running else 0.0,
        )
        _, grad, _ = evaluate_objective(control, system, cost, batch)
        np.testing.assert_allclose(
            grad,
            numeric_gradient(control, system, cost, batch),
            rtol=1e-5,
            atol=1e-8,
        )

    def test_scalar_gradient_at_zero(self, scalar_batch):
        system, batch = scalar_batch(0.0)
        cost = costs.CostModel("squared-error")
        value, grad, _ = evaluate_objective(
            np.zeros((1, 2)), system, cost, batch
        )
        assert value == 1.0
        np.testing.assert_allclose(grad, [[2.0, 2.0]], rtol=1e-14)

    def test_scalar_hessian(self, scalar_batch):
        system, batch = scalar_batch(0.0)
        cost = costs.CostModel("squared-error")
        step = 1e-5
        hessian = np.zeros((2, 2))
        for j in range(2):
            shift = np.zeros((1, 2))
            shift[0, j] = step
            plus = evaluate_objective(shift, system, cost, batch)[1]
            minus = evaluate_objective(-shift, system, cost, batch)[1]
            hessian[:, j] = (plus - minus).ravel() / (2 * step)
        np.testing.assert_allclose(
            hessian, [[2.0, 4.0], [4.0, 2.0]], atol=1e-6
        )
        np.testing.assert_allclose(np.linalg.det(hessian), -12.0, atol=1e-5)

    def test_gradient_is_jacobian_transpose(self, random_instance):
        system, control, batch = random_instance(30)
        cost = costs.CostModel("squared-error")
        _, grad, traj = evaluate_objective(control, system, cost, batch)
        bundle = propagation.adjoint_transitions(
            control, system.bank, system.support
        )
        jac = propagation.control_jacobian(
            traj, bundle, system.bank, batch.inputs, traj.horizon
        )
        residual = traj.terminal_values(batch.cross_gram) - batch.targets
        np.testing.assert_allclose(
            grad.ravel(),
            2.0 * jac.T @ residual / batch.size,
            rtol=1e-10,
            atol=1e-12,
        )


class TestJacobian:
    @pt.mark.parametrize("seed", range(40, 45))
    @pt.mark.parametrize("t", [1, 2, 4])
    def test_finite_differences(self, random_instance, seed, t):
        system, control, batch = random_instance(seed)
        traj = propagation.forward_solve(control, system.bank, system.support)
        bundle = propagation.adjoint_transitions(
            control, system.bank, system.support
        )
        jac = propagation.control_jacobian(
            traj, bundle, system.bank, batch.inputs, t
        )
        assert jac.shape == (batch.size, 2 * 4)
        np.testing.assert_allclose(
            jac,
            numeric_jacobian(control, system, batch, t),
            rtol=1e-5,
            atol=1e-9,
        )

    @pt.mark.parametrize("t", [0, 1, 3])
    def test_future_controls_have_no_effect(self, random_instance, t):
        system, control, batch = random_instance(41)
        traj = propagation.forward_solve(control, system.bank, system.support)
        bundle = propagation.adjoint_transitions(
            control, system.bank, system.support
        )
        jac = propagation.control_jacobian(
            traj, bundle, system.bank, batch.inputs, t
        )
        horizon = control.shape[1]
        for i in range(2):
            for s in range(t, horizon):
                assert np.all(jac[:, i * horizon + s] == 0.0)

    def test_cached_products_agree(self, random_instance):
        system, control, batch = random_instance(42)
        traj = propagation.forward_solve(control, system.bank, system.support)
        cached = propagation.adjoint_transitions(
            control, system.bank, system.support
        )
        bare = propagation.adjoint_transitions(
            control, system.bank, system.support, with_products=False
        )
        np.testing.assert_allclose(
            propagation.control_jacobian(
                traj, cached, system.bank, batch.inputs, 4
            ),
            propagation.control_jacobian(
                traj, bare, system.bank, batch.inputs, 4
            ),
            rtol=1e-12,
            atol=1e-14,
        )

    def test_time_out_of_range(self, random_instance):
        system, control, batch = random_instance(43)
        traj = propagation.forward_solve(control, system.bank, system.support)
        bundle = propagation.adjoint_transitions(
            control, system.bank, system.support
        )
        with pt.raises(InputError):
            propagation.control_jacobian(
                traj, bundle, system.bank, batch.inputs, 5
            )
