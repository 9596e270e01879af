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

from rkhs_controls import data
from rkhs_controls.errors import InputError, SchemaError
from rkhs_controls.rkhs import KernelSpec

# =============================================================================
# TESTS
# =============================================================================


class TestGenerators:
    def test_toy_sine(self):
        dataset = data.toy_sine(200, seed=1)
        assert dataset.inputs.shape == (200, 1)
        assert np.all(np.abs(dataset.inputs) <= np.pi)
        np.testing.assert_allclose(
            dataset.targets, np.sin(dataset.inputs[:, 0]), rtol=1e-15
        )

    def test_toy_linear3(self):
        dataset = data.toy_linear3(100, seed=2)
        x = dataset.inputs
        assert x.shape == (100, 3) and np.all(np.abs(x) <= 3.0)
        np.testing.assert_allclose(
            dataset.targets,
            0.5 * x[:, 0] - 0.2 * x[:, 1] + 0.1 * x[:, 2],
            rtol=1e-12,
            atol=1e-15,
        )

    def test_reproducible(self):
        first, second = data.toy_sine(10, 7), data.toy_sine(10, 7)
        np.testing.assert_array_equal(first.inputs, second.inputs)

    def test_two_gaussians(self):
        dataset = data.two_gaussians(100, d=4, separation=2.0, seed=3)
        assert dataset.task is data.Task.BINARY_CLASSIFICATION
        assert dataset.inputs.shape == (100, 4)
        assert dataset.targets.sum() == 50
        ones = dataset.inputs[dataset.targets == 1].mean(axis=0)
        zeros = dataset.inputs[dataset.targets == 0].mean(axis=0)
        assert np.all(ones > zeros)


class TestDataset:
    def test_default_names(self):
        dataset = data.Dataset(np.zeros((3, 2)), [1.0, 2.0, 3.0])
        assert dataset.feature_names == ("feature_0", "feature_1")

    def test_size_mismatch(self):
        with pt.raises(InputError):
            data.Dataset(np.zeros((3, 2)), [1.0, 2.0])

    def test_non_binary_classification(self):
        with pt.raises(SchemaError):
            data.Dataset(np.zeros((2, 1)), [0.0, 2.0], "binary-classification")

    def test_standardized(self, rng):
        dataset = data.Dataset(
            rng.normal(3.0, 2.0, size=(50, 2)), np.zeros(50)
        ).standardized()
        np.testing.assert_allclose(dataset.inputs.mean(axis=0), 0, atol=1e-12)
        np.testing.assert_allclose(dataset.inputs.std(axis=0), 1, rtol=1e-12)
        assert dataset.feature_stats is not None

    def test_constant_feature_keeps_unit_std(self):
        stats = data.FeatureStats.fit([[1.0, 2.0], [1.0, 4.0]])
        np.testing.assert_array_equal(stats.std, [1.0, 1.0])

    def test_scaled_targets(self):
        dataset = data.Dataset(np.zeros((2, 1)), [100.0, 50.0])
        np.testing.assert_array_equal(
            dataset.scaled_targets(100.0).targets, [1.0, 0.5]
        )


class TestSplitAndSupport:
    def test_split_is_disjoint(self):
        dataset = data.toy_sine(50, 0)
        train, test = data.train_test_split(dataset, 30, 20, seed=4)
        rows = np.concatenate([train.inputs[:, 0], test.inputs[:, 0]])
        assert np.unique(rows).size == 50

    def test_split_too_large(self):
        with pt.raises(InputError):
            data.train_test_split(data.toy_sine(10, 0), 8, 5, seed=0)

    def test_support_is_subset(self):
        train = data.toy_sine(40, 1)
        support = data.sample_support(train, 10, 5, KernelSpec(1.0))
        assert support.size == 10
        for point in support.points:
            assert np.any(np.all(train.inputs == point, axis=1))

    def test_support_skips_duplicates(self):
        inputs = np.array([[0.0], [0.0], [0.0], [1.0], [2.0]])
        train = data.Dataset(inputs, np.zeros(5))
        support = data.sample_support(train, 3, 0, KernelSpec(1.0))
        np.testing.assert_array_equal(
            np.sort(support.points[:, 0]), [0.0, 1.0, 2.0]
        )

    def test_support_too_few_distinct(self):
        train = data.Dataset(np.array([[0.0], [0.0], [1.0]]), np.zeros(3))
        with pt.raises(InputError):
            data.sample_support(train, 3, 0, KernelSpec(1.0))

    def test_support_depends_on_seed(self):
        train = data.toy_sine(100, 1)
        first = data.sample_support(train, 5, 1, KernelSpec(1.0))
        second = data.sample_support(train, 5, 2, KernelSpec(1.0))
        assert not np.array_equal(first.points, second.points)


class TestCsv:
    def test_round_trip(self, tmp_path):
        dataset = data.toy_linear3(20, 3)
        path = data.write_csv(dataset, tmp_path / "d.csv", ["made by test"])
        assert path.read_text().startswith("# made by test\n")
        loaded = data.load_csv(path, "target")
        np.testing.assert_array_equal(loaded.inputs, dataset.inputs)
        np.testing.assert_array_equal(loaded.targets, dataset.targets)
        assert loaded.feature_names == dataset.feature_names

    def test_ignored_columns(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("EventId,a,b,Weight,Label\n1,0.5,1.5,3,s\n2,1,2,3,b\n")
        loaded = data.load_csv(
            path, "Label", task="binary-classification", positive_label="s"
        )
        assert loaded.feature_names == ("a", "b")
        np.testing.assert_array_equal(loaded.targets, [1.0, 0.0])

    def test_feature_selection(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("a,b,y\n1,2,3\n4,5,6\n")
        loaded = data.load_csv(path, "y", ["b"])
        np.testing.assert_array_equal(loaded.inputs, [[2.0], [5.0]])

    def test_missing_column(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("a,b\n1,2\n")
        with pt.raises(SchemaError):
            data.load_csv(path, "y")

    def test_non_numeric_row(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("a,y\n1,2\nfoo,3\n")
        with pt.raises(SchemaError, match="row 1"):
            data.load_csv(path, "y")

    def test_non_binary_label(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("a,y\n1,0\n2,2\n")
        with pt.raises(SchemaError, match="row 1"):
            data.load_csv(path, "y", task="binary-classification")

    def test_empty_file(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("")
        with pt.raises(InputError):
            data.load_csv(path, "y")

    def test_missing_file(self, tmp_path):
        with pt.raises(InputError, match="cannot read"):
            data.load_csv(tmp_path / "missing.csv", "y")

    def test_unwritable_target(self, tmp_path):
        (tmp_path / "out").write_text("")
        with pt.raises(InputError, match="cannot write"):
            data.write_csv(data.toy_sine(4, 1), tmp_path / "out" / "d.csv")

    def test_header_only(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("a,y\n")
        with pt.raises(InputError):
            data.load_csv(path, "y")

    def test_standardize(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("a,y\n1,0\n3,1\n")
        loaded = data.load_csv(path, "y", standardize=True)
        np.testing.assert_allclose(loaded.inputs[:, 0], [-1.0, 1.0])
        np.testing.assert_array_equal(loaded.feature_stats.mean, [2.0])
