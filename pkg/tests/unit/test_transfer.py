# Unless explicitly stated otherwise all files in this repository are licensed
# under the 3-clause BSD style license (see LICENSE).

import math

import numpy as np
import pytest

from bandedge.model.transfer import (
    bloch_trace,
    bloch_trace_derivative,
    cell_matrix,
    cell_matrix_derivative,
    determinant,
    layer_matrix,
    layer_matrix_derivative,
    prefix_matrices,
    propagate_to,
)
from bandedge.utils.errors import PositionOutOfCell
from tests.conftest import CANONICAL_MIDGAP


@pytest.mark.parametrize(
    "index, thickness, omega, expected",
    [
        (1.0, 1.0, 0.0, [[1.0, 1.0], [0.0, 1.0]]),
        (1.0, 1.0, math.pi, [[-1.0, 0.0], [0.0, -1.0]]),
        (2.0, 1.0 / 3.0, CANONICAL_MIDGAP, [[0.0, 2.0 / (3.0 * math.pi)], [-1.5 * math.pi, 0.0]]),
    ],
)
def test_layer_matrix(index, thickness, omega, expected):
    assert layer_matrix(index, thickness, omega) == pytest.approx(np.array(expected), abs=1e-12)


def test_layer_matrix_broadcasts():
    omegas = np.linspace(0.0, 5.0, 7)
    matrices = layer_matrix(1.5, 0.4, omegas)
    assert matrices.shape == (7, 2, 2)
    assert matrices[3] == pytest.approx(layer_matrix(1.5, 0.4, omegas[3]))


def test_cell_matrix_is_unimodular(asymmetric, high_contrast):
    omegas = np.linspace(0.0, 20.0, 501)
    for crystal in (asymmetric, high_contrast):
        assert np.max(np.abs(determinant(cell_matrix(crystal, omegas)) - 1.0)) < 1e-12


def test_cell_matrix_of_uniform_medium(uniform):
    assert cell_matrix(uniform, 2.3) == pytest.approx(layer_matrix(1.5, 1.0, 2.3))
    omegas = np.linspace(0.0, 10.0, 41)
    assert bloch_trace(uniform, omegas) == pytest.approx(np.cos(1.5 * omegas), abs=1e-14)


def test_cell_matrix_order(asymmetric):
    omega = 1.7
    expected = np.eye(2)
    for layer in asymmetric.layers:
        expected = layer_matrix(layer.index, layer.thickness, omega) @ expected
    assert cell_matrix(asymmetric, omega) == pytest.approx(expected, abs=1e-14)
    assert prefix_matrices(asymmetric, omega)[-1] == pytest.approx(expected, abs=1e-14)


def test_propagate_to(asymmetric):
    omega = 2.9
    assert propagate_to(asymmetric, omega, 0.0) == pytest.approx(np.eye(2))
    assert propagate_to(asymmetric, omega, asymmetric.period) == pytest.approx(cell_matrix(asymmetric, omega))
    # first layer only
    assert propagate_to(asymmetric, omega, 0.2) == pytest.approx(layer_matrix(1.0, 0.2, omega))
    # x and omega broadcast against each other
    assert propagate_to(asymmetric, np.array([[1.0], [2.0]]), np.array([0.1, 0.4, 0.9])).shape == (2, 3, 2, 2)


@pytest.mark.parametrize("x", [-0.01, 1.0 + 1e-9, 3.0])
def test_propagate_to_outside_cell(asymmetric, x):
    with pytest.raises(PositionOutOfCell):
        propagate_to(asymmetric, 1.0, x)


def test_canonical_midgap_trace(canonical):
    assert bloch_trace(canonical, CANONICAL_MIDGAP) == pytest.approx(-1.25, abs=1e-12)
    # both layers are half-wave at twice the midgap frequency
    assert cell_matrix(canonical, 2.0 * CANONICAL_MIDGAP) == pytest.approx(np.eye(2), abs=1e-12)


def test_layer_matrix_derivative_matches_finite_difference():
    h = 1e-6
    for omega in (0.3, 2.0, 7.5):
        numeric = (layer_matrix(2.5, 0.3, omega + h) - layer_matrix(2.5, 0.3, omega - h)) / (2 * h)
        assert layer_matrix_derivative(2.5, 0.3, omega) == pytest.approx(numeric, rel=1e-6, abs=1e-8)


def test_trace_derivative_matches_finite_difference(asymmetric, high_contrast):
    h = 1e-6
    omegas = np.array([0.5, 1.9, 4.2, 8.8])
    for crystal in (asymmetric, high_contrast):
        numeric = (bloch_trace(crystal, omegas + h) - bloch_trace(crystal, omegas - h)) / (2 * h)
        assert bloch_trace_derivative(crystal, omegas) == pytest.approx(numeric, rel=1e-6, abs=1e-8)
        matrix_numeric = (cell_matrix(crystal, 3.3 + h) - cell_matrix(crystal, 3.3 - h)) / (2 * h)
        assert cell_matrix_derivative(crystal, 3.3) == pytest.approx(matrix_numeric, rel=1e-6, abs=1e-8)


@pytest.mark.parametrize(
    "x1, x2, segment",
    [
        (0.05, 0.25, [(1.0, 0.2)]),
        (0.1, 0.45, [(1.0, 0.2), (3.0, 0.15)]),
        (0.6, 0.9, [(1.5, 0.3)]),
        (0.2, 0.7, [(1.0, 0.1), (3.0, 0.2), (1.5, 0.2)]),
    ],
)
def test_propagate_to_composes(asymmetric, x1, x2, segment):
    omegas = np.array([0.4, 2.9, 7.3])
    between = np.broadcast_to(np.eye(2), (3, 2, 2))
    for index, thickness in segment:
        between = layer_matrix(index, thickness, omegas) @ between
    composed = between @ propagate_to(asymmetric, omegas, x1)
    assert propagate_to(asymmetric, omegas, x2) == pytest.approx(composed, rel=1e-10, abs=1e-12)


@pytest.mark.parametrize("factor", [0.25, 1.7, 40.0])
def test_trace_is_scale_invariant(asymmetric, high_contrast, factor):
    omegas = np.random.default_rng(5).uniform(0.0, 12.0, 200)
    for crystal in (asymmetric, high_contrast):
        expected = bloch_trace(crystal, omegas)
        assert bloch_trace(crystal.scaled(factor), omegas / factor) == pytest.approx(expected, rel=1e-12, abs=1e-12)
