# Unless explicitly stated otherwise all files in this repository are licensed
# under the 3-clause BSD style license (see LICENSE).

"""Transfer-matrix algebra for E'' + eps(x) omega^2 E = 0 in the (E, E') basis.

Every function broadcasts over array frequencies; matrices come back with shape
``omega.shape + (2, 2)``.
"""

from __future__ import annotations
from typing import Tuple, Union

import numpy as np

from bandedge.model.crystal import LayeredCrystal
from bandedge.utils.errors import PositionOutOfCell

ArrayLike = Union[float, np.ndarray]


def _sin_over_k(k: np.ndarray, d: np.ndarray) -> np.ndarray:
    # sin(k d) / k, continuous through k = 0 where it equals d
    return d * np.sinc(k * d / np.pi)


def _stack(m11, m12, m21, m22) -> np.ndarray:
    return np.stack([np.stack([m11, m12], axis=-1), np.stack([m21, m22], axis=-1)], axis=-2)


def _identity(shape: Tuple[int, ...]) -> np.ndarray:
    return np.broadcast_to(np.eye(2), shape + (2, 2)).copy()


def layer_matrix(index: ArrayLike, thickness: ArrayLike, omega: ArrayLike) -> np.ndarray:
    n, d, w = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (index, thickness, omega)))
    k = n * w
    phase = k * d
    cos = np.cos(phase)
    return _stack(cos, _sin_over_k(k, d), -k * np.sin(phase), cos)


def layer_matrix_derivative(index: ArrayLike, thickness: ArrayLike, omega: ArrayLike) -> np.ndarray:
    """Closed-form d/domega of layer_matrix (omega > 0)."""
    n, d, w = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (index, thickness, omega)))
    k = n * w
    phase = k * d
    sin, cos = np.sin(phase), np.cos(phase)
    d11 = -n * d * sin
    # d/dw [sin(n w d) / (n w)] = (d / w) * (cos(phase) - sin(phase) / phase)
    d12 = d / w * (cos - np.sinc(phase / np.pi))
    d21 = -n * sin - k * n * d * cos
    return _stack(d11, d12, d21, d11)


def _layer_matrices(crystal: LayeredCrystal, omega: np.ndarray) -> list:
    return [layer_matrix(layer.index, layer.thickness, omega) for layer in crystal.layers]


def prefix_matrices(crystal: LayeredCrystal, omega: ArrayLike) -> np.ndarray:
    """Transfer matrices from x = 0 to every layer start, shape (N + 1,) + omega.shape + (2, 2)."""
    w = np.asarray(omega, dtype=float)
    result = [_identity(w.shape)]
    for matrix in _layer_matrices(crystal, w):
        result.append(matrix @ result[-1])
    return np.stack(result)


def cell_matrix(crystal: LayeredCrystal, omega: ArrayLike) -> np.ndarray:
    w = np.asarray(omega, dtype=float)
    total = _identity(w.shape)
    for matrix in _layer_matrices(crystal, w):
        total = matrix @ total
    return total


def propagate_to(crystal: LayeredCrystal, omega: ArrayLike, x: ArrayLike) -> np.ndarray:
    """Transfer matrix from x = 0 to x, broadcasting omega against x."""
    w, pos = np.broadcast_arrays(np.asarray(omega, dtype=float), np.asarray(x, dtype=float))
    if np.any(pos < 0.0) or np.any(pos > crystal.period):
        bad = pos[(pos < 0.0) | (pos > crystal.period)].flat[0]
        raise PositionOutOfCell(float(bad), crystal.period)

    total = _identity(w.shape)
    for layer, start in zip(crystal.layers, crystal.boundaries[:-1]):
        # Layers past x contribute a zero-length propagation, i.e. the identity
        length = np.clip(pos - start, 0.0, layer.thickness)
        total = layer_matrix(layer.index, length, w) @ total
    return total


def half_trace(matrix: np.ndarray) -> ArrayLike:
    trace = 0.5 * (matrix[..., 0, 0] + matrix[..., 1, 1])
    return float(trace) if np.ndim(trace) == 0 else trace


def determinant(matrix: np.ndarray) -> ArrayLike:
    det = matrix[..., 0, 0] * matrix[..., 1, 1] - matrix[..., 0, 1] * matrix[..., 1, 0]
    return float(det) if np.ndim(det) == 0 else det


def bloch_trace(crystal: LayeredCrystal, omega: ArrayLike) -> ArrayLike:
    """Bloch half-trace Delta(omega); cos(K period) = Delta."""
    return half_trace(cell_matrix(crystal, omega))


def cell_matrix_derivative(crystal: LayeredCrystal, omega: ArrayLike) -> np.ndarray:
    """Product rule: dT = sum_j M_N...M_{j+1} dM_j M_{j-1}...M_1."""
    w = np.asarray(omega, dtype=float)
    matrices = _layer_matrices(crystal, w)
    prefixes = [_identity(w.shape)]
    for matrix in matrices:
        prefixes.append(matrix @ prefixes[-1])

    derivative = np.zeros(w.shape + (2, 2))
    suffix = _identity(w.shape)
    for j in range(len(matrices) - 1, -1, -1):
        layer = crystal.layers[j]
        d_layer = layer_matrix_derivative(layer.index, layer.thickness, w)
        derivative += suffix @ d_layer @ prefixes[j]
        suffix = suffix @ matrices[j]
    return derivative


def bloch_trace_derivative(crystal: LayeredCrystal, omega: ArrayLike) -> ArrayLike:
    return half_trace(cell_matrix_derivative(crystal, omega))
