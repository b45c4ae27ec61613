# Unless explicitly stated otherwise all files in this repository are licensed
# under the 3-clause BSD style license (see LICENSE).

"""Bloch modes, the local density of states and the nodes of band-edge standing waves.

Modes are normalized with the permittivity weight, (1/period) * integral of
eps(x) |E(x)|^2 over a cell equals 1, so that the eps-weighted cell average of
the LDOS is the DOS.
"""

from __future__ import annotations
import logging
import math
import dataclasses
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import bisect, minimize_scalar

from bandedge.constants import (
    DEGENERACY_TOLERANCE,
    GAUSS_ORDER,
    LOGGER_NAME,
    NODE_SCAN_POINTS,
    NODE_XTOL,
    ROOT_RTOL,
)
from bandedge.model.crystal import LayeredCrystal
from bandedge.model.spectrum import (
    Band,
    BandEdge,
    _K_samples,
    band_of,
    find_bands,
    invert_band,
    on_touch,
    touch_neighbours,
)
from bandedge.model.transfer import bloch_trace_derivative, cell_matrix, half_trace, prefix_matrices, propagate_to
from bandedge.utils.errors import DegenerateCell, DegenerateGap, InGap

log = logging.getLogger(LOGGER_NAME)

ArrayLike = Union[float, np.ndarray]

# Profiles whose |E| varies by less than this fraction have no extrema
FLAT_PROFILE = 1e-9


@dataclass(frozen=True)
class BlochMode:
    crystal: LayeredCrystal
    omega: float
    K: float
    eigenvalue: complex
    coefficients: np.ndarray = dataclasses.field(compare=False)
    dK_domega: float = math.nan
    band_index: Optional[int] = None

    @property
    def is_real(self) -> bool:
        return bool(np.all(np.abs(self.coefficients.imag) <= 1e-10 * np.max(np.abs(self.coefficients))))

    def state(self, x: ArrayLike) -> np.ndarray:
        """(E, E') at x, continued outside the cell with the Bloch factor."""
        pos = np.asarray(x, dtype=float)
        cells = np.floor(pos / self.crystal.period)
        reduced = np.clip(pos - cells * self.crystal.period, 0.0, self.crystal.period)
        local = (propagate_to(self.crystal, self.omega, reduced) @ self.coefficients[:, None])[..., 0]
        return local * np.asarray(self.eigenvalue**cells)[..., None]

    def field(self, x: ArrayLike) -> Union[complex, np.ndarray]:
        value = self.state(x)[..., 0]
        return complex(value) if value.ndim == 0 else value

    def intensity(self, x: ArrayLike) -> ArrayLike:
        value = np.abs(self.state(x)[..., 0]) ** 2
        return float(value) if value.ndim == 0 else value

    def bloch_residual(self) -> float:
        start = self.state(0.0)
        end = (cell_matrix(self.crystal, self.omega) @ self.coefficients[:, None])[:, 0]
        return float(np.linalg.norm(end - self.eigenvalue * start) / np.linalg.norm(start))


@dataclass(frozen=True)
class ModeExtrema:
    nodes: List[float]
    soft_minima: List[float]
    maxima: List[float]


def _eigenvectors(matrix: np.ndarray, eigenvalue: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Eigenvectors from the larger-norm row of (T - lambda I), plus a degeneracy mask."""
    a, b = matrix[..., 0, 0], matrix[..., 0, 1]
    c, d = matrix[..., 1, 0], matrix[..., 1, 1]
    first = np.hypot(np.abs(a - eigenvalue), np.abs(b))
    second = np.hypot(np.abs(c), np.abs(d - eigenvalue))
    use_first = (first >= second)[..., None]
    vectors = np.where(
        use_first,
        np.stack([b, eigenvalue - a], axis=-1),
        np.stack([eigenvalue - d, c], axis=-1),
    ).astype(complex)
    scale = np.linalg.norm(matrix, axis=(-2, -1))
    degenerate = np.maximum(first, second) < DEGENERACY_TOLERANCE * scale
    return vectors, degenerate


def _layer_energies(crystal: LayeredCrystal, omega: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    """(1/period) eps_j * integral of |E|^2 over each layer, closed form; shape (N,) + omega.shape."""
    states = (prefix_matrices(crystal, omega) @ vectors[..., None])[..., 0]
    energies = []
    for j, layer in enumerate(crystal.layers):
        value, slope = states[j][..., 0], states[j][..., 1]
        k = layer.index * omega
        d = layer.thickness
        # E(s) = value cos(ks) + slope sin(ks)/k on [0, d]
        half_sinc = 0.5 * d * np.sinc(2.0 * k * d / np.pi)
        cos_sq = 0.5 * d + half_sinc
        sin_sq_over_k2 = (0.5 * d - half_sinc) / k**2
        sin_cos_over_k = 0.5 * np.sin(k * d) * d * np.sinc(k * d / np.pi) / k
        integral = (
            np.abs(value) ** 2 * cos_sq
            + np.abs(slope) ** 2 * sin_sq_over_k2
            + 2.0 * np.real(value * np.conj(slope)) * sin_cos_over_k
        )
        energies.append(layer.permittivity * integral / crystal.period)
    return np.stack(energies)


def _modes(crystal: LayeredCrystal, omega: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized normalized Bloch data: (dK/domega, eigenvalue, coefficients, in_band)."""
    matrix = cell_matrix(crystal, omega)
    trace = np.asarray(half_trace(matrix))
    in_band = np.abs(trace) < 1.0
    t = np.where(in_band, trace, 0.0)
    sine = np.sqrt((1.0 - t) * (1.0 + t))
    eigenvalue = t + 1j * sine

    vectors, degenerate = _eigenvectors(matrix, eigenvalue)
    degenerate &= in_band
    if np.any(degenerate):
        if not crystal.is_homogeneous:
            raise DegenerateCell(float(np.asarray(omega)[degenerate].flat[0]))
        plane_wave = np.stack([np.ones_like(omega), 1j * crystal.layers[0].index * omega], axis=-1)
        vectors = np.where(degenerate[..., None], plane_wave, vectors)

    safe_omega = np.where(in_band, omega, 1.0)
    vectors = np.where(in_band[..., None], vectors, np.array([1.0, 0.0]))
    energy = np.sum(_layer_energies(crystal, safe_omega, vectors), axis=0)
    vectors = vectors / np.sqrt(energy)[..., None]

    slope = np.asarray(bloch_trace_derivative(crystal, safe_omega))
    dK = np.where(in_band, -slope / (crystal.period * np.where(in_band, sine, 1.0)), 0.0)
    return dK, eigenvalue, vectors, in_band


def bloch_mode(crystal: LayeredCrystal, omega: float, bands: Optional[Sequence[Band]] = None) -> BlochMode:
    w = np.asarray(float(omega))
    dK, eigenvalue, vectors, in_band = _modes(crystal, w)
    if not in_band:
        raise InGap(float(omega), float(half_trace(cell_matrix(crystal, w))))
    band = band_of(bands, float(omega)) if bands is not None else None
    return BlochMode(
        crystal=crystal,
        omega=float(omega),
        K=float(np.angle(eigenvalue)) / crystal.period,
        eigenvalue=complex(eigenvalue),
        coefficients=vectors,
        dK_domega=float(dK),
        band_index=band.index if band is not None else None,
    )


def standing_wave(crystal: LayeredCrystal, omega: float, parity: int, band_index: Optional[int] = None) -> BlochMode:
    """Real mode with Bloch eigenvalue `parity` (+1 or -1) at an edge frequency."""
    matrix = cell_matrix(crystal, float(omega))
    vector, degenerate = _eigenvectors(matrix, np.asarray(float(parity)))
    if degenerate:
        raise DegenerateGap(float(omega))
    vector = vector.real.astype(complex)
    energy = float(np.sum(_layer_energies(crystal, np.asarray(float(omega)), vector)))
    return BlochMode(
        crystal=crystal,
        omega=float(omega),
        K=0.0 if parity == 1 else math.pi / crystal.period,
        eigenvalue=complex(parity),
        coefficients=vector / math.sqrt(energy),
        band_index=band_index,
    )


def edge_mode(crystal: LayeredCrystal, edge: BandEdge) -> BlochMode:
    return standing_wave(crystal, edge.omega_c, edge.parity, band_index=edge.band_index)


def layer_energies(mode: BlochMode) -> np.ndarray:
    """Share of the eps-weighted normalization carried by each layer."""
    return _layer_energies(mode.crystal, np.asarray(mode.omega), mode.coefficients)


def normalization_integral(mode: BlochMode, quadrature: bool = False, order: int = GAUSS_ORDER) -> float:
    """(1/period) * integral of eps |E|^2; per-layer Gauss-Legendre when `quadrature` is set."""
    if not quadrature:
        return float(np.sum(layer_energies(mode)))

    nodes, weights = np.polynomial.legendre.leggauss(order)
    total = 0.0
    for layer, start in zip(mode.crystal.layers, mode.crystal.boundaries[:-1]):
        half = 0.5 * layer.thickness
        points = start + half * (nodes + 1.0)
        total += layer.permittivity * half * float(np.dot(weights, mode.intensity(points)))
    return total / mode.crystal.period


def ldos(crystal: LayeredCrystal, x: ArrayLike, omega: ArrayLike) -> ArrayLike:
    """rho(x, omega) = (1/pi)|dK/domega| |E(x)|^2; zero in gaps. Broadcasts x against omega."""
    w = np.asarray(omega, dtype=float)
    touch = on_touch(crystal, w)
    if np.any(touch):
        above, below = (np.asarray(ldos(crystal, x, s)) for s in touch_neighbours(crystal, w, touch))
        value = np.where(touch, 0.5 * (above + below), above)
        return float(value) if value.ndim == 0 else value

    dK, _, vectors, in_band = _modes(crystal, w)
    positions = np.asarray(crystal.reduce(np.asarray(x, dtype=float)))
    fields = (propagate_to(crystal, w, positions) @ vectors[..., None])[..., 0, 0]
    value = np.where(in_band, np.abs(dK) / math.pi * np.abs(fields) ** 2, 0.0)
    return float(value) if value.ndim == 0 else value


def ldos_histogram_oracle(
    crystal: LayeredCrystal, x: float, omega_bins: np.ndarray, K_samples: int, rtol: float = ROOT_RTOL
) -> np.ndarray:
    """LDOS per bin at x from uniform Bloch-wavenumber sampling, independent of dK/domega."""
    bins = np.asarray(omega_bins, dtype=float)
    K, weight = _K_samples(crystal, K_samples)
    position = float(crystal.reduce(x))
    counts = np.zeros(len(bins) - 1)
    for band in find_bands(crystal, float(bins[-1]), rtol=rtol):
        if not band.is_closed:
            log.warning("band %d is open above omega=%r and is left out of the histogram", band.index, band.omega_lo)
            continue
        omegas = invert_band(crystal, band, np.cos(K * crystal.period), rtol=rtol)
        _, _, vectors, _ = _modes(crystal, omegas)
        fields = (propagate_to(crystal, omegas, position) @ vectors[..., None])[..., 0, 0]
        counts += np.histogram(omegas, bins=bins, weights=weight * np.abs(fields) ** 2)[0]
    return counts / np.diff(bins)


def _profile(mode: BlochMode, x: ArrayLike) -> np.ndarray:
    """Signed field for real modes, |E| otherwise."""
    values = np.asarray(mode.field(x))
    return values.real if mode.is_real else np.abs(values)


def _refine(mode: BlochMode, lo: float, hi: float, sign: float) -> float:
    res = minimize_scalar(
        lambda s: sign * abs(float(_profile(mode, s))),
        bounds=(lo, hi),
        method="bounded",
        options={"xatol": NODE_XTOL * mode.crystal.period},
    )
    return float(res.x)


def mode_extrema(mode: BlochMode, points: int = NODE_SCAN_POINTS) -> ModeExtrema:
    """Zeros, soft (non-crossing) minima and maxima of |E| within [0, period)."""
    period = mode.crystal.period
    step = period / points
    # one extra point on both sides so that extrema at the cell boundary are seen
    grid = np.linspace(-step, period + step, points + 3)
    values = _profile(mode, grid)
    magnitude = np.abs(values)

    nodes: List[float] = []
    if mode.is_real:
        for i in range(1, points + 1):
            a, b = values[i], values[i + 1]
            if a == 0.0:
                nodes.append(float(grid[i]))
            elif a * b < 0.0:
                root = bisect(lambda s: float(_profile(mode, s)), grid[i], grid[i + 1], xtol=NODE_XTOL * period)
                nodes.append(float(root))

    soft_minima: List[float] = []
    maxima: List[float] = []
    if np.ptp(magnitude) > FLAT_PROFILE * np.max(magnitude):
        for i in range(1, points + 1):
            prev, here, nxt = magnitude[i - 1], magnitude[i], magnitude[i + 1]
            if here >= prev and here > nxt:
                maxima.append(_refine(mode, grid[i - 1], grid[i + 1], -1.0))
            elif here < prev and here <= nxt and np.sign(values[i - 1]) == np.sign(values[i + 1]) != 0:
                soft_minima.append(_refine(mode, grid[i - 1], grid[i + 1], 1.0))

    return ModeExtrema(
        nodes=_fold(nodes, period),
        soft_minima=_fold(soft_minima, period),
        maxima=_fold(maxima, period),
    )


def _fold(positions: Sequence[float], period: float) -> List[float]:
    """Map into [0, period), sort and drop duplicates found from both sides of the boundary."""
    folded = sorted(float(np.mod(x, period)) for x in positions)
    folded = [0.0 if period - x <= NODE_XTOL * period else x for x in folded]
    result: List[float] = []
    for x in sorted(folded):
        if not result or x - result[-1] > 10 * NODE_XTOL * period:
            result.append(x)
    return result


def mode_nodes(mode: BlochMode) -> List[float]:
    return mode_extrema(mode).nodes
