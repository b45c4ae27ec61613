# Unless explicitly stated otherwise all files in this repository are licensed
# under the 3-clause BSD style license (see LICENSE).

"""Three-dimensional model dispersions near a band edge and their DOS.

isotropic:   omega = omega_c + A (k - k0)|k - k0| on a sphere of radius k0
anisotropic: omega = omega_c + A |k - k0|^2 about a single point k0
"""

from __future__ import annotations
import logging
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from bandedge.constants import LOGGER_NAME, ModelKind
from bandedge.utils.errors import AtEdge, BelowEdge, BranchExhausted, ValidationError

log = logging.getLogger(LOGGER_NAME)

ArrayLike = Union[float, np.ndarray]

ORACLE_CHUNK = 1_000_000


def _check_positive(name: str, value: float) -> None:
    if not (value > 0.0 and math.isfinite(value)):
        raise ValidationError(name, f"must be positive and finite, got {value!r}")


@dataclass(frozen=True)
class IsotropicModel:
    omega_c: float
    k0: float
    A: Optional[float] = None

    kind = ModelKind.ISOTROPIC

    def __post_init__(self) -> None:
        _check_positive("omega_c", self.omega_c)
        _check_positive("k0", self.k0)
        if self.A is None:
            object.__setattr__(self, "A", self.omega_c / self.k0**2)
        _check_positive("A", self.A)

    def frequency(self, k: ArrayLike) -> ArrayLike:
        q = np.asarray(k, dtype=float) - self.k0
        return self.omega_c + self.A * q * np.abs(q)

    def wavenumber(self, omega: ArrayLike) -> ArrayLike:
        detuning = np.asarray(omega, dtype=float) - self.omega_c
        return self.k0 + np.sign(detuning) * np.sqrt(np.abs(detuning) / self.A)

    def to_dict(self) -> dict:
        return {"model": self.kind.value, "omega_c": self.omega_c, "k0": self.k0, "A": self.A}


@dataclass(frozen=True)
class AnisotropicModel:
    omega_c: float
    A: float

    kind = ModelKind.ANISOTROPIC

    def __post_init__(self) -> None:
        _check_positive("omega_c", self.omega_c)
        _check_positive("A", self.A)

    def to_dict(self) -> dict:
        return {"model": self.kind.value, "omega_c": self.omega_c, "A": self.A}


BandModel = Union[IsotropicModel, AnisotropicModel]


def isotropic_dos(model: IsotropicModel, omega: ArrayLike) -> ArrayLike:
    """k^2/(2 pi^2) |dk/domega| on either branch of the isotropic model."""
    w = np.asarray(omega, dtype=float)
    detuning = w - model.omega_c
    at_edge = np.flatnonzero(np.ravel(detuning == 0.0))
    if len(at_edge):
        raise AtEdge(float(np.ravel(w)[at_edge[0]]))
    k = model.wavenumber(w)
    exhausted = np.flatnonzero(np.ravel(k <= 0.0))
    if len(exhausted):
        i = exhausted[0]
        raise BranchExhausted(float(np.ravel(w)[i]), float(np.ravel(k)[i]))

    dk_domega = 0.5 / np.sqrt(model.A * np.abs(detuning))
    value = k**2 / (2.0 * math.pi**2) * dk_domega
    return float(value) if value.ndim == 0 else value


def anisotropic_dos(model: AnisotropicModel, omega: ArrayLike) -> ArrayLike:
    """sqrt(omega - omega_c) / (4 pi^2 A^(3/2)); zero at the edge."""
    w = np.asarray(omega, dtype=float)
    detuning = w - model.omega_c
    below = np.flatnonzero(np.ravel(detuning < 0.0))
    if len(below):
        raise BelowEdge(float(np.ravel(w)[below[0]]), model.omega_c)
    value = np.sqrt(detuning) / (4.0 * math.pi**2 * model.A**1.5)
    return float(value) if value.ndim == 0 else value


def model_dos(model: BandModel, omega: ArrayLike) -> ArrayLike:
    if isinstance(model, IsotropicModel):
        return isotropic_dos(model, omega)
    return anisotropic_dos(model, omega)


def kspace_dos_oracle(
    model: BandModel, omega_bins: np.ndarray, samples: int = ORACLE_CHUNK, seed: int = 0
) -> np.ndarray:
    """Binned DOS counted directly in k-space, without the analytic dk/domega.

    Isotropic: midpoint shells in |k|. Anisotropic: Monte Carlo in the cube
    bounding the highest-frequency sphere.
    """
    bins = np.asarray(omega_bins, dtype=float)
    if samples < 1:
        raise ValidationError("samples", f"must be positive, got {samples!r}")
    if isinstance(model, IsotropicModel):
        counts = _isotropic_shells(model, bins, samples)
    else:
        counts = _anisotropic_monte_carlo(model, bins, samples, seed)
    return counts / np.diff(bins)


def _isotropic_shells(model: IsotropicModel, bins: np.ndarray, samples: int) -> np.ndarray:
    k_lo, k_hi = float(model.wavenumber(bins[0])), float(model.wavenumber(bins[-1]))
    if k_lo <= 0.0:
        raise BranchExhausted(float(bins[0]), k_lo)
    step = (k_hi - k_lo) / samples
    k = k_lo + (np.arange(samples) + 0.5) * step
    # states per unit volume in a shell: 4 pi k^2 dk / (2 pi)^3
    weights = k**2 * step / (2.0 * math.pi**2)
    return np.histogram(model.frequency(k), bins=bins, weights=weights)[0]


def _anisotropic_monte_carlo(model: AnisotropicModel, bins: np.ndarray, samples: int, seed: int) -> np.ndarray:
    counts = np.zeros(len(bins) - 1)
    top = float(bins[-1]) - model.omega_c
    if top <= 0.0:
        return counts
    radius = math.sqrt(top / model.A)
    weight = (2.0 * radius) ** 3 / samples / (2.0 * math.pi) ** 3

    rng = np.random.default_rng(seed)
    remaining = samples
    while remaining > 0:
        size = min(remaining, ORACLE_CHUNK)
        q = rng.uniform(-radius, radius, size=(size, 3))
        omegas = model.omega_c + model.A * np.einsum("ij,ij->i", q, q)
        counts += np.histogram(omegas, bins=bins)[0] * weight
        remaining -= size
    log.debug("k-space Monte Carlo finished with %d samples", samples)
    return counts
