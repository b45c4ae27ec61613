# Unless explicitly stated otherwise all files in this repository are licensed
# under the 3-clause BSD style license (see LICENSE).

"""Spontaneous-emission rates of emitters inside the crystal.

The rate is RATE_CONSTANT * LDOS, relative to an arbitrary dipole strength.
Averages over a position distribution are taken within one cell.
"""

from __future__ import annotations
import logging
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

import numpy as np
from scipy.integrate import quad
from scipy.special import ndtr

from bandedge.constants import (
    LOGGER_NAME,
    NORMALIZATION_TOLERANCE,
    QUAD_EPSREL,
    RATE_CONSTANT,
    WRAPPED_GAUSSIAN_IMAGES,
    DistributionKind,
)
from bandedge.model.crystal import LayeredCrystal
from bandedge.model.ldos import bloch_mode, ldos
from bandedge.model.spectrum import on_touch, touch_neighbours
from bandedge.utils.errors import InGap, UnnormalizedDistribution, ValidationError

log = logging.getLogger(LOGGER_NAME)

ArrayLike = Union[float, np.ndarray]

# Gaussian tails beyond this many widths are treated as zero when splitting the cell
GAUSS_SPAN = 8.0


@dataclass(frozen=True)
class EmitterDistribution:
    kind: DistributionKind
    x0: float = 0.0
    sigma: float = 0.0
    weights: Tuple[float, ...] = ()
    components: Tuple["EmitterDistribution", ...] = ()

    @classmethod
    def delta(cls, x0: float) -> EmitterDistribution:
        return cls(DistributionKind.DELTA, x0=float(x0))

    @classmethod
    def uniform(cls) -> EmitterDistribution:
        return cls(DistributionKind.UNIFORM)

    @classmethod
    def gauss(cls, x0: float, sigma: float) -> EmitterDistribution:
        if not sigma > 0.0:
            raise ValidationError("dist.sigma", f"must be positive, got {sigma!r}")
        return cls(DistributionKind.GAUSS, x0=float(x0), sigma=float(sigma))

    @classmethod
    def mixture(cls, weights: Sequence[float], components: Sequence[EmitterDistribution]) -> EmitterDistribution:
        if len(weights) != len(components) or not components:
            raise ValidationError("dist.weights", "need one weight per component")
        if any(w < 0.0 for w in weights):
            raise ValidationError("dist.weights", "weights must be nonnegative")
        return cls(DistributionKind.MIXTURE, weights=tuple(map(float, weights)), components=tuple(components))

    def _images(self, period: float) -> range:
        extra = int(math.ceil(GAUSS_SPAN * self.sigma / period))
        n = WRAPPED_GAUSSIAN_IMAGES + extra
        return range(-n, n + 1)

    def density(self, x: ArrayLike, period: float) -> ArrayLike:
        """Probability density on the cell; undefined for delta distributions."""
        pos = np.asarray(x, dtype=float)
        if self.kind == DistributionKind.UNIFORM:
            value = np.full(pos.shape, 1.0 / period)
        elif self.kind == DistributionKind.GAUSS:
            value = np.zeros(pos.shape)
            for m in self._images(period):
                z = (pos - self.x0 - m * period) / self.sigma
                value = value + np.exp(-0.5 * z**2) / (self.sigma * math.sqrt(2.0 * math.pi))
        elif self.kind == DistributionKind.MIXTURE:
            value = sum(w * np.asarray(c.density(pos, period)) for w, c in zip(self.weights, self.components))
        else:
            raise ValidationError("dist", "a delta distribution has no density")
        return float(value) if np.ndim(value) == 0 else value

    def mass(self, period: float) -> float:
        if self.kind in (DistributionKind.DELTA, DistributionKind.UNIFORM):
            return 1.0
        if self.kind == DistributionKind.GAUSS:
            return math.fsum(
                float(ndtr((period - self.x0 - m * period) / self.sigma) - ndtr((-self.x0 - m * period) / self.sigma))
                for m in self._images(period)
            )
        return math.fsum(w * c.mass(period) for w, c in zip(self.weights, self.components))

    def breakpoints(self, period: float) -> List[float]:
        """Points inside the cell where the density changes quickly."""
        if self.kind == DistributionKind.GAUSS:
            points = []
            for m in self._images(period):
                centre = self.x0 + m * period
                points.extend([centre - GAUSS_SPAN * self.sigma, centre - self.sigma, centre])
                points.extend([centre + self.sigma, centre + GAUSS_SPAN * self.sigma])
            return [p for p in points if 0.0 < p < period]
        if self.kind == DistributionKind.MIXTURE:
            return [p for c in self.components for p in c.breakpoints(period)]
        return []

    def to_dict(self) -> dict:
        result = {"kind": self.kind.value}
        if self.kind in (DistributionKind.DELTA, DistributionKind.GAUSS):
            result["x0"] = self.x0
        if self.kind == DistributionKind.GAUSS:
            result["sigma"] = self.sigma
        if self.kind == DistributionKind.MIXTURE:
            result["weights"] = list(self.weights)
            result["components"] = [c.to_dict() for c in self.components]
        return result


def se_rate(crystal: LayeredCrystal, x: ArrayLike, omega: ArrayLike) -> ArrayLike:
    value = ldos(crystal, x, omega)
    return RATE_CONSTANT * value


def _check_normalized(dist: EmitterDistribution, period: float) -> None:
    mass = dist.mass(period)
    if abs(mass - 1.0) > NORMALIZATION_TOLERANCE:
        raise UnnormalizedDistribution(mass)


def se_rate_average(
    crystal: LayeredCrystal, dist: EmitterDistribution, omega: float, epsrel: float = QUAD_EPSREL
) -> float:
    """Rate averaged over emitter positions in one cell."""
    _check_normalized(dist, crystal.period)
    if dist.kind == DistributionKind.DELTA:
        return float(se_rate(crystal, dist.x0, omega))
    if dist.kind == DistributionKind.MIXTURE:
        return math.fsum(w * se_rate_average(crystal, c, omega, epsrel) for w, c in zip(dist.weights, dist.components))
    if on_touch(crystal, omega):
        neighbours = touch_neighbours(crystal, np.asarray(float(omega)), np.asarray(True))
        return 0.5 * math.fsum(se_rate_average(crystal, dist, float(w), epsrel) for w in neighbours)

    try:
        mode = bloch_mode(crystal, omega)
    except InGap:
        return 0.0
    scale = RATE_CONSTANT * abs(mode.dK_domega) / math.pi

    cuts = sorted({0.0, crystal.period, *crystal.boundaries.tolist(), *dist.breakpoints(crystal.period)})
    total = 0.0
    for a, b in zip(cuts, cuts[1:]):
        if b - a <= 0.0:
            continue
        value, error = quad(
            lambda s: float(dist.density(s, crystal.period)) * mode.intensity(s),
            a,
            b,
            epsrel=epsrel,
            epsabs=0.0,
            limit=200,
        )
        total += value
        log.debug("segment [%.6g, %.6g]: %.12g (error estimate %.3e)", a, b, value, error)
    return scale * total


def se_rate_sweep(
    crystal: LayeredCrystal, dist: EmitterDistribution, omegas: Sequence[float], epsrel: float = QUAD_EPSREL
) -> np.ndarray:
    return np.asarray([se_rate_average(crystal, dist, float(w), epsrel) for w in omegas])
