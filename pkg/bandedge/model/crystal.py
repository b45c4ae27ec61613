# Unless explicitly stated otherwise all files in this repository are licensed
# under the 3-clause BSD style license (see LICENSE).

"""Periodic stacks of lossless dielectric layers.

Unit-cell convention: x in [0, period), layer 1 starts at x = 0 and every layer
interval is left-closed, right-open. Units have c = 1.
"""

from __future__ import annotations
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Tuple, Union

import numpy as np

from bandedge.utils.errors import EmptyStack, InvalidLayer, ValidationError


@dataclass(frozen=True)
class Layer:
    index: float
    thickness: float

    @property
    def permittivity(self) -> float:
        return self.index * self.index


@dataclass(frozen=True)
class LayeredCrystal:
    layers: Tuple[Layer, ...]
    period: float = field(init=False)
    # Cumulative layer starts, starts[0] == 0 and starts[-1] == period
    boundaries: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        period = math.fsum(layer.thickness for layer in self.layers)
        starts = np.concatenate(([0.0], np.cumsum([layer.thickness for layer in self.layers])))
        starts[-1] = period
        starts.setflags(write=False)
        object.__setattr__(self, "period", period)
        object.__setattr__(self, "boundaries", starts)

    @property
    def indices(self) -> np.ndarray:
        return np.array([layer.index for layer in self.layers])

    @property
    def permittivities(self) -> np.ndarray:
        return self.indices**2

    @property
    def is_homogeneous(self) -> bool:
        return len({layer.index for layer in self.layers}) == 1

    @property
    def mean_permittivity(self) -> float:
        """Thickness-weighted cell average of the permittivity."""
        return math.fsum(layer.permittivity * layer.thickness for layer in self.layers) / self.period

    def reduce(self, x: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        """Fold positions into the unit cell [0, period)."""
        reduced = np.mod(x, self.period)
        # np.mod can return period itself for tiny negative inputs
        reduced = np.where(reduced >= self.period, 0.0, reduced)
        return float(reduced) if np.ndim(reduced) == 0 else reduced

    def layer_of(self, x: Union[float, np.ndarray]) -> Union[int, np.ndarray]:
        """Index of the layer holding the (folded) position."""
        idx = np.searchsorted(self.boundaries, self.reduce(x), side="right") - 1
        idx = np.clip(idx, 0, len(self.layers) - 1)
        return int(idx) if np.ndim(idx) == 0 else idx

    def scaled(self, factor: float) -> LayeredCrystal:
        return LayeredCrystal(tuple(Layer(layer.index, layer.thickness * factor) for layer in self.layers))

    def to_dict(self) -> dict:
        return {"layers": [{"n": layer.index, "d": layer.thickness} for layer in self.layers]}


def build_crystal(layers: Iterable[Union[Tuple[float, float], Sequence[float], Layer]]) -> LayeredCrystal:
    built = []
    for position, entry in enumerate(layers, start=1):
        if isinstance(entry, Layer):
            index, thickness = entry.index, entry.thickness
        else:
            try:
                index, thickness = (float(v) for v in entry)
            except (TypeError, ValueError) as e:
                raise InvalidLayer(position, f"expected an (index, thickness) pair, got {entry!r}") from e

        if not math.isfinite(index) or not math.isfinite(thickness):
            raise InvalidLayer(position, f"non-finite values (index={index!r}, thickness={thickness!r})")
        if index < 1.0:
            raise InvalidLayer(position, f"refractive index {index!r} is below 1")
        if thickness <= 0.0:
            raise InvalidLayer(position, f"thickness {thickness!r} is not positive")
        built.append(Layer(index, thickness))

    if not built:
        raise EmptyStack()

    return LayeredCrystal(tuple(built))


def permittivity_at(crystal: LayeredCrystal, x: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    if not np.all(np.isfinite(x)):
        raise ValidationError("x", f"position must be finite, got {x!r}")

    eps = crystal.permittivities[crystal.layer_of(x)]
    return float(eps) if np.ndim(eps) == 0 else eps
