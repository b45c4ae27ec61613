# Unless explicitly stated otherwise all files in this repository are licensed
# under the 3-clause BSD style license (see LICENSE).

"""Power-law exponents of the DOS and LDOS at band edges, rho ~ amplitude * detuning**eta."""

from __future__ import annotations
import logging
import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from bandedge.constants import (
    CLEAN_R2,
    DOS_WINDOW,
    DOS_WINDOW_POINTS,
    GUARD_BAND,
    LOGGER_NAME,
    MIN_FIT_SAMPLES,
    NODE_RESOLUTION,
    NODE_XTOL,
    SENSITIVITY_POINTS,
    SENSITIVITY_SHIFT,
    SENSITIVITY_WINDOW,
    SLOPE_TAIL_POINTS,
    TOUCH_SLOPE,
    UNIVERSALITY_POSITIONS,
    UNIVERSALITY_WINDOW,
    Regime,
    Side,
)
from bandedge.model.crystal import LayeredCrystal
from bandedge.model.ldos import edge_mode, ldos, mode_nodes
from bandedge.model.spectrum import BandEdge, dos_sweep
from bandedge.utils.errors import (
    DegenerateAbscissa,
    NodeNotResolved,
    NonPositiveSample,
    NotTransversal,
    TooFewSamples,
    ValidationError,
)

log = logging.getLogger(LOGGER_NAME)

Window = Tuple[float, float]


@dataclass(frozen=True)
class AsymptoticFit:
    eta: float
    amplitude: float
    r_squared: float
    window: Window
    n_points: int
    side: Optional[Side] = None
    residual: float = 0.0
    clean: bool = True

    def to_dict(self) -> dict:
        return {
            "eta": self.eta,
            "amplitude": self.amplitude,
            "r_squared": self.r_squared,
            "window": list(self.window),
            "n_points": self.n_points,
            "side": self.side.value if self.side is not None else None,
            "residual": self.residual,
            "clean": self.clean,
        }


@dataclass(frozen=True)
class PositionFit:
    x: float
    regime: Regime
    fit: AsymptoticFit


@dataclass(frozen=True)
class SensitivityReport:
    node_x: float
    shift: float
    ratios: List[Tuple[float, float]]
    max_ratio: float
    detuning_at_max: float
    asymptotic_slope: float

    def to_dict(self) -> dict:
        return {
            "node_x": self.node_x,
            "shift": self.shift,
            "max_ratio": self.max_ratio,
            "detuning_at_max": self.detuning_at_max,
            "asymptotic_slope": self.asymptotic_slope,
            "ratios": [list(pair) for pair in self.ratios],
        }


def detuning_ladder(omega_c: float, window: Window = DOS_WINDOW, points: int = DOS_WINDOW_POINTS) -> np.ndarray:
    """Geometric detunings omega_c * [lo, hi]."""
    lo, hi = window
    if not 0.0 < lo < hi:
        raise ValidationError("window", f"must satisfy 0 < lo < hi, got {lo!r}:{hi!r}")
    if points < 2:
        raise ValidationError("points", f"must be at least 2, got {points!r}")
    return omega_c * np.geomspace(lo, hi, points)


def fit_exponent(
    samples: Iterable[Tuple[float, float]],
    side: Optional[Side] = None,
    clean_r2: float = CLEAN_R2,
) -> AsymptoticFit:
    """Least-squares line through (log detuning, log value)."""
    pairs = np.asarray(list(samples), dtype=float).reshape(-1, 2)
    if len(pairs) < MIN_FIT_SAMPLES:
        raise TooFewSamples(len(pairs), MIN_FIT_SAMPLES)
    detuning, value = pairs[:, 0], pairs[:, 1]
    bad = np.flatnonzero(~((detuning > 0.0) & (value > 0.0) & np.isfinite(value)))
    if len(bad):
        i = int(bad[0])
        raise NonPositiveSample(i, float(detuning[i]), float(value[i]))

    log_x, log_y = np.log(detuning), np.log(value)
    if np.ptp(log_x) == 0.0:
        raise DegenerateAbscissa()

    eta, intercept = np.polyfit(log_x, log_y, 1)
    residuals = log_y - (eta * log_x + intercept)
    ss_res = float(np.sum(residuals**2))
    ss_tot = float(np.sum((log_y - np.mean(log_y)) ** 2))
    r_squared = 1.0 if ss_tot == 0.0 else max(0.0, 1.0 - ss_res / ss_tot)

    fit = AsymptoticFit(
        eta=float(eta),
        amplitude=float(np.exp(intercept)),
        r_squared=r_squared,
        window=(float(detuning.min()), float(detuning.max())),
        n_points=len(pairs),
        side=side,
        residual=math.sqrt(ss_res / len(pairs)),
        clean=r_squared >= clean_r2,
    )
    if not fit.clean:
        log.warning("power-law fit is not clean: eta=%.4f, R^2=%.6f", fit.eta, fit.r_squared)
    return fit


def _check_transversal(edge: BandEdge, touch_slope: float) -> None:
    if abs(edge.trace_slope) < touch_slope:
        raise NotTransversal(edge.omega_c, edge.trace_slope)


def edge_exponent_dos(
    crystal: LayeredCrystal,
    edge: BandEdge,
    window: Window = DOS_WINDOW,
    points: int = DOS_WINDOW_POINTS,
    clean_r2: float = CLEAN_R2,
    touch_slope: float = TOUCH_SLOPE,
) -> AsymptoticFit:
    _check_transversal(edge, touch_slope)
    detunings = detuning_ladder(edge.omega_c, window, points)
    curve = dos_sweep(crystal, edge.band_frequency(detunings))
    return fit_exponent(zip(detunings, curve.value), side=edge.side, clean_r2=clean_r2)


def edge_exponent_ldos(
    crystal: LayeredCrystal,
    edge: BandEdge,
    x: float,
    window: Window = DOS_WINDOW,
    points: int = DOS_WINDOW_POINTS,
    clean_r2: float = CLEAN_R2,
    touch_slope: float = TOUCH_SLOPE,
) -> AsymptoticFit:
    _check_transversal(edge, touch_slope)
    detunings = detuning_ladder(edge.omega_c, window, points)
    values = ldos(crystal, x, edge.band_frequency(detunings))
    return fit_exponent(zip(detunings, values), side=edge.side, clean_r2=clean_r2)


def _cell_distance(x: float, node: float, period: float) -> float:
    d = abs(float(np.mod(x - node, period)))
    return min(d, period - d)


def classify_position(x: float, nodes: Sequence[float], period: float, guard_band: float = GUARD_BAND) -> Regime:
    """Where x sits relative to the nodes; guard_band is in cell lengths."""
    distance = min((_cell_distance(x, node, period) for node in nodes), default=math.inf)
    if distance <= 10 * NODE_XTOL * period:
        return Regime.NODE
    if distance < guard_band * period:
        return Regime.NEAR_NODE
    return Regime.GENERIC


def ldos_universality(
    crystal: LayeredCrystal,
    edge: BandEdge,
    count: int = UNIVERSALITY_POSITIONS,
    seed: int = 0,
    window: Window = UNIVERSALITY_WINDOW,
    points: int = DOS_WINDOW_POINTS,
    guard_band: float = GUARD_BAND,
    clean_r2: float = CLEAN_R2,
    touch_slope: float = TOUCH_SLOPE,
) -> List[PositionFit]:
    """LDOS exponents at `count` random positions outside the node guard bands."""
    _check_transversal(edge, touch_slope)
    if count < 1:
        raise ValidationError("positions", f"must be positive, got {count!r}")
    nodes = mode_nodes(edge_mode(crystal, edge))

    rng = np.random.default_rng(seed)
    positions: List[float] = []
    while len(positions) < count:
        x = float(rng.uniform(0.0, crystal.period))
        if classify_position(x, nodes, crystal.period, guard_band) == Regime.GENERIC:
            positions.append(x)

    detunings = detuning_ladder(edge.omega_c, window, points)
    omegas = edge.band_frequency(detunings)
    table = ldos(crystal, np.asarray(positions)[None, :], omegas[:, None])
    log.info("fitting LDOS exponents at %d positions near omega_c=%r", count, edge.omega_c)
    return [
        PositionFit(
            x=x,
            regime=Regime.GENERIC,
            fit=fit_exponent(zip(detunings, table[:, j]), side=edge.side, clean_r2=clean_r2),
        )
        for j, x in enumerate(positions)
    ]


def node_exponents(
    crystal: LayeredCrystal,
    edge: BandEdge,
    window: Window = DOS_WINDOW,
    points: int = DOS_WINDOW_POINTS,
    clean_r2: float = CLEAN_R2,
    touch_slope: float = TOUCH_SLOPE,
) -> List[PositionFit]:
    """LDOS exponent at every bisected node of the edge mode."""
    nodes = mode_nodes(edge_mode(crystal, edge))
    if not nodes:
        log.warning("edge mode at omega_c=%r has no nodes", edge.omega_c)
    return [
        PositionFit(
            x=node,
            regime=Regime.NODE,
            fit=edge_exponent_ldos(crystal, edge, node, window, points, clean_r2, touch_slope),
        )
        for node in nodes
    ]


def _tail_slope(detunings: np.ndarray, ratios: np.ndarray, points: int) -> float:
    order = np.argsort(detunings)[:points]
    excess = ratios[order] - 1.0
    if len(order) < 2 or np.any(excess <= 0.0):
        return math.nan
    slope, _ = np.polyfit(np.log(detunings[order]), np.log(excess), 1)
    return float(slope)


def sensitivity_scan(
    crystal: LayeredCrystal,
    edge: BandEdge,
    node_x: float,
    shift: Optional[float] = None,
    window: Window = SENSITIVITY_WINDOW,
    points: int = SENSITIVITY_POINTS,
) -> SensitivityReport:
    """LDOS ratio between node_x + shift and node_x along a detuning ladder.

    `shift` is a length; it defaults to 1e-4 of the period.
    """
    displacement = SENSITIVITY_SHIFT * crystal.period if shift is None else float(shift)
    amplitude = abs(edge_mode(crystal, edge).field(node_x))
    if amplitude > NODE_RESOLUTION:
        raise NodeNotResolved(node_x, amplitude)

    detunings = detuning_ladder(edge.omega_c, window, points)
    omegas = edge.band_frequency(detunings)
    at_node = np.asarray(ldos(crystal, node_x, omegas))
    shifted = np.asarray(ldos(crystal, node_x + displacement, omegas))
    bad = np.flatnonzero(~(at_node > 0.0))
    if len(bad):
        i = int(bad[0])
        raise NonPositiveSample(i, float(detunings[i]), float(at_node[i]))
    ratios = shifted / at_node

    peak = int(np.argmax(ratios))
    report = SensitivityReport(
        node_x=float(node_x),
        shift=displacement,
        ratios=[(float(d), float(r)) for d, r in zip(detunings, ratios)],
        max_ratio=float(ratios[peak]),
        detuning_at_max=float(detunings[peak]),
        asymptotic_slope=_tail_slope(detunings, ratios, SLOPE_TAIL_POINTS),
    )
    log.info("max LDOS ratio %.4g at detuning %.3e", report.max_ratio, report.detuning_at_max)
    return report
