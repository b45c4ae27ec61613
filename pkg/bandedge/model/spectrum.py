# Unless explicitly stated otherwise all files in this repository are licensed
# under the 3-clause BSD style license (see LICENSE).

"""Band structure of a layered crystal from its Bloch half-trace.

Bands are numbered in Hill order: band m runs from half-trace (-1)**(m-1) to
(-1)**m. Zero-width gaps (tangential touches of +-1) split bands but produce no
edges.
"""

from __future__ import annotations
import logging
import math
from dataclasses import dataclass
from typing import Callable, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import bisect, minimize_scalar

from bandedge.constants import (
    DEFAULT_SCAN_DENSITY,
    LOGGER_NAME,
    MAX_SCAN_EXTENSIONS,
    MIN_K_SAMPLES,
    RESCAN_FACTOR,
    ROOT_RTOL,
    TOUCH_OFFSET,
    TOUCH_SLOPE,
    TOUCH_TOLERANCE,
    Side,
)
from bandedge.model.crystal import LayeredCrystal
from bandedge.model.transfer import bloch_trace, bloch_trace_derivative
from bandedge.utils.errors import InGap, NoSuchEdge, ScanTooCoarse, ValidationError

log = logging.getLogger(LOGGER_NAME)

# Refined interior extrema with |trace| below 1 - TOUCH_WINDOW are not touches
TOUCH_WINDOW = 1e-6


@dataclass(frozen=True)
class Band:
    index: int
    omega_lo: float
    omega_hi: float
    edge_parity_lo: int
    edge_parity_hi: Optional[int]
    period: float
    trace_slope_lo: float = 0.0
    trace_slope_hi: float = 0.0
    touch_lo: bool = False
    touch_hi: bool = False

    @property
    def width(self) -> float:
        return self.omega_hi - self.omega_lo

    @property
    def is_closed(self) -> bool:
        return math.isfinite(self.omega_hi)

    def contains(self, omega: float) -> bool:
        return self.omega_lo < omega < self.omega_hi

    def to_dict(self) -> dict:
        return {
            "band": self.index,
            "omega_lo": self.omega_lo,
            "omega_hi": self.omega_hi,
            "parity_lo": self.edge_parity_lo,
            "parity_hi": self.edge_parity_hi,
            "touch_lo": self.touch_lo,
            "touch_hi": self.touch_hi,
        }


@dataclass(frozen=True)
class BandEdge:
    omega_c: float
    K_edge: float
    side: Side
    band_index: int
    trace_slope: float
    parity: int
    gap_order: int
    gap_index: int
    period: float

    @property
    def omega_reduced(self) -> float:
        """Edge frequency in units of c / period."""
        return self.omega_c * self.period

    def band_frequency(self, detuning: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        """Frequency at the given detuning on the band side of the edge."""
        if self.side == Side.LOWER:
            return self.omega_c - detuning
        return self.omega_c + detuning

    def to_dict(self) -> dict:
        return {
            "omega_c": self.omega_c,
            "omega_c_reduced": self.omega_reduced,
            "K_edge": self.K_edge,
            "parity": self.parity,
            "side": self.side.value,
            "band": self.band_index,
            "gap_index": self.gap_index,
            "gap_order": self.gap_order,
            "trace_slope": self.trace_slope,
        }


class Dispersion(NamedTuple):
    K: float
    dK_domega: float


@dataclass(frozen=True)
class DosCurve:
    omega: np.ndarray
    value: np.ndarray
    in_gap: np.ndarray


@dataclass(frozen=True)
class _Boundary:
    omega_lo: float
    omega_hi: float
    parity: int
    touch: bool
    slope_lo: float
    slope_hi: float


def _bisect_edge(func: Callable[[float], float], a: float, b: float, rtol: float) -> float:
    fa = func(a)
    if fa == 0.0:
        return a
    fb = func(b)
    if fb == 0.0:
        return b
    return bisect(func, a, b, xtol=rtol * abs(b), rtol=max(rtol, 4 * np.finfo(float).eps), maxiter=500)


def _runs(mask: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    padded = np.concatenate(([False], mask, [False]))
    changes = np.flatnonzero(padded[1:] != padded[:-1])
    return changes[0::2], changes[1::2]


def _scan(
    crystal: LayeredCrystal,
    omega_end: float,
    density: float,
    rtol: float,
    touch_slope: float,
) -> Tuple[List[_Boundary], bool]:
    """Locate every band boundary on [0, omega_end]; the flag tells whether the scan ends inside a gap."""
    count = max(int(math.ceil(density * omega_end * crystal.period)), 16) + 1
    grid = np.linspace(0.0, omega_end, count)
    trace = bloch_trace(crystal, grid)
    in_gap = np.abs(trace) > 1.0

    log.debug("scanning %d points up to omega=%r", count, omega_end)
    boundaries: List[_Boundary] = []
    ends_in_gap = False

    starts, stops = _runs(in_gap)
    for start, stop in zip(starts, stops):
        signs = np.sign(trace[start:stop])
        if np.any(signs != signs[0]):
            raise ScanTooCoarse(float(grid[start]), "half-trace flips sign inside a gap, a band was skipped")
        parity = int(signs[0])

        def shifted(w: float, parity=parity) -> float:
            return bloch_trace(crystal, w) - parity

        lo = _bisect_edge(shifted, float(grid[start - 1]), float(grid[start]), rtol)
        slope_lo = bloch_trace_derivative(crystal, lo)
        if stop == count:
            boundaries.append(_Boundary(lo, math.inf, parity, False, slope_lo, math.nan))
            ends_in_gap = True
            break

        hi = _bisect_edge(shifted, float(grid[stop - 1]), float(grid[stop]), rtol)
        slope_hi = bloch_trace_derivative(crystal, hi)
        peak = float(np.max(parity * trace[start:stop])) - 1.0
        if peak <= TOUCH_TOLERANCE or min(abs(slope_lo), abs(slope_hi)) < touch_slope:
            omega_t = 0.5 * (lo + hi)
            log.debug("zero-width gap at omega=%r (parity %+d)", omega_t, parity)
            boundaries.append(_Boundary(omega_t, omega_t, parity, True, 0.0, 0.0))
        else:
            boundaries.append(_Boundary(lo, hi, parity, False, slope_lo, slope_hi))

    boundaries.extend(_interior_touches(crystal, grid, trace, in_gap, rtol))
    boundaries.sort(key=lambda b: b.omega_lo)
    return boundaries, ends_in_gap


def _interior_touches(
    crystal: LayeredCrystal, grid: np.ndarray, trace: np.ndarray, in_gap: np.ndarray, rtol: float
) -> List[_Boundary]:
    # The half-trace is strictly monotone inside a band, so a local extremum on the
    # grid is either a tangential touch of +-1 or a gap narrower than the grid step.
    step = np.diff(trace)
    candidates = np.flatnonzero(step[:-1] * step[1:] <= 0.0) + 1
    candidates = [i for i in candidates if not (in_gap[i - 1] or in_gap[i] or in_gap[i + 1])]

    touches: List[_Boundary] = []
    last = -2
    for i in candidates:
        if i == last + 1:
            last = i
            continue
        last = i
        parity = 1 if trace[i] > 0 else -1
        res = minimize_scalar(
            lambda w: -parity * bloch_trace(crystal, w),
            bounds=(float(grid[i - 1]), float(grid[i + 1])),
            method="bounded",
            options={"xatol": rtol * float(grid[i + 1])},
        )
        excess = -float(res.fun) - 1.0
        if excess > TOUCH_TOLERANCE:
            raise ScanTooCoarse(float(res.x), f"half-trace exceeds {parity:+d} by {excess:.3e} between grid points")
        if excess < -TOUCH_WINDOW:
            log.debug("ignoring interior extremum of the half-trace at omega=%r", float(res.x))
            continue
        log.debug("zero-width gap at omega=%r (parity %+d)", float(res.x), parity)
        touches.append(_Boundary(float(res.x), float(res.x), parity, True, 0.0, 0.0))
    return touches


def _assemble(crystal: LayeredCrystal, boundaries: Sequence[_Boundary]) -> Tuple[List[Band], bool]:
    bands: List[Band] = []
    lo, parity_lo, slope_lo, touch_lo = 0.0, 1, 0.0, False
    for boundary in boundaries:
        bands.append(
            Band(
                index=len(bands) + 1,
                omega_lo=lo,
                omega_hi=boundary.omega_lo,
                edge_parity_lo=parity_lo,
                edge_parity_hi=boundary.parity,
                period=crystal.period,
                trace_slope_lo=slope_lo,
                trace_slope_hi=boundary.slope_lo,
                touch_lo=touch_lo,
                touch_hi=boundary.touch,
            )
        )
        if not math.isfinite(boundary.omega_hi):
            return bands, True
        lo, parity_lo, slope_lo, touch_lo = boundary.omega_hi, boundary.parity, boundary.slope_hi, boundary.touch

    bands.append(
        Band(
            index=len(bands) + 1,
            omega_lo=lo,
            omega_hi=math.inf,
            edge_parity_lo=parity_lo,
            edge_parity_hi=None,
            period=crystal.period,
            trace_slope_lo=slope_lo,
            touch_lo=touch_lo,
        )
    )
    return bands, False


def _check_parity(bands: Sequence[Band]) -> None:
    for band in bands:
        expected = 1 if band.index % 2 == 1 else -1
        if band.edge_parity_lo != expected or band.edge_parity_hi not in (None, -expected):
            raise ScanTooCoarse(band.omega_lo, f"Hill parity pattern violated at band {band.index}")


def _scan_bands(
    crystal: LayeredCrystal, omega_max: float, density: float, rtol: float, touch_slope: float
) -> List[Band]:
    # One uniform-medium band width at the smallest index; the open top band is
    # closed by extending the scan in these steps.
    chunk = math.pi / (float(np.min(crystal.indices)) * crystal.period)
    omega_end = omega_max
    for _ in range(MAX_SCAN_EXTENSIONS + 1):
        boundaries, ends_in_gap = _scan(crystal, omega_end, density, rtol, touch_slope)
        if ends_in_gap or any(b.omega_lo >= omega_max for b in boundaries):
            break
        omega_end += chunk
    else:
        log.warning("no band boundary found above omega=%r, the top band is left open", omega_max)

    bands, _ = _assemble(crystal, boundaries)
    _check_parity(bands)
    return [band for band in bands if band.omega_lo < omega_max]


def find_bands(
    crystal: LayeredCrystal,
    omega_max: float,
    scan_density: float = DEFAULT_SCAN_DENSITY,
    rtol: float = ROOT_RTOL,
    touch_slope: float = TOUCH_SLOPE,
    retry: bool = True,
) -> List[Band]:
    if not omega_max > 0.0 or not math.isfinite(omega_max):
        raise ValidationError("omega_max", f"must be positive and finite, got {omega_max!r}")

    try:
        bands = _scan_bands(crystal, omega_max, scan_density, rtol, touch_slope)
    except ScanTooCoarse as e:
        if not retry:
            raise
        log.warning("%s; rescanning with %dx density", e, RESCAN_FACTOR)
        bands = _scan_bands(crystal, omega_max, scan_density * RESCAN_FACTOR, rtol, touch_slope)

    log.info("found %d band(s) below omega=%r", len(bands), omega_max)
    return bands


def band_edges(bands: Sequence[Band]) -> List[BandEdge]:
    edges: List[BandEdge] = []
    gap_index = 0
    for lower, upper in zip(bands, bands[1:]):
        if lower.touch_hi:
            continue
        gap_index += 1
        parity = lower.edge_parity_hi
        K_edge = 0.0 if parity == 1 else math.pi / lower.period
        common = dict(K_edge=K_edge, parity=parity, gap_order=lower.index, gap_index=gap_index, period=lower.period)
        edges.append(
            BandEdge(
                omega_c=lower.omega_hi,
                side=Side.LOWER,
                band_index=lower.index,
                trace_slope=lower.trace_slope_hi,
                **common,
            )
        )
        edges.append(
            BandEdge(
                omega_c=upper.omega_lo,
                side=Side.UPPER,
                band_index=upper.index,
                trace_slope=upper.trace_slope_lo,
                **common,
            )
        )
    return sorted(edges, key=lambda edge: edge.omega_c)


def select_edge(edges: Sequence[BandEdge], gap: int, side: Side) -> BandEdge:
    """The edge on `side` of the gap-th gap of nonzero width."""
    for edge in edges:
        if edge.gap_index == gap and edge.side == side:
            return edge
    raise NoSuchEdge(gap, side.value, max((edge.gap_index for edge in edges), default=0))


def band_of(bands: Sequence[Band], omega: float) -> Optional[Band]:
    for band in bands:
        if band.contains(omega):
            return band
    return None


def _in_band_dispersion(
    crystal: LayeredCrystal, omega: np.ndarray
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized (trace, K, dK/domega, in_band); K and dK are NaN outside bands."""
    trace = np.asarray(bloch_trace(crystal, omega), dtype=float)
    in_band = np.abs(trace) < 1.0
    safe_trace = np.where(in_band, trace, 0.0)
    # (1 - t)(1 + t) keeps precision close to the band edges
    sine = np.sqrt((1.0 - safe_trace) * (1.0 + safe_trace))
    slope = np.asarray(bloch_trace_derivative(crystal, np.where(in_band, omega, 1.0)), dtype=float)
    K = np.where(in_band, np.arccos(safe_trace) / crystal.period, np.nan)
    dK = np.where(in_band, -slope / (crystal.period * sine), np.nan)
    return trace, K, dK, in_band


def on_touch(crystal: LayeredCrystal, omega: Union[float, np.ndarray]) -> np.ndarray:
    """Frequencies sitting on a zero-width gap, omega = 0 included.

    The half-trace is +-1 there with zero slope, so the band formulas are 0/0
    although the frequency lies inside the band spectrum.
    """
    w = np.asarray(omega, dtype=float)
    trace = np.asarray(bloch_trace(crystal, w))
    near = np.abs(np.abs(trace) - 1.0) <= TOUCH_TOLERANCE
    if not np.any(near):
        return near
    slope = np.asarray(bloch_trace_derivative(crystal, np.where(near, w, 1.0)))
    return near & (np.abs(slope) < TOUCH_SLOPE)


def touch_neighbours(crystal: LayeredCrystal, omega: np.ndarray, touch: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Frequencies just above and below each touch; other entries are left as they are."""
    step = TOUCH_OFFSET * np.maximum(omega, 1.0 / crystal.period)
    return np.where(touch, omega + step, omega), np.where(touch, np.abs(omega - step), omega)


def dispersion(crystal: LayeredCrystal, omega: float) -> Dispersion:
    if on_touch(crystal, omega):
        above, below = touch_neighbours(crystal, np.asarray(float(omega)), np.asarray(True))
        slopes = [abs(dispersion(crystal, float(w)).dK_domega) for w in (above, below)]
        trace = float(np.clip(bloch_trace(crystal, float(omega)), -1.0, 1.0))
        return Dispersion(math.acos(trace) / crystal.period, 0.5 * sum(slopes))

    trace, K, dK, in_band = _in_band_dispersion(crystal, np.asarray(omega, dtype=float))
    if not in_band:
        raise InGap(float(omega), float(trace))
    return Dispersion(float(K), float(dK))


def dos(crystal: LayeredCrystal, omega: float) -> float:
    """Photonic DOS per unit length, (1/pi)|dK/domega|; exactly 0 in gaps."""
    return float(dos_sweep(crystal, np.asarray([omega], dtype=float)).value[0])


def dos_sweep(crystal: LayeredCrystal, omegas: Union[Sequence[float], np.ndarray]) -> DosCurve:
    omega = np.asarray(omegas, dtype=float)
    touch = on_touch(crystal, omega)
    if np.any(touch):
        above, below = (dos_sweep(crystal, w) for w in touch_neighbours(crystal, omega, touch))
        value = np.where(touch, 0.5 * (above.value + below.value), above.value)
        return DosCurve(omega=omega, value=value, in_gap=above.in_gap & ~touch)

    _, _, dK, in_band = _in_band_dispersion(crystal, omega)
    value = np.where(in_band, np.abs(np.nan_to_num(dK)) / math.pi, 0.0)
    return DosCurve(omega=omega, value=value, in_gap=~in_band)


def invert_band(
    crystal: LayeredCrystal, band: Band, traces: np.ndarray, rtol: float = ROOT_RTOL, max_iter: int = 200
) -> np.ndarray:
    """Frequencies inside `band` at which the half-trace takes the given values."""
    targets = np.asarray(traces, dtype=float)
    lo = np.full(targets.shape, band.omega_lo)
    hi = np.full(targets.shape, band.omega_hi)
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        below = np.sign(bloch_trace(crystal, mid) - targets) == band.edge_parity_lo
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
        if np.all(hi - lo <= rtol * hi):
            break
    return 0.5 * (lo + hi)


def dos_histogram_oracle(crystal: LayeredCrystal, omega_bins: np.ndarray, K_samples: int) -> np.ndarray:
    """DOS per bin from uniform Bloch-wavenumber sampling, independent of dK/domega."""
    bins = np.asarray(omega_bins, dtype=float)
    K, weight = _K_samples(crystal, K_samples)
    counts = np.zeros(len(bins) - 1)
    for band in find_bands(crystal, float(bins[-1])):
        if not band.is_closed:
            log.warning("band %d is open above omega=%r and is left out of the histogram", band.index, band.omega_lo)
            continue
        omegas = invert_band(crystal, band, np.cos(K * crystal.period))
        counts += np.histogram(omegas, bins=bins, weights=np.full(K.shape, weight))[0]
    return counts / np.diff(bins)


def _K_samples(crystal: LayeredCrystal, K_samples: int) -> Tuple[np.ndarray, float]:
    if K_samples < MIN_K_SAMPLES:
        raise ValidationError("K_samples", f"must be at least {MIN_K_SAMPLES}, got {K_samples!r}")
    K_max = math.pi / crystal.period
    K = (np.arange(K_samples) + 0.5) * K_max / K_samples
    # each sample carries K-measure K_max / K_samples, i.e. DOS weight (1/pi) of it
    return K, 1.0 / (crystal.period * K_samples)
