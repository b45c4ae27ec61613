# Unless explicitly stated otherwise all files in this repository are licensed
# under the 3-clause BSD style license (see LICENSE).

from __future__ import annotations
import math
from typing import TYPE_CHECKING, List

import numpy as np

from bandedge.constants import (
    DOS_WINDOW,
    DOS_WINDOW_POINTS,
    MODEL_FIT_WINDOW,
    MODEL_OMEGA_SPAN,
    SENSITIVITY_POINTS,
    SENSITIVITY_WINDOW,
    UNIVERSALITY_WINDOW,
    ModelKind,
    Target,
)
from bandedge.model.asymptotics import (
    classify_position,
    detuning_ladder,
    edge_exponent_dos,
    edge_exponent_ldos,
    fit_exponent,
    ldos_universality,
    node_exponents,
    sensitivity_scan,
)
from bandedge.model.band_models import AnisotropicModel, IsotropicModel, model_dos
from bandedge.model.emission import se_rate_average
from bandedge.model.ldos import edge_mode, ldos, mode_extrema, mode_nodes
from bandedge.model.spectrum import Band, BandEdge, band_edges, dos_sweep, find_bands, select_edge
from bandedge.utils.errors import NoSuchEdge, ValidationError
from bandedge.utils.workers import Workers

if TYPE_CHECKING:
    from bandedge.utils.configuration import Configuration

# Times the scan range is doubled while looking for a requested gap
EDGE_SEARCH_DOUBLINGS = 6


class AnalysisHandler:
    def __init__(self, config: Configuration) -> None:
        self.config = config
        self.spec = config.spec
        self.results = config.results
        self.worker: Workers = Workers(config)

    def _find_bands(self, omega_max: float) -> List[Band]:
        numerics = self.config.numerics
        return find_bands(
            self.spec.crystal,
            omega_max,
            scan_density=numerics.scan_density,
            rtol=numerics.root_rtol,
            touch_slope=numerics.touch_slope,
        )

    def _edge(self) -> BandEdge:
        omega_max = self.spec.omega_max
        for _ in range(EDGE_SEARCH_DOUBLINGS):
            try:
                return select_edge(band_edges(self._find_bands(omega_max)), self.spec.gap, self.spec.side)
            except NoSuchEdge:
                omega_max *= 2.0
                self.config.logger.debug(f"gap {self.spec.gap} not found yet, scanning up to omega={omega_max}")
        return select_edge(band_edges(self._find_bands(omega_max)), self.spec.gap, self.spec.side)

    def _crystal_summary(self) -> dict:
        crystal = self.spec.crystal
        return {"crystal": crystal.to_dict(), "period": crystal.period}

    def bands(self) -> None:
        crystal = self.spec.crystal
        bands = self._find_bands(self.spec.omega_max)
        edges = band_edges(bands)

        self.results.set_columns(
            "band",
            "omega_lo",
            "omega_hi",
            "parity_lo",
            "parity_hi",
            "omega_lo_cl",
            "omega_hi_cl",
            "touch_lo",
            "touch_hi",
        )
        for band in bands:
            self.results.add_row(
                band.index,
                band.omega_lo,
                band.omega_hi,
                band.edge_parity_lo,
                band.edge_parity_hi,
                band.omega_lo * crystal.period,
                band.omega_hi * crystal.period,
                band.touch_lo,
                band.touch_hi,
            )
        self.results.update_summary(
            command="bands",
            omega_max=self.spec.omega_max,
            bands=bands,
            edges=edges,
            **self._crystal_summary(),
        )
        self.config.logger.info(f"{len(bands)} band(s), {len(edges) // 2} gap(s) of nonzero width")

    def dos(self) -> None:
        crystal = self.spec.crystal
        curve = dos_sweep(crystal, self.spec.omega_grid())

        self.results.set_columns("omega", "omega_cl", "dos", "in_gap")
        for omega, value, in_gap in zip(curve.omega, curve.value, curve.in_gap):
            self.results.add_row(omega, omega * crystal.period, value, in_gap)
        self.results.update_summary(
            command="dos",
            omega_min=self.spec.omega_min,
            omega_max=self.spec.omega_max,
            omega_steps=self.spec.omega_steps,
            gap_fraction=float(np.mean(curve.in_gap)),
            **self._crystal_summary(),
        )

    def ldos(self) -> None:
        crystal = self.spec.crystal
        omegas = self.spec.omega_grid()
        in_gap = dos_sweep(crystal, omegas).in_gap
        values = ldos(crystal, self.spec.x, omegas)

        self.results.set_columns("omega", "omega_cl", "x", "ldos", "in_gap")
        for omega, value, gap in zip(omegas, values, in_gap):
            self.results.add_row(omega, omega * crystal.period, self.spec.x, value, gap)
        self.results.update_summary(
            command="ldos",
            x=self.spec.x,
            omega_min=self.spec.omega_min,
            omega_max=self.spec.omega_max,
            omega_steps=self.spec.omega_steps,
            **self._crystal_summary(),
        )

    def edge_fit(self) -> None:
        crystal = self.spec.crystal
        numerics = self.config.numerics
        edge = self._edge()
        points = self.spec.points or DOS_WINDOW_POINTS
        self.results.update_summary(command="edge-fit", target=self.spec.target, edge=edge, **self._crystal_summary())

        if self.spec.target == Target.LDOS and self.spec.positions > 0:
            self._universality(edge, points)
            return

        window = self.spec.window or DOS_WINDOW
        detunings = detuning_ladder(edge.omega_c, window, points)
        omegas = edge.band_frequency(detunings)
        if self.spec.target == Target.DOS:
            fit = edge_exponent_dos(crystal, edge, window, points, numerics.clean_r2, numerics.touch_slope)
            values = dos_sweep(crystal, omegas).value
        else:
            fit = edge_exponent_ldos(
                crystal, edge, self.spec.x, window, points, numerics.clean_r2, numerics.touch_slope
            )
            values = ldos(crystal, self.spec.x, omegas)
            nodes = mode_nodes(edge_mode(crystal, edge))
            regime = classify_position(self.spec.x, nodes, crystal.period, numerics.guard_band)
            self.results.update_summary(x=self.spec.x, regime=regime, nodes=nodes)

        self.results.set_columns("detuning", "omega", "omega_cl", self.spec.target.value)
        for detuning, omega, value in zip(detunings, omegas, values):
            self.results.add_row(detuning, omega, omega * crystal.period, value)
        self.results.update_summary(fit=fit)
        self.config.logger.info(f"eta={fit.eta:.6f} (R^2={fit.r_squared:.6f}) at omega_c={edge.omega_c:.12g}")

    def _universality(self, edge: BandEdge, points: int) -> None:
        numerics = self.config.numerics
        crystal = self.spec.crystal
        fits = ldos_universality(
            crystal,
            edge,
            count=self.spec.positions,
            seed=self.spec.seed,
            window=self.spec.window or UNIVERSALITY_WINDOW,
            points=points,
            guard_band=numerics.guard_band,
            clean_r2=numerics.clean_r2,
            touch_slope=numerics.touch_slope,
        )
        at_nodes = node_exponents(
            crystal, edge, DOS_WINDOW, DOS_WINDOW_POINTS, numerics.clean_r2, numerics.touch_slope
        )

        self.results.set_columns("x", "regime", "eta", "amplitude", "r_squared", "clean")
        for item in fits + at_nodes:
            fit = item.fit
            self.results.add_row(item.x, item.regime, fit.eta, fit.amplitude, fit.r_squared, fit.clean)
        etas = [item.fit.eta for item in fits]
        self.results.update_summary(
            seed=self.spec.seed,
            positions=[{"x": item.x, "regime": item.regime, "fit": item.fit} for item in fits],
            nodes=[{"x": item.x, "regime": item.regime, "fit": item.fit} for item in at_nodes],
            eta_min=min(etas),
            eta_max=max(etas),
        )

    def sensitivity(self) -> None:
        crystal = self.spec.crystal
        edge = self._edge()
        nodes = mode_nodes(edge_mode(crystal, edge))
        if self.spec.node > len(nodes):
            raise ValidationError("node", f"the edge mode has {len(nodes)} node(s), asked for node {self.spec.node}")

        report = sensitivity_scan(
            crystal,
            edge,
            nodes[self.spec.node - 1],
            shift=self.spec.shift,
            window=self.spec.window or SENSITIVITY_WINDOW,
            points=self.spec.points or SENSITIVITY_POINTS,
        )
        self.results.set_columns("detuning", "omega", "omega_cl", "ratio")
        for detuning, ratio in report.ratios:
            omega = edge.band_frequency(detuning)
            self.results.add_row(detuning, omega, omega * crystal.period, ratio)
        self.results.update_summary(
            command="sensitivity", edge=edge, nodes=nodes, sensitivity=report, **self._crystal_summary()
        )

    def serate(self) -> None:
        crystal = self.spec.crystal
        dist = self.spec.dist
        omegas = self.spec.omega_grid()
        in_gap = dos_sweep(crystal, omegas).in_gap
        rates = self.worker.run(lambda w: se_rate_average(crystal, dist, float(w)), omegas, desc="serate")

        self.results.set_columns("omega", "omega_cl", "rate", "in_gap")
        for omega, rate, gap in zip(omegas, rates, in_gap):
            self.results.add_row(omega, omega * crystal.period, math.nan if rate is None else rate, gap)
        self.results.update_summary(
            command="serate",
            dist=dist,
            omega_min=self.spec.omega_min,
            omega_max=self.spec.omega_max,
            omega_steps=self.spec.omega_steps,
            failures=self.worker.counter.failure,
            **self._crystal_summary(),
        )

    def _model(self):
        A = self.spec.A if self.spec.A is not None else self.spec.omega_c / self.spec.k0**2
        if self.spec.model == ModelKind.ISOTROPIC:
            return IsotropicModel(omega_c=self.spec.omega_c, k0=self.spec.k0, A=A)
        return AnisotropicModel(omega_c=self.spec.omega_c, A=A)

    def models(self) -> None:
        model = self._model()
        if self.spec.is_explicit("omega_min") or self.spec.is_explicit("omega_max"):
            omegas = self.spec.omega_grid()
        else:
            lo, hi = MODEL_OMEGA_SPAN
            omegas = model.omega_c * (1.0 + np.linspace(lo, hi, self.spec.omega_steps))
        values = self.worker.run(lambda w: float(model_dos(model, float(w))), omegas, desc="models")

        self.results.set_columns("omega", "detuning", "dos")
        for omega, value in zip(omegas, values):
            self.results.add_row(omega, omega - model.omega_c, math.nan if value is None else value)

        window = self.spec.window or MODEL_FIT_WINDOW
        detunings = detuning_ladder(model.omega_c, window, self.spec.points or DOS_WINDOW_POINTS)
        fit = fit_exponent(zip(detunings, model_dos(model, model.omega_c + detunings)))
        self.results.update_summary(command="models", model=model, fit=fit, failures=self.worker.counter.failure)

    def nodes(self) -> None:
        crystal = self.spec.crystal
        edge = self._edge()
        mode = edge_mode(crystal, edge)
        extrema = mode_extrema(mode)

        self.results.set_columns("kind", "x", "x_reduced", "intensity")
        labelled = [("node", x) for x in extrema.nodes]
        labelled += [("soft-minimum", x) for x in extrema.soft_minima]
        labelled += [("maximum", x) for x in extrema.maxima]
        for kind, x in sorted(labelled, key=lambda item: item[1]):
            self.results.add_row(kind, x, x / crystal.period, mode.intensity(x))
        self.results.update_summary(
            command="nodes",
            edge=edge,
            node_count=len(extrema.nodes),
            soft_minimum_count=len(extrema.soft_minima),
            maximum_count=len(extrema.maxima),
            **self._crystal_summary(),
        )
