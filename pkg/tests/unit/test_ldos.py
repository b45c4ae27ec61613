# Unless explicitly stated otherwise all files in this repository are licensed
# under the 3-clause BSD style license (see LICENSE).

import math

import numpy as np
import pytest

from bandedge.constants import Side
from bandedge.model.ldos import (
    bloch_mode,
    edge_mode,
    layer_energies,
    ldos,
    ldos_histogram_oracle,
    mode_extrema,
    mode_nodes,
    normalization_integral,
    standing_wave,
)
from bandedge.model.spectrum import band_edges, dos_sweep, find_bands, select_edge
from bandedge.model.transfer import bloch_trace
from bandedge.utils.errors import DegenerateGap, InGap, ValidationError
from tests.conftest import CANONICAL_MIDGAP


@pytest.fixture(scope="module")
def canonical_edges_list(canonical):
    return band_edges(find_bands(canonical, 4.0))


def _cell_average(crystal, omegas, order=32):
    nodes, weights = np.polynomial.legendre.leggauss(order)
    total = np.zeros(len(omegas))
    for layer, start in zip(crystal.layers, crystal.boundaries[:-1]):
        half = 0.5 * layer.thickness
        points = start + half * (nodes + 1.0)
        values = ldos(crystal, points[None, :], np.asarray(omegas)[:, None])
        total += layer.permittivity * half * (values @ weights)
    return total / crystal.period


@pytest.mark.parametrize("fixture", ["canonical", "asymmetric", "high_contrast"])
def test_sum_rule(request, fixture):
    crystal = request.getfixturevalue(fixture)
    rng = np.random.default_rng(7)
    candidates = rng.uniform(0.05, 6.0, 2000)
    omegas = candidates[np.abs(bloch_trace(crystal, candidates)) < 0.98][:50]
    assert len(omegas) == 50
    assert _cell_average(crystal, omegas) == pytest.approx(dos_sweep(crystal, omegas).value, rel=1e-6)


@pytest.mark.parametrize("x", [0.0, 0.13, 0.5, 0.99, 7.25])
def test_uniform_ldos(uniform, x):
    assert ldos(uniform, x, 1.1) == pytest.approx(1.0 / (1.5 * math.pi), rel=1e-10)


def test_ldos_is_zero_in_gap(canonical):
    assert ldos(canonical, 0.3, CANONICAL_MIDGAP) == 0.0
    values = ldos(canonical, 0.3, np.array([1.0, CANONICAL_MIDGAP]))
    assert values[0] > 0.0
    assert values[1] == 0.0


def test_ldos_is_periodic(asymmetric):
    assert ldos(asymmetric, 0.37, 2.2) == pytest.approx(ldos(asymmetric, 3.37, 2.2), rel=1e-12)


def test_uniform_average_differs_from_dos(canonical):
    xs = np.linspace(0.0, 1.0, 4000, endpoint=False)
    plain_average = np.mean(ldos(canonical, xs, 1.0))
    assert abs(plain_average - dos_sweep(canonical, [1.0]).value[0]) > 1e-3


def test_bloch_mode(asymmetric):
    bands = find_bands(asymmetric, 3.0)
    omega = 0.5 * (bands[0].omega_lo + bands[0].omega_hi)
    mode = bloch_mode(asymmetric, omega, bands=bands)
    assert mode.band_index == 1
    assert 0.0 <= mode.K <= math.pi / asymmetric.period
    assert mode.bloch_residual() < 1e-10
    assert normalization_integral(mode) == pytest.approx(1.0, abs=1e-12)
    assert normalization_integral(mode, quadrature=True) == pytest.approx(1.0, abs=1e-10)
    assert np.sum(layer_energies(mode)) == pytest.approx(1.0)
    # continued outside the cell with the Bloch factor
    assert mode.field(1.4) == pytest.approx(mode.eigenvalue * mode.field(0.4))


def test_bloch_mode_in_gap(canonical):
    with pytest.raises(InGap):
        bloch_mode(canonical, CANONICAL_MIDGAP)


@pytest.mark.parametrize("side, node", [(Side.LOWER, 1.0 / 3.0), (Side.UPPER, 5.0 / 6.0)])
def test_quarter_wave_edge_mode_nodes(canonical, canonical_edges_list, side, node):
    mode = edge_mode(canonical, select_edge(canonical_edges_list, 1, side))
    assert mode.is_real
    assert mode.bloch_residual() < 1e-10
    assert normalization_integral(mode, quadrature=True) == pytest.approx(1.0, abs=1e-10)
    nodes = mode_nodes(mode)
    assert nodes == pytest.approx([node], abs=1e-9)
    assert abs(mode.field(nodes[0])) < 1e-9


def test_edge_mode_extrema(asymmetric):
    edges = band_edges(find_bands(asymmetric, 6.0))
    for edge in edges:
        extrema = mode_extrema(edge_mode(asymmetric, edge))
        # a real standing wave alternates between zeros and maxima of |E|
        assert len(extrema.nodes) == len(extrema.maxima)
        assert extrema.soft_minima == []
        assert all(0.0 <= x < asymmetric.period for x in extrema.nodes + extrema.maxima)
        # antiperiodic modes have an odd number of nodes per cell
        assert len(extrema.nodes) % 2 == (1 if edge.parity == -1 else 0)


def test_plane_wave_has_no_nodes(uniform):
    extrema = mode_extrema(bloch_mode(uniform, 1.1))
    assert extrema.nodes == []
    assert extrema.maxima == []


def test_standing_wave_at_touch(canonical):
    with pytest.raises(DegenerateGap):
        standing_wave(canonical, 2.0 * CANONICAL_MIDGAP, 1)


def test_ldos_vanishes_at_node(canonical, canonical_edges_list):
    edge = select_edge(canonical_edges_list, 1, Side.UPPER)
    node = mode_nodes(edge_mode(canonical, edge))[0]
    values = ldos(canonical, node, edge.band_frequency(edge.omega_c * np.array([1e-3, 1e-5, 1e-7])))
    assert values[0] > values[1] > values[2] > 0.0


def test_ldos_histogram_oracle_uniform(uniform):
    bins = np.linspace(0.3, 1.9, 9)
    oracle = ldos_histogram_oracle(uniform, 0.4, bins, K_samples=10_000)
    assert oracle == pytest.approx(np.full(8, 1.0 / (1.5 * math.pi)), rel=2e-2)


def test_ldos_histogram_oracle(canonical):
    bins = np.linspace(0.3, 1.6, 14)
    oracle = ldos_histogram_oracle(canonical, 0.2, bins, K_samples=10_000)
    direct = np.array([np.mean(ldos(canonical, 0.2, np.linspace(a, b, 201))) for a, b in zip(bins, bins[1:])])
    assert oracle == pytest.approx(direct, rel=2e-2)


def test_ldos_histogram_oracle_sample_count(canonical):
    with pytest.raises(ValidationError):
        ldos_histogram_oracle(canonical, 0.2, np.array([0.3, 0.4]), K_samples=999)


@pytest.mark.parametrize("fixture", ["canonical", "asymmetric", "high_contrast"])
def test_ldos_is_continuous_across_interfaces(request, fixture):
    crystal = request.getfixturevalue(fixture)
    candidates = np.linspace(0.1, 6.0, 400)
    omegas = candidates[np.abs(bloch_trace(crystal, candidates)) < 0.98][::20]
    eps = 1e-12 * crystal.period
    for boundary in crystal.boundaries[1:-1]:
        left = ldos(crystal, boundary - eps, omegas)
        right = ldos(crystal, boundary + eps, omegas)
        assert np.max(np.abs(left - right)) < 1e-8
    # and across the cell boundary
    assert ldos(crystal, eps, omegas) == pytest.approx(ldos(crystal, crystal.period - eps, omegas), abs=1e-8)


def test_ldos_is_nonnegative(asymmetric):
    xs = np.linspace(0.0, asymmetric.period, 256, endpoint=False)
    omegas = np.linspace(0.05, 8.0, 256)
    values = ldos(asymmetric, xs[None, :], omegas[:, None])
    assert values.shape == (256, 256)
    assert np.all(np.isfinite(values))
    assert np.all(values >= 0.0)
    in_band = ~dos_sweep(asymmetric, omegas).in_gap
    assert np.all(values[in_band] > 0.0)
    assert np.all(values[~in_band] == 0.0)


def test_edge_mode_node_count_follows_gap_order(asymmetric):
    edges = [edge for edge in band_edges(find_bands(asymmetric, 9.0)) if edge.gap_index <= 4]
    counts = [len(mode_nodes(edge_mode(asymmetric, edge))) for edge in edges]
    assert counts == sorted(counts)
    assert counts == [1, 1, 2, 2, 3, 3, 4, 4]


@pytest.mark.parametrize("fixture", ["canonical", "asymmetric", "uniform"])
def test_ldos_at_zero_frequency(request, fixture):
    crystal = request.getfixturevalue(fixture)
    xs = np.array([0.1, 0.45, 0.8]) * crystal.period
    expected = 1.0 / (math.pi * math.sqrt(crystal.mean_permittivity))
    assert ldos(crystal, xs, 0.0) == pytest.approx(np.full(3, expected), rel=1e-6)


def test_ldos_at_touch(uniform, canonical):
    assert ldos(uniform, 0.3, 2.0 * math.pi / 1.5) == pytest.approx(1.0 / (1.5 * math.pi), rel=1e-7)
    touch = 2.0 * CANONICAL_MIDGAP
    values = ldos(canonical, np.array([0.1, 0.5, 0.9]), touch)
    assert np.all(values > 0.0)
    assert _cell_average(canonical, [touch])[0] == pytest.approx(dos_sweep(canonical, [touch]).value[0], rel=1e-6)
