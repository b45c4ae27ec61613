# Unless explicitly stated otherwise all files in this repository are licensed
# under the 3-clause BSD style license (see LICENSE).

from bandedge.model.crystal import Layer, LayeredCrystal, build_crystal, permittivity_at
from bandedge.model.transfer import (
    bloch_trace,
    bloch_trace_derivative,
    cell_matrix,
    determinant,
    half_trace,
    layer_matrix,
    propagate_to,
)
from bandedge.model.spectrum import (
    Band,
    BandEdge,
    DosCurve,
    band_edges,
    band_of,
    dispersion,
    dos,
    dos_histogram_oracle,
    dos_sweep,
    find_bands,
    on_touch,
    select_edge,
)
from bandedge.model.ldos import (
    BlochMode,
    ModeExtrema,
    bloch_mode,
    edge_mode,
    ldos,
    ldos_histogram_oracle,
    mode_extrema,
    mode_nodes,
)
from bandedge.model.asymptotics import (
    AsymptoticFit,
    PositionFit,
    SensitivityReport,
    detuning_ladder,
    edge_exponent_dos,
    edge_exponent_ldos,
    fit_exponent,
    ldos_universality,
    node_exponents,
    sensitivity_scan,
)
from bandedge.model.band_models import (
    AnisotropicModel,
    IsotropicModel,
    anisotropic_dos,
    isotropic_dos,
    kspace_dos_oracle,
)
from bandedge.model.emission import EmitterDistribution, se_rate, se_rate_average

__all__ = [
    "Layer",
    "LayeredCrystal",
    "build_crystal",
    "permittivity_at",
    "bloch_trace",
    "bloch_trace_derivative",
    "cell_matrix",
    "determinant",
    "half_trace",
    "layer_matrix",
    "propagate_to",
    "Band",
    "BandEdge",
    "DosCurve",
    "band_edges",
    "band_of",
    "dispersion",
    "dos",
    "dos_histogram_oracle",
    "dos_sweep",
    "find_bands",
    "on_touch",
    "select_edge",
    "BlochMode",
    "ModeExtrema",
    "bloch_mode",
    "edge_mode",
    "ldos",
    "ldos_histogram_oracle",
    "mode_extrema",
    "mode_nodes",
    "AsymptoticFit",
    "PositionFit",
    "SensitivityReport",
    "detuning_ladder",
    "edge_exponent_dos",
    "edge_exponent_ldos",
    "fit_exponent",
    "ldos_universality",
    "node_exponents",
    "sensitivity_scan",
    "AnisotropicModel",
    "IsotropicModel",
    "anisotropic_dos",
    "isotropic_dos",
    "kspace_dos_oracle",
    "EmitterDistribution",
    "se_rate",
    "se_rate_average",
]
