# Unless explicitly stated otherwise all files in this repository are licensed
# under the 3-clause BSD style license (see LICENSE).

import math

import numpy as np
import pytest

from bandedge.constants import MODEL_FIT_WINDOW
from bandedge.model.asymptotics import detuning_ladder, fit_exponent
from bandedge.model.band_models import (
    AnisotropicModel,
    IsotropicModel,
    anisotropic_dos,
    isotropic_dos,
    kspace_dos_oracle,
    model_dos,
)
from bandedge.utils.errors import AtEdge, BelowEdge, BranchExhausted, ValidationError


def _shell_average(model, bins):
    # integral of k^2 / (2 pi^2) dk over each bin, per unit frequency
    k = model.wavenumber(bins)
    return np.abs(np.diff(k**3)) / (6.0 * math.pi**2) / np.diff(bins)


def test_isotropic_default_curvature():
    assert IsotropicModel(omega_c=2.0, k0=0.5).A == pytest.approx(8.0)


@pytest.mark.parametrize(
    "model",
    [
        lambda: IsotropicModel(omega_c=0.0, k0=1.0),
        lambda: IsotropicModel(omega_c=1.0, k0=-1.0),
        lambda: IsotropicModel(omega_c=1.0, k0=1.0, A=0.0),
        lambda: AnisotropicModel(omega_c=1.0, A=math.inf),
    ],
)
def test_model_validation(model):
    with pytest.raises(ValidationError):
        model()


def test_isotropic_dos_near_edge():
    model = IsotropicModel(omega_c=1.0, k0=1.0, A=1.0)
    expected = 1.0 / (4.0 * math.pi**2 * 1e-3)
    assert isotropic_dos(model, 1.0 + 1e-6) == pytest.approx(expected, rel=3e-3)
    assert isotropic_dos(model, 1.0 - 1e-6) == pytest.approx(expected, rel=3e-3)


def test_isotropic_dos_curvature_scaling():
    narrow = IsotropicModel(omega_c=1.0, k0=1.0, A=1.0)
    wide = IsotropicModel(omega_c=1.0, k0=1.0, A=2.0)
    omega = 1.0 + 1e-10
    assert isotropic_dos(wide, omega) / isotropic_dos(narrow, omega) == pytest.approx(1.0 / math.sqrt(2.0), rel=1e-4)


def test_isotropic_dos_errors():
    model = IsotropicModel(omega_c=1.0, k0=1.0, A=1.0)
    with pytest.raises(AtEdge):
        isotropic_dos(model, 1.0)
    with pytest.raises(BranchExhausted):
        isotropic_dos(model, np.array([0.5, 0.0]))


def test_anisotropic_dos():
    model = AnisotropicModel(omega_c=1.0, A=1.0)
    assert anisotropic_dos(model, 1.0) == 0.0
    assert anisotropic_dos(model, 1.25) == pytest.approx(0.5 / (4.0 * math.pi**2))
    with pytest.raises(BelowEdge):
        anisotropic_dos(model, 0.999)


@pytest.mark.parametrize(
    "model, eta",
    [
        (IsotropicModel(omega_c=1.0, k0=1.0), -0.5),
        (IsotropicModel(omega_c=3.0, k0=2.0, A=0.4), -0.5),
        (AnisotropicModel(omega_c=1.0, A=1.0), 0.5),
        (AnisotropicModel(omega_c=0.2, A=5.0), 0.5),
    ],
)
def test_model_exponents(model, eta):
    detunings = detuning_ladder(model.omega_c, MODEL_FIT_WINDOW, 16)
    fit = fit_exponent(zip(detunings, model_dos(model, model.omega_c + detunings)))
    assert fit.eta == pytest.approx(eta, abs=0.01)


@pytest.mark.parametrize(
    "bins",
    [
        1.0 + np.array([0.01, 0.1, 0.2, 0.3, 0.4, 0.5]),
        1.0 - np.array([0.5, 0.4, 0.3, 0.2, 0.1, 0.01]),
    ],
)
def test_isotropic_oracle(bins):
    model = IsotropicModel(omega_c=1.0, k0=1.0, A=1.0)
    oracle = kspace_dos_oracle(model, bins, samples=100_000)
    assert oracle == pytest.approx(_shell_average(model, bins), rel=1e-3)


def test_anisotropic_oracle():
    model = AnisotropicModel(omega_c=1.0, A=1.0)
    detunings = np.array([0.2, 0.4, 0.6, 0.8, 1.0])
    oracle = kspace_dos_oracle(model, 1.0 + detunings, samples=1_000_000, seed=0)
    expected = (2.0 / 3.0) * np.diff(detunings**1.5) / (4.0 * math.pi**2) / np.diff(detunings)
    assert oracle == pytest.approx(expected, rel=1e-2)


def test_anisotropic_oracle_is_seeded():
    model = AnisotropicModel(omega_c=1.0, A=1.0)
    bins = np.array([1.1, 1.5, 2.0])
    first = kspace_dos_oracle(model, bins, samples=10_000, seed=5)
    assert np.array_equal(first, kspace_dos_oracle(model, bins, samples=10_000, seed=5))


def test_oracle_sample_count():
    with pytest.raises(ValidationError):
        kspace_dos_oracle(AnisotropicModel(omega_c=1.0, A=1.0), np.array([1.1, 1.2]), samples=0)
