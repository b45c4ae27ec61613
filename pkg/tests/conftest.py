# Unless explicitly stated otherwise all files in this repository are licensed
# under the 3-clause BSD style license (see LICENSE).

import json
import math

import pytest

from bandedge.model.crystal import build_crystal

# Quarter-wave stack n1 d1 = n2 d2 = 2/3, first gap centred at 3 pi / 4
CANONICAL_LAYERS = [(1.0, 2.0 / 3.0), (2.0, 1.0 / 3.0)]
CANONICAL_MIDGAP = 3.0 * math.pi / 4.0
# Thin high-index layer, its bands are narrower than a coarse scan step
NARROW_BAND_LAYERS = [(1.0, 0.9), (40.0, 0.1)]


def canonical_edges():
    half_width = 2.0 / math.pi * math.asin(1.0 / 3.0)
    return CANONICAL_MIDGAP * (1.0 - half_width), CANONICAL_MIDGAP * (1.0 + half_width)


@pytest.fixture()
def runner():
    from click.testing import CliRunner

    return CliRunner(mix_stderr=False)


@pytest.fixture(scope="session")
def canonical():
    return build_crystal(CANONICAL_LAYERS)


@pytest.fixture(scope="session")
def asymmetric():
    return build_crystal([(1.0, 0.3), (3.0, 0.2), (1.5, 0.5)])


@pytest.fixture(scope="session")
def high_contrast():
    return build_crystal([(1.0, 0.7), (3.5, 0.3)])


@pytest.fixture(scope="session")
def narrow_band():
    return build_crystal(NARROW_BAND_LAYERS)


@pytest.fixture(scope="session")
def uniform():
    return build_crystal([(1.5, 1.0)])


@pytest.fixture()
def config_file(tmp_path):
    def _write(**params):
        document = {"layers": [{"n": n, "d": d} for n, d in CANONICAL_LAYERS]}
        document.update(params)
        path = tmp_path / "crystal.json"
        path.write_text(json.dumps(document), encoding="utf-8")
        return str(path)

    return _write
