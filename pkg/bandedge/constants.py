# Unless explicitly stated otherwise all files in this repository are licensed
# under the 3-clause BSD style license (see LICENSE).

from enum import Enum

# Environment variables
BANDEDGE_SCAN_DENSITY = "BANDEDGE_SCAN_DENSITY"
BANDEDGE_ROOT_RTOL = "BANDEDGE_ROOT_RTOL"
BANDEDGE_TOUCH_SLOPE = "BANDEDGE_TOUCH_SLOPE"
BANDEDGE_CLEAN_R2 = "BANDEDGE_CLEAN_R2"
BANDEDGE_GUARD_BAND = "BANDEDGE_GUARD_BAND"
BANDEDGE_SHOW_PROGRESS_BAR = "BANDEDGE_SHOW_PROGRESS_BAR"

LOGGER_NAME = "bandedge"

# Numerical defaults
DEFAULT_SCAN_DENSITY = 20_000  # grid points per unit of omega * period
RESCAN_FACTOR = 4
ROOT_RTOL = 1e-12
TOUCH_SLOPE = 1e-8
TOUCH_TOLERANCE = 1e-12
TOUCH_OFFSET = 1e-4  # relative offset of the two samples averaged at a touch frequency
MAX_SCAN_EXTENSIONS = 64
DEGENERACY_TOLERANCE = 1e-10
GAUSS_ORDER = 32
NODE_SCAN_POINTS = 4096
NODE_XTOL = 1e-12
NODE_RESOLUTION = 1e-9
GUARD_BAND = 1e-3
CLEAN_R2 = 0.99
MIN_FIT_SAMPLES = 8
MIN_K_SAMPLES = 1000

DOS_WINDOW = (1e-6, 1e-4)
DOS_WINDOW_POINTS = 16
UNIVERSALITY_WINDOW = (1e-9, 1e-7)
UNIVERSALITY_POSITIONS = 20
SENSITIVITY_WINDOW = (1e-8, 1e-3)
SENSITIVITY_POINTS = 26
SENSITIVITY_SHIFT = 1e-4
SLOPE_TAIL_POINTS = 6

# Relative rate convention: rate = RATE_CONSTANT * ldos
RATE_CONSTANT = 1.0
QUAD_EPSREL = 1e-8
WRAPPED_GAUSSIAN_IMAGES = 4
NORMALIZATION_TOLERANCE = 1e-10

# Run defaults, frequencies in units of c / period
DEFAULT_OMEGA_MIN = 0.01
DEFAULT_OMEGA_MAX = 8.0
DEFAULT_OMEGA_STEPS = 801
MODEL_FIT_WINDOW = (1e-8, 1e-5)
MODEL_OMEGA_SPAN = (1e-4, 0.5)  # model sweeps cover omega_c * (1 + span)

# Output
CSV_FLOAT_FORMAT = ".17g"
CSV_COMMENT = "#"

# Exit codes
EXIT_CONFIG_ERROR = 2
EXIT_NUMERICAL_ERROR = 3


# Commands
class Command(Enum):
    BANDS = "bands"
    DOS = "dos"
    LDOS = "ldos"
    EDGE_FIT = "edge-fit"
    SENSITIVITY = "sensitivity"
    SERATE = "serate"
    MODELS = "models"
    NODES = "nodes"


# Which side of the gap the adjacent band lies on
class Side(Enum):
    LOWER = "lower"
    UPPER = "upper"


class Target(Enum):
    DOS = "dos"
    LDOS = "ldos"


class ModelKind(Enum):
    ISOTROPIC = "isotropic"
    ANISOTROPIC = "anisotropic"


class DistributionKind(Enum):
    DELTA = "delta"
    UNIFORM = "uniform"
    GAUSS = "gauss"
    MIXTURE = "mixture"


# Position classification relative to edge-mode nodes
class Regime(Enum):
    GENERIC = "generic"
    NEAR_NODE = "near-node"
    NODE = "node"


class OutputFormat(Enum):
    CSV = "csv"
    JSON = "json"
