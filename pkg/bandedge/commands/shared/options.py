# Unless explicitly stated otherwise all files in this repository are licensed
# under the 3-clause BSD style license (see LICENSE).
from __future__ import annotations
from sys import exit

from click import Choice, Option, ParamType, Path, echo, option

from bandedge import constants
from bandedge.utils.configuration import parse_distribution, parse_window
from bandedge.utils.errors import ValidationError
from typing import TYPE_CHECKING, Any, Callable, Dict, List, Optional

if TYPE_CHECKING:
    from click.core import Context, Parameter


class CustomOptionClass(Option):
    def handle_parse_result(self, ctx: Context, opts: Dict[Any, Any], args: List[Any]) -> Any:
        try:
            return super(Option, self).handle_parse_result(ctx, opts, args)
        except Exception as e:
            if self.is_flag:
                echo(f"Invalid value for Option '{self.human_readable_name}'. Valid values [True, False]", err=True)
            else:
                echo(f"Invalid value for Option '{self.human_readable_name}': {str(e)}", err=True)
            exit(constants.EXIT_CONFIG_ERROR)


class WindowType(ParamType):
    name = "lo:hi"

    def convert(self, value: Any, param: Optional[Parameter], ctx: Optional[Context]) -> Any:
        if isinstance(value, tuple):
            return value
        try:
            return parse_window(value)
        except ValidationError as e:
            self.fail(str(e), param, ctx)


class DistributionType(ParamType):
    name = "dist"

    def convert(self, value: Any, param: Optional[Parameter], ctx: Optional[Context]) -> Any:
        try:
            return parse_distribution(value)
        except ValidationError as e:
            self.fail(str(e), param, ctx)


_common_options = [
    option(
        "--config",
        required=False,
        type=Path(exists=True, dir_okay=False),
        help="JSON document with the layer stack and optional run parameters.",
        cls=CustomOptionClass,
    ),
    option(
        "--out",
        required=False,
        type=Path(dir_okay=False),
        help="Write the CSV table to this file.",
        cls=CustomOptionClass,
    ),
    option(
        "--json",
        "json_path",
        required=False,
        type=Path(dir_okay=False),
        help="Write the JSON summary to this file.",
        cls=CustomOptionClass,
    ),
    option(
        "--show-progress-bar",
        envvar=constants.BANDEDGE_SHOW_PROGRESS_BAR,
        required=False,
        type=bool,
        default=True,
        show_default=True,
        help="Show or hide the progress bar",
        cls=CustomOptionClass,
    ),
    option(
        "--verbose",
        "-v",
        required=False,
        is_flag=True,
        help="Enable verbose logging.",
        cls=CustomOptionClass,
    ),
]

_numerics_options = [
    option(
        "--scan-density",
        envvar=constants.BANDEDGE_SCAN_DENSITY,
        required=False,
        type=float,
        default=constants.DEFAULT_SCAN_DENSITY,
        show_default=True,
        help="Band scan grid points per unit of omega * period.",
        cls=CustomOptionClass,
    ),
    option(
        "--root-rtol",
        envvar=constants.BANDEDGE_ROOT_RTOL,
        required=False,
        type=float,
        default=constants.ROOT_RTOL,
        show_default=True,
        help="Relative tolerance of band-edge bisection.",
        cls=CustomOptionClass,
    ),
    option(
        "--touch-slope",
        envvar=constants.BANDEDGE_TOUCH_SLOPE,
        required=False,
        type=float,
        default=constants.TOUCH_SLOPE,
        show_default=True,
        help="Half-trace slope below which a gap counts as a zero-width touch.",
        cls=CustomOptionClass,
    ),
    option(
        "--clean-r2",
        envvar=constants.BANDEDGE_CLEAN_R2,
        required=False,
        type=float,
        default=constants.CLEAN_R2,
        show_default=True,
        help="Minimum R^2 for a power-law fit to count as clean.",
        cls=CustomOptionClass,
    ),
    option(
        "--guard-band",
        envvar=constants.BANDEDGE_GUARD_BAND,
        required=False,
        type=float,
        default=constants.GUARD_BAND,
        show_default=True,
        help="Half-width, in cell lengths, of the region around a node treated as near-node.",
        cls=CustomOptionClass,
    ),
]

# Run parameters default to None so that values from --config are not overridden
_frequency_options = [
    option(
        "--omega-min",
        required=False,
        type=float,
        help=f"Lowest frequency of the sweep, in c/period units. [default: {constants.DEFAULT_OMEGA_MIN}]",
        cls=CustomOptionClass,
    ),
    option(
        "--omega-max",
        required=False,
        type=float,
        help=f"Highest frequency of the sweep or band scan. [default: {constants.DEFAULT_OMEGA_MAX}]",
        cls=CustomOptionClass,
    ),
    option(
        "--omega-steps",
        required=False,
        type=int,
        help=f"Number of sweep frequencies. [default: {constants.DEFAULT_OMEGA_STEPS}]",
        cls=CustomOptionClass,
    ),
]

_position_options = [
    option(
        "--x",
        required=False,
        type=float,
        help="Position inside the cell. [default: 0]",
        cls=CustomOptionClass,
    ),
]

_edge_options = [
    option(
        "--gap",
        required=False,
        type=int,
        help="Gap of nonzero width, counted from 1 at the lowest frequency. [default: 1]",
        cls=CustomOptionClass,
    ),
    option(
        "--side",
        required=False,
        type=Choice([s.value for s in constants.Side], case_sensitive=False),
        help="Edge below (lower) or above (upper) the gap. [default: lower]",
        cls=CustomOptionClass,
    ),
]

_ladder_options = [
    option(
        "--window",
        required=False,
        type=WindowType(),
        help="Detuning window relative to the edge frequency, e.g. 1e-6:1e-4.",
        cls=CustomOptionClass,
    ),
    option(
        "--points",
        required=False,
        type=int,
        help="Number of geometric detunings in the window.",
        cls=CustomOptionClass,
    ),
]

_fit_options = [
    option(
        "--target",
        required=False,
        type=Choice([t.value for t in constants.Target], case_sensitive=False),
        help="Fit the DOS or the LDOS at --x. [default: dos]",
        cls=CustomOptionClass,
    ),
    option(
        "--positions",
        required=False,
        type=int,
        help="With --target ldos: fit at this many random positions outside node guard bands.",
        cls=CustomOptionClass,
    ),
    option(
        "--seed",
        required=False,
        type=int,
        help="Seed of the random positions. [default: 0]",
        cls=CustomOptionClass,
    ),
]

_sensitivity_options = [
    option(
        "--shift",
        required=False,
        type=float,
        help="Displacement from the node. [default: 1e-4 of the period]",
        cls=CustomOptionClass,
    ),
    option(
        "--node",
        required=False,
        type=int,
        help="Which node of the edge mode, counted from 1 at x = 0. [default: 1]",
        cls=CustomOptionClass,
    ),
]

_emission_options = [
    option(
        "--dist",
        required=False,
        type=DistributionType(),
        help="Emitter positions: delta:<x0>, uniform or gauss:<x0>:<sigma>. [default: uniform]",
        cls=CustomOptionClass,
    ),
]

_model_options = [
    option(
        "--model",
        required=False,
        type=Choice([m.value for m in constants.ModelKind], case_sensitive=False),
        help="Model dispersion. [default: isotropic]",
        cls=CustomOptionClass,
    ),
    option(
        "--omega-c",
        required=False,
        type=float,
        help="Model edge frequency. [default: 1]",
        cls=CustomOptionClass,
    ),
    option(
        "--k0",
        required=False,
        type=float,
        help="Model Brillouin-zone boundary wavenumber. [default: 1]",
        cls=CustomOptionClass,
    ),
    option(
        "--A",
        "A",
        required=False,
        type=float,
        help="Model curvature. [default: omega_c / k0^2]",
        cls=CustomOptionClass,
    ),
]


def common_options(func: Callable) -> Callable:
    return _build_options_helper(func, _common_options + _numerics_options)


def frequency_options(func: Callable) -> Callable:
    return _build_options_helper(func, _frequency_options)


def position_options(func: Callable) -> Callable:
    return _build_options_helper(func, _position_options)


def edge_options(func: Callable) -> Callable:
    return _build_options_helper(func, _edge_options)


def ladder_options(func: Callable) -> Callable:
    return _build_options_helper(func, _ladder_options)


def fit_options(func: Callable) -> Callable:
    return _build_options_helper(func, _fit_options)


def sensitivity_options(func: Callable) -> Callable:
    return _build_options_helper(func, _sensitivity_options)


def emission_options(func: Callable) -> Callable:
    return _build_options_helper(func, _emission_options)


def model_options(func: Callable) -> Callable:
    return _build_options_helper(func, _model_options)


def _build_options_helper(func: Callable, options: List[Callable]) -> Callable:
    for _option in options:
        func = _option(func)
    return func
