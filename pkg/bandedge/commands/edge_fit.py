# Unless explicitly stated otherwise all files in this repository are licensed
# under the 3-clause BSD style license (see LICENSE).

from click import command

from bandedge.commands.shared.options import (
    common_options,
    edge_options,
    fit_options,
    frequency_options,
    ladder_options,
    position_options,
)
from bandedge.commands.shared.utils import run_cmd
from bandedge.constants import Command


@command(Command.EDGE_FIT.value, short_help="Fit the power-law exponent of the DOS or LDOS at a band edge.")
@common_options
@frequency_options
@position_options
@edge_options
@ladder_options
@fit_options
def edge_fit(**kwargs):
    """Fit the power-law exponent of the DOS or LDOS at a band edge."""
    run_cmd(Command.EDGE_FIT, **kwargs)
