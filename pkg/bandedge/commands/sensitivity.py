# Unless explicitly stated otherwise all files in this repository are licensed
# under the 3-clause BSD style license (see LICENSE).

from click import command

from bandedge.commands.shared.options import (
    common_options,
    edge_options,
    frequency_options,
    ladder_options,
    sensitivity_options,
)
from bandedge.commands.shared.utils import run_cmd
from bandedge.constants import Command


@command(Command.SENSITIVITY.value, short_help="LDOS ratio between an edge-mode node and a shifted position.")
@common_options
@frequency_options
@edge_options
@ladder_options
@sensitivity_options
def sensitivity(**kwargs):
    """LDOS ratio between an edge-mode node and a shifted position."""
    run_cmd(Command.SENSITIVITY, **kwargs)
