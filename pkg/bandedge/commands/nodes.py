# Unless explicitly stated otherwise all files in this repository are licensed
# under the 3-clause BSD style license (see LICENSE).

from click import command

from bandedge.commands.shared.options import (
    common_options,
    edge_options,
    frequency_options,
)
from bandedge.commands.shared.utils import run_cmd
from bandedge.constants import Command


@command(Command.NODES.value, short_help="List nodes and maxima of a band-edge standing wave.")
@common_options
@frequency_options
@edge_options
def nodes(**kwargs):
    """List nodes and maxima of a band-edge standing wave."""
    run_cmd(Command.NODES, **kwargs)
