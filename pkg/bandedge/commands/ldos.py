# Unless explicitly stated otherwise all files in this repository are licensed
# under the 3-clause BSD style license (see LICENSE).

from click import command

from bandedge.commands.shared.options import (
    common_options,
    frequency_options,
    position_options,
)
from bandedge.commands.shared.utils import run_cmd
from bandedge.constants import Command


@command(Command.LDOS.value, short_help="Sweep the local density of states at one position.")
@common_options
@frequency_options
@position_options
def ldos(**kwargs):
    """Sweep the local density of states at one position."""
    run_cmd(Command.LDOS, **kwargs)
