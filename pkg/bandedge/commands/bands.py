# Unless explicitly stated otherwise all files in this repository are licensed
# under the 3-clause BSD style license (see LICENSE).

from click import command

from bandedge.commands.shared.options import (
    common_options,
    frequency_options,
)
from bandedge.commands.shared.utils import run_cmd
from bandedge.constants import Command


@command(Command.BANDS.value, short_help="List the bands and gap edges of the crystal.")
@common_options
@frequency_options
def bands(**kwargs):
    """List the bands and gap edges of the crystal."""
    run_cmd(Command.BANDS, **kwargs)
