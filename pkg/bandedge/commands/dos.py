# Unless explicitly stated otherwise all files in this repository are licensed
# under the 3-clause BSD style license (see LICENSE).

from click import command

from bandedge.commands.shared.options import (
    common_options,
    frequency_options,
)
from bandedge.commands.shared.utils import run_cmd
from bandedge.constants import Command


@command(Command.DOS.value, short_help="Sweep the photonic density of states.")
@common_options
@frequency_options
def dos(**kwargs):
    """Sweep the photonic density of states."""
    run_cmd(Command.DOS, **kwargs)
