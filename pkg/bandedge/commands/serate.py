# Unless explicitly stated otherwise all files in this repository are licensed
# under the 3-clause BSD style license (see LICENSE).

from click import command

from bandedge.commands.shared.options import (
    common_options,
    emission_options,
    frequency_options,
)
from bandedge.commands.shared.utils import run_cmd
from bandedge.constants import Command


@command(Command.SERATE.value, short_help="Sweep the spontaneous-emission rate averaged over emitter positions.")
@common_options
@frequency_options
@emission_options
def serate(**kwargs):
    """Sweep the spontaneous-emission rate averaged over emitter positions."""
    run_cmd(Command.SERATE, **kwargs)
