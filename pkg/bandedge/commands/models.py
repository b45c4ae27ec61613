# Unless explicitly stated otherwise all files in this repository are licensed
# under the 3-clause BSD style license (see LICENSE).

from click import command

from bandedge.commands.shared.options import (
    common_options,
    frequency_options,
    ladder_options,
    model_options,
)
from bandedge.commands.shared.utils import run_cmd
from bandedge.constants import Command


@command(Command.MODELS.value, short_help="Evaluate the isotropic or anisotropic model DOS near its edge.")
@common_options
@frequency_options
@ladder_options
@model_options
def models(**kwargs):
    """Evaluate the isotropic or anisotropic model DOS near its edge."""
    run_cmd(Command.MODELS, **kwargs)
