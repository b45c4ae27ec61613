# Unless explicitly stated otherwise all files in this repository are licensed
# under the 3-clause BSD style license (see LICENSE).
import sys
from click import group

from bandedge.commands import ALL_COMMANDS


@group()
def cli():
    """Band-edge DOS and LDOS of one-dimensional photonic crystals"""
    pass


# Register all click sub-commands
for command in ALL_COMMANDS:
    cli.add_command(command)


# Invoke cli manually if using executable
if getattr(sys, "frozen", False):
    cli(sys.argv[1:])
