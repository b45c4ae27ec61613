# Unless explicitly stated otherwise all files in this repository are licensed
# under the 3-clause BSD style license (see LICENSE).

from bandedge.commands.bands import bands
from bandedge.commands.dos import dos
from bandedge.commands.ldos import ldos
from bandedge.commands.edge_fit import edge_fit
from bandedge.commands.sensitivity import sensitivity
from bandedge.commands.serate import serate
from bandedge.commands.models import models
from bandedge.commands.nodes import nodes


ALL_COMMANDS = [
    bands,
    dos,
    ldos,
    edge_fit,
    sensitivity,
    serate,
    models,
    nodes,
]
