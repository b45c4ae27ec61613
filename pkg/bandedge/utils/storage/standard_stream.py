# Unless explicitly stated otherwise all files in this repository are licensed
# under the 3-clause BSD style license (see LICENSE).

from click import echo

from bandedge.utils.storage._base_storage import BaseStorage


class StandardStream(BaseStorage):
    """Writes to stdout; diagnostics never come through here."""

    def put(self, text: str) -> None:
        echo(text, nl=False)
