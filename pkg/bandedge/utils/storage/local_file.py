# Unless explicitly stated otherwise all files in this repository are licensed
# under the 3-clause BSD style license (see LICENSE).

import logging
import os

from bandedge.constants import LOGGER_NAME
from bandedge.utils.storage._base_storage import BaseStorage


log = logging.getLogger(LOGGER_NAME)


class LocalFile(BaseStorage):
    def __init__(self, path: str) -> None:
        super().__init__()
        self.path = path

    def put(self, text: str) -> None:
        directory = os.path.dirname(os.path.abspath(self.path))
        os.makedirs(directory, exist_ok=True)
        # newline="" keeps "\n" line endings on every platform
        with open(self.path, "w", encoding="utf-8", newline="") as out_file:
            out_file.write(text)
        log.info(f"results written to {self.path}")
