# Unless explicitly stated otherwise all files in this repository are licensed
# under the 3-clause BSD style license (see LICENSE).

from __future__ import annotations
import logging

from bandedge.constants import LOGGER_NAME


def _configure_logging(verbose: bool) -> None:
    # Set logging level and format. basicConfig targets stderr, stdout is reserved for data.
    _format = "%(asctime)s - %(levelname)s - %(message)s"
    if verbose:
        logging.basicConfig(format=_format, level=logging.DEBUG)
    else:
        logging.basicConfig(format=_format, level=logging.INFO)


class Log:
    def __init__(self, verbose: bool) -> None:
        _configure_logging(verbose)

        self.exception_logged = False
        self.logger = logging.getLogger(LOGGER_NAME)
        self.logger.propagate = True

    def debug(self, msg, *arg, command: str = "", context: str = ""):
        self.logger.debug(_tag(msg, command, context), *arg)

    def exception(self, msg, *arg, command: str = "", context: str = ""):
        self.logger.exception(_tag(msg, command, context), *arg)
        self._exception_logged()

    def error(self, msg, *arg, command: str = "", context: str = ""):
        self.logger.error(_tag(msg, command, context), *arg)
        self._exception_logged()

    def info(self, msg: str, *arg, command: str = "", context: str = "") -> None:
        self.logger.info(_tag(msg, command, context), *arg)

    def warning(self, msg, *arg, command: str = "", context: str = ""):
        self.logger.warning(_tag(msg, command, context), *arg)

    def _exception_logged(self):
        self.exception_logged = True


def _tag(msg: str, command: str, context: str) -> str:
    if command or context:
        return f"[{command} - {context}] - {msg}"
    return msg
