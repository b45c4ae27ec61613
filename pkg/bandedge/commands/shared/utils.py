# Unless explicitly stated otherwise all files in this repository are licensed
# under the 3-clause BSD style license (see LICENSE).
import logging
from sys import exit
from traceback import format_exc

from bandedge.constants import EXIT_NUMERICAL_ERROR, LOGGER_NAME, Command
from bandedge.utils.analysis_handler import AnalysisHandler
from bandedge.utils.configuration import Configuration, build_config
from bandedge.utils.errors import BandEdgeError

log = logging.getLogger(LOGGER_NAME)


def run_cmd(cmd: Command, **kwargs):
    try:
        # Build config
        cfg = build_config(cmd, **kwargs)

        # Initiate analysis handler
        handler = AnalysisHandler(cfg)
        run_analysis(cfg, handler, cmd)
    except BandEdgeError as e:
        log.error(str(e))
        exit(e.exit_code)
    except KeyboardInterrupt:
        log.error("Process interrupted by user")
        exit(EXIT_NUMERICAL_ERROR)
    except Exception as e:
        log.debug(format_exc())
        log.error(f"Unexpected error: {e}")
        exit(EXIT_NUMERICAL_ERROR)

    if cfg.logger.exception_logged:
        exit(EXIT_NUMERICAL_ERROR)


def run_analysis(cfg: Configuration, handler: AnalysisHandler, cmd: Command) -> None:
    cfg.logger.info(f"Starting {cmd.value}...")

    # Run specific handler
    if cmd == Command.BANDS:
        handler.bands()
    elif cmd == Command.DOS:
        handler.dos()
    elif cmd == Command.LDOS:
        handler.ldos()
    elif cmd == Command.EDGE_FIT:
        handler.edge_fit()
    elif cmd == Command.SENSITIVITY:
        handler.sensitivity()
    elif cmd == Command.SERATE:
        handler.serate()
    elif cmd == Command.MODELS:
        handler.models()
    elif cmd == Command.NODES:
        handler.nodes()
    else:
        cfg.logger.error(f"Command {cmd.value} not found")
        return

    cfg.results.dump()
    cfg.logger.info(f"Finished {cmd.value}")
