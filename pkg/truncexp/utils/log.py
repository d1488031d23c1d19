import logging
import sys

LOG_TAG = "truncexp"


def log_message(message: str, level: int = logging.INFO) -> None:
    """Send a message to the truncexp log channel."""
    logging.getLogger(LOG_TAG).log(level, message)


def configure_logging(verbose: bool = False) -> None:
    """Attach a stderr handler to the truncexp channel (command line only)."""
    logger = logging.getLogger(LOG_TAG)
    if not logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter("[%(name)s] %(levelname)s: %(message)s"))
        logger.addHandler(handler)
    else:
        # repeated calls in one process (tests) follow a replaced sys.stderr
        for handler in logger.handlers:
            if isinstance(handler, logging.StreamHandler):
                handler.setStream(sys.stderr)
    logger.setLevel(logging.DEBUG if verbose else logging.WARNING)
