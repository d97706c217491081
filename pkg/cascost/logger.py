"""Logging."""
import logging

FORMATTER = logging.Formatter(
    "[%(asctime)s] %(levelname)s %(name)s: %(message)s", "%Y-%m-%d %H:%M:%S"
)
STREAM_HANDLER = logging.StreamHandler()
STREAM_HANDLER.setFormatter(FORMATTER)

LOGGER_TABLE = {}


def get_logger(name):
    """Return the shared-handler logger `cascost.<name>`, creating it on first use."""
    if name in LOGGER_TABLE:
        return LOGGER_TABLE[name]

    logger = logging.getLogger(f"cascost.{name}")
    logger.setLevel(logging.INFO)
    logger.addHandler(STREAM_HANDLER)
    logger.propagate = False

    LOGGER_TABLE[name] = logger
    return logger


def set_level(level):
    """Change the level of every logger created so far and of the shared handler."""
    STREAM_HANDLER.setLevel(level)
    for logger in LOGGER_TABLE.values():
        logger.setLevel(level)
