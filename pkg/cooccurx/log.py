""" Logging functions for index builds and command line runs.

Common logger setup used by the cli and bench modules.
"""

import logging
import os

STREAM_FORMAT = '%(name)s - %(levelname)s - %(message)s'
FILE_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def configure_logger(name: str = 'cooccurx', log_file: str = None, level: str = None) -> logging.Logger:
    """
    Returns the named logger with a stream handler and, optionally, a file handler.

    :param name: Logger name, usually the package or calling script name.
    :param log_file: Optional path of a log file that receives INFO and above.
    :param level: Stream level name; falls back to COOCCURX_LOG_LEVEL, then WARNING.
    :return: logging.Logger
    """
    logger = logging.getLogger(os.path.basename(name))
    logger.setLevel(logging.DEBUG)

    level = (level or os.getenv('COOCCURX_LOG_LEVEL') or 'WARNING').upper()

    # repeated calls (tests, several cli invocations in one process) must not stack handlers
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()

    # create logging handlers
    stream_handler = logging.StreamHandler()
    stream_handler.setLevel(level)
    stream_handler.setFormatter(logging.Formatter(STREAM_FORMAT))
    logger.addHandler(stream_handler)

    if log_file:
        file_handler = logging.FileHandler(log_file)
        file_handler.setLevel(logging.INFO)
        file_handler.setFormatter(logging.Formatter(FILE_FORMAT))
        logger.addHandler(file_handler)

    return logger
