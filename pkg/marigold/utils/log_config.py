"""
Logging setup for the Marigold command line.

The library only ever calls logging.getLogger(__name__); handlers and levels
are installed here, once, by the CLI entry point.
"""

import logging
from typing import List, Optional

try:
    from pythonjsonlogger.json import JsonFormatter
except ImportError:  # python-json-logger < 3.1
    from pythonjsonlogger.jsonlogger import JsonFormatter

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'


def configure_logging(verbose: bool = False, json_lines: bool = False,
                      log_file: Optional[str] = None) -> logging.Logger:
    """
    Install root handlers for a CLI run.

    Args:
        verbose: DEBUG instead of INFO.
        json_lines: emit one JSON object per record instead of plain text.
        log_file: also append records to this file.

    Returns:
        The package logger ("marigold").
    """
    handlers: List[logging.Handler] = [logging.StreamHandler()]
    if log_file:
        handlers.append(logging.FileHandler(log_file))

    if json_lines:
        formatter: logging.Formatter = JsonFormatter(LOG_FORMAT, datefmt=DATE_FORMAT)
    else:
        formatter = logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT)
    for handler in handlers:
        handler.setFormatter(formatter)

    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        handlers=handlers,
        force=True,
    )
    return logging.getLogger("marigold")
