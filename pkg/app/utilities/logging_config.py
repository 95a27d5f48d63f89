"""
Custom logging configuration for the toolkit.

Library modules only create module-level loggers; the CLI entry point calls
``ensure_stderr_logging`` once. Search-heavy modules log at DEBUG, so a
``SearchProgressFilter`` is available to silence per-candidate chatter while
keeping construction summaries.
"""

import logging
import os
import sys
from typing import List


class SearchProgressFilter(logging.Filter):
    """
    Logging filter to suppress DEBUG records from the backtracking searches.

    Hom-set and prism searches can emit one record per explored branch; this
    filter drops those while letting INFO and above through unchanged.
    """

    def __init__(self, noisy_loggers: List[str] = None):
        super().__init__()
        self.noisy_loggers = noisy_loggers or [
            "app.simplicial.hom_search",
            "app.simplicial.kan_verify",
        ]

    def filter(self, record: logging.LogRecord) -> bool:
        """
        Filter out search progress records.

        Args:
            record: The log record to filter

        Returns:
            True if the record should be logged, False if it should be suppressed
        """
        if record.levelno > logging.DEBUG:
            return True
        return not any(record.name.startswith(name) for name in self.noisy_loggers)


def setup_search_log_filter() -> SearchProgressFilter:
    """Attach the search progress filter to every root handler."""
    search_filter = SearchProgressFilter()
    for handler in logging.getLogger().handlers:
        if not any(isinstance(f, SearchProgressFilter) for f in handler.filters):
            handler.addFilter(search_filter)
    return search_filter


def ensure_stderr_logging(level: int | str | None = None) -> None:
    """Ensure logs are emitted to stderr with a sensible default formatter.

    This function is safe to call multiple times. It will add a StreamHandler
    to sys.stderr if one is not already present and set the root log level.
    Reports own stdout, so log records go to stderr.
    """
    try:
        root = logging.getLogger()
        # Determine level from env if not provided
        if level is None:
            level_env = os.getenv("LOG_LEVEL", "WARNING").upper()
            level = getattr(logging, level_env, logging.WARNING)
        elif isinstance(level, str):
            level = getattr(logging, level.upper(), logging.WARNING)

        has_stream = any(
            isinstance(h, logging.StreamHandler)
            and getattr(h, "stream", None) is sys.stderr
            for h in root.handlers
        )

        if not has_stream:
            handler = logging.StreamHandler(stream=sys.stderr)
            formatter = logging.Formatter(
                fmt="%(asctime)s %(name)s %(levelname)5s  %(message)s",
                datefmt="%H:%M:%S",
            )
            handler.setFormatter(formatter)
            root.addHandler(handler)

        # Set level on root
        root.setLevel(level)
    except Exception as e:
        # As a last resort, don't crash if logging config fails
        print(f"Warning: Failed to ensure stderr logging: {e}", file=sys.stderr)
