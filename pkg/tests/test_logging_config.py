import logging
import sys

from app.utilities.logging_config import (
    SearchProgressFilter,
    ensure_stderr_logging,
    setup_search_log_filter,
)


def _count_stderr_handlers():
    root = logging.getLogger()
    return sum(
        1
        for h in root.handlers
        if isinstance(h, logging.StreamHandler) and getattr(h, "stream", None) is sys.stderr
    )


def _record(name: str, level: int) -> logging.LogRecord:
    return logging.LogRecord(name, level, __file__, 1, "msg", None, None)


def test_ensure_stderr_logging_adds_stderr_handler(monkeypatch):
    # Preserve current state
    root = logging.getLogger()
    old_handlers = list(root.handlers)
    old_level = root.level
    try:
        for h in list(root.handlers):
            root.removeHandler(h)
        assert _count_stderr_handlers() == 0

        monkeypatch.setenv("LOG_LEVEL", "DEBUG")
        ensure_stderr_logging()

        assert _count_stderr_handlers() == 1
        assert root.level == logging.DEBUG

        logging.getLogger(__name__).info("hello")
    finally:
        for h in list(root.handlers):
            root.removeHandler(h)
        for h in old_handlers:
            root.addHandler(h)
        root.setLevel(old_level)


def test_ensure_stderr_logging_is_idempotent(monkeypatch):
    root = logging.getLogger()
    old_handlers = list(root.handlers)
    old_level = root.level
    try:
        for h in list(root.handlers):
            root.removeHandler(h)
        monkeypatch.delenv("LOG_LEVEL", raising=False)

        ensure_stderr_logging()
        first_count = _count_stderr_handlers()
        ensure_stderr_logging()
        second_count = _count_stderr_handlers()

        assert first_count == 1
        assert second_count == 1
        # Reports own stdout, so the default stays quiet
        assert root.level == logging.WARNING
    finally:
        for h in list(root.handlers):
            root.removeHandler(h)
        for h in old_handlers:
            root.addHandler(h)
        root.setLevel(old_level)


def test_explicit_level_overrides_env(monkeypatch):
    root = logging.getLogger()
    old_handlers = list(root.handlers)
    old_level = root.level
    try:
        monkeypatch.setenv("LOG_LEVEL", "DEBUG")
        ensure_stderr_logging("error")
        assert root.level == logging.ERROR
    finally:
        for h in list(root.handlers):
            root.removeHandler(h)
        for h in old_handlers:
            root.addHandler(h)
        root.setLevel(old_level)


def test_search_filter_drops_debug_from_search_modules():
    search_filter = SearchProgressFilter()
    assert not search_filter.filter(_record("app.simplicial.hom_search", logging.DEBUG))
    assert search_filter.filter(_record("app.simplicial.hom_search", logging.INFO))
    assert search_filter.filter(_record("app.actions.bundles", logging.DEBUG))


def test_setup_search_log_filter_attaches_once():
    root = logging.getLogger()
    handler = logging.StreamHandler(stream=sys.stderr)
    root.addHandler(handler)
    try:
        setup_search_log_filter()
        setup_search_log_filter()
        assert sum(isinstance(f, SearchProgressFilter) for f in handler.filters) == 1
    finally:
        root.removeHandler(handler)
