"""
Tests for LogLevelConfig and CoreLogger level/prefix handling.
"""

from __future__ import annotations

import logging
import os
from collections.abc import Iterator

import pytest

from mstair.mediaprofile.xlogging import core_logger as cl
from mstair.mediaprofile.xlogging import logger_util as lu
from mstair.mediaprofile.xlogging.logger_factory import create_logger
from mstair.mediaprofile.xlogging.logger_util import LogLevelConfig


# ---------- Fixtures ----------


@pytest.fixture
def clean_env(monkeypatch: pytest.MonkeyPatch) -> Iterator[None]:
    """Clear LOG_* vars and reset the singleton; never read .env during tests."""
    monkeypatch.setattr(lu, "fs_load_dotenv", lambda *a, **k: False)
    for k in [k for k in os.environ if k.startswith(("LOG_LEVEL", "LOG_ROOT_LEVEL"))]:
        monkeypatch.delenv(k, raising=False)
    monkeypatch.setattr(lu, "_log_level_config_instance", None, raising=False)
    yield
    monkeypatch.setattr(lu, "_log_level_config_instance", None, raising=False)


# ---------- DSL parsing ----------


class TestEnvironmentParsing:
    def test_bare_level_is_default(self, monkeypatch: pytest.MonkeyPatch, clean_env: None) -> None:
        monkeypatch.setenv("LOG_LEVELS", "DEBUG")
        assert LogLevelConfig().get_effective_level("anything") == logging.DEBUG

    @pytest.mark.parametrize(
        "value",
        [
            "mstair.mediaprofile.svm.*:DEBUG;mstair.mediaprofile.corpus.*:INFO",
            "mstair.mediaprofile.svm.*=DEBUG, mstair.mediaprofile.corpus.*=INFO",
        ],
    )
    def test_multiple_patterns(
        self, monkeypatch: pytest.MonkeyPatch, clean_env: None, value: str
    ) -> None:
        monkeypatch.setenv("LOG_LEVELS", value)
        cfg = LogLevelConfig()
        assert cfg.get_effective_level("mstair.mediaprofile.svm.smo") == logging.DEBUG
        assert cfg.get_effective_level("mstair.mediaprofile.corpus.loaders") == logging.INFO
        assert cfg.get_effective_level("mstair.mediaprofile.cli") == logging.WARNING

    def test_per_logger_variable(self, monkeypatch: pytest.MonkeyPatch, clean_env: None) -> None:
        monkeypatch.setenv("LOG_LEVEL_MSTAIR_MEDIAPROFILE_SVM", "TRACE")
        cfg = LogLevelConfig()
        assert cfg.get_effective_level("mstair.mediaprofile.svm.smo") == logging.DEBUG - 1

    def test_double_underscore_escapes_literal_underscore(
        self, monkeypatch: pytest.MonkeyPatch, clean_env: None
    ) -> None:
        monkeypatch.setenv("LOG_LEVEL_GRID__SEARCH", "ERROR")
        cfg = LogLevelConfig()
        assert cfg.get_effective_level("grid_search") == logging.ERROR
        assert cfg.get_effective_level("grid.search") == logging.WARNING

    def test_root_alias_sets_default(self, monkeypatch: pytest.MonkeyPatch, clean_env: None) -> None:
        monkeypatch.setenv("LOG_LEVELS", "root=ERROR; features=INFO")
        cfg = LogLevelConfig()
        assert cfg.get_effective_level("features.url_features") == logging.INFO
        assert cfg.get_effective_level("other") == logging.ERROR

    def test_garbage_fragment_ignored(
        self, monkeypatch: pytest.MonkeyPatch, clean_env: None
    ) -> None:
        monkeypatch.setenv("LOG_LEVELS", ";;pkg.*:LOUD;;svm:DEBUG")
        assert list(LogLevelConfig().pattern_to_level) == ["svm"]


# ---------- Matching ----------


class TestMatching:
    def test_exact_beats_glob(self, monkeypatch: pytest.MonkeyPatch, clean_env: None) -> None:
        monkeypatch.setenv("LOG_LEVELS", "svm.*:DEBUG;svm.smo:ERROR")
        cfg = LogLevelConfig()
        assert cfg.get_effective_level("svm.smo") == logging.ERROR
        assert cfg.get_effective_level("svm.kernels") == logging.DEBUG

    def test_ancestor_beats_glob(self, monkeypatch: pytest.MonkeyPatch, clean_env: None) -> None:
        monkeypatch.setenv("LOG_LEVELS", "svm*:DEBUG; svm.smo:ERROR")
        assert LogLevelConfig().get_effective_level("svm.smo.inner") == logging.ERROR

    def test_longest_fixed_prefix_wins(
        self, monkeypatch: pytest.MonkeyPatch, clean_env: None
    ) -> None:
        monkeypatch.setenv("LOG_LEVELS", "ev*:DEBUG; evaluation.*:INFO")
        assert LogLevelConfig().get_effective_level("evaluation.protocol") == logging.INFO

    def test_case_insensitive(self, monkeypatch: pytest.MonkeyPatch, clean_env: None) -> None:
        monkeypatch.setenv("LOG_LEVELS", "Corpus.*:DEBUG")
        assert LogLevelConfig().get_effective_level("corpus.LOADERS") == logging.DEBUG

    def test_explicit_default_argument(self, clean_env: None) -> None:
        assert LogLevelConfig().get_effective_level("x", default=logging.NOTSET) == logging.NOTSET


# ---------- CoreLogger ----------


class TestCoreLogger:
    def test_prefix_nests_and_resets(
        self, clean_env: None, caplog: pytest.LogCaptureFixture
    ) -> None:
        log = create_logger("mstair.mediaprofile.test_prefix")
        with caplog.at_level(logging.WARNING):
            with log.prefix_with("[fold 1]"), log.prefix_with("[pair 0-2]"):
                log.warning("hit cap")
            log.warning("outside")
        messages = [r.getMessage() for r in caplog.records]
        assert messages == ["[fold 1] > [pair 0-2] > hit cap", "outside"]
        assert cl.current_prefix() == ""

    def test_records_point_at_caller(
        self, clean_env: None, caplog: pytest.LogCaptureFixture
    ) -> None:
        log = create_logger("mstair.mediaprofile.test_caller")
        with caplog.at_level(logging.WARNING):
            log.warning("where am I")
        assert caplog.records[0].funcName == "test_records_point_at_caller"

    def test_create_logger_is_idempotent(self, clean_env: None) -> None:
        a = create_logger("mstair.mediaprofile.test_same")
        b = create_logger("mstair.mediaprofile.test_same")
        assert a is b
        assert isinstance(a, cl.CoreLogger)

    def test_info_follows_root_threshold(
        self, clean_env: None, caplog: pytest.LogCaptureFixture
    ) -> None:
        log = create_logger("mstair.mediaprofile.test_threshold")
        with caplog.at_level(logging.INFO):
            log.info("visible")
            log.debug("hidden")
        assert [r.getMessage() for r in caplog.records] == ["visible"]
