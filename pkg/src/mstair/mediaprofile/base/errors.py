"""
Exception hierarchy for the media-profiling pipeline.

Two branches sit under ``MediaProfileError``: ``DataError`` for bad inputs on
disk (exit code 2) and ``UsageError`` for bad invocations (exit code 1).
Concrete classes also derive from the closest builtin so existing
``except ValueError`` / ``except FileNotFoundError`` handlers keep working.
"""

from __future__ import annotations

from pathlib import Path


__all__ = [
    "BundleNotFoundError",
    "BundleValidationError",
    "CorpusParseError",
    "CorpusValidationError",
    "DataError",
    "EmbeddingParseError",
    "LexiconParseError",
    "MediaProfileError",
    "ModelFormatError",
    "StaleCacheError",
    "TrainingError",
    "UnknownFamilyError",
    "UrlExtractionError",
    "UsageError",
]


class MediaProfileError(Exception):
    """Root of every error raised deliberately by this package."""

    exit_code: int = 3


class DataError(MediaProfileError):
    exit_code = 2


class UsageError(MediaProfileError):
    exit_code = 1


class CorpusParseError(DataError, ValueError):
    """A corpus row could not be parsed; ``line`` is 1-based, header included."""

    def __init__(self, message: str, *, path: Path | str | None = None, line: int) -> None:
        self.path = Path(path) if path is not None else None
        self.line = line
        where = f"{self.path}:{line}" if self.path is not None else f"line {line}"
        super().__init__(f"{where}: {message}")


class CorpusValidationError(DataError, ValueError):
    pass


class BundleNotFoundError(DataError, FileNotFoundError):
    def __init__(self, medium_id: str, path: Path) -> None:
        self.medium_id = medium_id
        self.path = path
        super().__init__(f"no evidence bundle for {medium_id!r} at {path}")


class BundleValidationError(DataError, ValueError):
    """Schema violation inside a bundle; ``json_path`` looks like ``$.twitter.counts.followers``."""

    def __init__(self, message: str, *, json_path: str, path: Path | None = None) -> None:
        self.json_path = json_path
        self.path = path
        prefix = f"{path}: " if path is not None else ""
        super().__init__(f"{prefix}{json_path}: {message}")


class EmbeddingParseError(DataError, ValueError):
    pass


class LexiconParseError(DataError, ValueError):
    def __init__(self, message: str, *, path: Path | str, line: int) -> None:
        self.path = Path(path)
        self.line = line
        super().__init__(f"{self.path}:{line}: {message}")


class UrlExtractionError(DataError, ValueError):
    def __init__(self, url: str, reason: str) -> None:
        self.url = url
        super().__init__(f"cannot extract URL features from {url!r}: {reason}")


class TrainingError(MediaProfileError, RuntimeError):
    """SVM training failed; ``pair`` and ``fold`` are filled in as the error propagates."""

    def __init__(
        self,
        message: str,
        *,
        pair: tuple[int, int] | None = None,
        fold: int | None = None,
    ) -> None:
        self.reason = message
        self.pair = pair
        self.fold = fold
        super().__init__(self._render())

    def _render(self) -> str:
        parts: list[str] = []
        if self.fold is not None:
            parts.append(f"fold {self.fold}")
        if self.pair is not None:
            parts.append(f"pair {self.pair[0]}-vs-{self.pair[1]}")
        where = f"[{', '.join(parts)}] " if parts else ""
        return f"{where}{self.reason}"

    def with_context(
        self, *, pair: tuple[int, int] | None = None, fold: int | None = None
    ) -> TrainingError:
        """Return a copy annotated with the pair and/or fold, keeping existing annotations."""
        return TrainingError(
            self.reason,
            pair=self.pair if pair is None else pair,
            fold=self.fold if fold is None else fold,
        )


class ModelFormatError(DataError, ValueError):
    """A saved model or report document is malformed or has the wrong version."""

    def __init__(self, message: str, *, path: Path | str | None = None) -> None:
        self.path = Path(path) if path is not None else None
        prefix = f"{self.path}: " if self.path is not None else ""
        super().__init__(f"{prefix}{message}")


class StaleCacheError(DataError, RuntimeError):
    def __init__(self, expected: str, found: str) -> None:
        self.expected = expected
        self.found = found
        super().__init__(
            f"feature cache is stale (manifest {found[:12]} != expected {expected[:12]}); "
            "re-run `mediaprofile extract`"
        )


class UnknownFamilyError(UsageError, ValueError):
    def __init__(self, selector: str, valid: list[str]) -> None:
        self.selector = selector
        self.valid = valid
        super().__init__(f"unknown feature selector {selector!r}; valid names: {', '.join(valid)}")
