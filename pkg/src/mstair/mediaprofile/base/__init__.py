"""
mstair.mediaprofile.base public API.
"""

from mstair.mediaprofile.base.config import ALL_FAMILIES, ALL_TASKS, PipelineConfig, load_config
from mstair.mediaprofile.base.errors import (
    BundleNotFoundError,
    BundleValidationError,
    CorpusParseError,
    CorpusValidationError,
    DataError,
    EmbeddingParseError,
    LexiconParseError,
    MediaProfileError,
    ModelFormatError,
    StaleCacheError,
    TrainingError,
    UnknownFamilyError,
    UrlExtractionError,
    UsageError,
)


__all__ = [
    "ALL_FAMILIES",
    "ALL_TASKS",
    "BundleNotFoundError",
    "BundleValidationError",
    "CorpusParseError",
    "CorpusValidationError",
    "DataError",
    "EmbeddingParseError",
    "LexiconParseError",
    "MediaProfileError",
    "ModelFormatError",
    "PipelineConfig",
    "StaleCacheError",
    "TrainingError",
    "UnknownFamilyError",
    "UrlExtractionError",
    "UsageError",
    "load_config",
]
