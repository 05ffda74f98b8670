"""
mstair.mediaprofile public API.

Factuality and political-bias profiling of news media from articles,
Wikipedia, Twitter, URL and traffic evidence.
"""

from mstair.mediaprofile import (
    base,
    cli,
    corpus,
    embedlex,
    evaluation,
    features,
    io,
    svm,
    xlogging,
)


__all__ = [
    "base",
    "cli",
    "corpus",
    "embedlex",
    "evaluation",
    "features",
    "io",
    "svm",
    "xlogging",
]

__version__ = "0.1.0"
