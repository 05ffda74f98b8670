"""
mstair.mediaprofile.cli public API.
"""

from mstair.mediaprofile.cli.main import cli, main


__all__ = ["cli", "main"]
