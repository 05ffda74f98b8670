"""
mstair.mediaprofile.io public API.
"""

from mstair.mediaprofile.io.display_formatter import DisplayFormatter, format_cell


__all__ = ["DisplayFormatter", "format_cell"]
