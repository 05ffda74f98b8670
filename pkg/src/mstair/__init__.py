"""
mstair public API.
"""

from mstair import mediaprofile


__all__ = ["mediaprofile"]

__version__ = "0.1.0"
