"""
mstair.mediaprofile.xlogging public API.
"""

from mstair.mediaprofile.xlogging.core_logger import CoreLogger, initialize_root
from mstair.mediaprofile.xlogging.logger_constants import TRACE
from mstair.mediaprofile.xlogging.logger_factory import create_logger
from mstair.mediaprofile.xlogging.logger_util import LogLevelConfig


__all__ = ["TRACE", "CoreLogger", "LogLevelConfig", "create_logger", "initialize_root"]
