import logging


K_KLASS_NAME = "klass_name"

TRACE = logging.DEBUG - 1  # (9) per-iteration solver detail; hidden at DEBUG


_logging_constants_initialized = False


def initialize_logger_constants() -> None:
    """Register the TRACE level name once per process."""
    global _logging_constants_initialized
    if _logging_constants_initialized:
        return
    _logging_constants_initialized = True
    if "TRACE" not in logging.getLevelNamesMapping():
        logging.addLevelName(TRACE, "TRACE")
