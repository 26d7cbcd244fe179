"""
Shared decorators for the Lie-algebra QRT laboratory.
Keeps correlation ids, timing and failure logging out of the experiment code.
"""

import functools
import logging
import time
import uuid
from typing import Callable

from .logging_config import log_performance

logger = logging.getLogger(__name__)


def lab_operation(operation_name: str, log_result: bool = True):
    """
    Decorator for experiment operations that provides:
    - Operation correlation IDs
    - Performance logging
    - Failure logging with the error type (the exception is re-raised)

    Args:
        operation_name: Name of the operation for logging
        log_result: If True, log successful completion with its duration
    """
    def decorator(func: Callable) -> Callable:
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            correlation_id = str(uuid.uuid4())[:8]
            start = time.perf_counter()

            logger.info(f"{operation_name} started", extra={
                "operation": operation_name,
                "correlation_id": correlation_id,
            })

            try:
                result = func(*args, **kwargs)
            except Exception as e:
                duration = time.perf_counter() - start
                logger.error(f"{operation_name} failed: {e}", extra={
                    "operation": operation_name,
                    "correlation_id": correlation_id,
                    "duration_seconds": duration,
                    "success": False,
                    "error": str(e),
                    "error_type": type(e).__name__
                })
                raise

            duration = time.perf_counter() - start
            if log_result:
                log_performance(operation_name, duration,
                                correlation_id=correlation_id, success=True)
            return result

        return wrapper
    return decorator
