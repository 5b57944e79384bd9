"""
Runtime budgets for verification suites.
"""
import os
from typing import Callable
from timeout_decorator import timeout
from timeout_decorator.timeout_decorator import _Timeout, TimeoutError
from functools import wraps


def bound_timeout(seconds: float, use_signals: bool = False) -> Callable:
    """Return a decorator that fails the wrapped call after <seconds>
    seconds and otherwise returns its value.

    If <use_signals> is True, then timeout_decorator's built in timeout is
    used instead. Without signals the call runs in a child process, so its
    return value must be picklable.
    """
    error_message = f"Check timed out after {seconds} seconds."

    if use_signals:
        return timeout(seconds, exception_message=error_message)
    else:
        def decorate(function):
            """A decorator that runs <function> and raises a TimeoutError
            as needed, or the original error.
            """
            # Don't do anything for Windows machines.
            if os.name == 'nt':
                return function

            @wraps(function)
            def _inner_timeout_wrapper(*args, **kwargs):
                """Call <function> with the provided <args> and <kwargs>,
                using _Timeout to raise a timeout if <function> takes
                more than <seconds> seconds.
                """
                return _Timeout(function,
                                TimeoutError,
                                error_message,
                                seconds)(*args, **kwargs)

            @wraps(function)
            def wrapped_for_errors(*args, **kwargs):
                """Return _inner_timeout_wrapper(*args, **kwargs).
                If a Timeout is raised, then the decorator also raises a
                Timeout error. Otherwise, the call is repeated in this
                process so the original error surfaces with its traceback.
                """
                try:
                    return _inner_timeout_wrapper(*args, **kwargs)
                except TimeoutError:
                    raise TimeoutError(error_message)
                except Exception:
                    pass
                return function(*args, **kwargs)

            return wrapped_for_errors

        return decorate
