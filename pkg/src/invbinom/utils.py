"""
Utility functions and logging configuration for the invbinom library.

This module contains the custom TRACE logging level, the package logger
factory and the helpers that turn command-line literals such as ``-0.3+0.2i``
or ``1/2`` into complex numbers and back into report fields.
"""

import logging
import re
from fractions import Fraction
from typing import Any, Dict, List, Union

from .exceptions import ParseError

# Custom TRACE logging level
TRACE = 5
logging.addLevelName(TRACE, "TRACE")


def trace(self: logging.Logger, message: str, *args: Any, **kwargs: Any) -> None:
    """
    Custom TRACE level logging function.

    :param self: The logger instance
    :param message: The log message
    :param args: Additional arguments for the log message
    :param kwargs: Additional keyword arguments for logging
    """
    if self.isEnabledFor(TRACE):
        self._log(TRACE, message, args, **kwargs)


# Add the trace method to the Logger class
logging.Logger.trace = trace


def get_logger(name: str = "invbinom") -> logging.Logger:
    """
    Get a logger instance with the custom TRACE level configured.

    :param name: The logger name (defaults to "invbinom")
    :return: Configured logger instance
    """
    return logging.getLogger(name)


_ALLOWED = re.compile(r"^[0-9eE.+\-ij]+$")


def parse_complex(text: Union[str, int, float, complex]) -> complex:
    """
    Parse a complex literal of the form ``a+bi`` with optional parts.

    Accepted spellings include ``0.5``, ``1.5i``, ``-i``, ``-0.3+0.2i``,
    ``2e-3-1e-2i`` and simple quotients such as ``1/2`` or ``8/3``. A
    Unicode minus sign is accepted in place of ``-``.

    :param text: The literal (numbers pass through unchanged)
    :return: The parsed complex value
    :raises ParseError: If the literal is malformed
    """
    if isinstance(text, (int, float, complex)) and not isinstance(text, bool):
        return complex(text)
    if not isinstance(text, str):
        raise ParseError(f"Cannot parse {text!r} as a complex number")

    raw = text.strip().replace("−", "-").replace(" ", "")
    if not raw:
        raise ParseError("Empty complex literal")

    if "/" in raw:
        numerator, _, denominator = raw.partition("/")
        den = parse_complex(denominator)
        if den == 0:
            raise ParseError(f"Zero denominator in {text!r}")
        return parse_complex(numerator) / den

    literal = raw.replace("i", "j")
    if not _ALLOWED.match(literal):
        raise ParseError(f"Malformed complex literal {text!r}")

    if literal.endswith("j"):
        head = literal[:-1]
        # A bare sign or nothing in front of the unit means a unit coefficient.
        tail_start = max(head.rfind("+"), head.rfind("-"))
        coefficient = head[tail_start + 1 :] if tail_start >= 0 else head
        if coefficient == "":
            if tail_start > 0 and head[tail_start - 1] in "eE":
                raise ParseError(f"Malformed complex literal {text!r}")
            literal = head + "1j"

    try:
        return complex(literal)
    except ValueError as e:
        raise ParseError(f"Malformed complex literal {text!r}") from e


def parse_rational(text: str) -> Fraction:
    """
    Parse a rational literal such as ``1/5`` or ``0.25``.

    :param text: The literal
    :return: The value as a Fraction
    :raises ParseError: If the literal is malformed
    """
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"Malformed rational literal {text!r}") from e


def parse_letters(text: str) -> List[complex]:
    """
    Parse a comma-separated letter list, e.g. ``"0,0"`` or ``"1/2, -1+i"``.

    An empty string is the empty word.

    :param text: The comma-separated literals
    :return: The letters in order
    """
    stripped = text.strip()
    if not stripped:
        return []
    return [parse_complex(part) for part in stripped.split(",")]


def parse_int_list(text: str) -> List[int]:
    """
    Parse a comma-separated list of integers such as ``"3,1"``.

    :param text: The comma-separated integers
    :return: The integers in order
    :raises ParseError: If any item is not an integer
    """
    stripped = text.strip()
    if not stripped:
        return []
    try:
        return [int(part) for part in stripped.split(",")]
    except ValueError as e:
        raise ParseError(f"Malformed integer list {text!r}") from e


def complex_to_dict(value: complex) -> Dict[str, float]:
    """
    Split a complex value into a JSON-friendly ``{"re", "im"}`` mapping.

    :param value: The complex value
    :return: Dictionary with real and imaginary parts
    """
    value = complex(value)
    return {"re": value.real, "im": value.imag}


def format_complex(value: complex, digits: int = 15) -> str:
    """
    Format a complex value in the same ``a+bi`` notation the parser accepts.

    :param value: The value to format
    :param digits: Significant digits per part
    :return: The formatted literal
    """
    value = complex(value)
    if value.imag == 0:
        return f"{value.real:.{digits}g}"
    sign = "-" if value.imag < 0 else "+"
    return f"{value.real:.{digits}g}{sign}{abs(value.imag):.{digits}g}i"
