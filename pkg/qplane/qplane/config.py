"""
Run configuration and environment settings.
"""
from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from enum import Enum

from .errors import ConfigError, ExpressionSyntaxError
from .scalars import GaussianRational

DEFAULT_SAMPLES = 1024
MIN_SAMPLES = 8


class Mode(Enum):
    EXACT = "exact"
    FLOAT = "float"


class OutputFormat(Enum):
    TEXT = "text"
    JSON = "json"
    CSV = "csv"


def sample_count() -> int:
    """
    Return the number of boundary samples used for sup-norm estimates.

    The QPLANE_SAMPLES environment variable overrides the default of 1024.
    """
    raw = os.environ.get("QPLANE_SAMPLES")
    if raw is None:
        return DEFAULT_SAMPLES
    try:
        samples = int(raw)
    except ValueError:
        raise ConfigError(f"QPLANE_SAMPLES must be an integer, got {raw!r}.")
    if samples < MIN_SAMPLES:
        raise ConfigError(f"QPLANE_SAMPLES must be at least {MIN_SAMPLES}, got {samples}.")
    return samples


def log_level() -> int:
    """Return the log level named by QPLANE_LOG_LEVEL, WARNING by default."""
    name = os.environ.get("QPLANE_LOG_LEVEL", "WARNING").upper()
    level = logging.getLevelName(name)
    if not isinstance(level, int):
        raise ConfigError(f"Unknown QPLANE_LOG_LEVEL {name!r}.")
    return level


def parse_scalar(text: str, mode: Mode, name: str = "q"):
    """Return the constant in <text> as a GaussianRational (EXACT) or a complex float (FLOAT).

    Raises ConfigError if the text does not denote a constant.
    """
    from .expression import parse, evaluate_scalar

    try:
        value = evaluate_scalar(parse(text))
    except ExpressionSyntaxError as e:
        # complex() accepts forms like 0.3+0.4j that the expression grammar does not.
        try:
            value = complex(text.replace(" ", ""))
        except ValueError:
            raise ConfigError(f"Cannot parse {name} = {text!r}: {e}")
        if mode is Mode.EXACT:
            raise ConfigError(f"{name} = {text!r} is not an exact rational; use --mode float.")
    except ValueError:
        raise ConfigError(f"{name} = {text!r} is not a constant scalar.")
    if mode is Mode.FLOAT:
        value = complex(value)
    return value


def parse_q(text: str, mode: Mode):
    """Return q in the given mode, raising ConfigError unless it is a nonzero constant."""
    value = parse_scalar(text, mode)
    if value == 0:
        raise ConfigError("q must be nonzero.")
    return value


@dataclass(frozen=True)
class RunConfig:
    """
    Settings shared by every command.

    Attributes:
    - mode: EXACT keeps q symbolic or rational, FLOAT evaluates at a complex q
    - q: the text of the scalar q
    - trunc: the truncation dimension N of operator representations
    - seed: the root seed of randomized suites
    - output_format: the report format
    - out: a path to write the report to, or None for stdout
    - samples: the number of boundary samples for sup-norm estimates
    """
    mode: Mode = Mode.EXACT
    q: str = "1/2"
    trunc: int = 32
    seed: int = 0
    output_format: OutputFormat = OutputFormat.TEXT
    out: str | None = None
    samples: int = field(default_factory=sample_count)

    def q_value(self):
        """Return q in the active mode."""
        return parse_q(self.q, self.mode)

    def q_abs(self) -> float:
        value = self.q_value()
        return abs(complex(value)) if isinstance(value, GaussianRational) else abs(value)

    def validate(self, needs_contraction: bool = False, needs_q_not_one: bool = False) -> RunConfig:
        """Return self after checking it, raising ConfigError on invalid settings.

        <needs_contraction> demands |q| < 1 (weight algebras, growth and hnset);
        <needs_q_not_one> demands q != 1 (upper-triangular truncations).
        """
        value = self.q_value()
        if self.trunc < 2:
            raise ConfigError(f"--trunc must be at least 2, got {self.trunc}.")
        if self.samples < MIN_SAMPLES:
            raise ConfigError(f"samples must be at least {MIN_SAMPLES}, got {self.samples}.")
        if self.seed < 0:
            raise ConfigError(f"--seed must be nonnegative, got {self.seed}.")
        if needs_contraction and self.q_abs() >= 1:
            raise ConfigError(f"This command needs |q| < 1, got q = {self.q}.")
        if needs_q_not_one and value == 1:
            raise ConfigError("This command needs q != 1.")
        return self
