"""Run configuration shared by the CLI and the verification suites.

A config file holds ``key = value`` lines (``#`` starts a comment)::

    tolerance = 1e-9
    classify_tol = 1e-12
    format = "json"
    seed = 42
    trials = 1000
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, replace
from pathlib import Path

from .errors import KinstaticError

FORMATS = ("json", "csv", "table")


@dataclass(frozen=True)
class Config:
    tolerance: float = 1e-9
    classify_tol: float = 1e-12
    output_format: str | None = None  # None: each command picks its natural format
    seed: int = 0
    trials: int = 1000

    def __post_init__(self):
        if self.tolerance < 0 or self.classify_tol < 0:
            raise KinstaticError("tolerances must be >= 0")
        if self.trials < 1:
            raise KinstaticError("trials must be >= 1")
        if self.output_format is not None and self.output_format not in FORMATS:
            raise KinstaticError(f"format must be one of {FORMATS}")

    def updated(self, **overrides) -> "Config":
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


_ALIASES = {"format": "output_format", "tol": "tolerance"}
_PARSERS = {"tolerance": float, "classify_tol": float, "output_format": str, "seed": int, "trials": int}


def load_config(path: str | Path) -> Config:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
    parser.read_string("[kinstatic]\n" + Path(path).read_text())
    values = {}
    for key, raw in parser["kinstatic"].items():
        name = _ALIASES.get(key, key)
        if name not in _PARSERS:
            raise KinstaticError(f"unknown config key {key!r} in {path}")
        raw = raw.strip().strip('"').strip("'")
        values[name] = _PARSERS[name](raw)
    return Config(**values)
