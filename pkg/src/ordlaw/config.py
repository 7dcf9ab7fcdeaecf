"""Run-time bounds and output settings.

A JSON file named by ``$ORDLAW_CONFIG`` may override any field.
"""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass
from typing import Optional

from .counting import MATULA_CAP, RATIO_WINDOW, TRUNCATION_CAP
from .mso import ORACLE_BOUND
from .ordinals import ENUM_BOUND
from .semilinear import PIECE_CAP

CONFIG_ENV = "ORDLAW_CONFIG"
FORMATS = ("csv", "json")


@dataclass(frozen=True)
class Config:
    truncation: int = TRUNCATION_CAP
    oracle_bound: int = ORACLE_BOUND
    ordinal_bound: int = ENUM_BOUND
    ratio_window: int = RATIO_WINDOW
    piece_cap: int = PIECE_CAP
    matula_cap: int = MATULA_CAP
    format: str = "csv"

    def __post_init__(self) -> None:
        for f in dataclasses.fields(self):
            v = getattr(self, f.name)
            if f.name == "format":
                if v not in FORMATS:
                    raise ValueError(f"format must be one of {FORMATS}, got {v!r}")
            elif not isinstance(v, int) or isinstance(v, bool) or v <= 0:
                raise ValueError(f"config field {f.name!r} must be a positive integer")

    @classmethod
    def from_dict(cls, d: dict) -> "Config":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown config fields: {', '.join(sorted(unknown))}")
        return cls(**d)


def load_config(path: Optional[str] = None) -> Config:
    """Defaults, overridden by ``path`` or else by the file in ``$ORDLAW_CONFIG``."""
    path = path or os.environ.get(CONFIG_ENV)
    if not path:
        return Config()
    with open(path, encoding="utf-8") as fh:
        return Config.from_dict(json.load(fh))
