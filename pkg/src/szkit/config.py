"""Run configuration shared by the pipelines and the CLI."""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, fields, replace
from typing import Mapping, Optional

ENV_PREFIX = "SZKIT_"


@dataclass(frozen=True)
class Config:
    tol: float = 1e-12
    order: int = 128
    precision_cap: int = 4096
    slack: float = 1.5
    jobs: int = 1
    hankel_k: int = 20
    height_slack: float = 0.05
    scan_budget: int = 2_000_000

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_env(cls, env: Optional[Mapping[str, str]] = None, **overrides) -> "Config":
        """Defaults, then SZKIT_<NAME> environment variables, then explicit overrides."""
        env = os.environ if env is None else env
        values = {}
        for f in fields(cls):
            key = ENV_PREFIX + f.name.upper()
            if key in env:
                values[f.name] = _coerce(f.type, env[key], key)
        values.update({k: v for k, v in overrides.items() if v is not None})
        return replace(cls(), **values)


def _coerce(kind, raw: str, key: str):
    kind = kind if isinstance(kind, str) else kind.__name__
    try:
        return int(raw) if kind == "int" else float(raw)
    except ValueError as exc:
        raise ValueError(f"environment variable {key}={raw!r} is not a valid {kind}") from exc
