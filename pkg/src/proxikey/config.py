"""Runtime configuration with file, environment, and flag layering."""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

ENV_PREFIX = "PROXIKEY_"

_INT_KEYS = ("max_distance", "sw_count", "fu_count", "window_size")
_STR_KEYS = ("dictionary", "index_dir")


@dataclass
class Config:
    """Index/query parameters.

    ``max_distance`` is fixed at index-build time and governs every query
    against that index.  ``window_size`` only affects query evaluation
    internals and must lie in [2 * max_distance, 64].
    """

    max_distance: int = 5
    sw_count: int = 700
    fu_count: int = 2100
    window_size: int = 64
    dictionary: str | None = None
    index_dir: str | None = None

    def validate(self) -> None:
        if self.max_distance < 1:
            raise ValueError("max_distance must be >= 1")
        if self.sw_count < 1:
            raise ValueError("sw_count must be > 0")
        if self.fu_count < 0:
            raise ValueError("fu_count must be >= 0")
        if not 2 * self.max_distance <= self.window_size <= 64:
            raise ValueError(
                f"window_size must be in [{2 * self.max_distance}, 64], "
                f"got {self.window_size}"
            )

    def with_overrides(self, **kwargs) -> "Config":
        provided = {k: v for k, v in kwargs.items() if v is not None}
        return replace(self, **provided)


def _coerce(key: str, value: str):
    if key in _INT_KEYS:
        try:
            return int(value)
        except ValueError:
            raise ValueError(f"config key {key!r}: expected an integer, got {value!r}")
    return value


def load_config_file(path: str) -> dict:
    """Parse a plain ``key = value`` config file; # lines are comments."""
    known = {f.name for f in fields(Config)}
    out: dict = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in known:
                raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
            out[key] = _coerce(key, value)
    return out


def env_overrides(environ=None) -> dict:
    environ = os.environ if environ is None else environ
    out: dict = {}
    for key in _INT_KEYS + _STR_KEYS:
        value = environ.get(ENV_PREFIX + key.upper())
        if value is not None:
            out[key] = _coerce(key, value)
    return out


def resolve_config(
    file_path: str | None = None, flags: dict | None = None, environ=None
) -> Config:
    """Layer config sources: flags beat environment beats file beats defaults."""
    merged: dict = {}
    if file_path:
        merged.update(load_config_file(file_path))
    merged.update(env_overrides(environ))
    if flags:
        merged.update({k: v for k, v in flags.items() if v is not None})
    cfg = Config(**merged)
    cfg.validate()
    return cfg
