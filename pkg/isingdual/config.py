"""Runtime settings read from the environment."""
import os
from dataclasses import dataclass
from typing import Mapping, Optional

from .errors import UsageError

DEFAULT_SEED = 1729
DEFAULT_MAX_ENUM_BITS = 26

# Part of the determinism contract: changing it changes every estimate.
SAMPLE_BLOCK = 4096


@dataclass(frozen=True)
class Settings:
    """Defaults for values the CLI flags may override.

    | Variable                 | Meaning                         | Default   |
    |--------------------------|---------------------------------|-----------|
    | ISINGDUAL_SEED           | seed when --seed is absent      | 1729      |
    | ISINGDUAL_THREADS        | worker threads                  | 1         |
    | ISINGDUAL_LOG_LEVEL      | logging level name              | WARNING   |
    | ISINGDUAL_MAX_ENUM_BITS  | exhaustive enumeration ceiling  | 26        |
    """
    seed: int = DEFAULT_SEED
    threads: int = 1
    log_level: str = "WARNING"
    max_enum_bits: int = DEFAULT_MAX_ENUM_BITS

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> 'Settings':
        env = os.environ if environ is None else environ
        return cls(
            seed=_int(env, 'ISINGDUAL_SEED', DEFAULT_SEED),
            threads=max(1, _int(env, 'ISINGDUAL_THREADS', 1)),
            log_level=env.get('ISINGDUAL_LOG_LEVEL', 'WARNING').upper(),
            max_enum_bits=_int(env, 'ISINGDUAL_MAX_ENUM_BITS', DEFAULT_MAX_ENUM_BITS),
        )


def _int(env: Mapping[str, str], key: str, default: int) -> int:
    raw = env.get(key)
    if raw is None or raw.strip() == '':
        return default
    try:
        return int(raw, 0)
    except ValueError:
        raise UsageError(f"{key} must be an integer, got {raw!r}") from None
