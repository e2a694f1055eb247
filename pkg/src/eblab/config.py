"""Run configuration and the deterministic parallel map helper."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

from .errors import MalformedInputError

DEFAULT_SIZE_CAP = 4096
# Pair scans enumerate n^n * n^n unary table pairs; 4^4 * 4^4 = 65536 is the
# largest size the desk-scale suite needs, n = 5 (~9.8e6 pairs) is refused.
DEFAULT_PAIR_BUDGET = 1_000_000
# Single-table scans enumerate n^n tables; 8^8 covers the 3-atom Boolean case.
DEFAULT_TABLE_BUDGET = 20_000_000

_OUTPUT_MODES = ("human", "machine", "both")
_METHODS = ("pairs", "brute", "both")


@dataclass
class RunConfig:
    """Knobs shared by the CLI and the verification suite.

    Results never depend on ``workers``: sweeps are split into independent
    cells and merged back in canonical order, so output is bit-identical to a
    single-worker run.
    """

    size_cap: int = DEFAULT_SIZE_CAP
    workers: int = 0  # 0 means "use available parallelism"
    output_mode: str = "both"
    method: str = "pairs"
    pair_budget: int = DEFAULT_PAIR_BUDGET
    table_budget: int = DEFAULT_TABLE_BUDGET

    def __post_init__(self):
        if self.output_mode not in _OUTPUT_MODES:
            raise MalformedInputError(f"output-mode must be one of {_OUTPUT_MODES}")
        if self.method not in _METHODS:
            raise MalformedInputError(f"method must be one of {_METHODS}")

    @property
    def effective_workers(self) -> int:
        if self.workers and self.workers > 0:
            return self.workers
        return os.cpu_count() or 1


_CONFIG_KEYS = {
    "size-cap": ("size_cap", int),
    "workers": ("workers", int),
    "output-mode": ("output_mode", str),
    "method": ("method", str),
    "pair-budget": ("pair_budget", int),
    "table-budget": ("table_budget", int),
}


def load_config(path, base: RunConfig | None = None) -> RunConfig:
    """Read ``key=value`` lines (``#`` comments allowed) into a RunConfig."""
    cfg = base or RunConfig()
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise MalformedInputError(f"{path}:{lineno}: expected key=value")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in _CONFIG_KEYS:
                raise MalformedInputError(f"{path}:{lineno}: unknown key {key!r}")
            field, conv = _CONFIG_KEYS[key]
            try:
                cfg = replace(cfg, **{field: conv(value)})
            except ValueError as exc:
                raise MalformedInputError(f"{path}:{lineno}: {exc}") from exc
    return cfg


def parallel_map(fn, items, workers: int = 1) -> list:
    """Map ``fn`` over ``items`` preserving order.

    With ``workers > 1`` the cells run on a thread pool; ``fn`` must be pure.
    The returned list is always ordered like ``items``, which is what keeps
    multi-worker runs byte-identical to sequential ones.
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
