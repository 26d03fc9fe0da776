"""On-disk cache of the three base sequences.

One JSON document per kind, ``<dir>/<kind>.json``::

    {"version": 1, "kind": "scores", "n_max": 2000,
     "values": ["1", "1", "1", "2", ...], "checksum": "<hex>"}

``values`` are decimal strings. For ``egz`` they are N_1..N_{n_max}; for
``scores`` S_0..S_{n_max}; for ``strong`` S_{0,1}..S_{n_max,1}. The checksum
is the SHA-256 hex digest of the value strings joined by ``","`` (UTF-8).
A document that fails to parse or verify is ignored and rewritten.
"""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

from .decomp import seed_strong_cache, strong_series
from .egz import egz_table, seed_egz_cache
from .scores import count_scores, seed_score_cache

CACHE_VERSION = 1
ENV_VAR = "SCORESEQ_CACHE_DIR"
KINDS = ("egz", "scores", "strong")


def checksum(values: list[str]) -> str:
    return hashlib.sha256(",".join(values).encode("utf-8")).hexdigest()


def resolve_dir(flag: str | None) -> Path | None:
    """``--cache-dir`` wins over $SCORESEQ_CACHE_DIR; neither means no cache."""
    chosen = flag or os.environ.get(ENV_VAR)
    return Path(chosen) if chosen else None


def _compute(kind: str, n_max: int) -> tuple[int, ...]:
    if kind == "egz":
        return egz_table(n_max).values
    if kind == "scores":
        return count_scores(n_max).values
    if kind == "strong":
        return tuple(strong_series(n_max))
    raise ValueError(f"unknown sequence kind {kind!r}")


def _expected_length(kind: str, n_max: int) -> int:
    return n_max if kind == "egz" else n_max + 1


def document(kind: str, n_max: int, values) -> dict:
    strings = [str(v) for v in values]
    return {"version": CACHE_VERSION, "kind": kind, "n_max": n_max,
            "values": strings, "checksum": checksum(strings)}


def load(kind: str, directory: Path) -> tuple[int, ...] | None:
    path = directory / f"{kind}.json"
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
        strings = doc["values"]
        if (doc["version"] != CACHE_VERSION or doc["kind"] != kind
                or len(strings) != _expected_length(kind, doc["n_max"])
                or doc["checksum"] != checksum(strings)):
            return None
        return tuple(int(v) for v in strings)
    except (OSError, ValueError, KeyError, TypeError):
        return None


def store(kind: str, n_max: int, values, directory: Path) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / f"{kind}.json"
    tmp = path.with_suffix(".json.tmp")
    tmp.write_text(json.dumps(document(kind, n_max, values)), encoding="utf-8")
    tmp.replace(path)


_SEEDERS = {"egz": seed_egz_cache, "scores": seed_score_cache, "strong": seed_strong_cache}


def cached_values(kind: str, n_max: int, directory: Path | None) -> tuple[int, ...]:
    """Values of ``kind`` up to ``n_max``, read from or written to ``directory``."""
    length = _expected_length(kind, n_max)
    if directory is not None:
        stored = load(kind, directory)
        if stored is not None and len(stored) >= length:
            _SEEDERS[kind](list(stored))
            return stored[:length]
    values = _compute(kind, n_max)
    if directory is not None:
        store(kind, n_max, values, directory)
    return values
