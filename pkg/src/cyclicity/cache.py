"""Persistent result cache: append-only, line-delimited JSON records.

The last record per canonical descriptor wins, corrupt lines are skipped with
a warning, and a schema version mismatch is treated as a miss, so stale files
never poison results.  Writes go through a single writer per process.
"""

from __future__ import annotations

import json
import os
import random
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction
from pathlib import Path

from . import descriptors
from .census import cyclic_census, is_nilpotent, order_profile
from .verify import THREE_QUARTERS

SCHEMA_VERSION = 1

ENV_CACHE_PATH = "CYCLICITY_CACHE"


@dataclass
class CacheRecord:
    """One cached analysis, keyed by the canonical descriptor."""

    descriptor: str
    order: int
    profile: dict[int, int]
    l1: int
    alpha_numerator: int
    alpha_denominator: int
    nilpotent: bool
    in_c: bool
    schema: int = SCHEMA_VERSION

    @property
    def alpha(self) -> Fraction:
        return Fraction(self.alpha_numerator, self.alpha_denominator)


def default_cache_path() -> Path:
    env = os.environ.get(ENV_CACHE_PATH)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "cyclicity" / "records.jsonl"


def compute_record(descriptor: str) -> CacheRecord:
    """Analyze the described group and package the result for caching."""
    key = descriptors.canonical_key(descriptor)
    g = descriptors.build_from_descriptor(key)
    profile = order_profile(g)
    c = cyclic_census(g)
    nilpotent = is_nilpotent(g)
    return CacheRecord(
        descriptor=key,
        order=g.order,
        profile=dict(sorted(profile.counts.items())),
        l1=c.l1,
        alpha_numerator=c.alpha.numerator,
        alpha_denominator=c.alpha.denominator,
        nilpotent=nilpotent,
        in_c=nilpotent and c.alpha == THREE_QUARTERS,
    )


class ResultCache:
    """Line-delimited record store with last-record-wins semantics."""

    def __init__(self, path: Path | None = None):
        self.path = Path(path) if path is not None else default_cache_path()
        self._warned = False

    def _warn(self, message: str) -> None:
        if not self._warned:
            print(f"warning: {message}", file=sys.stderr)
            self._warned = True

    def _iter_records(self):
        try:
            with self.path.open("r", encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if not line:
                        continue
                    try:
                        raw = json.loads(line)
                        yield CacheRecord(
                            descriptor=raw["descriptor"],
                            order=int(raw["order"]),
                            profile={int(k): int(v) for k, v in raw["profile"].items()},
                            l1=int(raw["l1"]),
                            alpha_numerator=int(raw["alpha_numerator"]),
                            alpha_denominator=int(raw["alpha_denominator"]),
                            nilpotent=bool(raw["nilpotent"]),
                            in_c=bool(raw["in_c"]),
                            schema=int(raw["schema"]),
                        )
                    except (json.JSONDecodeError, KeyError, TypeError, ValueError):
                        self._warn(f"skipping corrupt cache line in {self.path}")
        except FileNotFoundError:
            return
        except OSError as exc:
            self._warn(f"cache file {self.path} unreadable ({exc}); proceeding without cache")
            return

    def entries(self) -> dict[str, CacheRecord]:
        """All usable records, last one per key winning."""
        table: dict[str, CacheRecord] = {}
        for record in self._iter_records():
            if record.schema == SCHEMA_VERSION:
                table[record.descriptor] = record
        return table

    def get(self, descriptor: str) -> CacheRecord | None:
        key = descriptors.canonical_key(descriptor)
        return self.entries().get(key)

    def put(self, record: CacheRecord) -> None:
        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            payload = asdict(record)
            with self.path.open("a", encoding="utf-8") as fh:
                fh.write(json.dumps(payload, sort_keys=True) + "\n")
        except OSError as exc:
            self._warn(f"cache file {self.path} not writable ({exc}); result not cached")

    def get_or_compute(self, descriptor: str) -> tuple[CacheRecord, bool]:
        """Record for the descriptor plus whether it was served from cache."""
        hit = self.get(descriptor)
        if hit is not None:
            return hit, True
        record = compute_record(descriptor)
        self.put(record)
        return record, False

    def revalidate(self, fraction: float = 0.05, seed: int = 0) -> tuple[int, list[str]]:
        """Recompute a sample of cached records; returns (checked, mismatched keys)."""
        table = self.entries()
        if not table:
            return 0, []
        keys = sorted(table)
        sample_size = max(1, round(len(keys) * fraction))
        rng = random.Random(seed)
        sample = rng.sample(keys, min(sample_size, len(keys)))
        mismatches = []
        for key in sample:
            fresh = compute_record(key)
            if fresh != table[key]:
                mismatches.append(key)
        return len(sample), mismatches
