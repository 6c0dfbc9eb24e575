"""Census of chain members up to x: collision search and the averaging statistics.

|A(n)| = 2 + (number of chains C_k, k >= 3, containing n) for n >= 3, so the
whole distribution of |A(n)| over n <= x is recoverable from the chain
members alone; no n^2 - 1 is ever factored.  Chains are enumerated in
contiguous blocks of k (optionally in worker processes), merged, and sorted
by value; a value seen twice is a counterexample to |A(n)| <= 3.
"""

from __future__ import annotations

import json
import math
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import groupby
from typing import Any, Iterable, NamedTuple

from .chains import MEMBER_MAX, ChainCoord, chain_iter

__all__ = [
    "ChainMember",
    "CensusReport",
    "k_max",
    "k_blocks",
    "enumerate_members",
    "n_x_k",
    "build_report",
    "verify_conjecture",
    "average_value",
]

JSON_SAFE = 2**53


class ChainMember(NamedTuple):
    value: int
    k: int
    i: int
    predecessor: int

    @property
    def coord(self) -> ChainCoord:
        return ChainCoord(self.k, self.i)


def k_max(x: int) -> int:
    """Largest k whose chain has a member <= x (G_2(k) = k^2 - 1 <= x)."""
    return math.isqrt(x + 1)


def _check_x(x: int) -> None:
    if x < 8:
        raise ValueError(f"x must be >= 8 (the smallest chain member), got {x}")
    if x > MEMBER_MAX:
        raise OverflowError(f"x must be <= {MEMBER_MAX}, got {x}")


def k_blocks(x: int, blocks: int) -> list[tuple[int, int]]:
    """Split [3, k_max(x)] into at most ``blocks`` contiguous inclusive ranges."""
    hi = k_max(x)
    total = hi - 2
    blocks = max(1, min(blocks, total))
    size, extra = divmod(total, blocks)
    out, lo = [], 3
    for b in range(blocks):
        end = lo + size + (b < extra) - 1
        out.append((lo, end))
        lo = end + 1
    return out


def enumerate_members(x: int, k_lo: int = 3, k_hi: int | None = None) -> list[ChainMember]:
    """Every member <= x of the chains C_k, k_lo <= k <= k_hi, sorted by (k, i)."""
    _check_x(x)
    top = k_max(x)
    k_hi = top if k_hi is None else k_hi
    if k_lo < 3 or k_hi > top:
        raise ValueError(f"k range [{k_lo}, {k_hi}] not within [3, {top}]")
    out = []
    for k in range(k_lo, k_hi + 1):
        prev = k
        for (_, i), value in chain_iter(k, x):
            out.append(ChainMember(value, k, i, prev))
            prev = value
    return out


def _block_worker(args: tuple[int, int, int]) -> list[ChainMember]:
    return enumerate_members(*args)


def n_x_k(x: int, k: int) -> int:
    """N(x, k): how many members of C_k are <= x."""
    if not 3 <= k <= k_max(x):
        raise ValueError(f"k must lie in [3, {k_max(x)}], got {k}")
    return len(chain_iter(k, x))


def _num(v: int) -> int | str:
    return v if abs(v) <= JSON_SAFE else str(v)


@dataclass(frozen=True)
class CensusReport:
    x: int
    chains_scanned: int
    members_total: int
    members_distinct: int
    duplicates: tuple[tuple[int, tuple[ChainCoord, ...]], ...]
    t_x: int
    histogram: dict[int, int]
    max_size: int
    max_size_at: int
    average_b: Fraction
    b_bound: float
    t_x_bound: float
    elapsed: float = field(default=0.0, compare=False)
    members: tuple[ChainMember, ...] = field(default=(), compare=False, repr=False)

    @property
    def holds(self) -> bool:
        """True when no value is shared between chains (|A(n)| <= 3 up to x)."""
        return not self.duplicates

    @property
    def t_x_within_bound(self) -> bool:
        return self.t_x < self.t_x_bound

    @property
    def b_within_bound(self) -> bool:
        return float(self.average_b) < self.b_bound

    def to_dict(self, include_elapsed: bool = True) -> dict[str, Any]:
        d: dict[str, Any] = {
            "x": _num(self.x),
            "chains_scanned": self.chains_scanned,
            "members_total": self.members_total,
            "members_distinct": self.members_distinct,
            "duplicates": [
                {"value": _num(v), "coords": [{"k": _num(c.k), "i": c.i} for c in coords]}
                for v, coords in self.duplicates
            ],
            "t_x": self.t_x,
            "histogram": {str(s): c for s, c in sorted(self.histogram.items())},
            "max_size": self.max_size,
            "max_size_at": _num(self.max_size_at),
            "average_b": f"{self.average_b.numerator}/{self.average_b.denominator}",
            "b_bound": self.b_bound,
            "t_x_bound": self.t_x_bound,
        }
        if include_elapsed:
            d["elapsed"] = self.elapsed
        return d

    def to_json(self, include_elapsed: bool = True) -> str:
        return json.dumps(self.to_dict(include_elapsed), indent=2) + "\n"

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> CensusReport:
        return cls(
            x=int(d["x"]),
            chains_scanned=int(d["chains_scanned"]),
            members_total=int(d["members_total"]),
            members_distinct=int(d["members_distinct"]),
            duplicates=tuple(
                (int(dup["value"]), tuple(ChainCoord(int(c["k"]), int(c["i"])) for c in dup["coords"]))
                for dup in d["duplicates"]
            ),
            t_x=int(d["t_x"]),
            histogram={int(s): int(c) for s, c in d["histogram"].items()},
            max_size=int(d["max_size"]),
            max_size_at=int(d["max_size_at"]),
            average_b=Fraction(d["average_b"]),
            b_bound=float(d["b_bound"]),
            t_x_bound=float(d["t_x_bound"]),
            elapsed=float(d.get("elapsed", 0.0)),
        )

    @classmethod
    def from_json(cls, text: str) -> CensusReport:
        return cls.from_dict(json.loads(text))


def _bounds(x: int, t_x: int) -> tuple[float, float]:
    lg = math.log2(x)
    b_bound = 2 + (lg - 2) * t_x / x
    t_x_bound = (math.sqrt(x + 1) - 2) * lg
    return b_bound, t_x_bound


def build_report(
    x: int,
    members: Iterable[ChainMember],
    chains_scanned: int | None = None,
    elapsed: float = 0.0,
) -> CensusReport:
    """Merge a member list into a report.

    ``members`` need not come from real chains; the collision logic only
    looks at values and coordinates, which is what lets a planted duplicate
    exercise the counterexample path.
    """
    ordered = sorted(members, key=lambda m: (m.value, m.k, m.i))
    if chains_scanned is None:
        chains_scanned = len({m.k for m in ordered})

    duplicates = []
    multiplicity: Counter[int] = Counter()
    max_mult, max_at = 0, 3
    for value, group in groupby(ordered, key=lambda m: m.value):
        coords = tuple(m.coord for m in group)
        multiplicity[len(coords)] += 1
        if len(coords) > 1:
            duplicates.append((value, coords))
        if len(coords) > max_mult:
            max_mult, max_at = len(coords), value

    t_x = sum(multiplicity.values())
    total = len(ordered)
    # |A(1)| = 0, |A(2)| = 1, |A(n)| = 2 + multiplicity(n) for 3 <= n <= x
    average_b = Fraction(1 + 2 * (x - 2) + total, x)
    b_bound, t_x_bound = _bounds(x, t_x)
    return CensusReport(
        x=x,
        chains_scanned=chains_scanned,
        members_total=total,
        members_distinct=t_x,
        duplicates=tuple(duplicates),
        t_x=t_x,
        histogram={2 + m: c for m, c in sorted(multiplicity.items())},
        max_size=2 + max_mult,
        max_size_at=max_at,
        average_b=average_b,
        b_bound=b_bound,
        t_x_bound=t_x_bound,
        elapsed=elapsed,
        members=tuple(ordered),
    )


def default_workers() -> int:
    """Worker count from $UNITYCHAIN_WORKERS, default 1."""
    raw = os.environ.get("UNITYCHAIN_WORKERS", "1")
    if not raw.isdigit() or int(raw) < 1:
        raise ValueError(f"UNITYCHAIN_WORKERS must be a positive integer, got {raw!r}")
    return int(raw)


def verify_conjecture(x: int, workers: int = 1, blocks: int | None = None) -> CensusReport:
    """Enumerate every chain member <= x and look for values shared by two chains.

    The result (apart from ``elapsed``) does not depend on ``workers`` or
    ``blocks``.  Memory is proportional to the member count, about sqrt(x).
    """
    _check_x(x)
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    start = time.perf_counter()
    ranges = k_blocks(x, blocks or 4 * workers)
    jobs = [(x, lo, hi) for lo, hi in ranges]
    if workers == 1:
        parts = [_block_worker(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_block_worker, jobs))
    members = [m for part in parts for m in part]
    return build_report(x, members, k_max(x) - 2, time.perf_counter() - start)


def average_value(x: int) -> tuple[Fraction, float, float]:
    """(B, bound on B, bound on T_x) for n <= x."""
    r = verify_conjecture(x)
    return r.average_b, r.b_bound, r.t_x_bound
