"""Chains C_k = <G_i(k)>_{i>=2}, predecessors, and the descent that finds them.

Every a in A(n) other than 1 and n - 1 sits directly below n in exactly one
chain C_z with z = (n^2 + a^2 - 1) / (a n).  Walking (a, n) -> (z a - n, a)
is a Euclid-style descent that ends at (1, z) = (G_0(z), G_1(z)), so the
number of pairs visited is the position of n in C_z.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt
from typing import NamedTuple

from .polyseq import g_eval
from .unity import ASetResult, aset_fast

__all__ = [
    "MEMBER_MAX",
    "ChainCoord",
    "DescentTrace",
    "chain_iter",
    "predecessor",
    "descend",
    "locate",
    "locate_scan",
    "aset_chain",
]

# Chain values are held to signed 64-bit so reports stay portable.
MEMBER_MAX = 2**63 - 1


class ChainCoord(NamedTuple):
    k: int
    i: int

    def validate(self) -> ChainCoord:
        if self.k < 3:
            raise ValueError(f"chain generator k must be >= 3, got {self.k}")
        if self.i < 2:
            raise ValueError(f"chain position i must be >= 2, got {self.i}")
        return self

    def __str__(self) -> str:
        return f"(k={self.k}, i={self.i})"


@dataclass(frozen=True)
class DescentTrace:
    """Pairs visited by :func:`descend`, starting pair first, ending at (1, z)."""

    start: tuple[int, int]
    steps: tuple[tuple[int, int], ...]
    z: int
    coord: ChainCoord

    def __str__(self) -> str:
        path = " -> ".join(f"({r},{a})" for r, a in self.steps)
        return f"z={self.z}, path {path}, n = G_{self.coord.i}({self.z})"


def chain_iter(k: int, limit: int) -> list[tuple[ChainCoord, int]]:
    """Members G_i(k) <= limit of chain C_k, in order of position i >= 2."""
    if k < 3:
        raise ValueError(f"chain generator k must be >= 3, got {k}")
    if limit > MEMBER_MAX:
        raise OverflowError(f"limit {limit} exceeds {MEMBER_MAX}; use polyseq.g_eval for larger values")
    out = []
    prev, cur, i = 1, k, 1
    while True:
        prev, cur = cur, k * cur - prev
        i += 1
        if cur > limit:
            return out
        out.append((ChainCoord(k, i), cur))


def predecessor(coord: ChainCoord) -> int:
    """G_{i-1}(k), the element of A(G_i(k)) that sits below it in C_k."""
    k, i = ChainCoord(*coord).validate()
    return g_eval(i - 1, k)


def descend(a: int, n: int) -> DescentTrace:
    """Run the descent from (a, n) down to (1, z).

    Requires a in A(n) with 1 < a < n - 1.  Raises ValueError otherwise, and
    ArithmeticError if some step fails to reproduce the same integral z.
    """
    if not 1 < a < n - 1:
        raise ValueError(f"need 1 < a < n - 1, got a={a}, n={n}")
    if (a * a - 1) % n or (n * n - 1) % a:
        raise ValueError(f"{a} is not in A({n})")
    if gcd(a, n) != 1:
        raise ValueError(f"gcd({a}, {n}) != 1")
    z, rem = divmod(n * n + a * a - 1, a * n)
    if rem:
        raise ArithmeticError(f"(n^2 + a^2 - 1)/(a n) is not integral for a={a}, n={n}")
    if z < 3:
        raise ArithmeticError(f"descent generator z={z} < 3 for a={a}, n={n}")

    steps = [(a, n)]
    lo, hi = a, n
    while lo != 1:
        lo, hi = z * lo - hi, lo
        if not 0 < lo < hi:
            raise ArithmeticError(f"descent left the positive cone at ({lo}, {hi})")
        q, rem = divmod(hi * hi + lo * lo - 1, lo * hi)
        if rem or q != z:
            raise ArithmeticError(f"pair ({lo}, {hi}) does not reproduce z={z}")
        steps.append((lo, hi))
    if hi != z:
        raise ArithmeticError(f"descent ended at (1, {hi}), expected (1, {z})")

    coord = ChainCoord(z, len(steps))
    return DescentTrace((a, n), tuple(steps), z, coord)


def locate(n: int) -> list[ChainCoord]:
    """All (k, i) with k >= 3, i >= 2 and G_i(k) = n, sorted by k.

    Descends from each nontrivial element of A(n); the list length is
    |A(n)| - 2 for n >= 3.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    inner = [a for a in aset_fast(n).elements if 1 < a < n - 1]
    return sorted(descend(a, n).coord for a in inner)


def locate_scan(n: int) -> list[ChainCoord]:
    """Same as :func:`locate`, by walking every chain C_3 .. C_floor(sqrt(n+1))."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    hits = []
    for k in range(3, isqrt(n + 1) + 1):
        for coord, value in chain_iter(k, n):
            if value == n:
                hits.append(coord)
    return hits


def aset_chain(n: int) -> ASetResult:
    """A(n) without any factoring: {1, n-1} plus the chain predecessors of n."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    elements = {1, n - 1}
    elements.update(predecessor(c) for c in locate_scan(n))
    return ASetResult(n, tuple(sorted(elements)), "chain")
