"""Factorization, square roots of 1 mod n, divisor counts and the A(n) engines.

A(n) = {1 <= a < n : n | a^2 - 1 and a | n^2 - 1}.

Two engines live here:

* :func:`aset_brute` scans every candidate ``a`` (numpy-vectorised) and is the
  ground-truth oracle.
* :func:`aset_fast` enumerates the square roots of 1 modulo ``n`` by CRT over
  the prime-power factors of ``n`` and keeps those dividing ``n^2 - 1``.

The third engine, which never factors anything, is
:func:`unitychain.chains.aset_chain`.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt, prod
from typing import Literal, Sequence

import numpy as np

__all__ = [
    "SPF_CAP",
    "Factorization",
    "ASetResult",
    "spf_sieve",
    "factorize",
    "factorize_n2m1",
    "sqrt_units",
    "correct_root_count",
    "literal_root_count",
    "divisor_count",
    "aset_brute",
    "aset_fast",
    "paper_upper_bound",
]

Method = Literal["brute", "fast", "chain"]

U64_MAX = 2**64 - 1
# Largest n whose a*a and n*n - 1 stay inside int64 during the vectorised scan.
_BRUTE_MAX = isqrt(2**63 - 1)
SPF_CAP = 10**8
_CHUNK = 1 << 20


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]

    @property
    def omega(self) -> int:
        """Number of distinct prime factors, w(n)."""
        return len(self.factors)

    @property
    def divisor_count(self) -> int:
        return prod(e + 1 for _, e in self.factors)

    def prime_powers(self) -> list[int]:
        return [p**e for p, e in self.factors]

    def value(self) -> int:
        return prod(p**e for p, e in self.factors)


@dataclass(frozen=True)
class ASetResult:
    n: int
    elements: tuple[int, ...]
    method: Method

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, a: object) -> bool:
        return a in self.elements

    def __str__(self) -> str:
        body = ", ".join(map(str, self.elements))
        return f"A({self.n}) = {{{body}}} (size {len(self.elements)})"


def _check_range(n: int, lo: int, name: str = "n") -> None:
    if n < lo:
        raise ValueError(f"{name} must be >= {lo}, got {n}")
    if n > U64_MAX:
        raise ValueError(f"{name} must fit in 64 bits, got {n}")


def spf_sieve(limit: int, cap: int = SPF_CAP) -> np.ndarray:
    """Smallest-prime-factor table for 0..limit (entries 0 and 1 are 0 and 1).

    Memory is 4 bytes per entry; ``cap`` rejects tables larger than that many
    entries before anything is allocated.
    """
    if limit < 2:
        raise ValueError(f"limit must be >= 2, got {limit}")
    if limit > cap:
        raise MemoryError(f"sieve limit {limit} exceeds cap {cap}")
    spf = np.zeros(limit + 1, dtype=np.uint32)
    spf[1] = 1
    for p in range(2, isqrt(limit) + 1):
        if spf[p]:
            continue
        block = spf[p * p :: p]
        block[block == 0] = p
    unset = np.flatnonzero(spf == 0)
    spf[unset] = unset.astype(np.uint32)
    spf[0] = 0
    return spf


def _trial_division(n: int) -> list[tuple[int, int]]:
    out = []
    for p in (2, 3, 5):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    # 2,3,5 wheel: residues coprime to 30
    p, steps = 7, (4, 2, 4, 2, 4, 6, 2, 6)
    idx = 0
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += steps[idx]
        idx = (idx + 1) & 7
    if n > 1:
        out.append((n, 1))
    return out


def factorize(n: int, spf: np.ndarray | None = None) -> Factorization:
    """Exact factorization of ``n``; uses the ``spf`` table when it covers n.

    Without a table this is trial division up to sqrt(n), fine up to ~1e14.
    """
    _check_range(n, 1)
    if spf is not None and n < len(spf):
        counts: dict[int, int] = {}
        m = n
        while m > 1:
            p = int(spf[m])
            counts[p] = counts.get(p, 0) + 1
            m //= p
        return Factorization(n, tuple(sorted(counts.items())))
    return Factorization(n, tuple(_trial_division(n)))


def _merge(*parts: Factorization) -> tuple[tuple[int, int], ...]:
    counts: dict[int, int] = {}
    for f in parts:
        for p, e in f.factors:
            counts[p] = counts.get(p, 0) + e
    return tuple(sorted(counts.items()))


def factorize_n2m1(n: int, spf: np.ndarray | None = None) -> Factorization:
    """Factor n^2 - 1 as the merge of the factorizations of n - 1 and n + 1."""
    _check_range(n, 2)
    return Factorization(n * n - 1, _merge(factorize(n - 1, spf), factorize(n + 1, spf)))


def _local_roots(p: int, e: int) -> list[int]:
    q = p**e
    if p != 2:
        return [1, q - 1]
    if e == 1:
        return [1]
    if e == 2:
        return [1, 3]
    half = q >> 1
    return [1, half - 1, half + 1, q - 1]


def _idempotents(moduli: Sequence[int], n: int) -> list[int]:
    """e_j with e_j = 1 mod q_j and e_j = 0 mod the other q's."""
    out = []
    for q in moduli:
        rest = n // q
        out.append(rest * pow(rest, -1, q))
    return out


def sqrt_units(n: int, spf: np.ndarray | None = None) -> list[int]:
    """All 1 <= a < n with a^2 = 1 (mod n), ascending."""
    _check_range(n, 2)
    f = factorize(n, spf)
    moduli = f.prime_powers()
    combos = [0]
    for (p, e), idem in zip(f.factors, _idempotents(moduli, n)):
        local = _local_roots(p, e)
        combos = [c + r * idem for c in combos for r in local]
    return sorted(c % n for c in combos)


def correct_root_count(n: int, spf: np.ndarray | None = None) -> int:
    """Number of square roots of 1 mod n, counted per prime power."""
    _check_range(n, 2)
    return prod(len(_local_roots(p, e)) for p, e in factorize(n, spf).factors)


def literal_root_count(n: int) -> int:
    """2^(w(n)-1) when n = 2 * odd, else 2^w(n).

    This undercounts whenever 8 | n; kept for side-by-side comparison only.
    """
    _check_range(n, 2)
    w = factorize(n).omega
    return 2 ** (w - 1) if n % 4 == 2 else 2**w


def divisor_count(x: int, spf: np.ndarray | None = None) -> int:
    """sigma_0(x)."""
    _check_range(x, 1, "x")
    return factorize(x, spf).divisor_count


def paper_upper_bound(n: int, literal: bool = False) -> int:
    """min(#sqrt(1) mod n, sigma_0(n^2 - 1)), an upper bound on |A(n)|.

    With ``literal=True`` the first term is 2^w(n) instead of the exact root
    count; that form is not a valid bound when 8 | n (n = 8 gives 2 < 3).
    """
    _check_range(n, 2)
    sigma = factorize_n2m1(n).divisor_count
    roots = 2 ** factorize(n).omega if literal else correct_root_count(n)
    return min(roots, sigma)


def _divides_n2m1(a: int, n: int) -> bool:
    r = n % a
    return (r * r - 1) % a == 0


def aset_fast(n: int, spf: np.ndarray | None = None) -> ASetResult:
    """A(n) from the square roots of unity, filtered by a | n^2 - 1."""
    elements = tuple(a for a in sqrt_units(n, spf) if _divides_n2m1(a, n))
    return ASetResult(n, elements, "fast")


_BASE = np.arange(1, _CHUNK + 1, dtype=np.int64)


def aset_brute(n: int) -> ASetResult:
    """A(n) by testing every 1 <= a < n.  O(n); meant for n up to ~1e7."""
    _check_range(n, 2)
    if n > _BRUTE_MAX:
        raise ValueError(f"brute-force scan needs n <= {_BRUTE_MAX}, got {n}")
    target = n * n - 1
    found: list[int] = []
    for start in range(0, n - 1, _CHUNK):
        size = min(_CHUNK, n - 1 - start)
        a = _BASE[:size] if start == 0 else _BASE[:size] + start
        cand = a[target % a == 0]
        found.extend(int(v) for v in cand[(cand * cand - 1) % n == 0])
    return ASetResult(n, tuple(found), "brute")
