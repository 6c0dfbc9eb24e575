"""The recurrences G_i(x) = x G_{i-1} - G_{i-2} and F_i(x) = x F_{i-1} + F_{i-2}.

Both start from G_0 = F_0 = 1 and G_1 = F_1 = x.  Values are exact Python
integers; polynomials are dense integer coefficient vectors, lowest degree
first.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import zip_longest

__all__ = [
    "PolyCoeffs",
    "g_eval",
    "f_eval",
    "g_coeffs",
    "f_coeffs",
    "pair_quotient",
]


@dataclass(frozen=True)
class PolyCoeffs:
    """Integer polynomial; ``coeffs[j]`` is the coefficient of x**j."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(int(c) for c in self.coeffs)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        if not coeffs or coeffs == (0,):
            raise ValueError("the zero polynomial is not a PolyCoeffs")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: PolyCoeffs) -> PolyCoeffs:
        return PolyCoeffs(tuple(a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0)))

    def __sub__(self, other: PolyCoeffs) -> PolyCoeffs:
        return PolyCoeffs(tuple(a - b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0)))

    def __mul__(self, other: PolyCoeffs) -> PolyCoeffs:
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return PolyCoeffs(tuple(out))

    def __str__(self) -> str:
        terms = []
        for j in range(self.degree, -1, -1):
            c = self.coeffs[j]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if j == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else str(mag)) + ("x" if j == 1 else f"x^{j}")
            terms.append((sign, body))
        head_sign, head = terms[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


def _check_index(i: int) -> None:
    if i < 0:
        raise ValueError(f"index must be >= 0, got {i}")


def _run(i: int, k: int, sign: int) -> int:
    prev, cur = 1, k
    if i == 0:
        return prev
    for _ in range(i - 1):
        prev, cur = cur, k * cur + sign * prev
    return cur


def g_eval(i: int, k: int) -> int:
    """Return G_i(k) exactly.

    >>> [g_eval(i, 3) for i in range(6)]
    [1, 3, 8, 21, 55, 144]
    """
    _check_index(i)
    if k < 2:
        raise ValueError(f"G_i is evaluated at k >= 2, got {k}")
    return _run(i, k, -1)


def f_eval(i: int, k: int) -> int:
    """Return F_i(k) exactly, with the F_0 = 1, F_1 = x convention."""
    _check_index(i)
    if k < 1:
        raise ValueError(f"F_i is evaluated at k >= 1, got {k}")
    return _run(i, k, +1)


@lru_cache(maxsize=256)
def _coeffs(i: int, sign: int) -> tuple[int, ...]:
    prev: tuple[int, ...] = (1,)
    if i == 0:
        return prev
    cur: tuple[int, ...] = (0, 1)
    for _ in range(i - 1):
        shifted = (0,) + cur
        prev, cur = cur, tuple(a + sign * b for a, b in zip_longest(shifted, prev, fillvalue=0))
    return cur


def g_coeffs(i: int) -> PolyCoeffs:
    _check_index(i)
    return PolyCoeffs(_coeffs(i, -1))


def f_coeffs(i: int) -> PolyCoeffs:
    _check_index(i)
    return PolyCoeffs(_coeffs(i, +1))


def pair_quotient(i: int, k: int) -> int:
    """(G_i(k)^2 + G_{i-1}(k)^2 - 1) / (G_i(k) G_{i-1}(k)); equals k for i >= 1.

    Raises ArithmeticError if the division is not exact.
    """
    if i < 1:
        raise ValueError("needs i >= 1")
    a, n = g_eval(i - 1, k), g_eval(i, k)
    q, r = divmod(n * n + a * a - 1, a * n)
    if r:
        raise ArithmeticError(f"G_{i}({k}), G_{i - 1}({k}) do not divide evenly")
    return q
