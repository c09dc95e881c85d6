"""Small exact-arithmetic helpers shared by the geometry code."""

from __future__ import annotations

import math
import os
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import UnsupportedRank

MIN_RANK = 2
MAX_RANK = 6


def max_rank() -> int:
    # NVOL_MAX_RANK may only lower the cap
    env = os.environ.get("NVOL_MAX_RANK")
    if env:
        try:
            return max(1, min(MAX_RANK, int(env)))
        except ValueError:
            pass
    return MAX_RANK


def check_rank(n: int) -> None:
    cap = max_rank()
    if not MIN_RANK <= n <= cap:
        raise UnsupportedRank(f"lattice rank {n} outside supported range {MIN_RANK}..{cap}")


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("refusing implicit float -> rational conversion")
    return Fraction(x)


def fvec(xs: Iterable) -> tuple[Fraction, ...]:
    return tuple(as_fraction(x) for x in xs)


def ivec(xs: Iterable) -> tuple[int, ...]:
    out = []
    for x in xs:
        if isinstance(x, bool):
            raise TypeError("booleans are not lattice coordinates")
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"non-integer lattice coordinate {x}")
            x = x.numerator
        if isinstance(x, float):
            if not x.is_integer():
                raise ValueError(f"non-integer lattice coordinate {x}")
            x = int(x)
        out.append(int(x))
    return tuple(out)


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = math.gcd(g, x)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


def integer_direction(v: Sequence) -> tuple[int, ...]:
    """Primitive integer vector pointing along the rational vector ``v``."""
    v = fvec(v)
    d = 1
    for x in v:
        d = math.lcm(d, x.denominator)
    return primitive(tuple(int(x * d) for x in v))


def parse_rational(s: str) -> Fraction:
    return Fraction(s.strip())


def rational_str(x) -> str:
    return str(Fraction(x))


def rank(rows: Sequence[Sequence]) -> int:
    """Rank of a rational matrix by fraction-free Gaussian elimination."""
    m = [list(fvec(r)) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, len(m)):
            if m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def solve_consistent(rows: Sequence[Sequence], rhs: Sequence) -> tuple[Fraction, ...] | None:
    """Solve ``rows @ x = rhs`` exactly; ``None`` if inconsistent.

    Free variables (underdetermined systems) are set to zero.
    """
    ncols = len(rows[0])
    m = [list(fvec(r)) + [as_fraction(b)] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [a / p for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(m)):
        if m[i][-1] != 0:
            return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = m[i][-1]
    return tuple(x)


def det(rows: Sequence[Sequence]):
    """Exact determinant (Bareiss for integer input, elimination otherwise)."""
    n = len(rows)
    if all(isinstance(x, int) for r in rows for x in r):
        m = [list(r) for r in rows]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
                if swap is None:
                    return 0
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1]
    m = [list(fvec(r)) for r in rows]
    result = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            result = -result
        result *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return result
