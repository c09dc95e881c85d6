"""Lattice-point enumeration in truncated cones."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator, Sequence

from .._rational import dot, fvec
from ..errors import Unbounded
from .cone import Cone


def _integer_form(u: Sequence[Fraction], level: Fraction) -> tuple[tuple[int, ...], Fraction]:
    d = 1
    for x in u:
        d = math.lcm(d, x.denominator)
    return tuple(int(x * d) for x in u), level * d


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


def points_in_slab(c: Cone, u: Sequence, lo, hi) -> Iterator[tuple[int, ...]]:
    """Lattice points ``x`` of ``c`` with ``lo <= <u, x> < hi``.

    The search box comes from the vertices of ``{x in c : <u,x> <= hi}``;
    the last coordinate is solved for exactly instead of scanned.
    """
    u = fvec(u)
    lo, hi = Fraction(lo), Fraction(hi)
    vals = [dot(u, r) for r in c.rays]
    if any(v <= 0 for v in vals):
        raise Unbounded("u is not strictly positive on every ray of the cone")
    if hi <= 0 or hi <= lo:
        return
    n = c.rank
    ui, hi_i = _integer_form(u, hi)
    _, lo_i = _integer_form(u, lo)
    top = _ceil(hi_i) - 1  # <ui, x> <= top  <=>  <u, x> < hi
    bottom = _ceil(lo_i)
    corners = [tuple(Fraction(x) * hi / v for x in r) for r, v in zip(c.rays, vals)]
    box = []
    for k in range(n - 1):
        coords = [p[k] for p in corners] + [Fraction(0)]
        box.append(range(_floor(min(coords)), _floor(max(coords)) + 1))
    # linear constraints  <a, x> >= b  with integer a, b
    cons = [(f, 0) for f in c.facets] + [(tuple(-x for x in ui), -top), (ui, bottom)]

    def rec(prefix: list[int], k: int):
        if k == n - 1:
            lo_t, hi_t = -math.inf, math.inf
            for a, b in cons:
                rest = b - sum(x * y for x, y in zip(a, prefix))
                coef = a[-1]
                if coef > 0:
                    lo_t = max(lo_t, -((-rest) // coef))
                elif coef < 0:
                    hi_t = min(hi_t, rest // coef)
                elif rest > 0:
                    return
            if lo_t == -math.inf or hi_t == math.inf:
                raise Unbounded("enumeration region is not bounded")
            for t in range(lo_t, hi_t + 1):
                yield tuple(prefix) + (t,)
            return
        for x in box[k]:
            prefix.append(x)
            yield from rec(prefix, k + 1)
            prefix.pop()

    yield from rec([], 0)


def count_lattice_points_below(c: Cone, u: Sequence, level) -> int:
    """``#{x in c ∩ Z^n : <u, x> < level}``."""
    return sum(1 for _ in points_in_slab(c, u, 0, level))


def hilbert_basis(c: Cone) -> tuple[tuple[int, ...], ...]:
    """Minimal generators of the semigroup ``c ∩ Z^n``.

    Every element of the semigroup is a sum of rays plus a lattice point of a
    half-open parallelepiped spanned by ``n`` rays, so candidates are bounded
    by ``<u0, x> <= sum <u0, r>`` for the interior functional ``u0`` = sum of
    the facet normals.
    """
    u0 = tuple(sum(col) for col in zip(*c.facets))
    bound = sum(dot(u0, r) for r in c.rays)
    cands = [p for p in points_in_slab(c, u0, 1, bound + 1) if any(p)]
    cands.sort(key=lambda p: (dot(u0, p), p))
    basis = []
    for p in cands:
        hp = dot(u0, p)
        reducible = False
        for q in basis:
            if dot(u0, q) >= hp:
                break
            if c.contains(tuple(a - b for a, b in zip(p, q))):
                reducible = True
                break
        if not reducible:
            basis.append(p)
    return tuple(sorted(basis))
