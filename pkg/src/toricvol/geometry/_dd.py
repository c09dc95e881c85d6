"""Double-description method over the integers.

``extreme_rays(rows)`` returns the extreme rays of the pointed polyhedral
cone ``{y : <a, y> >= 0 for every row a}``.  Rows are processed in
lexicographic order; adjacency uses the combinatorial test on zero sets.
"""

from __future__ import annotations

import math
from typing import Sequence

from .._rational import primitive


def _rank_select(rows: list[tuple[int, ...]], d: int) -> list[int]:
    """Indices of the first ``d`` linearly independent rows (greedy)."""
    basis: list[list] = []  # echelon rows with pivot columns
    pivcols: list[int] = []
    chosen = []
    from fractions import Fraction

    for idx, row in enumerate(rows):
        v = [Fraction(x) for x in row]
        for b, c in zip(basis, pivcols):
            if v[c] != 0:
                f = v[c] / b[c]
                v = [x - f * y for x, y in zip(v, b)]
        c = next((j for j, x in enumerate(v) if x != 0), None)
        if c is None:
            continue
        basis.append(v)
        pivcols.append(c)
        chosen.append(idx)
        if len(chosen) == d:
            break
    return chosen


def _adjugate_columns(sub: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Columns c_k with sub @ c_k = |det| e_k (integer, via exact inverse)."""
    from fractions import Fraction

    d = len(sub)
    m = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(d)] for i, r in enumerate(sub)]
    for c in range(d):
        piv = next(i for i in range(c, d) if m[i][c] != 0)
        m[c], m[piv] = m[piv], m[c]
        p = m[c][c]
        m[c] = [x / p for x in m[c]]
        for i in range(d):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    inv = [row[d:] for row in m]
    cols = []
    for k in range(d):
        col = [inv[i][k] for i in range(d)]
        den = 1
        for x in col:
            den = math.lcm(den, x.denominator)
        cols.append(primitive(tuple(int(x * den) for x in col)))
    return cols


def extreme_rays(rows: Sequence[Sequence[int]], dim: int) -> list[tuple[int, ...]]:
    """Extreme rays of ``{y in R^dim : A y >= 0}``; requires rank(A) == dim."""
    rows = sorted({primitive(tuple(int(x) for x in r)) for r in rows if any(r)})
    init = _rank_select(rows, dim)
    if len(init) < dim:
        raise ValueError("constraint matrix does not have full column rank")
    order = init + [i for i in range(len(rows)) if i not in set(init)]
    rows = [rows[i] for i in order]

    # rays stored as (vector, zero-set bitmask over processed rows)
    rays: list[tuple[tuple[int, ...], int]] = []
    full = (1 << dim) - 1
    for k, col in enumerate(_adjugate_columns(rows[:dim])):
        rays.append((col, full & ~(1 << k)))

    for j in range(dim, len(rows)):
        a = rows[j]
        bit = 1 << j
        pos, neg, zero = [], [], []
        for vec, z in rays:
            s = sum(x * y for x, y in zip(a, vec))
            if s > 0:
                pos.append((vec, z, s))
            elif s < 0:
                neg.append((vec, z, s))
            else:
                zero.append((vec, z | bit))
        if not neg:
            rays = [(v, z) for v, z, _ in pos] + zero
            continue
        new = []
        all_z = [z for _, z in rays]
        for pv, pz, ps in pos:
            for nv, nz, ns in neg:
                common = pz & nz
                if bin(common).count("1") < dim - 2:
                    continue
                if any(z != pz and z != nz and (z & common) == common for z in all_z):
                    continue
                vec = primitive(tuple(ps * y - ns * x for x, y in zip(pv, nv)))
                new.append((vec, common | bit))
        rays = [(v, z) for v, z, _ in pos] + zero + new
    return sorted({v for v, _ in rays})
