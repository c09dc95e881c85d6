"""Exact-rational simplex method with Bland's rule.

Two entry points:

* :func:`simplex_standard` solves ``max c.x  s.t.  A x <= b, x >= 0`` and
  also returns the optimal dual vector (used to recover the valuation that
  computes a log canonical threshold).
* :func:`lp_maximize` accepts free variables and constraints
  ``<normal, x> >= offset`` and reduces to the standard form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .._rational import dot, fvec
from ..errors import Infeasible, UnboundedObjective


@dataclass(frozen=True)
class StandardSolution:
    value: Fraction
    x: tuple[Fraction, ...]
    dual: tuple[Fraction, ...]


class _Tableau:
    """Dense tableau; objective rows use the ``z - c.x = 0`` convention."""

    def __init__(self, A, b):
        m = len(A)
        self.rows = [
            list(fvec(A[i])) + [Fraction(int(i == k)) for k in range(m)] + [Fraction(b[i])]
            for i in range(m)
        ]
        width = len(A[0]) if A else 0
        self.basis = [width + i for i in range(m)]

    def pivot(self, r: int, col: int, lines) -> None:
        row = self.rows[r]
        p = row[col]
        row = [x / p for x in row]
        self.rows[r] = row
        for i, other in enumerate(self.rows):
            if i != r and other[col]:
                f = other[col]
                self.rows[i] = [x - f * y for x, y in zip(other, row)]
        for line in lines:
            f = line[col]
            if f:
                line[:] = [x - f * y for x, y in zip(line, row)]
        self.basis[r] = col

    def bland(self, obj, cols, carried=()) -> bool:
        """Optimize ``obj`` over entering columns ``cols``; False if unbounded."""
        while True:
            col = next((j for j in cols if obj[j] < 0), None)
            if col is None:
                return True
            best = None
            for i, row in enumerate(self.rows):
                if row[col] > 0:
                    key = (row[-1] / row[col], self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self.pivot(best[1], col, [obj, *carried])

    def values(self, size: int) -> list[Fraction]:
        x = [Fraction(0)] * size
        for i, j in enumerate(self.basis):
            x[j] = self.rows[i][-1]
        return x


def simplex_standard(c: Sequence, A: Sequence[Sequence], b: Sequence) -> StandardSolution:
    """Maximize ``c.x`` over ``A x <= b, x >= 0`` exactly.

    Raises :class:`Infeasible` or :class:`UnboundedObjective`.
    """
    c, b = fvec(c), fvec(b)
    m, n = len(A), len(c)
    if all(x >= 0 for x in b):
        t = _Tableau(A, b)
        obj = [-x for x in c] + [Fraction(0)] * (m + 1)
        if not t.bland(obj, range(n + m)):
            raise UnboundedObjective("objective is unbounded above")
        x = t.values(n + m)
        return StandardSolution(obj[-1], tuple(x[:n]), tuple(obj[n + i] for i in range(m)))

    # Phase one: auxiliary column x0 (coefficient -1 in every row), maximize -x0.
    t = _Tableau([[Fraction(-1)] + list(fvec(row)) for row in A], b)
    width = n + 1 + m
    aux = [Fraction(1)] + [Fraction(0)] * (width - 1) + [Fraction(0)]
    obj = [Fraction(0)] + [-x for x in c] + [Fraction(0)] * (m + 1)
    r = min(range(m), key=lambda i: (t.rows[i][-1], i))
    t.pivot(r, 0, [aux, obj])
    t.bland(aux, range(width), carried=[obj])
    if aux[-1] != 0:
        raise Infeasible("constraints have no common solution")
    if 0 in t.basis:
        r = t.basis.index(0)
        col = next((j for j in range(1, width) if t.rows[r][j] != 0), None)
        if col is None:
            del t.rows[r]
            del t.basis[r]
        else:
            t.pivot(r, col, [aux, obj])
    if not t.bland(obj, range(1, width)):
        raise UnboundedObjective("objective is unbounded above")
    x = t.values(width)
    return StandardSolution(obj[-1], tuple(x[1 : n + 1]), tuple(obj[n + 1 + i] for i in range(m)))


def lp_maximize(objective: Sequence, constraints: Sequence[tuple[Sequence, object]]):
    """Maximize ``<objective, x>`` subject to ``<normal, x> >= offset``.

    Variables are free.  Returns ``(value, witness)`` with exact rationals;
    the witness satisfies every constraint and attains the value exactly.
    """
    c = fvec(objective)
    n = len(c)
    # x = p - q with p, q >= 0;  <a,x> >= b  <=>  -a.p + a.q <= -b
    A, b = [], []
    for normal, offset in constraints:
        a = fvec(normal)
        if len(a) != n:
            raise ValueError("constraint normal has wrong length")
        A.append([-x for x in a] + list(a))
        b.append(-Fraction(offset))
    if not A:
        if any(c):
            raise UnboundedObjective("no constraints and nonzero objective")
        return Fraction(0), tuple(Fraction(0) for _ in range(n))
    sol = simplex_standard(list(c) + [-x for x in c], A, b)
    x = tuple(sol.x[i] - sol.x[n + i] for i in range(n))
    return dot(c, x), x
