"""Bounded rational polytopes in both V- and H-representation."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .._rational import det, dot, fvec, rank
from ..errors import Unbounded
from ._dd import extreme_rays
from .cone import Cone

Halfspace = tuple[tuple[Fraction, ...], Fraction]  # <normal, x> >= offset


@dataclass(frozen=True)
class Simplex:
    vertices: tuple[tuple[Fraction, ...], ...]

    def volume(self) -> Fraction:
        v0 = self.vertices[0]
        n = len(v0)
        if len(self.vertices) != n + 1:
            return Fraction(0)
        rows = [[a - b for a, b in zip(v, v0)] for v in self.vertices[1:]]
        return abs(det(rows)) / math.factorial(n)


@dataclass(frozen=True)
class Polytope:
    """``conv(vertices)`` which equals the intersection of ``halfspaces``."""

    dim: int
    vertices: tuple[tuple[Fraction, ...], ...]
    halfspaces: tuple[Halfspace, ...] = field(repr=False)

    @classmethod
    def from_halfspaces(cls, halfspaces: Iterable[tuple[Sequence, object]], dim: int) -> "Polytope":
        hs = [(fvec(a), Fraction(b)) for a, b in halfspaces]
        verts, rays = h_to_v(hs, dim)
        if rays:
            raise Unbounded("halfspaces define an unbounded region")
        return cls(dim, tuple(sorted(verts)), tuple(hs))

    @classmethod
    def from_vertices(cls, points: Iterable[Sequence], dim: int) -> "Polytope":
        pts = sorted(set(fvec(p) for p in points))
        if affine_rank(pts) < dim:
            # lower-dimensional: keep the points, no facet description needed
            return cls(dim, tuple(pts), ())
        hs = v_to_h(pts, [], dim)
        verts = [p for p in pts if _is_vertex(p, hs, dim)]
        return cls(dim, tuple(verts), tuple(hs))

    def contains(self, p: Sequence) -> bool:
        return all(dot(a, p) >= b for a, b in self.halfspaces)

    @property
    def affine_dim(self) -> int:
        return affine_rank(self.vertices)


def affine_rank(points: Sequence[Sequence]) -> int:
    if not points:
        return -1
    p0 = points[0]
    return rank([[a - b for a, b in zip(p, p0)] for p in points[1:]]) if len(points) > 1 else 0


def _is_vertex(p, hs, dim) -> bool:
    tight = [a for a, b in hs if dot(a, p) == b]
    return len(tight) >= dim and rank(tight) == dim


def _scaled(v: Sequence[Fraction]) -> tuple[int, ...]:
    d = 1
    for x in v:
        d = math.lcm(d, x.denominator)
    return tuple(int(x * d) for x in v)


def h_to_v(halfspaces: Sequence[Halfspace], dim: int):
    """Vertices and recession rays of ``{x : <a,x> >= b}`` (must be pointed)."""
    rows = [(1,) + (0,) * dim]  # t >= 0
    for a, b in halfspaces:
        rows.append(_scaled((-Fraction(b),) + tuple(a)))
    verts, rays = [], []
    for r in extreme_rays(rows, dim + 1):
        if r[0] > 0:
            verts.append(tuple(Fraction(x, r[0]) for x in r[1:]))
        else:
            rays.append(r[1:])
    return verts, rays


def v_to_h(points: Sequence[Sequence], rays: Sequence[Sequence], dim: int) -> list[Halfspace]:
    """Irredundant facet inequalities of ``conv(points) + cone(rays)`` (full-dimensional)."""
    rows = [_scaled((Fraction(1),) + fvec(p)) for p in points]
    rows += [(0,) + tuple(int(x) for x in r) for r in rays]
    out = []
    for r in extreme_rays(rows, dim + 1):
        a = r[1:]
        if not any(a):
            continue  # the homogenizing face t = 0
        out.append((tuple(Fraction(x) for x in a), Fraction(-r[0])))
    return out


def truncate(c: Cone, u: Sequence, level) -> Polytope:
    """The bounded region ``{x in c : <u, x> <= level}``."""
    u = fvec(u)
    level = Fraction(level)
    vals = [dot(u, r) for r in c.rays]
    if any(v <= 0 for v in vals):
        raise Unbounded("u is not strictly positive on every ray of the cone")
    if level < 0:
        raise ValueError("truncation level must be nonnegative")
    zero = tuple(Fraction(0) for _ in range(c.rank))
    if level == 0:
        return Polytope(c.rank, (zero,), ())
    verts = [zero] + [tuple(Fraction(x) * level / v for x in r) for r, v in zip(c.rays, vals)]
    hs = [(tuple(Fraction(x) for x in f), Fraction(0)) for f in c.facets]
    hs.append((tuple(-x for x in u), -level))
    return Polytope(c.rank, tuple(sorted(verts)), tuple(hs))


def triangulate(p: Polytope, order: Sequence[int] | None = None) -> list[Simplex]:
    """Pulling triangulation of a full-dimensional polytope.

    Each face is coned from its earliest vertex in ``order`` (default:
    lexicographic vertex order) over the triangulations of the facets of
    that face which avoid it.
    """
    verts = p.vertices
    if p.affine_dim < p.dim:
        return []
    prio = {v: k for k, v in enumerate(order if order is not None else range(len(verts)))}
    incid = []
    for a, b in p.halfspaces:
        s = frozenset(i for i, v in enumerate(verts) if dot(a, v) == b)
        if s:
            incid.append(s)
    dims: dict[frozenset, int] = {}

    def fdim(face):
        if face not in dims:
            dims[face] = affine_rank([verts[i] for i in sorted(face)])
        return dims[face]

    def facets_of(face, d):
        cands = {face & s for s in incid}
        return [g for g in cands if g != face and len(g) >= d and fdim(g) == d - 1]

    def tri(face, d):
        if d == 0:
            return [tuple(face)]
        apex = min(face, key=lambda i: prio[i])
        cells = []
        for g in facets_of(face, d):
            if apex in g:
                continue
            for cell in tri(g, d - 1):
                cells.append(cell + (apex,))
        return cells

    return [Simplex(tuple(verts[i] for i in cell)) for cell in tri(frozenset(range(len(verts))), p.dim)]


def volume(p: Polytope, order: Sequence[int] | None = None) -> Fraction:
    """Exact Euclidean volume; zero for lower-dimensional polytopes."""
    return sum((s.volume() for s in triangulate(p, order)), Fraction(0))


def polyhedron_halfspaces(points: Sequence[Sequence], recession: Cone) -> list[Halfspace]:
    """Facets of ``conv(points) + recession``."""
    return v_to_h([fvec(p) for p in points], recession.rays, recession.rank)
