"""Rational polyhedral cones stored by primitive rays and facet normals."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .._rational import check_rank, dot, ivec, primitive, rank
from ..errors import NotFullDimensional, NotStronglyConvex
from ._dd import extreme_rays


@dataclass(frozen=True)
class Cone:
    """A full-dimensional, strongly convex rational cone.

    ``rays`` are the primitive generators of the one-dimensional faces and
    ``facets`` the primitive inner normals, so that ``p`` lies in the cone
    iff ``<f, p> >= 0`` for every facet normal ``f``.  Both are sorted
    lexicographically.  Use :meth:`from_rays` to build one; it validates.
    """

    rank: int
    rays: tuple[tuple[int, ...], ...]
    facets: tuple[tuple[int, ...], ...] = field(repr=False)

    @classmethod
    def from_rays(cls, rays: Iterable[Sequence[int]]) -> "Cone":
        rays = [primitive(ivec(r)) for r in rays]
        rays = [r for r in rays if any(r)]
        if not rays:
            raise NotFullDimensional("cone has no nonzero generators")
        n = len(rays[0])
        if any(len(r) != n for r in rays):
            raise ValueError("rays have inconsistent lengths")
        check_rank(n)
        if rank(rays) < n:
            raise NotFullDimensional(f"rays span a proper subspace of Q^{n}")
        facets = extreme_rays(rays, n)
        if len(facets) < n or rank(facets) < n:
            raise NotStronglyConvex("cone contains a line")
        # keep only the extreme generators
        extreme = set()
        for r in rays:
            tight = [f for f in facets if dot(f, r) == 0]
            if len(tight) >= n - 1 and rank(tight) == n - 1:
                extreme.add(r)
        return cls(n, tuple(sorted(extreme)), tuple(facets))

    @classmethod
    def orthant(cls, n: int) -> "Cone":
        return cls.from_rays([tuple(int(i == j) for j in range(n)) for i in range(n)])

    def contains(self, p: Sequence) -> bool:
        return all(dot(f, p) >= 0 for f in self.facets)

    def contains_interior(self, p: Sequence) -> bool:
        return all(dot(f, p) > 0 for f in self.facets)

    def dual(self) -> "Cone":
        return Cone(self.rank, self.facets, self.rays)

    def same_as(self, other: "Cone") -> bool:
        """Set equality, tested by mutual ray membership."""
        return (
            self.rank == other.rank
            and all(other.contains(r) for r in self.rays)
            and all(self.contains(r) for r in other.rays)
        )

    def interior_point(self) -> tuple[int, ...]:
        """Sum of the rays; lies in the interior."""
        return tuple(sum(c) for c in zip(*self.rays))


def dual_cone(c: Cone) -> Cone:
    """``{y : <x, y> >= 0 for all x in c}`` with primitive rays."""
    return c.dual()
