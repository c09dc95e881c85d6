"""Q-Gorenstein toric germs."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from ._rational import det, dot, fvec, solve_consistent
from .errors import NotQGorenstein
from .geometry.cone import Cone
from .geometry.lattice import hilbert_basis
from .geometry.polytope import triangulate, truncate


@dataclass(frozen=True, eq=False)
class ToricGerm:
    """The affine toric variety of ``sigma`` at its torus-fixed point.

    ``w`` is the covector with ``<u_i, w> = 1`` on every primitive ray of
    ``sigma``; its existence is the Q-Gorenstein condition, which for toric
    germs already gives klt singularities.
    """

    sigma: Cone
    sigma_dual: Cone
    w: tuple[Fraction, ...]
    name: str | None = field(default=None, compare=False)

    @property
    def rank(self) -> int:
        return self.sigma.rank

    @property
    def gorenstein_index(self) -> int:
        return math.lcm(*(x.denominator for x in self.w))

    def __eq__(self, other):
        return isinstance(other, ToricGerm) and self.sigma.rays == other.sigma.rays

    def __hash__(self):
        return hash(self.sigma.rays)

    @cached_property
    def hilbert_basis(self) -> tuple[tuple[int, ...], ...]:
        """Minimal generators of the semigroup ``sigma_dual ∩ M``."""
        return hilbert_basis(self.sigma_dual)

    @cached_property
    def dual_cells(self) -> tuple[tuple[tuple[int, ...], int], ...]:
        """Simplicial cones subdividing ``sigma_dual``: (ray indices, |det|).

        Obtained by pulling a truncation of ``sigma_dual`` from the origin, so
        the cells are cones over a triangulation of the cross-section.
        """
        rays = self.sigma_dual.rays
        u0 = self.sigma.interior_point()
        p = truncate(self.sigma_dual, u0, 1)
        ray_of = {tuple(Fraction(x, dot(u0, r)) for x in r): k for k, r in enumerate(rays)}
        order = sorted(range(len(p.vertices)), key=lambda i: p.vertices[i] in ray_of)
        cells = []
        for s in triangulate(p, order):
            ids = tuple(sorted(ray_of[v] for v in s.vertices if v in ray_of))
            cells.append((ids, abs(det([rays[i] for i in ids]))))
        return tuple(sorted(cells))

    def contains_interior(self, u: Sequence) -> bool:
        return self.sigma.contains_interior(u)

    def automorphisms(self, max_rays: int = 8) -> list[tuple[tuple[int, ...], ...]]:
        """Integral linear maps permuting the rays of ``sigma`` (row-major matrices).

        Returns ``[]`` when ``sigma`` has more than ``max_rays`` rays.
        """
        rays = self.sigma.rays
        n = self.rank
        if len(rays) > max_rays:
            return []
        basis = _independent(rays, n)
        B = [rays[i] for i in basis]
        ray_set = set(rays)
        found = []
        for image in itertools.permutations(rays, n):
            # T B^t = image^t, i.e. T = image^t (B^t)^{-1}
            T = _solve_linear_map(B, image)
            if T is None or any(x.denominator != 1 for row in T for x in row):
                continue
            Ti = tuple(tuple(int(x) for x in row) for row in T)
            if abs(det([list(r) for r in Ti])) != 1:
                continue
            if {tuple(dot(row, r) for row in Ti) for r in rays} == ray_set:
                found.append(Ti)
        return found


def _independent(rows, n):
    from ._rational import rank

    chosen = []
    for i in range(len(rows)):
        if rank([rows[j] for j in chosen + [i]]) == len(chosen) + 1:
            chosen.append(i)
            if len(chosen) == n:
                break
    return chosen


def _solve_linear_map(B, image):
    n = len(B)
    T = []
    for i in range(n):
        # row i of T satisfies <row, B_k> = image_k[i]
        row = solve_consistent(B, [img[i] for img in image])
        if row is None:
            return None
        T.append(row)
    return T


def build_germ(rays: Iterable[Sequence[int]], name: str | None = None) -> ToricGerm:
    """Validate ``rays`` as a Q-Gorenstein (hence klt) toric germ."""
    sigma = Cone.from_rays(rays)
    w = solve_consistent(sigma.rays, [1] * len(sigma.rays))
    if w is None:
        raise NotQGorenstein("no covector w with <u_i, w> = 1 on every primitive ray")
    return ToricGerm(sigma, sigma.dual(), fvec(w), name)


def orthant(n: int) -> ToricGerm:
    return build_germ([tuple(int(i == j) for j in range(n)) for i in range(n)], name=f"A^{n}")


def contains_interior(g: ToricGerm, u: Sequence) -> bool:
    return g.contains_interior(u)
